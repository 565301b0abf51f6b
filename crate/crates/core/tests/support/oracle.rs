//! Coordinate oracle: explicit ℚ-realizations of fixtures over ℙ² and
//! ℙ¹×ℙ¹, and a checker that recomputes every declared incidence from them.
//!
//! Coordinates are affine. Over ℙ¹×ℙ¹ a class `[a, b]` (a·C₀ + b·F) is a
//! polynomial of degree ≤ b in x and ≤ a in y, so fibres `F` are `x = c` and
//! sections `C₀` are `y = c`.

use std::collections::BTreeMap;

use dporders::{BasisTag, OrderData};
use num_traits::{One, Zero};

use super::poly::{null_space, r, ri, Poly, R};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    P2(u32),
    F0(u32, u32),
}

impl Space {
    pub fn of(base: BasisTag, cls: &[i64]) -> Space {
        match base {
            BasisTag::P2 => Space::P2(cls[0] as u32),
            BasisTag::Hirzebruch(0) => Space::F0(cls[0] as u32, cls[1] as u32),
            b => panic!("no coordinate model for {b}"),
        }
    }

    pub fn monomials(self) -> Vec<(u32, u32)> {
        match self {
            Space::P2(d) => (0..=d).flat_map(|i| (0..=d - i).map(move |j| (i, j))).collect(),
            Space::F0(a, b) => (0..=b).flat_map(|i| (0..=a).map(move |j| (i, j))).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Pt {
    Affine(R, R),
    /// First-order infinitely near point over an affine point, in the
    /// tangent direction of slope `dy/dx`.
    Near(String, R),
}

/// A rational curve `t ↦ (xn/xd, yn/yd)`.
#[derive(Clone, Debug)]
pub struct Param {
    pub xn: Poly,
    pub xd: Poly,
    pub yn: Poly,
    pub yd: Poly,
}

fn upoly(cs: &[i64]) -> Poly {
    let mut p = Poly::zero();
    for (k, c) in cs.iter().enumerate() {
        p = p.add(&Poly::mono(k as u32, 0, ri(*c)));
    }
    p
}

impl Param {
    pub fn at(&self, t: &R) -> (R, R) {
        let z = R::zero();
        (self.xn.eval(t, &z) / self.xd.eval(t, &z), self.yn.eval(t, &z) / self.yd.eval(t, &z))
    }

    /// Numerator of `f(x(t), y(t))` cleared of the denominators a curve of
    /// class `space` can have.
    pub fn pull_back(&self, f: &Poly, space: Space) -> Poly {
        let mut out = Poly::zero();
        for ((i, j), c) in &f.0 {
            let term = match space {
                Space::P2(d) => {
                    assert_eq!(self.xd, self.yd);
                    self.xn.pow(*i).mul(&self.yn.pow(*j)).mul(&self.xd.pow(d - i - j))
                }
                Space::F0(a, b) => {
                    self.xn.pow(*i).mul(&self.xd.pow(b - i)).mul(&self.yn.pow(*j)).mul(&self.yd.pow(a - j))
                }
            };
            out = out.add(&term.scale(c));
        }
        out
    }
}

/// The nodal cubic `y² = x³ + x²` with `t ↦ (t² − 1, t³ − t)`; node at the
/// origin (`t = ±1`).
pub fn nodal_cubic() -> (Poly, Param) {
    let f = Poly::y().pow(2).sub(&Poly::x().pow(3)).sub(&Poly::x().pow(2));
    let one = upoly(&[1]);
    (f, Param { xn: upoly(&[-1, 0, 1]), xd: one.clone(), yn: upoly(&[0, -1, 0, 1]), yd: one })
}

/// A rational (2,2)-curve `t ↦ (t², (t − 1)²/(t + 2))`; its node sits at
/// `(−5, −2)` with conjugate branches.
pub fn nodal_22() -> (Poly, Param) {
    let p = Param { xn: upoly(&[0, 0, 1]), xd: upoly(&[1]), yn: upoly(&[1, -2, 1]), yd: upoly(&[2, 1]) };
    let samples: Vec<(Pt, u32)> = [3, 4, 5, 6, 7, 8, 9, 10, 11, 12]
        .iter()
        .map(|&t| {
            let (x, y) = p.at(&ri(t));
            (Pt::Affine(x, y), 1)
        })
        .collect();
    let f = solve_unique(Space::F0(2, 2), &samples, &BTreeMap::new()).expect("a (2,2) curve through ten points");
    (f, p)
}

/// Linear conditions on the coefficients (in `space.monomials()` order) for
/// multiplicity ≥ `m` at `pt`; `parent_mult` is the multiplicity required at
/// the parent of an infinitely near point.
fn conditions(space: Space, pt: &Pt, m: u32, parent_mult: u32, pts: &BTreeMap<String, Pt>) -> Vec<Vec<R>> {
    let monos = space.monomials();
    if let (Pt::Affine(a, b), 1) = (pt, m) {
        return vec![monos.iter().map(|&(i, j)| Poly::mono(i, j, R::one()).eval(a, b)).collect()];
    }
    let images: Vec<Poly> = monos
        .iter()
        .map(|&(i, j)| {
            let f = Poly::mono(i, j, R::one());
            transform(&f, pt, pts)
        })
        .collect();
    let mut rows = Vec::new();
    match pt {
        Pt::Affine(..) => {
            for total in 0..m {
                for i in 0..=total {
                    rows.push(images.iter().map(|g| g.coeff(i, total - i)).collect());
                }
            }
        }
        Pt::Near(..) => {
            for i in parent_mult..parent_mult + m {
                for j in 0..(parent_mult + m - i) {
                    rows.push(images.iter().map(|g| g.coeff(i, j)).collect());
                }
            }
        }
    }
    rows
}

/// Local coordinates at `pt`: a shift for affine points, the blowup chart
/// `(u, w) ↦ (a + u, b + u(s + w))` for infinitely near ones.
fn transform(f: &Poly, pt: &Pt, pts: &BTreeMap<String, Pt>) -> Poly {
    match pt {
        Pt::Affine(a, b) => f.shift(a, b),
        Pt::Near(parent, s) => {
            let Some(Pt::Affine(a, b)) = pts.get(parent) else { panic!("parent {parent} must be affine") };
            let xs = Poly::x().add(&Poly::konst(a.clone()));
            let ys = Poly::konst(b.clone()).add(&Poly::x().mul(&Poly::konst(s.clone()).add(&Poly::y())));
            f.compose(&xs, &ys)
        }
    }
}

pub fn mult(f: &Poly, pt: &Pt, pts: &BTreeMap<String, Pt>) -> u32 {
    match pt {
        Pt::Affine(a, b) if !f.eval(a, b).is_zero() => 0,
        Pt::Affine(a, b) => f.mult_at(a, b),
        Pt::Near(parent, _) => {
            let m1 = mult(f, &pts[parent], pts);
            transform(f, pt, pts).div_x_pow(m1).order().expect("nonzero")
        }
    }
}

/// All curves of class `space` with multiplicity ≥ m at each listed point.
pub fn solve(space: Space, conds: &[(Pt, u32)], pts: &BTreeMap<String, Pt>) -> Vec<Poly> {
    let monos = space.monomials();
    let mut rows = Vec::new();
    for (pt, m) in conds {
        let parent_mult = match pt {
            Pt::Near(p, _) => conds.iter().find(|(q, _)| *q == pts[p]).map(|(_, m)| *m).unwrap_or(0),
            Pt::Affine(..) => 0,
        };
        rows.extend(conditions(space, pt, *m, parent_mult, pts));
    }
    null_space(&rows, monos.len())
        .into_iter()
        .map(|v| {
            let mut f = Poly::zero();
            for ((i, j), c) in monos.iter().zip(v) {
                f = f.add(&Poly::mono(*i, *j, c));
            }
            f.monic()
        })
        .collect()
}

pub fn solve_unique(space: Space, conds: &[(Pt, u32)], pts: &BTreeMap<String, Pt>) -> Result<Poly, usize> {
    let mut sols = solve(space, conds, pts);
    if sols.len() == 1 {
        Ok(sols.pop().unwrap())
    } else {
        Err(sols.len())
    }
}

/// Coordinates for a fixture: points, component equations and, optionally,
/// a parametrisation of the main component `D`.
#[derive(Clone, Debug)]
pub struct Realization {
    pub base: BasisTag,
    pub points: BTreeMap<String, Pt>,
    pub components: BTreeMap<String, Poly>,
    pub param: Option<Param>,
    pub t: BTreeMap<String, R>,
}

impl Realization {
    pub fn new(base: BasisTag) -> Self {
        Realization { base, points: BTreeMap::new(), components: BTreeMap::new(), param: None, t: BTreeMap::new() }
    }

    pub fn cubic() -> Self {
        let (f, p) = nodal_cubic();
        let mut r = Realization::new(BasisTag::P2);
        r.components.insert("D".into(), f);
        r.param = Some(p);
        r
    }

    pub fn quadric() -> Self {
        let (f, p) = nodal_22();
        let mut r = Realization::new(BasisTag::Hirzebruch(0));
        r.components.insert("D".into(), f);
        r.param = Some(p);
        r
    }

    pub fn point(mut self, id: &str, x: R, y: R) -> Self {
        self.points.insert(id.into(), Pt::Affine(x, y));
        self
    }

    pub fn on_param(mut self, id: &str, t: R) -> Self {
        let (x, y) = self.param.as_ref().expect("parametrised D").at(&t);
        self.t.insert(id.into(), t);
        self.point(id, x, y)
    }

    /// The point infinitely near `parent` in the tangent direction of the
    /// component `comp`.
    pub fn near_tangent(mut self, id: &str, parent: &str, comp: &str) -> Self {
        let Pt::Affine(a, b) = &self.points[parent] else { panic!("affine parent") };
        let f = &self.components[comp];
        let s = -f.dx().eval(a, b) / f.dy().eval(a, b);
        self.points.insert(id.into(), Pt::Near(parent.into(), s));
        self
    }

    pub fn component(mut self, id: &str, f: Poly) -> Self {
        self.components.insert(id.into(), f);
        self
    }

    /// The unique curve of class `space` through the named points (with the
    /// given multiplicities) and the auxiliary affine points.
    pub fn component_through(self, id: &str, space: Space, at: &[(&str, u32)], aux: &[(i64, i64)]) -> Self {
        let mut conds: Vec<(Pt, u32)> = at.iter().map(|(p, m)| (self.points[*p].clone(), *m)).collect();
        conds.extend(aux.iter().map(|&(x, y)| (Pt::Affine(ri(x), ri(y)), 1)));
        let f = solve_unique(space, &conds, &self.points)
            .unwrap_or_else(|n| panic!("component {id}: {n}-dimensional solution space"));
        self.component(id, f)
    }

    /// Place `id` at the residual intersection of `D` with the unique curve
    /// of class `space` through the named points of `D`.
    pub fn residual(self, id: &str, space: Space, at: &[(&str, u32)]) -> Self {
        let conds: Vec<(Pt, u32)> = at.iter().map(|(p, m)| (self.points[*p].clone(), *m)).collect();
        let f = solve_unique(space, &conds, &self.points)
            .unwrap_or_else(|n| panic!("residual {id}: {n}-dimensional solution space"));
        let mut g = self.param.as_ref().expect("parametrised D").pull_back(&f, space);
        for (p, m) in at {
            for _ in 0..*m {
                g = g.div_root(&self.t[*p]).unwrap_or_else(|| panic!("{p} is not on the auxiliary curve"));
            }
        }
        assert_eq!(g.degree_x(), Some(1), "residual {id}: expected one remaining intersection");
        let t = -g.coeff(0, 0) / g.coeff(1, 0);
        self.on_param(id, t)
    }
}

/// Every way the realization disagrees with the fixture's declared data.
pub fn verify(o: &OrderData, real: &Realization) -> Vec<String> {
    let mut bad = Vec::new();
    let pts = &real.points;
    let ids: Vec<&str> = o.surface.points.iter().map(|p| p.id.as_str()).collect();
    for id in &ids {
        if !pts.contains_key(*id) {
            bad.push(format!("point {id} has no coordinates"));
        }
    }
    if !bad.is_empty() {
        return bad;
    }
    let mut on_d: BTreeMap<&str, u32> = BTreeMap::new();
    for c in &o.components {
        let Some(f) = real.components.get(&c.id) else {
            bad.push(format!("component {} has no equation", c.id));
            continue;
        };
        let cls: Vec<i64> = c.curve.cls.coeffs_base.iter().map(|x| x.to_integer()).collect();
        if !in_space(f, Space::of(o.base(), &cls)) {
            bad.push(format!("component {} has the wrong class", c.id));
        }
        for id in &ids {
            let m = mult(f, &pts[*id], pts);
            *on_d.entry(id).or_default() += m;
            if m != c.curve.mult(id) {
                bad.push(format!("component {} has multiplicity {m} at {id}, declared {}", c.id, c.curve.mult(id)));
            }
        }
    }
    for p in &o.surface.points {
        let m = on_d.get(p.id.as_str()).copied().unwrap_or(0);
        if (m > 0) != p.on_d {
            bad.push(format!("{}: on_D declared {}, realised multiplicity {m}", p.id, p.on_d));
        }
        if (m == 2) != p.node {
            bad.push(format!("{}: node declared {}, realised multiplicity {m}", p.id, p.node));
        }
    }
    for c in o.surface.curves.iter().filter(|c| c.exceptional_of.is_none()) {
        let cls: Vec<i64> = c.cls.coeffs_base.iter().map(|x| x.to_integer()).collect();
        let conds: Vec<(Pt, u32)> = c.mults.iter().map(|(p, m)| (pts[p].clone(), *m)).collect();
        let f = match solve_unique(Space::of(o.base(), &cls), &conds, pts) {
            Ok(f) => f,
            Err(n) => {
                bad.push(format!("curve {}: {n}-dimensional family through its declared points", c.id));
                continue;
            }
        };
        for id in &ids {
            let m = mult(&f, &pts[*id], pts);
            if m != c.mult(id) {
                bad.push(format!("curve {} has multiplicity {m} at {id}, declared {}", c.id, c.mult(id)));
            }
        }
        if real.components.values().any(|g| *g == f) {
            bad.push(format!("curve {} coincides with a component", c.id));
        }
    }
    bad
}

fn in_space(f: &Poly, s: Space) -> bool {
    let monos = s.monomials();
    f.0.keys().all(|k| monos.contains(k))
}

const T: [(i64, i64); 10] = [(2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (17, 1), (19, 1), (23, 1), (29, 1)];

pub fn tp(i: usize) -> R {
    r(T[i].0, T[i].1)
}

/// Realizations of the fixture corpus over ℙ² and ℙ¹×ℙ¹, keyed by fixture
/// id. Fixtures without blowup points carry no incidences and are absent.
pub fn realization(id: &str) -> Option<Realization> {
    if let Some(n) = id.strip_prefix("dp-p2-deg3-n") {
        let n: usize = n.parse().ok()?;
        return Some((0..n).fold(Realization::cubic(), |r, i| r.on_param(&format!("p{}", i + 1), tp(i))));
    }
    if let Some(n) = id.strip_prefix("dp-p1p1-n") {
        let n: usize = n.parse().ok()?;
        return Some((0..n).fold(Realization::quadric(), |r, i| r.on_param(&format!("p{}", i + 1), tp(i))));
    }
    let line = Space::P2(1);
    Some(match id {
        "dp-p2-deg3-off-e2" | "dp-p2-deg3-off-e3" => Realization::cubic().point("p1", ri(1), ri(1)),
        "dp-p2-deg4-in-e2" | "dp-p2-deg4-in-e3" => Realization::new(BasisTag::P2)
            .point("p1", ri(0), ri(0))
            .component_through("C1", Space::P2(2), &[("p1", 1)], &[(1, 2), (2, -1), (-1, 3), (3, 5)])
            .component_through("C2", Space::P2(2), &[], &[(1, 1), (2, 3), (-2, 1), (4, -1), (0, 5)]),
        "dp-p2-deg4-off" => Realization::new(BasisTag::P2)
            .point("p1", ri(0), ri(0))
            .component_through("C1", Space::P2(2), &[], &[(1, 2), (2, -1), (-1, 3), (3, 5), (5, 1)])
            .component_through("C2", Space::P2(2), &[], &[(1, 1), (2, 3), (-2, 1), (4, -1), (0, 5)]),
        "dp-p2-deg5-in" => {
            let (n, _) = nodal_cubic();
            Realization::new(BasisTag::P2)
                .point("p1", ri(1), ri(3))
                .component_through("C", Space::P2(2), &[("p1", 1)], &[(1, 2), (2, -1), (-1, 3), (3, 5)])
                .component("N", n)
        }
        "kz-p2-deg3-c1" => Realization::cubic().on_param("p1", tp(0)).near_tangent("p2", "p1", "D"),
        "kz-p2-deg3-c2" => Realization::cubic().on_param("p1", tp(0)).point("p2", ri(1), ri(1)),
        "kz-p2-deg3-c3" => Realization::cubic().on_param("p1", tp(0)).on_param("p2", tp(1)).residual(
            "p3",
            line,
            &[("p1", 1), ("p2", 1)],
        ),
        "kz-p2-deg3-c4" => (0..5)
            .fold(Realization::cubic(), |r, i| r.on_param(&format!("p{}", i + 1), tp(i)))
            .residual("p6", Space::P2(2), &[("p1", 1), ("p2", 1), ("p3", 1), ("p4", 1), ("p5", 1)]),
        "kz-p2-deg3-c5" => {
            (0..7).fold(Realization::cubic(), |r, i| r.on_param(&format!("p{}", i + 1), tp(i))).residual(
                "p8",
                Space::P2(3),
                &[("p1", 2), ("p2", 1), ("p3", 1), ("p4", 1), ("p5", 1), ("p6", 1), ("p7", 1)],
            )
        }
        "kz-p2-deg4-c1" | "kz-p2-deg4-c1b" => {
            let r = Realization::new(BasisTag::P2)
                .point("p1", ri(0), ri(0))
                .point("p2", ri(1), ri(2))
                .component_through("C1", Space::P2(2), &[("p1", 1), ("p2", 1)], &[(2, -1), (-1, 3), (3, 5)]);
            if id.ends_with('b') {
                r.point("p3", ri(1), ri(1)).component_through(
                    "C2",
                    Space::P2(2),
                    &[("p3", 1)],
                    &[(2, 3), (-2, 1), (4, -1), (0, 5)],
                )
            } else {
                r.component_through("C2", Space::P2(2), &[], &[(1, 1), (2, 3), (-2, 1), (4, -1), (0, 5)])
            }
        }
        "kz-p1p1-c1" => Realization::quadric().point("p1", ri(1), ri(1)),
        "kz-p1p1-c2" => Realization::new(BasisTag::Hirzebruch(0))
            .point("p1", ri(1), ri(2))
            .component("D1", Poly::y().sub(&Poly::konst(ri(5))))
            .component("D2", Poly::y().add(&Poly::konst(ri(7))))
            .component_through("D3", Space::F0(1, 2), &[("p1", 1)], &[(2, 3), (-1, 4), (3, -2), (5, 1)]),
        "kz-p1p1-c3" => Realization::new(BasisTag::Hirzebruch(0))
            .point("p1", ri(1), ri(2))
            .component_through("D1", Space::F0(1, 1), &[("p1", 1)], &[(2, 5), (-1, 3)])
            .component_through("D2", Space::F0(1, 1), &[], &[(0, 1), (3, -2), (-2, -3)])
            .component_through("D3", Space::F0(1, 1), &[], &[(4, 4), (-3, 6), (6, -1)]),
        "kz-p1p1-c4" => Realization::quadric().on_param("p1", tp(1)).residual("p2", Space::F0(0, 1), &[("p1", 1)]),
        _ => return None,
    })
}
