//! Brute-force reproduction of the lists of minimal orders: over ℙ² by
//! degree and ramification degree, over 𝔽₀, 𝔽₁, 𝔽₂ by splitting
//! `aC₀ + bF` into at most four irreducible components.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ClassificationRecord;
use crate::config::{CurveRecord, SurfaceModel};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lattice::{BasisTag, DivisorClass};
use crate::order::{OrderData, RamificationComponent};
use crate::positivity::{is_almost_del_pezzo, is_del_pezzo, is_minimal};
use crate::rational::{q, weight, Q};

pub const DEFAULT_E_MAX: u32 = 12;
pub const DEFAULT_B_MAX: i64 = 8;
pub const MAX_PARTS: usize = 4;

/// `DPORDERS_E_MAX` if set to an integer ≥ 2, else 12.
pub fn e_max() -> u32 {
    std::env::var("DPORDERS_E_MAX")
        .ok()
        .and_then(|s| s.trim().parse::<u32>().ok())
        .filter(|&e| e >= 2)
        .unwrap_or(DEFAULT_E_MAX)
}

fn all_e_note(e_max: u32) -> String {
    format!("for all e (verified to E_MAX = {e_max})")
}

pub fn p2_order(d: i64, e: u32) -> OrderData {
    let c = CurveRecord::new("D", DivisorClass::h(0).scale(q(d)), &[]);
    OrderData { surface: SurfaceModel::new(BasisTag::P2), components: vec![RamificationComponent::new(c, e)] }
}

/// Smooth irreducible ramification of degree `d ∈ {3, 4, 5}` and uniform
/// degree `e ≤ e_max`, kept when the order is minimal and del Pezzo.
pub fn enumerate_minimal_tdpo_p2(e_max: u32, exec: Exec) -> Result<Vec<ClassificationRecord>> {
    let cands: Vec<(i64, u32)> = (3..=5).flat_map(|d| (2..=e_max).map(move |e| (d, e))).collect();
    let found = exec.map(cands, |(d, e)| -> Result<Option<ClassificationRecord>> {
        let o = p2_order(d, e);
        if !o.shallow_terminal_violations().is_empty() || !is_del_pezzo(&o)? || !is_minimal(&o)? {
            return Ok(None);
        }
        let mut r = ClassificationRecord::new("T1-P2", (d - 2) as u32, o);
        if d == 3 {
            r.note = Some(all_e_note(e_max));
        }
        Ok(Some(r))
    });
    let mut out: Vec<ClassificationRecord> = found.into_iter().filter_map(Result::transpose).collect::<Result<_>>()?;
    out.sort_by_key(|r| (r.clause, r.degrees()));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuledBase {
    F0,
    F1,
    F2,
}

impl RuledBase {
    pub const ALL: [RuledBase; 3] = [RuledBase::F0, RuledBase::F1, RuledBase::F2];

    pub fn n(self) -> u32 {
        match self {
            RuledBase::F0 => 0,
            RuledBase::F1 => 1,
            RuledBase::F2 => 2,
        }
    }

    pub fn tag(self) -> BasisTag {
        BasisTag::Hirzebruch(self.n())
    }
}

impl fmt::Display for RuledBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.n())
    }
}

impl FromStr for RuledBase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f0" => Ok(RuledBase::F0),
            "f1" => Ok(RuledBase::F1),
            "f2" => Ok(RuledBase::F2),
            _ => Err(Error::Parse(format!("unknown ruled base `{s}`"))),
        }
    }
}

/// `(α, β)` for `αC₀ + βF`.
type Part = (i64, i64);

fn dot(n: i64, x: Part, y: Part) -> i64 {
    -n * x.0 * y.0 + x.0 * y.1 + x.1 * y.0
}

/// Classes of irreducible curves on 𝔽ₙ with `α ≤ 3`, `β ≤ b_max`.
pub fn irreducible_classes(n: u32, b_max: i64) -> Vec<Part> {
    let n = i64::from(n);
    let mut out = vec![(0, 1), (1, 0)];
    for a in 1..=3 {
        for b in 1..=b_max {
            if b >= n * a {
                out.push((a, b));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Multisets of at most [`MAX_PARTS`] irreducible classes with `a ≤ 3` and
/// `b ≤ b_max`; on 𝔽₁ and 𝔽₂ the rigid section `C₀` is used at most once.
pub fn splittings(n: u32, b_max: i64) -> Vec<Vec<Part>> {
    fn go(n: u32, b_max: i64, cls: &[Part], start: usize, cur: &mut Vec<Part>, out: &mut Vec<Vec<Part>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == MAX_PARTS {
            return;
        }
        let (a, b) = cur.iter().fold((0, 0), |s, p| (s.0 + p.0, s.1 + p.1));
        for (i, &p) in cls.iter().enumerate().skip(start) {
            if a + p.0 > 3 || b + p.1 > b_max {
                continue;
            }
            if n > 0 && p == (1, 0) && cur.contains(&p) {
                continue;
            }
            cur.push(p);
            go(n, b_max, cls, i, cur, out);
            cur.pop();
        }
    }
    let cls = irreducible_classes(n, b_max);
    let mut out = Vec::new();
    go(n, b_max, &cls, 0, &mut Vec::new(), &mut out);
    out
}

struct Search<'a> {
    n: i64,
    e_max: u32,
    parts: &'a [Part],
    /// Upper bound for `Σ w(β − nα)` over the non-`C₀` parts on 𝔽₁, 𝔽₂.
    cap: Q,
}

impl Search<'_> {
    fn is_c0(&self, p: Part) -> bool {
        self.n > 0 && p == (1, 0)
    }

    /// Lower bounds of `K·F`, `K·C₀` (𝔽₀) and the non-`C₀` part of
    /// `K·C₀` (𝔽₁, 𝔽₂), treating the unassigned parts as `e = 2`.
    fn lower_bounds(&self, es: &[u32]) -> (Q, Q, Q) {
        let half = Q::new(1, 2);
        let (mut x, mut y, mut c) = (q(-2), q(-2), Q::zero());
        for (i, &p) in self.parts.iter().enumerate() {
            let w = es.get(i).map_or(half, |&e| weight(e));
            x += w * q(p.0);
            y += w * q(p.1);
            if !self.is_c0(p) {
                c += w * q(p.1 - self.n * p.0);
            }
        }
        (x, y, c)
    }

    fn go(&self, es: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let i = es.len();
        if i == self.parts.len() {
            out.push(es.clone());
            return;
        }
        let p = self.parts[i];
        let start = if i > 0 && self.parts[i - 1] == p { es[i - 1] } else { 2 };
        for e in start..=self.e_max {
            let divides = (0..i)
                .all(|j| dot(self.n, self.parts[j], p) <= 0 || es[j].is_multiple_of(e) || e.is_multiple_of(es[j]));
            es.push(e);
            let (x, y, c) = self.lower_bounds(es);
            let over = x.is_positive() || (self.n == 0 && y.is_positive()) || (self.n > 0 && c > self.cap);
            if divides && !over {
                self.go(es, out);
            }
            es.pop();
            if over && !self.is_c0(p) {
                break;
            }
        }
    }
}

/// Degree assignments for a splitting that survive the monotone
/// prefilters: `K·F ≤ 0`, `K·C₀ ≤ 0` on 𝔽₀, the `C₀` budget on 𝔽₁/𝔽₂, and
/// divisibility of degrees of meeting components.
pub fn degree_assignments(n: u32, parts: &[Part], e_max: u32) -> Vec<Vec<u32>> {
    let ni = i64::from(n);
    let has_c0 = n > 0 && parts.contains(&(1, 0));
    let cap = q(2 - ni) + if has_c0 { q(ni) } else { Q::zero() };
    let s = Search { n: ni, e_max, parts, cap };
    let mut out = Vec::new();
    s.go(&mut Vec::new(), &mut out);
    out
}

pub fn ruled_order(n: u32, parts: &[Part], es: &[u32]) -> OrderData {
    let base = BasisTag::Hirzebruch(n);
    let single = parts.len() == 1;
    let components = parts
        .iter()
        .zip(es)
        .enumerate()
        .map(|(i, (p, &e))| {
            let id = if single { "D".to_string() } else { format!("D{i}") };
            let cls = DivisorClass::from_ints(base, &[p.0, p.1], &[]).expect("ruled class");
            RamificationComponent::new(CurveRecord::new(&id, cls, &[]), e)
        })
        .collect();
    OrderData { surface: SurfaceModel::new(base), components }
}

/// `Σ(1 − 1/eᵢ)bᵢ = Σ(1 − 1/eᵢ)aᵢ + 1` over 𝔽₁.
pub fn f1_equation(o: &OrderData) -> bool {
    let (mut l, mut r) = (Q::zero(), Q::one());
    for c in &o.components {
        l += c.weight() * c.curve.cls.coeffs_base[1];
        r += c.weight() * c.curve.cls.coeffs_base[0];
    }
    l == r
}

/// `Σ(1 − 1/eᵢ)(bᵢ − 2aᵢ) = 0` over 𝔽₂.
pub fn f2_equation(o: &OrderData) -> bool {
    let s: Q = o
        .components
        .iter()
        .map(|c| c.weight() * (c.curve.cls.coeffs_base[1] - q(2) * c.curve.cls.coeffs_base[0]))
        .sum();
    s.is_zero()
}

/// Degree of the canonical class of the cyclic cover of a ramified `C₀`
/// (𝔽₁, 𝔽₂): `−2e₁ + e₁ Σ_{i≠1}(1 − 1/eᵢ) Dᵢ·C₀`. `None` when `C₀` is
/// unramified.
pub fn c0_cover_degree(o: &OrderData) -> Option<Q> {
    let BasisTag::Hirzebruch(n) = o.base() else {
        return None;
    };
    if n == 0 {
        return None;
    }
    let c0 = DivisorClass::c0(n, o.num_blowups());
    let i = o.components.iter().position(|c| o.component_class(c) == c0)?;
    let e1 = q(i64::from(o.components[i].e));
    let mut s = Q::zero();
    for (j, c) in o.components.iter().enumerate() {
        if j != i {
            s += c.weight() * o.component_class(c).intersect(&c0).ok()?;
        }
    }
    Some(-q(2) * e1 + e1 * s)
}

/// Riemann–Hurwitz: the cover of a ramified `C₀` must have an even
/// canonical degree.
pub fn c0_cover_parity(o: &OrderData) -> bool {
    match c0_cover_degree(o) {
        None => true,
        Some(d) => d.is_integer() && d.to_integer().is_even(),
    }
}

fn numeric_prefilter(n: u32, parts: &[Part], es: &[u32]) -> bool {
    let ni = i64::from(n);
    let (mut x, mut y) = (q(-2), q(-(ni + 2)));
    for (p, &e) in parts.iter().zip(es) {
        x += weight(e) * q(p.0);
        y += weight(e) * q(p.1);
    }
    let kf = x;
    let kc0 = -q(ni) * x + y;
    let k2 = -q(ni) * x * x + q(2) * x * y;
    let c0_ok = if n == 0 { !kc0.is_positive() } else { kc0.is_zero() };
    !kf.is_positive() && c0_ok && k2.is_positive()
}

/// The full filter chain for one candidate minimal order over 𝔽ₙ.
pub fn passes_ruled_filters(o: &OrderData) -> Result<bool> {
    let BasisTag::Hirzebruch(n) = o.base() else {
        return Err(Error::NotApplicable("ruled filters need a ruled base".into()));
    };
    if !o.shallow_terminal_violations().is_empty() {
        return Ok(false);
    }
    for p in o.ramification_primes() {
        if !o.genus_constraint(p)? {
            return Ok(false);
        }
    }
    let eq = match n {
        1 => f1_equation(o),
        2 => f2_equation(o),
        _ => true,
    };
    if !eq || !c0_cover_parity(o) {
        return Ok(false);
    }
    Ok(is_minimal(o)? && is_almost_del_pezzo(o)?)
}

fn ruled_clause(base: RuledBase, a: i64, b: i64) -> (&'static str, u32) {
    match (base, a, b) {
        (RuledBase::F0, 2, 2) => ("T1-P1P1", 1),
        (RuledBase::F0, 3, 2) => ("T1-P1P1", 2),
        (RuledBase::F0, 3, 3) => ("T1-P1P1", 3),
        (RuledBase::F1, 2, 4) => ("minimal-TAdPO-F1", 1),
        (RuledBase::F1, 3, 5) => ("minimal-TAdPO-F1", 2),
        (RuledBase::F2, 2, 4) => ("minimal-TAdPO-F2", 1),
        (RuledBase::F2, 3, 6) => ("minimal-TAdPO-F2", 2),
        _ => ("unclassified", 0),
    }
}

struct Hit {
    parts: Vec<Part>,
    es: Vec<u32>,
    order: OrderData,
}

/// Minimal almost del Pezzo orders over 𝔽ₙ, one record per
/// `(aC₀ + bF, degrees)`; over 𝔽₀ only `a ≥ b` is reported.
pub fn enumerate_minimal_tadpo_ruled(
    base: RuledBase,
    e_max: u32,
    b_max: i64,
    exec: Exec,
) -> Result<Vec<ClassificationRecord>> {
    let n = base.n();
    let splits: Vec<Vec<Part>> = splittings(n, b_max)
        .into_iter()
        .filter(|s| {
            let (a, b) = s.iter().fold((0, 0), |t, p| (t.0 + p.0, t.1 + p.1));
            n != 0 || a >= b
        })
        .collect();
    let hits = exec.flat_map(splits, |parts| -> Vec<Result<Hit>> {
        degree_assignments(n, &parts, e_max)
            .into_iter()
            .filter(|es| numeric_prefilter(n, &parts, es))
            .filter_map(|es| {
                let order = ruled_order(n, &parts, &es);
                match passes_ruled_filters(&order) {
                    Ok(true) => Some(Ok(Hit { parts: parts.clone(), es, order })),
                    Ok(false) => None,
                    Err(e) => Some(Err(e)),
                }
            })
            .collect()
    });
    let mut groups: BTreeMap<(i64, i64, Vec<u32>), Hit> = BTreeMap::new();
    for h in hits {
        let h = h?;
        let (a, b) = h.parts.iter().fold((0, 0), |t, p| (t.0 + p.0, t.1 + p.1));
        let key = (a, b, h.order.degrees());
        let better = |old: &Hit| (h.parts.len(), &h.parts, &h.es) < (old.parts.len(), &old.parts, &old.es);
        match groups.get(&key) {
            Some(old) if !better(old) => {}
            _ => {
                groups.insert(key, h);
            }
        }
    }
    let mut out = Vec::new();
    for ((a, b, _), h) in groups {
        let (thm, clause) = ruled_clause(base, a, b);
        let mut r = ClassificationRecord::new(thm, clause, h.order).with_all_k_zero()?;
        if (a, b) == (2, 2) && n == 0 || (a, b) == (2, 4) && n == 2 {
            r.note = Some(all_e_note(e_max));
        }
        out.push(r);
    }
    out.sort_by_key(|r| (r.theorem.clone(), r.clause, r.degrees()));
    Ok(out)
}
