//! Ramification data of a maximal order over a [`SurfaceModel`].

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::config::{position_predicate_over, BlowupPoint, CurveRecord, Flavor, Parent, SurfaceModel};
use crate::error::{Error, Result};
use crate::lattice::{BasisTag, DivisorClass};
use crate::rational::{q, weight, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RamificationComponent {
    pub id: String,
    pub curve: CurveRecord,
    pub e: u32,
    /// Opaque labels (secondary ramification marks and the like).
    pub annotations: Vec<String>,
}

impl RamificationComponent {
    pub fn new(curve: CurveRecord, e: u32) -> Self {
        RamificationComponent { id: curve.id.clone(), curve, e, annotations: Vec::new() }
    }

    pub fn weight(&self) -> Q {
        weight(self.e)
    }
}

/// Where a fresh point sits relative to `D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Location {
    OffD,
    Smooth(String),
    Node(String, String),
    /// A node of a single irreducible component.
    SelfNode(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSpec {
    pub id: String,
    pub parent: Parent,
    pub location: Location,
    /// Declared (non-ramified) curves through the point.
    pub curves: Vec<(String, u32)>,
}

impl PointSpec {
    pub fn off(id: &str) -> Self {
        PointSpec { id: id.into(), parent: Parent::Base, location: Location::OffD, curves: Vec::new() }
    }

    pub fn smooth(id: &str, comp: &str) -> Self {
        PointSpec { location: Location::Smooth(comp.into()), ..Self::off(id) }
    }

    pub fn node(id: &str, a: &str, b: &str) -> Self {
        PointSpec { location: Location::Node(a.into(), b.into()), ..Self::off(id) }
    }

    pub fn self_node(id: &str, comp: &str) -> Self {
        PointSpec { location: Location::SelfNode(comp.into()), ..Self::off(id) }
    }

    pub fn near(mut self, parent: &str) -> Self {
        self.parent = Parent::Point(parent.into());
        self
    }

    pub fn on(mut self, curve: &str, m: u32) -> Self {
        self.curves.push((curve.into(), m));
        self
    }
}

/// A crossing of two branches of `D` at a blowup point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeRecord {
    pub point: String,
    pub first: String,
    pub second: String,
    pub degrees: (u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderData {
    pub surface: SurfaceModel,
    pub components: Vec<RamificationComponent>,
}

/// A point after its branches and incidences have been resolved.
#[derive(Clone, Debug)]
struct Resolved {
    point: BlowupPoint,
    comp_mults: Vec<u32>,
    curve_mults: Vec<(usize, u32)>,
    coefficient: Q,
    new_component: Option<u32>,
}

impl OrderData {
    pub fn new(surface: SurfaceModel, components: Vec<RamificationComponent>) -> Result<Self> {
        let o = OrderData { surface, components };
        o.validate()?;
        Ok(o)
    }

    /// The Δ = 0 order on a bare base.
    pub fn trivial(base: BasisTag) -> Self {
        OrderData { surface: SurfaceModel::new(base), components: Vec::new() }
    }

    pub fn base(&self) -> BasisTag {
        self.surface.base
    }

    pub fn num_blowups(&self) -> usize {
        self.surface.num_blowups()
    }

    pub fn component(&self, id: &str) -> Result<&RamificationComponent> {
        self.components.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownCurve(id.to_string()))
    }

    fn component_index(&self, id: &str) -> Result<usize> {
        self.components.iter().position(|c| c.id == id).ok_or_else(|| Error::UnknownCurve(id.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        self.surface.validate()?;
        let mut ids: BTreeSet<&str> = self.surface.curves.iter().map(|c| c.id.as_str()).collect();
        for c in &self.components {
            if c.e < 2 {
                return Err(Error::InvalidConfiguration(format!(
                    "component `{}` has ramification degree {} < 2",
                    c.id, c.e
                )));
            }
            if c.id != c.curve.id || !ids.insert(c.id.as_str()) {
                return Err(Error::InvalidConfiguration(format!("duplicate or mismatched id `{}`", c.id)));
            }
            if !c.curve.irreducible {
                return Err(Error::InvalidConfiguration(format!("component `{}` must be irreducible", c.id)));
            }
            self.surface.validate_curve(&c.curve)?;
        }
        for p in &self.surface.points {
            let total: u32 = self.components.iter().map(|c| c.curve.mult(&p.id)).sum();
            if total > 2 {
                return Err(Error::InvalidConfiguration(format!(
                    "point `{}` has {total} branches of D; only smooth points and nodes are allowed",
                    p.id
                )));
            }
            if p.on_d != (total >= 1) || p.node != (total == 2) {
                return Err(Error::InconsistentConfiguration(format!(
                    "flags of point `{}` (on_D={}, node={}) disagree with {total} branches of D",
                    p.id, p.on_d, p.node
                )));
            }
        }
        for n in self.nodes() {
            let (a, b) = n.degrees;
            if a % b != 0 && b % a != 0 {
                return Err(Error::InvalidConfiguration(format!(
                    "node `{}` has branch degrees ({a}, {b}); one must divide the other",
                    n.point
                )));
            }
        }
        Ok(())
    }

    pub fn nodes(&self) -> Vec<NodeRecord> {
        let mut out = Vec::new();
        for p in &self.surface.points {
            let on: Vec<&RamificationComponent> = self.components.iter().filter(|c| c.curve.mult(&p.id) > 0).collect();
            match on.as_slice() {
                [c] if c.curve.mult(&p.id) == 2 => out.push(NodeRecord {
                    point: p.id.clone(),
                    first: c.id.clone(),
                    second: c.id.clone(),
                    degrees: (c.e, c.e),
                }),
                [a, b] => out.push(NodeRecord {
                    point: p.id.clone(),
                    first: a.id.clone(),
                    second: b.id.clone(),
                    degrees: (a.e.min(b.e), a.e.max(b.e)),
                }),
                _ => {}
            }
        }
        out
    }

    /// Points of the forest at which component `id` is nodal.
    pub fn nodes_at(&self, id: &str) -> Vec<String> {
        self.nodes().into_iter().filter(|n| n.first == id || n.second == id).map(|n| n.point).collect()
    }

    /// Location of an existing blowup point, read back from the branch data.
    pub fn location_of(&self, p: &str) -> Result<Location> {
        self.surface.index_of(p)?;
        let on: Vec<&RamificationComponent> = self.components.iter().filter(|c| c.curve.mult(p) > 0).collect();
        Ok(match on.as_slice() {
            [] => Location::OffD,
            [c] if c.curve.mult(p) == 2 => Location::SelfNode(c.id.clone()),
            [c] => Location::Smooth(c.id.clone()),
            [a, b] => Location::Node(a.id.clone(), b.id.clone()),
            _ => unreachable!("validated orders have at most two branches"),
        })
    }

    pub fn component_class(&self, c: &RamificationComponent) -> DivisorClass {
        self.surface.strict_transform(&c.curve).expect("validated component")
    }

    pub fn curve_class(&self, c: &CurveRecord) -> Result<DivisorClass> {
        self.surface.strict_transform(c)
    }

    /// All declared curves and component curves.
    pub fn all_curves(&self) -> impl Iterator<Item = &CurveRecord> {
        self.components.iter().map(|c| &c.curve).chain(self.surface.curves.iter())
    }

    pub fn find_curve(&self, id: &str) -> Result<&CurveRecord> {
        self.all_curves().find(|c| c.id == id).ok_or_else(|| Error::UnknownCurve(id.to_string()))
    }

    pub fn d_class(&self) -> DivisorClass {
        let mut d = DivisorClass::zero(self.base(), self.num_blowups());
        for c in &self.components {
            d = &d + &self.component_class(c);
        }
        d
    }

    /// `Δ = Σ (1 − 1/eᵢ) Dᵢ`.
    pub fn discriminant(&self) -> DivisorClass {
        let mut d = DivisorClass::zero(self.base(), self.num_blowups());
        for c in &self.components {
            d = &d + &self.component_class(c).scale(c.weight());
        }
        d
    }

    /// `K_X = K_Z + Δ`.
    pub fn order_canonical(&self) -> DivisorClass {
        &self.surface.canonical_class() + &self.discriminant()
    }

    pub fn k_squared(&self) -> Q {
        self.order_canonical().square()
    }

    pub fn k_dot(&self, c: &DivisorClass) -> Result<Q> {
        self.order_canonical().intersect(c)
    }

    pub fn uniform_degree(&self) -> Option<u32> {
        let mut it = self.components.iter().map(|c| c.e);
        let first = it.next()?;
        it.all(|e| e == first).then_some(first)
    }

    pub fn degrees(&self) -> Vec<u32> {
        let s: BTreeSet<u32> = self.components.iter().map(|c| c.e).collect();
        s.into_iter().collect()
    }

    fn resolve(&self, spec: &PointSpec) -> Result<Resolved> {
        if self.surface.index_of(&spec.id).is_ok() {
            return Err(Error::InvalidConfiguration(format!("point `{}` already exists", spec.id)));
        }
        if let Parent::Point(par) = &spec.parent {
            self.surface.index_of(par)?;
        }
        let mut comp_mults = vec![0u32; self.components.len()];
        match &spec.location {
            Location::OffD => {}
            Location::Smooth(c) => comp_mults[self.component_index(c)?] += 1,
            Location::Node(a, b) => {
                if a == b {
                    return Err(Error::Incidence(format!("node `{}` needs two distinct components", spec.id)));
                }
                comp_mults[self.component_index(a)?] += 1;
                comp_mults[self.component_index(b)?] += 1;
            }
            Location::SelfNode(c) => comp_mults[self.component_index(c)?] += 2,
        }
        if let Parent::Point(par) = &spec.parent {
            for (i, c) in self.components.iter().enumerate() {
                if c.curve.exceptional_of.as_deref() == Some(par.as_str()) && comp_mults[i] == 0 {
                    comp_mults[i] = 1;
                }
            }
        }
        let mut curve_mults = Vec::new();
        for (cid, m) in &spec.curves {
            let i = self
                .surface
                .curves
                .iter()
                .position(|c| &c.id == cid)
                .ok_or_else(|| Error::UnknownCurve(cid.clone()))?;
            curve_mults.push((i, *m));
        }
        if let Parent::Point(par) = &spec.parent {
            for (i, c) in self.surface.curves.iter().enumerate() {
                if c.exceptional_of.as_deref() == Some(par.as_str()) && !curve_mults.iter().any(|(j, _)| *j == i) {
                    curve_mults.push((i, 1));
                }
            }
        }
        let branches: Vec<(usize, u32)> =
            comp_mults.iter().enumerate().filter(|(_, m)| **m > 0).map(|(i, m)| (i, *m)).collect();
        let total: u32 = branches.iter().map(|(_, m)| m).sum();
        let (coefficient, new_component) = match branches.as_slice() {
            [] => (Q::one(), None),
            [(i, 1)] => (Q::new(1, i64::from(self.components[*i].e)), None),
            [(i, 2)] => {
                let e = self.components[*i].e;
                (Q::new(1, i64::from(e)), Some(e))
            }
            [(i, 1), (j, 1)] => {
                let (a, b) = (self.components[*i].e, self.components[*j].e);
                if a % b != 0 && b % a != 0 {
                    return Err(Error::InvalidConfiguration(format!(
                        "node `{}` has branch degrees ({a}, {b}); one must divide the other",
                        spec.id
                    )));
                }
                (Q::new(1, i64::from(a.max(b))), Some(exceptional_degree_at_node(a, b)))
            }
            _ => {
                return Err(Error::Incidence(format!(
                    "point `{}` lies on {total} branches of D; only smooth points and nodes are allowed",
                    spec.id
                )))
            }
        };
        let point =
            BlowupPoint { id: spec.id.clone(), parent: spec.parent.clone(), on_d: total >= 1, node: total == 2 };
        Ok(Resolved { point, comp_mults, curve_mults, coefficient, new_component })
    }

    /// Coefficient `a` of the new exceptional in `K_{X'} = f*K_X + aE`.
    pub fn blowup_coefficient(&self, spec: &PointSpec) -> Result<Q> {
        Ok(self.resolve(spec)?.coefficient)
    }

    pub fn blowup_order(&self, spec: &PointSpec) -> Result<OrderData> {
        let r = self.resolve(spec)?;
        let mut o = self.clone();
        o.surface.points.push(r.point);
        for (c, m) in o.components.iter_mut().zip(&r.comp_mults) {
            if *m > 0 {
                c.curve.mults.insert(spec.id.clone(), *m);
            }
        }
        for (i, m) in r.curve_mults {
            if m > 0 {
                o.surface.curves[i].mults.insert(spec.id.clone(), m);
            }
        }
        if let Some(e) = r.new_component {
            let id = exceptional_component_id(&o, &spec.id);
            o.components.push(RamificationComponent {
                id: id.clone(),
                curve: CurveRecord::exceptional(&id, o.base(), &spec.id),
                e,
                annotations: Vec::new(),
            });
        }
        o.validate()?;
        Ok(o)
    }

    /// `K_X² − a²`, computed without building the blown-up order.
    pub fn k_squared_after_blowup(&self, spec: &PointSpec) -> Result<Q> {
        let a = self.blowup_coefficient(spec)?;
        Ok(self.k_squared() - a * a)
    }

    /// `M = D + K_Z` when every component has the same degree; `None` when
    /// `M` has a negative coefficient.
    pub fn m_decomposition(&self) -> Result<Option<DivisorClass>> {
        if self.components.is_empty() {
            return Err(Error::NotApplicable("no ramification".into()));
        }
        if self.uniform_degree().is_none() {
            return Err(Error::NotApplicable("ramification degrees differ".into()));
        }
        let m = &self.d_class() + &self.surface.canonical_class();
        Ok(m.coeffs().iter().all(|c| !c.is_negative()).then_some(m))
    }

    /// Genus test `(a_p − 1)(2b_p − n a_p − 2) ≥ 2` on `D_p`.
    pub fn genus_constraint(&self, p: u32) -> Result<bool> {
        let n = match self.base() {
            BasisTag::Hirzebruch(n) => i64::from(n),
            BasisTag::P2 => return Err(Error::NotApplicable("genus constraint needs a ruled base".into())),
        };
        let top = self.components.iter().map(|c| p_power(c.e, p)).max().unwrap_or(0);
        if top == 0 {
            return Err(Error::NotApplicable(format!("{p} divides no ramification degree")));
        }
        let pk = p.pow(top);
        let (mut a, mut b) = (Q::zero(), Q::zero());
        for c in self.components.iter().filter(|c| c.e % pk == 0) {
            a += c.curve.cls.coeffs_base[0];
            b += c.curve.cls.coeffs_base[1];
        }
        let two_pa = (a - Q::one()) * (q(2) * b - q(n) * a - q(2));
        Ok(two_pa >= q(2))
    }

    /// Primes dividing some ramification degree.
    pub fn ramification_primes(&self) -> Vec<u32> {
        let mut ps = BTreeSet::new();
        for c in &self.components {
            let mut e = c.e;
            let mut d = 2;
            while e > 1 {
                if e % d == 0 {
                    ps.insert(d);
                    e /= d;
                } else {
                    d += 1;
                }
            }
        }
        ps.into_iter().collect()
    }

    pub fn position_predicate(&self, flavor: Flavor) -> Result<bool> {
        position_predicate_over(&self.surface, self.all_curves(), flavor)
    }

    /// The numeric terminality constraints that are checked; anything else is
    /// taken on trust.
    pub fn shallow_terminal_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for n in self.nodes() {
            let (a, b) = n.degrees;
            if b % a != 0 {
                out.push(format!("node {} has degrees ({a}, {b})", n.point));
            }
        }
        if let BasisTag::Hirzebruch(_) = self.base() {
            let a: Q = self.components.iter().map(|c| c.curve.cls.coeffs_base[0]).sum();
            if a == q(3) && self.components.iter().any(|c| c.e != 2) {
                out.push("a = 3 forces every ramification degree to be 2".into());
            }
        }
        out
    }

    /// The same surface with `Δ = 0`; component curves stay as declared curves.
    pub fn centre(&self) -> OrderData {
        let mut s = self.surface.clone();
        for c in &self.components {
            s.curves.push(c.curve.clone());
        }
        OrderData { surface: s, components: Vec::new() }
    }
}

/// Degree given to the exceptional curve when a node with branch degrees
/// `(a, b)` is blown up.
pub fn exceptional_degree_at_node(a: u32, b: u32) -> u32 {
    a.min(b)
}

fn exceptional_component_id(o: &OrderData, point: &str) -> String {
    let base = format!("E_{point}");
    let taken = |id: &str| o.all_curves().any(|c| c.id == id);
    if !taken(&base) {
        return base;
    }
    (2..).map(|i| format!("{base}_{i}")).find(|id| !taken(id)).expect("unbounded")
}

fn p_power(mut e: u32, p: u32) -> u32 {
    let mut k = 0;
    while e.is_multiple_of(p) {
        e /= p;
        k += 1;
    }
    k
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::OffD => write!(f, "off D"),
            Location::Smooth(c) => write!(f, "smooth on {c}"),
            Location::Node(a, b) => write!(f, "node {a}+{b}"),
            Location::SelfNode(c) => write!(f, "node of {c}"),
        }
    }
}
