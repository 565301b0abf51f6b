//! Blowup forests, declared curves and the (almost) general position
//! predicates.
//!
//! Incidence is declared, never computed: a curve lists its multiplicity at
//! every blowup point it passes through (absent means 0).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::{canonical_class_k, BasisTag, DivisorClass};
use crate::rational::q;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Parent {
    Base,
    Point(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlowupPoint {
    pub id: String,
    pub parent: Parent,
    pub on_d: bool,
    pub node: bool,
}

impl BlowupPoint {
    pub fn on_base(id: &str) -> Self {
        BlowupPoint { id: id.to_string(), parent: Parent::Base, on_d: false, node: false }
    }

    pub fn near(id: &str, parent: &str) -> Self {
        BlowupPoint { id: id.to_string(), parent: Parent::Point(parent.to_string()), on_d: false, node: false }
    }

    pub fn in_d(mut self) -> Self {
        self.on_d = true;
        self
    }

    pub fn infinitely_near(&self) -> bool {
        matches!(self.parent, Parent::Point(_))
    }
}

/// A declared effective curve. `cls` is the class on the base surface; for
/// the exceptional curve of a point `p` it is zero and `exceptional_of = p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveRecord {
    pub id: String,
    pub cls: DivisorClass,
    pub mults: BTreeMap<String, u32>,
    pub irreducible: bool,
    pub exceptional_of: Option<String>,
}

impl CurveRecord {
    pub fn new(id: &str, cls: DivisorClass, mults: &[(&str, u32)]) -> Self {
        CurveRecord {
            id: id.to_string(),
            cls,
            mults: mults.iter().filter(|(_, m)| *m > 0).map(|(p, m)| (p.to_string(), *m)).collect(),
            irreducible: true,
            exceptional_of: None,
        }
    }

    pub fn exceptional(id: &str, base: BasisTag, point: &str) -> Self {
        CurveRecord {
            id: id.to_string(),
            cls: DivisorClass::zero(base, 0),
            mults: BTreeMap::new(),
            irreducible: true,
            exceptional_of: Some(point.to_string()),
        }
    }

    pub fn reducible(mut self) -> Self {
        self.irreducible = false;
        self
    }

    pub fn mult(&self, p: &str) -> u32 {
        self.mults.get(p).copied().unwrap_or(0)
    }

    /// Base-surface degree data: `[d]` or `[a, b]` as integers.
    pub fn base_degrees(&self) -> Vec<i64> {
        self.cls.coeffs_base.iter().map(|c| c.to_integer()).collect()
    }
}

/// `mult_Σ C`: the sum of declared multiplicities over the points of `sigma`.
pub fn multiplicity_at<'a>(curve: &CurveRecord, sigma: impl IntoIterator<Item = &'a str>) -> u32 {
    sigma.into_iter().map(|p| curve.mult(p)).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    GeneralP2,
    AlmostGeneralP2,
    GeneralP1P1,
    AlmostGeneralP1P1,
    AlmostGeneralF1,
    AlmostGeneralF2,
}

impl Flavor {
    pub const ALL: [Flavor; 6] = [
        Flavor::GeneralP2,
        Flavor::AlmostGeneralP2,
        Flavor::GeneralP1P1,
        Flavor::AlmostGeneralP1P1,
        Flavor::AlmostGeneralF1,
        Flavor::AlmostGeneralF2,
    ];

    pub fn base(self) -> BasisTag {
        match self {
            Flavor::GeneralP2 | Flavor::AlmostGeneralP2 => BasisTag::P2,
            Flavor::GeneralP1P1 | Flavor::AlmostGeneralP1P1 => BasisTag::Hirzebruch(0),
            Flavor::AlmostGeneralF1 => BasisTag::Hirzebruch(1),
            Flavor::AlmostGeneralF2 => BasisTag::Hirzebruch(2),
        }
    }

    pub fn is_almost(self) -> bool {
        !matches!(self, Flavor::GeneralP2 | Flavor::GeneralP1P1)
    }

    /// Largest admissible `mult_Σ` for an irreducible curve with the given
    /// base degrees, or `None` when the flavor puts no bound on it.
    pub fn bound(self, deg: &[i64]) -> Option<i64> {
        match (self, deg) {
            (Flavor::GeneralP2, [d]) if (1..=3).contains(d) => Some(3 * d - 1),
            (Flavor::AlmostGeneralP2, [d]) if (1..=3).contains(d) => Some(3 * d),
            (Flavor::GeneralP1P1, [a, b]) => Some(2 * (a + b) - 1),
            (Flavor::AlmostGeneralP1P1, [a, b]) => Some(2 * (a + b)),
            (Flavor::AlmostGeneralF1, [a, b]) => Some(2 + a * (2 * b - a - 1)),
            (Flavor::AlmostGeneralF2, [a, b]) => Some(2 + a * (2 * b - 2 * a)),
            _ => None,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Flavor::GeneralP2 => "general-P2",
            Flavor::AlmostGeneralP2 => "almost-general-P2",
            Flavor::GeneralP1P1 => "general-P1P1",
            Flavor::AlmostGeneralP1P1 => "almost-general-P1P1",
            Flavor::AlmostGeneralF1 => "almost-general-F1",
            Flavor::AlmostGeneralF2 => "almost-general-F2",
        };
        f.write_str(s)
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Flavor::ALL
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown flavor `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceModel {
    pub base: BasisTag,
    pub points: Vec<BlowupPoint>,
    pub curves: Vec<CurveRecord>,
}

impl SurfaceModel {
    pub fn new(base: BasisTag) -> Self {
        SurfaceModel { base, points: Vec::new(), curves: Vec::new() }
    }

    pub fn num_blowups(&self) -> usize {
        self.points.len()
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.points.iter().position(|p| p.id == id).ok_or_else(|| Error::UnknownPoint(id.to_string()))
    }

    pub fn point(&self, id: &str) -> Result<&BlowupPoint> {
        Ok(&self.points[self.index_of(id)?])
    }

    pub fn point_ids(&self) -> impl Iterator<Item = &str> {
        self.points.iter().map(|p| p.id.as_str())
    }

    /// First-order infinitely near points of `id`, in creation order.
    pub fn children(&self, id: &str) -> Vec<&BlowupPoint> {
        self.points.iter().filter(|p| p.parent == Parent::Point(id.to_string())).collect()
    }

    pub fn is_leaf(&self, id: &str) -> bool {
        self.children(id).is_empty()
    }

    pub fn curve(&self, id: &str) -> Result<&CurveRecord> {
        self.curves.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownCurve(id.to_string()))
    }

    /// Structural validation of the forest and every declared curve.
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for p in &self.points {
            if !seen.insert(p.id.as_str()) {
                return Err(Error::InvalidConfiguration(format!("duplicate point id `{}`", p.id)));
            }
            if let Parent::Point(par) = &p.parent {
                if !seen.contains(par.as_str()) || par == &p.id {
                    return Err(Error::InvalidConfiguration(format!(
                        "point `{}` must come after its parent `{par}`",
                        p.id
                    )));
                }
            }
            if p.node && !p.on_d {
                return Err(Error::InvalidConfiguration(format!("point `{}` is a node but not on D", p.id)));
            }
        }
        let mut ids = BTreeSet::new();
        for c in &self.curves {
            if !ids.insert(c.id.as_str()) {
                return Err(Error::InvalidConfiguration(format!("duplicate curve id `{}`", c.id)));
            }
            self.validate_curve(c)?;
        }
        Ok(())
    }

    /// Lattice, incidence and proximity checks for one curve.
    pub fn validate_curve(&self, c: &CurveRecord) -> Result<()> {
        if c.cls.base != self.base || !c.cls.coeffs_exc.is_empty() {
            return Err(Error::Dimension(format!("curve `{}` is not a base class on {}", c.id, self.base)));
        }
        for p in c.mults.keys() {
            if self.index_of(p).is_err() {
                return Err(Error::Incidence(format!("curve `{}` references unknown point `{p}`", c.id)));
            }
        }
        let born = match &c.exceptional_of {
            Some(p) => {
                let i = self.index_of(p)?;
                if !c.cls.is_zero() {
                    return Err(Error::InvalidConfiguration(format!(
                        "exceptional curve `{}` must have zero base class",
                        c.id
                    )));
                }
                for (j, pt) in self.points.iter().enumerate() {
                    let m = c.mult(&pt.id);
                    let child = pt.parent == Parent::Point(p.clone());
                    if (j <= i && m > 0) || (child && m != 1) {
                        return Err(Error::InvalidConfiguration(format!(
                            "exceptional curve `{}` has multiplicity {m} at `{}`",
                            c.id, pt.id
                        )));
                    }
                }
                Some(i)
            }
            None => None,
        };
        for (i, p) in self.points.iter().enumerate() {
            if born.is_some_and(|b| i <= b) {
                continue;
            }
            let below: u32 = self.children(&p.id).iter().map(|ch| c.mult(&ch.id)).sum();
            if c.mult(&p.id) < below {
                return Err(Error::InvalidConfiguration(format!(
                    "curve `{}` violates proximity at `{}`: {} < {below}",
                    c.id,
                    p.id,
                    c.mult(&p.id)
                )));
            }
        }
        Ok(())
    }

    pub fn canonical_class(&self) -> DivisorClass {
        canonical_class_k(self.base, self.num_blowups())
    }

    /// True when `self` is obtained from `other` by further blowups.
    pub fn extends(&self, other: &SurfaceModel) -> bool {
        self.base == other.base
            && other.points.len() <= self.points.len()
            && other.points.iter().zip(&self.points).all(|(a, b)| a.id == b.id && a.parent == b.parent)
    }

    pub fn total_transform(&self, c: &DivisorClass) -> Result<DivisorClass> {
        if c.base != self.base {
            return Err(Error::Lineage(format!("class on {} pulled back to {}", c.base, self.base)));
        }
        c.pad_to(self.num_blowups())
    }

    pub fn pushforward(&self, c: &DivisorClass, target: &SurfaceModel) -> Result<DivisorClass> {
        if !self.extends(target) || c.num_blowups() != self.num_blowups() {
            return Err(Error::Lineage("pushforward target is not an ancestor".into()));
        }
        c.truncate_to(target.num_blowups())
    }

    /// `f*C − Σ mᵢEᵢ` (plus `E_p` for the exceptional curve of `p`).
    pub fn strict_transform(&self, c: &CurveRecord) -> Result<DivisorClass> {
        self.validate_curve(c)?;
        let k = self.num_blowups();
        let mut cls = self.total_transform(&c.cls)?;
        if let Some(p) = &c.exceptional_of {
            cls.coeffs_exc[self.index_of(p)?] += q(1);
        }
        for (i, p) in self.points.iter().enumerate() {
            cls.coeffs_exc[i] -= q(i64::from(c.mult(&p.id)));
        }
        debug_assert_eq!(cls.num_blowups(), k);
        Ok(cls)
    }

    /// Strict transform of the exceptional curve of `p`: `E_p − Σ_children E_j`.
    pub fn exceptional_class(&self, p: &str) -> Result<DivisorClass> {
        let i = self.index_of(p)?;
        let mut cls = DivisorClass::exceptional(self.base, self.num_blowups(), i);
        for ch in self.children(p) {
            cls.coeffs_exc[self.index_of(&ch.id)?] -= q(1);
        }
        Ok(cls)
    }

    pub fn position_predicate(&self, flavor: Flavor) -> Result<bool> {
        position_predicate_over(self, self.curves.iter(), flavor)
    }

    /// Declared irreducible (a,b)-curves carrying exactly `2(a+b)` points.
    pub fn sigma_almost_general_curves(&self) -> Result<Vec<&CurveRecord>> {
        if self.base != BasisTag::Hirzebruch(0) {
            return Err(Error::FlavorMismatch { flavor: "sigma-almost-general".into(), base: self.base.name() });
        }
        Ok(self
            .curves
            .iter()
            .filter(|c| c.irreducible && c.exceptional_of.is_none())
            .filter(|c| {
                let d = c.base_degrees();
                i64::from(multiplicity_at(c, self.point_ids())) == 2 * (d[0] + d[1])
            })
            .collect())
    }

    /// Model with one more point appended.
    pub fn with_point(&self, p: BlowupPoint) -> Result<SurfaceModel> {
        let mut s = self.clone();
        s.points.push(p);
        s.validate()?;
        Ok(s)
    }
}

/// The position predicate evaluated over an explicit list of curves (the
/// order model adds its ramification components to the declared curves).
pub fn position_predicate_over<'a>(
    s: &SurfaceModel,
    curves: impl IntoIterator<Item = &'a CurveRecord>,
    flavor: Flavor,
) -> Result<bool> {
    if flavor.base() != s.base {
        return Err(Error::FlavorMismatch { flavor: flavor.to_string(), base: s.base.name() });
    }
    if flavor.is_almost() {
        if s.base != BasisTag::P2 && s.num_blowups() >= 8 {
            return Ok(false);
        }
        if s.points.iter().any(|p| s.children(&p.id).len() > 1) {
            return Ok(false);
        }
    } else if s.points.iter().any(BlowupPoint::infinitely_near) {
        return Ok(false);
    }
    for c in curves {
        if !c.irreducible || c.exceptional_of.is_some() {
            continue;
        }
        if let Some(bound) = flavor.bound(&c.base_degrees()) {
            if i64::from(multiplicity_at(c, s.point_ids())) > bound {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2_points(n: usize) -> SurfaceModel {
        let mut s = SurfaceModel::new(BasisTag::P2);
        for i in 1..=n {
            s.points.push(BlowupPoint::on_base(&format!("p{i}")));
        }
        s
    }

    fn line(id: &str, pts: &[&str]) -> CurveRecord {
        let m: Vec<(&str, u32)> = pts.iter().map(|p| (*p, 1)).collect();
        CurveRecord::new(id, DivisorClass::h(0), &m)
    }

    #[test]
    fn strict_transforms() {
        let s = p2_points(2);
        let l = s.strict_transform(&line("L", &["p1", "p2"])).unwrap();
        assert_eq!(l.coeffs(), vec![q(1), q(-1), q(-1)]);
        assert_eq!(l.square(), q(-1));

        let s6 = p2_points(6);
        let conic = CurveRecord::new(
            "C",
            DivisorClass::h(0).scale(q(2)),
            &[("p1", 1), ("p2", 1), ("p3", 1), ("p4", 1), ("p5", 1), ("p6", 1)],
        );
        assert_eq!(s6.strict_transform(&conic).unwrap().square(), q(-2));

        let mut f2 = SurfaceModel::new(BasisTag::Hirzebruch(2));
        f2.points.push(BlowupPoint::on_base("p"));
        let fib = CurveRecord::new("F", DivisorClass::fibre(2, 0), &[("p", 1)]);
        assert_eq!(f2.strict_transform(&fib).unwrap().square(), q(-1));
    }

    #[test]
    fn unknown_incidence_is_rejected() {
        let s = p2_points(1);
        let bad = line("L", &["zz"]);
        assert!(matches!(s.strict_transform(&bad), Err(Error::Incidence(_))));
    }

    #[test]
    fn proximity_is_enforced() {
        let mut s = p2_points(1);
        s.points.push(BlowupPoint::near("q", "p1"));
        s.points.push(BlowupPoint::near("r", "p1"));
        let ok = CurveRecord::new("C", DivisorClass::h(0).scale(q(2)), &[("p1", 2), ("q", 1), ("r", 1)]);
        assert!(s.strict_transform(&ok).is_ok());
        let bad = CurveRecord::new("L", DivisorClass::h(0), &[("p1", 1), ("q", 1), ("r", 1)]);
        assert!(matches!(s.strict_transform(&bad), Err(Error::InvalidConfiguration(_))));
    }

    #[test]
    fn exceptional_classes() {
        let s = p2_points(1);
        assert_eq!(s.exceptional_class("p1").unwrap().square(), q(-1));
        let mut chain = p2_points(1);
        chain.points.push(BlowupPoint::near("p2", "p1"));
        assert_eq!(chain.exceptional_class("p1").unwrap().square(), q(-2));
        assert_eq!(chain.exceptional_class("p2").unwrap().square(), q(-1));
        chain.points.push(BlowupPoint::near("p3", "p2"));
        let mid = chain.exceptional_class("p2").unwrap();
        assert_eq!(mid.coeffs(), vec![q(0), q(0), q(1), q(-1)]);
        assert_eq!(mid.square(), q(-2));
        assert!(matches!(chain.exceptional_class("nope"), Err(Error::UnknownPoint(_))));
    }

    #[test]
    fn multiplicities() {
        let l = line("L", &["p1", "p2"]);
        assert_eq!(multiplicity_at(&l, ["p1", "p2"]), 2);
        let mut m = vec![("p1", 2)];
        let rest: Vec<String> = (2..=8).map(|i| format!("p{i}")).collect();
        for r in &rest {
            m.push((r.as_str(), 1));
        }
        let cubic = CurveRecord::new("N", DivisorClass::h(0).scale(q(3)), &m);
        let s = p2_points(8);
        assert_eq!(multiplicity_at(&cubic, s.point_ids()), 9);
    }

    #[test]
    fn position_predicates() {
        let mut s = p2_points(3);
        s.curves.push(line("L", &["p1", "p2", "p3"]));
        assert!(!s.position_predicate(Flavor::GeneralP2).unwrap());
        assert!(s.position_predicate(Flavor::AlmostGeneralP2).unwrap());
        assert!(matches!(s.position_predicate(Flavor::AlmostGeneralF1), Err(Error::FlavorMismatch { .. })));

        let mut f2 = SurfaceModel::new(BasisTag::Hirzebruch(2));
        let mut m = Vec::new();
        for i in 1..=5 {
            f2.points.push(BlowupPoint::on_base(&format!("p{i}")));
        }
        let ids: Vec<String> = (1..=5).map(|i| format!("p{i}")).collect();
        for id in &ids {
            m.push((id.as_str(), 1));
        }
        f2.curves.push(CurveRecord::new(
            "S",
            DivisorClass::from_ints(BasisTag::Hirzebruch(2), &[1, 2], &[]).unwrap(),
            &m,
        ));
        assert_eq!(Flavor::AlmostGeneralF2.bound(&[1, 2]), Some(4));
        assert!(!f2.position_predicate(Flavor::AlmostGeneralF2).unwrap());
    }

    #[test]
    fn almost_general_rejects_points_on_minus_two_exceptionals() {
        let mut s = p2_points(1);
        s.points.push(BlowupPoint::near("q", "p1"));
        assert!(!s.position_predicate(Flavor::GeneralP2).unwrap());
        assert!(s.position_predicate(Flavor::AlmostGeneralP2).unwrap());
        s.points.push(BlowupPoint::near("r", "p1"));
        assert!(!s.position_predicate(Flavor::AlmostGeneralP2).unwrap());
    }

    #[test]
    fn sigma_almost_general() {
        let mut s = SurfaceModel::new(BasisTag::Hirzebruch(0));
        for i in 1..=4 {
            s.points.push(BlowupPoint::on_base(&format!("p{i}")));
        }
        let f0 = BasisTag::Hirzebruch(0);
        s.curves.push(CurveRecord::new("F", DivisorClass::fibre(0, 0), &[("p1", 1), ("p2", 1)]));
        s.curves.push(CurveRecord::new(
            "Q",
            DivisorClass::from_ints(f0, &[1, 1], &[]).unwrap(),
            &[("p1", 1), ("p2", 1), ("p3", 1), ("p4", 1)],
        ));
        s.curves.push(CurveRecord::new(
            "R",
            DivisorClass::from_ints(f0, &[1, 1], &[]).unwrap(),
            &[("p1", 1), ("p3", 1), ("p4", 1)],
        ));
        let ids: Vec<&str> = s.sigma_almost_general_curves().unwrap().iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, vec!["F", "Q"]);
        for c in s.sigma_almost_general_curves().unwrap() {
            assert_eq!(s.strict_transform(c).unwrap().square(), q(-2));
        }
        assert!(p2_points(0).sigma_almost_general_curves().is_err());
    }

    #[test]
    fn extension_and_pushforward() {
        let s0 = p2_points(0);
        let s1 = p2_points(1);
        assert!(s1.extends(&s0));
        assert!(!s0.extends(&s1));
        let h = s1.total_transform(&DivisorClass::h(0)).unwrap();
        let l = &h - &DivisorClass::exceptional(BasisTag::P2, 1, 0);
        assert_eq!(s1.pushforward(&l, &s0).unwrap(), DivisorClass::h(0));
        assert!(s1.pushforward(&DivisorClass::exceptional(BasisTag::P2, 1, 0), &s0).unwrap().is_zero());
        let f1 = SurfaceModel::new(BasisTag::Hirzebruch(1));
        assert!(matches!(s1.pushforward(&l, &f1), Err(Error::Lineage(_))));
    }
}
