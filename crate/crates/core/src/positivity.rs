//! Effective-cone generators, the del Pezzo style predicates, K-zero curves
//! and the contraction loop.
//!
//! A generator is only ever produced from a witness: a declared curve, a
//! ramification component, the exceptional curve of a blowup point, or one of
//! the intrinsic curves of the base (`H`; `C₀` and `F`; the pencil of lines
//! through a single blown-up point). The brute-force numeric search in
//! [`cone_diagnostics`] exists to surface classes that look like generators
//! but have no witness.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::config::CurveRecord;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lattice::{BasisTag, DivisorClass};
use crate::order::OrderData;
use crate::rational::{q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    MinusOne,
    MinusTwo,
    ZeroFibre,
    PlaneLine,
    /// A witnessed irreducible curve of negative square that is neither a
    /// (−1)- nor a (−2)-curve.
    Negative,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GeneratorKind::MinusOne => "minus-one",
            GeneratorKind::MinusTwo => "minus-two",
            GeneratorKind::ZeroFibre => "zero-fibre",
            GeneratorKind::PlaneLine => "plane-line",
            GeneratorKind::Negative => "negative",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Witness {
    Curve(String),
    Exceptional(String),
    Intrinsic(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Curve(id) => write!(f, "{id}"),
            Witness::Exceptional(p) => write!(f, "exc:{p}"),
            Witness::Intrinsic(name) => write!(f, "{name}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeGenerator {
    pub cls: DivisorClass,
    pub kind: GeneratorKind,
    pub witness: Witness,
}

impl ConeGenerator {
    pub fn square(&self) -> Q {
        self.cls.square()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub cls: DivisorClass,
    pub kept: bool,
    pub reason: String,
}

fn check_budget(o: &OrderData) -> Result<()> {
    let limit = o.base().max_blowups();
    if o.num_blowups() > limit {
        return Err(Error::BudgetExceeded { base: o.base().name(), blowups: o.num_blowups(), limit });
    }
    Ok(())
}

fn picard_rank(o: &OrderData) -> usize {
    o.base().rank() + o.num_blowups()
}

/// Numeric kind of a class, if it is one of the generator shapes.
pub fn kind_of(o: &OrderData, cls: &DivisorClass) -> Option<GeneratorKind> {
    let s = cls.square();
    let kz = o.surface.canonical_class().intersect(cls).ok()?;
    if s == q(-1) && kz == q(-1) {
        Some(GeneratorKind::MinusOne)
    } else if s == q(-2) && kz.is_zero() {
        Some(GeneratorKind::MinusTwo)
    } else if s.is_zero() && kz == q(-2) && picard_rank(o) == 2 {
        Some(GeneratorKind::ZeroFibre)
    } else if o.base() == BasisTag::P2 && o.num_blowups() == 0 && *cls == DivisorClass::h(0) {
        Some(GeneratorKind::PlaneLine)
    } else if s.is_negative() {
        Some(GeneratorKind::Negative)
    } else {
        None
    }
}

/// Every (class, witness) pair the model can vouch for, before dedup.
pub fn witnesses(o: &OrderData) -> Result<Vec<(DivisorClass, Witness)>> {
    let s = &o.surface;
    let k = s.num_blowups();
    let mut out = Vec::new();
    for c in o.all_curves().filter(|c| c.irreducible) {
        let w = match &c.exceptional_of {
            Some(p) if c.mults.is_empty() && s.children(p).is_empty() => Witness::Exceptional(p.clone()),
            _ => Witness::Curve(c.id.clone()),
        };
        out.push((s.strict_transform(c)?, w));
    }
    for p in &s.points {
        out.push((s.exceptional_class(&p.id)?, Witness::Exceptional(p.id.clone())));
    }
    if let BasisTag::Hirzebruch(n) = s.base {
        let declared = o.all_curves().any(|c| c.exceptional_of.is_none() && c.cls == DivisorClass::c0(n, 0));
        if n >= 1 && !declared {
            let c0 = CurveRecord::new("C0", DivisorClass::c0(n, 0), &[]);
            out.push((s.strict_transform(&c0)?, Witness::Intrinsic("C0".into())));
        }
        if k == 0 {
            out.push((DivisorClass::c0(n, 0), Witness::Intrinsic("C0".into())));
            out.push((DivisorClass::fibre(n, 0), Witness::Intrinsic("F".into())));
        }
    } else if k == 0 {
        out.push((DivisorClass::h(0), Witness::Intrinsic("H".into())));
    } else if k == 1 {
        let pencil = &DivisorClass::h(1) - &DivisorClass::exceptional(BasisTag::P2, 1, 0);
        out.push((pencil, Witness::Intrinsic("pencil".into())));
    }
    Ok(out)
}

/// Generators of the effective cone, deduplicated by class and sorted by
/// coefficient vector.
pub fn effective_cone_generators(o: &OrderData) -> Result<Vec<ConeGenerator>> {
    check_budget(o)?;
    let mut by_class: BTreeMap<Vec<Q>, ConeGenerator> = BTreeMap::new();
    for (cls, witness) in witnesses(o)? {
        let Some(kind) = kind_of(o, &cls) else {
            continue;
        };
        by_class.entry(cls.coeffs()).or_insert(ConeGenerator { cls, kind, witness });
    }
    Ok(by_class.into_values().collect())
}

/// Numeric candidates in the bounded search box together with whether a
/// witness backs them.
pub fn cone_diagnostics(o: &OrderData, exec: Exec) -> Result<Vec<Diagnostic>> {
    let gens = effective_cone_generators(o)?;
    let known: BTreeMap<Vec<Q>, &ConeGenerator> = gens.iter().map(|g| (g.cls.coeffs(), g)).collect();
    let k = o.num_blowups();
    let heads: Vec<Vec<i64>> = match o.base() {
        BasisTag::P2 => (0..=3).map(|d| vec![d]).collect(),
        BasisTag::Hirzebruch(_) => {
            let mut v = Vec::new();
            for a in 0..=4 {
                for b in 0..=(4 - a) {
                    v.push(vec![a, b]);
                }
            }
            v
        }
    };
    let kz = o.surface.canonical_class();
    let rank2 = picard_rank(o) == 2;
    let found = exec.flat_map(heads, |head| {
        let lead = head[0];
        let (lo, hi) = if head.iter().all(|&x| x == 0) { (-1, 1) } else { (0, lead.max(1)) };
        let mut out = Vec::new();
        let mut m = vec![lo; k];
        loop {
            let cls = DivisorClass::from_ints(o.base(), &head, &m.iter().map(|x| -x).collect::<Vec<_>>())
                .expect("base length matches");
            let leading_positive = cls.coeffs().into_iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_positive());
            if leading_positive {
                let s = cls.square();
                let kk = kz.intersect(&cls).expect("same lattice");
                let shaped = (s == q(-1) && kk == q(-1))
                    || (s == q(-2) && kk.is_zero())
                    || (rank2 && s.is_zero() && kk == q(-2));
                if shaped {
                    out.push(cls);
                }
            }
            let mut i = 0;
            while i < k && m[i] == hi {
                m[i] = lo;
                i += 1;
            }
            if i == k {
                break;
            }
            m[i] += 1;
        }
        out
    });
    let mut diags: Vec<Diagnostic> = found
        .into_iter()
        .map(|cls| match known.get(&cls.coeffs()) {
            Some(g) => Diagnostic { cls, kept: true, reason: format!("witnessed by {}", g.witness) },
            None => Diagnostic { cls, kept: false, reason: "no declared witness".into() },
        })
        .collect();
    diags.sort_by(|a, b| a.cls.lex_cmp(&b.cls));
    Ok(diags)
}

fn k_dots(o: &OrderData) -> Result<Vec<(ConeGenerator, Q)>> {
    let k = o.order_canonical();
    effective_cone_generators(o)?
        .into_iter()
        .map(|g| {
            let v = k.intersect(&g.cls)?;
            Ok((g, v))
        })
        .collect()
}

pub fn is_del_pezzo(o: &OrderData) -> Result<bool> {
    if !o.k_squared().is_positive() {
        return Ok(false);
    }
    Ok(k_dots(o)?.iter().all(|(_, v)| v.is_negative()))
}

pub fn is_almost_del_pezzo(o: &OrderData) -> Result<bool> {
    if !o.k_squared().is_positive() {
        return Ok(false);
    }
    Ok(k_dots(o)?.iter().all(|(_, v)| !v.is_positive()))
}

pub fn is_minimal(o: &OrderData) -> Result<bool> {
    Ok(!k_dots(o)?.iter().any(|(g, v)| g.square().is_negative() && v.is_negative()))
}

pub fn k_zero_curves(o: &OrderData) -> Result<Vec<ConeGenerator>> {
    if !is_almost_del_pezzo(o)? {
        return Err(Error::PredicateViolation("order is not almost del Pezzo".into()));
    }
    Ok(k_dots(o)?.into_iter().filter(|(_, v)| v.is_zero()).map(|(g, _)| g).collect())
}

/// The quantities entering the multiplicity criterion for a strict class
/// `c` whose image on the base is `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultBound {
    /// `f_*C² − C̃²`, i.e. `Σ mᵢ²` for a curve from the base.
    pub multiplicity: Q,
    /// `2 − 2p_a − (e−1)M·C̃ + f_*C²`.
    pub bound: Q,
}

pub fn mult_bound(o: &OrderData, c: &DivisorClass, base: &DivisorClass) -> Result<MultBound> {
    let e =
        o.uniform_degree().ok_or_else(|| Error::NotApplicable("ramification degrees differ or are absent".into()))?;
    let m = o.m_decomposition()?.ok_or_else(|| Error::NotApplicable("D + K_Z is not effective".into()))?;
    let kz = o.surface.canonical_class();
    let two_pa_minus_2 = kz.intersect(c)? + c.square();
    let fc2 = base.square();
    let multiplicity = fc2 - c.square();
    let bound = -two_pa_minus_2 - q(i64::from(e) - 1) * m.intersect(c)? + fc2;
    Ok(MultBound { multiplicity, bound })
}

/// Multiplicity form of the sign test `K_X·C̃ < 0` (strict) or `≤ 0` (weak).
pub fn mult_criterion(o: &OrderData, curve: &CurveRecord, strict: bool) -> Result<bool> {
    let c = o.curve_class(curve)?;
    let b = mult_bound(o, &c, &curve.cls)?;
    Ok(if strict { b.multiplicity < b.bound } else { b.multiplicity <= b.bound })
}

pub fn mult_criterion_generator(o: &OrderData, g: &ConeGenerator, strict: bool) -> Result<bool> {
    let base = g.cls.base_part();
    let b = mult_bound(o, &g.cls, &base)?;
    Ok(if strict { b.multiplicity < b.bound } else { b.multiplicity <= b.bound })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionStep {
    pub contracted: ConeGenerator,
    pub point: String,
    pub before: OrderData,
    pub after: OrderData,
    pub coefficient: Q,
}

/// Leaf point whose exceptional curve has class `cls`.
fn contractible_point(o: &OrderData, cls: &DivisorClass) -> Option<String> {
    o.surface
        .points
        .iter()
        .filter(|p| o.surface.is_leaf(&p.id))
        .find(|p| o.surface.exceptional_class(&p.id).ok().as_ref() == Some(cls))
        .map(|p| p.id.clone())
}

/// Blow down the exceptional curve of a leaf of the blowup forest.
pub fn contract(o: &OrderData, g: &ConeGenerator) -> Result<OrderData> {
    if g.kind != GeneratorKind::MinusOne {
        return Err(Error::UnsupportedContraction(format!("{} is not a (−1)-curve", g.cls)));
    }
    let p = contractible_point(o, &g.cls)
        .ok_or_else(|| Error::UnsupportedContraction(format!("{} is not a leaf exceptional curve", g.cls)))?;
    contract_point(o, &p)
}

pub fn contract_point(o: &OrderData, p: &str) -> Result<OrderData> {
    let i = o.surface.index_of(p)?;
    if !o.surface.is_leaf(p) {
        return Err(Error::UnsupportedContraction(format!("point `{p}` has infinitely near points")));
    }
    let mut out = o.clone();
    out.surface.points.remove(i);
    out.surface.curves.retain(|c| c.exceptional_of.as_deref() != Some(p));
    for c in out.surface.curves.iter_mut() {
        c.mults.remove(p);
    }
    out.components.retain(|c| c.curve.exceptional_of.as_deref() != Some(p));
    for c in out.components.iter_mut() {
        c.curve.mults.remove(p);
    }
    out.validate()?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MmpResult {
    pub order: OrderData,
    pub steps: Vec<ContractionStep>,
    /// Set when a K-negative negative curve remains that the model cannot
    /// contract.
    pub diagnostic: Option<String>,
}

pub fn run_mmp(o: &OrderData) -> Result<MmpResult> {
    let mut cur = o.clone();
    let mut steps = Vec::new();
    loop {
        let kx = cur.order_canonical();
        let mut negative = Vec::new();
        for g in effective_cone_generators(&cur)? {
            let v = kx.intersect(&g.cls)?;
            if g.square().is_negative() && v.is_negative() {
                negative.push((g, v));
            }
        }
        if negative.is_empty() {
            return Ok(MmpResult { order: cur, steps, diagnostic: None });
        }
        negative.sort_by(|a, b| a.0.cls.lex_cmp(&b.0.cls));
        let pick = negative
            .iter()
            .find(|(g, _)| g.kind == GeneratorKind::MinusOne && contractible_point(&cur, &g.cls).is_some());
        let Some((g, v)) = pick else {
            let names: Vec<String> = negative.iter().map(|(g, _)| format!("{} ({})", g.cls, g.witness)).collect();
            return Ok(MmpResult {
                order: cur,
                steps,
                diagnostic: Some(format!("K-negative curves not contractible in the model: {}", names.join(", "))),
            });
        };
        let point = contractible_point(&cur, &g.cls).expect("checked above");
        let after = contract_point(&cur, &point)?;
        steps.push(ContractionStep {
            contracted: g.clone(),
            point,
            before: cur,
            after: after.clone(),
            coefficient: -*v,
        });
        cur = after;
    }
}

/// Whether `K_X·g` for the witness has the sign expected by the predicate.
pub fn sign_test(o: &OrderData, g: &ConeGenerator, strict: bool) -> Result<bool> {
    let v = o.k_dot(&g.cls)?;
    Ok(if strict { v.is_negative() } else { !v.is_positive() })
}
