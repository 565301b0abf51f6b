//! Matching blown-up orders against the classification clauses, and the
//! per-configuration blowup budgets.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{describe, ClassificationRecord};
use crate::config::Flavor;
use crate::error::{Error, Result};
use crate::lattice::{BasisTag, DivisorClass};
use crate::order::OrderData;
use crate::positivity::{is_almost_del_pezzo, is_del_pezzo, k_zero_curves, ConeGenerator, GeneratorKind, Witness};
use crate::rational::Q;

/// The minimal configuration an order was blown up from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Minimal {
    P2 { d: i64, e: u32 },
    Ruled { n: u32, a: i64, b: i64, e: u32 },
}

fn int(x: &Q) -> Option<i64> {
    x.is_integer().then(|| x.to_integer())
}

/// Base class of `f_*D` and the uniform degree; `None` for mixed degrees.
pub fn minimal_of(o: &OrderData) -> Option<Minimal> {
    let e = o.uniform_degree()?;
    let d = o.d_class().base_part();
    match o.base() {
        BasisTag::P2 => Some(Minimal::P2 { d: int(&d.coeffs_base[0])?, e }),
        BasisTag::Hirzebruch(n) => {
            let (a, b) = (int(&d.coeffs_base[0])?, int(&d.coeffs_base[1])?);
            Some(Minimal::Ruled { n, a, b, e })
        }
    }
}

fn flavor(o: &OrderData) -> Flavor {
    match o.base() {
        BasisTag::P2 => Flavor::AlmostGeneralP2,
        BasisTag::Hirzebruch(0) => Flavor::AlmostGeneralP1P1,
        BasisTag::Hirzebruch(1) => Flavor::AlmostGeneralF1,
        BasisTag::Hirzebruch(_) => Flavor::AlmostGeneralF2,
    }
}

/// `(theorem, clause)` of a minimal order.
fn minimal_clause(m: Minimal) -> Option<(&'static str, u32)> {
    match m {
        Minimal::P2 { d: 3, .. } => Some(("T1-P2", 1)),
        Minimal::P2 { d: 4, e } if e <= 3 => Some(("T1-P2", 2)),
        Minimal::P2 { d: 5, e: 2 } => Some(("T1-P2", 3)),
        Minimal::Ruled { n: 0, a, b, e } => match (a.max(b), a.min(b), e) {
            (2, 2, _) => Some(("T1-P1P1", 1)),
            (3, 2, 2) => Some(("T1-P1P1", 2)),
            (3, 3, 2) => Some(("T1-P1P1", 3)),
            _ => None,
        },
        Minimal::Ruled { n: 1, a: 2, b: 4, e: 2 } => Some(("minimal-TAdPO-F1", 1)),
        Minimal::Ruled { n: 1, a: 3, b: 5, e: 2 } => Some(("minimal-TAdPO-F1", 2)),
        Minimal::Ruled { n: 2, a: 2, b: 4, .. } => Some(("minimal-TAdPO-F2", 1)),
        Minimal::Ruled { n: 2, a: 3, b: 6, e: 2 } => Some(("minimal-TAdPO-F2", 2)),
        _ => None,
    }
}

struct Sigma {
    n: usize,
    off_d: usize,
    all_in_d: bool,
}

fn sigma(o: &OrderData) -> Sigma {
    let n = o.num_blowups();
    let off_d = o.surface.points.iter().filter(|p| !p.on_d).count();
    Sigma { n, off_d, all_in_d: off_d == 0 }
}

/// `T1-*` clause for a del Pezzo blowup.
fn del_pezzo_clause(o: &OrderData, m: Minimal) -> Result<Option<(&'static str, u32)>> {
    let s = sigma(o);
    Ok(match m {
        Minimal::P2 { d: 3, e } => {
            if s.all_in_d && s.n < 9 && o.position_predicate(Flavor::GeneralP2)? {
                Some(("T1-P2-deg3", 1))
            } else if s.n == 1 && s.off_d == 1 && e == 2 {
                Some(("T1-P2-deg3", 2))
            } else {
                None
            }
        }
        Minimal::P2 { d: 4, e: 2 } if s.n == 1 && s.all_in_d => Some(("T1-P2-deg4", 1)),
        Minimal::Ruled { n: 0, a: 2, b: 2, .. }
            if s.all_in_d && s.n <= 7 && o.position_predicate(Flavor::GeneralP1P1)? =>
        {
            Some(("T1-P1P1-blowup", 1))
        }
        _ => None,
    })
}

/// Facts about a K-zero generator used by the clause tables.
struct Curve {
    base: DivisorClass,
    mult: u32,
    through_off_d: bool,
    exceptional: bool,
    minus_two: bool,
    sigma_almost_general: bool,
}

fn curve_facts(o: &OrderData, g: &ConeGenerator) -> Result<Curve> {
    let base = g.cls.base_part();
    let exc_sum: Q = g.cls.coeffs_exc.iter().copied().sum();
    let mult = u32::try_from((-exc_sum).to_integer().max(0)).unwrap_or(0);
    let through_off_d = match &g.witness {
        Witness::Curve(id) => {
            let c = o.find_curve(id)?;
            c.mults.keys().any(|p| o.surface.point(p).map(|p| !p.on_d).unwrap_or(false))
        }
        _ => false,
    };
    let sigma_almost_general = match (&g.witness, o.base()) {
        (Witness::Curve(id), BasisTag::Hirzebruch(0)) => {
            o.surface.sigma_almost_general_curves()?.iter().any(|c| &c.id == id)
        }
        _ => false,
    };
    Ok(Curve {
        exceptional: base.is_zero(),
        minus_two: g.kind == GeneratorKind::MinusTwo,
        base,
        mult,
        through_off_d,
        sigma_almost_general,
    })
}

fn is_class(c: &DivisorClass, v: &[i64]) -> bool {
    c.coeffs_base.len() == v.len() && c.coeffs_base.iter().zip(v).all(|(x, y)| *x == Q::from(*y))
}

fn is_fibre(c: &DivisorClass, n: u32) -> bool {
    is_class(c, &[0, 1]) || (n == 0 && is_class(c, &[1, 0]))
}

/// `T3-*` clause naming a K-zero curve.
fn k_zero_clause(o: &OrderData, m: Minimal, g: &ConeGenerator) -> Result<Option<(&'static str, u32)>> {
    let c = curve_facts(o, g)?;
    let s = sigma(o);
    let general = o.position_predicate(flavor(o))?;
    let c0 = |c: &Curve| is_class(&c.base, &[1, 0]);
    Ok(match m {
        Minimal::P2 { d: 3, e } if general => {
            let deg = c.base.coeffs_base[0];
            if c.exceptional && c.minus_two {
                Some(("T3-P2-deg3", 1))
            } else if deg == Q::from(1) && c.through_off_d && e == 2 && c.mult == 2 {
                Some(("T3-P2-deg3", 2))
            } else if deg == Q::from(1) && !c.through_off_d && c.mult == 3 {
                Some(("T3-P2-deg3", 3))
            } else if deg == Q::from(2) && c.mult == 6 {
                Some(("T3-P2-deg3", 4))
            } else if deg == Q::from(3) && c.mult == 9 {
                Some(("T3-P2-deg3", 5))
            } else {
                None
            }
        }
        Minimal::P2 { d: 4, e: 2 } if general && s.all_in_d && c.base == DivisorClass::h(0) && c.mult == 2 => {
            Some(("T3-P2-deg4", 1))
        }
        Minimal::Ruled { n: 0, a, b, e: 2 } if general && s.n == 1 && is_fibre(&c.base, 0) && c.mult == 1 => {
            match (a + b, s.off_d) {
                (4, 1) => Some(("T3-P1P1", 1)),
                (5, 0) => Some(("T3-P1P1", 2)),
                (6, 0) => Some(("T3-P1P1", 3)),
                _ => None,
            }
        }
        Minimal::Ruled { n: 0, a: 2, b: 2, .. } if general && s.all_in_d && c.sigma_almost_general => {
            Some(("T3-P1P1", 4))
        }
        Minimal::Ruled { n: 1, a: 2, b: 4, e: 2 } if general => {
            if c0(&c) && c.mult == 0 {
                Some(("T3-F1", 1))
            } else if is_fibre(&c.base, 1) && c.mult == 2 {
                Some(("T3-F1", 2))
            } else if c.exceptional && c.minus_two {
                Some(("T3-F1", 3))
            } else {
                None
            }
        }
        Minimal::Ruled { n: 1, a: 3, b: 5, e: 2 } if s.n == 0 && c0(&c) => Some(("T3-F1-3C0-5F", 1)),
        Minimal::Ruled { n: 2, a: 2, b: 4, .. } if general => {
            if c0(&c) && c.mult == 0 {
                Some(("T3-F2", 1))
            } else if is_fibre(&c.base, 2) && c.through_off_d {
                Some(("T3-F2", 2))
            } else if is_fibre(&c.base, 2) && s.all_in_d && c.mult == 2 && s.n <= 7 {
                Some(("T3-F2", 3))
            } else if c.exceptional && c.minus_two {
                Some(("T3-F2", 4))
            } else {
                None
            }
        }
        Minimal::Ruled { n: 2, a: 3, b: 6, e: 2 } if general => {
            if c0(&c) && c.mult == 0 {
                Some(("T3-F2-3C0-6F", 1))
            } else if is_fibre(&c.base, 2) {
                Some(("T3-F2-3C0-6F", 2))
            } else {
                None
            }
        }
        _ => None,
    })
}

pub const UNCLASSIFIED: &str = "unclassified";

/// Every clause the order realizes: the minimal-order clause when nothing
/// is blown up, the `T1-*` clause for del Pezzo blowups, and one record
/// per `T3-*` clause collecting its K-zero curves. Orders that are not
/// almost del Pezzo give no records; anything the tables miss is reported
/// under [`UNCLASSIFIED`].
pub fn classify_blowup(o: &OrderData) -> Result<Vec<ClassificationRecord>> {
    if !is_almost_del_pezzo(o)? {
        return Ok(Vec::new());
    }
    let m = minimal_of(o);
    let mut out = Vec::new();
    let unclassified = || ClassificationRecord::new(UNCLASSIFIED, 0, o.clone());
    if o.num_blowups() == 0 {
        match m.and_then(minimal_clause) {
            Some((t, c)) => out.push(ClassificationRecord::new(t, c, o.clone())),
            None => out.push(unclassified()),
        }
    } else if is_del_pezzo(o)? {
        match m.map(|m| del_pezzo_clause(o, m)).transpose()?.flatten() {
            Some((t, c)) => out.push(ClassificationRecord::new(t, c, o.clone())),
            None => out.push(unclassified()),
        }
    }
    let mut by_tag: BTreeMap<(String, u32), Vec<String>> = BTreeMap::new();
    for g in k_zero_curves(o)? {
        let key = match m.map(|m| k_zero_clause(o, m, &g)).transpose()?.flatten() {
            Some((t, c)) => (t.to_string(), c),
            None => (UNCLASSIFIED.to_string(), 0),
        };
        by_tag.entry(key).or_default().push(describe(&g));
    }
    for ((t, c), k_zero) in by_tag {
        if let Some(r) = out.iter_mut().find(|r| r.theorem == t && r.clause == c) {
            r.k_zero.extend(k_zero);
            continue;
        }
        let mut r = ClassificationRecord::new(&t, c, o.clone());
        r.k_zero = k_zero;
        out.push(r);
    }
    out.sort_by(|a, b| (&a.theorem, a.clause).cmp(&(&b.theorem, b.clause)));
    Ok(out)
}

/// Whether a point off `D` may be blown up, and what may follow it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum OffDRule {
    Never,
    /// One point off `D`, followed by at most `further_in_d` points of `D`;
    /// `share_fibre` says whether those may lie on its fibre.
    Single {
        further_in_d: usize,
        share_fibre: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupBudget {
    pub max_in_d: usize,
    pub off_d: OffDRule,
}

impl BlowupBudget {
    /// Whether `in_d` points of `D` and `off_d` points off it fit the budget.
    pub fn admits(&self, in_d: usize, off_d: usize) -> bool {
        match (off_d, self.off_d) {
            (0, _) => in_d <= self.max_in_d,
            (1, OffDRule::Single { further_in_d, .. }) => in_d <= further_in_d,
            _ => false,
        }
    }
}

/// The order before any blowup: components pushed down to the base,
/// exceptional components and declared curves dropped.
pub fn unblown(o: &OrderData) -> OrderData {
    let mut out = OrderData::trivial(o.base());
    for c in o.components.iter().filter(|c| c.curve.exceptional_of.is_none()) {
        let mut c = c.clone();
        c.curve.mults.clear();
        out.components.push(c);
    }
    out
}

/// The number of points a minimal order tolerates before it stops being
/// almost del Pezzo.
pub fn blowup_budget(o: &OrderData) -> Result<BlowupBudget> {
    let unknown = || Error::UnknownFixture("blowup budgets are only tabulated for the minimal orders".into());
    if o.num_blowups() > 0 {
        return Err(unknown());
    }
    let m = minimal_of(o).ok_or_else(unknown)?;
    minimal_clause(m).ok_or_else(unknown)?;
    let never = |max_in_d| BlowupBudget { max_in_d, off_d: OffDRule::Never };
    Ok(match m {
        Minimal::P2 { d: 3, e: 2 } => {
            BlowupBudget { max_in_d: 8, off_d: OffDRule::Single { further_in_d: 1, share_fibre: true } }
        }
        Minimal::P2 { d: 3, .. } => never(8),
        Minimal::P2 { d: 4, e: 2 } => never(3),
        Minimal::P2 { .. } => never(0),
        Minimal::Ruled { n: 0, a: 2, b: 2, e: 2 } => {
            BlowupBudget { max_in_d: 7, off_d: OffDRule::Single { further_in_d: 0, share_fibre: false } }
        }
        Minimal::Ruled { n: 0, a: 2, b: 2, .. } => never(7),
        Minimal::Ruled { n: 0, .. } => never(1),
        Minimal::Ruled { n: 1, a: 2, .. } => never(3),
        Minimal::Ruled { n: 1, .. } => never(0),
        Minimal::Ruled { n: 2, a: 2, e: 2, .. } => {
            BlowupBudget { max_in_d: 7, off_d: OffDRule::Single { further_in_d: 3, share_fibre: false } }
        }
        Minimal::Ruled { n: 2, a: 2, .. } => never(7),
        Minimal::Ruled { .. } => never(1),
    })
}
