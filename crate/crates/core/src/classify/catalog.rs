//! Named ramification configurations: the minimal orders over each base
//! and blowups of them realizing each classification clause.
//!
//! Expectations are written down from the closed formulas (`K²` of the
//! minimal order minus the squares of the blowup coefficients) and from the
//! clause statements, never read back from the engine.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::config::CurveRecord;
use crate::error::{Error, Result};
use crate::lattice::{BasisTag, DivisorClass};
use crate::order::{OrderData, PointSpec, RamificationComponent};
use crate::rational::{frac, q, to_pq, Q};

use super::json::order_to_value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    MinimalP2,
    Cubics,
    Quartics,
    Bidegree22,
    LargerBidegree,
    MinimalRuled,
    TerminalBlowups,
    KZeroClauses,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::MinimalP2 => "minimal-p2",
            Group::Cubics => "cubic-configurations",
            Group::Quartics => "quartic-configurations",
            Group::Bidegree22 => "bidegree-2-2",
            Group::LargerBidegree => "bidegree-above-2-2",
            Group::MinimalRuled => "minimal-ruled",
            Group::TerminalBlowups => "terminal-blowups",
            Group::KZeroClauses => "k-zero-clauses",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub del_pezzo: bool,
    pub almost_del_pezzo: bool,
    pub minimal: bool,
    pub k_squared: Q,
    /// Witness names of the K-zero generators; empty unless almost del Pezzo.
    pub k_zero: Vec<String>,
    /// `theorem:clause` tags the classifier must emit.
    pub tags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub id: String,
    pub group: Group,
    pub title: String,
    pub order: OrderData,
    pub expect: Expectation,
    /// Fixture reached by contracting an intrinsic curve (C₀ on 𝔽₁).
    pub target: Option<String>,
}

impl Fixture {
    pub fn annotations(&self) -> Value {
        let mut a = json!({
            "title": self.title,
            "group": self.group.name(),
            "del_pezzo": self.expect.del_pezzo,
            "almost_del_pezzo": self.expect.almost_del_pezzo,
            "minimal": self.expect.minimal,
            "k_squared": to_pq(&self.expect.k_squared),
            "k_zero": self.expect.k_zero,
            "tags": self.expect.tags,
        });
        if let Some(t) = &self.target {
            a["contracts_to"] = json!(t);
        }
        a
    }

    /// Order JSON with the expectation block under `annotations`.
    pub fn to_value(&self) -> Value {
        let mut v = order_to_value(&self.order);
        v["annotations"] = self.annotations();
        v
    }
}

struct Build {
    o: OrderData,
}

impl Build {
    fn p2(comps: &[(&str, i64, u32)]) -> Self {
        let cs = comps
            .iter()
            .map(|(id, d, e)| {
                RamificationComponent::new(CurveRecord::new(id, DivisorClass::h(0).scale(q(*d)), &[]), *e)
            })
            .collect();
        Build { o: OrderData { surface: crate::config::SurfaceModel::new(BasisTag::P2), components: cs } }
    }

    fn ruled(n: u32, comps: &[(&str, [i64; 2], u32)]) -> Self {
        let base = BasisTag::Hirzebruch(n);
        let cs = comps
            .iter()
            .map(|(id, c, e)| {
                RamificationComponent::new(
                    CurveRecord::new(id, DivisorClass::from_ints(base, c, &[]).unwrap(), &[]),
                    *e,
                )
            })
            .collect();
        Build { o: OrderData { surface: crate::config::SurfaceModel::new(base), components: cs } }
    }

    fn note(mut self, comp: &str, label: &str) -> Self {
        let c = self.o.components.iter_mut().find(|c| c.id == comp).expect("known component");
        c.annotations.push(label.to_string());
        self
    }

    fn at(mut self, spec: PointSpec) -> Self {
        self.o = self.o.blowup_order(&spec).unwrap_or_else(|e| panic!("catalog blowup {}: {e}", spec.id));
        self
    }

    fn curve(mut self, id: &str, cls: &[i64], mults: &[(&str, u32)]) -> Self {
        let c = DivisorClass::from_ints(self.o.base(), cls, &[]).expect("base class");
        self.o.surface.curves.push(CurveRecord::new(id, c, mults));
        self
    }

    fn done(self) -> OrderData {
        self.o.validate().unwrap_or_else(|e| panic!("catalog order invalid: {e}"));
        self.o
    }
}

struct Spec<'a> {
    id: &'a str,
    group: Group,
    title: &'a str,
    k2: Q,
    dp: bool,
    adp: bool,
    minimal: bool,
    k_zero: &'a [&'a str],
    tags: &'a [&'a str],
}

fn fixture(s: Spec<'_>, order: OrderData) -> Fixture {
    Fixture {
        id: s.id.to_string(),
        group: s.group,
        title: s.title.to_string(),
        order,
        expect: Expectation {
            del_pezzo: s.dp,
            almost_del_pezzo: s.adp,
            minimal: s.minimal,
            k_squared: s.k2,
            k_zero: s.k_zero.iter().map(|x| x.to_string()).collect(),
            tags: s.tags.iter().map(|x| x.to_string()).collect(),
        },
        target: None,
    }
}

fn sq(x: Q) -> Q {
    x * x
}

/// `K²` of a degree-`d` configuration over ℙ² with uniform degree `e`.
pub fn p2_k_squared(d: i64, e: u32) -> Q {
    sq(q(-3) + q(d) * (Q::from(1) - frac(1, i64::from(e))))
}

/// `K²` of a bidegree `(a, b)` configuration over ℙ¹×ℙ¹.
pub fn p1p1_k_squared(a: i64, b: i64, e: u32) -> Q {
    let w = Q::from(1) - frac(1, i64::from(e));
    q(2) * (q(a) * w - q(2)) * (q(b) * w - q(2))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn pid(i: usize) -> String {
    format!("p{}", i + 1)
}

fn subset_curve(b: Build, prefix: &str, cls: &[i64], set: &[usize]) -> Build {
    let id = format!("{prefix}{}", set.iter().map(|i| (i + 1).to_string()).collect::<String>());
    let names: Vec<String> = set.iter().map(|&i| pid(i)).collect();
    let mults: Vec<(&str, u32)> = names.iter().map(|p| (p.as_str(), 1)).collect();
    b.curve(&id, cls, &mults)
}

/// Curve with a double point at `p_{i+1}` through the points of `rest`.
fn nodal_curve(b: Build, cls: &[i64], i: usize, rest: &[usize]) -> Build {
    let id = format!("N{}.{}", i + 1, rest.iter().map(|j| (j + 1).to_string()).collect::<String>());
    let names: Vec<String> = std::iter::once(i).chain(rest.iter().copied()).map(pid).collect();
    let mults: Vec<(&str, u32)> =
        names.iter().enumerate().map(|(k, p)| (p.as_str(), if k == 0 { 2 } else { 1 })).collect();
    b.curve(&id, cls, &mults)
}

fn nodal_curves(mut b: Build, cls: &[i64], n: usize, through: usize) -> Build {
    for i in 0..n {
        let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        for s in subsets(others.len(), through) {
            let rest: Vec<usize> = s.iter().map(|&k| others[k]).collect();
            b = nodal_curve(b, cls, i, &rest);
        }
    }
    b
}

/// `n` points on the nodal cubic `D` with the lines through every pair, the
/// conics through every five and the cubics singular at one point through
/// six others declared.
pub fn general_p2_cubic(n: usize, e: u32) -> OrderData {
    let mut b = Build::p2(&[("D", 3, e)]).note("D", "nodal");
    for i in 0..n {
        b = b.at(PointSpec::smooth(&pid(i), "D"));
    }
    for s in subsets(n, 2) {
        b = subset_curve(b, "L", &[1], &s);
    }
    for s in subsets(n, 5) {
        b = subset_curve(b, "Q", &[2], &s);
    }
    if n >= 7 {
        b = nodal_curves(b, &[3], n, 6);
    }
    b.done()
}

/// `n` points on the nodal (2,2)-curve `D` with both fibres through each
/// point, the (1,1)-curves through every three, the (1,2)- and (2,1)-curves
/// through every five, the (2,2)-curves singular at one point through five
/// others and the (1,3)- and (3,1)-curves through seven declared.
pub fn general_p1p1(n: usize, e: u32) -> OrderData {
    let mut b = Build::ruled(0, &[("D", [2, 2], e)]).note("D", "nodal");
    for i in 0..n {
        b = b.at(PointSpec::smooth(&pid(i), "D"));
    }
    for i in 0..n {
        b = subset_curve(b, "A", &[1, 0], &[i]);
        b = subset_curve(b, "B", &[0, 1], &[i]);
    }
    for s in subsets(n, 3) {
        b = subset_curve(b, "S", &[1, 1], &s);
    }
    for s in subsets(n, 5) {
        b = subset_curve(b, "T", &[1, 2], &s);
        b = subset_curve(b, "U", &[2, 1], &s);
    }
    if n >= 6 {
        b = nodal_curves(b, &[2, 2], n, 5);
    }
    for s in subsets(n, 7) {
        b = subset_curve(b, "V", &[1, 3], &s);
        b = subset_curve(b, "W", &[3, 1], &s);
    }
    b.done()
}

fn minimal_fixtures(out: &mut Vec<Fixture>) {
    use Group::*;
    for (d, e, clause) in [(3, 2, 1), (3, 3, 1), (4, 2, 2), (4, 3, 2), (5, 2, 3)] {
        let name = match d {
            3 => "cubic",
            4 => "quartic",
            _ => "quintic",
        };
        let id = format!("p2-{name}-e{e}");
        let tag = format!("T1-P2:{clause}");
        let title = format!("smooth {name} over P2, e = {e}");
        out.push(fixture(
            Spec {
                id: &id,
                group: MinimalP2,
                title: &title,
                k2: p2_k_squared(d, e),
                dp: true,
                adp: true,
                minimal: true,
                k_zero: &[],
                tags: &[&tag],
            },
            Build::p2(&[("D", d, e)]).done(),
        ));
    }

    let cubics: [(&str, &str, Build); 4] = [
        ("cubic-line-conic", "transverse line and conic", Build::p2(&[("L", 1, 3), ("C", 2, 3)])),
        ("cubic-three-lines", "three transverse lines", Build::p2(&[("L1", 1, 3), ("L2", 1, 3), ("L3", 1, 3)])),
        ("cubic-smooth-cubic", "smooth cubic", Build::p2(&[("D", 3, 3)])),
        ("cubic-nodal-cubic", "nodal cubic", Build::p2(&[("D", 3, 3)]).note("D", "nodal")),
    ];
    for (id, title, b) in cubics {
        out.push(fixture(
            Spec {
                id,
                group: Cubics,
                title,
                k2: p2_k_squared(3, 3),
                dp: true,
                adp: true,
                minimal: true,
                k_zero: &[],
                tags: &["T1-P2:1"],
            },
            b.done(),
        ));
    }

    let quartics: Vec<(&str, &str, u32, Build)> = vec![
        (
            "quartic-e2-quartic-1node",
            "irreducible quartic with one node",
            2,
            Build::p2(&[("D", 4, 2)]).note("D", "1 node"),
        ),
        (
            "quartic-e2-quartic-2nodes",
            "irreducible quartic with two nodes",
            2,
            Build::p2(&[("D", 4, 2)]).note("D", "2 nodes"),
        ),
        (
            "quartic-e2-quartic-3nodes",
            "irreducible quartic with three nodes",
            2,
            Build::p2(&[("D", 4, 2)]).note("D", "3 nodes"),
        ),
        ("quartic-e2-two-conics", "two conics crossing at 4 points", 2, Build::p2(&[("C1", 2, 2), ("C2", 2, 2)])),
        (
            "quartic-e3-quartic-1node",
            "irreducible quartic with one node",
            3,
            Build::p2(&[("D", 4, 3)]).note("D", "1 node"),
        ),
        (
            "quartic-e3-nodal-cubic-line-a",
            "transverse nodal cubic and line",
            3,
            Build::p2(&[("N", 3, 3), ("L", 1, 3)]).note("N", "nodal"),
        ),
        (
            "quartic-e3-smooth-cubic-line-a",
            "transverse smooth cubic and line",
            3,
            Build::p2(&[("N", 3, 3), ("L", 1, 3)]),
        ),
        (
            "quartic-e3-quartic-2nodes",
            "irreducible quartic with two nodes",
            3,
            Build::p2(&[("D", 4, 3)]).note("D", "2 nodes"),
        ),
        ("quartic-e3-two-conics", "transverse conics", 3, Build::p2(&[("C1", 2, 3), ("C2", 2, 3)])),
        (
            "quartic-e3-nodal-cubic-line-b",
            "transverse nodal cubic and line (second marking)",
            3,
            Build::p2(&[("N", 3, 3), ("L", 1, 3)]).note("N", "nodal").note("L", "second marking"),
        ),
        (
            "quartic-e3-quartic-3nodes",
            "irreducible quartic with three nodes",
            3,
            Build::p2(&[("D", 4, 3)]).note("D", "3 nodes"),
        ),
        (
            "quartic-e3-smooth-cubic-line-b",
            "transverse smooth cubic and line (second marking)",
            3,
            Build::p2(&[("N", 3, 3), ("L", 1, 3)]).note("L", "second marking"),
        ),
        (
            "quartic-e3-conic-two-lines",
            "transverse conic and two lines",
            3,
            Build::p2(&[("C", 2, 3), ("L1", 1, 3), ("L2", 1, 3)]),
        ),
    ];
    for (id, title, e, b) in quartics {
        out.push(fixture(
            Spec {
                id,
                group: Quartics,
                title,
                k2: p2_k_squared(4, e),
                dp: true,
                adp: true,
                minimal: true,
                k_zero: &[],
                tags: &["T1-P2:2"],
            },
            b.done(),
        ));
    }

    let f0_22: [(&str, &str, Build); 5] = [
        (
            "bideg22-grid",
            "two fibres in each ruling",
            Build::ruled(0, &[("A1", [1, 0], 3), ("A2", [1, 0], 3), ("B1", [0, 1], 3), ("B2", [0, 1], 3)]),
        ),
        (
            "bideg22-fibres-diagonal",
            "two crossing fibres and a (1,1)-curve",
            Build::ruled(0, &[("A", [1, 0], 3), ("B", [0, 1], 3), ("S", [1, 1], 3)]),
        ),
        ("bideg22-fibre-section", "a fibre and a (1,2)-curve", Build::ruled(0, &[("A", [1, 0], 3), ("T", [1, 2], 3)])),
        (
            "bideg22-nodal-22",
            "irreducible (2,2)-curve with one node",
            Build::ruled(0, &[("D", [2, 2], 3)]).note("D", "nodal"),
        ),
        (
            "bideg22-binodal-22",
            "(2,2)-curve with two nodes",
            Build::ruled(0, &[("S1", [1, 1], 3), ("S2", [1, 1], 3)])
                .note("S1", "binodal (2,2)")
                .note("S2", "binodal (2,2)"),
        ),
    ];
    for (id, title, b) in f0_22 {
        out.push(fixture(
            Spec {
                id,
                group: Bidegree22,
                title,
                k2: p1p1_k_squared(2, 2, 3),
                dp: true,
                adp: true,
                minimal: true,
                k_zero: &[],
                tags: &["T1-P1P1:1"],
            },
            b.done(),
        ));
    }

    let f0_big: [(&str, &str, [i64; 2], Build); 4] = [
        (
            "bideg-high-two-fibres-section",
            "two fibres and a (1,2)-curve",
            [3, 2],
            Build::ruled(0, &[("A1", [1, 0], 2), ("A2", [1, 0], 2), ("T", [1, 2], 2)]),
        ),
        (
            "bideg-high-nodal-22-fibre",
            "nodal (2,2)-curve and a fibre",
            [2, 3],
            Build::ruled(0, &[("D", [2, 2], 2), ("B", [0, 1], 2)]).note("D", "nodal"),
        ),
        (
            "bideg-high-binodal-22-fibre",
            "binodal (2,2)-curve and a fibre",
            [2, 3],
            Build::ruled(0, &[("S1", [1, 1], 2), ("S2", [1, 1], 2), ("B", [0, 1], 2)])
                .note("S1", "binodal (2,2)")
                .note("S2", "binodal (2,2)"),
        ),
        (
            "bideg-high-three-11",
            "three (1,1)-curves",
            [3, 3],
            Build::ruled(0, &[("S1", [1, 1], 2), ("S2", [1, 1], 2), ("S3", [1, 1], 2)]),
        ),
    ];
    for (id, title, [a, bb], b) in f0_big {
        let tag = format!("T1-P1P1:{}", if a + bb == 5 { 2 } else { 3 });
        out.push(fixture(
            Spec {
                id,
                group: LargerBidegree,
                title,
                k2: p1p1_k_squared(a, bb, 2),
                dp: true,
                adp: true,
                minimal: true,
                k_zero: &[],
                tags: &[&tag],
            },
            b.done(),
        ));
    }

    let mut f124 = fixture(
        Spec {
            id: "f1-24",
            group: MinimalRuled,
            title: "F1, D = 2C0 + 4F, e = 2",
            k2: q(1),
            dp: false,
            adp: true,
            minimal: true,
            k_zero: &["C0"],
            tags: &["minimal-TAdPO-F1:1", "T3-F1:1"],
        },
        Build::ruled(1, &[("D", [2, 4], 2)]).done(),
    );
    f124.target = Some("p2-quartic-e2".into());
    out.push(f124);
    let mut f135 = fixture(
        Spec {
            id: "f1-35",
            group: MinimalRuled,
            title: "F1, D = 3C0 + 5F, e = 2",
            k2: frac(1, 4),
            dp: false,
            adp: true,
            minimal: true,
            k_zero: &["C0"],
            tags: &["minimal-TAdPO-F1:2", "T3-F1-3C0-5F:1"],
        },
        Build::ruled(1, &[("D", [3, 5], 2)]).done(),
    );
    f135.target = Some("p2-quintic-e2".into());
    out.push(f135);
    for e in [2u32, 3] {
        let id = format!("f2-24-e{e}");
        let title = format!("F2, D = 2C0 + 4F, e = {e}");
        out.push(fixture(
            Spec {
                id: &id,
                group: MinimalRuled,
                title: &title,
                k2: frac(8, i64::from(e * e)),
                dp: false,
                adp: true,
                minimal: true,
                k_zero: &["C0"],
                tags: &["minimal-TAdPO-F2:1", "T3-F2:1"],
            },
            Build::ruled(2, &[("D", [2, 4], e)]).done(),
        ));
    }
    out.push(fixture(
        Spec {
            id: "f2-node",
            group: MinimalRuled,
            title: "F2, D = C0 + (C0 + 4F) crossing at two points, e = 2",
            k2: q(2),
            dp: false,
            adp: true,
            minimal: true,
            k_zero: &["D0"],
            tags: &["minimal-TAdPO-F2:1", "T3-F2:1"],
        },
        Build::ruled(2, &[("D0", [1, 0], 2), ("D1", [1, 4], 2)]).done(),
    ));
    out.push(fixture(
        Spec {
            id: "f2-36",
            group: MinimalRuled,
            title: "F2, D = 3C0 + 6F, e = 2",
            k2: frac(1, 2),
            dp: false,
            adp: true,
            minimal: true,
            k_zero: &["C0"],
            tags: &["minimal-TAdPO-F2:2", "T3-F2-3C0-6F:1"],
        },
        Build::ruled(2, &[("D", [3, 6], 2)]).done(),
    ));
}

fn theorem1_fixtures(out: &mut Vec<Fixture>) {
    use Group::TerminalBlowups;
    for n in 1..=9usize {
        let id = format!("dp-p2-deg3-n{n}");
        let title = format!("{n} general points on a plane cubic, e = 2");
        let ok = n <= 8;
        out.push(fixture(
            Spec {
                id: &id,
                group: TerminalBlowups,
                title: &title,
                k2: p2_k_squared(3, 2) - q(n as i64) * frac(1, 4),
                dp: ok,
                adp: ok,
                minimal: false,
                k_zero: &[],
                tags: if ok { &["T1-P2-deg3:1"] } else { &[] },
            },
            general_p2_cubic(n, 2),
        ));
    }
    for e in [2u32, 3] {
        let id = format!("dp-p2-deg3-off-e{e}");
        let title = format!("cubic, one point off D, e = {e}");
        let ok = e == 2;
        out.push(fixture(
            Spec {
                id: &id,
                group: TerminalBlowups,
                title: &title,
                k2: p2_k_squared(3, e) - q(1),
                dp: ok,
                adp: ok,
                minimal: false,
                k_zero: &[],
                tags: if ok { &["T1-P2-deg3:2"] } else { &[] },
            },
            Build::p2(&[("D", 3, e)]).note("D", "nodal").at(PointSpec::off("p1")).done(),
        ));
    }
    for e in [2u32, 3] {
        let id = format!("dp-p2-deg4-in-e{e}");
        let title = format!("two conics, one point of D blown up, e = {e}");
        let ok = e == 2;
        out.push(fixture(
            Spec {
                id: &id,
                group: TerminalBlowups,
                title: &title,
                k2: p2_k_squared(4, e) - sq(frac(1, i64::from(e))),
                dp: ok,
                adp: ok,
                minimal: false,
                k_zero: &[],
                tags: if ok { &["T1-P2-deg4:1"] } else { &[] },
            },
            Build::p2(&[("C1", 2, e), ("C2", 2, e)]).at(PointSpec::smooth("p1", "C1")).done(),
        ));
    }
    out.push(fixture(
        Spec {
            id: "dp-p2-deg4-off",
            group: TerminalBlowups,
            title: "two conics, one point off D, e = 2",
            k2: q(0),
            dp: false,
            adp: false,
            minimal: false,
            k_zero: &[],
            tags: &[],
        },
        Build::p2(&[("C1", 2, 2), ("C2", 2, 2)]).at(PointSpec::off("p1")).done(),
    ));
    out.push(fixture(
        Spec {
            id: "dp-p2-deg5-in",
            group: TerminalBlowups,
            title: "conic and nodal cubic, one point of D blown up, e = 2",
            k2: q(0),
            dp: false,
            adp: false,
            minimal: false,
            k_zero: &[],
            tags: &[],
        },
        Build::p2(&[("C", 2, 2), ("N", 3, 2)]).note("N", "nodal").at(PointSpec::smooth("p1", "C")).done(),
    ));
    for n in 1..=8usize {
        let id = format!("dp-p1p1-n{n}");
        let title = format!("{n} general points on a (2,2)-curve, e = 2");
        let ok = n <= 7;
        out.push(fixture(
            Spec {
                id: &id,
                group: TerminalBlowups,
                title: &title,
                k2: p1p1_k_squared(2, 2, 2) - q(n as i64) * frac(1, 4),
                dp: ok,
                adp: ok,
                minimal: false,
                k_zero: &[],
                tags: if ok { &["T1-P1P1-blowup:1"] } else { &[] },
            },
            general_p1p1(n, 2),
        ));
    }
}

fn theorem3_fixtures(out: &mut Vec<Fixture>) {
    use Group::KZeroClauses;
    let t3 = |id: &str, title: &str, k2: Q, k_zero: &[&str], tags: &[&str], o: OrderData| {
        fixture(Spec { id, group: KZeroClauses, title, k2, dp: false, adp: true, minimal: false, k_zero, tags }, o)
    };
    let cubic = |e: u32| Build::p2(&[("D", 3, e)]).note("D", "nodal");

    out.push(t3(
        "kz-p2-deg3-c1",
        "cubic, a point of D blown up twice",
        p2_k_squared(3, 2) - frac(1, 2),
        &["exc:p1"],
        &["T3-P2-deg3:1"],
        cubic(2)
            .at(PointSpec::smooth("p1", "D"))
            .at(PointSpec::smooth("p2", "D").near("p1"))
            .curve("T", &[1], &[("p1", 1), ("p2", 1)])
            .done(),
    ));
    out.push(t3(
        "kz-p2-deg3-c2",
        "cubic, p in D and q off D with the line through them",
        p2_k_squared(3, 2) - frac(1, 4) - q(1),
        &["L"],
        &["T3-P2-deg3:2"],
        cubic(2)
            .at(PointSpec::smooth("p1", "D"))
            .at(PointSpec::off("p2"))
            .curve("L", &[1], &[("p1", 1), ("p2", 1)])
            .done(),
    ));
    out.push(t3(
        "kz-p2-deg3-c3",
        "cubic, three collinear points of D",
        p2_k_squared(3, 2) - frac(3, 4),
        &["L"],
        &["T3-P2-deg3:3"],
        cubic(2)
            .at(PointSpec::smooth("p1", "D"))
            .at(PointSpec::smooth("p2", "D"))
            .at(PointSpec::smooth("p3", "D"))
            .curve("L", &[1], &[("p1", 1), ("p2", 1), ("p3", 1)])
            .done(),
    ));
    let mut b = cubic(3);
    for i in 0..6 {
        b = b.at(PointSpec::smooth(&pid(i), "D"));
    }
    let six: Vec<(String, u32)> = (0..6).map(|i| (pid(i), 1)).collect();
    let six: Vec<(&str, u32)> = six.iter().map(|(p, m)| (p.as_str(), *m)).collect();
    out.push(t3(
        "kz-p2-deg3-c4",
        "cubic, six points of D on a conic, e = 3",
        p2_k_squared(3, 3) - frac(6, 9),
        &["Q"],
        &["T3-P2-deg3:4"],
        b.curve("Q", &[2], &six).done(),
    ));
    let mut b = cubic(2);
    for i in 0..8 {
        b = b.at(PointSpec::smooth(&pid(i), "D"));
    }
    let eight: Vec<(String, u32)> = (0..8).map(|i| (pid(i), if i == 0 { 2 } else { 1 })).collect();
    let eight: Vec<(&str, u32)> = eight.iter().map(|(p, m)| (p.as_str(), *m)).collect();
    out.push(t3(
        "kz-p2-deg3-c5",
        "cubic, eight points of D on a nodal cubic with its node at p1",
        p2_k_squared(3, 2) - q(2),
        &["N"],
        &["T3-P2-deg3:5"],
        b.curve("N", &[3], &eight).done(),
    ));

    let conics = || Build::p2(&[("C1", 2, 2), ("C2", 2, 2)]);
    out.push(t3(
        "kz-p2-deg4-c1",
        "two conics, two points of D on a line",
        q(1) - frac(2, 4),
        &["L12"],
        &["T3-P2-deg4:1"],
        conics()
            .at(PointSpec::smooth("p1", "C1"))
            .at(PointSpec::smooth("p2", "C1"))
            .curve("L12", &[1], &[("p1", 1), ("p2", 1)])
            .done(),
    ));
    out.push(t3(
        "kz-p2-deg4-c1b",
        "two conics, three non-collinear points of D",
        q(1) - frac(3, 4),
        &["L12", "L13", "L23"],
        &["T3-P2-deg4:1"],
        conics()
            .at(PointSpec::smooth("p1", "C1"))
            .at(PointSpec::smooth("p2", "C1"))
            .at(PointSpec::smooth("p3", "C2"))
            .curve("L12", &[1], &[("p1", 1), ("p2", 1)])
            .curve("L13", &[1], &[("p1", 1), ("p3", 1)])
            .curve("L23", &[1], &[("p2", 1), ("p3", 1)])
            .done(),
    ));

    out.push(t3(
        "kz-p1p1-c1",
        "(2,2), e = 2, one point off D",
        p1p1_k_squared(2, 2, 2) - q(1),
        &["A1", "B1"],
        &["T3-P1P1:1"],
        Build::ruled(0, &[("D", [2, 2], 2)])
            .note("D", "nodal")
            .at(PointSpec::off("p1"))
            .curve("A1", &[1, 0], &[("p1", 1)])
            .curve("B1", &[0, 1], &[("p1", 1)])
            .done(),
    ));
    out.push(t3(
        "kz-p1p1-c2",
        "(3,2), e = 2, one point of D",
        p1p1_k_squared(3, 2, 2) - frac(1, 4),
        &["B1"],
        &["T3-P1P1:2"],
        Build::ruled(0, &[("D1", [1, 0], 2), ("D2", [1, 0], 2), ("D3", [1, 2], 2)])
            .at(PointSpec::smooth("p1", "D3"))
            .curve("A1", &[1, 0], &[("p1", 1)])
            .curve("B1", &[0, 1], &[("p1", 1)])
            .done(),
    ));
    out.push(t3(
        "kz-p1p1-c3",
        "(3,3), e = 2, one point of D",
        p1p1_k_squared(3, 3, 2) - frac(1, 4),
        &["A1", "B1"],
        &["T3-P1P1:3"],
        Build::ruled(0, &[("D1", [1, 1], 2), ("D2", [1, 1], 2), ("D3", [1, 1], 2)])
            .at(PointSpec::smooth("p1", "D1"))
            .curve("A1", &[1, 0], &[("p1", 1)])
            .curve("B1", &[0, 1], &[("p1", 1)])
            .done(),
    ));
    out.push(t3(
        "kz-p1p1-c4",
        "(2,2), e = 3, two points of D on a fibre",
        p1p1_k_squared(2, 2, 3) - frac(2, 9),
        &["B"],
        &["T3-P1P1:4"],
        Build::ruled(0, &[("D", [2, 2], 3)])
            .note("D", "nodal")
            .at(PointSpec::smooth("p1", "D"))
            .at(PointSpec::smooth("p2", "D"))
            .curve("B", &[0, 1], &[("p1", 1), ("p2", 1)])
            .done(),
    ));

    let f1 = || Build::ruled(1, &[("D", [2, 4], 2)]);
    out.push(t3(
        "kz-f1-c1",
        "F1, one point of D",
        q(1) - frac(1, 4),
        &["C0"],
        &["T3-F1:1"],
        f1().at(PointSpec::smooth("p1", "D")).curve("B1", &[0, 1], &[("p1", 1)]).done(),
    ));
    out.push(t3(
        "kz-f1-c2",
        "F1, two points of D on a fibre",
        q(1) - frac(2, 4),
        &["B", "C0"],
        &["T3-F1:1", "T3-F1:2"],
        f1().at(PointSpec::smooth("p1", "D"))
            .at(PointSpec::smooth("p2", "D"))
            .curve("B", &[0, 1], &[("p1", 1), ("p2", 1)])
            .done(),
    ));
    out.push(t3(
        "kz-f1-c3",
        "F1, a point of D blown up twice",
        q(1) - frac(2, 4),
        &["C0", "exc:p1"],
        &["T3-F1:1", "T3-F1:3"],
        f1().at(PointSpec::smooth("p1", "D")).at(PointSpec::smooth("p2", "D").near("p1")).done(),
    ));

    let f2 = |e: u32| Build::ruled(2, &[("D", [2, 4], e)]);
    out.push(t3(
        "kz-f2-c1",
        "F2, one point of D",
        q(2) - frac(1, 4),
        &["C0"],
        &["T3-F2:1"],
        f2(2).at(PointSpec::smooth("p1", "D")).done(),
    ));
    out.push(t3(
        "kz-f2-c2",
        "F2, e = 2, one point off D and its fibre",
        q(2) - q(1),
        &["B", "C0"],
        &["T3-F2:1", "T3-F2:2"],
        f2(2).at(PointSpec::off("p1")).curve("B", &[0, 1], &[("p1", 1)]).done(),
    ));
    out.push(t3(
        "kz-f2-c3",
        "F2, e = 3, two points of D on a fibre",
        frac(8, 9) - frac(2, 9),
        &["B", "C0"],
        &["T3-F2:1", "T3-F2:3"],
        f2(3)
            .at(PointSpec::smooth("p1", "D"))
            .at(PointSpec::smooth("p2", "D"))
            .curve("B", &[0, 1], &[("p1", 1), ("p2", 1)])
            .done(),
    ));
    out.push(t3(
        "kz-f2-c4",
        "F2, a point of D blown up twice",
        q(2) - frac(2, 4),
        &["C0", "exc:p1"],
        &["T3-F2:1", "T3-F2:4"],
        f2(2).at(PointSpec::smooth("p1", "D")).at(PointSpec::smooth("p2", "D").near("p1")).done(),
    ));
    out.push(t3(
        "kz-f2-36-c2",
        "F2, D = 3C0 + 6F, one point of D and its fibre",
        frac(1, 2) - frac(1, 4),
        &["B", "C0"],
        &["T3-F2-3C0-6F:1", "T3-F2-3C0-6F:2"],
        Build::ruled(2, &[("D", [3, 6], 2)]).at(PointSpec::smooth("p1", "D")).curve("B", &[0, 1], &[("p1", 1)]).done(),
    ));
}

fn build() -> Vec<Fixture> {
    let mut out = Vec::new();
    minimal_fixtures(&mut out);
    theorem1_fixtures(&mut out);
    theorem3_fixtures(&mut out);
    out
}

pub fn catalog() -> &'static [Fixture] {
    static CATALOG: OnceLock<Vec<Fixture>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

pub fn fixture_by_id(id: &str) -> Result<&'static Fixture> {
    catalog().iter().find(|f| f.id == id).ok_or_else(|| Error::UnknownFixture(id.to_string()))
}

pub fn by_group() -> BTreeMap<Group, Vec<&'static Fixture>> {
    let mut m: BTreeMap<Group, Vec<&'static Fixture>> = BTreeMap::new();
    for f in catalog() {
        m.entry(f.group).or_default().push(f);
    }
    m
}

/// The minimal fixture a blown-up fixture was built from, matched on base,
/// ramification classes and degrees.
pub fn minimal_ancestor(o: &OrderData) -> Option<&'static Fixture> {
    let key = |x: &OrderData| {
        let mut v: Vec<(Vec<Q>, u32)> = x
            .components
            .iter()
            .filter(|c| c.curve.exceptional_of.is_none())
            .map(|c| (c.curve.cls.coeffs(), c.e))
            .collect();
        v.sort();
        (x.base(), v)
    };
    let k = key(o);
    catalog().iter().filter(|f| f.order.num_blowups() == 0).find(|f| key(&f.order) == k)
}
