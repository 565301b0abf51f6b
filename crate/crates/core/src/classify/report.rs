//! Reports behind the CLI subcommands, as canonical JSON values and as
//! markdown.

use std::fmt::Write as _;

use serde_json::{json, Value};

use super::ClassificationRecord;
use crate::classify::theorems::classify_blowup;
use crate::config::Flavor;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::order::OrderData;
use crate::positivity::{
    cone_diagnostics, effective_cone_generators, is_almost_del_pezzo, is_del_pezzo, is_minimal, k_zero_curves,
    MmpResult,
};
use crate::rational::{display, to_pq, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorRow {
    pub class: String,
    pub kind: String,
    pub witness: String,
    pub square: Q,
    pub k_dot: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub base: String,
    pub blowups: usize,
    pub divisor: String,
    pub degrees: Vec<u32>,
    pub discriminant: String,
    pub canonical: String,
    pub k_squared: Q,
    pub m: Option<String>,
    pub del_pezzo: bool,
    pub almost_del_pezzo: bool,
    /// `None` when the cone budget is exceeded.
    pub minimal: Option<bool>,
    pub positions: Vec<(Flavor, bool)>,
    pub violations: Vec<String>,
    pub generators: Vec<GeneratorRow>,
    pub note: Option<String>,
    pub k_zero: Vec<GeneratorRow>,
    pub records: Vec<ClassificationRecord>,
    pub unwitnessed: Vec<String>,
}

fn row(o: &OrderData, g: &crate::positivity::ConeGenerator) -> Result<GeneratorRow> {
    Ok(GeneratorRow {
        class: g.cls.to_string(),
        kind: g.kind.to_string(),
        witness: g.witness.to_string(),
        square: g.square(),
        k_dot: o.k_dot(&g.cls)?,
    })
}

pub fn check_report(o: &OrderData, exec: Exec) -> Result<CheckReport> {
    o.validate()?;
    let (generators, minimal, unwitnessed, note) = match effective_cone_generators(o) {
        Ok(gs) => {
            let rows = gs.iter().map(|g| row(o, g)).collect::<Result<Vec<_>>>()?;
            let dropped =
                cone_diagnostics(o, exec)?.into_iter().filter(|d| !d.kept).map(|d| d.cls.to_string()).collect();
            (rows, Some(is_minimal(o)?), dropped, None)
        }
        Err(e @ Error::BudgetExceeded { .. }) => (Vec::new(), None, Vec::new(), Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let del_pezzo = is_del_pezzo(o)?;
    let almost_del_pezzo = is_almost_del_pezzo(o)?;
    let k_zero = if almost_del_pezzo {
        k_zero_curves(o)?.iter().map(|g| row(o, g)).collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let positions = Flavor::ALL
        .into_iter()
        .filter(|f| f.base() == o.base())
        .map(|f| Ok((f, o.position_predicate(f)?)))
        .collect::<Result<Vec<_>>>()?;
    let m = match o.m_decomposition() {
        Ok(Some(m)) => Some(m.to_string()),
        _ => None,
    };
    Ok(CheckReport {
        base: o.base().name(),
        blowups: o.num_blowups(),
        divisor: o.d_class().to_string(),
        degrees: o.degrees(),
        discriminant: o.discriminant().to_string(),
        canonical: o.order_canonical().to_string(),
        k_squared: o.k_squared(),
        m,
        del_pezzo,
        almost_del_pezzo,
        minimal,
        positions,
        violations: o.shallow_terminal_violations(),
        generators,
        note,
        k_zero,
        records: classify_blowup(o)?,
        unwitnessed,
    })
}

fn row_value(r: &GeneratorRow) -> Value {
    json!({
        "class": r.class,
        "kind": r.kind,
        "witness": r.witness,
        "square": to_pq(&r.square),
        "k_dot": to_pq(&r.k_dot),
    })
}

pub fn record_summary(r: &ClassificationRecord) -> Value {
    let mut v = json!({
        "tag": r.tag(),
        "divisor": r.divisor(),
        "degrees": r.degrees(),
        "k_squared": to_pq(&r.witness.k_squared()),
        "k_zero": r.k_zero,
    });
    if let Some(n) = &r.note {
        v["note"] = json!(n);
    }
    v
}

impl CheckReport {
    pub fn tags(&self) -> Vec<String> {
        self.records.iter().map(ClassificationRecord::tag).collect()
    }

    /// Witness names of the K-zero curves, sorted.
    pub fn k_zero_witnesses(&self) -> Vec<String> {
        let mut v: Vec<String> = self.k_zero.iter().map(|r| r.witness.clone()).collect();
        v.sort();
        v
    }

    pub fn to_value(&self) -> Value {
        let positions: serde_json::Map<String, Value> =
            self.positions.iter().map(|(f, b)| (f.to_string(), json!(b))).collect();
        let mut v = json!({
            "base": self.base,
            "blowups": self.blowups,
            "divisor": self.divisor,
            "degrees": self.degrees,
            "discriminant": self.discriminant,
            "canonical": self.canonical,
            "k_squared": to_pq(&self.k_squared),
            "m": self.m,
            "del_pezzo": self.del_pezzo,
            "almost_del_pezzo": self.almost_del_pezzo,
            "minimal": self.minimal,
            "position": positions,
            "terminal_violations": self.violations,
            "generators": self.generators.iter().map(row_value).collect::<Vec<_>>(),
            "k_zero": self.k_zero.iter().map(row_value).collect::<Vec<_>>(),
            "records": self.records.iter().map(record_summary).collect::<Vec<_>>(),
            "unwitnessed": self.unwitnessed,
        });
        if let Some(n) = &self.note {
            v["note"] = json!(n);
        }
        v
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let yn = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(s, "# Order over {} with {} blowup(s)\n", self.base, self.blowups);
        let _ = writeln!(s, "| quantity | value |\n|---|---|");
        let _ = writeln!(s, "| D | {} |", self.divisor);
        let degrees: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        let _ = writeln!(s, "| degrees | {} |", degrees.join(", "));
        let _ = writeln!(s, "| Δ | {} |", self.discriminant);
        let _ = writeln!(s, "| K_X | {} |", self.canonical);
        let _ = writeln!(s, "| K_X² | {} |", display(&self.k_squared));
        let _ = writeln!(s, "| M | {} |", self.m.as_deref().unwrap_or("-"));
        let _ = writeln!(s, "| del Pezzo | {} |", yn(self.del_pezzo));
        let _ = writeln!(s, "| almost del Pezzo | {} |", yn(self.almost_del_pezzo));
        let _ = writeln!(s, "| minimal | {} |", self.minimal.map_or("-", yn));
        for (f, b) in &self.positions {
            let _ = writeln!(s, "| {f} | {} |", yn(*b));
        }
        if !self.violations.is_empty() {
            let _ = writeln!(s, "\nTerminality violations: {}", self.violations.join("; "));
        }
        if let Some(n) = &self.note {
            let _ = writeln!(s, "\nNote: {n}");
        }
        if !self.generators.is_empty() {
            let _ = writeln!(s, "\n## Generators\n\n| class | kind | witness | C² | K_X·C |\n|---|---|---|---|---|");
            for r in &self.generators {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} |",
                    r.class,
                    r.kind,
                    r.witness,
                    display(&r.square),
                    display(&r.k_dot)
                );
            }
        }
        if !self.k_zero.is_empty() {
            let _ = writeln!(s, "\n## K-zero curves\n");
            for r in &self.k_zero {
                let _ = writeln!(s, "- {}: {} ({})", r.witness, r.class, r.kind);
            }
        }
        if !self.records.is_empty() {
            let _ = writeln!(s, "\n## Clauses\n");
            for r in &self.records {
                if r.k_zero.is_empty() {
                    let _ = writeln!(s, "- {}", r.tag());
                } else {
                    let _ = writeln!(s, "- {}: {}", r.tag(), r.k_zero.join("; "));
                }
            }
        }
        if !self.unwitnessed.is_empty() {
            let _ = writeln!(s, "\n## Classes without a declared witness\n");
            for c in &self.unwitnessed {
                let _ = writeln!(s, "- {c}");
            }
        }
        s
    }

    /// Differences between the report and an `annotations` block.
    pub fn annotation_mismatches(&self, ann: &Value) -> Vec<String> {
        let mut out = Vec::new();
        for (key, got) in [("del_pezzo", self.del_pezzo), ("almost_del_pezzo", self.almost_del_pezzo)] {
            if let Some(want) = ann.get(key).and_then(Value::as_bool) {
                if want != got {
                    out.push(format!("{key}: expected {want}, got {got}"));
                }
            }
        }
        if let (Some(want), Some(got)) = (ann.get("minimal").and_then(Value::as_bool), self.minimal) {
            if want != got {
                out.push(format!("minimal: expected {want}, got {got}"));
            }
        }
        if let Some(want) = ann.get("k_squared").and_then(Value::as_str) {
            let got = to_pq(&self.k_squared);
            if want != got {
                out.push(format!("k_squared: expected {want}, got {got}"));
            }
        }
        let strings = |v: &Value| -> Option<Vec<String>> {
            let mut xs: Vec<String> = v.as_array()?.iter().filter_map(|x| x.as_str().map(str::to_string)).collect();
            xs.sort();
            Some(xs)
        };
        if let Some(want) = ann.get("k_zero").and_then(strings) {
            let got = self.k_zero_witnesses();
            if want != got {
                out.push(format!("k_zero: expected {want:?}, got {got:?}"));
            }
        }
        if let Some(want) = ann.get("tags").and_then(strings) {
            let mut got = self.tags();
            got.sort();
            if want != got {
                out.push(format!("tags: expected {want:?}, got {got:?}"));
            }
        }
        out
    }
}

pub fn mmp_value(r: &MmpResult) -> Value {
    let steps: Vec<Value> = r
        .steps
        .iter()
        .map(|s| {
            json!({
                "point": s.point,
                "class": s.contracted.cls.to_string(),
                "coefficient": to_pq(&s.coefficient),
                "k_squared_before": to_pq(&s.before.k_squared()),
                "k_squared_after": to_pq(&s.after.k_squared()),
            })
        })
        .collect();
    json!({
        "steps": steps,
        "final": super::json::order_to_value(&r.order),
        "final_k_squared": to_pq(&r.order.k_squared()),
        "diagnostic": r.diagnostic,
    })
}

pub fn mmp_markdown(r: &MmpResult) -> String {
    let mut s = String::from("# Contraction log\n\n");
    if r.steps.is_empty() {
        s.push_str("The order is already minimal.\n");
    } else {
        s.push_str("| step | point | class | a | K² before | K² after |\n|---|---|---|---|---|---|\n");
        for (i, st) in r.steps.iter().enumerate() {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} |",
                i + 1,
                st.point,
                st.contracted.cls,
                display(&st.coefficient),
                display(&st.before.k_squared()),
                display(&st.after.k_squared())
            );
        }
    }
    let _ = writeln!(
        s,
        "\nFinal: {} blowup(s) over {}, K_X² = {}",
        r.order.num_blowups(),
        r.order.base().name(),
        display(&r.order.k_squared())
    );
    if let Some(d) = &r.diagnostic {
        let _ = writeln!(s, "\nDiagnostic: {d}");
    }
    s
}

pub fn k_zero_value(rows: &[GeneratorRow]) -> Value {
    Value::Array(rows.iter().map(row_value).collect())
}

pub fn k_zero_markdown(rows: &[GeneratorRow]) -> String {
    let mut s = String::from("# K-zero curves\n\n");
    if rows.is_empty() {
        s.push_str("None.\n");
    }
    for r in rows {
        let _ = writeln!(s, "- {}: {} ({}, C² = {})", r.witness, r.class, r.kind, display(&r.square));
    }
    s
}

pub fn kzero_rows(o: &OrderData) -> Result<Vec<GeneratorRow>> {
    k_zero_curves(o)?.iter().map(|g| row(o, g)).collect()
}

pub fn records_value(rs: &[ClassificationRecord]) -> Value {
    Value::Array(rs.iter().map(ClassificationRecord::to_value).collect())
}

pub fn records_markdown(title: &str, rs: &[ClassificationRecord]) -> String {
    let mut s = format!("# {title}\n\n| tag | D | degrees | K² | K-zero | note |\n|---|---|---|---|---|---|\n");
    for r in rs {
        let degrees: Vec<String> = r.degrees().iter().map(u32::to_string).collect();
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} | {} |",
            r.tag(),
            r.divisor(),
            degrees.join(", "),
            display(&r.witness.k_squared()),
            if r.k_zero.is_empty() { "-".to_string() } else { r.k_zero.join("; ") },
            r.note.as_deref().unwrap_or("")
        );
    }
    let _ = writeln!(s, "\n{} record(s)", rs.len());
    s
}

pub fn fixtures_value() -> Value {
    Value::Array(
        super::catalog::catalog()
            .iter()
            .map(|f| json!({"id": f.id, "group": f.group.name(), "title": f.title, "tags": f.expect.tags}))
            .collect(),
    )
}

pub fn fixtures_markdown() -> String {
    let mut s = String::from("# Fixtures\n");
    for (g, fs) in super::catalog::by_group() {
        let _ = writeln!(s, "\n## {}\n", g.name());
        for f in fs {
            let _ = writeln!(s, "- `{}`: {}", f.id, f.title);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::catalog::catalog;

    #[test]
    fn catalog_annotations_hold() {
        for f in catalog() {
            let r = check_report(&f.order, Exec::Sequential).unwrap();
            let bad = r.annotation_mismatches(&f.annotations());
            assert!(bad.is_empty(), "{}: {bad:?}", f.id);
        }
    }
}
