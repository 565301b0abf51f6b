//! Theorem-level classification: the fixture catalog, the enumerators of
//! minimal orders, clause matching for blowups, JSON I/O and reports.

pub mod catalog;
pub mod enumerate;
pub mod json;
pub mod pointspec;
pub mod report;
pub mod theorems;

pub use catalog::{catalog, fixture_by_id, Fixture};
pub use enumerate::{e_max, enumerate_minimal_tadpo_ruled, enumerate_minimal_tdpo_p2, RuledBase};
pub use pointspec::parse_point_spec;
pub use theorems::{blowup_budget, classify_blowup, BlowupBudget};

use serde_json::{json, Value};

use crate::error::Result;
use crate::order::OrderData;
use crate::positivity::{is_almost_del_pezzo, k_zero_curves, ConeGenerator};
use crate::rational::to_pq;

/// One theorem clause matched by an order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub theorem: String,
    pub clause: u32,
    pub witness: OrderData,
    /// `witness: class` for each K-zero curve the clause is about.
    pub k_zero: Vec<String>,
    pub note: Option<String>,
}

pub fn describe(g: &ConeGenerator) -> String {
    format!("{}: {}", g.witness, g.cls)
}

impl ClassificationRecord {
    pub fn new(theorem: &str, clause: u32, witness: OrderData) -> Self {
        ClassificationRecord { theorem: theorem.to_string(), clause, witness, k_zero: Vec::new(), note: None }
    }

    /// Attach every K-zero curve of the witness.
    pub fn with_all_k_zero(mut self) -> Result<Self> {
        if is_almost_del_pezzo(&self.witness)? {
            self.k_zero = k_zero_curves(&self.witness)?.iter().map(describe).collect();
        }
        Ok(self)
    }

    pub fn tag(&self) -> String {
        format!("{}:{}", self.theorem, self.clause)
    }

    /// Ramification divisor on the base, e.g. `2C0 + 4F`.
    pub fn divisor(&self) -> String {
        self.witness.d_class().base_part().to_string()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.witness.degrees()
    }

    pub fn to_value(&self) -> Value {
        let mut v = json!({
            "tag": self.tag(),
            "theorem": self.theorem,
            "clause": self.clause,
            "divisor": self.divisor(),
            "degrees": self.degrees(),
            "k_squared": to_pq(&self.witness.k_squared()),
            "k_zero": self.k_zero,
            "witness": json::order_to_value(&self.witness),
        });
        if let Some(n) = &self.note {
            v["note"] = json!(n);
        }
        v
    }
}
