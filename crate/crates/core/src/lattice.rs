//! Picard lattice of an iterated blowup of ℙ² or 𝔽ₙ.
//!
//! Classes are stored on the total-transform basis: `H` (or `C₀, F`) pulled
//! back, followed by the total transforms `E₁ … E_k` in creation order. The
//! form is then block diagonal with `Eᵢ·Eⱼ = −δᵢⱼ`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{display, q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisTag {
    P2,
    Hirzebruch(u32),
}

impl BasisTag {
    /// Number of base coefficients (1 for `{H}`, 2 for `{C₀, F}`).
    pub fn rank(self) -> usize {
        match self {
            BasisTag::P2 => 1,
            BasisTag::Hirzebruch(_) => 2,
        }
    }

    /// `K²` of the unblown base: 9 for ℙ², 8 for every 𝔽ₙ.
    pub fn canonical_square(self) -> Q {
        match self {
            BasisTag::P2 => q(9),
            BasisTag::Hirzebruch(_) => q(8),
        }
    }

    /// Blowup budget of the cone enumeration.
    pub fn max_blowups(self) -> usize {
        match self {
            BasisTag::P2 => 8,
            BasisTag::Hirzebruch(_) => 7,
        }
    }

    pub fn name(self) -> String {
        match self {
            BasisTag::P2 => "P2".to_string(),
            BasisTag::Hirzebruch(n) => format!("F{n}"),
        }
    }

    fn pair(self, a: &[Q], b: &[Q]) -> Q {
        match self {
            BasisTag::P2 => a[0] * b[0],
            BasisTag::Hirzebruch(n) => {
                let n = q(i64::from(n));
                -n * a[0] * b[0] + a[0] * b[1] + a[1] * b[0]
            }
        }
    }
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisTag::P2 => write!(f, "P2"),
            BasisTag::Hirzebruch(n) => write!(f, "F{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub base: BasisTag,
    pub coeffs_base: Vec<Q>,
    pub coeffs_exc: Vec<Q>,
}

impl DivisorClass {
    pub fn zero(base: BasisTag, k: usize) -> Self {
        DivisorClass { base, coeffs_base: vec![Q::zero(); base.rank()], coeffs_exc: vec![Q::zero(); k] }
    }

    pub fn new(base: BasisTag, coeffs_base: Vec<Q>, coeffs_exc: Vec<Q>) -> Result<Self> {
        if coeffs_base.len() != base.rank() {
            return Err(Error::Dimension(format!(
                "{} needs {} base coefficients, got {}",
                base,
                base.rank(),
                coeffs_base.len()
            )));
        }
        Ok(DivisorClass { base, coeffs_base, coeffs_exc })
    }

    pub fn from_ints(base: BasisTag, b: &[i64], e: &[i64]) -> Result<Self> {
        Self::new(base, b.iter().map(|&x| q(x)).collect(), e.iter().map(|&x| q(x)).collect())
    }

    /// `H` on a ℙ² model with `k` blowups.
    pub fn h(k: usize) -> Self {
        let mut c = Self::zero(BasisTag::P2, k);
        c.coeffs_base[0] = Q::one();
        c
    }

    pub fn c0(n: u32, k: usize) -> Self {
        let mut c = Self::zero(BasisTag::Hirzebruch(n), k);
        c.coeffs_base[0] = Q::one();
        c
    }

    pub fn fibre(n: u32, k: usize) -> Self {
        let mut c = Self::zero(BasisTag::Hirzebruch(n), k);
        c.coeffs_base[1] = Q::one();
        c
    }

    /// Total transform `Eᵢ` (0-based index).
    pub fn exceptional(base: BasisTag, k: usize, i: usize) -> Self {
        let mut c = Self::zero(base, k);
        c.coeffs_exc[i] = Q::one();
        c
    }

    pub fn num_blowups(&self) -> usize {
        self.coeffs_exc.len()
    }

    pub fn dim(&self) -> usize {
        self.coeffs_base.len() + self.coeffs_exc.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs_base.iter().chain(&self.coeffs_exc).all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs_base.iter().chain(&self.coeffs_exc).all(|c| c.is_integer())
    }

    /// Flat coefficient vector: base block then exceptional block.
    pub fn coeffs(&self) -> Vec<Q> {
        self.coeffs_base.iter().chain(&self.coeffs_exc).copied().collect()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.base != other.base || self.coeffs_exc.len() != other.coeffs_exc.len() {
            return Err(Error::Dimension(format!(
                "{} with {} blowups vs {} with {} blowups",
                self.base,
                self.coeffs_exc.len(),
                other.base,
                other.coeffs_exc.len()
            )));
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Self) -> Result<Q> {
        self.check_same(other)?;
        let mut s = self.base.pair(&self.coeffs_base, &other.coeffs_base);
        for (a, b) in self.coeffs_exc.iter().zip(&other.coeffs_exc) {
            s -= a * b;
        }
        Ok(s)
    }

    /// Self-intersection.
    pub fn square(&self) -> Q {
        self.intersect(self).expect("a class always pairs with itself")
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Q, Q) -> Q) -> Self {
        DivisorClass {
            base: self.base,
            coeffs_base: self.coeffs_base.iter().zip(&other.coeffs_base).map(|(a, b)| f(*a, *b)).collect(),
            coeffs_exc: self.coeffs_exc.iter().zip(&other.coeffs_exc).map(|(a, b)| f(*a, *b)).collect(),
        }
    }

    pub fn scale(&self, s: Q) -> Self {
        DivisorClass {
            base: self.base,
            coeffs_base: self.coeffs_base.iter().map(|c| c * s).collect(),
            coeffs_exc: self.coeffs_exc.iter().map(|c| c * s).collect(),
        }
    }

    /// Zero-pad onto a model with `k ≥ self.num_blowups()` blowups.
    pub fn pad_to(&self, k: usize) -> Result<Self> {
        if k < self.coeffs_exc.len() {
            return Err(Error::Lineage(format!("cannot pull back from {} blowups to {}", self.coeffs_exc.len(), k)));
        }
        let mut c = self.clone();
        c.coeffs_exc.resize(k, Q::zero());
        Ok(c)
    }

    /// Forget exceptionals beyond the first `k`.
    pub fn truncate_to(&self, k: usize) -> Result<Self> {
        if k > self.coeffs_exc.len() {
            return Err(Error::Lineage(format!("cannot push forward from {} blowups to {}", self.coeffs_exc.len(), k)));
        }
        let mut c = self.clone();
        c.coeffs_exc.truncate(k);
        Ok(c)
    }

    /// Drop one exceptional coordinate (used when a non-final leaf is contracted).
    pub fn remove_exceptional(&self, i: usize) -> Self {
        let mut c = self.clone();
        c.coeffs_exc.remove(i);
        c
    }

    /// The base part `f_*` of the class, as a class with no blowups.
    pub fn base_part(&self) -> Self {
        DivisorClass { base: self.base, coeffs_base: self.coeffs_base.clone(), coeffs_exc: Vec::new() }
    }

    /// Lexicographic comparison of the flat coefficient vectors.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.coeffs_base.iter().chain(&self.coeffs_exc).cmp(other.coeffs_base.iter().chain(&other.coeffs_exc))
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_add(rhs).expect("adding classes from different lattices")
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_sub(rhs).expect("subtracting classes from different lattices")
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scale(-Q::one())
    }
}

impl Mul<&DivisorClass> for Q {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(self)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = match self.base {
            BasisTag::P2 => vec!["H".into()],
            BasisTag::Hirzebruch(_) => vec!["C0".into(), "F".into()],
        };
        let mut terms = Vec::new();
        let labels = names.into_iter().chain((1..=self.coeffs_exc.len()).map(|i| format!("E{i}")));
        for (c, name) in self.coeffs_base.iter().chain(&self.coeffs_exc).zip(labels) {
            if c.is_zero() {
                continue;
            }
            let term = if c.is_one() {
                name
            } else if *c == -Q::one() {
                format!("-{name}")
            } else {
                format!("{}{}", display(c), name)
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        write!(f, "{out}")
    }
}

/// Canonical class of the base surface: `−3H` or `−2C₀ − (n+2)F`.
pub fn base_canonical(base: BasisTag) -> DivisorClass {
    match base {
        BasisTag::P2 => DivisorClass::h(0).scale(q(-3)),
        BasisTag::Hirzebruch(n) => {
            DivisorClass { base, coeffs_base: vec![q(-2), q(-(i64::from(n) + 2))], coeffs_exc: Vec::new() }
        }
    }
}

/// Canonical class of a model with `k` blowups: base K plus `Σ Eᵢ`.
pub fn canonical_class_k(base: BasisTag, k: usize) -> DivisorClass {
    let mut c = base_canonical(base).pad_to(k).expect("padding up never fails");
    for x in c.coeffs_exc.iter_mut() {
        *x = Q::one();
    }
    c
}
