//! Dense-enough bivariate polynomials over ℚ (big rationals), plus the linear
//! algebra the coordinate oracle needs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type R = BigRational;

pub fn r(n: i64, d: i64) -> R {
    R::new(BigInt::from(n), BigInt::from(d))
}

pub fn ri(n: i64) -> R {
    r(n, 1)
}

/// `Σ c x^i y^j`, keyed by `(i, j)`. Univariate polynomials use `j = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(pub BTreeMap<(u32, u32), R>);

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn konst(c: R) -> Self {
        Poly::mono(0, 0, c)
    }

    pub fn mono(i: u32, j: u32, c: R) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.0.insert((i, j), c);
        }
        p
    }

    pub fn x() -> Self {
        Poly::mono(1, 0, R::one())
    }

    pub fn y() -> Self {
        Poly::mono(0, 1, R::one())
    }

    /// `x - a` as a univariate polynomial.
    pub fn linear(a: &R) -> Self {
        Poly::x().add(&Poly::konst(-a.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> R {
        self.0.get(&(i, j)).cloned().unwrap_or_else(R::zero)
    }

    fn push(&mut self, k: (u32, u32), c: R) {
        let e = self.0.entry(k).or_insert_with(R::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (k, c) in &o.0 {
            out.push(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&-R::one()))
    }

    pub fn scale(&self, s: &R) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|(k, c)| (*k, c * s)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for ((i, j), a) in &self.0 {
            for ((k, l), b) in &o.0 {
                out.push((i + k, j + l), a * b);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::konst(R::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &R, y: &R) -> R {
        let mut s = R::zero();
        for ((i, j), c) in &self.0 {
            s += c * num_traits::pow(x.clone(), *i as usize) * num_traits::pow(y.clone(), *j as usize);
        }
        s
    }

    /// `f(X, Y)`.
    pub fn compose(&self, xs: &Poly, ys: &Poly) -> Poly {
        let mut out = Poly::zero();
        for ((i, j), c) in &self.0 {
            out = out.add(&xs.pow(*i).mul(&ys.pow(*j)).scale(c));
        }
        out
    }

    /// `f(x + a, y + b)`.
    pub fn shift(&self, a: &R, b: &R) -> Poly {
        let deg = self.0.keys().map(|(i, j)| *i.max(j)).max().unwrap_or(0) as usize;
        let pa = powers(a, deg);
        let pb = powers(b, deg);
        let mut out = Poly::zero();
        for ((i, j), c) in &self.0 {
            for k in 0..=*i {
                let ck = c * &pa[(i - k) as usize] * ri(binomial(*i, k));
                for l in 0..=*j {
                    out.push((k, l), &ck * &pb[(j - l) as usize] * ri(binomial(*j, l)));
                }
            }
        }
        out
    }

    /// Lowest total degree of a term: the multiplicity at the origin.
    pub fn order(&self) -> Option<u32> {
        self.0.keys().map(|(i, j)| i + j).min()
    }

    pub fn mult_at(&self, a: &R, b: &R) -> u32 {
        self.shift(a, b).order().expect("zero polynomial has no multiplicity")
    }

    pub fn dx(&self) -> Poly {
        let mut out = Poly::zero();
        for ((i, j), c) in &self.0 {
            if *i > 0 {
                out.push((i - 1, *j), c * ri(*i as i64));
            }
        }
        out
    }

    pub fn dy(&self) -> Poly {
        let mut out = Poly::zero();
        for ((i, j), c) in &self.0 {
            if *j > 0 {
                out.push((*i, j - 1), c * ri(*j as i64));
            }
        }
        out
    }

    /// Divide by `x^m`; panics if some term has a lower power of `x`.
    pub fn div_x_pow(&self, m: u32) -> Poly {
        Poly(
            self.0
                .iter()
                .map(|((i, j), c)| {
                    assert!(*i >= m, "not divisible by x^{m}");
                    ((i - m, *j), c.clone())
                })
                .collect(),
        )
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.0.keys().map(|(i, _)| *i).max()
    }

    /// Synthetic division of a univariate polynomial by `x - a`, returning
    /// `None` when `a` is not a root.
    pub fn div_root(&self, a: &R) -> Option<Poly> {
        let n = self.degree_x()?;
        let mut q = vec![R::zero(); n as usize];
        let mut carry = R::zero();
        for k in (0..=n).rev() {
            let c = self.coeff(k, 0) + carry.clone() * a;
            if k == 0 {
                if !c.is_zero() {
                    return None;
                }
            } else {
                q[(k - 1) as usize] = c.clone();
                carry = c;
            }
        }
        let mut out = Poly::zero();
        for (k, c) in q.into_iter().enumerate() {
            out.push((k as u32, 0), c);
        }
        Some(out)
    }

    /// Normalise so the leading (lex-largest) coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.0.values().next_back() {
            Some(c) => self.scale(&(R::one() / c)),
            None => Poly::zero(),
        }
    }
}

fn powers(a: &R, n: usize) -> Vec<R> {
    let mut v = vec![R::one()];
    for k in 0..n {
        let next = &v[k] * a;
        v.push(next);
    }
    v
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

/// Basis of the right null space of `rows` (each row a linear functional).
pub fn null_space(rows: &[Vec<R>], n: usize) -> Vec<Vec<R>> {
    let mut m: Vec<Vec<R>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = R::one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[row].clone();
        for (i, other) in m.iter_mut().enumerate() {
            if i != row && !other[col].is_zero() {
                let f = other[col].clone();
                for (x, p) in other.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![R::zero(); n];
            v[f] = R::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}
