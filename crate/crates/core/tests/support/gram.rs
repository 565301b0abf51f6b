//! Independent K² oracle: rebuilds the Gram matrix and the order's canonical
//! class straight from the canonical JSON of an order.

use serde_json::Value;

use super::poly::{ri, R};
use num_traits::{One, Zero};

pub struct Lattice {
    pub gram: Vec<Vec<R>>,
    pub rank: usize,
}

impl Lattice {
    pub fn dot(&self, a: &[R], b: &[R]) -> R {
        let mut s = R::zero();
        for (x, row) in a.iter().zip(&self.gram) {
            for (g, y) in row.iter().zip(b) {
                if !g.is_zero() {
                    s += x * g * y;
                }
            }
        }
        s
    }
}

fn base_of(v: &Value) -> (usize, Vec<Vec<i64>>, Vec<i64>) {
    match v["base"]["type"].as_str().unwrap() {
        "P2" => (1, vec![vec![1]], vec![-3]),
        _ => {
            let n = v["base"]["n"].as_i64().unwrap();
            (2, vec![vec![-n, 1], vec![1, 0]], vec![-2, -(n + 2)])
        }
    }
}

/// Lattice, canonical class of the surface and the order's canonical class.
pub fn canonical(v: &Value) -> (Lattice, Vec<R>, Vec<R>) {
    let (rank, g0, k0) = base_of(v);
    let points: Vec<String> =
        v["points"].as_array().unwrap().iter().map(|p| p["id"].as_str().unwrap().to_string()).collect();
    let n = rank + points.len();
    let mut gram = vec![vec![R::zero(); n]; n];
    for (i, row) in gram.iter_mut().enumerate() {
        if i < rank {
            for (g, &x) in row.iter_mut().zip(&g0[i]) {
                *g = ri(x);
            }
        } else {
            row[i] = -R::one();
        }
    }
    let mut kz: Vec<R> = k0.iter().map(|&x| ri(x)).collect();
    kz.extend((0..points.len()).map(|_| R::one()));
    let mut kx = kz.clone();
    for c in v["components"].as_array().unwrap() {
        let e = c["e"].as_i64().unwrap();
        let w = R::one() - R::new(1.into(), e.into());
        let mut cls: Vec<R> = c["class"].as_array().unwrap().iter().map(|x| ri(x.as_i64().unwrap())).collect();
        cls.extend((0..points.len()).map(|_| R::zero()));
        if let Some(p) = c.get("exceptional_of").and_then(Value::as_str) {
            let i = points.iter().position(|q| q == p).unwrap();
            cls[rank + i] += R::one();
        }
        for (p, m) in c["mults"].as_object().unwrap() {
            let i = points.iter().position(|q| q == p).unwrap();
            cls[rank + i] -= ri(m.as_i64().unwrap());
        }
        for i in 0..n {
            kx[i] += &w * &cls[i];
        }
    }
    (Lattice { gram, rank }, kz, kx)
}

pub fn k_squared(v: &Value) -> R {
    let (l, _, kx) = canonical(v);
    l.dot(&kx, &kx)
}
