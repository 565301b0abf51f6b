#![allow(dead_code)]

pub mod gram;
pub mod oracle;
pub mod poly;

use dporders::Q;
use num_bigint::BigInt;

pub fn big(x: &Q) -> poly::R {
    poly::R::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}
