#![allow(dead_code)]

use num_rational::BigRational;
use riesz_spectra::interval::{Endpoint, DEFAULT_PRECISION_BITS};

pub fn sqrt(n: u64) -> Endpoint {
    Endpoint::sqrt(n, DEFAULT_PRECISION_BITS)
}

pub fn r(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// `c √n + offset`.
pub fn surd(c: (i64, i64), n: u64, offset: (i64, i64)) -> Endpoint {
    Endpoint::scaled_sqrt(r(c.0, c.1), n, r(offset.0, offset.1), DEFAULT_PRECISION_BITS)
}

/// `[√2 - 1, √3 - 1)`.
pub fn single_interval() -> (Vec<Endpoint>, Vec<Endpoint>) {
    (vec![surd((1, 1), 2, (-1, 1))], vec![surd((1, 1), 3, (-1, 1))])
}

/// `[12/5 - √5, √7/2 - 9/10) ∪ [2√2/3 - 7/20, √3/4 + 2/5)`.
pub fn two_intervals() -> (Vec<Endpoint>, Vec<Endpoint>) {
    (
        vec![surd((-1, 1), 5, (12, 5)), surd((2, 3), 2, (-7, 20))],
        vec![surd((1, 2), 7, (-9, 10)), surd((1, 4), 3, (2, 5))],
    )
}
