use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicNumber {
    pub index: u64,
    pub value: Rational,
}

/// Exact `H_n = 1 + 1/2 + ... + 1/n`, with `H_0 = 0`.
pub fn harmonic(n: u64) -> HarmonicNumber {
    let value = if n == 0 {
        Rational::zero()
    } else {
        let (p, q) = split(1, n + 1);
        Rational::new(p, q).expect("positive denominator")
    };
    HarmonicNumber { index: n, value }
}

/// `sum_{lo <= j < hi} 1/j` as an unreduced fraction.
fn split(lo: u64, hi: u64) -> (BigInt, BigInt) {
    if hi - lo == 1 {
        return (BigInt::from(1), BigInt::from(lo));
    }
    let mid = lo + (hi - lo) / 2;
    let (p1, q1) = split(lo, mid);
    let (p2, q2) = split(mid, hi);
    (p1 * &q2 + p2 * &q1, q1 * q2)
}
