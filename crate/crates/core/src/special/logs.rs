//! Natural logarithms of positive integers assembled from cached prime logs.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use super::bigfloat::BigFloat;
use crate::exact::arith::factorize;

fn prime_logs() -> &'static RwLock<HashMap<(u64, usize), BigFloat>> {
    static CACHE: OnceLock<RwLock<HashMap<(u64, usize), BigFloat>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn ln_prime(p: u64, prec: usize) -> BigFloat {
    if let Some(v) = prime_logs().read().unwrap().get(&(p, prec)) {
        return v.clone();
    }
    let v = if p == 2 {
        BigFloat::ln2(prec + 16).with_prec(prec + 8)
    } else {
        BigFloat::from_u64(p, prec + 16).ln().with_prec(prec + 8)
    };
    prime_logs().write().unwrap().entry((p, prec)).or_insert(v).clone()
}

/// `ln n` for `n >= 1`, accurate to a few units in the last place.
pub fn ln_int(n: u64, prec: usize) -> BigFloat {
    assert!(n >= 1, "ln of zero");
    let mut acc = BigFloat::zero(prec + 8);
    for (p, e) in factorize(n) {
        acc = &acc + &ln_prime(p, prec).mul_i64(e as i64);
    }
    acc.with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_direct_log() {
        for n in [1u64, 2, 3, 10, 97, 360, 1001, 65536, 999_983] {
            let direct = if n == 1 { BigFloat::zero(200) } else { BigFloat::from_u64(n, 200).ln() };
            let cached = ln_int(n, 200);
            let diff = (&direct - &cached).abs();
            assert!(diff.is_zero() || diff.log2_abs() < -190.0, "n = {n}");
        }
    }
}
