//! Bernoulli numbers and polynomials, convention `B_1 = -1/2`.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;

use super::rational::Rational;

fn table() -> &'static RwLock<Vec<Rational>> {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![Rational::one(), Rational::frac(-1, 2)]))
}

/// Binomial coefficients C(n, 0..=n).
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::from(1);
    row.push(c.clone());
    for j in 0..n {
        c = c * (n - j) / (j + 1);
        row.push(c.clone());
    }
    row
}

/// `B_k`, from the recurrence `sum_{j=0}^{k} C(k+1, j) B_j = 0`.
///
/// The table is extended lazily under a write lock and shared by all threads.
pub fn bernoulli_number(k: usize) -> Rational {
    if let Some(b) = table().read().unwrap().get(k) {
        return b.clone();
    }
    let mut t = table().write().unwrap();
    while t.len() <= k {
        let m = t.len();
        if m % 2 == 1 {
            t.push(Rational::zero());
            continue;
        }
        let row = binomial_row(m + 1);
        // only B_0, B_1 and even indices contribute
        let mut acc = Rational::zero();
        for (j, b) in t.iter().enumerate() {
            if j > 1 && j % 2 == 1 {
                continue;
            }
            acc += Rational::from_integer(row[j].clone()) * b;
        }
        let next = -acc / Rational::from_integer(BigInt::from(m + 1));
        t.push(next);
    }
    t[k].clone()
}

/// `B_k(x) = sum_j C(k, j) B_j x^(k-j)`.
pub fn bernoulli_polynomial(k: usize, x: &Rational) -> Rational {
    let row = binomial_row(k);
    // Horner in x over descending powers
    let mut acc = Rational::zero();
    for (j, c) in row.iter().enumerate() {
        acc = acc * x + Rational::from_integer(c.clone()) * bernoulli_number(j);
    }
    acc
}
