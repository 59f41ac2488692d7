//! Exact arithmetic in the cyclotomic field Q(zeta_m), power basis modulo
//! the m-th cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Deserializer, Serialize};

use super::arith::{divisors, gcd, totient};
use super::rational::Rational;
use crate::error::{Error, Result};
use crate::special::{BigComplex, BigFloat};

/// Orders above this are refused when decoding untrusted input.
pub const MAX_DECODED_ORDER: u64 = 4096;

/// Integer polynomial, coefficients from the constant term up.
pub type IntPoly = Vec<i64>;

fn poly_cache() -> &'static RwLock<HashMap<u64, Arc<IntPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Phi_m(T)`: monic, integer coefficients, degree `phi(m)`.
pub fn cyclotomic_polynomial(m: u64) -> Arc<IntPoly> {
    assert!(m >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = poly_cache().read().unwrap().get(&m) {
        return p.clone();
    }
    // T^m - 1 divided by Phi_d for every proper divisor d
    let mut num: Vec<i64> = vec![0; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        num = exact_div_monic(&num, &phi_d);
    }
    let p = Arc::new(num);
    poly_cache().write().unwrap().entry(m).or_insert(p).clone()
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Reduced power basis vectors of `T^k mod Phi_m` for `k = 0..m`.
struct MonomialTable {
    degree: usize,
    rows: Vec<Vec<i64>>,
}

fn monomials(m: u64) -> Arc<MonomialTable> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<MonomialTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.read().unwrap().get(&m) {
        return t.clone();
    }
    let phi = cyclotomic_polynomial(m);
    let degree = phi.len() - 1;
    let mut rows = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; degree];
    cur[0] = 1;
    for _ in 0..m {
        rows.push(cur.clone());
        // multiply by T and reduce the overflow coefficient
        let top = cur[degree - 1];
        for j in (1..degree).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..degree {
                cur[j] -= top * phi[j];
            }
        }
    }
    let t = Arc::new(MonomialTable { degree, rows });
    cache.write().unwrap().entry(m).or_insert(t).clone()
}

/// An element of Q(zeta_m), coefficients on `1, zeta, ..., zeta^{phi(m)-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CycloElem {
    order: u64,
    coeffs: Vec<Rational>,
}

impl CycloElem {
    pub fn zero(order: u64) -> Self {
        CycloElem { order, coeffs: vec![Rational::zero(); totient(order) as usize] }
    }

    pub fn from_rational(order: u64, r: Rational) -> Self {
        let mut e = Self::zero(order);
        e.coeffs[0] = r;
        e
    }

    pub fn one(order: u64) -> Self {
        Self::from_rational(order, Rational::one())
    }

    /// `zeta_m^t`.
    pub fn root_of_unity(order: u64, t: i64) -> Self {
        let mut sums = vec![Rational::zero(); order as usize];
        sums[t.rem_euclid(order as i64) as usize] = Rational::one();
        Self::from_power_sums(order, &sums)
    }

    /// `sum_t sums[t] * zeta_m^t` for `t = 0..m`.
    pub fn from_power_sums(order: u64, sums: &[Rational]) -> Self {
        assert_eq!(sums.len() as u64, order);
        let table = monomials(order);
        let mut coeffs = vec![Rational::zero(); table.degree];
        for (t, s) in sums.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            for (c, &k) in coeffs.iter_mut().zip(&table.rows[t]) {
                if k != 0 {
                    *c += s * &Rational::from(k);
                }
            }
        }
        CycloElem { order, coeffs }
    }

    pub fn from_coeffs(order: u64, coeffs: Vec<Rational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Domain("cyclotomic order must be positive".into()));
        }
        if coeffs.len() as u64 != totient(order) {
            return Err(Error::Domain(format!(
                "order {order} needs {} coefficients, got {}",
                totient(order),
                coeffs.len()
            )));
        }
        Ok(CycloElem { order, coeffs })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycloElem { order: self.order, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycloElem { order: self.order, coeffs })
    }

    pub fn neg(&self) -> Self {
        CycloElem { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloElem { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(CycloElem { order: self.order, coeffs: reduce(self.order, prod) })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[T].
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi: Vec<Rational> =
            cyclotomic_polynomial(self.order).iter().map(|&c| Rational::from(c)).collect();
        let (g, s) = ext_gcd(trim(self.coeffs.clone()), phi);
        // Phi_m is irreducible, so the gcd is a nonzero constant
        debug_assert_eq!(g.len(), 1);
        let inv_g = g[0].recip()?;
        let mut coeffs: Vec<Rational> = s.iter().map(|c| c * &inv_g).collect();
        coeffs.resize(self.coeffs.len().max(coeffs.len()), Rational::zero());
        Ok(CycloElem { order: self.order, coeffs: reduce(self.order, coeffs) })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inverse()?)
    }

    /// Complex conjugate: `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let m = self.order as usize;
        let mut sums = vec![Rational::zero(); m];
        for (j, c) in self.coeffs.iter().enumerate() {
            sums[(m - j % m) % m] += c;
        }
        Self::from_power_sums(self.order, &sums)
    }

    /// Image in Q(zeta_L) for a multiple `L` of the order.
    pub fn lift(&self, target: u64) -> Result<Self> {
        if !target.is_multiple_of(self.order) {
            return Err(Error::OrderMismatch(self.order, target));
        }
        let step = (target / self.order) as usize;
        let mut sums = vec![Rational::zero(); target as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            sums[j * step] += c;
        }
        Ok(Self::from_power_sums(target, &sums))
    }

    /// Complex embedding `zeta_m -> e^{2 pi i k/m}` for `gcd(k, m) = 1`.
    pub fn embed(&self, k: i64, prec: usize) -> Result<BigComplex> {
        if gcd(k.unsigned_abs(), self.order) != 1 {
            return Err(Error::NotCoprime { value: k, modulus: self.order });
        }
        let work = prec + 16;
        let mut re = BigFloat::zero(work);
        let mut im = BigFloat::zero(work);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = BigComplex::root_of_unity(self.order, k * j as i64, work);
            let cf = BigFloat::from_rational(c, work);
            re = &re + &(&w.re * &cf);
            im = &im + &(&w.im * &cf);
        }
        Ok(BigComplex::new(re.with_prec(prec), im.with_prec(prec)))
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
    p
}

/// Reduces a coefficient vector of any length modulo `Phi_m`.
fn reduce(order: u64, mut poly: Vec<Rational>) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(order);
    let d = phi.len() - 1;
    for i in (d..poly.len()).rev() {
        let c = std::mem::take(&mut poly[i]);
        if c.is_zero() {
            continue;
        }
        for j in 0..d {
            if phi[j] != 0 {
                let delta = &c * &Rational::from(phi[j]);
                poly[i - d + j] -= &delta;
            }
        }
    }
    poly.truncate(d);
    poly.resize(d, Rational::zero());
    poly
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (vec![Rational::zero()], rem);
    }
    let lead_inv = b[db].recip().expect("nonzero leading coefficient");
    let mut quot = vec![Rational::zero(); a.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] * &lead_inv;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let delta = &c * bj;
                rem[i + j] -= &delta;
            }
        }
        quot[i] = c;
    }
    rem.truncate(db.max(1));
    (quot, trim(rem))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x - y
        })
        .collect();
    trim(out)
}

/// Returns `(g, s)` with `s * a = g (mod b)`.
fn ext_gcd(a: Vec<Rational>, b: Vec<Rational>) -> (Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (vec![Rational::one()], vec![Rational::zero()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})[", self.order)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z{}", self.order)?,
                _ => write!(f, "({c})*z{}^{j}", self.order)?,
            }
        }
        Ok(())
    }
}

impl<'de> Deserialize<'de> for CycloElem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Wire {
            order: u64,
            coeffs: Vec<Rational>,
        }
        let w = Wire::deserialize(deserializer)?;
        if w.order > MAX_DECODED_ORDER {
            return Err(serde::de::Error::custom(format!("order {} too large", w.order)));
        }
        CycloElem::from_coeffs(w.order, w.coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        // Phi_105 is the first with a coefficient of absolute value 2
        let p105 = cyclotomic_polynomial(105);
        assert_eq!(p105.len() - 1, 48);
        assert_eq!(p105.iter().map(|c| c.abs()).max(), Some(2));
    }

    #[test]
    fn degrees_match_totient() {
        for m in 1..=120 {
            assert_eq!(cyclotomic_polynomial(m).len() as u64 - 1, totient(m), "m = {m}");
        }
    }

    #[test]
    fn gaussian_units() {
        let i = CycloElem::root_of_unity(4, 1);
        assert_eq!(i.mul(&i).unwrap(), CycloElem::from_rational(4, Rational::from(-1)));
        assert_eq!(i.inverse().unwrap(), i.neg());
    }

    #[test]
    fn embed_i() {
        let i = CycloElem::root_of_unity(4, 1);
        let z = i.embed(1, 128).unwrap();
        assert_eq!(z, BigComplex::i(128));
        assert_eq!(i.embed(3, 128).unwrap(), BigComplex::i(128).conj());
        assert!(matches!(i.embed(2, 128), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn order_mismatch_and_zero_inverse() {
        let a = CycloElem::one(3);
        let b = CycloElem::one(4);
        assert_eq!(a.add(&b), Err(Error::OrderMismatch(3, 4)));
        assert_eq!(CycloElem::zero(5).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn order_one_and_two_are_rationals() {
        let a = CycloElem::root_of_unity(2, 1);
        assert_eq!(a.to_rational(), Some(Rational::from(-1)));
        let b = CycloElem::from_rational(1, Rational::frac(3, 7));
        assert_eq!(b.inverse().unwrap().to_rational(), Some(Rational::frac(7, 3)));
    }

    #[test]
    fn json_shape() {
        let z = CycloElem::root_of_unity(3, 2);
        let json = serde_json::to_string(&z).unwrap();
        assert_eq!(json, r#"{"order":3,"coeffs":["-1/1","-1/1"]}"#);
        let back: CycloElem = serde_json::from_str(&json).unwrap();
        assert_eq!(back, z);
        assert!(serde_json::from_str::<CycloElem>(r#"{"order":3,"coeffs":["1/1"]}"#).is_err());
        assert!(serde_json::from_str::<CycloElem>(r#"{"order":0,"coeffs":[]}"#).is_err());
    }

    #[test]
    fn conjugate_of_root() {
        let z = CycloElem::root_of_unity(7, 3);
        assert_eq!(z.conj(), CycloElem::root_of_unity(7, 4));
    }

    #[test]
    fn lift_preserves_embedding() {
        let z = CycloElem::root_of_unity(3, 1);
        let lifted = z.lift(12).unwrap();
        assert_eq!(lifted, CycloElem::root_of_unity(12, 4));
    }
}
