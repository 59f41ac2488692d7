use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use super::bigfloat::BigFloat;

#[derive(Clone, PartialEq)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub fn from_real(re: BigFloat) -> Self {
        let im = BigFloat::zero(re.prec());
        BigComplex { re, im }
    }

    pub fn zero(prec: usize) -> Self {
        Self::from_real(BigFloat::zero(prec))
    }

    pub fn one(prec: usize) -> Self {
        Self::from_real(BigFloat::one(prec))
    }

    pub fn i(prec: usize) -> Self {
        BigComplex::new(BigFloat::zero(prec), BigFloat::one(prec))
    }

    pub fn from_i64(n: i64, prec: usize) -> Self {
        Self::from_real(BigFloat::from_i64(n, prec))
    }

    pub fn prec(&self) -> usize {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: usize) -> Self {
        BigComplex::new(self.re.with_prec(prec), self.im.with_prec(prec))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> BigFloat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> BigFloat {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, k: &BigFloat) -> Self {
        BigComplex::new(&self.re * k, &self.im * k)
    }

    /// `e^{i theta}` for real `theta`.
    pub fn cis(theta: &BigFloat) -> Self {
        BigComplex::new(theta.cos(), theta.sin())
    }

    pub fn exp(&self) -> Self {
        let r = self.re.exp();
        if self.im.is_zero() {
            return BigComplex::from_real(r);
        }
        BigComplex::cis(&self.im).scale(&r)
    }

    /// `e^{2 pi i t / m}`, computed from a per-(m, prec) cached table.
    pub fn root_of_unity(m: u64, t: i64, prec: usize) -> Self {
        let table = roots_of_unity(m, prec);
        table[t.rem_euclid(m as i64) as usize].clone()
    }
}

type RootTable = Arc<Vec<BigComplex>>;

fn root_cache() -> &'static RwLock<HashMap<(u64, usize), RootTable>> {
    static CACHE: OnceLock<RwLock<HashMap<(u64, usize), RootTable>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// All m-th roots of unity `e^{2 pi i t/m}`, `t = 0..m`, at `prec` bits.
pub fn roots_of_unity(m: u64, prec: usize) -> RootTable {
    assert!(m >= 1);
    if let Some(t) = root_cache().read().unwrap().get(&(m, prec)) {
        return t.clone();
    }
    let work = prec + 16;
    let step = BigFloat::pi(work).mul_i64(2).div_i64(m as i64);
    let table: Vec<BigComplex> = (0..m)
        .map(|t| {
            // exact values on the axes keep real characters exactly real
            match (4 * t).checked_rem(m) {
                Some(0) => {
                    let quarter = 4 * t / m;
                    let (re, im) = [(1, 0), (0, 1), (-1, 0), (0, -1)][quarter as usize];
                    BigComplex::new(BigFloat::from_i64(re, prec), BigFloat::from_i64(im, prec))
                }
                _ => BigComplex::cis(&step.mul_i64(t as i64)).with_prec(prec),
            }
        })
        .collect();
    let table = Arc::new(table);
    root_cache()
        .write()
        .unwrap()
        .entry((m, prec))
        .or_insert(table)
        .clone()
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl Add<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        if self.im.is_zero() && rhs.im.is_zero() {
            return BigComplex::new(&self.re * &rhs.re, BigFloat::zero(self.prec().max(rhs.prec())));
        }
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        BigComplex::new(re, im)
    }
}

impl Div<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &BigComplex) -> BigComplex {
        if rhs.im.is_zero() {
            return BigComplex::new(&self.re / &rhs.re, &self.im / &rhs.re);
        }
        let d = rhs.norm_sqr();
        let num = self * &rhs.conj();
        BigComplex::new(&num.re / &d, &num.im / &d)
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(-&self.re, -&self.im)
    }
}

macro_rules! owned_binop {
    ($imp:ident, $method:ident) => {
        impl $imp<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: BigComplex) -> BigComplex {
                (&self).$method(&rhs)
            }
        }
        impl $imp<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: &BigComplex) -> BigComplex {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        -&self
    }
}
