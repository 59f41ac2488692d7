use num_bigint::BigInt;
use serde::Serialize;

use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};
use crate::exact::{bernoulli_polynomial, CycloElem, Rational};

/// `B_{n, chi} = q^{n-1} sum_{a=1}^{q} chi(a) B_n(a/q)`, exact in `Q(zeta_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenBernoulli {
    pub n: u32,
    pub character: DirichletCharacter,
    pub value: CycloElem,
}

pub fn gen_bernoulli(n: u32, chi: &DirichletCharacter) -> GenBernoulli {
    let q = chi.modulus();
    let m = chi.order();
    let mut sums = vec![Rational::zero(); m as usize];
    for a in 1..=q {
        if let Some(t) = chi.value_exponent(a as i64) {
            sums[t as usize] += bernoulli_polynomial(n as usize, &Rational::frac(a as i64, q as i64));
        }
    }
    let scale = Rational::from_integer(BigInt::from(q).pow(n - 1));
    let value = CycloElem::from_power_sums(m, &sums).scale(&scale);
    GenBernoulli { n, character: chi.clone(), value }
}

/// `L(chi, 1 - n) = -B_{n, chi} / n` for the primitive character inducing
/// `chi`. The pair `n = 1`, `chi` trivial is refused.
pub fn l_exact_nonpos(n: u32, chi: &DirichletCharacter) -> Result<CycloElem> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let chi = chi.primitive_part();
    if n == 1 && chi.is_trivial() {
        return Err(Error::ExcludedCase);
    }
    let b = gen_bernoulli(n, &chi);
    Ok(b.value.scale(&Rational::frac(-1, n as i64)))
}
