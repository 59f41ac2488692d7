use serde::{Serialize, Serializer};

use crate::dirichlet::{AbelianFieldSpec, DirichletCharacter};
use crate::error::Result;
use crate::exact::{harmonic, Rational};
use crate::lfunctions::{dedekind_logderiv_terms, l_logderiv_neg, Routes};
use crate::special::evaluation::EvaluationWire;
use crate::special::{BigComplex, BigFloat, Evaluation, Route};

/// `value` with only its representation error as bound.
pub(crate) fn constant(value: BigFloat, prec: usize) -> Evaluation {
    Evaluation::finish_real(value, BigFloat::zero(64), Route::Series, prec)
}

/// The bracketed factor
/// `L'/L(chi, 1 - n) + H_{n-1}/2 - c_chi log 2 / (1 - 2^{-n})`.
#[derive(Debug, Clone, PartialEq)]
pub struct ColmezFactor {
    pub chi: DirichletCharacter,
    pub n: u32,
    pub logderiv: Evaluation,
    pub harmonic_term: Rational,
    pub log2_term: Evaluation,
    pub total: Evaluation,
}

impl ColmezFactor {
    pub fn c_chi(&self) -> u32 {
        self.chi.is_trivial() as u32
    }
}

#[derive(Serialize)]
struct ColmezWire<'a> {
    chi: &'a DirichletCharacter,
    n: u32,
    c_chi: u32,
    order: u64,
    logderiv: EvaluationWire,
    harmonic_term: &'a Rational,
    log2_term: EvaluationWire,
    total: EvaluationWire,
}

impl Serialize for ColmezFactor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ColmezWire {
            chi: &self.chi,
            n: self.n,
            c_chi: self.c_chi(),
            order: self.chi.order(),
            logderiv: self.logderiv.to_wire(),
            harmonic_term: &self.harmonic_term,
            log2_term: self.log2_term.to_wire(),
            total: self.total.to_wire(),
        }
        .serialize(serializer)
    }
}

/// `log 2 / (1 - 2^{-n})`.
pub fn log2_correction(n: u32, prec: usize) -> Evaluation {
    let wp = prec + 32;
    let p = BigFloat::one(wp).ldexp(n as i64);
    let v = &(&BigFloat::ln2(wp) * &p) / &(&p - &BigFloat::one(wp));
    constant(v, prec)
}

fn assemble(chi: DirichletCharacter, n: u32, logderiv: Evaluation, prec: usize) -> ColmezFactor {
    let harmonic_term = harmonic(n as u64 - 1).value * Rational::frac(1, 2);
    let log2_term = if chi.is_trivial() {
        log2_correction(n, prec)
    } else {
        Evaluation::exact(BigComplex::zero(prec), prec)
    };
    let h = constant(BigFloat::from_rational(&harmonic_term, prec + 32), prec);
    let route = logderiv.route;
    let total = logderiv.add(&h, route).sub(&log2_term, route);
    ColmezFactor { chi, n, logderiv, harmonic_term, log2_term, total }
}

pub fn colmez_factor(chi: &DirichletCharacter, n: u32, prec: usize) -> Result<ColmezFactor> {
    let r = l_logderiv_neg(n, chi, prec, Routes::Direct)?;
    Ok(assemble(r.chi, n, r.value, prec))
}

/// Colmez factors of every character of an abelian field, in enumeration
/// order.
pub fn field_colmez_factors(field: &AbelianFieldSpec, n: u32, prec: usize) -> Result<Vec<ColmezFactor>> {
    let terms = dedekind_logderiv_terms(field, n, prec)?;
    Ok(terms.into_iter().map(|(chi, e)| assemble(chi, n, e, prec)).collect())
}

/// The scalar for `K = Q`, `n = 2`:
/// `zeta'/zeta(-1) + 1/2 - (4/3) log 2`.
pub fn kuhn_case_factor(prec: usize) -> Result<Evaluation> {
    Ok(colmez_factor(&DirichletCharacter::trivial(1), 2, prec)?.total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::dirichlet::quadratic_character;

    #[test]
    fn trivial_at_two() {
        let f = colmez_factor(&DirichletCharacter::trivial(1), 2, 192).unwrap();
        assert_eq!(f.harmonic_term, Rational::frac(1, 2));
        assert!((f.total.value.re.to_f64() - 1.560_857_483_658_817_4).abs() < 1e-14);
        assert!(f.total.error_bound.log2_abs() < -150.0);
    }

    #[test]
    fn chi4_at_one_has_no_corrections() {
        let chi4 = quadratic_character(-4).unwrap();
        let f = colmez_factor(&chi4, 1, 128).unwrap();
        assert!(f.harmonic_term.is_zero());
        assert!(f.log2_term.value.is_zero());
        assert_eq!(f.total.value, f.logderiv.value);
    }

    #[test]
    fn excluded() {
        assert_eq!(colmez_factor(&DirichletCharacter::trivial(1), 1, 128), Err(Error::ExcludedCase));
    }
}
