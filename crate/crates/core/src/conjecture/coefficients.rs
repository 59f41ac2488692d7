//! Closed-form arithmetic-degree coefficients for totally real abelian fields
//! and for the rational case.

use serde::{Serialize, Serializer};

use super::colmez::constant;
use crate::dirichlet::{AbelianFieldSpec, DirichletCharacter};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::lfunctions::{dedekind_logderiv_terms, l_logderiv_neg, Routes};
use crate::special::evaluation::EvaluationWire;
use crate::special::hurwitz::GUARD_BITS;
use crate::special::{BigComplex, BigFloat, Evaluation, Route};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    Prop22,
    Prop23,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Contribution {
    pub chi: DirichletCharacter,
    pub value: Evaluation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeCoefficient {
    pub which: Which,
    pub field: Option<AbelianFieldSpec>,
    pub d: u64,
    pub value: Evaluation,
    /// `zeta_K'/zeta_K(-1)`, the sum of the decomposition.
    pub zeta_k_term: Evaluation,
    pub decomposition: Vec<Contribution>,
}

#[derive(Serialize)]
struct ContributionWire<'a> {
    chi: &'a DirichletCharacter,
    value: EvaluationWire,
}

#[derive(Serialize)]
struct DegreeWire<'a> {
    which: Which,
    field: &'a Option<AbelianFieldSpec>,
    d: u64,
    value: EvaluationWire,
    zeta_k_term: EvaluationWire,
    decomposition: Vec<ContributionWire<'a>>,
}

impl Serialize for DegreeCoefficient {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DegreeWire {
            which: self.which,
            field: &self.field,
            d: self.d,
            value: self.value.to_wire(),
            zeta_k_term: self.zeta_k_term.to_wire(),
            decomposition: self
                .decomposition
                .iter()
                .map(|c| ContributionWire { chi: &c.chi, value: c.value.to_wire() })
                .collect(),
        }
        .serialize(serializer)
    }
}

fn rational(r: Rational, prec: usize) -> BigFloat {
    BigFloat::from_rational(&r, prec + GUARD_BITS)
}

/// `x = zeta'/zeta(-1)`.
fn zeta_logderiv_minus_one(prec: usize) -> Result<Evaluation> {
    Ok(l_logderiv_neg(2, &DirichletCharacter::trivial(1), prec, Routes::Direct)?.value)
}

/// `-(d+1) (d/3 x + 2/3 zeta_K'/zeta_K(-1) + d/2 - 4(d+2)/9 log 2)`.
pub fn prop22_coefficient(field: &AbelianFieldSpec, prec: usize) -> Result<DegreeCoefficient> {
    if !field.is_totally_real() {
        return Err(Error::NotTotallyReal);
    }
    let d = field.degree();
    let terms = dedekind_logderiv_terms(field, 2, prec)?;
    let mut zk = Evaluation::exact(BigComplex::zero(prec), prec).with_route(Route::EulerMaclaurin);
    for (_, e) in &terms {
        zk = zk.add(e, Route::EulerMaclaurin);
    }
    let x = zeta_logderiv_minus_one(prec)?;
    let di = d as i64;
    let ln2 = constant(BigFloat::ln2(prec + GUARD_BITS), prec);
    let inner = x
        .scale(&rational(Rational::frac(di, 3), prec))
        .add(&zk.scale(&rational(Rational::frac(2, 3), prec)), Route::EulerMaclaurin)
        .add(&constant(rational(Rational::frac(di, 2), prec), prec), Route::EulerMaclaurin)
        .sub(&ln2.scale(&rational(Rational::frac(4 * (di + 2), 9), prec)), Route::EulerMaclaurin);
    let value = inner.scale(&BigFloat::from_i64(-(di + 1), prec));
    let decomposition = terms.into_iter().map(|(chi, value)| Contribution { chi, value }).collect();
    Ok(DegreeCoefficient { which: Which::Prop22, field: Some(field.clone()), d, value, zeta_k_term: zk, decomposition })
}

/// `-(4 x - 16/3 log 2 + 2)`.
pub fn prop23_coefficient(prec: usize) -> Result<DegreeCoefficient> {
    let x = zeta_logderiv_minus_one(prec)?;
    let ln2 = constant(BigFloat::ln2(prec + GUARD_BITS), prec);
    let inner = x
        .scale(&BigFloat::from_i64(4, prec))
        .sub(&ln2.scale(&rational(Rational::frac(16, 3), prec)), Route::EulerMaclaurin)
        .add(&constant(BigFloat::from_i64(2, prec), prec), Route::EulerMaclaurin);
    let value = inner.neg();
    let decomposition = vec![Contribution { chi: DirichletCharacter::trivial(1), value: x.clone() }];
    Ok(DegreeCoefficient { which: Which::Prop23, field: None, d: 1, value, zeta_k_term: x, decomposition })
}
