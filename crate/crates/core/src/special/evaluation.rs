use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bigfloat::BigFloat;
use super::complex::BigComplex;

/// Precision used to carry error bounds.
pub const BOUND_PREC: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    EulerMaclaurin,
    FunctionalEquation,
    Exact,
    Series,
    Agm,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::EulerMaclaurin => "euler_maclaurin",
            Route::FunctionalEquation => "functional_equation",
            Route::Exact => "exact",
            Route::Series => "series",
            Route::Agm => "agm",
        }
    }
}

/// A numeric value with an absolute error estimate and its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub value: BigComplex,
    pub error_bound: BigFloat,
    pub route: Route,
    pub prec_bits: usize,
}

pub fn bound(x: &BigFloat) -> BigFloat {
    x.abs().with_prec(BOUND_PREC)
}

/// `2^k` as a bound-precision float.
pub fn pow2(k: i64) -> BigFloat {
    BigFloat::one(BOUND_PREC).ldexp(k)
}

impl Evaluation {
    /// Rounds a working-precision value to `prec` bits, folding the rounding
    /// error into the bound.
    pub fn finish(value: BigComplex, error: BigFloat, route: Route, prec: usize) -> Self {
        let rounding = &bound(&value.abs()) * &pow2(1 - prec as i64);
        Evaluation {
            value: value.with_prec(prec),
            error_bound: &bound(&error) + &rounding,
            route,
            prec_bits: prec,
        }
    }

    pub fn finish_real(value: BigFloat, error: BigFloat, route: Route, prec: usize) -> Self {
        Self::finish(BigComplex::from_real(value), error, route, prec)
    }

    /// A value known exactly; its bound is zero by definition.
    pub fn exact(value: BigComplex, prec: usize) -> Self {
        Evaluation {
            value: value.with_prec(prec),
            error_bound: BigFloat::zero(BOUND_PREC),
            route: Route::Exact,
            prec_bits: prec,
        }
    }

    pub fn real(&self) -> &BigFloat {
        &self.value.re
    }

    pub fn with_route(mut self, route: Route) -> Self {
        self.route = route;
        self
    }

    /// Absolute difference of the values.
    pub fn distance(&self, other: &Evaluation) -> BigFloat {
        (&self.value - &other.value).abs()
    }

    /// Sum of both error bounds.
    pub fn combined_bound(&self, other: &Evaluation) -> BigFloat {
        &self.error_bound + &other.error_bound
    }

    /// True when the two values agree within their combined bounds.
    pub fn agrees_with(&self, other: &Evaluation) -> bool {
        bound(&self.distance(other)) <= self.combined_bound(other)
    }

    pub fn add(&self, other: &Evaluation, route: Route) -> Evaluation {
        let v = &self.value + &other.value;
        let prec = self.prec_bits.min(other.prec_bits);
        Evaluation::finish(v, self.combined_bound(other), route, prec)
    }

    pub fn sub(&self, other: &Evaluation, route: Route) -> Evaluation {
        let v = &self.value - &other.value;
        let prec = self.prec_bits.min(other.prec_bits);
        Evaluation::finish(v, self.combined_bound(other), route, prec)
    }

    pub fn neg(&self) -> Evaluation {
        Evaluation { value: -&self.value, ..self.clone() }
    }

    /// Multiplies by an exactly known scalar.
    pub fn scale(&self, k: &BigFloat) -> Evaluation {
        let v = self.value.scale(k);
        let err = &self.error_bound * &bound(k);
        Evaluation::finish(v, err, self.route, self.prec_bits)
    }

    pub fn mul(&self, other: &Evaluation, route: Route) -> Evaluation {
        let v = &self.value * &other.value;
        let e1 = &self.error_bound;
        let e2 = &other.error_bound;
        let err = &(&(&bound(&self.value.abs()) * e2) + &(&bound(&other.value.abs()) * e1)) + &(e1 * e2);
        Evaluation::finish(v, err, route, self.prec_bits.min(other.prec_bits))
    }

    /// Quotient with first-order error propagation; the divisor's bound must
    /// be smaller than its magnitude.
    pub fn div(&self, other: &Evaluation, route: Route) -> Evaluation {
        let v = &self.value / &other.value;
        let denom_mag = bound(&other.value.abs());
        let slack = &denom_mag - &other.error_bound;
        let err = if slack.is_positive() {
            &(&self.error_bound + &(&bound(&v.abs()) * &other.error_bound)) / &slack
        } else {
            BigFloat::from_f64(f64::MAX, BOUND_PREC)
        };
        Evaluation::finish(v, err, route, self.prec_bits.min(other.prec_bits))
    }

    pub fn to_wire(&self) -> EvaluationWire {
        let digits = BigFloat::decimal_digits_for(self.prec_bits);
        EvaluationWire {
            value: ComplexWire {
                re: self.value.re.to_decimal(digits),
                im: self.value.im.to_decimal(digits),
            },
            error_bound: self.error_bound.to_decimal(6),
            route: self.route,
            prec_bits: self.prec_bits,
        }
    }

    pub fn from_wire(w: &EvaluationWire) -> crate::Result<Self> {
        if !(1..=1 << 20).contains(&w.prec_bits) {
            return Err(crate::Error::Parse(format!("prec_bits {} out of range", w.prec_bits)));
        }
        let p = w.prec_bits;
        let re = BigFloat::parse_decimal(&w.value.re, p)?;
        let im = BigFloat::parse_decimal(&w.value.im, p)?;
        let err = BigFloat::parse_decimal(&w.error_bound, BOUND_PREC)?;
        if err.is_negative() {
            return Err(crate::Error::Parse("negative error bound".into()));
        }
        if w.route == Route::Exact && !err.is_zero() {
            return Err(crate::Error::Parse("exact route with nonzero error bound".into()));
        }
        Ok(Evaluation { value: BigComplex::new(re, im), error_bound: err, route: w.route, prec_bits: p })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexWire {
    pub re: String,
    pub im: String,
}

/// JSON form: every numeric is a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvaluationWire {
    pub value: ComplexWire,
    pub error_bound: String,
    pub route: Route,
    pub prec_bits: usize,
}

impl Serialize for Evaluation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_wire().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Evaluation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let w = EvaluationWire::deserialize(deserializer)?;
        Evaluation::from_wire(&w).map_err(serde::de::Error::custom)
    }
}
