//! `L'/L(chi, 1 - n)` by two routes: directly from Hurwitz derivatives at
//! `1 - n`, and by transfer from `s = n` through the functional equation
//! of the completed L-function.

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use super::bernoulli::gen_bernoulli;
use super::values::{l_deriv, l_pair};
use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};
use crate::exact::arith::gcd;
use crate::exact::Rational;
use crate::special::evaluation::{bound, EvaluationWire, BOUND_PREC};
use crate::special::hurwitz::GUARD_BITS;
use crate::special::logs::ln_int;
use crate::special::progression::{progression_sum, ProgressionSum};
use crate::special::{digamma_rational, BigComplex, BigFloat, Evaluation, Route};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Routes {
    Direct,
    Functional,
    Both,
}

impl FromStr for Routes {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Routes::Direct),
            "functional" => Ok(Routes::Functional),
            "both" => Ok(Routes::Both),
            _ => Err(Error::Parse(format!("unknown routes {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogDerivResult {
    pub chi: DirichletCharacter,
    pub n: u32,
    pub value: Evaluation,
    /// Direct route, from Hurwitz derivatives at `1 - n`.
    pub route_a: Option<Evaluation>,
    /// Functional-equation route, from Dirichlet series at `n`.
    pub route_b: Option<Evaluation>,
    /// `|route_a - route_b|` when both ran.
    pub agreement: Option<BigFloat>,
}

#[derive(Serialize)]
struct LogDerivWire<'a> {
    chi: &'a DirichletCharacter,
    n: u32,
    value: EvaluationWire,
    error_bound: String,
    route_a: Option<EvaluationWire>,
    route_b: Option<EvaluationWire>,
    agreement: Option<String>,
}

impl Serialize for LogDerivResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        LogDerivWire {
            chi: &self.chi,
            n: self.n,
            value: self.value.to_wire(),
            error_bound: self.value.error_bound.to_decimal(6),
            route_a: self.route_a.as_ref().map(Evaluation::to_wire),
            route_b: self.route_b.as_ref().map(Evaluation::to_wire),
            agreement: self.agreement.as_ref().map(|a| a.to_decimal(6)),
        }
        .serialize(serializer)
    }
}

/// Exact `L(chi, 1 - n)` after the exclusion and trivial-zero checks.
fn checked_exact_value(n: u32, chi: &DirichletCharacter, prec: usize) -> Result<BigComplex> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    if n == 1 && chi.is_trivial() {
        return Err(Error::ExcludedCase);
    }
    let b = gen_bernoulli(n, chi);
    if b.value.is_zero() {
        return Err(Error::TrivialZero { chi: chi.label(), s: 1 - n as i64 });
    }
    Ok(b.value.embed(1, prec)?.scale(&BigFloat::from_i64(-1, prec).div_i64(n as i64)))
}

fn direct_route(n: u32, chi: &DirichletCharacter, exact: &BigComplex, prec: usize) -> Result<Evaluation> {
    let s = BigComplex::from_i64(1 - n as i64, prec + GUARD_BITS);
    let dl = l_deriv(&s, chi, prec + GUARD_BITS)?;
    let v = &dl.value / exact;
    let err = &dl.error_bound / &bound(&exact.abs());
    Ok(Evaluation::finish(v, err, Route::EulerMaclaurin, prec))
}

type SeriesRow = Arc<Vec<Option<ProgressionSum>>>;
type SeriesCache = RwLock<HashMap<(u32, u64, usize), SeriesRow>>;

/// Progression sums `sum_{m = b mod q} m^{-n}` with derivatives for each
/// unit residue `b`, shared by all characters mod `q`.
fn series_row(n: u32, q: u64, prec: usize) -> Result<SeriesRow> {
    static CACHE: OnceLock<SeriesCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.read().unwrap().get(&(n, q, prec)) {
        return Ok(r.clone());
    }
    let entries: Result<Vec<_>> = (1..=q)
        .into_par_iter()
        .map(|b| if gcd(b, q) == 1 { progression_sum(n as i64, q, b, 0, prec).map(Some) } else { Ok(None) })
        .collect();
    let row = Arc::new(entries?);
    Ok(cache.write().unwrap().entry((n, q, prec)).or_insert(row).clone())
}

/// `(L(n, chi), L'(n, chi))` at working precision with absolute error
/// bounds, by Dirichlet series summed along residue classes.
pub fn dirichlet_series_pair(
    n: u32,
    chi: &DirichletCharacter,
    prec: usize,
) -> Result<(BigComplex, BigComplex, BigFloat, BigFloat)> {
    let q = chi.modulus();
    let wp = prec + GUARD_BITS;
    let row = series_row(n, q, prec)?;
    let m = chi.order() as usize;
    let mut val = vec![BigFloat::zero(wp); m];
    let mut der = vec![BigFloat::zero(wp); m];
    let mut err_v = BigFloat::zero(BOUND_PREC);
    let mut err_d = BigFloat::zero(BOUND_PREC);
    for b in 1..=q {
        if let (Some(t), Some(p)) = (chi.value_exponent(b as i64), &row[b as usize - 1]) {
            val[t as usize] = &val[t as usize] + &p.value;
            der[t as usize] = &der[t as usize] + &p.deriv;
            err_v = &err_v + &p.value_err;
            err_d = &err_d + &p.deriv_err;
        }
    }
    let mut l = BigComplex::zero(wp);
    let mut dl = BigComplex::zero(wp);
    for t in 0..m {
        let w = BigComplex::root_of_unity(m as u64, t as i64, wp);
        l = &l + &w.scale(&val[t]);
        dl = &dl + &w.scale(&der[t]);
    }
    Ok((l, dl, err_v, err_d))
}

/// `L(conj chi, 1)` and its derivative from Hurwitz finite parts, for
/// nontrivial `chi`, where the Dirichlet series converges only conditionally.
fn pair_at_one(chi: &DirichletCharacter, prec: usize) -> Result<(BigComplex, BigComplex, BigFloat, BigFloat)> {
    let one = BigComplex::one(prec + GUARD_BITS);
    let (l, dl) = l_pair(&one, &chi.conj(), prec + GUARD_BITS)?;
    Ok((l.value, dl.value, l.error_bound, dl.error_bound))
}

/// `L'/L(chi, 1 - n) = -log(q/pi) - psi((1 - n + delta)/2)/2
///     - psi((n + delta)/2)/2 - L'/L(conj chi, n)`.
fn functional_route(n: u32, chi: &DirichletCharacter, prec: usize) -> Result<Evaluation> {
    let wp = prec + GUARD_BITS;
    let q = chi.modulus();
    let delta = chi.parity().delta() as i64;
    let (l, dl, err_l, err_dl) =
        if n == 1 { pair_at_one(chi, prec)? } else { dirichlet_series_pair(n, &chi.conj(), prec)? };
    let ratio = &dl / &l;
    let l_mag = bound(&l.abs());
    let ratio_err = &(&err_dl + &(&bound(&ratio.abs()) * &err_l)) / &l_mag;

    let psi1 = digamma_rational(&Rational::frac(1 - n as i64 + delta, 2), wp)?;
    let psi2 = digamma_rational(&Rational::frac(n as i64 + delta, 2), wp)?;
    let log_q_over_pi = &ln_int(q, wp) - &BigFloat::pi(wp).ln();
    let half_psi = (&psi1.value.re + &psi2.value.re).ldexp(-1);
    let real = -(&log_q_over_pi + &half_psi);
    let v = &BigComplex::from_real(real) - &ratio;
    let err = &ratio_err + &(&psi1.error_bound + &psi2.error_bound);
    Ok(Evaluation::finish(v, err, Route::FunctionalEquation, prec))
}

/// `L'/L(chi, 1 - n)` for the primitive character inducing `chi`.
///
/// Refuses `n = 1` with the trivial character and every `(chi, n)` where
/// `L(chi, 1 - n)` vanishes. At `n = 1` the functional route takes
/// `L'/L(conj chi, 1)` from Hurwitz finite parts instead of the series.
pub fn l_logderiv_neg(n: u32, chi: &DirichletCharacter, prec: usize, routes: Routes) -> Result<LogDerivResult> {
    let chi = chi.primitive_part();
    let exact = checked_exact_value(n, &chi, prec + 2 * GUARD_BITS)?;
    let want_direct = routes != Routes::Functional;
    let want_functional = routes != Routes::Direct;
    // routes run with guard bits so the agreement is not masked by the final rounding
    let inner = prec + GUARD_BITS;
    let route_a = want_direct.then(|| direct_route(n, &chi, &exact, inner)).transpose()?;
    let route_b = want_functional.then(|| functional_route(n, &chi, inner)).transpose()?;
    let agreement = match (&route_a, &route_b) {
        (Some(a), Some(b)) => Some(bound(&a.distance(b))),
        _ => None,
    };
    let round = |e: Evaluation| Evaluation::finish(e.value, e.error_bound, e.route, prec);
    let (route_a, route_b) = (route_a.map(round), route_b.map(round));
    let value = route_a.clone().or_else(|| route_b.clone()).expect("at least one route");
    Ok(LogDerivResult { chi, n, value, route_a, route_b, agreement })
}
