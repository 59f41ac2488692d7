//! Oracle suites run by `verify`.

use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::checks::{factorization_consistency, gross_cm_check, lerch_identity_check, OracleLine};
use crate::dirichlet::{enumerate_characters, quadratic_character, AbelianFieldSpec, DirichletCharacter, Parity};
use crate::error::{Error, Result};
use crate::exact::{bernoulli_polynomial, Rational};
use crate::lfunctions::{l_exact_nonpos, l_logderiv_neg, Routes};
use crate::special::evaluation::pow2;
use crate::special::hurwitz::GUARD_BITS;
use crate::special::{
    agm_with_count, euler_gamma, hurwitz_zeta_ds_rational, hurwitz_zeta_rational, BigComplex, BigFloat,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Lerch,
    Factorization,
    Gross,
    Kernels,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "lerch" => Ok(Suite::Lerch),
            "factorization" => Ok(Suite::Factorization),
            "gross" => Ok(Suite::Gross),
            "kernels" => Ok(Suite::Kernels),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub prec_bits: usize,
    pub lines: Vec<OracleLine>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }
}

/// Discriminants of the factorization suite.
pub const FACTORIZATION_DISCRIMINANTS: [i64; 7] = [5, 8, 12, 13, -3, -4, -7];

fn exact_line(name: &str, ok: bool) -> OracleLine {
    OracleLine { name: name.into(), residual: Some(BigFloat::zero(64)), tolerance: BigFloat::zero(64), pass: ok, note: None }
}

fn error_line(name: impl Into<String>, e: &Error) -> OracleLine {
    OracleLine::failure(name, format!("{}: {e}", e.code()))
}

fn exact_values() -> Vec<OracleLine> {
    let check = |name: &str, n: u32, chi: Result<DirichletCharacter>, want: Rational| match chi
        .and_then(|c| l_exact_nonpos(n, &c))
    {
        Ok(v) => exact_line(name, v.to_rational() == Some(want)),
        Err(e) => error_line(name, &e),
    };
    vec![
        check("exact L(chi_-4, 0) = 1/2", 1, quadratic_character(-4), Rational::frac(1, 2)),
        check("exact zeta(-1) = -1/12", 2, Ok(DirichletCharacter::trivial(1)), Rational::frac(-1, 12)),
        check("exact L(chi_5, -1) = -2/5", 2, quadratic_character(5), Rational::frac(-2, 5)),
    ]
}

/// `zeta'(-1) = 1/12 - log A` with
/// `log A = (gamma + log 2 pi)/12 - zeta'(2)/(2 pi^2)`.
fn glaisher(prec: usize) -> Result<OracleLine> {
    let wp = prec + GUARD_BITS;
    let one = Rational::one();
    let d_m1 = hurwitz_zeta_ds_rational(&BigComplex::from_i64(-1, wp), &one, prec)?;
    let d_2 = hurwitz_zeta_ds_rational(&BigComplex::from_i64(2, wp), &one, prec)?;
    let gamma = euler_gamma(prec)?;
    let pi = BigFloat::pi(wp);
    let ln_2pi = &pi.ln() + &BigFloat::ln2(wp);
    let log_a = &(&gamma.value.re + &ln_2pi).div_i64(12) - &(&d_2.value.re / &(&pi * &pi).mul_i64(2));
    let rhs = &BigFloat::from_rational(&Rational::frac(1, 12), wp) - &log_a;
    let rel = &(&d_m1.value.re - &rhs).abs() / &d_m1.value.re.abs();
    let tol = BigFloat::parse_decimal("1e-40", 64)?;
    Ok(OracleLine::compare("glaisher anchor zeta'(-1) vs 1/12 - log A (relative)", rel, tol))
}

fn basel(prec: usize) -> Result<OracleLine> {
    let wp = prec + GUARD_BITS;
    let z = hurwitz_zeta_rational(&BigComplex::from_i64(2, wp), &Rational::one(), prec)?;
    let pi = BigFloat::pi(wp);
    let want = (&pi * &pi).div_i64(6);
    let tol = &z.error_bound.mul_i64(10) + &pow2(-(prec as i64));
    Ok(OracleLine::compare("basel zeta(2) = pi^2/6", &z.value.re - &want, tol))
}

/// `zeta(-n, a) = -B_{n+1}(a)/(n+1)` for `n <= 12`, reported as the largest
/// ratio of discrepancy to the case's own bound.
fn hurwitz_bernoulli(prec: usize) -> Result<OracleLine> {
    let wp = prec + GUARD_BITS;
    let shifts = [Rational::frac(1, 7), Rational::frac(2, 5), Rational::frac(3, 4), Rational::frac(1, 2), Rational::one()];
    let mut worst = BigFloat::zero(64);
    for n in 0..=12i64 {
        for a in &shifts {
            let z = hurwitz_zeta_rational(&BigComplex::from_i64(-n, wp), a, prec)?;
            let b = bernoulli_polynomial(n as usize + 1, a) * Rational::frac(-1, n + 1);
            let r = (&z.value.re - &BigFloat::from_rational(&b, wp)).abs();
            let tol = &z.error_bound + &pow2(8 - prec as i64);
            worst = worst.max(&(&r / &tol));
        }
    }
    Ok(OracleLine::compare("hurwitz vs bernoulli polynomials, n <= 12 (residual/bound)", worst, BigFloat::one(64)))
}

/// `sum_{j < q} zeta(s, (a + j)/q) = q^s zeta(s, a)`.
fn multiplication(prec: usize) -> Result<Vec<OracleLine>> {
    let wp = prec + GUARD_BITS;
    let a = Rational::frac(1, 3);
    let mut lines = Vec::new();
    for q in [2i64, 3] {
        for s in [Rational::from_integer(3), Rational::frac(5, 2), Rational::frac(-3, 2)] {
            let sc = BigComplex::from_real(BigFloat::from_rational(&s, wp));
            let mut lhs = BigFloat::zero(wp);
            let mut err = BigFloat::zero(64);
            for j in 0..q {
                let shift = (a.clone() + Rational::from_integer(j)) * Rational::frac(1, q);
                let z = hurwitz_zeta_rational(&sc, &shift, prec)?;
                lhs = &lhs + &z.value.re;
                err = &err + &z.error_bound;
            }
            let z = hurwitz_zeta_rational(&sc, &a, prec)?;
            let qs = (&BigFloat::from_rational(&s, wp) * &BigFloat::from_i64(q, wp).ln()).exp();
            let rhs = &qs * &z.value.re;
            let tol = &(&err + &(&z.error_bound * &qs)).mul_i64(10) + &pow2(4 - prec as i64);
            lines.push(OracleLine::compare(format!("multiplication theorem q={q} s={s}"), &lhs - &rhs, tol));
        }
    }
    Ok(lines)
}

fn agm_line(prec: usize) -> Result<OracleLine> {
    let wp = prec + GUARD_BITS;
    let (m, iters) = agm_with_count(&BigFloat::from_i64(2, wp).sqrt(), &BigFloat::one(wp), prec)?;
    let want = BigFloat::parse_decimal("1.19814023473559220743992249228032387823", wp)?;
    let tol = BigFloat::parse_decimal("1e-37", 64)?;
    let line = OracleLine::compare("agm(sqrt 2, 1)", &m.value.re - &want, tol);
    Ok(line.with_note(format!("{iters} iterations")))
}

/// Direct against functional route over every primitive character of
/// conductor at most `q_max` and `n <= n_max` with `chi(-1) = (-1)^n`,
/// leaving out the excluded trivial case at `n = 1`.
pub fn two_route_agreement(q_max: u64, n_max: u32, prec: usize) -> Result<OracleLine> {
    let mut cases = Vec::new();
    for q in 1..=q_max {
        for chi in enumerate_characters(q).into_iter().filter(|c| c.is_primitive()) {
            for n in 1..=n_max {
                let even = chi.parity() == Parity::Even;
                if even == (n % 2 == 0) && !(n == 1 && chi.is_trivial()) {
                    cases.push((chi.clone(), n));
                }
            }
        }
    }
    let worst: Result<Vec<BigFloat>> = cases
        .par_iter()
        .map(|(chi, n)| {
            let r = l_logderiv_neg(*n, chi, prec, Routes::Both)?;
            r.agreement.ok_or_else(|| Error::Unsupported(format!("no second route for {} n={n}", chi.label())))
        })
        .collect();
    let worst = worst?.into_iter().fold(BigFloat::zero(64), |a, b| a.max(&b));
    let tol = pow2(-(prec as i64) / 2);
    Ok(OracleLine::compare(format!("two-route agreement q <= {q_max}, n <= {n_max}"), worst, tol)
        .with_note(format!("{} cases", cases.len())))
}

fn kernels(prec: usize) -> Vec<OracleLine> {
    let mut lines = exact_values();
    let mut push = |name: &str, r: Result<OracleLine>| match r {
        Ok(l) => lines.push(l),
        Err(e) => lines.push(error_line(name, &e)),
    };
    push("glaisher anchor", glaisher(prec));
    push("basel", basel(prec));
    push("hurwitz vs bernoulli polynomials", hurwitz_bernoulli(prec));
    push("agm", agm_line(prec));
    push("two-route agreement", two_route_agreement(24, 6, prec));
    match multiplication(prec) {
        Ok(ls) => lines.extend(ls),
        Err(e) => lines.push(error_line("multiplication theorem", &e)),
    }
    lines
}

fn lerch(prec: usize) -> Vec<OracleLine> {
    let tol = pow2(42 - prec as i64);
    match lerch_identity_check(50, prec) {
        Ok(r) => vec![OracleLine::compare("lerch closed form, conductor <= 50", r.max_residual, tol)
            .with_note(format!("{} characters", r.entries.len()))],
        Err(e) => vec![error_line("lerch closed form", &e)],
    }
}

fn factorization(prec: usize) -> Vec<OracleLine> {
    let cases: Vec<(i64, u32)> =
        FACTORIZATION_DISCRIMINANTS.iter().flat_map(|&d| [(d, 2), (d, 3)]).collect();
    cases
        .par_iter()
        .map(|&(d, n)| {
            match AbelianFieldSpec::quadratic(d).and_then(|k| factorization_consistency(&k, n, prec)) {
                Ok(r) => r.line,
                Err(e) => error_line(format!("factorization D={d} n={n}"), &e),
            }
        })
        .collect()
}

/// The CM checks at `prec` and `2 prec`, plus one line per `d` asserting the
/// residuals shrink.
fn gross(prec: usize) -> Vec<OracleLine> {
    let mut lines = Vec::new();
    for d in [4, 3] {
        let lo = gross_cm_check(d, prec);
        let hi = gross_cm_check(d, 2 * prec);
        match (lo, hi) {
            (Ok(lo), Ok(hi)) => {
                let worst = |ls: &[OracleLine]| {
                    ls.iter().filter_map(|l| l.residual.clone()).fold(BigFloat::zero(64), |a, b| a.max(&b))
                };
                let (rl, rh) = (worst(&lo.lines), worst(&hi.lines));
                let name = format!("gross d={d} residual at {} bits below {} bits", 2 * prec, prec);
                lines.extend(lo.lines);
                lines.extend(hi.lines.into_iter().map(|mut l| {
                    l.name = format!("{} ({} bits)", l.name, 2 * prec);
                    l
                }));
                lines.push(OracleLine::compare(name, rh, rl));
            }
            (Err(e), _) | (_, Err(e)) => lines.push(error_line(format!("gross d={d}"), &e)),
        }
    }
    lines
}

pub fn run_suite(suite: Suite, prec: usize) -> VerifyReport {
    let lines = match suite {
        Suite::Kernels => kernels(prec),
        Suite::Lerch => lerch(prec),
        Suite::Factorization => factorization(prec),
        Suite::Gross => gross(prec),
        Suite::All => {
            let mut l = kernels(prec);
            l.extend(lerch(prec));
            l.extend(factorization(prec));
            l.extend(gross(prec));
            l
        }
    };
    VerifyReport { suite, prec_bits: prec, lines }
}
