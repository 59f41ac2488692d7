use super::bigfloat::BigFloat;
use super::evaluation::{Evaluation, Route, BOUND_PREC};
use super::hurwitz::GUARD_BITS;
use crate::error::{Error, Result};

/// Arithmetic-geometric mean together with the number of iterations used.
pub fn agm_with_count(a: &BigFloat, b: &BigFloat, prec: usize) -> Result<(Evaluation, usize)> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::Domain("agm arguments must be positive".into()));
    }
    let wp = prec + GUARD_BITS;
    let mut a = a.with_prec(wp);
    let mut b = b.with_prec(wp);
    let mut iterations = 0;
    loop {
        let gap = (&a - &b).abs();
        let big = a.max(&b);
        if gap.is_zero() || gap.log2_abs() < big.log2_abs() - prec as f64 {
            let value = (&a + &b).ldexp(-1);
            let err = &gap.with_prec(BOUND_PREC)
                + &BigFloat::from_u64(iterations as u64 + 4, BOUND_PREC)
                    .ldexp((big.log2_abs() - wp as f64).ceil() as i64 + 2);
            return Ok((Evaluation::finish_real(value, err, Route::Agm, prec), iterations));
        }
        let next_a = (&a + &b).ldexp(-1);
        b = (&a * &b).sqrt();
        a = next_a;
        iterations += 1;
    }
}

pub fn agm(a: &BigFloat, b: &BigFloat, prec: usize) -> Result<Evaluation> {
    Ok(agm_with_count(a, b, prec)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point() {
        let one = BigFloat::one(128);
        let (e, n) = agm_with_count(&one, &one, 128).unwrap();
        assert_eq!(e.value.re, one);
        assert_eq!(n, 0);
    }

    #[test]
    fn gauss_constant() {
        let p = 256;
        let root2 = BigFloat::from_i64(2, p).sqrt();
        let (e, n) = agm_with_count(&root2, &BigFloat::one(p), p).unwrap();
        assert!((e.value.re.to_f64() - 1.198_140_234_735_592_2).abs() < 1e-15);
        assert!(n as f64 <= (p as f64).log2() + 10.0);
        let swapped = agm(&BigFloat::one(p), &root2, p).unwrap();
        assert_eq!(swapped, e);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(agm(&BigFloat::zero(64), &BigFloat::one(64), 64).is_err());
    }
}
