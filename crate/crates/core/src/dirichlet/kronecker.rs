use crate::error::{Error, Result};
use crate::exact::arith::is_squarefree;

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1, "jacobi symbol needs odd n");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut sign = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Kronecker symbol `(d/n)` for `n >= 1`.
pub fn kronecker(d: i64, n: u64) -> i32 {
    assert!(n >= 1);
    let twos = n.trailing_zeros();
    let odd = n >> twos;
    let two_part = if twos == 0 {
        1
    } else if d % 2 == 0 {
        0
    } else {
        let s = match d.rem_euclid(8) {
            1 | 7 => 1,
            _ => -1,
        };
        if twos.is_multiple_of(2) {
            1
        } else {
            s
        }
    };
    two_part * jacobi(d, odd)
}

/// Checks that `d` is the discriminant of a quadratic field.
pub fn validate_fundamental_discriminant(d: i64) -> Result<()> {
    let bad = |why: &str| Err(Error::Parse(format!("{d} is not a fundamental discriminant: {why}")));
    if d == 0 || d == 1 {
        return bad("must differ from 0 and 1");
    }
    if d.unsigned_abs() > super::units::MAX_MODULUS {
        return bad("too large");
    }
    match d.rem_euclid(4) {
        1 => {
            if is_squarefree(d.unsigned_abs()) {
                Ok(())
            } else {
                bad("not squarefree")
            }
        }
        0 => {
            let m = d / 4;
            if !matches!(m.rem_euclid(4), 2 | 3) {
                return bad("d/4 must be 2 or 3 mod 4");
            }
            if is_squarefree(m.unsigned_abs()) {
                Ok(())
            } else {
                bad("d/4 not squarefree")
            }
        }
        _ => bad("must be 0 or 1 mod 4"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        // (5/n) for n = 1..10
        let got: Vec<i32> = (1..=10).map(|n| kronecker(5, n)).collect();
        assert_eq!(got, vec![1, -1, -1, 1, 0, 1, -1, -1, 1, 0]);
        // (-4/n)
        let got: Vec<i32> = (1..=8).map(|n| kronecker(-4, n)).collect();
        assert_eq!(got, vec![1, 0, -1, 0, 1, 0, -1, 0]);
        // (8/n)
        let got: Vec<i32> = (1..=8).map(|n| kronecker(8, n)).collect();
        assert_eq!(got, vec![1, 0, -1, 0, -1, 0, 1, 0]);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-7, 2), 1);
    }

    #[test]
    fn jacobi_matches_euler_criterion() {
        for p in [3u64, 5, 7, 11, 13, 101] {
            for a in 0..p {
                let euler = crate::exact::arith::mod_pow(a, (p - 1) / 2, p);
                let expect = match euler {
                    0 => 0,
                    1 => 1,
                    _ => -1,
                };
                assert_eq!(jacobi(a as i64, p), expect, "({a}/{p})");
            }
        }
    }

    #[test]
    fn discriminants() {
        for d in [5, 8, 12, 13, -3, -4, -7, -8, 24, -20] {
            assert!(validate_fundamental_discriminant(d).is_ok(), "{d}");
        }
        for d in [0, 1, 2, 3, 4, 9, 16, -1, -16, 20, 45] {
            assert!(validate_fundamental_discriminant(d).is_err(), "{d}");
        }
    }
}
