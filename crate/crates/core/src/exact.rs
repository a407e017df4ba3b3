//! Small exact helpers: rational linear solves and integer polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Solve `m x = b` over the rationals; `None` when `m` is singular.
pub fn solve(mut m: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = m.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        b.swap(col, p);
        let inv = BigRational::one() / &m[col][col];
        for c in col..n {
            m[col][c] = &m[col][c] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..n {
                    let t = &f * &m[col][c];
                    m[r][c] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some(b)
}

/// Dense integer polynomial in one variable, truncated at `len` terms.
pub fn poly_mul(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            out[i + j] += x * y;
        }
    }
    out
}

pub fn poly_pow(base: &[BigInt], e: usize, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    if len > 0 {
        out[0] = BigInt::one();
    }
    for _ in 0..e {
        out = poly_mul(&out, base, len);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }

    #[test]
    fn solves_small_system() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve(m, vec![q(3), q(5)]).unwrap();
        assert_eq!(x, vec![BigRational::new(4.into(), 5.into()), BigRational::new(7.into(), 5.into())]);
        assert!(solve(vec![vec![q(1), q(2)], vec![q(2), q(4)]], vec![q(0), q(0)]).is_none());
    }

    #[test]
    fn binomial_powers() {
        let p = poly_pow(&[BigInt::one(), BigInt::one()], 4, 10);
        let expect: Vec<BigInt> = [1, 4, 6, 4, 1, 0, 0, 0, 0, 0].iter().map(|&x| x.into()).collect();
        assert_eq!(p, expect);
    }
}
