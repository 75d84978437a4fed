//! Exact dense linear algebra on intersection matrices.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exactmath::Rational;

/// Leading principal minors of an integer matrix, in order, computed by
/// Bareiss elimination without pivoting. Stops at the first zero minor.
pub fn leading_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&pivot * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = pivot;
    }
    minors
}

/// Negative definiteness via the signs `(-1)^k det(M_k) > 0`.
pub fn is_negative_definite(m: &[Vec<i64>]) -> bool {
    let minors = leading_minors(m);
    minors.len() == m.len()
        && minors.iter().enumerate().all(|(k, d)| if k % 2 == 0 { d.is_negative() } else { d.is_positive() })
}

/// Solves `m x = rhs` by Gauss–Jordan elimination over the rationals.
/// Returns `None` for a singular matrix.
pub fn solve(m: &[Vec<i64>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            row.iter()
                .map(|&x| Rational::from_integer(BigInt::from(x)))
                .chain(std::iter::once(b.clone()))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..=n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// `m x`, used for residual checks.
pub fn apply(m: &[Vec<i64>], x: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(Rational::zero(), |acc, (&c, v)| acc + v * Rational::from_integer(BigInt::from(c)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    #[test]
    fn minors_of_a2_chain() {
        let m = vec![vec![-2, 1], vec![1, -2]];
        assert_eq!(leading_minors(&m), vec![BigInt::from(-2), BigInt::from(3)]);
        assert!(is_negative_definite(&m));
    }

    #[test]
    fn indefinite_and_semidefinite_rejected() {
        // Affine A1 (two -2 curves meeting twice) is only semidefinite.
        assert!(!is_negative_definite(&[vec![-2, 2], vec![2, -2]]));
        assert!(!is_negative_definite(&[vec![-1, 2], vec![2, -1]]));
        assert!(!is_negative_definite(&[vec![0]]));
    }

    #[test]
    fn solves_exactly() {
        let m = vec![vec![-5, 1], vec![1, -2]];
        let x = solve(&m, &[int(3), int(0)]).unwrap();
        assert_eq!(x, vec![rat(-2, 3), rat(-1, 3)]);
        assert_eq!(apply(&m, &x), vec![int(3), int(0)]);
        assert!(solve(&[vec![1, 1], vec![1, 1]], &[int(0), int(1)]).is_none());
    }
}
