//! Exact dense Gaussian elimination over the rationals.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Mat = Vec<Vec<Scalar>>;

/// Solves `a x = b` by exact elimination with partial (first-nonzero)
/// pivoting.  Errors with `DegenerateParameters` if `a` is singular.
pub fn solve(mut a: Mat, mut b: Vec<Scalar>) -> Result<Vec<Scalar>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::DegenerateParameters("singular linear system".into()))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].inv()?;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= &sub;
            }
            let sub = &factor * &b[col];
            b[r] -= &sub;
        }
    }
    (0..n).map(|i| b[i].checked_div(&a[i][i])).collect()
}

/// Inverts a square matrix; `DegenerateParameters` if singular.
pub fn invert(a: &Mat) -> Result<Mat> {
    let n = a.len();
    let mut aug: Mat = a.clone();
    for (i, row) in aug.iter_mut().enumerate() {
        assert_eq!(row.len(), n);
        for j in 0..n {
            row.push(if i == j { Scalar::one() } else { Scalar::zero() });
        }
    }
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .ok_or_else(|| Error::DegenerateParameters("singular matrix".into()))?;
        aug.swap(col, pivot);
        let inv = aug[col][col].inv()?;
        for c in col..2 * n {
            aug[col][c] *= &inv;
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for c in col..2 * n {
                let sub = &factor * &aug[col][c];
                aug[r][c] -= &sub;
            }
        }
    }
    Ok(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn solve_2x2() {
        let a = vec![vec![sc(2, 1), sc(1, 1)], vec![sc(1, 1), sc(3, 1)]];
        let b = vec![sc(5, 1), sc(10, 1)];
        let x = solve(a, b).unwrap();
        assert_eq!(x, vec![sc(1, 1), sc(3, 1)]);
    }

    #[test]
    fn invert_round_trip() {
        let a = vec![
            vec![sc(1, 2), sc(3, 1), sc(0, 1)],
            vec![sc(0, 1), sc(1, 1), sc(4, 1)],
            vec![sc(5, 1), sc(6, 1), sc(1, 3)],
        ];
        let inv = invert(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Scalar::zero();
                for k in 0..3 {
                    acc += &(&a[i][k] * &inv[k][j]);
                }
                assert_eq!(acc, if i == j { Scalar::one() } else { Scalar::zero() });
            }
        }
    }

    #[test]
    fn singular_detected() {
        let a = vec![vec![sc(1, 1), sc(2, 1)], vec![sc(2, 1), sc(4, 1)]];
        assert!(solve(a, vec![sc(1, 1), sc(1, 1)]).is_err());
    }
}
