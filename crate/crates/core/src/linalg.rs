//! Elimination-based kernels: rank, reduced row echelon form, inverse,
//! kernel and range bases, full-rank factorization and the Moore–Penrose
//! inverse.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{pivot_tolerance, Rational, Scalar};

pub fn rank<T: Scalar>(m: &Matrix<T>) -> usize {
    T::rank_scaled(m, m.max_abs())
}

/// Exact rank by fraction-free (Bareiss) elimination. Each row is first
/// cleared of denominators, which does not change the rank.
pub fn bareiss_rank(m: &Matrix<Rational>) -> usize {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();
    bareiss_rank_int(&mut rows, m.cols())
}

fn bareiss_rank_int(rows: &mut [Vec<BigInt>], cols: usize) -> usize {
    let n = rows.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[col];
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..cols {
                // Exact: every intermediate entry is a minor of the input.
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot.clone();
        r += 1;
    }
    r
}

/// Rank by complete-pivoting elimination; pivots at or below
/// [`pivot_tolerance`]`(scale)` are treated as zero.
pub fn float_rank(m: &Matrix<f64>, scale: f64) -> usize {
    let (rows, cols) = m.shape();
    let mut a: Vec<f64> = m.entries().to_vec();
    let tol = pivot_tolerance(scale);
    let mut rank = 0;
    let mut col_order: Vec<usize> = (0..cols).collect();
    for step in 0..rows.min(cols) {
        let mut best = (step, step, 0.0f64);
        for i in step..rows {
            for (jj, &j) in col_order.iter().enumerate().skip(step) {
                let v = a[i * cols + j].abs();
                if v > best.2 {
                    best = (i, jj, v);
                }
            }
        }
        if best.2 <= tol {
            break;
        }
        let (pi, pj, _) = best;
        if pi != step {
            for j in 0..cols {
                a.swap(pi * cols + j, step * cols + j);
            }
        }
        col_order.swap(step, pj);
        let pc = col_order[step];
        let pivot = a[step * cols + pc];
        for i in step + 1..rows {
            let f = a[i * cols + pc] / pivot;
            if f == 0.0 {
                continue;
            }
            for &j in &col_order[step..] {
                a[i * cols + j] -= f * a[step * cols + j];
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced row echelon form with the pivot column of each nonzero row.
pub fn rref<T: Scalar>(m: &Matrix<T>) -> (Matrix<T>, Vec<usize>) {
    let (rows, cols) = m.shape();
    let scale = m.max_abs();
    let mut a = m.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&i| !a[i][col].is_negligible(scale))
            .max_by(|&x, &y| {
                a[x][col]
                    .magnitude()
                    .partial_cmp(&a[y][col].magnitude())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
        let Some(p) = best else {
            for row in a.iter_mut().skip(r) {
                row[col] = T::zero();
            }
            continue;
        };
        a.swap(r, p);
        let inv = T::one() / a[r][col].clone();
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..cols {
                if a[r][j].is_zero() {
                    continue;
                }
                let delta = f.clone() * a[r][j].clone();
                a[i][j] -= delta;
            }
            a[i][col] = T::zero();
        }
        pivots.push(col);
        r += 1;
    }
    let reduced = Matrix::from_rows(a).expect("rref preserves shape");
    (reduced, pivots)
}

pub fn inverse<T: Scalar>(m: &Matrix<T>) -> Result<Matrix<T>> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    let aug = m.hstack(&Matrix::identity(n))?;
    let (reduced, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Singular);
    }
    Ok(reduced.submatrix(0, n, n, n))
}

/// Columns form a basis of the null space `{x : m x = 0}`.
pub fn kernel_basis<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let cols = m.cols();
    let (reduced, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|j| !pivots.contains(j)).collect();
    Matrix::from_fn(cols, free.len(), |i, k| {
        let f = free[k];
        if i == f {
            T::one()
        } else if let Some(r) = pivots.iter().position(|&p| p == i) {
            -reduced[(r, f)].clone()
        } else {
            T::zero()
        }
    })
}

/// Columns form a basis of the column space (the pivot columns of `m`).
pub fn range_basis<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let (_, pivots) = rref(m);
    m.select_columns(&pivots)
}

/// `m = F G` with `F` of size `rows x r` and `G` of size `r x cols`, where
/// `r = rank(m)`. `F` holds the pivot columns of `m` and `G` the nonzero rows
/// of its reduced echelon form.
pub fn full_rank_factorization<T: Scalar>(m: &Matrix<T>) -> (Matrix<T>, Matrix<T>) {
    let (reduced, pivots) = rref(m);
    let r = pivots.len();
    let f = m.select_columns(&pivots);
    let g = reduced.submatrix(0, r, 0, m.cols());
    (f, g)
}

/// Moore–Penrose inverse `Gᵀ (Fᵀ M Gᵀ)⁻¹ Fᵀ` from a full-rank factorization.
/// Scalars are real, so the transpose stands in for the adjoint.
///
/// Fails only in float mode, when the numerical rank is ambiguous enough that
/// the `r x r` core comes out singular.
pub fn moore_penrose<T: Scalar>(m: &Matrix<T>) -> Result<Matrix<T>> {
    let (f, g) = full_rank_factorization(m);
    if f.cols() == 0 {
        return Ok(Matrix::zeros(m.cols(), m.rows()));
    }
    let ft = f.transpose();
    let gt = g.transpose();
    let core = &(&ft * m) * &gt;
    let core_inv = inverse(&core)?;
    Ok(&(&gt * &core_inv) * &ft)
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Matrix<Rational>;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&M::identity(3)), 3);
        assert_eq!(rank(&M::from_i64_rows(&[&[0, 1], &[0, 0]])), 1);
        assert_eq!(
            rank(&M::from_i64_rows(&[&[1, 1, 0], &[0, 0, 0], &[0, 0, 0]])),
            1
        );
        assert_eq!(rank(&M::zeros(2, 3)), 0);
        assert_eq!(rank(&M::zeros(0, 3)), 0);
    }

    #[test]
    fn bareiss_handles_fractions_and_skipped_columns() {
        let m = Matrix::from_rows(vec![
            vec![q(1, 2), q(1, 3), q(1, 6), q(0, 1)],
            vec![q(1, 1), q(2, 3), q(1, 3), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(0, 1), q(5, 7)],
        ])
        .unwrap();
        assert_eq!(bareiss_rank(&m), 2);
        assert_eq!(bareiss_rank(&m.transpose()), 2);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse(&M::identity(2)).unwrap(), M::identity(2));
        let d = M::diagonal(&[q(2, 1), q(4, 1)]);
        assert_eq!(inverse(&d).unwrap(), M::diagonal(&[q(1, 2), q(1, 4)]));
        assert_eq!(
            inverse(&M::from_i64_rows(&[&[0, 1], &[0, 0]])),
            Err(Error::Singular)
        );
        assert!(matches!(inverse(&M::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn full_rank_factorization_examples() {
        let (f, g) = full_rank_factorization(&M::zeros(2, 2));
        assert_eq!((f.shape(), g.shape()), ((2, 0), (0, 2)));
        assert_eq!(&f * &g, M::zeros(2, 2));

        let ones = M::from_i64_rows(&[&[1, 1], &[1, 1]]);
        let (f, g) = full_rank_factorization(&ones);
        assert_eq!(&f * &g, ones);
        assert_eq!((f.cols(), rank(&f), rank(&g)), (1, 1, 1));

        let (f, g) = full_rank_factorization(&M::identity(2));
        assert_eq!(&f * &g, M::identity(2));
        assert_eq!(f.cols(), 2);
    }

    #[test]
    fn moore_penrose_examples() {
        assert_eq!(moore_penrose(&M::identity(3)).unwrap(), M::identity(3));
        assert_eq!(moore_penrose(&M::zeros(2, 3)).unwrap(), M::zeros(3, 2));
        let m = M::from_i64_rows(&[&[2, 0], &[0, 0]]);
        assert_eq!(
            moore_penrose(&m).unwrap(),
            M::diagonal(&[q(1, 2), q(0, 1)])
        );
    }

    #[test]
    fn kernel_and_range() {
        let m = M::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel_basis(&m);
        assert_eq!(k.shape(), (3, 2));
        assert!((&m * &k).is_zero());
        assert_eq!(rank(&k), 2);
        let r = range_basis(&m);
        assert_eq!(r.shape(), (2, 1));
    }

    #[test]
    fn float_rank_ignores_rounding_noise() {
        let mut m = Matrix::<f64>::from_i64_rows(&[&[1, 2], &[2, 4]]);
        m[(1, 1)] += 1e-14;
        assert_eq!(rank(&m), 1);
        m[(1, 1)] += 1e-3;
        assert_eq!(rank(&m), 2);
    }
}
