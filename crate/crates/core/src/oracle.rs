//! Reference Drazin inverse by core–nilpotent decomposition.
//!
//! Nothing here goes through [`crate::geninv::drazin`] or the Moore–Penrose
//! route; the only shared code is row reduction and the plain inverse.

use crate::error::{Error, Result};
use crate::geninv;
use crate::linalg::{inverse, kernel_basis, range_basis, rref};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};

type Q = Matrix<Rational>;

fn rank_by_pivots(m: &Q) -> usize {
    rref(m).1.len()
}

fn oracle_index(a: &Q) -> usize {
    let n = a.rows();
    let mut prev = n;
    let mut power = Q::identity(n);
    for k in 0..n {
        power = &power * a;
        let r = rank_by_pivots(&power);
        if r == prev {
            return k;
        }
        prev = r;
    }
    n
}

/// With `k = ind(A)` and `V = [basis of R(A^k) | basis of N(A^k)]`,
/// `V⁻¹ A V = diag(C, N)` with `C` invertible and `N` nilpotent, and
/// `A^d = V diag(C⁻¹, 0) V⁻¹`.
pub fn drazin_oracle(a: &Q) -> Result<Q> {
    let n = a.require_square()?;
    let k = oracle_index(a);
    let ak = a.pow(k);
    let range = range_basis(&ak);
    let null = kernel_basis(&ak);
    let r = range.cols();
    if r + null.cols() != n {
        return Err(Error::Defect(format!(
            "range ({r}) and null space ({}) of A^{k} do not span {n} dimensions",
            null.cols()
        )));
    }
    if r == 0 {
        return Ok(Q::zeros(n, n));
    }
    let v = range.hstack(&null)?;
    let v_inv = inverse(&v)
        .map_err(|_| Error::Defect("core-nilpotent basis is singular".into()))?;
    let similar = &(&v_inv * a) * &v;
    let core = similar.submatrix(0, r, 0, r);
    let off_diagonal_clear = similar.submatrix(0, r, r, n - r).is_zero()
        && similar.submatrix(r, n - r, 0, r).is_zero();
    if !off_diagonal_clear {
        return Err(Error::Defect("A does not split over R(A^k) + N(A^k)".into()));
    }
    let core_inv =
        inverse(&core).map_err(|_| Error::Defect("core block is singular".into()))?;
    let padded = Q::block_diag(&core_inv, &Q::zeros(n - r, n - r));
    Ok(&(&v * &padded) * &v_inv)
}

/// Oracle group inverse: `Some` exactly when `ind(A) ≤ 1`.
pub fn group_oracle(a: &Q) -> Result<Option<Q>> {
    a.require_square()?;
    if oracle_index(a) > 1 {
        return Ok(None);
    }
    drazin_oracle(a).map(Some)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomCheck {
    pub holds: bool,
    /// Frobenius norms of `AX − XA`, `XAX − X`, `A^{k+1}X − A^k`.
    pub residuals: [f64; 3],
    /// `AXA = A`, evaluated when `ind(A) ≤ 1`.
    pub group_identity: Option<bool>,
}

/// Checks the three Drazin equations for `X` against `A` (and the group
/// identity `AXA = A` when `ind(A) ≤ 1`).
pub fn verify_drazin_axioms<T: Scalar>(a: &Matrix<T>, x: &Matrix<T>) -> Result<AxiomCheck> {
    let n = a.require_square()?;
    if x.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!(
            "A is {n}x{n} but X is {}x{}",
            x.rows(),
            x.cols()
        )));
    }
    let k = geninv::index(a)?;
    let ak = a.pow(k);
    let residuals = [
        (&(a * x) - &(x * a)).frobenius_norm(),
        (&(&(x * a) * x) - x).frobenius_norm(),
        (&(&(&ak * a) * x) - &ak).frobenius_norm(),
    ];
    let holds = geninv::check_drazin_equations(a, x, k).is_ok();
    let group_identity = (k <= 1).then(|| (&(a * x) * a).approx_eq(a));
    Ok(AxiomCheck {
        holds: holds && group_identity.unwrap_or(true),
        residuals,
        group_identity,
    })
}
