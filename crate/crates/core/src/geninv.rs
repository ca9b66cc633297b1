//! Index, Drazin and group inverses, eigenprojections, and the structural
//! Drazin identities the block formulas are assembled from.

use crate::error::{Error, Result};
use crate::linalg::{self, inverse};
use crate::matrix::{sum, Matrix};
use crate::scalar::{Scalar, ScalarMode};

#[derive(Debug, Clone, PartialEq)]
pub struct DrazinResult<T> {
    /// `A^d`
    pub inverse: Matrix<T>,
    /// `ind(A)`
    pub index: usize,
    /// `A^e = A A^d`
    pub eigenprojection: Matrix<T>,
    /// `A^π = I − A^e`
    pub complement_projection: Matrix<T>,
}

/// Smallest `k ≥ 0` with `rank(A^k) = rank(A^{k+1})`.
///
/// In float mode the rank of `A^j` is thresholded against the entries of
/// `|A|^j`, which bound the rounding noise accumulated in forming the power.
pub fn index<T: Scalar>(a: &Matrix<T>) -> Result<usize> {
    let n = a.require_square()?;
    let abs = a.abs();
    let mut power = Matrix::<T>::identity(n);
    let mut abs_power = Matrix::<f64>::identity(n);
    let mut prev_rank = n;
    for k in 0..n {
        power = &power * a;
        abs_power = &abs_power * &abs;
        let r = T::rank_scaled(&power, abs_power.max_abs());
        if r == prev_rank {
            return Ok(k);
        }
        prev_rank = r;
    }
    Ok(n)
}

/// Drazin inverse, `k = ind(A)`.
///
/// Exact scalars use `A^d = A^k (A^{2k+1})^+ A^k`. Floats use the
/// factorization `A^k = F G`, `A^d = F (G A F)^{-1} G`, which inverts an
/// `r x r` matrix instead of pseudo-inverting `A^{2k+1}`, whose condition
/// number grows like `cond(A)^{2k+1}`.
///
/// The three defining equations are re-checked before returning; a float
/// result that fails them yields [`Error::VerificationFailure`].
pub fn drazin<T: Scalar>(a: &Matrix<T>) -> Result<DrazinResult<T>> {
    let n = a.require_square()?;
    let k = index(a)?;
    let ak = a.pow(k);
    let ad = match T::MODE {
        ScalarMode::Rational => {
            let pinv = linalg::moore_penrose(&a.pow(2 * k + 1))
                .map_err(|_| Error::VerificationFailure("pseudoinverse core is singular".into()))?;
            &(&ak * &pinv) * &ak
        }
        ScalarMode::Float => {
            let (f, g) = linalg::full_rank_factorization(&ak);
            let core = &(&g * a) * &f;
            let core_inv = inverse(&core)
                .map_err(|_| Error::VerificationFailure("G A F is singular for A^k = F G".into()))?;
            &(&f * &core_inv) * &g
        }
    };
    check_drazin_equations(a, &ad, k).map_err(Error::VerificationFailure)?;
    let eigenprojection = a * &ad;
    let complement_projection = &Matrix::identity(n) - &eigenprojection;
    Ok(DrazinResult {
        inverse: ad,
        index: k,
        eigenprojection,
        complement_projection,
    })
}

/// `A X = X A`, `X A X = X`, `A^k = A^{k+1} X`; `Err` names the first failure.
pub(crate) fn check_drazin_equations<T: Scalar>(
    a: &Matrix<T>,
    x: &Matrix<T>,
    k: usize,
) -> std::result::Result<(), String> {
    let na = a.inf_norm().max(1.0);
    let nx = x.inf_norm().max(1.0);
    let ax = a * x;
    if !ax.near(&(x * a), na * nx) {
        return Err("A X != X A".into());
    }
    if !(&(x * a) * x).near(x, na * nx * nx) {
        return Err("X A X != X".into());
    }
    let ak = a.pow(k);
    if !(&(&ak * a) * x).near(&ak, na.powi(k as i32 + 1) * nx) {
        return Err(format!("A^{k} != A^{} X", k + 1));
    }
    Ok(())
}

/// Group inverse `A^#`, defined exactly when `rank(A) = rank(A²)`.
pub fn group_inverse<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    a.require_square()?;
    if index(a)? > 1 {
        return Err(Error::GroupInverseDoesNotExist);
    }
    Ok(drazin(a)?.inverse)
}

pub fn is_invertible<T: Scalar>(m: &Matrix<T>) -> bool {
    m.is_square() && linalg::rank(m) == m.rows()
}

/// `X^n = 0` for `n x n` `X` (thresholded against `‖X‖^n` in float mode).
pub fn is_nilpotent<T: Scalar>(x: &Matrix<T>) -> bool {
    let n = x.rows();
    x.is_square() && x.pow(n).near_zero(x.inf_norm().powi(n as i32))
}

/// `(I − ba)⁻¹ = I + b (I − ab)⁻¹ a` for `a: n x m`, `b: m x n`.
pub fn jacobson<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    if a.cols() != b.rows() || a.rows() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "jacobson needs a: n x m and b: m x n, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let n = a.rows();
    let m = a.cols();
    let inner = inverse(&(&Matrix::identity(n) - &(a * b)))?;
    Ok(&Matrix::identity(m) + &(&(b * &inner) * a))
}

/// The five conditions characterising `A^π = B^π`, each evaluated on its own.
#[derive(Debug, Clone)]
pub struct EigenprojectionConditions<T> {
    /// In order: `A^π = B^π`; commuting/nilpotent/`B + A^π` nonsingular;
    /// `I + A^d(B − A)` nonsingular with commuting/nilpotent;
    /// `B^d = (I + A^d(B − A))⁻¹ A^d`; `B^d − A^d = A^d (A − B) B^d`.
    pub conditions: [bool; 5],
    pub a_complement: Matrix<T>,
    pub b_complement: Matrix<T>,
    /// `(I + A^d(B − A))⁻¹` when it exists.
    pub update_inverse: Option<Matrix<T>>,
}

impl<T> EigenprojectionConditions<T> {
    pub fn all_agree(&self) -> bool {
        self.conditions.iter().all(|&c| c == self.conditions[0])
    }
}

pub fn same_eigenprojection_conditions<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
) -> Result<EigenprojectionConditions<T>> {
    let n = a.require_square()?;
    if b.shape() != a.shape() {
        return Err(Error::DimensionMismatch(format!(
            "A is {n}x{n} but B is {}x{}",
            b.rows(),
            b.cols()
        )));
    }
    let ad = drazin(a)?;
    let bd = drazin(b)?;
    let a_pi = &ad.complement_projection;
    let id = Matrix::identity(n);

    let c1 = a_pi.approx_eq(&bd.complement_projection);
    let commutes = (a_pi * b).approx_eq(&(b * a_pi));
    let nilpotent = is_nilpotent(&(b * a_pi));
    let c2 = commutes && nilpotent && is_invertible(&(b + a_pi));

    let update = &id + &(&ad.inverse * &(b - a));
    let update_inverse = if is_invertible(&update) {
        inverse(&update).ok()
    } else {
        None
    };
    let c3 = update_inverse.is_some() && commutes && nilpotent;
    let c4 = update_inverse
        .as_ref()
        .is_some_and(|inv| bd.inverse.approx_eq(&(inv * &ad.inverse)));
    let lhs = &bd.inverse - &ad.inverse;
    let rhs = &(&ad.inverse * &(a - b)) * &bd.inverse;
    let c5 = lhs.approx_eq(&rhs);

    Ok(EigenprojectionConditions {
        conditions: [c1, c2, c3, c4, c5],
        a_complement: ad.complement_projection.clone(),
        b_complement: bd.complement_projection,
        update_inverse,
    })
}

/// `(P + Q)^d` for `PQ = 0`:
/// `Q^π Σ_{i<t} Q^i (P^d)^{i+1} + Σ_{i<s} (Q^d)^{i+1} P^i P^π`
/// with `s = ind(P)`, `t = ind(Q)`.
pub fn additive_drazin_pq0<T: Scalar>(p: &Matrix<T>, q: &Matrix<T>) -> Result<Matrix<T>> {
    let n = p.require_square()?;
    if q.shape() != p.shape() {
        return Err(Error::DimensionMismatch(format!(
            "P is {n}x{n} but Q is {}x{}",
            q.rows(),
            q.cols()
        )));
    }
    if !(p * q).near_zero(p.inf_norm() * q.inf_norm()) {
        return Err(Error::HypothesisViolated {
            theorem: "lem-4-1".into(),
            hypothesis: "PQ = 0".into(),
        });
    }
    let pd = drazin(p)?;
    let qd = drazin(q)?;
    let first = sum(
        n,
        n,
        (0..qd.index).map(|i| &q.pow(i) * &pd.inverse.pow(i + 1)),
    );
    let second = sum(
        n,
        n,
        (0..pd.index).map(|i| &(&qd.inverse.pow(i + 1) * &p.pow(i)) * &pd.complement_projection),
    );
    Ok(&(&qd.complement_projection * &first) + &second)
}

/// Drazin inverse of the anti-diagonal matrix `[[0, C·R], [B·L, 0]]`
/// (`B: m x n`, `C: n x m`, `L: n x n`, `R: m x m`):
/// `[[0, (C R B L)^d C R], [B L (C R B L)^d, 0]]`.
pub fn antidiag_drazin<T: Scalar>(
    b: &Matrix<T>,
    c: &Matrix<T>,
    left_proj: &Matrix<T>,
    right_proj: &Matrix<T>,
) -> Result<Matrix<T>> {
    let (m, n) = b.shape();
    if c.shape() != (n, m) || left_proj.shape() != (n, n) || right_proj.shape() != (m, m) {
        return Err(Error::DimensionMismatch(format!(
            "antidiag_drazin: B {m}x{n} needs C {n}x{m}, L {n}x{n}, R {m}x{m}; got C {}x{}, L {}x{}, R {}x{}",
            c.rows(),
            c.cols(),
            left_proj.rows(),
            left_proj.cols(),
            right_proj.rows(),
            right_proj.cols()
        )));
    }
    let x = c * right_proj;
    let y = b * left_proj;
    let wd = drazin(&(&x * &y))?.inverse;
    Ok(Matrix::anti_diag(&(&wd * &x), &(&y * &wd)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type M = Matrix<Rational>;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    fn nil2() -> M {
        M::from_i64_rows(&[&[0, 1], &[0, 0]])
    }

    fn example_a() -> M {
        M::from_i64_rows(&[&[1, 1, 0], &[0, 0, 0], &[0, 0, 0]])
    }

    #[test]
    fn index_examples() {
        assert_eq!(index(&M::identity(2)).unwrap(), 0);
        assert_eq!(index(&nil2()).unwrap(), 2);
        assert_eq!(index(&example_a()).unwrap(), 1);
        assert_eq!(index(&M::zeros(3, 3)).unwrap(), 1);
        assert_eq!(index(&M::zeros(0, 0)).unwrap(), 0);
        assert!(matches!(index(&M::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn drazin_examples() {
        let r = drazin(&nil2()).unwrap();
        assert!(r.inverse.is_zero());
        assert_eq!(r.index, 2);
        assert_eq!(r.complement_projection, M::identity(2));
        assert_eq!(drazin(&example_a()).unwrap().inverse, example_a());
        let d = M::diagonal(&[q(3, 1), q(0, 1)]);
        assert_eq!(drazin(&d).unwrap().inverse, M::diagonal(&[q(1, 3), q(0, 1)]));
    }

    #[test]
    fn invertible_drazin_is_inverse() {
        let a = M::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let r = drazin(&a).unwrap();
        assert_eq!(r.index, 0);
        assert_eq!(r.inverse, inverse(&a).unwrap());
        assert_eq!(r.eigenprojection, M::identity(2));
        assert!(r.complement_projection.is_zero());
    }

    #[test]
    fn group_inverse_examples() {
        assert_eq!(group_inverse(&example_a()).unwrap(), example_a());
        assert_eq!(group_inverse(&nil2()), Err(Error::GroupInverseDoesNotExist));
        assert_eq!(group_inverse(&M::identity(3)).unwrap(), M::identity(3));
    }

    #[test]
    fn jacobson_examples() {
        assert_eq!(jacobson(&M::zeros(2, 3), &M::zeros(3, 2)).unwrap(), M::identity(3));
        let half = M::identity(2).scale(&q(1, 2));
        assert_eq!(
            jacobson(&half, &half).unwrap(),
            M::identity(2).scale(&q(4, 3))
        );
        assert_eq!(jacobson(&M::identity(2), &M::identity(2)), Err(Error::Singular));
        assert!(jacobson(&M::zeros(2, 3), &M::zeros(2, 3)).is_err());
    }

    #[test]
    fn eigenprojection_condition_examples() {
        let all = same_eigenprojection_conditions(&M::identity(2), &M::identity(2)).unwrap();
        assert_eq!(all.conditions, [true; 5]);
        let none = same_eigenprojection_conditions(&M::identity(2), &nil2()).unwrap();
        assert!(!none.conditions[0]);
        assert!(none.all_agree());
        assert!(same_eigenprojection_conditions(&M::identity(2), &M::identity(3)).is_err());
    }

    #[test]
    fn additive_examples() {
        assert!(additive_drazin_pq0(&nil2(), &M::zeros(2, 2)).unwrap().is_zero());
        let idem = M::from_i64_rows(&[&[1, 0], &[0, 0]]);
        assert_eq!(
            additive_drazin_pq0(&nil2(), &idem).unwrap(),
            M::from_i64_rows(&[&[1, 1], &[0, 0]])
        );
        let qm = M::from_i64_rows(&[&[2, 1], &[0, 0]]);
        assert_eq!(
            additive_drazin_pq0(&M::zeros(2, 2), &qm).unwrap(),
            drazin(&qm).unwrap().inverse
        );
        assert!(matches!(
            additive_drazin_pq0(&idem, &nil2()),
            Err(Error::HypothesisViolated { .. })
        ));
    }

    #[test]
    fn antidiag_examples() {
        let i2 = M::identity(2);
        let swap = antidiag_drazin(&i2, &i2, &i2, &i2).unwrap();
        assert_eq!(swap, M::anti_diag(&i2, &i2));
        assert!(antidiag_drazin(&M::zeros(2, 3), &M::zeros(3, 2), &M::identity(3), &i2)
            .unwrap()
            .is_zero());
    }
}
