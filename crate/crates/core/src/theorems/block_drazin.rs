//! Closed forms for `M^d`.
//!
//! Each `*_formula` follows its displayed expression term by term. Series
//! bounds use `t = max(ind A, ind D)` and the index of the displayed
//! nilpotent-part matrix, never the index of `M`.

use crate::block::BlockContext;
use crate::error::Result;
use crate::geninv::{additive_drazin_pq0, antidiag_drazin, drazin, index};
use crate::matrix::{sum, Matrix};
use crate::scalar::Scalar;

use super::{corner_group_inverse, product, view, View};

fn t_bound<T>(v: &View<'_, T>) -> usize {
    v.ka.max(v.kd)
}

/// `diag(A^k A^π, D^k D^π)`
fn lt<T: Scalar>(v: &View<'_, T>, k: usize) -> Matrix<T> {
    Matrix::block_diag(&(&v.a.pow(k) * v.ap), &(&v.d.pow(k) * v.dp))
}

/// `diag(A A^π, D D^π)`
fn nilpotent_diag<T: Scalar>(v: &View<'_, T>) -> Matrix<T> {
    lt(v, 1)
}

/// `diag(A^π, D^π)`
fn complement_diag<T: Scalar>(v: &View<'_, T>) -> Matrix<T> {
    Matrix::block_diag(v.ap, v.dp)
}

/// `X^π = I − X X^d`
fn complement_of<T: Scalar>(x: &Matrix<T>) -> Result<Matrix<T>> {
    Ok(drazin(x)?.complement_projection)
}

/// Upper bound of the one-sided series in the `CD^π = 0` / `A^πC = 0`
/// corollaries. They come from the additive formula with
/// `Q = diag(AA^π, DD^π)`, whose series runs to `ind(Q) − 1`; when both
/// blocks are invertible `Q = 0` has index 1 while `max(ind A, ind D) = 0`,
/// so the bound is kept at least 1.
fn one_sided_bound<T>(v: &View<'_, T>) -> usize {
    t_bound(v).max(1)
}

fn size<T>(v: &View<'_, T>) -> usize {
    v.n + v.m
}

/// The splitting `M = P + Q` with `P = [[AA^e, CD^e], [BA^e, DD^e]]` and
/// `Q = [[AA^π, CD^π], [BA^π, DD^π]]`.
pub fn pq_split<T: Scalar>(ctx: &BlockContext<T>) -> (Matrix<T>, Matrix<T>) {
    let v = view(ctx);
    let p = Matrix::blocks(&(v.a * v.ae), &(v.c * v.de), &(v.b * v.ae), &(v.d * v.de));
    let q = Matrix::blocks(&(v.a * v.ap), &(v.c * v.dp), &(v.b * v.ap), &(v.d * v.dp));
    (p, q)
}

/// `M^d = (P + Q)^d` by the additive formula for `PQ = 0`.
pub fn lem_41_formula<T: Scalar>(ctx: &BlockContext<T>) -> Result<Matrix<T>> {
    let (p, q) = pq_split(ctx);
    additive_drazin_pq0(&p, &q)
}

pub fn md_theorem_42_formula<T: Scalar>(ctx: &BlockContext<T>) -> Result<Matrix<T>> {
    let v = view(ctx);
    let (t, s) = (t_bound(&v), size(&v));
    let id = Matrix::<T>::identity(s);
    let k = antidiag_drazin(v.b, v.c, v.ap, v.dp)?;
    let cbap = complement_of(&product(&[v.c, v.b, v.ap]))?;
    let bcdp = complement_of(&product(&[v.b, v.c, v.dp]))?;
    let qmat = Matrix::blocks(&(v.a * v.ap), &(v.c * v.dp), &(v.b * v.ap), &(v.d * v.dp));
    let r = index(&qmat)?;
    let p1 = corner_group_inverse(ctx)?;
    let p2 = Matrix::anti_diag(&product(&[v.ap, v.c, v.de]), &product(&[v.dp, v.b, v.ae]));
    let p2p1 = &p2 * &p1;

    let t1 = &Matrix::block_diag(&cbap, &bcdp) - &sum(s, s, (1..t).map(|j| &k.pow(j) * &lt(&v, j)));
    let t2 = sum(
        s,
        s,
        (0..r).map(|i| product(&[&qmat.pow(i), &(&id + &p2p1), &p1.pow(i + 1)])),
    );
    let t3 = &k + &sum(s, s, (1..t).map(|j| &k.pow(j + 1) * &lt(&v, j)));
    let t4 = &complement_diag(&v) - &p2p1;
    Ok(&(&t1 * &t2) + &(&t3 * &t4))
}

pub fn md_cor_43a_formula<T: Scalar>(ctx: &BlockContext<T>) -> Result<Matrix<T>> {
    let v = view(ctx);
    let (t, s) = (t_bound(&v), size(&v));
    let w = product(&[v.c, v.b, v.ap]);
    let wd = drazin(&w)?;
    let bcdp = complement_of(&product(&[v.b, v.c, v.dp]))?;
    let wd_cdp = product(&[&wd.inverse, v.c, v.dp]);
    let b_wd = v.b * &wd.inverse;
    let k = Matrix::anti_diag(&wd_cdp, &b_wd);
    let qmat = Matrix::blocks(&(v.a * v.ap), &(v.c * v.dp), &(v.b * v.ap), &(v.d * v.dp));
    let r = index(&qmat)?;

    let t1 = &Matrix::block_diag(&wd.complement_projection, &bcdp)
        - &sum(s, s, (1..t).map(|j| &k.pow(j) * &lt(&v, j)));
    let t2 = sum(
        s,
        s,
        (0..r).map(|i| {
            let inner = Matrix::blocks(
                &v.ad.pow(i + 1),
                &(v.c * &v.dd.pow(i + 2)),
                &(v.b * &v.ad.pow(i + 2)),
                &v.dd.pow(i + 1),
            );
            &qmat.pow(i) * &inner
        }),
    );
    let t3 = Matrix::blocks(
        &-&product(&[&wd.inverse, v.c, v.b, v.ad]),
        &wd_cdp,
        &b_wd,
        &-&product(&[v.b, &wd.inverse, v.c, v.dd]),
    );
    let t4 = sum(s, s, (1..t).map(|j| &k.pow(j + 1) * &lt(&v, j)));
    Ok(&(&(&t1 * &t2) + &t3) + &t4)
}

pub fn md_cor_43b_formula<T: Scalar>(ctx: &BlockContext<T>) -> Result<Matrix<T>> {
    let v = view(ctx);
    let (t, s) = (one_sided_bound(&v), size(&v));
    let id = Matrix::<T>::identity(s);
    let p1 = corner_group_inverse(ctx)?;
    let coupling = Matrix::anti_diag(&(v.ap * v.c), &(v.dp * v.b));
    let lead = &id + &(&coupling * &p1);
    let nd = nilpotent_diag(&v);
    Ok(sum(
        s,
        s,
        (0..t).map(|i| product(&[&nd.pow(i), &lead, &p1.pow(i + 1)])),
    ))
}

/// `[[0, (A^πCB)^d A^πC], [D^πB (A^πCB)^d, 0]]` through the anti-diagonal
/// Drazin formula.
fn left_projected_antidiag<T: Scalar>(v: &View<'_, T>) -> Result<Matrix<T>> {
    antidiag_drazin(
        &(v.dp * v.b),
        &(v.ap * v.c),
        &Matrix::identity(v.n),
        &Matrix::identity(v.m),
    )
}

pub fn md_theorem_44_formula<T: Scalar>(ctx: &BlockContext<T>) -> Result<Matrix<T>> {
    let v = view(ctx);
    let (t, s) = (t_bound(&v), size(&v));
    let id = Matrix::<T>::identity(s);
    let k = left_projected_antidiag(&v)?;
    let apcb = complement_of(&product(&[v.ap, v.c, v.b]))?;
    let dpbc = complement_of(&product(&[v.dp, v.b, v.c]))?;
    let qmat = Matrix::blocks(&(v.a * v.ap), &(v.ap * v.c), &(v.dp * v.b), &(v.d * v.dp));
    let q = index(&qmat)?;
    let p1 = corner_group_inverse(ctx)?;
    let p2 = Matrix::anti_diag(&product(&[v.ae, v.c, v.dp]), &product(&[v.de, v.b, v.ap]));
    let p1p2 = &p1 * &p2;

    let head = &complement_diag(&v) - &p1p2;
    let k_series = &k + &sum(s, s, (1..t).map(|j| &lt(&v, j) * &k.pow(j + 1)));
    let tail = &Matrix::block_diag(&apcb, &dpbc) - &sum(s, s, (1..t).map(|j| &lt(&v, j) * &k.pow(j)));
    let middle = sum(
        s,
        s,
        (0..q).map(|i| product(&[&p1.pow(i + 1), &(&id + &p1p2), &qmat.pow(i)])),
    );
    Ok(&(&head * &k_series) + &(&middle * &tail))
}

pub fn md_cor_45a_formula<T: Scalar>(ctx: &BlockContext<T>) -> Result<Matrix<T>> {
    let v = view(ctx);
    let (t, s) = (t_bound(&v), size(&v));
    let w = product(&[v.ap, v.c, v.b]);
    let wd = drazin(&w)?;
    let dpbc = complement_of(&product(&[v.dp, v.b, v.c]))?;
    let wd_apc = product(&[&wd.inverse, v.ap, v.c]);
    let dpb_wd = product(&[v.dp, v.b, &wd.inverse]);
    let k = Matrix::anti_diag(&wd_apc, &dpb_wd);
    let k_plain = Matrix::anti_diag(&(&wd.inverse * v.c), &dpb_wd);
    let qmat = Matrix::blocks(&(v.a * v.ap), &(v.ap * v.c), &(v.dp * v.b), &(v.d * v.dp));
    let q = index(&qmat)?;

    let first = Matrix::blocks(
        &-&product(&[v.ad, v.c, v.b, &wd.inverse]),
        &wd_apc,
        &dpb_wd,
        &-&product(&[v.dd, v.b, &wd.inverse, v.c]),
    );
    let second = sum(s, s, (1..t).map(|j| &lt(&v, j) * &k.pow(j + 1)));
    let tail = &Matrix::block_diag(&wd.complement_projection, &dpbc)
        - &sum(s, s, (1..t).map(|j| &lt(&v, j) * &k_plain.pow(j)));
    let third = sum(
        s,
        s,
        (0..q).map(|i| {
            let lead = Matrix::blocks(
                &v.ad.pow(i + 1),
                &(&v.ad.pow(i + 2) * v.c),
                &(&v.dd.pow(i + 2) * v.b),
                &v.dd.pow(i + 1),
            );
            &lead * &qmat.pow(i)
        }),
    );
    Ok(&(&first + &second) + &(&third * &tail))
}

pub fn md_cor_45b_formula<T: Scalar>(ctx: &BlockContext<T>) -> Result<Matrix<T>> {
    let v = view(ctx);
    let (t, s) = (one_sided_bound(&v), size(&v));
    let id = Matrix::<T>::identity(s);
    let p1 = corner_group_inverse(ctx)?;
    let coupling = Matrix::anti_diag(&(v.c * v.dp), &(v.b * v.ap));
    let lead = &id + &(&p1 * &coupling);
    let nd = nilpotent_diag(&v);
    Ok(sum(
        s,
        s,
        (0..t).map(|i| product(&[&p1.pow(i + 1), &lead, &nd.pow(i)])),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::BlockInstance;
    use crate::linalg::inverse;
    use crate::scalar::Rational;
    use crate::worked_example;

    type M = Matrix<Rational>;

    fn all_formulas(ctx: &BlockContext<Rational>) -> Vec<(&'static str, M)> {
        vec![
            ("thm-4-2", md_theorem_42_formula(ctx).unwrap()),
            ("cor-4-3a", md_cor_43a_formula(ctx).unwrap()),
            ("cor-4-3b", md_cor_43b_formula(ctx).unwrap()),
            ("thm-4-4", md_theorem_44_formula(ctx).unwrap()),
            ("cor-4-5a", md_cor_45a_formula(ctx).unwrap()),
            ("cor-4-5b", md_cor_45b_formula(ctx).unwrap()),
        ]
    }

    #[test]
    fn block_diagonal_input() {
        let a = M::from_i64_rows(&[&[1, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let d = M::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let expected = M::block_diag(&drazin(&a).unwrap().inverse, &M::zeros(2, 2));
        let inst = BlockInstance::new(a, M::zeros(2, 3), M::zeros(3, 2), d).unwrap();
        let ctx = BlockContext::new(&inst).unwrap();
        for (name, out) in all_formulas(&ctx) {
            assert_eq!(out, expected, "{name}");
        }
    }

    #[test]
    fn invertible_diagonal_blocks() {
        let a = M::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let d = M::from_i64_rows(&[&[3]]);
        let inst = BlockInstance::new(a, M::from_i64_rows(&[&[1, 0]]), M::from_i64_rows(&[&[0], &[1]]), d).unwrap();
        let ctx = BlockContext::new(&inst).unwrap();
        let expected = inverse(&inst.assemble()).unwrap();
        for (name, out) in all_formulas(&ctx).into_iter().filter(|(n, _)| !n.ends_with('a')) {
            assert_eq!(out, expected, "{name}");
        }
    }

    #[test]
    fn worked_example_routes() {
        let ctx = BlockContext::new(&worked_example::instance()).unwrap();
        let expected = worked_example::expected_drazin();
        assert_eq!(md_cor_43a_formula(&ctx).unwrap(), expected);
        assert_eq!(md_theorem_42_formula(&ctx).unwrap(), expected);
        assert_eq!(lem_41_formula(&ctx).unwrap(), expected);
    }
}
