//! Drazin inverses of the generalized Schur complements `S` and `Z`.

use crate::block::BlockContext;
use crate::error::Result;
use crate::geninv::{drazin, group_inverse};
use crate::matrix::{sum, Matrix};
use crate::scalar::Scalar;

use super::{product, view};

/// `X + Σ_{i<k} X^{i+2} S A^i A^π`, `k = ind(A)`.
fn right_series<T: Scalar>(ctx: &BlockContext<T>, x: &Matrix<T>) -> Matrix<T> {
    let v = view(ctx);
    let tail = sum(
        v.n,
        v.n,
        (0..v.ka).map(|i| product(&[&x.pow(i + 2), v.big_s, &v.a.pow(i), v.ap])),
    );
    x + &tail
}

/// `s^# = A^dCz^#BA^d + A^d`, with `z^#` the group inverse of `z`.
pub fn s_sharp_from_z<T: Scalar>(ctx: &BlockContext<T>) -> Result<Matrix<T>> {
    let v = view(ctx);
    let z_sharp = group_inverse(v.z)?;
    Ok(&product(&[v.ad, v.c, &z_sharp, v.b, v.ad]) + v.ad)
}

/// `z^# = D^dBs^#CD^d + D^d`, with `s^#` the group inverse of `s`.
pub fn z_sharp_from_s<T: Scalar>(ctx: &BlockContext<T>) -> Result<Matrix<T>> {
    let v = view(ctx);
    let s_sharp = group_inverse(v.s)?;
    Ok(&product(&[v.dd, v.b, &s_sharp, v.c, v.dd]) + v.dd)
}

/// `S^d = s^d + Σ_{i<k} (s^d)^{i+2} S A^i A^π`.
pub fn sd_via_s_nilpotent_part_formula<T: Scalar>(ctx: &BlockContext<T>) -> Result<Matrix<T>> {
    let sd = drazin(&ctx.schur.s)?.inverse;
    Ok(right_series(ctx, &sd))
}

/// `S^d = s^# + Σ_{i<k} (s^#)^{i+2} S A^i A^π` with `s^#` built from `z^#`.
pub fn sd_by_group_corner_formula<T: Scalar>(ctx: &BlockContext<T>) -> Result<Matrix<T>> {
    Ok(right_series(ctx, &s_sharp_from_z(ctx)?))
}

/// Both expressions for `S^d` with `X = A^d + A^dCZ^dBA^d`:
/// the series `X + Σ X^{i+2} S A^i A^π`, and
/// `X − Σ X^{i+1} A^dCZ^dBA^iA^π + Σ X^{i+1} A^dC(Z^dD^π − Z^πD^d)BA^i`.
pub fn sd_fil_forms_formula<T: Scalar>(ctx: &BlockContext<T>) -> Result<(Matrix<T>, Matrix<T>)> {
    let v = view(ctx);
    let zd = drazin(v.big_z)?;
    let x = v.ad + &product(&[v.ad, v.c, &zd.inverse, v.b, v.ad]);
    let series = right_series(ctx, &x);
    let mixed = &(&zd.inverse * v.dp) - &(&zd.complement_projection * v.dd);
    let first = sum(
        v.n,
        v.n,
        (0..v.ka).map(|i| product(&[&x.pow(i + 1), v.ad, v.c, &zd.inverse, v.b, &v.a.pow(i), v.ap])),
    );
    let second = sum(
        v.n,
        v.n,
        (0..v.ka).map(|i| product(&[&x.pow(i + 1), v.ad, v.c, &mixed, v.b, &v.a.pow(i)])),
    );
    let three_term = &(&x - &first) + &second;
    Ok((series, three_term))
}

/// `S^d = s^# + Σ_{i<k} A^π A^i S (s^#)^{i+2}`.
pub fn sd_dual_formula<T: Scalar>(ctx: &BlockContext<T>) -> Result<Matrix<T>> {
    let v = view(ctx);
    let s_sharp = s_sharp_from_z(ctx)?;
    let tail = sum(
        v.n,
        v.n,
        (0..v.ka).map(|i| product(&[v.ap, &v.a.pow(i), v.big_s, &s_sharp.pow(i + 2)])),
    );
    Ok(&s_sharp + &tail)
}

/// `Z^d = z^# + Σ_{i<k} (z^#)^{i+2} Z D^i D^π`, `k = ind(D)`, with `z^#`
/// built from `s^#`.
pub fn zd_by_group_corner_formula<T: Scalar>(ctx: &BlockContext<T>) -> Result<Matrix<T>> {
    let v = view(ctx);
    let z_sharp = z_sharp_from_s(ctx)?;
    let tail = sum(
        v.m,
        v.m,
        (0..v.kd).map(|i| product(&[&z_sharp.pow(i + 2), v.big_z, &v.d.pow(i), v.dp])),
    );
    Ok(&z_sharp + &tail)
}
