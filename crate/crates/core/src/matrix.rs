//! Dense row-major matrices over a [`Scalar`] field.
//!
//! Operator impls on references (`&a * &b`) panic on non-conformant shapes;
//! the `checked_*` variants return [`Error::DimensionMismatch`] instead.
//! Zero-sized matrices are legal, with the usual degenerate product
//! semantics (`n x 0` times `0 x m` is the `n x m` zero matrix).

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{decimal_rational, Rational, Scalar, FLOAT_EQ_TOL};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds from nested rows; rejects ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::DimensionMismatch(format!(
                "ragged rows: row 0 has {c} entries, row {bad} has {}",
                rows[bad].len()
            )));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let nested = rows
            .iter()
            .map(|row| row.iter().map(|&v| T::from_i64(v)).collect())
            .collect();
        Self::from_rows(nested).expect("ragged literal")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(values: &[T]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i].clone() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "subtract")?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    T::mul_add(&mut out.data[idx], a, &other.data[k * other.cols + j]);
                }
            }
        }
        Ok(out)
    }

    /// `self^k`, with `self^0 = I`.
    pub fn pow(&self, k: usize) -> Self {
        let n = self.require_square().expect("power of a non-square matrix");
        let mut result = Self::identity(n);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `[[tl, tr], [bl, br]]`.
    pub fn block2x2(tl: &Self, tr: &Self, bl: &Self, br: &Self) -> Result<Self> {
        if tl.rows != tr.rows || bl.rows != br.rows || tl.cols != bl.cols || tr.cols != br.cols {
            return Err(Error::DimensionMismatch(format!(
                "blocks {}x{}, {}x{}, {}x{}, {}x{} do not tile",
                tl.rows, tl.cols, tr.rows, tr.cols, bl.rows, bl.cols, br.rows, br.cols
            )));
        }
        let rows = tl.rows + bl.rows;
        let cols = tl.cols + tr.cols;
        Ok(Self::from_fn(rows, cols, |i, j| {
            match (i < tl.rows, j < tl.cols) {
                (true, true) => tl[(i, j)].clone(),
                (true, false) => tr[(i, j - tl.cols)].clone(),
                (false, true) => bl[(i - tl.rows, j)].clone(),
                (false, false) => br[(i - tl.rows, j - tl.cols)].clone(),
            }
        }))
    }

    /// Block matrix from blocks known to tile; panics otherwise.
    pub fn blocks(tl: &Self, tr: &Self, bl: &Self, br: &Self) -> Self {
        Self::block2x2(tl, tr, bl, br).expect("non-conformant blocks")
    }

    pub fn block_diag(a: &Self, d: &Self) -> Self {
        Self::blocks(
            a,
            &Self::zeros(a.rows, d.cols),
            &Self::zeros(d.rows, a.cols),
            d,
        )
    }

    /// `[[0, c], [b, 0]]` with square zero diagonal blocks.
    pub fn anti_diag(c: &Self, b: &Self) -> Self {
        Self::blocks(
            &Self::zeros(c.rows, b.cols),
            c,
            b,
            &Self::zeros(b.rows, c.cols),
        )
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "submatrix out of range");
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self::new(self.rows + other.rows, self.cols, data)
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self[(rows[i], j)].clone())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|x| {
                let m = x.magnitude();
                m * m
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Scalar::magnitude).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Entrywise magnitudes.
    pub fn abs(&self) -> Matrix<f64> {
        self.map(Scalar::magnitude)
    }

    /// Zero test. Exact for rationals; for floats, every entry must be within
    /// `FLOAT_EQ_TOL * max(1, scale)`, where `scale` bounds the magnitudes
    /// that fed the computation.
    pub fn near_zero(&self, scale: f64) -> bool {
        match T::MODE {
            crate::scalar::ScalarMode::Rational => self.is_zero(),
            crate::scalar::ScalarMode::Float => {
                self.max_abs() <= FLOAT_EQ_TOL * scale.max(1.0)
            }
        }
    }

    pub fn near(&self, other: &Self, scale: f64) -> bool {
        self.shape() == other.shape() && (self - other).near_zero(scale)
    }

    /// Equality: exact for rationals, `‖a − b‖_F ≤ 1e-8 (1 + max(‖a‖_F, ‖b‖_F))`
    /// for floats.
    pub fn approx_eq(&self, other: &Self) -> bool {
        if self.shape() != other.shape() {
            return false;
        }
        match T::MODE {
            crate::scalar::ScalarMode::Rational => self == other,
            crate::scalar::ScalarMode::Float => {
                let diff = (self - other).frobenius_norm();
                diff <= FLOAT_EQ_TOL * (1.0 + self.frobenius_norm().max(other.frobenius_norm()))
            }
        }
    }

    /// `‖self − reference‖_F / (1 + ‖reference‖_F)`.
    pub fn relative_residual(&self, reference: &Self) -> f64 {
        if self.shape() != reference.shape() {
            return f64::INFINITY;
        }
        (self - reference).frobenius_norm() / (1.0 + reference.frobenius_norm())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array(self.row(i).iter().map(Scalar::to_json).collect()))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
        let nested = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                    .iter()
                    .map(T::from_json)
                    .collect::<Result<Vec<T>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(nested).map_err(|e| Error::Parse(e.to_string()))
    }

    fn same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "cannot {op} {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl Matrix<Rational> {
    pub fn cast<U: Scalar>(&self) -> Matrix<U> {
        self.map(U::from_rational)
    }
}

impl Matrix<f64> {
    /// Reads every entry as its shortest decimal expansion, exactly.
    pub fn to_decimal_rational(&self) -> Result<Matrix<Rational>> {
        let data = self
            .data
            .iter()
            .map(|&x| decimal_rational(x).ok_or_else(|| Error::Parse(format!("non-finite entry {x}"))))
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(self.rows, self.cols, data)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: Self) -> Matrix<T> {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: Self) -> Matrix<T> {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: Self) -> Matrix<T> {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;

    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        f.debug_list()
            .entries(self.data.chunks(self.cols.max(1)).take(self.rows))
            .finish()
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| match x.to_json() {
                        Value::String(s) => s,
                        other => other.to_string(),
                    })
                    .collect()
            })
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// Sum of `terms`, or the `rows x cols` zero matrix when there are none.
pub fn sum<T: Scalar>(rows: usize, cols: usize, terms: impl IntoIterator<Item = Matrix<T>>) -> Matrix<T> {
    terms
        .into_iter()
        .fold(Matrix::zeros(rows, cols), |acc, t| &acc + &t)
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Matrix<Rational>;

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![vec![1.0, 2.0], vec![3.0]];
        assert!(matches!(
            Matrix::<f64>::from_rows(rows),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn product_checks_conformance() {
        let a = M::zeros(2, 3);
        let b = M::zeros(2, 3);
        assert!(a.checked_mul(&b).is_err());
        assert!(a.checked_add(&b.transpose()).is_err());
        assert_eq!(a.checked_mul(&b.transpose()).unwrap(), M::zeros(2, 2));
    }

    #[test]
    fn empty_products() {
        let f = M::zeros(2, 0);
        let g = M::zeros(0, 3);
        assert_eq!(&f * &g, M::zeros(2, 3));
        assert_eq!(&g * &M::zeros(3, 1), M::zeros(0, 1));
    }

    #[test]
    fn powers() {
        let n = M::from_i64_rows(&[&[0, 1], &[0, 0]]);
        assert_eq!(n.pow(0), M::identity(2));
        assert_eq!(n.pow(1), n);
        assert!(n.pow(2).is_zero());
        let a = M::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(a.pow(5), M::from_i64_rows(&[&[1, 5], &[0, 1]]));
    }

    #[test]
    fn block_assembly_and_extraction() {
        let a = M::from_i64_rows(&[&[1]]);
        let c = M::from_i64_rows(&[&[2, 3]]);
        let b = M::from_i64_rows(&[&[4], &[5]]);
        let d = M::from_i64_rows(&[&[6, 7], &[8, 9]]);
        let m = M::blocks(&a, &c, &b, &d);
        assert_eq!(
            m,
            M::from_i64_rows(&[&[1, 2, 3], &[4, 6, 7], &[5, 8, 9]])
        );
        assert_eq!(m.submatrix(1, 2, 1, 2), d);
        assert_eq!(m.submatrix(0, 1, 1, 2), c);
        assert!(M::block2x2(&a, &b, &c, &d).is_err());
    }

    #[test]
    fn float_tolerant_equality() {
        let a = Matrix::<f64>::identity(3);
        let mut b = a.clone();
        b[(0, 1)] = 1e-12;
        assert!(a.approx_eq(&b));
        b[(0, 1)] = 1e-3;
        assert!(!a.approx_eq(&b));
    }
}
