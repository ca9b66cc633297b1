//! 2x2 block matrices `M = [[A, C], [B, D]]`, their generalized Schur
//! complements and Peirce corner compressions.

use crate::error::{Error, Result};
use crate::geninv::{drazin, DrazinResult};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};

/// `A: n x n`, `B: m x n`, `C: n x m`, `D: m x m`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockInstance<T> {
    pub a: Matrix<T>,
    pub b: Matrix<T>,
    pub c: Matrix<T>,
    pub d: Matrix<T>,
}

impl<T: Scalar> BlockInstance<T> {
    pub fn new(a: Matrix<T>, b: Matrix<T>, c: Matrix<T>, d: Matrix<T>) -> Result<Self> {
        let n = a.rows();
        let m = d.rows();
        let ok = a.shape() == (n, n)
            && d.shape() == (m, m)
            && b.shape() == (m, n)
            && c.shape() == (n, m);
        if !ok {
            return Err(Error::DimensionMismatch(format!(
                "blocks A {}x{}, B {}x{}, C {}x{}, D {}x{} are not conformant \
                 (need A n x n, B m x n, C n x m, D m x m)",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols(),
                c.rows(),
                c.cols(),
                d.rows(),
                d.cols()
            )));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn m(&self) -> usize {
        self.d.rows()
    }

    pub fn assemble(&self) -> Matrix<T> {
        Matrix::blocks(&self.a, &self.c, &self.b, &self.d)
    }

    /// The instance with the roles of the two diagonal blocks exchanged,
    /// `[[D, B], [C, A]]`; its `S` is this instance's `Z` and vice versa.
    pub fn swapped(&self) -> Self {
        Self {
            a: self.d.clone(),
            b: self.c.clone(),
            c: self.b.clone(),
            d: self.a.clone(),
        }
    }

    /// Splits a square `(n+m)`-matrix into its four blocks.
    pub fn split(&self, whole: &Matrix<T>) -> [Matrix<T>; 4] {
        let (n, m) = (self.n(), self.m());
        [
            whole.submatrix(0, n, 0, n),
            whole.submatrix(0, n, n, m),
            whole.submatrix(n, m, 0, n),
            whole.submatrix(n, m, n, m),
        ]
    }
}

impl BlockInstance<Rational> {
    pub fn cast<U: Scalar>(&self) -> BlockInstance<U> {
        BlockInstance {
            a: self.a.cast(),
            b: self.b.cast(),
            c: self.c.cast(),
            d: self.d.cast(),
        }
    }
}

/// `S = A − C D^d B`, `Z = D − B A^d C` and their compressions
/// `s = A^e S A^e`, `z = D^e Z D^e`, `s1 = A^π S A^π`, `z1 = D^π Z D^π`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurSet<T> {
    pub s_complement: Matrix<T>,
    pub z_complement: Matrix<T>,
    pub s: Matrix<T>,
    pub z: Matrix<T>,
    pub s1: Matrix<T>,
    pub z1: Matrix<T>,
}

/// An instance together with the Drazin data of its diagonal blocks and its
/// Schur set, computed once and shared by every formula.
#[derive(Debug, Clone)]
pub struct BlockContext<T> {
    pub inst: BlockInstance<T>,
    pub a: DrazinResult<T>,
    pub d: DrazinResult<T>,
    pub schur: SchurSet<T>,
}

impl<T: Scalar> BlockContext<T> {
    pub fn new(inst: &BlockInstance<T>) -> Result<Self> {
        let a = drazin(&inst.a)?;
        let d = drazin(&inst.d)?;
        let schur = schur_from_parts(inst, &a, &d);
        Ok(Self {
            inst: inst.clone(),
            a,
            d,
            schur,
        })
    }

    pub fn n(&self) -> usize {
        self.inst.n()
    }

    pub fn m(&self) -> usize {
        self.inst.m()
    }

    /// `diag(X, Y)` as an `(n+m)`-square matrix.
    pub fn diag(&self, x: &Matrix<T>, y: &Matrix<T>) -> Matrix<T> {
        Matrix::block_diag(x, y)
    }

    pub fn projector(&self, which: Corner) -> Matrix<T> {
        let (left, right) = match which {
            Corner::E => (&self.a.eigenprojection, &self.d.eigenprojection),
            Corner::G => (&self.a.eigenprojection, &self.d.complement_projection),
            Corner::H => (&self.a.complement_projection, &self.d.eigenprojection),
        };
        Matrix::block_diag(left, right)
    }
}

fn schur_from_parts<T: Scalar>(
    inst: &BlockInstance<T>,
    a: &DrazinResult<T>,
    d: &DrazinResult<T>,
) -> SchurSet<T> {
    let (ae, ap) = (&a.eigenprojection, &a.complement_projection);
    let (de, dp) = (&d.eigenprojection, &d.complement_projection);
    let s_complement = &inst.a - &(&(&inst.c * &d.inverse) * &inst.b);
    let z_complement = &inst.d - &(&(&inst.b * &a.inverse) * &inst.c);
    SchurSet {
        s: &(ae * &s_complement) * ae,
        z: &(de * &z_complement) * de,
        s1: &(ap * &s_complement) * ap,
        z1: &(dp * &z_complement) * dp,
        s_complement,
        z_complement,
    }
}

pub fn schur_set<T: Scalar>(inst: &BlockInstance<T>) -> Result<SchurSet<T>> {
    Ok(BlockContext::new(inst)?.schur)
}

/// Which block-diagonal idempotent compresses `M`:
/// `E = diag(A^e, D^e)`, `G = diag(A^e, D^π)`, `H = diag(A^π, D^e)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corner {
    E,
    G,
    H,
}

impl std::str::FromStr for Corner {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "E" | "e" => Ok(Corner::E),
            "G" | "g" => Ok(Corner::G),
            "H" | "h" => Ok(Corner::H),
            other => Err(Error::Parse(format!("unknown corner {other:?} (expected E, G or H)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CornerDecomposition<T> {
    pub which: Corner,
    pub projector: Matrix<T>,
    /// `projector · M · projector`
    pub compressed: Matrix<T>,
}

pub fn corner_of<T: Scalar>(ctx: &BlockContext<T>, which: Corner) -> CornerDecomposition<T> {
    let projector = ctx.projector(which);
    let compressed = &(&projector * &ctx.inst.assemble()) * &projector;
    CornerDecomposition {
        which,
        projector,
        compressed,
    }
}

pub fn peirce_corner<T: Scalar>(
    inst: &BlockInstance<T>,
    which: Corner,
) -> Result<CornerDecomposition<T>> {
    Ok(corner_of(&BlockContext::new(inst)?, which))
}

/// `lower · core · upper`
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization<T> {
    pub lower: Matrix<T>,
    pub core: Matrix<T>,
    pub upper: Matrix<T>,
}

impl<T: Scalar> Factorization<T> {
    pub fn product(&self) -> Matrix<T> {
        &(&self.lower * &self.core) * &self.upper
    }
}

/// The two block-triangular factorizations of `M_E`: one through
/// `D^e Z D^e` in the lower-right corner, one through `A^e S A^e` in the
/// upper-left.
pub fn corner_factorizations<T: Scalar>(ctx: &BlockContext<T>) -> [Factorization<T>; 2] {
    let BlockInstance { a, b, c, d } = &ctx.inst;
    let (ad, ae) = (&ctx.a.inverse, &ctx.a.eigenprojection);
    let (dd, de) = (&ctx.d.inverse, &ctx.d.eigenprojection);
    let zeros_nm = Matrix::zeros(ctx.n(), ctx.m());
    let zeros_mn = Matrix::zeros(ctx.m(), ctx.n());
    let aae = a * ae;
    let dde = d * de;

    let through_z = Factorization {
        lower: Matrix::blocks(ae, &zeros_nm, &(&(de * b) * ad), de),
        core: ctx.diag(&aae, &(&dde - &(&(&(&(de * b) * ad) * c) * de))),
        upper: Matrix::blocks(ae, &(&(ad * c) * de), &zeros_mn, de),
    };
    let through_s = Factorization {
        lower: Matrix::blocks(ae, &(&(ae * c) * dd), &zeros_mn, de),
        core: ctx.diag(&(&aae - &(&(&(&(ae * c) * dd) * b) * ae)), &dde),
        upper: Matrix::blocks(ae, &zeros_nm, &(&(dd * b) * ae), de),
    };
    [through_z, through_s]
}

pub fn peirce_factorizations<T: Scalar>(inst: &BlockInstance<T>) -> Result<[Factorization<T>; 2]> {
    Ok(corner_factorizations(&BlockContext::new(inst)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use crate::worked_example;

    type M = Matrix<Rational>;

    #[test]
    fn rejects_nonconformant_blocks() {
        let r = BlockInstance::new(M::identity(2), M::zeros(1, 2), M::zeros(1, 2), M::identity(1));
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn assemble_examples() {
        let i1 = M::identity(1);
        let z1 = M::zeros(1, 1);
        let inst = BlockInstance::new(i1.clone(), z1.clone(), z1.clone(), i1).unwrap();
        assert_eq!(inst.assemble(), M::identity(2));

        let zero = BlockInstance::new(M::zeros(2, 2), M::zeros(3, 2), M::zeros(2, 3), M::zeros(3, 3))
            .unwrap();
        assert!(zero.assemble().is_zero());

        let ex = worked_example::instance();
        let whole = ex.assemble();
        assert_eq!(
            whole,
            M::from_i64_rows(&[
                &[1, 1, 0, 0, 0],
                &[0, 0, 0, 0, 0],
                &[0, 0, 0, 0, 2],
                &[1, 1, 1, 0, 1],
                &[0, 0, 0, 0, 0],
            ])
        );
        assert_eq!(ex.split(&whole), [ex.a.clone(), ex.c.clone(), ex.b.clone(), ex.d.clone()]);
    }

    #[test]
    fn schur_examples() {
        let ex = worked_example::instance();
        let set = schur_set(&ex).unwrap();
        assert_eq!(set.s_complement, ex.a);
        assert_eq!(set.z_complement, ex.d);

        let a = M::from_i64_rows(&[&[1, 1], &[0, 0]]);
        let d = M::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let inst = BlockInstance::new(a.clone(), M::zeros(2, 2), M::zeros(2, 2), d.clone()).unwrap();
        let ctx = BlockContext::new(&inst).unwrap();
        assert_eq!(ctx.schur.s_complement, a);
        assert_eq!(ctx.schur.z_complement, d);
        assert_eq!(ctx.schur.s, &a * &ctx.a.eigenprojection);
        assert_eq!(ctx.schur.z, &d * &ctx.d.eigenprojection);
    }

    #[test]
    fn corner_examples() {
        let a = M::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let d = M::from_i64_rows(&[&[3]]);
        let inst = BlockInstance::new(a, M::from_i64_rows(&[&[1, 2]]), M::from_i64_rows(&[&[1], &[0]]), d)
            .unwrap();
        let e = peirce_corner(&inst, Corner::E).unwrap();
        assert_eq!(e.projector, M::identity(3));
        assert_eq!(e.compressed, inst.assemble());

        let ex = worked_example::instance();
        let ctx = BlockContext::new(&ex).unwrap();
        let e = corner_of(&ctx, Corner::E);
        assert_eq!(e.projector, M::block_diag(&ctx.a.eigenprojection, &M::zeros(2, 2)));
        assert_eq!(
            e.compressed,
            M::block_diag(&(&ex.a * &ctx.a.eigenprojection), &M::zeros(2, 2))
        );

        let nil = M::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let inst = BlockInstance::new(nil.clone(), M::identity(2), M::identity(2), nil).unwrap();
        let e = peirce_corner(&inst, Corner::E).unwrap();
        assert!(e.projector.is_zero() && e.compressed.is_zero());
    }

    #[test]
    fn factorizations_multiply_back() {
        let ex = worked_example::instance();
        let ctx = BlockContext::new(&ex).unwrap();
        let me = corner_of(&ctx, Corner::E).compressed;
        for f in corner_factorizations(&ctx) {
            assert_eq!(f.product(), me);
        }

        let a = M::from_i64_rows(&[&[1, 1], &[0, 0]]);
        let d = M::from_i64_rows(&[&[2]]);
        let inst = BlockInstance::new(a, M::zeros(1, 2), M::zeros(2, 1), d).unwrap();
        let ctx = BlockContext::new(&inst).unwrap();
        let [fz, fs] = peirce_factorizations(&inst).unwrap();
        let e = ctx.projector(Corner::E);
        assert_eq!(fz.lower, e);
        assert_eq!(fz.upper, e);
        assert_eq!(fs.lower, e);
        assert_eq!(
            fz.core,
            M::block_diag(&(&inst.a * &ctx.a.eigenprojection), &(&inst.d * &ctx.d.eigenprojection))
        );
        assert_eq!(fz.core, fs.core);
        assert_eq!(rank(&fz.product()), 2);
    }
}
