//! A small instance with a known block Drazin inverse: `A` is idempotent-like
//! with `A^# = A`, `D` is nilpotent, `AC = 0` and `DB = 0`.

use crate::block::BlockInstance;
use crate::matrix::Matrix;
use crate::scalar::Rational;

type M = Matrix<Rational>;

pub fn instance() -> BlockInstance<Rational> {
    BlockInstance::new(
        M::from_i64_rows(&[&[1, 1, 0], &[0, 0, 0], &[0, 0, 0]]),
        M::from_i64_rows(&[&[1, 1, 1], &[0, 0, 0]]),
        M::from_i64_rows(&[&[0, 0], &[0, 0], &[0, 2]]),
        M::from_i64_rows(&[&[0, 1], &[0, 0]]),
    )
    .expect("conformant blocks")
}

/// `M^d`: rows 1 and 4 are `(1, 1, 0, 0, 0)`, everything else is zero.
pub fn expected_drazin() -> M {
    M::from_i64_rows(&[
        &[1, 1, 0, 0, 0],
        &[0, 0, 0, 0, 0],
        &[0, 0, 0, 0, 0],
        &[1, 1, 0, 0, 0],
        &[0, 0, 0, 0, 0],
    ])
}
