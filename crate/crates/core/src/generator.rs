//! Seeded construction of matrices with a prescribed index and of block
//! instances that satisfy a chosen hypothesis exactly.
//!
//! All randomness flows from an explicit xoshiro256** state seeded with
//! `seed_from_u64`, so a [`GenSpec`] fully determines its instance.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::block::{BlockContext, BlockInstance};
use crate::error::{Error, Result};
use crate::geninv::{drazin, index, is_invertible};
use crate::linalg::{inverse, kernel_basis, rank};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};

type Q = Matrix<Rational>;

pub type GenRng = Xoshiro256StarStar;

pub const DEFAULT_ENTRY_BOUND: u32 = 3;
const RETRY_BUDGET: usize = 100;

pub fn rng_from_seed(seed: u64) -> GenRng {
    GenRng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConditionTag {
    None,
    /// `AC = 0`, `DB = 0`
    Ac0Db0,
    /// `CD = 0`, `BA = 0`
    Cd0Ba0,
    /// `CD^π = 0`, `BA^π = 0`
    CdPi0BaPi0,
    /// `A^πC = 0`, `D^πB = 0`
    ApiC0DpiB0,
    /// `ACD^π = 0`, `DBA^π = 0`
    AcdPi0DbaPi0,
    /// `A^πCD = 0`, `D^πBA = 0`
    ApiCd0DpiBa0,
    /// `A^πCD^dB = 0`
    ApiCddB0,
    /// `CD^dBA^π = 0`
    CddBaPi0,
    /// `D^πBA^dC = 0`
    DpiBadC0,
    /// `A^πCZ^dBA^d = 0` and `Z^πBA^d = 0`
    SystemSolvable,
    /// `A^π + s` invertible
    EquivTrue,
}

impl ConditionTag {
    pub const ALL: [ConditionTag; 12] = [
        ConditionTag::None,
        ConditionTag::Ac0Db0,
        ConditionTag::Cd0Ba0,
        ConditionTag::CdPi0BaPi0,
        ConditionTag::ApiC0DpiB0,
        ConditionTag::AcdPi0DbaPi0,
        ConditionTag::ApiCd0DpiBa0,
        ConditionTag::ApiCddB0,
        ConditionTag::CddBaPi0,
        ConditionTag::DpiBadC0,
        ConditionTag::SystemSolvable,
        ConditionTag::EquivTrue,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConditionTag::None => "none",
            ConditionTag::Ac0Db0 => "ac0_db0",
            ConditionTag::Cd0Ba0 => "cd0_ba0",
            ConditionTag::CdPi0BaPi0 => "cdpi0_bapi0",
            ConditionTag::ApiC0DpiB0 => "apic0_dpib0",
            ConditionTag::AcdPi0DbaPi0 => "acdpi0_dbapi0",
            ConditionTag::ApiCd0DpiBa0 => "apicd0_dpiba0",
            ConditionTag::ApiCddB0 => "apicddb0",
            ConditionTag::CddBaPi0 => "cddbapi0",
            ConditionTag::DpiBadC0 => "dpibadc0",
            ConditionTag::SystemSolvable => "system_solvable",
            ConditionTag::EquivTrue => "equiv_true",
        }
    }
}

impl fmt::Display for ConditionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConditionTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown condition tag {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub n: usize,
    pub m: usize,
    pub index_a: usize,
    pub index_d: usize,
    pub condition: ConditionTag,
    pub seed: u64,
    /// Raw entries are `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ bound`.
    pub entry_bound: u32,
}

impl GenSpec {
    pub fn new(condition: ConditionTag, n: usize, m: usize, index_a: usize, index_d: usize, seed: u64) -> Self {
        Self {
            n,
            m,
            index_a,
            index_d,
            condition,
            seed,
            entry_bound: DEFAULT_ENTRY_BOUND,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.m == 0 {
            return Err(Error::Infeasible("block sizes must be at least 1".into()));
        }
        if self.index_a > self.n || self.index_d > self.m {
            return Err(Error::Infeasible(format!(
                "index ({}, {}) exceeds block size ({}, {})",
                self.index_a, self.index_d, self.n, self.m
            )));
        }
        if self.entry_bound == 0 {
            return Err(Error::Infeasible("entry bound must be positive".into()));
        }
        Ok(())
    }
}

fn rand_entry(rng: &mut GenRng, bound: u32) -> Rational {
    let b = bound as i64;
    let p = rng.gen_range(-b..=b);
    let q = rng.gen_range(1..=b);
    Rational::new(p.into(), q.into())
}

fn rand_nonzero_entry(rng: &mut GenRng, bound: u32) -> Rational {
    loop {
        let x = rand_entry(rng, bound);
        if !Scalar::is_zero(&x) {
            return x;
        }
    }
}

pub fn random_matrix(rows: usize, cols: usize, bound: u32, rng: &mut GenRng) -> Q {
    Q::from_fn(rows, cols, |_, _| rand_entry(rng, bound))
}

/// Unimodular integer matrix `L U` with unit-triangular factors whose
/// off-diagonal entries lie in `{-1, 0, 1}`.
pub fn random_unimodular(n: usize, rng: &mut GenRng) -> Q {
    let mut tri = |lower: bool| {
        Q::from_fn(n, n, |i, j| {
            if i == j {
                <Rational as Scalar>::one()
            } else if (i > j) == lower {
                Rational::from_i64(rng.gen_range(-1..=1))
            } else {
                <Rational as Scalar>::zero()
            }
        })
    };
    let l = tri(true);
    let u = tri(false);
    &l * &u
}

fn random_invertible(n: usize, bound: u32, rng: &mut GenRng) -> Q {
    loop {
        let r = random_matrix(n, n, bound, rng);
        if rank(&r) == n {
            return r;
        }
    }
}

/// Strictly upper-triangular `k x k` with a nonzero superdiagonal, so its
/// nilpotency index is exactly `k`.
fn random_nilpotent(k: usize, bound: u32, rng: &mut GenRng, full_index: bool) -> Q {
    Q::from_fn(k, k, |i, j| {
        if j == i + 1 && full_index {
            rand_nonzero_entry(rng, bound)
        } else if j > i {
            rand_entry(rng, bound)
        } else {
            <Rational as Scalar>::zero()
        }
    })
}

/// `P diag(R, N) P⁻¹` with `R` invertible of size `n − k`, `N` nilpotent of
/// index exactly `k` and `P` unimodular; `ind` of the result is `k`.
pub fn gen_with_index_rng(n: usize, k: usize, bound: u32, rng: &mut GenRng) -> Result<Q> {
    if k > n {
        return Err(Error::Infeasible(format!("index {k} exceeds size {n}")));
    }
    for _ in 0..RETRY_BUDGET {
        let p = random_unimodular(n, rng);
        let core = random_invertible(n - k, bound, rng);
        let nil = random_nilpotent(k, bound, rng, true);
        let p_inv = inverse(&p)?;
        let a = &(&p * &Q::block_diag(&core, &nil)) * &p_inv;
        if index(&a)? == k {
            return Ok(a);
        }
    }
    Err(Error::Infeasible(format!("could not reach index {k} at size {n}")))
}

pub fn gen_with_index(n: usize, k: usize, seed: u64) -> Result<Q> {
    gen_with_index_rng(n, k, DEFAULT_ENTRY_BOUND, &mut rng_from_seed(seed))
}

/// Random invertible matrix (unimodular change of basis times a random
/// invertible matrix).
pub fn gen_invertible(n: usize, seed: u64) -> Q {
    let mut rng = rng_from_seed(seed);
    let u = random_unimodular(n, &mut rng);
    let r = random_invertible(n, DEFAULT_ENTRY_BOUND, &mut rng);
    &u * &r
}

/// `basis · R` for a random `R`; zero when the basis is empty.
fn combine_columns(basis: &Q, cols: usize, bound: u32, rng: &mut GenRng) -> Q {
    let r = random_matrix(basis.cols(), cols, bound, rng);
    basis * &r
}

/// `R · basisᵀ`-style combination of row vectors.
fn combine_rows(rows_basis: &Q, rows: usize, bound: u32, rng: &mut GenRng) -> Q {
    let r = random_matrix(rows, rows_basis.rows(), bound, rng);
    &r * rows_basis
}

/// Rows span the left null space `{y : y X = 0}`.
fn left_kernel(x: &Q) -> Q {
    kernel_basis(&x.transpose()).transpose()
}

struct Parts {
    a: Q,
    d: Q,
    ae: Q,
    ap: Q,
    dd: Q,
    de: Q,
    dp: Q,
}

fn diagonal_blocks(spec: &GenSpec, rng: &mut GenRng) -> Result<Parts> {
    let a = gen_with_index_rng(spec.n, spec.index_a, spec.entry_bound, rng)?;
    let d = gen_with_index_rng(spec.m, spec.index_d, spec.entry_bound, rng)?;
    let da = drazin(&a)?;
    let dd = drazin(&d)?;
    Ok(Parts {
        a,
        d,
        ae: da.eigenprojection,
        ap: da.complement_projection,
        dd: dd.inverse,
        de: dd.eigenprojection,
        dp: dd.complement_projection,
    })
}

fn draw_off_diagonal(spec: &GenSpec, p: &Parts, rng: &mut GenRng) -> (Q, Q) {
    let (n, m, k) = (spec.n, spec.m, spec.entry_bound);
    let rand = |r, c, rng: &mut GenRng| random_matrix(r, c, k, rng);
    match spec.condition {
        ConditionTag::None | ConditionTag::EquivTrue => (rand(m, n, rng), rand(n, m, rng)),
        ConditionTag::Ac0Db0 => (
            combine_columns(&kernel_basis(&p.d), n, k, rng),
            combine_columns(&kernel_basis(&p.a), m, k, rng),
        ),
        ConditionTag::Cd0Ba0 => (
            combine_rows(&left_kernel(&p.a), m, k, rng),
            combine_rows(&left_kernel(&p.d), n, k, rng),
        ),
        ConditionTag::CdPi0BaPi0 => (&rand(m, n, rng) * &p.ae, &rand(n, m, rng) * &p.de),
        ConditionTag::ApiC0DpiB0 => (&p.de * &rand(m, n, rng), &p.ae * &rand(n, m, rng)),
        ConditionTag::AcdPi0DbaPi0 => {
            let b = &(&rand(m, n, rng) * &p.ae) + &combine_columns(&kernel_basis(&p.d), n, k, rng);
            let c = &(&rand(n, m, rng) * &p.de) + &combine_columns(&kernel_basis(&p.a), m, k, rng);
            (b, c)
        }
        ConditionTag::ApiCd0DpiBa0 => {
            let b = &(&p.de * &rand(m, n, rng)) + &combine_rows(&left_kernel(&p.a), m, k, rng);
            let c = &(&p.ae * &rand(n, m, rng)) + &combine_rows(&left_kernel(&p.d), n, k, rng);
            (b, c)
        }
        ConditionTag::ApiCddB0 => {
            if rng.gen_bool(0.5) {
                let c = &(&p.ae * &rand(n, m, rng)) + &(&rand(n, m, rng) * &p.dp);
                (rand(m, n, rng), c)
            } else {
                (&p.dp * &rand(m, n, rng), rand(n, m, rng))
            }
        }
        ConditionTag::CddBaPi0 => {
            if rng.gen_bool(0.5) {
                let b = &(&rand(m, n, rng) * &p.ae) + &(&p.dp * &rand(m, n, rng));
                (b, rand(n, m, rng))
            } else {
                (rand(m, n, rng), &rand(n, m, rng) * &p.dp)
            }
        }
        ConditionTag::DpiBadC0 => {
            if rng.gen_bool(0.5) {
                let b = &(&p.de * &rand(m, n, rng)) + &(&rand(m, n, rng) * &p.ap);
                (b, rand(n, m, rng))
            } else {
                (rand(m, n, rng), &p.ap * &rand(n, m, rng))
            }
        }
        ConditionTag::SystemSolvable => {
            if rng.gen_bool(0.75) {
                (rand(m, n, rng), &p.ae * &rand(n, m, rng))
            } else {
                (&rand(m, n, rng) * &p.ap, rand(n, m, rng))
            }
        }
    }
}

/// Exact check of the hypothesis a tag stands for.
pub fn condition_holds(tag: ConditionTag, inst: &BlockInstance<Rational>) -> Result<bool> {
    let ctx = BlockContext::new(inst)?;
    Ok(condition_holds_in(tag, &ctx))
}

pub fn condition_holds_in<T: Scalar>(tag: ConditionTag, ctx: &BlockContext<T>) -> bool {
    let BlockInstance { a, b, c, d } = &ctx.inst;
    let (ad, ap) = (&ctx.a.inverse, &ctx.a.complement_projection);
    let (dd, dp) = (&ctx.d.inverse, &ctx.d.complement_projection);
    let zero = |x: Matrix<T>, scale: f64| x.near_zero(scale);
    let na = a.inf_norm();
    let nb = b.inf_norm();
    let nc = c.inf_norm();
    let nd = d.inf_norm();
    match tag {
        ConditionTag::None => true,
        ConditionTag::Ac0Db0 => zero(a * c, na * nc) && zero(d * b, nd * nb),
        ConditionTag::Cd0Ba0 => zero(c * d, nc * nd) && zero(b * a, nb * na),
        ConditionTag::CdPi0BaPi0 => zero(c * dp, nc) && zero(b * ap, nb),
        ConditionTag::ApiC0DpiB0 => zero(ap * c, nc) && zero(dp * b, nb),
        ConditionTag::AcdPi0DbaPi0 => {
            zero(&(a * c) * dp, na * nc) && zero(&(d * b) * ap, nd * nb)
        }
        ConditionTag::ApiCd0DpiBa0 => {
            zero(&(ap * c) * d, nc * nd) && zero(&(dp * b) * a, nb * na)
        }
        ConditionTag::ApiCddB0 => zero(&(&(ap * c) * dd) * b, nc * dd.inf_norm() * nb),
        ConditionTag::CddBaPi0 => zero(&(&(c * dd) * b) * ap, nc * dd.inf_norm() * nb),
        ConditionTag::DpiBadC0 => zero(&(&(dp * b) * ad) * c, nb * ad.inf_norm() * nc),
        ConditionTag::SystemSolvable => crate::theorems::system_conditions(ctx)
            .map(|(first, second)| first && second)
            .unwrap_or(false),
        ConditionTag::EquivTrue => {
            is_invertible(&(ap + &ctx.schur.s))
        }
    }
}

/// Instance satisfying `spec.condition` exactly. Kernel/range projections
/// enforce every tag by construction except `system_solvable` and
/// `equiv_true`, which also need an invertibility side condition and are
/// redrawn up to 100 times.
pub fn gen_instance(spec: &GenSpec) -> Result<BlockInstance<Rational>> {
    spec.validate()?;
    let mut rng = rng_from_seed(spec.seed);
    for _ in 0..RETRY_BUDGET {
        let parts = diagonal_blocks(spec, &mut rng)?;
        let (b, c) = draw_off_diagonal(spec, &parts, &mut rng);
        let inst = BlockInstance::new(parts.a, b, c, parts.d)?;
        if condition_holds(spec.condition, &inst)? {
            return Ok(inst);
        }
    }
    Err(Error::Infeasible(format!(
        "no instance satisfying {} after {RETRY_BUDGET} draws",
        spec.condition
    )))
}

/// Which corner compression is made singular by [`gen_singular_corner`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CornerSide {
    /// `s = A^e S A^e` singular on the range of `A^e`.
    S,
    /// `z = D^e Z D^e` singular on the range of `D^e`.
    Z,
}

/// Instance on which the group-inverse equivalences all fail: for a random
/// `v = A^e w ≠ 0` and `y = D^d B v`, `C` is chosen with `C y = A v`, so
/// `s v = 0`. Needs `ind(A) < n` and `ind(D) < m`; `spec.condition` is ignored.
pub fn gen_singular_corner(spec: &GenSpec, side: CornerSide) -> Result<BlockInstance<Rational>> {
    spec.validate()?;
    if side == CornerSide::Z {
        let flipped = GenSpec {
            n: spec.m,
            m: spec.n,
            index_a: spec.index_d,
            index_d: spec.index_a,
            ..spec.clone()
        };
        return gen_singular_corner(&flipped, CornerSide::S).map(|inst| inst.swapped());
    }
    if spec.index_a == spec.n || spec.index_d == spec.m {
        return Err(Error::Infeasible(
            "a singular corner needs nonzero A^e and D^d".into(),
        ));
    }
    let mut rng = rng_from_seed(spec.seed);
    let (n, m, k) = (spec.n, spec.m, spec.entry_bound);
    for _ in 0..RETRY_BUDGET {
        let p = diagonal_blocks(spec, &mut rng)?;
        let v = &p.ae * &random_matrix(n, 1, k, &mut rng);
        if v.is_zero() {
            continue;
        }
        let b = random_matrix(m, n, k, &mut rng);
        let y = &(&p.dd * &b) * &v;
        let u = random_matrix(m, 1, k, &mut rng);
        let uy = (&u.transpose() * &y)[(0, 0)].clone();
        if Scalar::is_zero(&uy) {
            continue;
        }
        let ut = u.transpose().scale(&(<Rational as Scalar>::one() / uy));
        let annihilate_y = &Q::identity(m) - &(&y * &ut);
        let c = &(&random_matrix(n, m, k, &mut rng) * &annihilate_y) + &(&(&p.a * &v) * &ut);
        let inst = BlockInstance::new(p.a, b, c, p.d)?;
        if !condition_holds(ConditionTag::EquivTrue, &inst)? {
            return Ok(inst);
        }
    }
    Err(Error::Infeasible("could not build a singular corner".into()))
}

/// Pair `(A, B)` of `n x n` matrices. With `same = true`, `B` shares the
/// core–nilpotent splitting of `A` (hence `A^π = B^π`); otherwise `B` is
/// drawn independently.
pub fn gen_eigenprojection_pair(n: usize, k: usize, same: bool, seed: u64) -> Result<(Q, Q)> {
    if k > n {
        return Err(Error::Infeasible(format!("index {k} exceeds size {n}")));
    }
    let mut rng = rng_from_seed(seed);
    let bound = DEFAULT_ENTRY_BOUND;
    let p = random_unimodular(n, &mut rng);
    let p_inv = inverse(&p)?;
    let a = &(&p * &Q::block_diag(
        &random_invertible(n - k, bound, &mut rng),
        &random_nilpotent(k, bound, &mut rng, true),
    )) * &p_inv;
    let b = if same {
        &(&p * &Q::block_diag(
            &random_invertible(n - k, bound, &mut rng),
            &random_nilpotent(k, bound, &mut rng, false),
        )) * &p_inv
    } else {
        let kb = rng.gen_range(0..=n);
        gen_with_index_rng(n, kb, bound, &mut rng)?
    };
    Ok((a, b))
}

/// Pair `(P, Q)` with `PQ = 0`, one of them of prescribed index `k`.
pub fn gen_pq0_pair(n: usize, k: usize, seed: u64) -> Result<(Q, Q)> {
    let mut rng = rng_from_seed(seed);
    let bound = DEFAULT_ENTRY_BOUND;
    let base = gen_with_index_rng(n, k, bound, &mut rng)?;
    if rng.gen_bool(0.5) {
        // P's rows in the left null space of Q.
        let p = combine_rows(&left_kernel(&base), n, bound, &mut rng);
        Ok((p, base))
    } else {
        // Q's columns in the null space of P.
        let q = combine_columns(&kernel_basis(&base), n, bound, &mut rng);
        Ok((base, q))
    }
}

/// Random matrix with entries `p/q`, `|p|, q ≤ bound`.
pub fn gen_matrix(rows: usize, cols: usize, bound: u32, seed: u64) -> Q {
    random_matrix(rows, cols, bound, &mut rng_from_seed(seed))
}
