//! Scalar fields the library computes over: exact rationals and `f64`.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;

/// Arbitrary-precision rational, always held in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Relative pivot threshold used by float elimination.
pub const PIVOT_REL_TOL: f64 = 1e-10;

/// Float pivots at or below this are zero. The scale is floored at 1 so that
/// a matrix made only of rounding noise (say `A A^π` for a computed `A^π`)
/// has rank 0 instead of being judged against its own tiny entries.
pub fn pivot_tolerance(scale: f64) -> f64 {
    PIVOT_REL_TOL * scale.max(1.0)
}

/// Relative tolerance for float matrix comparisons.
pub const FLOAT_EQ_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    Rational,
    Float,
}

impl ScalarMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalarMode::Rational => "rational",
            ScalarMode::Float => "float",
        }
    }
}

impl Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScalarMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(ScalarMode::Rational),
            "float" => Ok(ScalarMode::Float),
            other => Err(Error::Parse(format!("unknown scalar mode {other:?}"))),
        }
    }
}

/// A field element. Everything above the matrix layer is generic over this trait.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    const MODE: ScalarMode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;

    /// Exact zero test.
    fn is_zero(&self) -> bool;

    /// |x| as a float, for pivot selection and norms.
    fn magnitude(&self) -> f64;

    /// `acc += a * b`
    fn mul_add(acc: &mut Self, a: &Self, b: &Self);

    /// Whether `self` counts as zero during elimination on a matrix whose
    /// largest entry has magnitude `scale`.
    fn is_negligible(&self, scale: f64) -> bool;

    /// Rank, with `scale` bounding the rounding noise expected in `m`
    /// (ignored in exact arithmetic).
    fn rank_scaled(m: &Matrix<Self>, scale: f64) -> usize;

    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl Scalar for Rational {
    const MODE: ScalarMode = ScalarMode::Rational;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn mul_add(acc: &mut Self, a: &Self, b: &Self) {
        if Zero::is_zero(a) || Zero::is_zero(b) {
            return;
        }
        *acc += a * b;
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        Zero::is_zero(self)
    }

    fn rank_scaled(m: &Matrix<Self>, _scale: f64) -> usize {
        linalg::bareiss_rank(m)
    }

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(Self::from_i64(n.as_i64().unwrap_or_default())),
            other => Err(Error::Parse(format!(
                "rational entries must be strings \"p/q\" or \"p\", got {other}"
            ))),
        }
    }
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn mul_add(acc: &mut Self, a: &Self, b: &Self) {
        *acc += a * b;
    }

    fn is_negligible(&self, scale: f64) -> bool {
        self.abs() <= pivot_tolerance(scale)
    }

    fn rank_scaled(m: &Matrix<Self>, scale: f64) -> usize {
        linalg::float_rank(m, scale)
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("unrepresentable number {n}"))),
            Value::String(s) => parse_rational(s).map(|q| f64::from_rational(&q)),
            other => Err(Error::Parse(format!("float entries must be numbers, got {other}"))),
        }
    }
}

/// Parses `"-p/q"`, `"p/q"` or `"p"` (decimal digits, `q > 0`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let p = BigInt::from_str(num).map_err(|_| bad())?;
    let q = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let q = BigInt::from_str(d).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            q
        }
    };
    Ok(Rational::new(p, q))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Reads a float's shortest round-trip decimal expansion as an exact rational,
/// so `0.1` becomes `1/10` rather than its binary expansion.
pub fn decimal_rational(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let text = format!("{x:e}");
    let (mantissa, exp) = text.split_once('e')?;
    let exp: i32 = exp.parse().ok()?;
    let negative = mantissa.starts_with('-');
    let mantissa = mantissa.trim_start_matches('-');
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = BigInt::from_str(&format!("{int_part}{frac_part}")).ok()?;
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    let mut q = if shift >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, shift as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-shift) as usize))
    };
    if negative {
        q = -q;
    }
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn parses_canonical_forms() {
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational("-6/4").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("0/7").unwrap(), q(0, 1));
    }

    #[test]
    fn rejects_malformed_rationals() {
        for s in ["", "-", "1/", "/2", "1/0", "1/-2", "+1", "1.5", "a/b", "1/2/3", " 1"] {
            assert!(parse_rational(s).is_err(), "{s:?} accepted");
        }
    }

    #[test]
    fn arithmetic_stays_canonical() {
        let x = q(1, 6) + q(1, 3);
        assert_eq!(x.numer(), &BigInt::from(1));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&x), "1/2");
        assert_eq!(format_rational(&(q(-4, 2))), "-2");
    }

    #[test]
    fn decimal_reading() {
        assert_eq!(decimal_rational(0.1).unwrap(), q(1, 10));
        assert_eq!(decimal_rational(-2.5).unwrap(), q(-5, 2));
        assert_eq!(decimal_rational(1e3).unwrap(), q(1000, 1));
        assert_eq!(decimal_rational(0.0).unwrap(), q(0, 1));
        assert!(decimal_rational(f64::NAN).is_none());
    }
}
