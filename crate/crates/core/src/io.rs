//! JSON instance files and verification report files.
//!
//! An instance file carries either the four blocks `A`, `B`, `C`, `D` or a
//! single square `matrix` (or both). Rational entries are strings `"p/q"` or
//! `"p"`; float entries are JSON numbers.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::block::BlockInstance;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar, ScalarMode};
use crate::theorems::{verify, verify_strict, Case, TheoremId, VerificationReport};

pub const INSTANCE_SCHEMA: &str = "block-instance/1";

type Q = Matrix<Rational>;

fn rational_mode() -> ScalarMode {
    ScalarMode::Rational
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub schema: String,
    #[serde(default = "rational_mode")]
    pub scalar: ScalarMode,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Value>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Value>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Value>,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Value>,
    /// Free-form provenance, e.g. the generator spec that produced the file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<Value>,
}

/// Which matrix of an instance file a single-matrix command works on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    A,
    B,
    C,
    D,
    M,
}

impl std::str::FromStr for Block {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Self::A),
            "B" | "b" => Ok(Self::B),
            "C" | "c" => Ok(Self::C),
            "D" | "d" => Ok(Self::D),
            "M" | "m" => Ok(Self::M),
            other => Err(Error::Parse(format!("unknown block {other:?} (expected A, B, C, D or M)"))),
        }
    }
}

impl InstanceFile {
    /// Parses and fully validates an instance file.
    pub fn parse(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.schema != INSTANCE_SCHEMA {
            return Err(Error::Parse(format!(
                "unsupported schema {:?} (expected {INSTANCE_SCHEMA:?})",
                file.schema
            )));
        }
        let blocks = [&file.a, &file.b, &file.c, &file.d];
        let present = blocks.iter().filter(|b| b.is_some()).count();
        if present != 0 && present != 4 {
            return Err(Error::Parse("blocks A, B, C, D must be given together".into()));
        }
        if present == 0 && file.matrix.is_none() {
            return Err(Error::Parse("file has neither blocks A-D nor a matrix".into()));
        }
        if file.has_blocks() {
            file.reference_blocks()?;
        }
        if let Some(m) = &file.matrix {
            let m = file.read(m)?;
            if !m.is_square() {
                return Err(Error::Parse(format!("matrix is {}x{}, not square", m.rows(), m.cols())));
            }
        }
        Ok(file)
    }

    pub fn from_blocks<T: Scalar>(inst: &BlockInstance<T>, scalar: ScalarMode) -> Self {
        Self {
            schema: INSTANCE_SCHEMA.into(),
            scalar,
            a: Some(inst.a.to_json()),
            b: Some(inst.b.to_json()),
            c: Some(inst.c.to_json()),
            d: Some(inst.d.to_json()),
            matrix: None,
            origin: None,
        }
    }

    pub fn from_matrix<T: Scalar>(m: &Matrix<T>, scalar: ScalarMode) -> Self {
        Self {
            schema: INSTANCE_SCHEMA.into(),
            scalar,
            a: None,
            b: None,
            c: None,
            d: None,
            matrix: Some(m.to_json()),
            origin: None,
        }
    }

    pub fn has_blocks(&self) -> bool {
        self.a.is_some()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance files always serialize")
    }

    /// Exact value of an entry array: rational strings as written, float
    /// numbers by their shortest decimal expansion.
    fn read(&self, v: &Value) -> Result<Q> {
        match self.scalar {
            ScalarMode::Rational => Q::from_json(v),
            ScalarMode::Float => Matrix::<f64>::from_json(v)?.to_decimal_rational(),
        }
    }

    fn block_value(&self, v: &Option<Value>, name: &str) -> Result<Q> {
        let v = v
            .as_ref()
            .ok_or_else(|| Error::Parse(format!("file has no block {name}")))?;
        self.read(v).map_err(|e| Error::Parse(format!("block {name}: {e}")))
    }

    pub fn reference_blocks(&self) -> Result<BlockInstance<Rational>> {
        BlockInstance::new(
            self.block_value(&self.a, "A")?,
            self.block_value(&self.b, "B")?,
            self.block_value(&self.c, "C")?,
            self.block_value(&self.d, "D")?,
        )
        .map_err(|e| Error::Parse(e.to_string()))
    }

    /// The requested matrix; `M` is the `matrix` field if present and the
    /// assembled blocks otherwise.
    pub fn reference_matrix(&self, which: Block) -> Result<Q> {
        match (which, &self.matrix) {
            (Block::M, Some(m)) => self.read(m),
            (Block::M, None) => Ok(self.reference_blocks()?.assemble()),
            (Block::A, _) => self.block_value(&self.a, "A"),
            (Block::B, _) => self.block_value(&self.b, "B"),
            (Block::C, _) => self.block_value(&self.c, "C"),
            (Block::D, _) => self.block_value(&self.d, "D"),
        }
    }

    /// `M` when the file has a `matrix` field, `A` otherwise.
    pub fn default_block(&self) -> Block {
        if self.matrix.is_some() {
            Block::M
        } else {
            Block::A
        }
    }

    pub fn case(&self, mode: ScalarMode) -> Result<LoadedCase> {
        let reference = self.reference_blocks()?;
        Ok(match mode {
            ScalarMode::Rational => LoadedCase::Rational(Case::exact(&reference)?),
            ScalarMode::Float => LoadedCase::Float(Case::from_reference(&reference)?),
        })
    }
}

/// A verification case in the arithmetic chosen at run time.
pub enum LoadedCase {
    Rational(Case<Rational>),
    Float(Case<f64>),
}

impl LoadedCase {
    pub fn verify(&self, id: TheoremId, strict: bool) -> Result<VerificationReport> {
        match (self, strict) {
            (Self::Rational(c), false) => verify(id, c),
            (Self::Rational(c), true) => verify_strict(id, c),
            (Self::Float(c), false) => verify(id, c),
            (Self::Float(c), true) => verify_strict(id, c),
        }
    }
}

pub fn read_report(text: &str) -> Result<VerificationReport> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    VerificationReport::from_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::worked_example;

    #[test]
    fn blocks_round_trip() {
        let inst = worked_example::instance();
        let file = InstanceFile::from_blocks(&inst, ScalarMode::Rational);
        let text = file.to_json_string();
        let back = InstanceFile::parse(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.reference_blocks().unwrap(), inst);
        assert_eq!(back.reference_matrix(Block::M).unwrap(), inst.assemble());
    }

    #[test]
    fn float_entries_read_as_decimals() {
        let text = r#"{"schema": "block-instance/1", "scalar": "float", "matrix": [[0.1, 2], [0, -1.5]]}"#;
        let file = InstanceFile::parse(text).unwrap();
        let m = file.reference_matrix(Block::M).unwrap();
        assert_eq!(m[(0, 0)], Rational::new(1.into(), 10.into()));
        assert_eq!(m[(1, 1)], Rational::new((-3).into(), 2.into()));
    }

    #[test]
    fn malformed_files_rejected() {
        let bad = [
            r#"{"schema": "block-instance/2", "matrix": [["1"]]}"#,
            r#"{"schema": "block-instance/1", "matrix": [["1", "2"], ["3"]]}"#,
            r#"{"schema": "block-instance/1", "matrix": [["1/0"]]}"#,
            r#"{"schema": "block-instance/1", "matrix": [[0.5]]}"#,
            r#"{"schema": "block-instance/1", "matrix": [["1", "2"]]}"#,
            r#"{"schema": "block-instance/1", "A": [["1"]]}"#,
            r#"{"schema": "block-instance/1"}"#,
            r#"{"schema": "block-instance/1", "A": [["1"]], "B": [["1"]], "C": [["1", "2"]], "D": [["1"]]}"#,
            "not json",
        ];
        for text in bad {
            assert!(matches!(InstanceFile::parse(text), Err(Error::Parse(_))), "{text}");
        }
    }

    #[test]
    fn loaded_case_runs_both_modes() {
        let file = InstanceFile::from_blocks(&worked_example::instance(), ScalarMode::Rational);
        for mode in [ScalarMode::Rational, ScalarMode::Float] {
            let r = file.case(mode).unwrap().verify(TheoremId::Cor43a, false).unwrap();
            assert!(r.matched);
            assert_eq!(r.mode, mode);
        }
    }
}
