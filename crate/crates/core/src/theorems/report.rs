use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Scalar, ScalarMode};

/// A named truth value: a hypothesis or a statement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
}

/// A matrix kept in its interchange form (rational strings or float numbers),
/// so reports of either scalar mode share one type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: Value,
}

impl NamedMatrix {
    pub fn new<T: Scalar>(name: impl Into<String>, m: &Matrix<T>) -> Self {
        Self {
            name: name.into(),
            matrix: m.to_json(),
        }
    }

    pub fn decode<T: Scalar>(&self) -> Result<Matrix<T>> {
        Matrix::from_json(&self.matrix)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem_id: String,
    pub mode: ScalarMode,
    pub hypotheses: Vec<Check>,
    pub statements: Vec<Check>,
    pub formula_outputs: Vec<NamedMatrix>,
    pub oracle_outputs: Vec<NamedMatrix>,
    #[serde(rename = "match")]
    pub matched: bool,
    /// Relative residuals `‖formula − oracle‖_F / (1 + ‖oracle‖_F)`; float mode only.
    #[serde(default)]
    pub residuals: Vec<Residual>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(theorem_id: &str, mode: ScalarMode) -> Self {
        Self {
            theorem_id: theorem_id.to_string(),
            mode,
            hypotheses: Vec::new(),
            statements: Vec::new(),
            formula_outputs: Vec::new(),
            oracle_outputs: Vec::new(),
            matched: false,
            residuals: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn hypothesis(&mut self, name: impl Into<String>, holds: bool) -> bool {
        self.hypotheses.push(Check {
            name: name.into(),
            holds,
        });
        holds
    }

    pub fn statement(&mut self, name: impl Into<String>, holds: bool) -> bool {
        self.statements.push(Check {
            name: name.into(),
            holds,
        });
        holds
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|c| c.holds)
    }

    pub fn failed_hypotheses(&self) -> Vec<&str> {
        self.hypotheses
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.name.as_str())
            .collect()
    }

    /// All statements true or all false (vacuously true when there are none).
    pub fn statements_uniform(&self) -> bool {
        match self.statements.first() {
            None => true,
            Some(first) => self.statements.iter().all(|c| c.holds == first.holds),
        }
    }

    pub fn statement_value(&self, name: &str) -> Option<bool> {
        self.statements.iter().find(|c| c.name == name).map(|c| c.holds)
    }

    pub fn formula(&self, name: &str) -> Option<&NamedMatrix> {
        self.formula_outputs.iter().find(|m| m.name == name)
    }

    pub fn oracle(&self, name: &str) -> Option<&NamedMatrix> {
        self.oracle_outputs.iter().find(|m| m.name == name)
    }

    /// Records a formula output next to its oracle value and returns whether
    /// they agree (exactly, or within the float tolerance).
    pub fn compare<T: Scalar>(&mut self, name: &str, formula: &Matrix<T>, oracle: &Matrix<T>) -> bool {
        let agree = formula.approx_eq(oracle);
        self.formula_outputs.push(NamedMatrix::new(name, formula));
        self.oracle_outputs.push(NamedMatrix::new(name, oracle));
        if T::MODE == ScalarMode::Float {
            self.residuals.push(Residual {
                name: name.to_string(),
                value: formula.relative_residual(oracle),
            });
        }
        agree
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.value).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("report: {e}")))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
