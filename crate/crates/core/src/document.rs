//! JSON code documents.
//!
//! ```json
//! {
//!   "d": 3,
//!   "n": 3,
//!   "stabilizers": ["X1.Z1.I", {"phase": 0, "z": [1, 0, 1], "x": [0, 1, 0]}, "I.Z1.X1"],
//!   "codewords": ["I.I.I", "X1Z1.Z1.Z2", "X1Z2.Z1.Z1"],
//!   "errors": ["Z1.I.I"]
//! }
//! ```
//!
//! Operators are either text in the Pauli grammar or structured exponent
//! lists; both forms may be mixed. `codewords` and `errors` are optional.

use serde::{Deserialize, Serialize};

use crate::cws::CwsCode;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::stabilizer::GeneratorSet;
use crate::zmod::Modulus;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorSpec {
    Text(String),
    Structured {
        #[serde(default)]
        phase: i64,
        z: Vec<i64>,
        x: Vec<i64>,
    },
}

impl OperatorSpec {
    pub fn resolve(&self, modulus: Modulus, n: usize) -> Result<PauliOperator> {
        let op = match self {
            OperatorSpec::Text(text) => PauliOperator::parse(text, modulus)?,
            OperatorSpec::Structured { phase, z, x } => PauliOperator::new(modulus, *phase, z, x)?,
        };
        if op.n() != n {
            return Err(Error::DimensionMismatch(format!(
                "operator {op} acts on {} qudits, document declares n = {n}",
                op.n()
            )));
        }
        Ok(op)
    }
}

impl From<&PauliOperator> for OperatorSpec {
    fn from(p: &PauliOperator) -> Self {
        OperatorSpec::Text(p.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDocument {
    pub d: u64,
    pub n: usize,
    pub stabilizers: Vec<OperatorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codewords: Option<Vec<OperatorSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub errors: Option<Vec<OperatorSpec>>,
}

impl CodeDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_generators(gens: &GeneratorSet) -> Self {
        Self {
            d: gens.modulus().value(),
            n: gens.n(),
            stabilizers: gens.generators().iter().map(OperatorSpec::from).collect(),
            codewords: None,
            errors: None,
        }
    }

    pub fn from_code(code: &CwsCode) -> Self {
        Self {
            codewords: Some(code.codewords().iter().map(OperatorSpec::from).collect()),
            ..Self::from_generators(code.stabilizer())
        }
    }

    pub fn modulus(&self) -> Result<Modulus> {
        Modulus::new(self.d)
    }

    /// Resolves operators against this document's `d` and `n`; `what` labels
    /// error messages.
    pub fn resolve_operators(
        &self,
        specs: &[OperatorSpec],
        what: &str,
    ) -> Result<Vec<PauliOperator>> {
        let m = self.modulus()?;
        specs
            .iter()
            .enumerate()
            .map(|(i, s)| {
                s.resolve(m, self.n).map_err(|e| match e {
                    Error::Syntax { position, message } => Error::Syntax {
                        position,
                        message: format!("{what}[{i}]: {message}"),
                    },
                    Error::DimensionMismatch(msg) => {
                        Error::DimensionMismatch(format!("{what}[{i}]: {msg}"))
                    }
                    other => other,
                })
            })
            .collect()
    }

    pub fn generator_set(&self) -> Result<GeneratorSet> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        GeneratorSet::new(self.resolve_operators(&self.stabilizers, "stabilizers")?)
    }

    pub fn codeword_operators(&self) -> Result<Option<Vec<PauliOperator>>> {
        self.codewords
            .as_deref()
            .map(|c| self.resolve_operators(c, "codewords"))
            .transpose()
    }

    pub fn error_operators(&self) -> Result<Option<Vec<PauliOperator>>> {
        self.errors
            .as_deref()
            .map(|c| self.resolve_operators(c, "errors"))
            .transpose()
    }
}
