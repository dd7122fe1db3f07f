//! JSON scenario documents.
//!
//! ```json
//! {
//!   "context": "clinic",
//!   "dimension": 2,
//!   "state": { "vector": [[1, 0], [0, 0]] },
//!   "variables": [
//!     { "name": "A", "values": [1, 0], "basis_angle_degrees": 40 },
//!     { "name": "B", "values": [1, 0],
//!       "eigenvectors": [[[[0.34, 0], [0.94, 0]]], [[[-0.94, 0], [0.34, 0]]]] }
//!   ],
//!   "queries": [{ "kind": "conjunction",
//!                 "first": { "variable": "A", "value": 1 },
//!                 "second": { "variable": "B", "value": 1 } }]
//! }
//! ```
//!
//! Complex numbers are `[re, im]`. `eigenvectors` lists, per value, the
//! vectors spanning its eigenspace. The two-dimensional shorthand
//! `basis_angle_degrees: α` puts `values[0]` at `(cos α, sin α)` and
//! `values[1]` at `α + 90°`. The state is either `vector` or `density`.

use serde::{Deserialize, Serialize};
use serde_json::error::Category;

use super::{Query, Scenario, ScenarioError};
use crate::born::State;
use crate::linalg::{ComplexMatrix, DensityOperator, StateVector, C64};
use crate::variable::DecisionVariable;

type Complex = [f64; 2];

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    #[serde(default)]
    context: String,
    dimension: usize,
    state: StateDoc,
    #[serde(default)]
    variables: Vec<VariableDoc>,
    #[serde(default)]
    queries: Vec<Query>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum StateDoc {
    Vector(Vec<Complex>),
    Density(Vec<Vec<Complex>>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VariableDoc {
    name: String,
    values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basis_angle_degrees: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eigenvectors: Option<Vec<Vec<Vec<Complex>>>>,
}

fn to_c64(v: &[Complex]) -> Vec<C64> {
    v.iter().map(|[re, im]| C64::new(*re, *im)).collect()
}

fn from_c64(v: &[C64]) -> Vec<Complex> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

/// Strips serde_json's trailing " at line L column C".
fn bare_message(e: &serde_json::Error) -> String {
    let full = e.to_string();
    match full.rfind(" at line ") {
        Some(i) => full[..i].to_string(),
        None => full,
    }
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: Document = match serde_path_to_error::deserialize(&mut *de) {
        Ok(doc) => doc,
        Err(e) => {
            let path = e.path().to_string();
            let inner = e.into_inner();
            return Err(match inner.classify() {
                Category::Data => ScenarioError::Validation {
                    location: format!("{path} (line {}, column {})", inner.line(), inner.column()),
                    message: bare_message(&inner),
                },
                _ => ScenarioError::Syntax {
                    line: inner.line(),
                    column: inner.column(),
                    message: bare_message(&inner),
                },
            });
        }
    };
    de.end().map_err(|e| ScenarioError::Syntax {
        line: e.line(),
        column: e.column(),
        message: bare_message(&e),
    })?;
    build(doc)
}

fn build(doc: Document) -> Result<Scenario, ScenarioError> {
    let r = doc.dimension;
    if r == 0 {
        return Err(ScenarioError::validation(
            "dimension",
            "dimension must be at least 1",
        ));
    }
    let state = match &doc.state {
        StateDoc::Vector(v) => {
            check_len("state.vector", r, v.len())?;
            State::Pure(
                StateVector::new(to_c64(v))
                    .map_err(|e| ScenarioError::validation("state.vector", e))?,
            )
        }
        StateDoc::Density(rows) => {
            check_len("state.density", r, rows.len())?;
            for (i, row) in rows.iter().enumerate() {
                check_len(&format!("state.density[{i}]"), r, row.len())?;
            }
            let data = rows.iter().flat_map(|row| to_c64(row)).collect();
            let m = ComplexMatrix::from_vec(r, r, data)
                .map_err(|e| ScenarioError::validation("state.density", e))?;
            State::Mixed(
                DensityOperator::new(m)
                    .map_err(|e| ScenarioError::validation("state.density", e))?,
            )
        }
    };
    let variables = doc
        .variables
        .iter()
        .enumerate()
        .map(|(i, v)| build_variable(i, v, r))
        .collect::<Result<Vec<_>, _>>()?;
    Scenario::new(doc.context, state, variables, doc.queries)
}

fn check_len(location: &str, expected: usize, found: usize) -> Result<(), ScenarioError> {
    if expected != found {
        return Err(ScenarioError::validation(
            location,
            crate::Error::DimensionMismatch { expected, found },
        ));
    }
    Ok(())
}

fn build_variable(i: usize, v: &VariableDoc, r: usize) -> Result<DecisionVariable, ScenarioError> {
    let loc = format!("variables[{i}] ({:?})", v.name);
    let fail = |e: crate::Error| ScenarioError::validation(loc.clone(), e);
    match (&v.basis_angle_degrees, &v.eigenvectors) {
        (Some(alpha), None) => {
            if r != 2 {
                return Err(ScenarioError::validation(
                    loc,
                    "basis_angle_degrees needs dimension 2",
                ));
            }
            let values: [f64; 2] = v.values.as_slice().try_into().map_err(|_| {
                ScenarioError::validation(loc.clone(), "basis_angle_degrees needs exactly 2 values")
            })?;
            DecisionVariable::from_angle_degrees(v.name.clone(), values, *alpha).map_err(fail)
        }
        (None, Some(spaces)) => {
            let mut basis = Vec::with_capacity(spaces.len());
            for (j, space) in spaces.iter().enumerate() {
                let mut vectors = Vec::with_capacity(space.len());
                for (k, x) in space.iter().enumerate() {
                    check_len(&format!("{loc}.eigenvectors[{j}][{k}]"), r, x.len())?;
                    vectors.push(StateVector::new(to_c64(x)).map_err(|e| {
                        ScenarioError::validation(format!("{loc}.eigenvectors[{j}][{k}]"), e)
                    })?);
                }
                basis.push(vectors);
            }
            DecisionVariable::from_spectrum(v.name.clone(), v.values.clone(), basis).map_err(fail)
        }
        (Some(_), Some(_)) => Err(ScenarioError::validation(
            loc,
            "give either basis_angle_degrees or eigenvectors, not both",
        )),
        (None, None) => Err(ScenarioError::validation(
            loc,
            "missing basis_angle_degrees or eigenvectors",
        )),
    }
}

impl Scenario {
    /// Serializes back to a document, variables as explicit eigenvectors.
    /// Floats are written in shortest round-trip form, so parsing the output
    /// reproduces the same numbers exactly.
    pub fn to_document(&self) -> String {
        let state = match &self.initial_state {
            State::Pure(psi) => StateDoc::Vector(from_c64(psi.amplitudes())),
            State::Mixed(rho) => {
                StateDoc::Density(rho.matrix().to_rows().iter().map(|r| from_c64(r)).collect())
            }
        };
        let variables = self
            .variables
            .iter()
            .map(|v| VariableDoc {
                name: v.name().to_string(),
                values: v.values().to_vec(),
                basis_angle_degrees: None,
                eigenvectors: Some(
                    v.eigenbasis()
                        .iter()
                        .map(|space| space.iter().map(|x| from_c64(x.amplitudes())).collect())
                        .collect(),
                ),
            })
            .collect();
        let doc = Document {
            context: self.context.clone(),
            dimension: self.dimension,
            state,
            variables,
            queries: self.queries.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("documents serialize")
    }
}
