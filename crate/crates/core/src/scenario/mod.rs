//! Scenario documents, query execution and report emission.
//!
//! A scenario fixes a context label, a Hilbert-space dimension, an initial
//! state, a list of named decision variables and an ordered list of queries.
//! Every query starts from the initial state; collapsed states never leak
//! from one query into the next.

mod demo;
mod document;
mod report;
mod run;

pub use demo::{medical_scenario, reconstruct_scenario, spin_report};
pub use document::parse_scenario;
pub use report::{emit_report, format_float, Format, QueryResult, Report};
pub use run::run_scenario;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::born::State;
use crate::error::Error;
use crate::phenomena::DEFAULT_SURE_THING_THRESHOLD;
use crate::variable::DecisionVariable;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid scenario at {location}: {message}")]
    Validation { location: String, message: String },

    #[error("query {query_index} failed: {source}")]
    Engine {
        /// 1-based, matching report numbering.
        query_index: usize,
        #[source]
        source: Error,
    },
}

impl ScenarioError {
    fn validation(location: impl Into<String>, message: impl ToString) -> Self {
        Self::Validation {
            location: location.into(),
            message: message.to_string(),
        }
    }

    /// Process exit code: 1 for document problems, 2 for engine failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Syntax { .. } | Self::Validation { .. } => 1,
            Self::Engine { .. } => 2,
        }
    }
}

/// A `(variable, value)` pair naming the eigenprojector `Π_j` of `θ = u_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectorSpec {
    pub variable: String,
    pub value: f64,
}

impl ProjectorSpec {
    pub fn new(variable: impl Into<String>, value: f64) -> Self {
        Self {
            variable: variable.into(),
            value,
        }
    }
}

fn default_threshold() -> f64 {
    DEFAULT_SURE_THING_THRESHOLD
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Query {
    /// Outcome probabilities of one variable.
    Distribution {
        variable: String,
    },
    /// Probability of a measurement chain, in the listed order.
    Sequence {
        steps: Vec<ProjectorSpec>,
    },
    Expectation {
        variable: String,
    },
    /// `first` measured, then `second`, and the reverse.
    Conjunction {
        first: ProjectorSpec,
        second: ProjectorSpec,
    },
    /// `partition` measured first, then `target`.
    TotalProbability {
        partition: String,
        target: ProjectorSpec,
    },
    SureThing {
        condition: String,
        choice: ProjectorSpec,
        #[serde(default = "default_threshold")]
        threshold: f64,
    },
    /// Reconstructs the initial state from its probabilities on an
    /// informationally complete effect set, optionally with Gaussian noise.
    ReconstructCheck {
        #[serde(default)]
        noise: f64,
    },
}

impl Query {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Distribution { .. } => "distribution",
            Self::Sequence { .. } => "sequence",
            Self::Expectation { .. } => "expectation",
            Self::Conjunction { .. } => "conjunction",
            Self::TotalProbability { .. } => "total_probability",
            Self::SureThing { .. } => "sure_thing",
            Self::ReconstructCheck { .. } => "reconstruct_check",
        }
    }

    /// Compact JSON form, echoed in reports.
    pub fn echo(&self) -> String {
        serde_json::to_string(self).expect("queries serialize")
    }

    fn needs_pure_state(&self) -> bool {
        matches!(
            self,
            Self::Conjunction { .. } | Self::TotalProbability { .. } | Self::SureThing { .. }
        )
    }
}

/// A validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    context: String,
    dimension: usize,
    initial_state: State,
    variables: Vec<DecisionVariable>,
    queries: Vec<Query>,
}

impl Scenario {
    /// Checks dimensions, name uniqueness and every query reference.
    pub fn new(
        context: impl Into<String>,
        initial_state: State,
        variables: Vec<DecisionVariable>,
        queries: Vec<Query>,
    ) -> Result<Self, ScenarioError> {
        use crate::born::QuantumState;
        let dimension = initial_state.dim();
        for (i, v) in variables.iter().enumerate() {
            let loc = format!("variables[{i}]");
            if v.dim() != dimension {
                return Err(ScenarioError::validation(
                    loc,
                    Error::DimensionMismatch {
                        expected: dimension,
                        found: v.dim(),
                    },
                ));
            }
            if variables[..i].iter().any(|w| w.name() == v.name()) {
                return Err(ScenarioError::validation(
                    loc,
                    format!("variable name {:?} is declared twice", v.name()),
                ));
            }
        }
        let s = Self {
            context: context.into(),
            dimension,
            initial_state,
            variables,
            queries,
        };
        for (i, q) in s.queries.iter().enumerate() {
            s.check_query(q).map_err(|m| {
                ScenarioError::validation(format!("queries[{i}] ({})", q.kind()), m)
            })?;
        }
        Ok(s)
    }

    fn check_query(&self, q: &Query) -> Result<(), String> {
        if q.needs_pure_state() && matches!(self.initial_state, State::Mixed(_)) {
            return Err(format!("{} queries need a pure initial state", q.kind()));
        }
        match q {
            Query::Distribution { variable } | Query::Expectation { variable } => {
                self.lookup(variable).map(drop)
            }
            Query::Sequence { steps } => {
                if steps.is_empty() {
                    return Err("sequence needs at least one step".into());
                }
                steps.iter().try_for_each(|p| self.check_spec(p))
            }
            Query::Conjunction { first, second } => {
                self.check_spec(first)?;
                self.check_spec(second)
            }
            Query::TotalProbability { partition, target } => {
                self.lookup(partition)?;
                self.check_spec(target)
            }
            Query::SureThing {
                condition,
                choice,
                threshold,
            } => {
                let v = self.lookup(condition)?;
                if v.values().len() != 2 {
                    return Err(format!(
                        "sure-thing condition {condition:?} must have exactly 2 values, has {}",
                        v.values().len()
                    ));
                }
                if !(0.0..=1.0).contains(threshold) {
                    return Err(format!("threshold {threshold} is outside [0, 1]"));
                }
                self.check_spec(choice)
            }
            Query::ReconstructCheck { noise } => {
                if self.dimension < 2 {
                    return Err("reconstruction needs dimension at least 2".into());
                }
                if !noise.is_finite() || *noise < 0.0 {
                    return Err(format!(
                        "noise {noise} must be a finite non-negative number"
                    ));
                }
                Ok(())
            }
        }
    }

    fn check_spec(&self, p: &ProjectorSpec) -> Result<(), String> {
        self.lookup(&p.variable)?
            .index_of(p.value)
            .map(drop)
            .map_err(|e| format!("variable {:?}: {e}", p.variable))
    }

    fn lookup(&self, name: &str) -> Result<&DecisionVariable, String> {
        self.variable(name)
            .ok_or_else(|| format!("undeclared variable {name:?}"))
    }

    pub fn context(&self) -> &str {
        &self.context
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn initial_state(&self) -> &State {
        &self.initial_state
    }

    pub fn variables(&self) -> &[DecisionVariable] {
        &self.variables
    }

    pub fn variable(&self, name: &str) -> Option<&DecisionVariable> {
        self.variables.iter().find(|v| v.name() == name)
    }

    pub fn queries(&self) -> &[Query] {
        &self.queries
    }

    /// Same context, queries and variable spectra; operators within `tol`
    /// (Frobenius); states equal up to global phase.
    pub fn equivalent(&self, other: &Self, tol: f64) -> bool {
        let states = match (&self.initial_state, &other.initial_state) {
            (State::Pure(a), State::Pure(b)) => a.same_ray(b, tol),
            (State::Mixed(a), State::Mixed(b)) => {
                a.matrix().distance(b.matrix()).is_some_and(|d| d <= tol)
            }
            _ => false,
        };
        let variables = self.variables.len() == other.variables.len()
            && self.variables.iter().zip(&other.variables).all(|(a, b)| {
                a.name() == b.name()
                    && a.values() == b.values()
                    && a.operator()
                        .matrix()
                        .distance(b.operator().matrix())
                        .is_some_and(|d| d <= tol)
            });
        self.context == other.context
            && self.dimension == other.dimension
            && states
            && variables
            && self.queries == other.queries
    }
}
