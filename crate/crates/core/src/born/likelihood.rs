use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityOperator, Effect};
use crate::tolerance::Tolerances;
use crate::variable::DecisionVariable;

/// Conditional probabilities `p(z | θ = u_j)` of discrete data labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LikelihoodTable {
    variable: DecisionVariable,
    labels: Vec<String>,
    /// `entries[z][j] = p(labels[z] | values[j])`.
    entries: Vec<Vec<f64>>,
}

impl LikelihoodTable {
    pub fn new(
        variable: DecisionVariable,
        labels: Vec<String>,
        entries: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let tol = Tolerances::default();
        let m = variable.values().len();
        if labels.len() != entries.len() || labels.is_empty() {
            return Err(Error::InvalidLikelihood(format!(
                "{} labels for {} rows",
                labels.len(),
                entries.len()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidLikelihood(format!("duplicate label {l:?}")));
            }
        }
        for (label, row) in labels.iter().zip(&entries) {
            if row.len() != m {
                return Err(Error::InvalidLikelihood(format!(
                    "row {label:?} has {} entries, variable has {m} values",
                    row.len()
                )));
            }
            if let Some(p) = row.iter().find(|p| !(0.0..=1.0).contains(*p)) {
                return Err(Error::InvalidLikelihood(format!(
                    "entry {p} of row {label:?} is outside [0, 1]"
                )));
            }
        }
        for j in 0..m {
            let total: f64 = entries.iter().map(|row| row[j]).sum();
            if (total - 1.0).abs() > tol.likelihood_sum {
                return Err(Error::InvalidLikelihood(format!(
                    "likelihoods for value {} sum to {total}",
                    variable.values()[j]
                )));
            }
        }
        Ok(Self {
            variable,
            labels,
            entries,
        })
    }

    pub fn variable(&self) -> &DecisionVariable {
        &self.variable
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Likelihood row of label `z`, one entry per variable value.
    pub fn row(&self, z: &str) -> Result<&[f64]> {
        self.labels
            .iter()
            .position(|l| l == z)
            .map(|i| self.entries[i].as_slice())
            .ok_or_else(|| Error::UnknownDataLabel(z.to_string()))
    }
}

/// `F(z) = Σ_j p(z | u_j) Π_j`.
///
/// For degenerate variables the eigenspace projectors stand in for the
/// rank-one `|b;j⟩⟨b;j|`.
pub fn likelihood_effect(table: &LikelihoodTable, z: &str) -> Result<Effect> {
    let row = table.row(z)?;
    let n = table.variable.dim();
    let mut m = ComplexMatrix::zeros(n, n);
    for (p, proj) in row.iter().zip(table.variable.projectors()) {
        m = &m + &proj.matrix().scale_real(*p);
    }
    Effect::new(m)
}

/// An effect and the probability a generalized measure assigns to it.
#[derive(Debug, Clone, PartialEq)]
pub struct GpmSample {
    pub effect: Effect,
    pub probability: f64,
}

impl GpmSample {
    pub fn new(effect: Effect, probability: f64) -> Result<Self> {
        let slack = Tolerances::default().effect;
        if !probability.is_finite() || probability < -slack || probability > 1.0 + slack {
            return Err(Error::InvalidArgument(format!(
                "probability {probability} is outside [0, 1]"
            )));
        }
        Ok(Self {
            effect,
            probability,
        })
    }
}

/// `μ(F) = trace(ρ F)`.
pub fn gpm_evaluate(rho: &DensityOperator, f: &Effect) -> Result<f64> {
    if rho.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: f.dim(),
        });
    }
    rho.trace_with(f.matrix())
}
