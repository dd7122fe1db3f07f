//! Probability calculus on states and decision variables.
//!
//! Outcome probabilities are `‖Π_j ψ‖²` for pure states and `trace(ρ Π_j)`
//! for density operators. A measurement with outcome `u_j` collapses `ψ` to
//! `Π_j ψ / ‖Π_j ψ‖`; a chain of measurements has probability
//! `‖Π_n ⋯ Π_1 ψ‖²`.

mod likelihood;
mod reconstruct;

pub use likelihood::{gpm_evaluate, likelihood_effect, GpmSample, LikelihoodTable};
pub use reconstruct::{
    hermitian_basis, ic_effect_basis, reconstruct_density, reconstruct_density_with,
    sample_measure, Reconstruction,
};

use crate::error::{Error, Result};
use crate::linalg::{
    norm, spectral_function, DensityOperator, HermitianOperator, Projector, StateVector,
};
use crate::tolerance::Tolerances;
use crate::variable::DecisionVariable;

/// Anything that assigns probabilities to projectors and expectations to observables.
pub trait QuantumState {
    fn dim(&self) -> usize;

    /// Probability of the event with projector `p`.
    fn probability_of(&self, p: &Projector) -> Result<f64>;

    /// Expected value of `a`.
    fn expectation_of(&self, a: &HermitianOperator) -> Result<f64>;
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

impl QuantumState for StateVector {
    fn dim(&self) -> usize {
        StateVector::dim(self)
    }

    fn probability_of(&self, p: &Projector) -> Result<f64> {
        check_dim(self.dim(), p.dim())?;
        Ok(norm(&p.apply(self.amplitudes())?).powi(2))
    }

    fn expectation_of(&self, a: &HermitianOperator) -> Result<f64> {
        check_dim(self.dim(), a.dim())?;
        a.expectation(self)
    }
}

impl QuantumState for DensityOperator {
    fn dim(&self) -> usize {
        DensityOperator::dim(self)
    }

    fn probability_of(&self, p: &Projector) -> Result<f64> {
        check_dim(self.dim(), p.dim())?;
        self.trace_with(p.matrix())
    }

    fn expectation_of(&self, a: &HermitianOperator) -> Result<f64> {
        check_dim(self.dim(), a.dim())?;
        self.trace_with(a.matrix())
    }
}

/// Pure or mixed state.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Pure(StateVector),
    Mixed(DensityOperator),
}

impl State {
    pub fn density(&self) -> DensityOperator {
        match self {
            State::Pure(psi) => DensityOperator::pure(psi),
            State::Mixed(rho) => rho.clone(),
        }
    }
}

impl QuantumState for State {
    fn dim(&self) -> usize {
        match self {
            State::Pure(s) => s.dim(),
            State::Mixed(r) => r.dim(),
        }
    }

    fn probability_of(&self, p: &Projector) -> Result<f64> {
        match self {
            State::Pure(s) => s.probability_of(p),
            State::Mixed(r) => r.probability_of(p),
        }
    }

    fn expectation_of(&self, a: &HermitianOperator) -> Result<f64> {
        match self {
            State::Pure(s) => s.expectation_of(a),
            State::Mixed(r) => r.expectation_of(a),
        }
    }
}

impl From<StateVector> for State {
    fn from(s: StateVector) -> Self {
        State::Pure(s)
    }
}

impl From<DensityOperator> for State {
    fn from(r: DensityOperator) -> Self {
        State::Mixed(r)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    pub values: Vec<f64>,
    pub probabilities: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn probability_of(&self, value: f64) -> Option<f64> {
        let tol = Tolerances::default().value_match;
        self.values
            .iter()
            .position(|u| (u - value).abs() <= tol)
            .map(|j| self.probabilities[j])
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.probabilities)
            .map(|(u, p)| u * p)
            .sum()
    }

    /// `Σ f(u_j) p_j`.
    pub fn mean_of(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.values
            .iter()
            .zip(&self.probabilities)
            .map(|(u, p)| f(*u) * p)
            .sum()
    }
}

/// `|⟨from|to⟩|²`.
pub fn transition_probability(from: &StateVector, to: &StateVector) -> Result<f64> {
    Ok(from.inner(to)?.norm_sqr().min(1.0))
}

pub fn outcome_distribution<S: QuantumState + ?Sized>(
    state: &S,
    v: &DecisionVariable,
) -> Result<OutcomeDistribution> {
    check_dim(state.dim(), v.dim())?;
    let probabilities = v
        .projectors()
        .iter()
        .map(|p| state.probability_of(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(OutcomeDistribution {
        values: v.values().to_vec(),
        probabilities,
    })
}

/// Post-measurement state after observing `value` for `v`.
pub fn collapse(state: &StateVector, v: &DecisionVariable, value: f64) -> Result<StateVector> {
    collapse_with(state, v, value, &Tolerances::default())
}

pub fn collapse_with(
    state: &StateVector,
    v: &DecisionVariable,
    value: f64,
    tol: &Tolerances,
) -> Result<StateVector> {
    check_dim(state.dim(), v.dim())?;
    let p = v.projector_for(value)?;
    collapse_onto(state, p, tol)
}

/// `Π ψ / ‖Π ψ‖`.
pub fn collapse_onto(state: &StateVector, p: &Projector, tol: &Tolerances) -> Result<StateVector> {
    check_dim(state.dim(), p.dim())?;
    let projected = p.apply(state.amplitudes())?;
    let probability = norm(&projected).powi(2);
    if probability <= tol.zero_probability {
        return Err(Error::ZeroProbabilityOutcome { probability });
    }
    StateVector::normalized(projected)
}

/// Probability of observing each `(variable, value)` in order.
pub fn sequential_probability(
    state: &StateVector,
    steps: &[(&DecisionVariable, f64)],
) -> Result<f64> {
    let projectors = steps
        .iter()
        .map(|(v, value)| {
            check_dim(state.dim(), v.dim())?;
            v.projector_for(*value)
        })
        .collect::<Result<Vec<_>>>()?;
    projector_chain_probability(state, &projectors)
}

/// `‖Π_n ⋯ Π_1 ψ‖²` for projectors listed in measurement order.
pub fn projector_chain_probability(state: &StateVector, projectors: &[&Projector]) -> Result<f64> {
    let mut amp = state.amplitudes().to_vec();
    for p in projectors {
        check_dim(state.dim(), p.dim())?;
        amp = p.apply(&amp)?;
    }
    Ok(norm(&amp).powi(2))
}

/// `trace(Π_n ⋯ Π_1 ρ Π_1 ⋯ Π_n)`, the mixed-state chain probability.
pub fn density_chain_probability(rho: &DensityOperator, projectors: &[&Projector]) -> Result<f64> {
    let mut m = rho.matrix().clone();
    for p in projectors {
        check_dim(rho.dim(), p.dim())?;
        m = p.matrix().matmul(&m)?.matmul(p.matrix())?;
    }
    Ok(m.trace()?.re)
}

pub fn expectation<S: QuantumState + ?Sized>(state: &S, v: &DecisionVariable) -> Result<f64> {
    check_dim(state.dim(), v.dim())?;
    state.expectation_of(v.operator())
}

/// `trace(ρ f(A))`.
pub fn expectation_of_function(
    rho: &DensityOperator,
    v: &DecisionVariable,
    f: impl Fn(f64) -> f64,
) -> Result<f64> {
    check_dim(rho.dim(), v.dim())?;
    let fa = spectral_function(v.operator(), f)?;
    rho.trace_with(fa.matrix())
}
