//! Non-classical effects of sequential measurement.
//!
//! "A and also B" always means A measured first, then B: its probability is
//! `‖Π_B Π_A ψ‖²`. With non-commuting projectors this can exceed `P(B)`
//! (conjunction effect), differ from the reversed order (order effect), and
//! break the law of total probability over a partition measured first.

use crate::born::{collapse_onto, projector_chain_probability, QuantumState};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Projector, StateVector};
use crate::tolerance::Tolerances;
use crate::variable::DecisionVariable;

#[derive(Debug, Clone, PartialEq)]
pub struct ConjunctionReport {
    pub p_a: f64,
    pub p_b: f64,
    /// `‖Π_B Π_A ψ‖²`: A first, then B.
    pub p_a_then_b: f64,
    /// `‖Π_A Π_B ψ‖²`: B first, then A.
    pub p_b_then_a: f64,
    /// `p_a_then_b > p_b`, impossible for classical events.
    pub conjunction_flag: bool,
    /// `|p_a_then_b - p_b_then_a|`.
    pub order_asymmetry: f64,
}

pub fn conjunction_report(
    psi: &StateVector,
    a: &Projector,
    b: &Projector,
) -> Result<ConjunctionReport> {
    let margin = Tolerances::default().comparison;
    let p_a = psi.probability_of(a)?;
    let p_b = psi.probability_of(b)?;
    let p_a_then_b = projector_chain_probability(psi, &[a, b])?;
    let p_b_then_a = projector_chain_probability(psi, &[b, a])?;
    Ok(ConjunctionReport {
        p_a,
        p_b,
        p_a_then_b,
        p_b_then_a,
        conjunction_flag: p_a_then_b > p_b + margin,
        order_asymmetry: (p_a_then_b - p_b_then_a).abs(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TotalProbabilityReport {
    /// `‖Π_A ψ‖²`.
    pub p_direct: f64,
    /// `Σ_j ‖Π_A Π_j ψ‖²`, partition measured first.
    pub p_via_partition: f64,
    /// `p_direct - p_via_partition`.
    pub interference: f64,
    /// `(u_j, ‖Π_A Π_j ψ‖²)` per partition value.
    pub partition_terms: Vec<(f64, f64)>,
}

pub fn total_probability_report(
    psi: &StateVector,
    partition: &DecisionVariable,
    target: &Projector,
) -> Result<TotalProbabilityReport> {
    check_partition(partition)?;
    let p_direct = psi.probability_of(target)?;
    let partition_terms = partition
        .values()
        .iter()
        .zip(partition.projectors())
        .map(|(u, pj)| Ok((*u, projector_chain_probability(psi, &[pj, target])?)))
        .collect::<Result<Vec<_>>>()?;
    let p_via_partition = partition_terms.iter().map(|(_, p)| p).sum::<f64>();
    Ok(TotalProbabilityReport {
        p_direct,
        p_via_partition,
        interference: p_direct - p_via_partition,
        partition_terms,
    })
}

fn check_partition(partition: &DecisionVariable) -> Result<()> {
    let n = partition.dim();
    let mut sum = ComplexMatrix::zeros(n, n);
    for p in partition.projectors() {
        sum = &sum + p.matrix();
    }
    let deviation = (&sum - &ComplexMatrix::identity(n)).frobenius_norm();
    if deviation > Tolerances::default().projector {
        return Err(Error::NotAPartition { deviation });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SureThingReport {
    /// The two condition values, `X` then `not-X`.
    pub condition_values: [f64; 2],
    /// `P(C | X)` and `P(C | not-X)` by collapse-then-measure.
    pub p_choice_given: [f64; 2],
    /// Unconditioned `‖Π_C ψ‖²`.
    pub p_choice: f64,
    pub threshold: f64,
    /// Both conditionals above the threshold (by more than the comparison
    /// tolerance) while `P(C)` is not.
    pub violation_flag: bool,
    /// Total-probability interference of the choice over the condition.
    pub interference: f64,
}

pub const DEFAULT_SURE_THING_THRESHOLD: f64 = 0.5;

pub fn sure_thing_check(
    psi: &StateVector,
    condition: &DecisionVariable,
    choice: &Projector,
    threshold: f64,
) -> Result<SureThingReport> {
    let values = condition.values();
    if values.len() != 2 {
        return Err(Error::InvalidArgument(format!(
            "sure-thing condition must have exactly 2 values, {} has {}",
            condition.name(),
            values.len()
        )));
    }
    let tol = Tolerances::default();
    let mut p_choice_given = [0.0; 2];
    for (slot, proj) in p_choice_given.iter_mut().zip(condition.projectors()) {
        let collapsed = collapse_onto(psi, proj, &tol)?;
        *slot = collapsed.probability_of(choice)?;
    }
    let p_choice = psi.probability_of(choice)?;
    let lowest = p_choice_given[0].min(p_choice_given[1]);
    let interference = total_probability_report(psi, condition, choice)?.interference;
    Ok(SureThingReport {
        condition_values: [values[0], values[1]],
        p_choice_given,
        p_choice,
        threshold,
        violation_flag: lowest > threshold + tol.comparison && p_choice <= threshold,
        interference,
    })
}

/// `‖Π_A Π_B - Π_B Π_A‖_F`.
pub fn commutation_defect(a: &Projector, b: &Projector) -> Result<f64> {
    a.operator().commutator_norm(b.operator())
}
