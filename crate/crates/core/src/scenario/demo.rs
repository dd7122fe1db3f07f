//! Built-in demonstrations.

use super::report::{QueryResult, Report};
use super::{ProjectorSpec, Query, Scenario, ScenarioError};
use crate::born::State;
use crate::error::Result;
use crate::linalg::StateVector;
use crate::phenomena::DEFAULT_SURE_THING_THRESHOLD;
use crate::random::{random_density, seeded};
use crate::spin::{comparison_report, marginal_plus, sample_phi, Direction};
use crate::variable::DecisionVariable;

/// Two yes/no questions in the plane: `A` with "yes" at `angle_a`, `B` with
/// "yes" at `angle_b`, state `(1, 0)`. The defaults 40°/70° show the
/// conjunction, order and total-probability effects at once.
pub fn medical_scenario(
    angle_a: f64,
    angle_b: f64,
) -> std::result::Result<Scenario, ScenarioError> {
    let var = |name: &str, alpha: f64| {
        DecisionVariable::from_angle_degrees(name, [1.0, 0.0], alpha)
            .map_err(|e| ScenarioError::validation(format!("variable {name}"), e))
    };
    let yes = |name: &str| ProjectorSpec::new(name, 1.0);
    Scenario::new(
        "medical",
        State::Pure(StateVector::basis(2, 0)),
        vec![var("A", angle_a)?, var("B", angle_b)?],
        vec![
            Query::Distribution {
                variable: "A".into(),
            },
            Query::Distribution {
                variable: "B".into(),
            },
            Query::Conjunction {
                first: yes("A"),
                second: yes("B"),
            },
            Query::TotalProbability {
                partition: "B".into(),
                target: yes("A"),
            },
            Query::SureThing {
                condition: "B".into(),
                choice: yes("A"),
                threshold: DEFAULT_SURE_THING_THRESHOLD,
            },
        ],
    )
}

/// Hidden-variable versus qubit conditional for directions `0` and `Δ`.
pub fn spin_report(delta_degrees: f64, samples: usize, seed: u64) -> Result<Report> {
    let a = Direction::from_degrees(0.0);
    let b = Direction::from_degrees(delta_degrees);
    let phi = sample_phi(samples, seed)?;
    let cmp = comparison_report(a, b, samples, seed)?;
    let mut rep = Report::new("spin", 2, seed);
    rep.results.push(QueryResult {
        index: 1,
        kind: "spin_model".into(),
        echo: format!(
            "{{\"kind\":\"spin_model\",\"delta_degrees\":{},\"samples\":{samples}}}",
            serde_json::to_string(&delta_degrees).expect("finite")
        ),
        outputs: vec![
            ("marginal_plus_a".into(), marginal_plus(a, &phi)),
            ("marginal_plus_b".into(), marginal_plus(b, &phi)),
            ("classical_estimate".into(), cmp.classical_estimate),
            ("classical_analytic".into(), cmp.classical_analytic),
            ("quantum".into(), cmp.quantum),
            ("gap".into(), cmp.quantum - cmp.classical_estimate),
        ],
        flags: vec![(
            "gap_detected".into(),
            (cmp.quantum - cmp.classical_estimate).abs() >= 0.05,
        )],
    });
    Ok(rep)
}

/// A seeded full-rank random density of dimension `dim`, checked by exact
/// reconstruction from its informationally complete probabilities.
pub fn reconstruct_scenario(dim: usize, seed: u64) -> std::result::Result<Scenario, ScenarioError> {
    if dim < 2 {
        return Err(ScenarioError::validation(
            "dim",
            "reconstruction needs dimension at least 2",
        ));
    }
    let rho = random_density(&mut seeded(seed), dim, dim);
    Scenario::new(
        "reconstruct",
        State::Mixed(rho),
        vec![],
        vec![Query::ReconstructCheck { noise: 0.0 }],
    )
}
