use rand::Rng;
use rand_distr::StandardNormal;

use super::report::{QueryResult, Report};
use super::{ProjectorSpec, Query, Scenario, ScenarioError};
use crate::born::{
    density_chain_probability, expectation, ic_effect_basis, outcome_distribution,
    projector_chain_probability, reconstruct_density, sample_measure, GpmSample, State,
};
use crate::error::{Error, Result};
use crate::linalg::{Projector, StateVector};
use crate::phenomena::{conjunction_report, sure_thing_check, total_probability_report};
use crate::random::seeded;

/// Runs every query from the initial state, in order. `seed` drives the
/// only random step, noise in `reconstruct_check`.
pub fn run_scenario(s: &Scenario, seed: u64) -> std::result::Result<Report, ScenarioError> {
    let mut report = Report::new(s.context(), s.dimension(), seed);
    for (i, q) in s.queries().iter().enumerate() {
        let index = i + 1;
        let (outputs, flags) =
            run_query(s, q, seed, index).map_err(|source| ScenarioError::Engine {
                query_index: index,
                source,
            })?;
        report.results.push(QueryResult {
            index,
            kind: q.kind().to_string(),
            echo: q.echo(),
            outputs,
            flags,
        });
    }
    Ok(report)
}

type Outputs = (Vec<(String, f64)>, Vec<(String, bool)>);

fn projector<'a>(s: &'a Scenario, spec: &ProjectorSpec) -> Result<&'a Projector> {
    s.variable(&spec.variable)
        .ok_or_else(|| Error::InvalidArgument(format!("undeclared variable {:?}", spec.variable)))?
        .projector_for(spec.value)
}

fn pure(s: &Scenario) -> Result<&StateVector> {
    match s.initial_state() {
        State::Pure(psi) => Ok(psi),
        State::Mixed(_) => Err(Error::InvalidArgument(
            "query needs a pure initial state".into(),
        )),
    }
}

fn run_query(s: &Scenario, q: &Query, seed: u64, index: usize) -> Result<Outputs> {
    let state = s.initial_state();
    let var = |name: &str| {
        s.variable(name)
            .ok_or_else(|| Error::InvalidArgument(format!("undeclared variable {name:?}")))
    };
    let out = |pairs: &[(&str, f64)]| {
        pairs
            .iter()
            .map(|(n, v)| (n.to_string(), *v))
            .collect::<Vec<_>>()
    };
    Ok(match q {
        Query::Distribution { variable } => {
            let v = var(variable)?;
            let d = outcome_distribution(state, v)?;
            let outputs = d
                .values
                .iter()
                .zip(&d.probabilities)
                .map(|(u, p)| (format!("p({variable}={u})"), *p))
                .collect();
            (outputs, vec![])
        }
        Query::Sequence { steps } => {
            let chain = steps
                .iter()
                .map(|p| projector(s, p))
                .collect::<Result<Vec<_>>>()?;
            let p = match state {
                State::Pure(psi) => projector_chain_probability(psi, &chain)?,
                State::Mixed(rho) => density_chain_probability(rho, &chain)?,
            };
            (out(&[("probability", p)]), vec![])
        }
        Query::Expectation { variable } => {
            let e = expectation(state, var(variable)?)?;
            (out(&[("expectation", e)]), vec![])
        }
        Query::Conjunction { first, second } => {
            let r = conjunction_report(pure(s)?, projector(s, first)?, projector(s, second)?)?;
            (
                out(&[
                    ("p_first", r.p_a),
                    ("p_second", r.p_b),
                    ("p_first_then_second", r.p_a_then_b),
                    ("p_second_then_first", r.p_b_then_a),
                    ("order_asymmetry", r.order_asymmetry),
                ]),
                vec![("conjunction_effect".into(), r.conjunction_flag)],
            )
        }
        Query::TotalProbability { partition, target } => {
            let r = total_probability_report(pure(s)?, var(partition)?, projector(s, target)?)?;
            let mut outputs = out(&[
                ("p_direct", r.p_direct),
                ("p_via_partition", r.p_via_partition),
                ("interference", r.interference),
            ]);
            outputs.extend(
                r.partition_terms
                    .iter()
                    .map(|(u, p)| (format!("p_via({partition}={u})"), *p)),
            );
            (outputs, vec![])
        }
        Query::SureThing {
            condition,
            choice,
            threshold,
        } => {
            let r = sure_thing_check(pure(s)?, var(condition)?, projector(s, choice)?, *threshold)?;
            let [u0, u1] = r.condition_values;
            (
                vec![
                    (
                        format!("p_choice_given({condition}={u0})"),
                        r.p_choice_given[0],
                    ),
                    (
                        format!("p_choice_given({condition}={u1})"),
                        r.p_choice_given[1],
                    ),
                    ("p_choice".into(), r.p_choice),
                    ("threshold".into(), r.threshold),
                    ("interference".into(), r.interference),
                ],
                vec![("sure_thing_violation".into(), r.violation_flag)],
            )
        }
        Query::ReconstructCheck { noise } => {
            let rho = state.density();
            let mut samples = sample_measure(&rho, &ic_effect_basis(s.dimension())?)?;
            if *noise > 0.0 {
                let mut rng = seeded(seed);
                rng.set_stream(index as u64);
                for sample in &mut samples {
                    let z: f64 = rng.sample(StandardNormal);
                    // keep noisy probabilities inside the effect range
                    let p = (sample.probability + noise * z).clamp(0.0, 1.0);
                    *sample = GpmSample::new(sample.effect.clone(), p)?;
                }
            }
            let rec = reconstruct_density(&samples)?;
            let error = rec
                .density
                .matrix()
                .distance(rho.matrix())
                .expect("same dimension");
            (
                out(&[
                    ("reconstruction_error", error),
                    ("residual", rec.residual),
                    ("psd_adjustment", rec.psd_adjustment),
                ]),
                vec![("psd_projected".into(), rec.psd_adjustment > 0.0)],
            )
        }
    })
}
