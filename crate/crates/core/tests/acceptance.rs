//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::Rng;

use qdecision::born::{
    collapse, expectation, gpm_evaluate, ic_effect_basis, outcome_distribution,
    reconstruct_density, sample_measure, sequential_probability, QuantumState,
};
use qdecision::linalg::{ComplexMatrix, Effect, Projector};
use qdecision::phenomena::{conjunction_report, sure_thing_check, total_probability_report};
use qdecision::random::{
    random_density, random_maximal_variable, random_state, random_unitary, seeded,
};
use qdecision::scenario::{emit_report, medical_scenario, parse_scenario, run_scenario, Format};
use qdecision::spin::{
    classical_conditional, marginal_plus, quantum_conditional, sample_phi, Direction,
};
use qdecision::variable::DecisionVariable;

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn born_normalization() -> Outcome {
    let mut worst_sum = 0.0f64;
    let mut worst_mean = 0.0f64;
    for (i, r) in [2usize, 3, 5, 8].into_iter().enumerate() {
        let mut rng = seeded(100 + i as u64);
        for _ in 0..100 {
            let psi = random_state(&mut rng, r);
            let v = random_maximal_variable(&mut rng, "v", r).unwrap();
            let d = outcome_distribution(&psi, &v).unwrap();
            worst_sum = worst_sum.max((d.total() - 1.0).abs());
            worst_mean = worst_mean.max((expectation(&psi, &v).unwrap() - d.mean()).abs());
        }
    }
    check(
        worst_sum <= 1e-10 && worst_mean <= 1e-10,
        format!("max |Σp-1| = {worst_sum:.2e}, max |<A>-Σup| = {worst_mean:.2e}"),
    )
}

fn reconstruction_round_trip() -> Outcome {
    let mut rng = seeded(200);
    let mut worst = 0.0f64;
    for i in 0..50 {
        let r = 2 + i % 4;
        let rank = rng.random_range(1..=r);
        let rho = random_density(&mut rng, r, rank);
        let samples = sample_measure(&rho, &ic_effect_basis(r).unwrap()).unwrap();
        let rec = reconstruct_density(&samples).unwrap();
        worst = worst.max(rec.density.matrix().distance(rho.matrix()).unwrap());
    }
    check(
        worst <= 1e-8,
        format!("max ‖ρ̂-ρ‖_F = {worst:.2e} over 50 densities, r = 2..5"),
    )
}

fn gpm_additivity() -> Outcome {
    let mut rng = seeded(300);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let r = rng.random_range(2..=6usize);
        let rho = random_density(&mut rng, r, r);
        let u = random_unitary(&mut rng, r);
        let (mut w1, mut w2) = (Vec::new(), Vec::new());
        for _ in 0..r {
            let (total, share): (f64, f64) = (rng.random(), rng.random());
            w1.push(total * share);
            w2.push(total * (1.0 - share));
        }
        let effect = |w: &[f64]| {
            Effect::new(&(u.matrix() * &ComplexMatrix::diag_real(w)) * &u.inverse()).unwrap()
        };
        let (f1, f2) = (effect(&w1), effect(&w2));
        let sum = f1.try_add(&f2).unwrap();
        let defect = gpm_evaluate(&rho, &sum).unwrap()
            - gpm_evaluate(&rho, &f1).unwrap()
            - gpm_evaluate(&rho, &f2).unwrap();
        worst = worst.max(defect.abs());
    }
    check(
        worst <= 1e-12,
        format!("max |μ(F₁+F₂)-μ(F₁)-μ(F₂)| = {worst:.2e} over 1000 draws"),
    )
}

fn medical_golden() -> Outcome {
    let rep = run_scenario(&medical_scenario(40.0, 70.0).unwrap(), 0).unwrap();
    let conj = &rep.results[2];
    let total = &rep.results[3];
    let expected = [
        ("p_A", conj.output("p_first").unwrap(), 0.586824),
        ("p_B", conj.output("p_second").unwrap(), 0.116978),
        (
            "p_A_then_B",
            conj.output("p_first_then_second").unwrap(),
            0.440118,
        ),
        (
            "p_B_then_A",
            conj.output("p_second_then_first").unwrap(),
            0.087734,
        ),
        (
            "asymmetry",
            conj.output("order_asymmetry").unwrap(),
            0.352384,
        ),
        (
            "interference",
            total.output("interference").unwrap(),
            0.278335,
        ),
    ];
    let worst = expected
        .iter()
        .map(|(_, got, want)| (got - want).abs())
        .fold(0.0, f64::max);
    let flag = conj.flag("conjunction_effect") == Some(true) && expected[2].1 > expected[1].1;
    let values: Vec<String> = expected
        .iter()
        .map(|(n, got, _)| format!("{n}={got:.6}"))
        .collect();
    check(
        worst <= 1e-6 && flag,
        format!(
            "{}; max deviation {worst:.2e}; conjunction {flag}",
            values.join(" ")
        ),
    )
}

fn classical_recovery() -> Outcome {
    let mut rng = seeded(500);
    let mut worst = 0.0f64;
    let mut flags = 0;
    for _ in 0..50 {
        let r = rng.random_range(2..=6usize);
        let psi = random_state(&mut rng, r);
        let base = random_maximal_variable(&mut rng, "base", r).unwrap();
        let cut = rng.random_range(1..r);
        let split = base.values()[cut];
        // coarse-grainings of one maximal variable share its eigenbasis
        let cond = base
            .apply_function(|u| if u < split { 0.0 } else { 1.0 })
            .unwrap();
        let other = base
            .apply_function(|u| (u * 1.7).floor().rem_euclid(2.0))
            .unwrap();
        let a = other.projectors().last().unwrap();
        let b = cond.projectors()[0].clone();
        let c = conjunction_report(&psi, a, &b).unwrap();
        let t = total_probability_report(&psi, &cond, a).unwrap();
        let s = sure_thing_check(&psi, &cond, a, 0.5).unwrap();
        worst = worst
            .max(c.order_asymmetry)
            .max(t.interference.abs())
            .max(s.interference.abs());
        flags += usize::from(c.conjunction_flag) + usize::from(s.violation_flag);
    }
    check(
        worst <= 1e-10 && flags == 0,
        format!("max asymmetry/interference {worst:.2e}; {flags} non-classical flags in 50 cases"),
    )
}

fn spin_marginals() -> Outcome {
    let n = 1_000_000;
    let start = Instant::now();
    let phi = sample_phi(n, 42).unwrap();
    let worst = (0..8)
        .map(|k| (marginal_plus(Direction::from_degrees(45.0 * k as f64), &phi) - 0.5).abs())
        .fold(0.0, f64::max);
    let a = Direction::from_degrees(0.0);
    let b = Direction::from_degrees(60.0);
    let quantum = quantum_conditional(a, b);
    let classical = classical_conditional(a, b, n, 42).unwrap();
    let gap = quantum - classical;
    let elapsed = start.elapsed();
    check(
        worst <= 0.0015
            && (quantum - 0.75).abs() <= 1e-12
            && (classical - 2.0 / 3.0).abs() <= 0.005
            && gap >= 0.05
            && elapsed < Duration::from_secs(30),
        format!(
            "max |P̂(+1)-0.5| = {worst:.2e}; quantum {quantum:.12}; classical {classical:.5}; gap {gap:.4}; {:.2}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn chain_identity() -> Outcome {
    let mut rng = seeded(700);
    let (mut worst_chain, mut worst_repeat) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let r = rng.random_range(2..=5usize);
        let len = rng.random_range(1..=4usize);
        let psi = random_state(&mut rng, r);
        let vars: Vec<DecisionVariable> = (0..len)
            .map(|_| random_maximal_variable(&mut rng, "v", r).unwrap())
            .collect();
        let steps: Vec<(&DecisionVariable, f64)> = vars
            .iter()
            .map(|v| (v, v.values()[rng.random_range(0..r)]))
            .collect();
        let chain = sequential_probability(&psi, &steps).unwrap();
        let mut state = psi.clone();
        let mut product = 1.0;
        for (v, u) in &steps {
            product *= state.probability_of(v.projector_for(*u).unwrap()).unwrap();
            state = collapse(&state, v, *u).unwrap();
        }
        worst_chain = worst_chain.max((chain - product).abs());
        let (v, u) = steps.last().unwrap();
        let p: &Projector = v.projector_for(*u).unwrap();
        worst_repeat = worst_repeat.max((state.probability_of(p).unwrap() - 1.0).abs());
    }
    check(
        worst_chain <= 1e-10 && worst_repeat <= 1e-12,
        format!("max chain defect {worst_chain:.2e}; max |P(repeat)-1| = {worst_repeat:.2e}"),
    )
}

fn scenario_determinism() -> Outcome {
    let mut mismatched = 0;
    for seed in 0..20 {
        let doc = common::generated_scenario(seed).to_document();
        for format in [Format::Text, Format::Csv, Format::Structured] {
            let run = || {
                emit_report(
                    &run_scenario(&parse_scenario(&doc).unwrap(), seed).unwrap(),
                    format,
                )
            };
            if run().into_bytes() != run().into_bytes() {
                mismatched += 1;
            }
        }
    }
    let corpus = common::malformed_corpus();
    let mut unannotated = Vec::new();
    for (label, doc) in &corpus {
        let result = catch_unwind(AssertUnwindSafe(|| {
            parse_scenario(doc).and_then(|s| run_scenario(&s, 0))
        }));
        match result {
            Ok(Err(e)) if common::is_annotated(&e) => {}
            _ => unannotated.push(*label),
        }
    }
    check(
        mismatched == 0 && unannotated.is_empty(),
        format!(
            "20 scenarios x 3 formats, {mismatched} byte mismatches; {}/{} malformed inputs annotated{}",
            corpus.len() - unannotated.len(),
            corpus.len(),
            if unannotated.is_empty() { String::new() } else { format!(" (failing: {unannotated:?})") }
        ),
    )
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "born normalization and expectation",
            born_normalization,
            Some(Duration::from_secs(5)),
        ),
        (
            "reconstruction round trip",
            reconstruction_round_trip,
            Some(Duration::from_secs(10)),
        ),
        ("gpm additivity", gpm_additivity, None),
        (
            "medical golden numbers",
            medical_golden,
            Some(Duration::from_secs(1)),
        ),
        ("classical recovery", classical_recovery, None),
        (
            "spin-model marginals and conditionals",
            spin_marginals,
            Some(Duration::from_secs(30)),
        ),
        (
            "collapse idempotence and chain identity",
            chain_identity,
            None,
        ),
        (
            "scenario round trip and determinism",
            scenario_determinism,
            None,
        ),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(run).unwrap_or_else(|_| check(false, "panicked"));
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|b| elapsed < b);
        let pass = outcome.pass && in_time;
        failed += usize::from(!pass);
        println!(
            "[{}] {}. {name}: {} ({:.3}s{})",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail,
            elapsed.as_secs_f64(),
            budget
                .map(|b| format!(" of {}s", b.as_secs()))
                .unwrap_or_default()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
