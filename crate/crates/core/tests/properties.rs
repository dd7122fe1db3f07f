use proptest::prelude::*;

use qdecision::born::{
    collapse, expectation, gpm_evaluate, outcome_distribution, projector_chain_probability,
    sequential_probability, QuantumState,
};
use qdecision::linalg::{hermitian_eig, ComplexMatrix, Effect, StateVector, C64};
use qdecision::phenomena::{conjunction_report, sure_thing_check, total_probability_report};
use qdecision::random::{
    random_density, random_hermitian, random_maximal_variable, random_state, random_unitary,
    random_variable_with_ranks, seeded,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eigendecomposition_residual_and_orthonormality(seed in any::<u64>(), r in 1usize..=16) {
        let a = random_hermitian(&mut seeded(seed), r);
        let eig = hermitian_eig(a.matrix()).unwrap();
        let v = eig.eigenvector_matrix();
        let lambda = ComplexMatrix::diag_real(eig.eigenvalues());
        let scale = a.matrix().frobenius_norm().max(1.0);
        let residual = (&(a.matrix() * &v) - &(&v * &lambda)).frobenius_norm();
        prop_assert!(residual <= 1e-10 * scale, "residual {residual}");
        let gram = &v.adjoint() * &v;
        prop_assert!(gram.distance(&ComplexMatrix::identity(r)).unwrap() <= 1e-10);
        prop_assert!(eig.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn born_probabilities_normalize(seed in any::<u64>(), r in 2usize..=8) {
        let mut rng = seeded(seed);
        let psi = random_state(&mut rng, r);
        let v = random_maximal_variable(&mut rng, "v", r).unwrap();
        let d = outcome_distribution(&psi, &v).unwrap();
        prop_assert!((d.total() - 1.0).abs() <= 1e-10);
        prop_assert!(d.probabilities.iter().all(|p| *p >= 0.0));
        prop_assert!((expectation(&psi, &v).unwrap() - d.mean()).abs() <= 1e-10);

        let rho = random_density(&mut rng, r, 1 + seed as usize % r);
        let d = outcome_distribution(&rho, &v).unwrap();
        prop_assert!((d.total() - 1.0).abs() <= 1e-10);
        prop_assert!((expectation(&rho, &v).unwrap() - d.mean()).abs() <= 1e-10);
    }

    #[test]
    fn projectors_resolve_identity(seed in any::<u64>(), ranks in prop::collection::vec(1usize..=3, 1..=4)) {
        let v = random_variable_with_ranks(&mut seeded(seed), "v", &ranks).unwrap();
        let n = v.dim();
        let mut sum = ComplexMatrix::zeros(n, n);
        for (i, p) in v.projectors().iter().enumerate() {
            prop_assert_eq!(p.rank(), ranks_sorted(&v)[i]);
            sum = &sum + p.matrix();
            for q in &v.projectors()[i + 1..] {
                prop_assert!((p.matrix() * q.matrix()).frobenius_norm() <= 1e-10);
            }
        }
        prop_assert!(sum.distance(&ComplexMatrix::identity(n)).unwrap() <= 1e-10);
        prop_assert_eq!(v.is_maximal(), ranks.iter().all(|&k| k == 1));
    }

    #[test]
    fn function_of_variable_pushes_distribution_forward(seed in any::<u64>(), r in 2usize..=6) {
        let mut rng = seeded(seed);
        let v = random_maximal_variable(&mut rng, "v", r).unwrap();
        let psi = random_state(&mut rng, r);
        let f = |u: f64| (u * 0.7).floor();
        let fv = v.apply_function(f).unwrap();
        let d = outcome_distribution(&psi, &v).unwrap();
        let fd = outcome_distribution(&psi, &fv).unwrap();
        for (w, p) in fd.values.iter().zip(&fd.probabilities) {
            let pushed: f64 = d
                .values
                .iter()
                .zip(&d.probabilities)
                .filter(|(u, _)| f(**u) == *w)
                .map(|(_, p)| p)
                .sum();
            prop_assert!((p - pushed).abs() <= 1e-10);
        }
    }

    #[test]
    fn conjugation_preserves_maximality_and_statistics(seed in any::<u64>(), r in 2usize..=6) {
        let mut rng = seeded(seed);
        let v = random_maximal_variable(&mut rng, "v", r).unwrap();
        let w = random_unitary(&mut rng, r);
        let psi = random_state(&mut rng, r);
        let moved = v.conjugate(&w).unwrap();
        prop_assert!(moved.is_maximal());
        prop_assert_eq!(moved.values(), v.values());
        // W†AW measured on W†ψ reproduces A on ψ
        let psi_moved = StateVector::new(w.inverse().apply(psi.amplitudes()).unwrap()).unwrap();
        let a = outcome_distribution(&psi, &v).unwrap();
        let b = outcome_distribution(&psi_moved, &moved).unwrap();
        for (p, q) in a.probabilities.iter().zip(&b.probabilities) {
            prop_assert!((p - q).abs() <= 1e-10);
        }
    }

    #[test]
    fn chain_probability_telescopes(seed in any::<u64>(), r in 2usize..=5, len in 1usize..=4) {
        let mut rng = seeded(seed);
        let psi = random_state(&mut rng, r);
        let vars: Vec<_> = (0..len).map(|_| random_maximal_variable(&mut rng, "v", r).unwrap()).collect();
        let picks: Vec<f64> = vars.iter().enumerate().map(|(i, v)| v.values()[(seed as usize + i) % r]).collect();
        let steps: Vec<_> = vars.iter().zip(&picks).map(|(v, u)| (v, *u)).collect();
        let chain = sequential_probability(&psi, &steps).unwrap();
        let mut state = psi.clone();
        let mut product = 1.0;
        for (v, u) in &steps {
            let p = state.probability_of(v.projector_for(*u).unwrap()).unwrap();
            product *= p;
            state = collapse(&state, v, *u).unwrap();
        }
        prop_assert!((chain - product).abs() <= 1e-10);
        // immediate repetition confirms the last outcome
        let (v, u) = steps.last().unwrap();
        prop_assert!((state.probability_of(v.projector_for(*u).unwrap()).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn gpm_is_additive(seed in any::<u64>(), r in 2usize..=6) {
        let mut rng = seeded(seed);
        let rho = random_density(&mut rng, r, r);
        let (f1, f2) = split_effect(&mut rng, r);
        let sum = f1.try_add(&f2).unwrap();
        let defect = gpm_evaluate(&rho, &sum).unwrap()
            - gpm_evaluate(&rho, &f1).unwrap()
            - gpm_evaluate(&rho, &f2).unwrap();
        prop_assert!(defect.abs() <= 1e-12);
    }

    #[test]
    fn commuting_variables_behave_classically(seed in any::<u64>(), r in 2usize..=6) {
        let mut rng = seeded(seed);
        let psi = random_state(&mut rng, r);
        let base = random_maximal_variable(&mut rng, "base", r).unwrap();
        // coarse-grainings of one maximal variable commute
        let a = base.apply_function(|u| (u * 1.3).floor().rem_euclid(2.0)).unwrap();
        let b = base.apply_function(|u| (u * 0.9).floor().rem_euclid(3.0)).unwrap();
        let pa = a.projectors().last().unwrap();
        let pb = b.projectors().first().unwrap();
        let c = conjunction_report(&psi, pa, pb).unwrap();
        prop_assert!(c.order_asymmetry <= 1e-10);
        prop_assert!(!c.conjunction_flag);
        let t = total_probability_report(&psi, &b, pa).unwrap();
        prop_assert!(t.interference.abs() <= 1e-10);
        if a.values().len() == 2 {
            if let Ok(s) = sure_thing_check(&psi, &a, pb, 0.5) {
                prop_assert!(!s.violation_flag);
                prop_assert!(s.interference.abs() <= 1e-10);
            }
        }
    }
}

fn ranks_sorted(v: &qdecision::variable::DecisionVariable) -> Vec<usize> {
    v.eigenbasis().iter().map(Vec::len).collect()
}

/// Two effects in one random eigenbasis with `F₁ + F₂ ≤ I`.
fn split_effect<R: rand::Rng>(rng: &mut R, r: usize) -> (Effect, Effect) {
    let u = random_unitary(rng, r);
    let (mut w1, mut w2) = (Vec::new(), Vec::new());
    for _ in 0..r {
        let total: f64 = rng.random();
        let share: f64 = rng.random();
        w1.push(total * share);
        w2.push(total * (1.0 - share));
    }
    let build = |w: &[f64]| {
        let m = &(u.matrix() * &ComplexMatrix::diag_real(w)) * &u.inverse();
        Effect::new(m).unwrap()
    };
    (build(&w1), build(&w2))
}

#[test]
fn product_states_factorize() {
    let mut rng = seeded(11);
    for _ in 0..20 {
        let (psi1, psi2) = (random_state(&mut rng, 2), random_state(&mut rng, 3));
        let a = random_maximal_variable(&mut rng, "a", 2).unwrap();
        let b = random_maximal_variable(&mut rng, "b", 3).unwrap();
        let joint = psi1.tensor(&psi2);
        for (pa, qa) in a
            .projectors()
            .iter()
            .zip(outcome_distribution(&psi1, &a).unwrap().probabilities)
        {
            for (pb, qb) in b
                .projectors()
                .iter()
                .zip(outcome_distribution(&psi2, &b).unwrap().probabilities)
            {
                let left = pa.tensor(&qdecision::linalg::Projector::identity(3));
                let right = qdecision::linalg::Projector::identity(2).tensor(pb);
                let ab = projector_chain_probability(&joint, &[&left, &right]).unwrap();
                let ba = projector_chain_probability(&joint, &[&right, &left]).unwrap();
                assert!((ab - qa * qb).abs() < 1e-12);
                assert!((ab - ba).abs() < 1e-12);
            }
        }
    }
}

fn real3(x: [f64; 3]) -> StateVector {
    StateVector::normalized(x.iter().map(|&v| C64::new(v, 0.0)).collect()).unwrap()
}

#[test]
fn sure_thing_violations_need_three_dimensions() {
    use qdecision::linalg::Projector;
    use qdecision::variable::DecisionVariable;

    // in the plane P(C|X) + P(C|not X) = 1 for rank-one C, so both cannot exceed 1/2
    for c in (0..180).step_by(5) {
        let cond = DecisionVariable::from_angle_degrees("x", [1.0, 0.0], c as f64).unwrap();
        for h in (0..180).step_by(5) {
            let choice = Projector::at_angle_degrees(h as f64);
            for s in (0..180).step_by(15) {
                let psi = StateVector::at_angle_degrees(s as f64);
                if let Ok(r) = sure_thing_check(&psi, &cond, &choice, 0.5) {
                    assert!(!r.violation_flag, "c={c} h={h} s={s}");
                }
            }
        }
    }

    // in three dimensions: X rank one in the plane, C the complement of a tilted axis
    let mut found = 0;
    for c in (0..180).step_by(15) {
        let cr = (c as f64).to_radians();
        let x = real3([cr.cos(), cr.sin(), 0.0]);
        let x_perp = real3([-cr.sin(), cr.cos(), 0.0]);
        let cond = DecisionVariable::from_spectrum(
            "x",
            vec![1.0, 0.0],
            vec![vec![x], vec![x_perp, StateVector::basis(3, 2)]],
        )
        .unwrap();
        for h in (0..180).step_by(15) {
            for e in (0..90).step_by(10) {
                let (hr, er) = ((h as f64).to_radians(), (e as f64).to_radians());
                let n = real3([er.cos() * hr.cos(), er.cos() * hr.sin(), er.sin()]);
                let choice = Projector::onto(&n).complement().unwrap();
                for s in (0..180).step_by(15) {
                    let sr = (s as f64).to_radians();
                    let psi = real3([sr.cos(), sr.sin(), 0.0]);
                    let Ok(r) = sure_thing_check(&psi, &cond, &choice, 0.5) else {
                        continue;
                    };
                    if r.violation_flag {
                        found += 1;
                        assert!(r.p_choice_given.iter().all(|p| *p > 0.5));
                        assert!(r.p_choice <= 0.5);
                        assert!(r.interference < 0.0);
                    }
                }
            }
        }
    }
    assert!(found > 0, "grid search found no violation");
}
