//! Seeded random states, operators and variables.
//!
//! All generators take an explicit RNG; [`seeded`] gives the deterministic
//! ChaCha stream used throughout tests, demos and the acceptance suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::linalg::{
    inner, norm, ComplexMatrix, DensityOperator, Effect, HermitianOperator, StateVector, C64,
};
use crate::variable::{DecisionVariable, UnitaryOperator};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-distributed pure state.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> StateVector {
    loop {
        let v: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
        if let Ok(s) = StateVector::normalized(v) {
            return s;
        }
    }
}

/// Orthonormalized columns of a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> UnitaryOperator {
    let columns = random_orthonormal_columns(rng, dim);
    let mut m = ComplexMatrix::zeros(dim, dim);
    for (j, col) in columns.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            m[(i, j)] = *z;
        }
    }
    UnitaryOperator::new(m).expect("Gram-Schmidt output is unitary")
}

fn random_orthonormal_columns<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Vec<C64>> {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut w: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
        for _ in 0..2 {
            for b in &cols {
                let c = inner(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= bi * c;
                }
            }
        }
        let n = norm(&w);
        if n > 1e-6 {
            cols.push(w.into_iter().map(|z| z / n).collect());
        }
    }
    cols
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> HermitianOperator {
    let mut m = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = C64::new(rng.sample(StandardNormal), 0.0);
        for j in i + 1..dim {
            let z = gaussian(rng);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    HermitianOperator::new(m).expect("constructed Hermitian")
}

/// Random density `G G† / trace` with `G` a `dim × rank` Gaussian matrix.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> DensityOperator {
    let rank = rank.clamp(1, dim);
    let g = ComplexMatrix::from_vec(dim, rank, (0..dim * rank).map(|_| gaussian(rng)).collect())
        .expect("finite");
    let ggt = &g * &g.adjoint();
    let tr = ggt.trace().expect("square").re;
    DensityOperator::new(ggt.scale_real(1.0 / tr)).expect("G G† is a density up to scale")
}

/// Effect `U diag(w) U†` with weights uniform in `[0, 1]`.
pub fn random_effect<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Effect {
    let weights: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
    effect_with_weights(rng, &weights)
}

/// Effect with the given spectrum in a random eigenbasis.
pub fn effect_with_weights<R: Rng + ?Sized>(rng: &mut R, weights: &[f64]) -> Effect {
    let u = random_unitary(rng, weights.len());
    let m = &(u.matrix() * &ComplexMatrix::diag_real(weights)) * &u.inverse();
    Effect::new(m).expect("spectrum within [0, 1]")
}

/// Maximal variable with `dim` distinct values and a random eigenbasis.
pub fn random_maximal_variable<R: Rng + ?Sized>(
    rng: &mut R,
    name: &str,
    dim: usize,
) -> Result<DecisionVariable> {
    let basis: Vec<Vec<StateVector>> = random_orthonormal_columns(rng, dim)
        .into_iter()
        .map(|c| StateVector::normalized(c).map(|s| vec![s]))
        .collect::<Result<_>>()?;
    // spaced values keep the spectrum well separated
    let mut u = rng.random_range(-2.0..2.0);
    let values: Vec<f64> = (0..dim)
        .map(|_| {
            u += rng.random_range(0.25..1.5);
            u
        })
        .collect();
    DecisionVariable::from_spectrum(name, values, basis)
}

/// Variable with random eigenbasis whose eigenspaces have the given ranks.
pub fn random_variable_with_ranks<R: Rng + ?Sized>(
    rng: &mut R,
    name: &str,
    ranks: &[usize],
) -> Result<DecisionVariable> {
    let dim: usize = ranks.iter().sum();
    let mut cols = random_orthonormal_columns(rng, dim).into_iter();
    let mut basis = Vec::with_capacity(ranks.len());
    for &r in ranks {
        basis.push(
            cols.by_ref()
                .take(r)
                .map(StateVector::normalized)
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let values = (0..ranks.len())
        .map(|j| j as f64 - rng.random::<f64>() * 0.5)
        .collect();
    DecisionVariable::from_spectrum(name, values, basis)
}
