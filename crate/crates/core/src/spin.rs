//! Planar hidden-variable model for spin components.
//!
//! An inaccessible angle `φ`, uniform on the circle, determines every spin
//! component through `θ^a = sign(cos(a - φ))`. Reflection of `φ` about the
//! midline between `a` and `b` carries `θ^a` to `θ^b`. The marginal of each
//! `θ^a` is ±1 with probability 1/2, matching the qubit model, but the
//! classical conditional `P(θ^b = +1 | θ^a = +1) = (π - Δ)/π` differs from the
//! quantum `cos²(Δ/2)` except at `Δ ∈ {0, π/2, π}`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::born::transition_probability;
use crate::error::{Error, Result};
use crate::linalg::{StateVector, C64};

const THREE_HALVES_PI: f64 = 3.0 * FRAC_PI_2;

/// Samples per RNG stream.
pub const DEFAULT_CHUNK_SIZE: usize = 1 << 16;

fn wrap(angle: f64) -> f64 {
    let w = angle.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Direction in the plane, radians in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Direction(f64);

impl Direction {
    pub fn from_radians(angle: f64) -> Self {
        Self(wrap(angle))
    }

    pub fn from_degrees(angle: f64) -> Self {
        Self::from_radians(angle.to_radians())
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// Angular separation in `[0, π]`.
    pub fn separation(self, other: Self) -> f64 {
        let d = wrap(other.0 - self.0);
        if d > PI {
            TAU - d
        } else {
            d
        }
    }
}

/// Value of the inaccessible angle, radians in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PhiSample(f64);

impl PhiSample {
    pub fn from_radians(angle: f64) -> Self {
        Self(wrap(angle))
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

/// `sign(cos(a - φ))`, with `+1` where the cosine vanishes.
pub fn spin_component(a: Direction, phi: PhiSample) -> i8 {
    let d = wrap(phi.0 - a.0);
    if d <= FRAC_PI_2 || d >= THREE_HALVES_PI {
        1
    } else {
        -1
    }
}

/// Reflection of `φ` about the midline `(a + b)/2`.
pub fn midline_reflection(phi: PhiSample, a: Direction, b: Direction) -> PhiSample {
    PhiSample::from_radians(a.0 + b.0 - phi.0)
}

/// `n` uniform angles from `seed`, using [`DEFAULT_CHUNK_SIZE`].
pub fn sample_phi(n: usize, seed: u64) -> Result<Vec<PhiSample>> {
    sample_phi_chunked(n, seed, DEFAULT_CHUNK_SIZE)
}

/// `n` uniform angles. Chunk `c` draws from ChaCha stream `c` of `seed`, so
/// the chunks are generated in parallel and the output depends only on
/// `(seed, n, chunk_size)`.
pub fn sample_phi_chunked(n: usize, seed: u64, chunk_size: usize) -> Result<Vec<PhiSample>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "sample count must be at least 1".into(),
        ));
    }
    if chunk_size == 0 {
        return Err(Error::InvalidArgument(
            "chunk size must be at least 1".into(),
        ));
    }
    let chunks = n.div_ceil(chunk_size);
    let parts: Vec<Vec<PhiSample>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let len = chunk_size.min(n - c * chunk_size);
            let mut rng = chunk_rng(seed, c);
            (0..len)
                .map(|_| PhiSample::from_radians(rng.random::<f64>() * TAU))
                .collect()
        })
        .collect();
    Ok(parts.concat())
}

pub(crate) fn chunk_rng(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    rng
}

/// Fraction of samples with `θ^a = +1`.
pub fn marginal_plus(a: Direction, samples: &[PhiSample]) -> f64 {
    let plus = samples
        .iter()
        .filter(|&&phi| spin_component(a, phi) == 1)
        .count();
    plus as f64 / samples.len() as f64
}

/// Monte Carlo estimate of `P(θ^b = +1 | θ^a = +1)` on the given samples.
pub fn conditional_estimate(a: Direction, b: Direction, samples: &[PhiSample]) -> Result<f64> {
    let (given, both) = samples
        .iter()
        .filter(|&&phi| spin_component(a, phi) == 1)
        .fold((0usize, 0usize), |(g, j), &phi| {
            (g + 1, j + usize::from(spin_component(b, phi) == 1))
        });
    if given == 0 {
        return Err(Error::DegenerateConditioning);
    }
    Ok(both as f64 / given as f64)
}

pub fn classical_conditional(a: Direction, b: Direction, n: usize, seed: u64) -> Result<f64> {
    conditional_estimate(a, b, &sample_phi(n, seed)?)
}

/// `(π - Δ)/π`: overlap of the two half-circles.
pub fn classical_conditional_analytic(a: Direction, b: Direction) -> f64 {
    (PI - a.separation(b)) / PI
}

/// Spin-up eigenvector of the qubit for direction `a` in the plane: `(cos(a/2), sin(a/2))`.
pub fn qubit_eigenvector(a: Direction) -> StateVector {
    let (s, c) = (a.0 / 2.0).sin_cos();
    StateVector::new(vec![C64::new(c, 0.0), C64::new(s, 0.0)]).expect("unit by construction")
}

/// `|⟨a;+|b;+⟩|²` from the qubit eigenvectors.
pub fn quantum_conditional(a: Direction, b: Direction) -> f64 {
    transition_probability(&qubit_eigenvector(a), &qubit_eigenvector(b)).expect("both dimension 2")
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    /// Angular separation in radians.
    pub separation: f64,
    pub classical_estimate: f64,
    pub classical_analytic: f64,
    pub quantum: f64,
    /// `quantum - classical_analytic`.
    pub gap: f64,
}

pub fn comparison_report(
    a: Direction,
    b: Direction,
    n: usize,
    seed: u64,
) -> Result<ComparisonReport> {
    let classical_estimate = classical_conditional(a, b, n, seed)?;
    let classical_analytic = classical_conditional_analytic(a, b);
    let quantum = quantum_conditional(a, b);
    Ok(ComparisonReport {
        separation: a.separation(b),
        classical_estimate,
        classical_analytic,
        quantum,
        gap: quantum - classical_analytic,
    })
}

/// Histogram of sample angles over `bins` equal arcs.
pub fn bin_counts(samples: &[PhiSample], bins: usize) -> Vec<usize> {
    let mut counts = vec![0; bins];
    for phi in samples {
        let k = ((phi.0 / TAU) * bins as f64) as usize;
        counts[k.min(bins - 1)] += 1;
    }
    counts
}
