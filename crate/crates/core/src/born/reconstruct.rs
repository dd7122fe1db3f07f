//! Recovering a density operator from the probabilities a generalized
//! measure assigns to effects.
//!
//! The unknown is expanded in an orthonormal Hermitian basis whose first
//! element is `I/√r`, so the trace constraint fixes that coefficient and the
//! remaining `r² - 1` coordinates are fit by Householder least squares. A
//! minimizer with negative eigenvalues is replaced by the Frobenius-nearest
//! trace-one positive semidefinite matrix (eigenvalues projected onto the
//! probability simplex).

use super::likelihood::{gpm_evaluate, GpmSample};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, lstsq, ComplexMatrix, DensityOperator, Effect, C64};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub density: DensityOperator,
    /// Largest `|trace(ρ̂ F_i) - μ_i|` of the unconstrained least-squares fit.
    pub residual: f64,
    /// Frobenius distance moved by the positivity projection; zero if none was needed.
    pub psd_adjustment: f64,
}

/// Rank-one projectors onto `e_j`, then `(e_j + e_k)/√2` and `(e_j + i e_k)/√2` for `j < k`.
pub fn ic_effect_basis(r: usize) -> Result<Vec<Effect>> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!(
            "informationally complete basis needs dimension ≥ 2, got {r}"
        )));
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let unit = |entries: &[(usize, C64)]| -> Vec<C64> {
        let mut v = vec![C64::new(0.0, 0.0); r];
        for &(i, z) in entries {
            v[i] = z;
        }
        v
    };
    let mut out = Vec::with_capacity(r * r);
    for j in 0..r {
        let v = unit(&[(j, C64::new(1.0, 0.0))]);
        out.push(Effect::new(ComplexMatrix::outer(&v, &v))?);
    }
    for j in 0..r {
        for k in j + 1..r {
            let v = unit(&[(j, C64::new(h, 0.0)), (k, C64::new(h, 0.0))]);
            out.push(Effect::new(ComplexMatrix::outer(&v, &v))?);
            let v = unit(&[(j, C64::new(h, 0.0)), (k, C64::new(0.0, h))]);
            out.push(Effect::new(ComplexMatrix::outer(&v, &v))?);
        }
    }
    Ok(out)
}

/// Orthonormal basis of `r × r` Hermitian matrices under `trace(A B)`:
/// `I/√r` first, then the generalized Gell-Mann matrices.
pub fn hermitian_basis(r: usize) -> Vec<ComplexMatrix> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = vec![ComplexMatrix::identity(r).scale_real(1.0 / (r as f64).sqrt())];
    for j in 0..r {
        for k in j + 1..r {
            let mut sym = ComplexMatrix::zeros(r, r);
            sym[(j, k)] = C64::new(h, 0.0);
            sym[(k, j)] = C64::new(h, 0.0);
            out.push(sym);
            let mut anti = ComplexMatrix::zeros(r, r);
            anti[(j, k)] = C64::new(0.0, -h);
            anti[(k, j)] = C64::new(0.0, h);
            out.push(anti);
        }
    }
    for l in 1..r {
        let scale = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut d = vec![0.0; r];
        for x in d.iter_mut().take(l) {
            *x = scale;
        }
        d[l] = -(l as f64) * scale;
        out.push(ComplexMatrix::diag_real(&d));
    }
    out
}

/// Exact probabilities `trace(ρ F)` for each effect.
pub fn sample_measure(rho: &DensityOperator, effects: &[Effect]) -> Result<Vec<GpmSample>> {
    effects
        .iter()
        .map(|f| GpmSample::new(f.clone(), gpm_evaluate(rho, f)?))
        .collect()
}

pub fn reconstruct_density(samples: &[GpmSample]) -> Result<Reconstruction> {
    reconstruct_density_with(samples, &Tolerances::default())
}

pub fn reconstruct_density_with(samples: &[GpmSample], tol: &Tolerances) -> Result<Reconstruction> {
    let r = samples
        .first()
        .map(|s| s.effect.dim())
        .ok_or(Error::InsufficientSpan {
            rank: 0,
            expected: 0,
        })?;
    if let Some(s) = samples.iter().find(|s| s.effect.dim() != r) {
        return Err(Error::DimensionMismatch {
            expected: r,
            found: s.effect.dim(),
        });
    }
    let basis = hermitian_basis(r);
    let p = basis.len();

    // coordinates c_im = trace(B_m F_i), real for Hermitian pairs
    let coords: Vec<Vec<f64>> = samples
        .iter()
        .map(|s| {
            basis
                .iter()
                .map(|b| b.trace_of_product(s.effect.matrix()).map(|z| z.re))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    check_span(&coords, p, tol)?;

    let n = samples.len();
    let anchor = 1.0 / (r as f64).sqrt();
    let mut design = Vec::with_capacity(n * (p - 1));
    let mut rhs = Vec::with_capacity(n);
    for (c, s) in coords.iter().zip(samples) {
        design.extend_from_slice(&c[1..]);
        rhs.push(s.probability - c[0] * anchor);
    }
    let x = lstsq::solve(&design, n, p - 1, &rhs);

    let residual = coords
        .iter()
        .zip(samples)
        .map(|(c, s)| {
            let predicted = c[0] * anchor + c[1..].iter().zip(&x).map(|(a, b)| a * b).sum::<f64>();
            (predicted - s.probability).abs()
        })
        .fold(0.0, f64::max);
    if residual > tol.reconstruction_noise {
        return Err(Error::InconsistentSamples {
            residual,
            bound: tol.reconstruction_noise,
        });
    }

    let mut estimate = basis[0].scale_real(anchor);
    for (b, xm) in basis[1..].iter().zip(&x) {
        estimate = &estimate + &b.scale_real(*xm);
    }

    let d = hermitian_eig(&estimate)?;
    if d.eigenvalues()[0] >= -tol.density {
        return Ok(Reconstruction {
            density: DensityOperator::with_tolerance(estimate, tol)?,
            residual,
            psd_adjustment: 0.0,
        });
    }
    let clipped = project_to_simplex(d.eigenvalues());
    let projected = d.map_eigenvalues_indexed(|i| clipped[i]);
    let psd_adjustment = (&projected - &estimate).frobenius_norm();
    Ok(Reconstruction {
        density: DensityOperator::with_tolerance(projected, tol)?,
        residual,
        psd_adjustment,
    })
}

fn check_span(coords: &[Vec<f64>], p: usize, tol: &Tolerances) -> Result<()> {
    let mut gram = ComplexMatrix::zeros(p, p);
    for c in coords {
        for a in 0..p {
            for b in 0..p {
                gram[(a, b)] += C64::new(c[a] * c[b], 0.0);
            }
        }
    }
    let eig = hermitian_eig(&gram)?;
    let top = eig.eigenvalues().last().copied().unwrap_or(0.0);
    let rank = eig
        .eigenvalues()
        .iter()
        .filter(|&&l| top > 0.0 && l > tol.span * top)
        .count();
    if rank < p {
        return Err(Error::InsufficientSpan { rank, expected: p });
    }
    Ok(())
}

/// Euclidean projection onto `{x ≥ 0, Σ x = 1}`.
fn project_to_simplex(values: &[f64]) -> Vec<f64> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut shift = 0.0;
    for (k, v) in sorted.iter().enumerate() {
        cumulative += v;
        let candidate = (cumulative - 1.0) / (k + 1) as f64;
        if v - candidate > 0.0 {
            shift = candidate;
        }
    }
    values.iter().map(|v| (v - shift).max(0.0)).collect()
}
