//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies the real symmetric Jacobi rotation that annihilates
//! it. Output ordering is canonical: eigenvalues ascend, each eigenvector has
//! its first significant component real and positive, and the basis of a
//! degenerate eigenspace is rebuilt by pivoted Gram-Schmidt on the columns of
//! its projector, so it depends only on the eigenspace and not on the
//! rotation history.

use std::ops::Range;

use super::matrix::{inner, norm, ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

const MAX_SWEEPS: usize = 100;
const CONVERGED_OFF: f64 = 1e-15;
const PHASE_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    /// Column eigenvectors, one `Vec` per eigenvalue.
    eigenvectors: Vec<Vec<C64>>,
    groups: Vec<Range<usize>>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[Vec<C64>] {
        &self.eigenvectors
    }

    /// Index ranges of eigenvalues that coincide within the degeneracy tolerance.
    pub fn degeneracy_groups(&self) -> &[Range<usize>] {
        &self.groups
    }

    pub fn is_simple(&self) -> bool {
        self.groups.iter().all(|g| g.len() == 1)
    }

    /// `V` with eigenvectors as columns.
    pub fn eigenvector_matrix(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut v = ComplexMatrix::zeros(n, n);
        for (j, col) in self.eigenvectors.iter().enumerate() {
            for (i, z) in col.iter().enumerate() {
                v[(i, j)] = *z;
            }
        }
        v
    }

    /// `Σ λ_i v_i v_i†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_eigenvalues(|x| x)
    }

    /// `Σ f(λ_i) v_i v_i†`.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        self.map_eigenvalues_indexed(|i| f(self.eigenvalues[i]))
    }

    /// `Σ w(i) v_i v_i†`, with `i` indexing the sorted eigenvalues.
    pub fn map_eigenvalues_indexed(&self, weight: impl Fn(usize) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n, n);
        for (idx, v) in self.eigenvectors.iter().enumerate() {
            let w = weight(idx);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vi = v[i] * w;
                for j in 0..n {
                    m[(i, j)] += vi * v[j].conj();
                }
            }
        }
        m
    }

    /// One `(representative eigenvalue, eigenprojector)` per degeneracy group.
    /// The representative is the group mean.
    pub fn group_projectors(&self) -> Vec<(f64, ComplexMatrix)> {
        let n = self.dim();
        self.groups
            .iter()
            .map(|g| {
                let mean = self.eigenvalues[g.clone()].iter().sum::<f64>() / g.len() as f64;
                let mut p = ComplexMatrix::zeros(n, n);
                for v in &self.eigenvectors[g.clone()] {
                    p = &p + &ComplexMatrix::outer(v, v);
                }
                (mean, p)
            })
            .collect()
    }
}

/// Eigendecomposition with the default degeneracy tolerance,
/// `1e-8 · max(1, spectral range)`.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<SpectralDecomposition> {
    hermitian_eig_with(a, None, &Tolerances::default())
}

/// Eigendecomposition of a Hermitian matrix.
///
/// `degeneracy_tol` overrides the absolute grouping threshold.
pub fn hermitian_eig_with(
    a: &ComplexMatrix,
    degeneracy_tol: Option<f64>,
    tol: &Tolerances,
) -> Result<SpectralDecomposition> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let fro = a.frobenius_norm();
    let asym = (a - &a.adjoint()).frobenius_norm();
    if asym > tol.eig_hermitian * fro {
        return Err(Error::NotHermitian { asymmetry: asym });
    }

    let n = a.rows();
    let mut work: Vec<C64> = a.hermitian_part().as_slice().to_vec();
    let mut v = ComplexMatrix::identity(n).as_slice().to_vec();
    jacobi(&mut work, &mut v, n)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| work[i * n + i].re.total_cmp(&work[j * n + j].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| work[i * n + i].re).collect();
    let mut eigenvectors: Vec<Vec<C64>> = order
        .iter()
        .map(|&j| (0..n).map(|i| v[i * n + j]).collect())
        .collect();

    let range = eigenvalues.last().unwrap() - eigenvalues.first().unwrap();
    let threshold = degeneracy_tol.unwrap_or(tol.degeneracy * range.max(1.0));
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || eigenvalues[i] - eigenvalues[i - 1] >= threshold {
            groups.push(start..i);
            start = i;
        }
    }

    for g in &groups {
        if g.len() > 1 {
            let basis = canonical_basis(&eigenvectors[g.clone()]);
            for (slot, b) in eigenvectors[g.clone()].iter_mut().zip(basis) {
                *slot = b;
            }
        }
    }
    for vec in &mut eigenvectors {
        fix_phase(vec);
    }

    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        groups,
    })
}

fn jacobi(a: &mut [C64], v: &mut [C64], n: usize) -> Result<()> {
    let scale = a.iter().map(C64::norm_sqr).sum::<f64>().sqrt();
    if scale == 0.0 {
        return Ok(());
    }
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= CONVERGED_OFF * scale {
            return Ok(());
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(a, v, n, p, q, scale);
            }
        }
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

fn rotate(a: &mut [C64], v: &mut [C64], n: usize, p: usize, q: usize, scale: f64) {
    let apq = a[p * n + q];
    let b = apq.norm();
    if b <= f64::EPSILON * 1e-3 * scale {
        return;
    }
    let phase = apq / b;
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let zeta = (aqq - app) / (2.0 * b);
    let t = if zeta >= 0.0 {
        1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
    } else {
        -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // U = diag(1, conj(phase)) · [[c, s], [-s, c]] acting on coordinates (p, q).
    let upp = C64::new(c, 0.0);
    let upq = C64::new(s, 0.0);
    let uqp = phase.conj() * (-s);
    let uqq = phase.conj() * c;

    for k in 0..n {
        let (akp, akq) = (a[k * n + p], a[k * n + q]);
        a[k * n + p] = akp * upp + akq * uqp;
        a[k * n + q] = akp * upq + akq * uqq;
        let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
        v[k * n + p] = vkp * upp + vkq * uqp;
        v[k * n + q] = vkp * upq + vkq * uqq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[p * n + k], a[q * n + k]);
        a[p * n + k] = upp.conj() * apk + uqp.conj() * aqk;
        a[q * n + k] = upq.conj() * apk + uqq.conj() * aqk;
    }
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
    a[p * n + p].im = 0.0;
    a[q * n + q].im = 0.0;
}

/// Pivoted Gram-Schmidt on the columns of the projector onto `span(vectors)`.
fn canonical_basis(vectors: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let n = vectors[0].len();
    let project = |x: &[C64]| -> Vec<C64> {
        let mut out = vec![ZERO; n];
        for v in vectors {
            let c = inner(v, x);
            for (o, vi) in out.iter_mut().zip(v) {
                *o += vi * c;
            }
        }
        out
    };
    let mut candidates: Vec<Vec<C64>> = (0..n)
        .map(|i| {
            let mut e = vec![ZERO; n];
            e[i] = C64::new(1.0, 0.0);
            project(&e)
        })
        .collect();
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(vectors.len());
    for _ in 0..vectors.len() {
        let (best, _) = candidates
            .iter()
            .enumerate()
            .map(|(i, c)| (i, norm(c)))
            .fold(
                (0, -1.0),
                |acc, (i, nv)| if nv > acc.1 { (i, nv) } else { acc },
            );
        let mut w = candidates[best].clone();
        // two passes keep the result orthogonal to working precision
        for _ in 0..2 {
            for b in &basis {
                let c = inner(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= bi * c;
                }
            }
        }
        let nw = norm(&w);
        let w: Vec<C64> = w.iter().map(|z| z / nw).collect();
        for cand in &mut candidates {
            let c = inner(&w, cand);
            for (ci, wi) in cand.iter_mut().zip(&w) {
                *ci -= wi * c;
            }
        }
        basis.push(w);
    }
    basis
}

/// Rotates `v` so that its first component with modulus above the threshold is real positive.
pub(crate) fn fix_phase(v: &mut [C64]) {
    if let Some(lead) = v.iter().find(|z| z.norm() > PHASE_THRESHOLD).copied() {
        let rot = lead.conj() / lead.norm();
        for z in v.iter_mut() {
            *z *= rot;
        }
    }
}
