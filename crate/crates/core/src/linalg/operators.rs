//! Validated operator types. Every constructor enforces its invariant and
//! fails hard on violation.

use super::eig::{hermitian_eig_with, SpectralDecomposition};
use super::matrix::{inner, norm, ComplexMatrix, C64};
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Self-adjoint matrix. Stored exactly Hermitian.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
}

impl HermitianOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, &Tolerances::default())
    }

    pub fn with_tolerance(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let defect = matrix.hermitian_defect();
        if defect > tol.hermitian * matrix.max_abs().max(1.0) {
            return Err(Error::NotHermitian { asymmetry: defect });
        }
        Ok(Self {
            matrix: matrix.hermitian_part(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(n),
        }
    }

    pub fn diag(values: &[f64]) -> Self {
        Self {
            matrix: ComplexMatrix::diag_real(values),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn eig(&self) -> Result<SpectralDecomposition> {
        hermitian_eig_with(&self.matrix, None, &Tolerances::default())
    }

    /// `⟨ψ|A|ψ⟩`, real for Hermitian `A`.
    pub fn expectation(&self, psi: &StateVector) -> Result<f64> {
        let av = self.matrix.apply(psi.amplitudes())?;
        Ok(inner(psi.amplitudes(), &av).re)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            matrix: self.matrix.checked_add(&other.matrix)?,
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            matrix: self.matrix.scale_real(s),
        }
    }

    /// `‖AB - BA‖_F`.
    pub fn commutator_norm(&self, other: &Self) -> Result<f64> {
        let ab = self.matrix.matmul(&other.matrix)?;
        let ba = other.matrix.matmul(&self.matrix)?;
        Ok((&ab - &ba).frobenius_norm())
    }
}

/// `f(A) = Σ f(λ_i) v_i v_i†`.
pub fn spectral_function(
    a: &HermitianOperator,
    f: impl Fn(f64) -> f64,
) -> Result<HermitianOperator> {
    let d = a.eig()?;
    HermitianOperator::new(d.map_eigenvalues(f))
}

/// Orthogonal projector.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    op: HermitianOperator,
    rank: usize,
}

impl Projector {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, &Tolerances::default())
    }

    pub fn with_tolerance(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let op = HermitianOperator::with_tolerance(matrix, tol)
            .map_err(|e| Error::NotProjector(e.to_string()))?;
        let m = op.matrix();
        let idem = (&(m * m) - m).frobenius_norm();
        if idem > tol.projector {
            return Err(Error::NotProjector(format!(
                "‖Π² - Π‖ = {idem:.3e} exceeds {:.1e}",
                tol.projector
            )));
        }
        let tr = m.trace()?.re;
        let rank = tr.round();
        if (tr - rank).abs() > tol.projector_trace || rank < 1.0 {
            return Err(Error::NotProjector(format!(
                "trace {tr} is not a positive integer"
            )));
        }
        Ok(Self {
            op,
            rank: rank as usize,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            op: HermitianOperator::identity(n),
            rank: n,
        }
    }

    /// Rank-1 projector `|ψ⟩⟨ψ|`.
    pub fn onto(psi: &StateVector) -> Self {
        Self {
            op: HermitianOperator {
                matrix: psi.outer(),
            },
            rank: 1,
        }
    }

    /// Projector onto the real line at angle `α` degrees in dimension 2.
    pub fn at_angle_degrees(alpha: f64) -> Self {
        Self::onto(&StateVector::at_angle_degrees(alpha))
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.op.matrix()
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.op
    }

    /// `Π ψ` (unnormalized).
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        self.matrix().apply(v)
    }

    /// `I - Π`, or `None` when `Π = I`.
    pub fn complement(&self) -> Option<Self> {
        if self.rank == self.dim() {
            return None;
        }
        let m = &ComplexMatrix::identity(self.dim()) - self.matrix();
        Some(Self {
            op: HermitianOperator {
                matrix: m.hermitian_part(),
            },
            rank: self.dim() - self.rank,
        })
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            op: HermitianOperator {
                matrix: self.matrix().kron(other.matrix()),
            },
            rank: self.rank * other.rank,
        }
    }

    /// Does `v` lie in the range of `Π` within `tol`?
    pub fn contains(&self, v: &[C64], tol: f64) -> bool {
        match self.apply(v) {
            Ok(pv) => {
                let diff: Vec<C64> = pv.iter().zip(v).map(|(a, b)| a - b).collect();
                norm(&diff) <= tol * norm(v).max(1.0)
            }
            Err(_) => false,
        }
    }
}

/// Projector onto the span of linearly independent vectors.
pub fn projector_onto_span(vectors: &[StateVector]) -> Result<Projector> {
    projector_onto_span_with(vectors, &Tolerances::default())
}

pub fn projector_onto_span_with(vectors: &[StateVector], tol: &Tolerances) -> Result<Projector> {
    let first = vectors
        .first()
        .ok_or_else(|| Error::InvalidArgument("span of an empty list".into()))?;
    let dim = first.dim();
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
        let mut w = v.amplitudes().to_vec();
        for _ in 0..2 {
            for b in &basis {
                let c = inner(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= bi * c;
                }
            }
        }
        let n = norm(&w);
        if n <= tol.rank {
            return Err(Error::DegenerateSpan {
                rank: basis.len(),
                expected: vectors.len(),
            });
        }
        basis.push(w.into_iter().map(|z| z / n).collect());
    }
    let mut m = ComplexMatrix::zeros(dim, dim);
    for b in &basis {
        m = &m + &ComplexMatrix::outer(b, b);
    }
    Ok(Projector {
        op: HermitianOperator { matrix: m },
        rank: basis.len(),
    })
}

/// Positive semidefinite, trace-one operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    op: HermitianOperator,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, &Tolerances::default())
    }

    pub fn with_tolerance(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let op = HermitianOperator::with_tolerance(matrix, tol)
            .map_err(|e| Error::NotDensity(e.to_string()))?;
        let tr = op.matrix().trace()?.re;
        if (tr - 1.0).abs() > tol.density {
            return Err(Error::NotDensity(format!("trace is {tr}, expected 1")));
        }
        let min = op.eig()?.eigenvalues()[0];
        if min < -tol.density {
            return Err(Error::NotDensity(format!(
                "eigenvalue {min:.3e} is negative"
            )));
        }
        Ok(Self { op })
    }

    pub fn pure(psi: &StateVector) -> Self {
        Self {
            op: HermitianOperator {
                matrix: psi.outer(),
            },
        }
    }

    /// `I / n`.
    pub fn maximally_mixed(n: usize) -> Self {
        Self {
            op: HermitianOperator {
                matrix: ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
            },
        }
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.op.matrix()
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.op
    }

    /// `Re trace(ρ B)`.
    pub fn trace_with(&self, b: &ComplexMatrix) -> Result<f64> {
        Ok(self.matrix().trace_of_product(b)?.re)
    }

    /// Purity `trace(ρ²)`.
    pub fn purity(&self) -> f64 {
        self.matrix()
            .trace_of_product(self.matrix())
            .map(|z| z.re)
            .unwrap_or(f64::NAN)
    }
}

/// Hermitian operator with spectrum in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Effect {
    op: HermitianOperator,
}

impl Effect {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, &Tolerances::default())
    }

    pub fn with_tolerance(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let op = HermitianOperator::with_tolerance(matrix, tol)
            .map_err(|e| Error::InvalidEffect(e.to_string()))?;
        let d = op.eig().map_err(|e| Error::InvalidEffect(e.to_string()))?;
        let lo = d.eigenvalues()[0];
        let hi = *d.eigenvalues().last().unwrap();
        if lo < -tol.effect || hi > 1.0 + tol.effect {
            return Err(Error::InvalidEffect(format!(
                "spectrum [{lo:.6e}, {hi:.6e}] leaves [0, 1]"
            )));
        }
        Ok(Self { op })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            op: HermitianOperator::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.op.matrix()
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.op
    }

    /// `F₁ + F₂`, which must again be an effect.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Self::new(self.matrix().checked_add(other.matrix())?)
    }
}

impl From<Projector> for Effect {
    fn from(p: Projector) -> Self {
        Self { op: p.op }
    }
}

/// Kronecker product.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}
