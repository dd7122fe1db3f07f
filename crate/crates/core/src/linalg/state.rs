use super::matrix::{inner, norm, ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// A unit vector of amplitudes. Global phase is not significant; compare
/// states with [`StateVector::same_ray`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        Self::with_tolerance(amplitudes, &Tolerances::default())
    }

    pub fn with_tolerance(amplitudes: Vec<C64>, tol: &Tolerances) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidArgument(
                "state vector must be non-empty".into(),
            ));
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let n = norm(&amplitudes);
        if (n - 1.0).abs() > tol.unit_norm {
            return Err(Error::NotUnitNorm { norm: n });
        }
        Ok(Self { amplitudes })
    }

    /// Scales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let n = norm(&amplitudes);
        if amplitudes.is_empty() || n < f64::MIN_POSITIVE.sqrt() {
            return Err(Error::NotUnitNorm { norm: n });
        }
        Self::new(amplitudes.into_iter().map(|z| z / n).collect())
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Standard basis vector `e_k`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index out of range");
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[k] = C64::new(1.0, 0.0);
        Self { amplitudes }
    }

    /// Real unit vector `(cos α, sin α)` for `α` in degrees.
    pub fn at_angle_degrees(alpha: f64) -> Self {
        let (s, c) = alpha.to_radians().sin_cos();
        Self {
            amplitudes: vec![C64::new(c, 0.0), C64::new(s, 0.0)],
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(inner(&self.amplitudes, &other.amplitudes))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Self { amplitudes }
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn outer(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }

    /// Equality of rays: `|⟨a|b⟩|² = 1` within `tol`.
    pub fn same_ray(&self, other: &Self, tol: f64) -> bool {
        self.inner(other)
            .map(|z| (z.norm_sqr() - 1.0).abs() <= tol)
            .unwrap_or(false)
    }
}
