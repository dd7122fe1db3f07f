//! Decision variables as self-adjoint operators with explicit spectral data.
//!
//! A [`DecisionVariable`] keeps its values (strictly increasing), one
//! orthonormal eigenbasis group per value, the eigenprojectors, and the
//! assembled operator `Σ u_j Π_j`. A variable is maximal exactly when every
//! eigenprojector has rank one.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{
    inner, ComplexMatrix, HermitianOperator, Projector, StateVector, C64, ONE, ZERO,
};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionVariable {
    name: String,
    values: Vec<f64>,
    basis: Vec<Vec<StateVector>>,
    projectors: Vec<Projector>,
    operator: HermitianOperator,
}

impl DecisionVariable {
    /// Assembles `Σ u_j Π_j` from values and their eigenvector groups.
    ///
    /// Values may be given in any order; they are stored sorted together
    /// with their groups.
    pub fn from_spectrum(
        name: impl Into<String>,
        values: Vec<f64>,
        basis: Vec<Vec<StateVector>>,
    ) -> Result<Self> {
        Self::from_spectrum_with(name, values, basis, &Tolerances::default())
    }

    pub fn from_spectrum_with(
        name: impl Into<String>,
        values: Vec<f64>,
        basis: Vec<Vec<StateVector>>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if values.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: values.len(),
                found: basis.len(),
            });
        }
        if values.is_empty() || basis.iter().any(Vec::is_empty) {
            return Err(Error::InvalidArgument(
                "every value needs at least one eigenvector".into(),
            ));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("value {bad} is not finite")));
        }
        let dim = basis[0][0].dim();
        let count: usize = basis.iter().map(Vec::len).sum();
        if let Some(v) = basis.iter().flatten().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
        if count != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: count,
            });
        }

        let mut paired: Vec<(f64, Vec<StateVector>)> = values.into_iter().zip(basis).collect();
        paired.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in paired.windows(2) {
            if (w[1].0 - w[0].0).abs() <= tol.value_match {
                return Err(Error::DuplicateValues(w[1].0));
            }
        }

        let flat: Vec<&StateVector> = paired.iter().flat_map(|(_, g)| g).collect();
        let mut gram_defect = 0.0;
        for (i, a) in flat.iter().enumerate() {
            for (j, b) in flat.iter().enumerate() {
                let target = if i == j { ONE } else { ZERO };
                gram_defect += (inner(a.amplitudes(), b.amplitudes()) - target).norm_sqr();
            }
        }
        let gram_defect = gram_defect.sqrt();
        if gram_defect > tol.orthonormal {
            return Err(Error::NonOrthonormalBasis {
                deviation: gram_defect,
            });
        }

        let (values, basis): (Vec<f64>, Vec<Vec<StateVector>>) = paired.into_iter().unzip();
        Self::assemble(name.into(), values, basis, tol)
    }

    /// Reads values and eigenspaces off an operator's spectrum. Values are the
    /// means of the degeneracy groups.
    pub fn from_operator(name: impl Into<String>, operator: &HermitianOperator) -> Result<Self> {
        let d = operator.eig()?;
        let mut values = Vec::new();
        let mut basis = Vec::new();
        for g in d.degeneracy_groups() {
            let lambdas = &d.eigenvalues()[g.clone()];
            values.push(lambdas.iter().sum::<f64>() / lambdas.len() as f64);
            basis.push(
                d.eigenvectors()[g.clone()]
                    .iter()
                    .map(|v| StateVector::normalized(v.clone()))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Self::from_spectrum(name, values, basis)
    }

    /// Two-valued variable in dimension 2: `values[0]` has eigenvector at
    /// `α` degrees and `values[1]` at `α + 90` degrees.
    pub fn from_angle_degrees(
        name: impl Into<String>,
        values: [f64; 2],
        alpha: f64,
    ) -> Result<Self> {
        Self::from_spectrum(
            name,
            values.to_vec(),
            vec![
                vec![StateVector::at_angle_degrees(alpha)],
                vec![StateVector::at_angle_degrees(alpha + 90.0)],
            ],
        )
    }

    fn assemble(
        name: String,
        values: Vec<f64>,
        basis: Vec<Vec<StateVector>>,
        tol: &Tolerances,
    ) -> Result<Self> {
        let dim = basis[0][0].dim();
        let mut projectors = Vec::with_capacity(values.len());
        let mut op = ComplexMatrix::zeros(dim, dim);
        for (u, group) in values.iter().zip(&basis) {
            let mut p = ComplexMatrix::zeros(dim, dim);
            for v in group {
                p = &p + &v.outer();
            }
            op = &op + &p.scale_real(*u);
            projectors.push(Projector::with_tolerance(p, tol)?);
        }
        Ok(Self {
            name,
            values,
            basis,
            projectors,
            operator: HermitianOperator::with_tolerance(op, tol)?,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.operator.dim()
    }

    /// Outcome values, strictly increasing.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.operator
    }

    /// One eigenprojector per value, in value order.
    pub fn projectors(&self) -> &[Projector] {
        &self.projectors
    }

    /// Orthonormal eigenvector groups, one per value.
    pub fn eigenbasis(&self) -> &[Vec<StateVector>] {
        &self.basis
    }

    pub fn index_of(&self, value: f64) -> Result<usize> {
        self.index_of_with(value, Tolerances::default().value_match)
    }

    pub fn index_of_with(&self, value: f64, tol: f64) -> Result<usize> {
        self.values
            .iter()
            .position(|u| (u - value).abs() <= tol)
            .ok_or(Error::UnknownValue(value))
    }

    pub fn projector_for(&self, value: f64) -> Result<&Projector> {
        Ok(&self.projectors[self.index_of(value)?])
    }

    pub fn is_maximal(&self) -> bool {
        self.projectors.iter().all(|p| p.rank() == 1)
    }

    /// The variable `f(θ)`: values `f(u_j)` merged when they agree to 12
    /// significant digits, with the eigenspaces of merged values joined.
    pub fn apply_function(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        let mut merged: BTreeMap<u64, (f64, Vec<StateVector>)> = BTreeMap::new();
        let mut order = Vec::new();
        for (u, group) in self.values.iter().zip(&self.basis) {
            let fu = f(*u);
            if !fu.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "f({u}) = {fu} is not finite"
                )));
            }
            let key = round_significant(fu).to_bits();
            let entry = merged.entry(key).or_insert_with(|| {
                order.push(key);
                (fu, Vec::new())
            });
            entry.1.extend(group.iter().cloned());
        }
        let mut entries: Vec<(f64, Vec<StateVector>)> = order
            .into_iter()
            .map(|k| merged.remove(&k).unwrap())
            .collect();
        entries.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (values, basis) = entries.into_iter().unzip();
        Self::assemble(self.name.clone(), values, basis, &Tolerances::default())
    }

    /// The unitarily related variable with operator `W⁻¹ A W`.
    pub fn conjugate(&self, w: &UnitaryOperator) -> Result<Self> {
        if w.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: w.dim(),
            });
        }
        let w_inv = w.inverse();
        let basis = self
            .basis
            .iter()
            .map(|g| {
                g.iter()
                    .map(|v| StateVector::normalized(w_inv.apply(v.amplitudes())?))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::assemble(
            self.name.clone(),
            self.values.clone(),
            basis,
            &Tolerances::default(),
        )
    }

    /// Do both variables have the same eigenprojectors up to relabeling?
    pub fn is_one_to_one_related(&self, other: &Self) -> Result<bool> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        if self.projectors.len() != other.projectors.len() {
            return Ok(false);
        }
        let tol = Tolerances::default().projector_match;
        let mut used = vec![false; other.projectors.len()];
        for p in &self.projectors {
            let hit = other.projectors.iter().enumerate().position(|(k, q)| {
                !used[k] && p.matrix().distance(q.matrix()).is_some_and(|d| d <= tol)
            });
            match hit {
                Some(k) => used[k] = true,
                None => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Maximal, and not one-to-one related to `other` (also maximal).
    pub fn is_complementary_to(&self, other: &Self) -> Result<bool> {
        Ok(self.is_maximal() && other.is_maximal() && !self.is_one_to_one_related(other)?)
    }
}

fn round_significant(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Matrix with `W†W = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryOperator {
    matrix: ComplexMatrix,
}

impl UnitaryOperator {
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
        let n = matrix.rows();
        let deviation =
            (&(&matrix.adjoint() * &matrix) - &ComplexMatrix::identity(n)).frobenius_norm();
        if deviation > tol.unitary {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { matrix })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(n),
        }
    }

    /// Real 2×2 `(1/√2)[[1, 1], [1, -1]]`.
    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            matrix: ComplexMatrix::from_real_rows(&[vec![h, h], vec![h, -h]]).unwrap(),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn inverse(&self) -> ComplexMatrix {
        self.matrix.adjoint()
    }

    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        self.matrix.apply(v)
    }
}
