//! Numeric thresholds shared by every module.
//!
//! Each invariant check in the crate reads its threshold from a [`Tolerances`]
//! value. Constructors without an explicit tolerance argument use
//! [`Tolerances::default`].

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Entrywise `|A - A†|`, relative to `max(1, max|A_ij|)`.
    pub hermitian: f64,
    /// Relative Frobenius asymmetry accepted by the eigensolver.
    pub eig_hermitian: f64,
    /// Degeneracy grouping threshold, relative to `max(1, spectral range)`.
    pub degeneracy: f64,
    /// `| ‖ψ‖ - 1 |`.
    pub unit_norm: f64,
    /// Frobenius `‖Π² - Π‖`.
    pub projector: f64,
    /// `|trace(Π) - rank|`.
    pub projector_trace: f64,
    /// Numerical rank threshold on Gram-Schmidt residuals.
    pub rank: f64,
    /// Smallest allowed density eigenvalue is `-density`; also `|trace(ρ) - 1|`.
    pub density: f64,
    /// Effect spectrum must lie in `[-effect, 1 + effect]`.
    pub effect: f64,
    /// Frobenius `‖W†W - I‖`.
    pub unitary: f64,
    /// Frobenius `‖V†V - I‖` for supplied eigenbases.
    pub orthonormal: f64,
    /// Probability below which an outcome cannot be conditioned on.
    pub zero_probability: f64,
    /// Matching tolerance when looking up a variable's value.
    pub value_match: f64,
    /// Frobenius distance for pairing eigenprojectors of two variables.
    pub projector_match: f64,
    /// Per-outcome row-sum tolerance of likelihood tables.
    pub likelihood_sum: f64,
    /// Maximum absolute least-squares residual accepted by reconstruction.
    pub reconstruction_noise: f64,
    /// Relative eigenvalue floor of the effect Gram matrix in reconstruction.
    pub span: f64,
    /// Margin used when comparing probabilities in reports.
    pub comparison: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-12,
            eig_hermitian: 1e-8,
            degeneracy: 1e-8,
            unit_norm: 1e-10,
            projector: 1e-10,
            projector_trace: 1e-8,
            rank: 1e-10,
            density: 1e-10,
            effect: 1e-10,
            unitary: 1e-10,
            orthonormal: 1e-10,
            zero_probability: 1e-12,
            value_match: 1e-9,
            projector_match: 1e-8,
            likelihood_sum: 1e-10,
            reconstruction_noise: 1e-6,
            span: 1e-12,
            comparison: 1e-12,
        }
    }
}

impl Tolerances {
    /// `(name, value)` pairs in declaration order, for reports and `--tolerances`.
    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("hermitian", self.hermitian),
            ("eig_hermitian", self.eig_hermitian),
            ("degeneracy", self.degeneracy),
            ("unit_norm", self.unit_norm),
            ("projector", self.projector),
            ("projector_trace", self.projector_trace),
            ("rank", self.rank),
            ("density", self.density),
            ("effect", self.effect),
            ("unitary", self.unitary),
            ("orthonormal", self.orthonormal),
            ("zero_probability", self.zero_probability),
            ("value_match", self.value_match),
            ("projector_match", self.projector_match),
            ("likelihood_sum", self.likelihood_sum),
            ("reconstruction_noise", self.reconstruction_noise),
            ("span", self.span),
            ("comparison", self.comparison),
        ]
    }
}
