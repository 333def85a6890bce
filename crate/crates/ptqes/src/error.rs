use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the spectral machinery.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A NaN or infinity reached a constructor or operation that requires
    /// finite data.
    #[error("non-finite value encountered: {context}")]
    NonFinite { context: &'static str },

    /// Model parameters outside the admissible range (M >= 1, zeta != 0).
    #[error("invalid model parameters: {reason}")]
    InvalidParams { reason: String },

    /// Division by the zero polynomial.
    #[error("polynomial division by the zero polynomial")]
    ZeroDivisor,

    /// Root finding requires degree >= 1.
    #[error("root finding requires degree >= 1 (got {degree:?})")]
    RootsDegree { degree: Option<usize> },

    /// The simultaneous-iteration root finder ran out of its iteration
    /// budget. Carries the best approximations found so far.
    #[error("root finder did not converge within {iterations} iterations (worst residual {worst_residual:.3e})")]
    RootsNotConverged {
        iterations: usize,
        worst_residual: f64,
        partial: Vec<Complex64>,
    },

    /// An energy passed where a root of the critical polynomial was required.
    #[error("E = {energy} is not a root of the critical polynomial (|p(E)| = {residual:.3e} exceeds {tolerance:.3e})")]
    NotACriticalRoot {
        energy: Complex64,
        residual: f64,
        tolerance: f64,
    },

    /// A complex level without a conjugate partner: the spectrum must be
    /// closed under conjugation, so this signals an upstream bug.
    #[error("complex level {level} has no conjugate partner in the spectrum")]
    UnpairedComplexLevel { level: Complex64 },

    /// M = 1 is real for every real coupling, so there is no finite zeta_c.
    #[error("M = 1 has no finite critical coupling: E = 1 - zeta^2 is real for all zeta")]
    NoFiniteCriticalCoupling,

    /// critical_zeta is defined for odd M >= 3 only.
    #[error("critical coupling search requires odd M >= 3 (got M = {m})")]
    CriticalZetaRequiresOddM { m: u32 },

    /// The reality predicate never changed over the searched range.
    #[error("no reality transition found for zeta in ({lo:.3e}, {hi:.3e})")]
    NoTransitionFound { lo: f64, hi: f64 },

    /// A contour sample lies outside the Stokes wedges where the boundary
    /// conditions hold.
    #[error("sample u = {u}, v = {v} lies outside the decay wedge for zeta = {zeta}")]
    OutsideWedge { u: f64, v: f64, zeta: f64 },

    /// Neither the PT-eigenstate test nor the partner search succeeded.
    #[error("PT classification failed: {reason}")]
    PtClassificationFailed { reason: String },

    /// Gauged-matrix dimension above the documented cap.
    #[error("matrix dimension {dim} exceeds the supported cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
