//! QES spectra of the PT-invariant potential V(x) = -(zeta cosh 2x - iM)^2.
//!
//! The potential admits exactly M closed-form ("quasi-exactly solvable")
//! energy levels for integer M >= 1 and real coupling zeta != 0. They arise
//! as roots of two critical energy polynomials generated by three-term
//! recursions; levels form complex-conjugate pairs for even M (spontaneously
//! broken PT symmetry) and stay real for odd M up to a critical coupling
//! zeta_c(M).
//!
//! Modules:
//! - [`cpoly`]: complex polynomial arithmetic and a deterministic
//!   simultaneous-iteration root finder.
//! - [`bender_dunne`]: the energy-polynomial recursions, truncation rules,
//!   critical polynomials, and wavefunction series coefficients.
//! - [`spectrum`]: classified QES spectra, reality/pairing analysis,
//!   critical-coupling search, coupling scans, and the anti-isospectral map
//!   to the periodic partner potential.
//! - [`verify`]: independent checks — an sl(2,R) gauged-matrix spectral
//!   oracle, closed-form eigenfunctions with analytic ODE residuals,
//!   Stokes-wedge decay, PT classification, and periodic-partner residuals.

pub mod bender_dunne;
pub mod cpoly;
pub mod error;
pub mod spectrum;
pub mod verify;

pub use bender_dunne::{
    coefficients_at_energy, critical_index, critical_polynomial, factorization_check, generate,
    Branch, BranchSpec, FactorizationReport, ModelParams, RecursionTable,
};
pub use cpoly::{C64, CPoly, RootOptions};
pub use error::{Error, Result};
pub use spectrum::{
    anti_isospectral, classify_reality, critical_zeta, scan, solve, solve_with, CriticalCoupling,
    QesLevel, QesSpectrum, Reality, ScanRow, SolveOptions,
};
pub use verify::{
    build_eigenfunction, build_gauged_matrix, classify_pt, decay_check, default_pt_samples,
    eigenfunction_for_level, matrix_spectrum, multiset_distance, ode_residual,
    periodic_partner_check, pt_transform, ContourSpec, DecayReport, Eigenfunction, GaugedMatrix,
    PTClassification, PeriodicReport, PtTransformed, PtVerdict,
};
