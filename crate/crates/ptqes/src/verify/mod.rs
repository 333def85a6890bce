//! Independent verification of the QES spectra.
//!
//! The gauge transformation mu(z) = z^{(1-M)/2} exp(i zeta (z + 1/z) / 4)
//! in the variable z = e^{2x} maps the Hamiltonian onto the sl(2,R) form
//! H_g = -4 J_0^2 + 2 i zeta (J_- - J_+) - (zeta^2 - M^2) acting on the
//! polynomial module span{1, z, ..., z^{M-1}} with representation index
//! n = M - 1. Its matrix spectrum must coincide with the critical-polynomial
//! roots, giving a route to the same numbers that shares nothing with the
//! P/Q recursions except the root finder.

pub mod hyp;
mod periodic;
mod pt;
mod wavefunction;

pub use periodic::{periodic_partner_check, PeriodicReport};
pub use pt::{
    classify_pt, default_pt_samples, pt_transform, PTClassification, PtTransformed, PtVerdict,
    PT_TOL,
};
pub use wavefunction::{
    build_eigenfunction, decay_check, eigenfunction_for_level, ode_residual, ContourSpec,
    DecayReport, Eigenfunction, RayDecay, DECAY_ONSET,
};

use num_complex::Complex64;

use crate::bender_dunne::ModelParams;
use crate::cpoly::dd::{Dd, DdComplex};
use crate::cpoly::{C64, CPoly, RootOptions};
use crate::error::{Error, Result};

/// Documented cap on the gauged-matrix dimension.
pub const MATRIX_DIM_CAP: usize = 64;

/// Clustering radius for the characteristic-polynomial roots. Much tighter
/// than the general default: the oracle polynomial mixes both branches, so
/// genuinely distinct cross-branch levels can sit closer than 1e-7; pairs
/// below this radius are reported as a doubled midpoint, which still matches
/// the per-branch roots to well under 1e-8.
pub const ORACLE_CLUSTER_RADIUS: f64 = 1e-9;

/// The matrix of H_g in the monomial basis {z^j}, j = 0..M-1.
///
/// Generator actions J+ z^j = j z^{j-1}, J0 z^j = (j - n/2) z^j,
/// J- z^j = (j - n) z^{j+1} with n = M - 1 make it tridiagonal with
/// diagonal -4 (j - n/2)^2 + M^2 - zeta^2, subdiagonal 2 i zeta (j - n) and
/// superdiagonal -2 i zeta j.
#[derive(Clone, Debug)]
pub struct GaugedMatrix {
    dim: usize,
    entries: Vec<C64>,
    params: ModelParams,
}

impl GaugedMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim + col]
    }
}

pub fn build_gauged_matrix(params: &ModelParams) -> GaugedMatrix {
    let m = params.m() as usize;
    let zeta = params.zeta();
    let n = (m - 1) as f64;
    let mut entries = vec![C64::new(0.0, 0.0); m * m];
    for j in 0..m {
        let jf = j as f64;
        let d = jf - n / 2.0;
        entries[j * m + j] = C64::new((m * m) as f64 - zeta * zeta - 4.0 * d * d, 0.0);
        if j + 1 < m {
            entries[(j + 1) * m + j] = C64::new(0.0, 2.0 * zeta * (jf - n));
        }
        if j > 0 {
            entries[(j - 1) * m + j] = C64::new(0.0, -2.0 * zeta * jf);
        }
    }
    GaugedMatrix {
        dim: m,
        entries,
        params: *params,
    }
}

/// Characteristic polynomial det(lambda I - T) of the tridiagonal matrix by
/// the three-term determinant recurrence, in dd arithmetic.
///
/// Every entry is exact in dd (integers and a single zeta^2 = two_prod), so
/// coefficient error is ~1e-31 relative and near-degenerate eigenvalue pairs
/// stay resolvable far below the 1e-8 oracle tolerance.
fn characteristic_polynomial_dd(params: &ModelParams) -> Vec<DdComplex> {
    let m = params.m() as usize;
    let zeta = params.zeta();
    let n = (m - 1) as f64;
    let zeta2 = Dd::from_prod(zeta, zeta);

    // diag[j] = M^2 - 4 (j - n/2)^2 - zeta^2; the first part is an exact
    // small f64 (quarter-integers times 4).
    let diag: Vec<Dd> = (0..m)
        .map(|j| {
            let d = j as f64 - n / 2.0;
            Dd::from_f64((m * m) as f64 - 4.0 * d * d).sub(zeta2)
        })
        .collect();
    // sub[j] * super[j] for columns j and j+1:
    // (2 i zeta (j - n)) * (-2 i zeta (j+1)) = 4 zeta^2 (j - n)(j + 1),
    // real and exact in dd.
    let offprod: Vec<Dd> = (0..m.saturating_sub(1))
        .map(|j| {
            let f = 4.0 * (j as f64 - n) * (j as f64 + 1.0);
            zeta2.mul_f64(f)
        })
        .collect();

    // D_0 = 1, D_1 = lambda - diag[0],
    // D_j = (lambda - diag[j-1]) D_{j-1} - offprod[j-2] D_{j-2}.
    let mut prev: Vec<DdComplex> = vec![DdComplex::ONE];
    let mut curr: Vec<DdComplex> = vec![
        DdComplex::new(diag[0].neg(), Dd::ZERO),
        DdComplex::ONE,
    ];
    for j in 2..=m {
        let d = diag[j - 1];
        let w = offprod[j - 2];
        let mut next = vec![DdComplex::ZERO; j + 1];
        for (k, &c) in curr.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c);
            next[k] = next[k].sub(c.mul(DdComplex::new(d, Dd::ZERO)));
        }
        for (k, &c) in prev.iter().enumerate() {
            next[k] = next[k].sub(c.mul(DdComplex::new(w, Dd::ZERO)));
        }
        prev = curr;
        curr = next;
    }
    curr
}

/// Eigenvalues of the gauged matrix through its characteristic polynomial
/// and the shared root finder. The multiset must reproduce
/// `spectrum::solve` to oracle tolerance.
pub fn matrix_spectrum(matrix: &GaugedMatrix, tol: f64) -> Result<Vec<C64>> {
    if matrix.dim > MATRIX_DIM_CAP {
        return Err(Error::DimensionCap {
            dim: matrix.dim,
            cap: MATRIX_DIM_CAP,
        });
    }
    let coeffs = characteristic_polynomial_dd(&matrix.params);
    CPoly::roots_of_dd(
        &coeffs,
        &RootOptions {
            tol,
            cluster_radius: ORACLE_CLUSTER_RADIUS,
            ..RootOptions::default()
        },
    )
}

/// Greedy multiset distance between two complex multisets of equal size.
/// (Sorted-zip comparison is wrong here: conjugate pairs tie in the real
/// part up to rounding, so sort orders need not agree.)
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len(), "multiset size mismatch");
    let mut rest: Vec<Complex64> = b.to_vec();
    let mut worst = 0.0f64;
    for x in a {
        let (k, d) = rest
            .iter()
            .enumerate()
            .map(|(k, y)| (k, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("non-empty remainder");
        worst = worst.max(d);
        rest.swap_remove(k);
    }
    worst
}
