//! Closed-form QES eigenfunctions and their analytic checks.
//!
//! The full wavefunction is
//! psi(x) = exp(i zeta cosh 2x / 2) * (sinh x)^{s2} * sum_n c_n cosh^n x
//! with n running over one parity class. The reduced function phi (psi
//! without the gauge factor) satisfies
//! phi'' + 2 i zeta sinh 2x phi' + [(E - M^2 + zeta^2)
//!   - 2 i (M-1) zeta cosh 2x] phi = 0,
//! which is what `ode_residual` evaluates on complex contours.

use num_complex::Complex64;

use crate::bender_dunne::{coefficients_at_energy, critical_index, Branch, BranchSpec, ModelParams};
use crate::cpoly::C64;
use crate::error::{Error, Result};
use crate::spectrum::QesLevel;

use super::hyp::HypPoly;

/// A truncated closed-form QES wavefunction.
///
/// `coeffs` are over cosh^{parity + 2k} x, ascending, with leading
/// coefficient 1; parity is 0 for the P branch and 1 for Q. The sinh power
/// s2 = 2s comes with the branch.
#[derive(Clone, Debug)]
pub struct Eigenfunction {
    params: ModelParams,
    spec: BranchSpec,
    energy: C64,
    coeffs: Vec<C64>,
}

impl Eigenfunction {
    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn branch(&self) -> Branch {
        self.spec.branch
    }

    pub fn spec(&self) -> &BranchSpec {
        &self.spec
    }

    pub fn energy(&self) -> C64 {
        self.energy
    }

    pub fn s2(&self) -> u8 {
        self.spec.s2
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// The cosh powers carrying the coefficients.
    pub fn cosh_powers(&self) -> Vec<usize> {
        let parity = match self.spec.branch {
            Branch::P => 0,
            Branch::Q => 1,
        };
        (0..self.coeffs.len()).map(|k| parity + 2 * k).collect()
    }

    /// phi as an exact hyperbolic polynomial.
    pub fn phi_hyp(&self) -> HypPoly {
        let powers = self.cosh_powers();
        let len = powers.last().map_or(1, |p| p + 1);
        let mut expanded = vec![C64::new(0.0, 0.0); len];
        for (&p, &c) in powers.iter().zip(&self.coeffs) {
            expanded[p] = c;
        }
        if self.spec.s2 == 0 {
            HypPoly::from_cosh_poly(expanded)
        } else {
            HypPoly::from_sinh_times(expanded)
        }
    }

    pub fn eval_phi(&self, x: C64) -> C64 {
        self.phi_hyp().eval(x)
    }

    /// The gauge factor exp(i zeta cosh 2x / 2).
    pub fn gauge(&self, x: C64) -> C64 {
        (Complex64::new(0.0, 0.5 * self.params.zeta()) * (2.0 * x).cosh()).exp()
    }

    pub fn eval_psi(&self, x: C64) -> C64 {
        self.gauge(x) * self.eval_phi(x)
    }
}

/// Package the truncated series at a QES energy into an [`Eigenfunction`].
/// E must be a root of the branch's critical polynomial.
pub fn build_eigenfunction(
    params: &ModelParams,
    spec: &BranchSpec,
    energy: C64,
) -> Result<Eigenfunction> {
    let coeffs = coefficients_at_energy(params, spec, energy)?;
    Ok(Eigenfunction {
        params: *params,
        spec: *spec,
        energy,
        coeffs,
    })
}

/// Eigenfunction for one solved level.
pub fn eigenfunction_for_level(params: &ModelParams, level: &QesLevel) -> Result<Eigenfunction> {
    let spec = critical_index(params.m(), level.branch);
    build_eigenfunction(params, &spec, level.energy)
}

/// A sampling line x = u + iv at fixed imaginary offset v.
///
/// Boundary conditions hold inside the Stokes wedges where the gauge
/// magnitude exp(-zeta sinh 2u sin 2v / 2) decays, i.e. where
/// zeta sinh(2u) sin(2v) > 0: for zeta > 0 that is -pi < v < -pi/2 (mod pi)
/// on the u > 0 side and -pi/2 < v < 0 (mod pi) on the u < 0 side.
#[derive(Clone, Debug)]
pub struct ContourSpec {
    pub v: f64,
    pub u_samples: Vec<f64>,
}

impl ContourSpec {
    pub fn new(v: f64, u_samples: Vec<f64>) -> Self {
        ContourSpec { v, u_samples }
    }

    /// The default wedge pair used by the verification suite: 16 samples per
    /// side on v = -3pi/4 (u > 0) and v = -pi/4 (u < 0) for zeta > 0, with
    /// the offsets swapped for zeta < 0.
    pub fn default_wedge_pair(zeta: f64, per_side: usize) -> [ContourSpec; 2] {
        let n = per_side.max(2);
        let us: Vec<f64> = (0..n)
            .map(|k| 0.05 + 0.75 * k as f64 / (n - 1) as f64)
            .collect();
        let neg: Vec<f64> = us.iter().map(|u| -u).collect();
        let (v_pos, v_neg) = if zeta >= 0.0 {
            (-3.0 * std::f64::consts::FRAC_PI_4, -std::f64::consts::FRAC_PI_4)
        } else {
            (-std::f64::consts::FRAC_PI_4, -3.0 * std::f64::consts::FRAC_PI_4)
        };
        [ContourSpec::new(v_pos, us), ContourSpec::new(v_neg, neg)]
    }

    fn check_wedge(&self, zeta: f64) -> Result<()> {
        for &u in &self.u_samples {
            if zeta * (2.0 * u).sinh() * (2.0 * self.v).sin() <= 0.0 {
                return Err(Error::OutsideWedge {
                    u,
                    v: self.v,
                    zeta,
                });
            }
        }
        Ok(())
    }
}

/// Maximum relative residual of the reduced ODE over the contour samples,
/// computed with analytic derivatives of the cosh/sinh basis.
///
/// The residual is |phi'' + 2 i zeta sinh 2x phi' + lin(x) phi| divided by
/// the sum of the individual term magnitudes at the same point, floored by
/// max(1, |E|) |phi| — at M = 1 the exact solution is a constant and every
/// term cancels identically, which would otherwise leave 0/0.
pub fn ode_residual(f: &Eigenfunction, contour: &ContourSpec) -> Result<f64> {
    let zeta = f.params().zeta();
    contour.check_wedge(zeta)?;
    let m = f.params().m() as f64;
    let phi = f.phi_hyp();
    let dphi = phi.derivative();
    let ddphi = dphi.derivative();
    let const_term = f.energy() - m * m + zeta * zeta;
    let two_i_zeta = Complex64::new(0.0, 2.0 * zeta);
    let mut worst = 0.0f64;
    for &u in &contour.u_samples {
        let x = C64::new(u, contour.v);
        let c2 = (2.0 * x).cosh();
        let s2 = (2.0 * x).sinh();
        let p0 = phi.eval(x);
        let p1 = dphi.eval(x);
        let p2 = ddphi.eval(x);
        let t_drift = two_i_zeta * s2 * p1;
        let t_const = const_term * p0;
        let t_cosh = two_i_zeta * (m - 1.0) * c2 * p0;
        let residual = p2 + t_drift + t_const - t_cosh;
        let floor = f.energy().norm().max(1.0) * p0.norm();
        let scale = (p2.norm() + t_drift.norm() + t_const.norm() + t_cosh.norm())
            .max(floor)
            .max(f64::MIN_POSITIVE);
        worst = worst.max(residual.norm() / scale);
    }
    Ok(worst)
}

/// Decay onset: monotone decrease of |psi| is only asserted for |u| at or
/// beyond this value, where the gauge magnitude dominates the polynomial
/// growth of phi.
pub const DECAY_ONSET: f64 = 1.0;

#[derive(Clone, Debug)]
pub struct RayDecay {
    pub v: f64,
    pub decaying: bool,
}

#[derive(Clone, Debug)]
pub struct DecayReport {
    pub rays: Vec<RayDecay>,
    pub all_decaying: bool,
}

/// Check that log |psi| strictly decreases with |u| along each wedge ray
/// beyond [`DECAY_ONSET`]. Log magnitudes are assembled analytically
/// (gauge exponent plus ln |phi|), so deep decay does not underflow.
pub fn decay_check(f: &Eigenfunction, rays: &[ContourSpec]) -> Result<DecayReport> {
    let zeta = f.params().zeta();
    let phi = f.phi_hyp();
    let mut out = Vec::with_capacity(rays.len());
    let mut all = true;
    for ray in rays {
        ray.check_wedge(zeta)?;
        let mut us: Vec<f64> = ray.u_samples.clone();
        us.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
        let mut last: Option<f64> = None;
        let mut decaying = true;
        for &u in us.iter().filter(|u| u.abs() >= DECAY_ONSET) {
            let log_gauge = -0.5 * zeta * (2.0 * u).sinh() * (2.0 * ray.v).sin();
            let log_mag = log_gauge + phi.eval(C64::new(u, ray.v)).norm().ln();
            if let Some(prev) = last {
                if log_mag >= prev {
                    decaying = false;
                }
            }
            last = Some(log_mag);
        }
        all &= decaying;
        out.push(RayDecay {
            v: ray.v,
            decaying,
        });
    }
    Ok(DecayReport {
        rays: out,
        all_decaying: all,
    })
}
