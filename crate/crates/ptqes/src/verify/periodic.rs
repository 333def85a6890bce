//! Anti-isospectral partner checks for V(theta) = (zeta cos 2theta - iM)^2.
//!
//! The substitution x = i theta maps a solution psi of the hyperbolic
//! problem with energy E to psi_bar(theta) = psi(i theta) solving
//! -psi_bar'' + V(theta) psi_bar = -E psi_bar. The partner eigenstate is
//! physically acceptable only when it is pi-periodic like the potential;
//! the even-M states pick up a sign under theta -> theta + pi and are
//! rejected on that ground.

use num_complex::Complex64;

use crate::cpoly::C64;

use super::wavefunction::Eigenfunction;

/// Relative tolerance for the periodicity comparison.
const PERIODICITY_TOL: f64 = 1e-8;

/// Fixed sample set on the half-period (0, pi).
fn theta_samples() -> Vec<f64> {
    (0..16).map(|j| 0.15 + 0.19 * j as f64).collect()
}

/// Outcome of [`periodic_partner_check`]: maximum relative residual of
/// -psi_bar'' + V psi_bar = -E psi_bar over the theta samples, and whether
/// psi_bar is pi-periodic (the acceptability criterion).
#[derive(Clone, Copy, Debug)]
pub struct PeriodicReport {
    pub max_residual: f64,
    pub periodic: bool,
}

/// psi(x) and psi''(x) from the exact representation: with
/// g = exp(i zeta cosh 2x / 2),
/// psi'' = g [ phi'' + 2 i zeta sinh 2x phi'
///             + (2 i zeta cosh 2x - zeta^2 sinh^2 2x) phi ].
fn psi_and_second_derivative(f: &Eigenfunction, x: C64) -> (C64, C64) {
    let zeta = f.params().zeta();
    let phi = f.phi_hyp();
    let dphi = phi.derivative();
    let ddphi = dphi.derivative();
    let c2 = (2.0 * x).cosh();
    let s2 = (2.0 * x).sinh();
    let gauge = (Complex64::new(0.0, 0.5 * zeta) * c2).exp();
    let p0 = phi.eval(x);
    let p1 = dphi.eval(x);
    let p2 = ddphi.eval(x);
    let two_i_zeta = Complex64::new(0.0, 2.0 * zeta);
    let psi = gauge * p0;
    let psi2 = gauge * (p2 + two_i_zeta * s2 * p1 + (two_i_zeta * c2 - zeta * zeta * s2 * s2) * p0);
    (psi, psi2)
}

/// Verify the anti-isospectral map on one eigenfunction: psi_bar(theta) =
/// psi(i theta) must satisfy the partner equation with energy -E at real
/// theta (analytic derivatives, no differencing), and is flagged acceptable
/// exactly when it is pi-periodic.
pub fn periodic_partner_check(f: &Eigenfunction, energy: C64) -> PeriodicReport {
    let m = f.params().m() as f64;
    let zeta = f.params().zeta();
    let mut max_residual = 0.0f64;
    let mut periodic = true;
    for theta in theta_samples() {
        let x = C64::new(0.0, theta);
        let (psi, psi2) = psi_and_second_derivative(f, x);
        // -psi_bar'' + V psi_bar - (-E) psi_bar with psi_bar'' = -psi''(x):
        let v = (zeta * (2.0 * theta).cos() - Complex64::new(0.0, m)).powi(2);
        let residual = psi2 + (v + energy) * psi;
        let scale =
            (psi2.norm() + (v * psi).norm() + (energy * psi).norm()).max(f64::MIN_POSITIVE);
        max_residual = max_residual.max(residual.norm() / scale);

        let shifted = f.eval_psi(C64::new(0.0, theta + std::f64::consts::PI));
        let here = f.eval_psi(x);
        let tol = PERIODICITY_TOL * here.norm().max(shifted.norm()).max(1e-12);
        if (shifted - here).norm() > tol {
            periodic = false;
        }
    }
    PeriodicReport {
        max_residual,
        periodic,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bender_dunne::{critical_index, critical_polynomial, Branch, ModelParams};

    use crate::verify::wavefunction::build_eigenfunction;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn m3_partner_states_are_periodic_with_negated_energy() {
        let zeta = 0.3;
        let p = ModelParams::new(3, zeta).unwrap();
        // sinh 2x level: psi_bar contains sin 2theta, pi-periodic.
        let spec = critical_index(3, Branch::Q);
        let f = build_eigenfunction(&p, &spec, c(5.0 - zeta * zeta, 0.0)).unwrap();
        let report = periodic_partner_check(&f, f.energy());
        assert!(report.periodic);
        assert!(report.max_residual < 1e-12, "{}", report.max_residual);
        // Both cosh 2x family members as well.
        let spec = critical_index(3, Branch::P);
        for e in critical_polynomial(&p, Branch::P).roots(1e-12).unwrap() {
            let f = build_eigenfunction(&p, &spec, e).unwrap();
            let report = periodic_partner_check(&f, e);
            assert!(report.periodic);
            assert!(report.max_residual < 1e-12);
        }
    }

    #[test]
    fn m2_partner_states_are_antiperiodic() {
        let zeta = 1.0;
        let p = ModelParams::new(2, zeta).unwrap();
        // phi = cosh x gives psi_bar ~ cos theta: cos(theta + pi) flips sign.
        let spec = critical_index(2, Branch::Q);
        let f = build_eigenfunction(&p, &spec, c(3.0 - zeta * zeta, 2.0 * zeta)).unwrap();
        let report = periodic_partner_check(&f, f.energy());
        assert!(!report.periodic);
        // The partner ODE itself is still satisfied with energy -E.
        assert!(report.max_residual < 1e-12);
    }

    #[test]
    fn residual_detects_wrong_energy_map() {
        let zeta = 0.3;
        let p = ModelParams::new(3, zeta).unwrap();
        let spec = critical_index(3, Branch::Q);
        let f = build_eigenfunction(&p, &spec, c(5.0 - zeta * zeta, 0.0)).unwrap();
        // Feeding E + 1 instead of E must leave an O(1)-scale residual.
        let report = periodic_partner_check(&f, f.energy() + 1.0);
        assert!(report.max_residual > 1e-3);
    }
}
