//! Cross-module invariants and property tests.

use num_complex::Complex64;
use proptest::prelude::*;

use ptqes::{
    critical_zeta, multiset_distance, pt_transform, solve, C64, CPoly, ModelParams, Reality,
    eigenfunction_for_level,
};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn params(m: u32, zeta: f64) -> ModelParams {
    ModelParams::new(m, zeta).unwrap()
}

/// Unit-scale complex coefficients with a leading coefficient kept away
/// from zero so the degree is meaningful.
fn poly_strategy(max_degree: usize) -> impl Strategy<Value = CPoly> {
    (1..=max_degree).prop_flat_map(|d| {
        (
            prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d),
            (0.1f64..1.0, -1.0f64..1.0),
            prop::bool::ANY,
        )
            .prop_map(|(low, (lead_re, lead_im), flip)| {
                let mut coeffs: Vec<C64> = low.into_iter().map(|(r, i)| c(r, i)).collect();
                coeffs.push(c(if flip { -lead_re } else { lead_re }, lead_im));
                CPoly::new(coeffs).unwrap()
            })
    })
}

fn real_poly_strategy(max_degree: usize) -> impl Strategy<Value = CPoly> {
    (1..=max_degree).prop_flat_map(|d| {
        (prop::collection::vec(-1.0f64..1.0, d), 0.1f64..1.0).prop_map(|(low, lead)| {
            let mut coeffs: Vec<C64> = low.into_iter().map(|r| c(r, 0.0)).collect();
            coeffs.push(c(lead, 0.0));
            CPoly::new(coeffs).unwrap()
        })
    })
}

/// Monic with unit-scale lower coefficients, the regime divrem is used in
/// (dividing by monic critical polynomials). A tiny leading coefficient
/// would make quotient growth, not division itself, dominate the error.
fn monic_poly_strategy(max_degree: usize) -> impl Strategy<Value = CPoly> {
    (1..=max_degree).prop_flat_map(|d| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d).prop_map(|low| {
            let mut coeffs: Vec<C64> = low.into_iter().map(|(r, i)| c(r, i)).collect();
            coeffs.push(c(1.0, 0.0));
            CPoly::new(coeffs).unwrap()
        })
    })
}

proptest! {
    /// divrem reconstruction: ||a - (q b + r)||_inf <= 1e-12 ||a||_inf.
    #[test]
    fn divrem_reconstructs(a in poly_strategy(12), b in monic_poly_strategy(6)) {
        let (q, r) = a.divrem(&b).unwrap();
        let back = q.mul(&b).add(&r);
        let diff = a.sub(&back).max_coeff_norm();
        prop_assert!(diff <= 1e-12 * a.max_coeff_norm().max(1e-30));
        if let Some(dr) = r.degree() {
            prop_assert!(dr < b.degree().unwrap());
        }
    }

    /// Root count equals the degree and every root satisfies the residual
    /// contract |p(r)| <= tol * scale(p, r).
    #[test]
    fn roots_count_and_residuals(p in poly_strategy(8)) {
        let tol = 1e-10;
        let roots = p.roots(tol).unwrap();
        prop_assert_eq!(roots.len(), p.degree().unwrap());
        for r in roots {
            let residual = p.eval(r).norm();
            prop_assert!(residual <= tol * p.root_scale(r),
                "residual {} vs scale {}", residual, p.root_scale(r));
        }
    }

    /// Real-coefficient polynomials have conjugation-closed root multisets.
    #[test]
    fn real_poly_roots_conjugate_closed(p in real_poly_strategy(8)) {
        let roots = p.roots(1e-10).unwrap();
        let conj: Vec<C64> = roots.iter().map(|r| r.conj()).collect();
        prop_assert!(multiset_distance(&roots, &conj) <= 1e-7);
    }
}

#[test]
fn spectra_are_conjugation_closed() {
    for m in 1..=10u32 {
        for zeta in [0.1, 0.7, 1.3, 2.0] {
            let spectrum = solve(&params(m, zeta)).unwrap();
            let energies = spectrum.energies();
            let conj: Vec<C64> = energies.iter().map(|e| e.conj()).collect();
            let d = multiset_distance(&energies, &conj);
            assert!(d <= 1e-8, "M = {m}, zeta = {zeta}: closure distance {d}");
        }
    }
}

#[test]
fn even_m_has_no_real_levels() {
    for m in [2u32, 4, 6] {
        for zeta in [0.1, 0.5, 1.0, 2.0] {
            let spectrum = solve(&params(m, zeta)).unwrap();
            let real_count = spectrum
                .levels
                .iter()
                .filter(|l| l.reality == Reality::Real)
                .count();
            assert_eq!(real_count, 0, "M = {m}, zeta = {zeta}");
            assert!(spectrum.pt_broken);
        }
    }
}

#[test]
fn odd_m_below_critical_is_entirely_real() {
    for m in [3u32, 5, 7] {
        let zc = critical_zeta(m, 1e-10).unwrap().zeta_c;
        let spectrum = solve(&params(m, 0.9 * zc)).unwrap();
        assert!(
            spectrum.levels.iter().all(|l| l.reality == Reality::Real),
            "M = {m} at 0.9 zeta_c"
        );
        assert!(!spectrum.pt_broken);
    }
}

#[test]
fn pt_applied_twice_negates_broken_doublets() {
    // On the even-M doublets PT^2 = -1 (cosh -> -i sinh -> -cosh).
    for (m, zeta) in [(2u32, 1.0), (4, 0.5)] {
        let p = params(m, zeta);
        let spectrum = solve(&p).unwrap();
        for level in &spectrum.levels {
            let f = eigenfunction_for_level(&p, level).unwrap();
            let twice = pt_transform(&f).phi().pt();
            let minus = f.phi_hyp().scale(c(-1.0, 0.0));
            for &x in &[c(0.6, 0.2), c(-0.4, 0.9)] {
                let a = twice.eval(x);
                let b = minus.eval(x);
                assert!(
                    (a - b).norm() <= 1e-10 * (1.0 + b.norm()),
                    "M = {m}, E = {}",
                    level.energy
                );
            }
        }
    }
}

/// Dense coupling scan cross-checking the bisection result for M = 5:
/// the reality flip must happen inside one 1e-3 grid step, and the
/// bisection value (also frozen from a 50-digit computation) must land in
/// that step.
#[test]
fn critical_zeta_m5_dense_grid_cross_check() {
    let cc = critical_zeta(5, 1e-9).unwrap();
    let mut flip: Option<(f64, f64)> = None;
    let mut prev: Option<(f64, bool)> = None;
    for k in 0..=20 {
        let zeta = 0.290 + 1e-3 * k as f64;
        let spectrum = solve(&params(5, zeta)).unwrap();
        let all_real = spectrum.levels.iter().all(|l| l.reality == Reality::Real);
        if let Some((pz, pr)) = prev {
            if pr && !all_real {
                flip = Some((pz, zeta));
            }
        }
        prev = Some((zeta, all_real));
    }
    let (lo, hi) = flip.expect("reality flip must occur in [0.290, 0.310]");
    assert!(
        lo <= cc.zeta_c && cc.zeta_c <= hi,
        "bisection zeta_c = {} outside grid bracket ({lo}, {hi})",
        cc.zeta_c
    );
    assert!((cc.zeta_c - 0.295_925_899_851_580_96).abs() < 1e-8);
}

#[test]
fn critical_zeta_m7_regression() {
    // Frozen from a 50-digit bisection of the same recursions.
    let cc = critical_zeta(7, 1e-9).unwrap();
    assert!(
        (cc.zeta_c - 0.210_608_447_803_600_68).abs() < 1e-8,
        "zeta_c(7) = {}",
        cc.zeta_c
    );
}

#[test]
fn critical_coupling_bracket_endpoints_are_classified_as_stated() {
    let cc = critical_zeta(3, 1e-8).unwrap();
    let below = solve(&params(3, cc.zeta_c - cc.bracket_width)).unwrap();
    assert!(below.levels.iter().all(|l| l.reality == Reality::Real));
    let above = solve(&params(3, cc.zeta_c + cc.bracket_width)).unwrap();
    assert!(above
        .levels
        .iter()
        .any(|l| l.reality == Reality::PairMember));
}
