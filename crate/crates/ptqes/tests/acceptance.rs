//! Acceptance suite: one test per shipped guarantee, one PASS line each.
//!
//! Run with `cargo test -p ptqes --test acceptance -- --nocapture` to see
//! the per-criterion lines.

use std::time::Instant;

use ptqes::{
    anti_isospectral, build_gauged_matrix, classify_pt, critical_zeta, default_pt_samples,
    eigenfunction_for_level, factorization_check, matrix_spectrum, multiset_distance,
    ode_residual, periodic_partner_check, solve, Branch, C64, ContourSpec, ModelParams,
    PtVerdict, Reality,
};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn params(m: u32, zeta: f64) -> ModelParams {
    ModelParams::new(m, zeta).unwrap()
}

#[test]
fn criterion_01_m2_fixture() {
    let start = Instant::now();
    for zeta in [0.5, 1.0, 2.0] {
        let spectrum = solve(&params(2, zeta)).unwrap();
        let want = [
            c(3.0 - zeta * zeta, 2.0 * zeta),
            c(3.0 - zeta * zeta, -2.0 * zeta),
        ];
        let d = multiset_distance(&spectrum.energies(), &want);
        assert!(d <= 1e-10, "zeta = {zeta}: multiset distance {d}");
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_millis() < 10,
        "three M=2 solves took {elapsed:?}"
    );
    println!("PASS criterion 1: M=2 levels 3 - zeta^2 +- 2 i zeta within 1e-10 in {elapsed:?}");
}

#[test]
fn criterion_02_m1_fixture() {
    for zeta in [0.1, 1.0] {
        let spectrum = solve(&params(1, zeta)).unwrap();
        assert_eq!(spectrum.levels.len(), 1);
        let d = (spectrum.levels[0].energy - c(1.0 - zeta * zeta, 0.0)).norm();
        assert!(d <= 1e-12, "zeta = {zeta}: distance {d}");
    }
    println!("PASS criterion 2: M=1 level 1 - zeta^2 within 1e-12");
}

#[test]
fn criterion_03_m3_fixture() {
    let spectrum = solve(&params(3, 0.3)).unwrap();
    let want = [c(4.91, 0.0), c(5.31, 0.0), c(8.51, 0.0)];
    let d = multiset_distance(&spectrum.energies(), &want);
    assert!(d <= 1e-9, "multiset distance {d}");
    println!("PASS criterion 3: M=3, zeta=0.3 levels {{4.91, 5.31, 8.51}} within 1e-9");
}

#[test]
fn criterion_04_m4_fixture() {
    let zeta = 0.2f64;
    let spectrum = solve(&params(4, zeta)).unwrap();
    // E^1_pm = 11 - z^2 - 2iz +- 4 sqrt(1 - iz - z^2) and the conjugate
    // family, with principal square roots; compared as multisets to avoid
    // branch ambiguity.
    let s1 = (c(1.0, -zeta) - zeta * zeta).sqrt();
    let s2 = (c(1.0, zeta) - zeta * zeta).sqrt();
    let want = [
        c(11.0 - zeta * zeta, -2.0 * zeta) + 4.0 * s1,
        c(11.0 - zeta * zeta, -2.0 * zeta) - 4.0 * s1,
        c(11.0 - zeta * zeta, 2.0 * zeta) + 4.0 * s2,
        c(11.0 - zeta * zeta, 2.0 * zeta) - 4.0 * s2,
    ];
    let d = multiset_distance(&spectrum.energies(), &want);
    assert!(d <= 1e-9, "multiset distance {d}");
    println!("PASS criterion 4: M=4, zeta=0.2 matches both closed-form conjugate pairs within 1e-9");
}

#[test]
fn criterion_05_critical_coupling_m3() {
    let start = Instant::now();
    let cc = critical_zeta(3, 1e-8).unwrap();
    assert!(
        (cc.zeta_c - 0.5).abs() <= 1e-8,
        "zeta_c = {} (width {})",
        cc.zeta_c,
        cc.bracket_width
    );
    // Degeneracy of the two highest levels at zeta = 1/2, multiplicity 2.
    let spectrum = solve(&params(3, 0.5)).unwrap();
    let top = &spectrum.levels[2];
    let second = &spectrum.levels[1];
    assert_eq!(top.multiplicity, 2);
    assert_eq!(second.multiplicity, 2);
    assert!((top.energy - c(6.75, 0.0)).norm() <= 1e-9);
    assert!((second.energy - top.energy).norm() <= 1e-9);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "PASS criterion 5: zeta_c(3) = {} +- {:.1e}, top-two degeneracy multiplicity 2 in {elapsed:?}",
        cc.zeta_c, cc.bracket_width
    );
}

#[test]
fn criterion_06_oracle_equivalence() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for m in 1..=10u32 {
        for zeta in [0.1, 0.3, 0.7, 1.0, 1.5] {
            let p = params(m, zeta);
            let spectrum = solve(&p).unwrap();
            let oracle = matrix_spectrum(&build_gauged_matrix(&p), 1e-10).unwrap();
            let d = multiset_distance(&oracle, &spectrum.energies());
            assert!(d <= 1e-8, "M = {m}, zeta = {zeta}: multiset distance {d}");
            worst = worst.max(d);
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "PASS criterion 6: gauged-matrix spectra match critical-polynomial roots for M=1..10 (worst {worst:.2e}) in {elapsed:?}"
    );
}

#[test]
fn criterion_07_factorization_property() {
    let mut worst = 0.0f64;
    for m in 1..=10u32 {
        for zeta in [0.3, 1.1, 2.0] {
            for branch in [Branch::P, Branch::Q] {
                let report = factorization_check(&params(m, zeta), branch, 4).unwrap();
                assert!(
                    report.max_relative <= 1e-10,
                    "M = {m}, zeta = {zeta}, {branch}: {report:?}"
                );
                worst = worst.max(report.max_relative);
            }
        }
    }
    println!(
        "PASS criterion 7: P and Q members through critical+4 divide exactly (worst relative remainder {worst:.2e})"
    );
}

#[test]
fn criterion_08_ode_residuals() {
    let mut worst = 0.0f64;
    for m in 1..=8u32 {
        for zeta in [0.2, 0.7] {
            let p = params(m, zeta);
            let spectrum = solve(&p).unwrap();
            let contours = ContourSpec::default_wedge_pair(zeta, 16);
            for level in &spectrum.levels {
                let f = eigenfunction_for_level(&p, level).unwrap();
                for contour in &contours {
                    let r = ode_residual(&f, contour).unwrap();
                    assert!(
                        r <= 1e-8,
                        "M = {m}, zeta = {zeta}, E = {}: residual {r}",
                        level.energy
                    );
                    worst = worst.max(r);
                }
            }
        }
    }
    println!(
        "PASS criterion 8: analytic ODE residuals <= 1e-8 on 32 wedge samples for all levels, M <= 8 (worst {worst:.2e})"
    );
}

#[test]
fn criterion_09_pt_classification() {
    let samples = default_pt_samples();
    // Even M: every level broken, with the conjugate partner found.
    for m in [2u32, 4, 6] {
        for zeta in [0.5, 1.0] {
            let p = params(m, zeta);
            let spectrum = solve(&p).unwrap();
            let candidates: Vec<_> = spectrum
                .levels
                .iter()
                .map(|l| eigenfunction_for_level(&p, l).unwrap())
                .collect();
            for (idx, f) in candidates.iter().enumerate() {
                let cls = classify_pt(f, &candidates, &samples).unwrap();
                match cls.verdict {
                    PtVerdict::Broken { partner } => {
                        assert_eq!(spectrum.levels[idx].reality, Reality::PairMember);
                        let de = (candidates[partner].energy() - f.energy().conj()).norm();
                        assert!(de <= 1e-8);
                    }
                    PtVerdict::Unbroken { .. } => {
                        panic!("M = {m}, zeta = {zeta}, level {idx}: expected broken")
                    }
                }
            }
        }
    }
    // Odd M at 0.9 zeta_c (any zeta for M=1): every level a PT eigenstate
    // with unimodular eigenvalue, agreeing with the reality classification.
    for m in [1u32, 3, 5] {
        let zeta = if m == 1 {
            0.5
        } else {
            0.9 * critical_zeta(m, 1e-10).unwrap().zeta_c
        };
        let p = params(m, zeta);
        let spectrum = solve(&p).unwrap();
        let candidates: Vec<_> = spectrum
            .levels
            .iter()
            .map(|l| eigenfunction_for_level(&p, l).unwrap())
            .collect();
        for (idx, f) in candidates.iter().enumerate() {
            assert_eq!(spectrum.levels[idx].reality, Reality::Real);
            let cls = classify_pt(f, &candidates, &samples).unwrap();
            match cls.verdict {
                PtVerdict::Unbroken { eigenvalue } => {
                    assert!(
                        (eigenvalue.norm() - 1.0).abs() <= 1e-8,
                        "M = {m}: |lambda| = {}",
                        eigenvalue.norm()
                    );
                }
                PtVerdict::Broken { .. } => {
                    panic!("M = {m}, level {idx}: expected unbroken")
                }
            }
        }
    }
    // The M=3 verdicts carry the stated eigenvalues: +1 on the sinh 2x
    // level (Q branch), -1 on the two cosh 2x levels.
    let p = params(3, 0.3);
    let spectrum = solve(&p).unwrap();
    for level in &spectrum.levels {
        let f = eigenfunction_for_level(&p, level).unwrap();
        let cls = classify_pt(&f, &[], &samples).unwrap();
        let want = match level.branch {
            Branch::Q => c(1.0, 0.0),
            Branch::P => c(-1.0, 0.0),
        };
        match cls.verdict {
            PtVerdict::Unbroken { eigenvalue } => {
                assert!(
                    (eigenvalue - want).norm() <= 1e-8,
                    "branch {}: lambda = {eigenvalue}",
                    level.branch
                );
            }
            _ => panic!("expected unbroken"),
        }
    }
    println!(
        "PASS criterion 9: PT broken for M in {{2,4,6}}, unbroken (|lambda| = 1) for M in {{1,3,5}} at 0.9 zeta_c; M=3 eigenvalues +1/-1/-1"
    );
}

#[test]
fn criterion_10_anti_isospectral_and_periodicity() {
    // Negation of the energy multiset is exact.
    for (m, zeta) in [(2u32, 1.0), (3, 0.3), (4, 0.2), (5, 0.9)] {
        let spectrum = solve(&params(m, zeta)).unwrap();
        let partner = anti_isospectral(&spectrum);
        let negated: Vec<C64> = spectrum.energies().iter().map(|e| -e).collect();
        let d = multiset_distance(&partner.energies(), &negated);
        assert_eq!(d, 0.0, "M = {m}: negation must be exact");
    }
    // M=3: partner ODE residual <= 1e-8 per level, all pi-periodic.
    let p = params(3, 0.3);
    let spectrum = solve(&p).unwrap();
    let mut worst = 0.0f64;
    for level in &spectrum.levels {
        let f = eigenfunction_for_level(&p, level).unwrap();
        let report = periodic_partner_check(&f, level.energy);
        assert!(report.periodic, "M=3 level {} must be periodic", level.energy);
        assert!(report.max_residual <= 1e-8);
        worst = worst.max(report.max_residual);
    }
    // Even M: every partner eigenfunction fails pi-periodicity.
    for (m, zeta) in [(2u32, 1.0), (4, 0.5), (6, 0.7)] {
        let p = params(m, zeta);
        let spectrum = solve(&p).unwrap();
        for level in &spectrum.levels {
            let f = eigenfunction_for_level(&p, level).unwrap();
            let report = periodic_partner_check(&f, level.energy);
            assert!(
                !report.periodic,
                "M = {m} level {} must be flagged non-periodic",
                level.energy
            );
        }
    }
    println!(
        "PASS criterion 10: exact multiset negation; M=3 partner residuals <= 1e-8 (worst {worst:.2e}); even-M partners non-periodic"
    );
}

#[test]
fn criterion_11_counting_property() {
    for m in 1..=12u32 {
        let spectrum = solve(&params(m, 0.4)).unwrap();
        assert_eq!(
            spectrum.levels.len(),
            m as usize,
            "M = {m} must have exactly M levels"
        );
    }
    println!("PASS criterion 11: |levels| = M for M = 1..12 at zeta = 0.4");
}
