//! Deterministic simultaneous root finding (Aberth-Ehrlich) on dd
//! coefficients.
//!
//! Pipeline: strip exact zero roots, normalize to monic, rescale the
//! variable by a power of two that balances coefficient magnitudes, run
//! Aberth-Ehrlich from a fixed circle of initial guesses, polish each
//! approximation with a multiplicity-aware Schroeder/Newton step, then
//! cluster approximations closer than the configured radius and report each
//! cluster centroid with its multiplicity. Every accepted root r satisfies
//! |p(r)| <= tol * scale(p, r) with scale(p, r) = sum_k |a_k| |r|^k.
//!
//! No randomness anywhere: identical inputs give identical outputs.

use num_complex::Complex64;

use super::dd::DdComplex;
use crate::error::{Error, Result};

/// Options for [`crate::cpoly::CPoly::roots_with`].
#[derive(Clone, Debug)]
pub struct RootOptions {
    /// Relative residual acceptance: |p(r)| <= tol * sum_k |a_k| |r|^k.
    pub tol: f64,
    /// Absolute clustering radius for multiple-root reporting.
    pub cluster_radius: f64,
    /// Aberth-Ehrlich iteration budget.
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tol: 1e-10,
            cluster_radius: 1e-7,
            max_iter: 400,
        }
    }
}

/// Evaluate p, p', p'' at z by a fused Horner pass.
fn horner2(coeffs: &[DdComplex], z: DdComplex) -> (DdComplex, DdComplex, DdComplex) {
    let d = coeffs.len() - 1;
    let mut p = coeffs[d];
    let mut dp = DdComplex::ZERO;
    let mut ddp = DdComplex::ZERO;
    for k in (0..d).rev() {
        ddp = ddp.mul(z).add(dp);
        dp = dp.mul(z).add(p);
        p = p.mul(z).add(coeffs[k]);
    }
    (p, dp, ddp.mul_f64(2.0))
}

fn horner(coeffs: &[DdComplex], z: DdComplex) -> DdComplex {
    let mut p = coeffs[coeffs.len() - 1];
    for k in (0..coeffs.len() - 1).rev() {
        p = p.mul(z).add(coeffs[k]);
    }
    p
}

/// sum_k |a_k| |r|^k, the magnitude scale used in the acceptance contract.
pub(crate) fn residual_scale(coeffs: &[DdComplex], r: Complex64) -> f64 {
    let rn = r.norm();
    let mut pow = 1.0f64;
    let mut s = 0.0f64;
    for c in coeffs {
        s += c.abs() * pow;
        pow *= rn;
    }
    s.max(f64::MIN_POSITIVE)
}

/// Power-of-two variable scale balancing coefficient magnitudes of a monic
/// polynomial. Exact to apply and to undo.
fn balance_scale(coeffs: &[DdComplex]) -> f64 {
    let d = coeffs.len() - 1;
    let mut e = 0.0f64;
    for (k, c) in coeffs.iter().enumerate().take(d) {
        let a = c.abs();
        if a > 0.0 {
            e = e.max(a.log2() / (d - k) as f64);
        }
    }
    let e = e.round().clamp(-511.0, 511.0);
    f64::powi(2.0, e as i32)
}

struct Prepared {
    /// Monic, variable-scaled coefficients (roots in w = E / sigma).
    scaled: Vec<DdComplex>,
    sigma: f64,
    zero_roots: usize,
}

fn prepare(coeffs: &[DdComplex]) -> Prepared {
    let mut cs: Vec<DdComplex> = coeffs.to_vec();
    let mut zero_roots = 0;
    while cs.len() > 1 && cs[0].abs() == 0.0 {
        cs.remove(0);
        zero_roots += 1;
    }
    let lead = cs[cs.len() - 1];
    let monic: Vec<DdComplex> = cs.iter().map(|c| c.div(lead)).collect();
    let sigma = balance_scale(&monic);
    let d = monic.len() - 1;
    let scaled: Vec<DdComplex> = monic
        .iter()
        .enumerate()
        .map(|(k, c)| c.mul_f64(sigma.powi(k as i32 - d as i32)))
        .collect();
    Prepared {
        scaled,
        sigma,
        zero_roots,
    }
}

/// Fixed initial guesses: Cauchy-bound circle with an angular offset that
/// breaks real-axis symmetry.
fn initial_guesses(coeffs: &[DdComplex]) -> Vec<DdComplex> {
    let d = coeffs.len() - 1;
    let radius = 1.0 + coeffs.iter().take(d).map(|c| c.abs()).fold(0.0, f64::max);
    (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.41;
            DdComplex::from_f64(radius * theta.cos(), radius * theta.sin())
        })
        .collect()
}

fn aberth(coeffs: &[DdComplex], max_iter: usize) -> (Vec<DdComplex>, usize) {
    let d = coeffs.len() - 1;
    let mut z = initial_guesses(coeffs);
    let mut prev_worst = f64::INFINITY;
    let mut stall = 0usize;
    let mut iters = 0;
    for it in 0..max_iter {
        iters = it + 1;
        let mut worst = 0.0f64;
        for i in 0..d {
            let (p, dp, _) = horner2(coeffs, z[i]);
            if p.abs() == 0.0 {
                continue;
            }
            let w = if dp.abs() == 0.0 {
                // Exactly at a critical point: take a deterministic step off it.
                DdComplex::from_f64(1e-3 * (1.0 + z[i].abs()), 0.0)
            } else {
                p.div(dp)
            };
            let mut sum = DdComplex::ZERO;
            for (j, zj) in z.iter().enumerate() {
                if j == i {
                    continue;
                }
                let diff = z[i].sub(*zj);
                if diff.abs() == 0.0 {
                    continue;
                }
                sum = sum.add(DdComplex::ONE.div(diff));
            }
            let denom = DdComplex::ONE.sub(w.mul(sum));
            let delta = if denom.abs() < 1e-30 { w } else { w.div(denom) };
            z[i] = z[i].sub(delta);
            worst = worst.max(delta.abs() / (1.0 + z[i].abs()));
        }
        if worst <= 1e-29 {
            break;
        }
        // Multiple roots converge linearly and level off well above dd
        // epsilon; hand those to the Schroeder polish.
        if worst < 1e-8 && worst >= 0.5 * prev_worst {
            stall += 1;
            if stall > 12 {
                break;
            }
        } else {
            stall = 0;
        }
        prev_worst = worst;
    }
    (z, iters)
}

/// Estimate the multiplicity at an approximate root from
/// L = p p'' / p'^2 -> (m-1)/m near an m-fold root.
fn multiplicity_estimate(p: DdComplex, dp: DdComplex, ddp: DdComplex, degree: usize) -> usize {
    let pa = p.abs();
    let dpa = dp.abs();
    let ddpa = ddp.abs();
    if pa == 0.0 {
        return 1;
    }
    if dpa * dpa < 1e-3 * pa * ddpa {
        // p' lost all significance relative to the curvature: deep inside a
        // cluster, treat as (at least) a double point.
        return 2.min(degree);
    }
    let l = p.mul(ddp).div(dp.mul(dp)).to_c64();
    let denom = Complex64::new(1.0, 0.0) - l;
    if denom.norm() < 1e-12 {
        return degree;
    }
    let m = (1.0 / denom).re.round();
    if m.is_finite() && m >= 1.5 {
        (m as usize).clamp(1, degree)
    } else {
        1
    }
}

fn polish(coeffs: &[DdComplex], mut z: DdComplex) -> DdComplex {
    let degree = coeffs.len() - 1;
    let (mut p, mut dp, mut ddp) = horner2(coeffs, z);
    let mut best = z;
    let mut best_res = p.abs();
    for _ in 0..60 {
        if p.abs() == 0.0 || dp.abs() == 0.0 {
            break;
        }
        let m = multiplicity_estimate(p, dp, ddp, degree);
        let delta = p.div(dp).mul_f64(m as f64);
        z = z.sub(delta);
        let (np, ndp, nddp) = horner2(coeffs, z);
        p = np;
        dp = ndp;
        ddp = nddp;
        if p.abs() < best_res {
            best_res = p.abs();
            best = z;
        }
        if delta.abs() <= 1e-31 * (1.0 + z.abs()) {
            break;
        }
    }
    best
}

/// Union-find clustering at the configured absolute radius; each cluster is
/// reported as its centroid repeated by multiplicity.
fn cluster(mut roots: Vec<Complex64>, radius: f64) -> Vec<Complex64> {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = i;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (roots[i] - roots[j]).norm() <= radius {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let r = find(&mut parent, i);
        groups[r].push(i);
    }
    let mut out = Vec::with_capacity(n);
    for g in groups.into_iter().filter(|g| !g.is_empty()) {
        let mut c = Complex64::new(0.0, 0.0);
        for &i in &g {
            c += roots[i];
        }
        c /= g.len() as f64;
        for _ in 0..g.len() {
            out.push(c);
        }
    }
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    out
}

/// Find all roots of the polynomial given by ascending dd coefficients with
/// a nonzero leading coefficient and degree >= 1.
pub(crate) fn find_roots_dd(coeffs: &[DdComplex], opts: &RootOptions) -> Result<Vec<Complex64>> {
    debug_assert!(coeffs.len() >= 2);
    debug_assert!(coeffs[coeffs.len() - 1].abs() > 0.0);

    let prep = prepare(coeffs);
    let mut roots: Vec<Complex64> = Vec::with_capacity(coeffs.len() - 1);
    for _ in 0..prep.zero_roots {
        roots.push(Complex64::new(0.0, 0.0));
    }

    let mut iterations = 0;
    if prep.scaled.len() == 2 {
        // Linear: w = -b0, exact up to one dd division.
        let w = prep.scaled[0].neg().div(prep.scaled[1]);
        roots.push(w.to_c64() * prep.sigma);
    } else if prep.scaled.len() > 2 {
        let (approx, iters) = aberth(&prep.scaled, opts.max_iter);
        iterations = iters;
        for z in approx {
            let z = polish(&prep.scaled, z);
            roots.push(z.to_c64() * prep.sigma);
        }
    }

    let roots = cluster(roots, opts.cluster_radius);

    // Acceptance contract on the reported values.
    let mut worst = 0.0f64;
    for &r in &roots {
        let rd = DdComplex::from_f64(r.re, r.im);
        let res = horner(coeffs, rd).abs() / residual_scale(coeffs, r);
        worst = worst.max(res);
    }
    if worst > opts.tol {
        return Err(Error::RootsNotConverged {
            iterations,
            worst_residual: worst,
            partial: roots,
        });
    }
    Ok(roots)
}
