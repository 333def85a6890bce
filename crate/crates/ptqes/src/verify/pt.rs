//! PT classification of QES eigenfunctions.
//!
//! The operator acts as the antilinear composition: conjugate all explicit
//! coefficients (T), then substitute x -> i pi/2 - x (the shifted parity P).
//! On the basis this is cosh x -> -i sinh x, sinh x -> i cosh x, and it
//! leaves the gauge exponent i zeta cosh 2x / 2 invariant, so (PT psi)/psi
//! reduces to (PT phi)/phi. Unbroken symmetry means PT psi = lambda psi with
//! |lambda| = 1; broken symmetry pairs each eigenfunction with the partner
//! at the conjugate energy.

use num_complex::Complex64;

use crate::bender_dunne::ModelParams;
use crate::cpoly::C64;
use crate::error::{Error, Result};

use super::hyp::HypPoly;
use super::wavefunction::Eigenfunction;

/// Ratio-constancy tolerance for the classification.
pub const PT_TOL: f64 = 1e-8;

/// Verdict of [`classify_pt`]: a PT eigenstate with unimodular eigenvalue,
/// or a broken pair pointing at the partner index in the candidate list.
#[derive(Clone, Copy, Debug)]
pub enum PtVerdict {
    Unbroken { eigenvalue: C64 },
    Broken { partner: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct PTClassification {
    pub verdict: PtVerdict,
    pub residual: f64,
}

/// The PT image of an eigenfunction, exact in the coefficient
/// representation. `eval_psi` reuses the original gauge factor, which the
/// transformation maps to itself.
#[derive(Clone, Debug)]
pub struct PtTransformed {
    params: ModelParams,
    phi: HypPoly,
}

impl PtTransformed {
    pub fn phi(&self) -> &HypPoly {
        &self.phi
    }

    pub fn eval_phi(&self, x: C64) -> C64 {
        self.phi.eval(x)
    }

    pub fn eval_psi(&self, x: C64) -> C64 {
        let gauge = (Complex64::new(0.0, 0.5 * self.params.zeta()) * (2.0 * x).cosh()).exp();
        gauge * self.phi.eval(x)
    }
}

/// Apply PT to an eigenfunction: x |-> conj-coefficients psi at i pi/2 - x.
pub fn pt_transform(f: &Eigenfunction) -> PtTransformed {
    PtTransformed {
        params: *f.params(),
        phi: f.phi_hyp().pt(),
    }
}

/// Fixed sample set for ratio tests: generic complex points away from the
/// imaginary axis (where sinh-class functions have zeros) and from each
/// other.
pub fn default_pt_samples() -> Vec<C64> {
    (0..8)
        .map(|j| C64::new(0.35 + 0.13 * j as f64, -0.45 + 0.11 * j as f64))
        .collect()
}

/// Ratio num(x)/den(x) over the samples, nudging any sample that lands on a
/// near-zero of the denominator (deterministically, by +0.1733).
fn sampled_ratios<FN, FD>(num: FN, den: FD, samples: &[C64]) -> Vec<C64>
where
    FN: Fn(C64) -> C64,
    FD: Fn(C64) -> C64,
{
    samples
        .iter()
        .map(|&x0| {
            let mut x = x0;
            for _ in 0..5 {
                let d = den(x);
                if d.norm() > 1e-9 * (1.0 + num(x).norm()) {
                    return num(x) / d;
                }
                x += 0.1733;
            }
            num(x) / den(x)
        })
        .collect()
}

fn ratio_spread(ratios: &[C64]) -> (C64, f64) {
    let mean = ratios.iter().sum::<C64>() / ratios.len() as f64;
    let spread = ratios
        .iter()
        .map(|r| (r - mean).norm())
        .fold(0.0, f64::max);
    (mean, spread)
}

/// Classify one eigenfunction: PT eigenstate (constant unimodular ratio), or
/// a broken pair whose PT image is proportional to the candidate carrying
/// the conjugate energy.
pub fn classify_pt(
    f: &Eigenfunction,
    candidates: &[Eigenfunction],
    samples: &[C64],
) -> Result<PTClassification> {
    if samples.is_empty() {
        return Err(Error::PtClassificationFailed {
            reason: "empty sample set".into(),
        });
    }
    let image = pt_transform(f);
    let phi = f.phi_hyp();
    let ratios = sampled_ratios(|x| image.eval_phi(x), |x| phi.eval(x), samples);
    let (mean, spread) = ratio_spread(&ratios);
    let unimodular = (mean.norm() - 1.0).abs();
    if spread <= PT_TOL * mean.norm().max(1.0) && unimodular <= PT_TOL {
        return Ok(PTClassification {
            verdict: PtVerdict::Unbroken { eigenvalue: mean },
            residual: spread.max(unimodular),
        });
    }
    // Broken: search the candidates for the conjugate-energy partner.
    let target = f.energy().conj();
    for (idx, cand) in candidates.iter().enumerate() {
        if (cand.energy() - target).norm() > 1e-8 * target.norm().max(1.0) {
            continue;
        }
        let cand_phi = cand.phi_hyp();
        let ratios = sampled_ratios(|x| image.eval_phi(x), |x| cand_phi.eval(x), samples);
        let (mean, spread) = ratio_spread(&ratios);
        if spread <= PT_TOL * mean.norm().max(1.0) {
            return Ok(PTClassification {
                verdict: PtVerdict::Broken { partner: idx },
                residual: spread,
            });
        }
    }
    Err(Error::PtClassificationFailed {
        reason: format!(
            "neither PT eigenstate nor conjugate partner found for E = {}",
            f.energy()
        ),
    })
}
