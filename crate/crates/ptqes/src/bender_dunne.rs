//! Energy-polynomial recursions for the potential -(zeta cosh 2x - iM)^2.
//!
//! Substituting psi = exp(i zeta cosh 2x / 2) phi and expanding phi in
//! z = cosh 2x - 1 as z^s * sum_n R_n(E)/n! cosh^n x splits the series into
//! an even family P_k(E) = R_2k and an odd family Q_k(E) = R_{2k+1}, each
//! obeying a three-term recursion in which the lower-order coefficient
//! carries a factor linear in n. The (s, branch) choice that makes that
//! factor vanish at an integer index n_c truncates the series; the member at
//! n_c - 1 is the critical polynomial and its roots are QES energies. Every
//! later member is divisible by the critical one.

use num_complex::Complex64;

use crate::cpoly::{C64, CPoly};
use crate::error::{Error, Result};

/// Residual acceptance when checking that an energy is a root of the
/// critical polynomial: |p(E)| <= this times the polynomial's magnitude
/// scale at E.
pub const CRITICAL_ROOT_TOL: f64 = 1e-8;

/// Default number of polynomials generated past the critical index, enough
/// to exercise the factorization property without coefficient blow-up.
pub const DEFAULT_EXTRA_DEPTH: usize = 4;

/// The pair (M, zeta) defining the Hamiltonian p^2 - (zeta cosh 2x - iM)^2.
///
/// M is a positive integer; zeta is a nonzero real coupling (zeta = 0
/// collapses the potential to the constant M^2 and kills the recursion's
/// lower-order coefficient, so it is rejected as degenerate).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    m: u32,
    zeta: f64,
}

impl ModelParams {
    pub fn new(m: u32, zeta: f64) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidParams {
                reason: "M must be a positive integer".into(),
            });
        }
        if !zeta.is_finite() {
            return Err(Error::NonFinite {
                context: "ModelParams zeta",
            });
        }
        if zeta == 0.0 {
            return Err(Error::InvalidParams {
                reason: "zeta = 0 is degenerate: the potential collapses to the constant M^2"
                    .into(),
            });
        }
        Ok(ModelParams { m, zeta })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    /// Same M at |zeta|; used with spectrum conjugation for zeta < 0.
    pub(crate) fn abs_zeta(&self) -> ModelParams {
        ModelParams {
            m: self.m,
            zeta: self.zeta.abs(),
        }
    }
}

/// Which of the two polynomial families a computation refers to.
///
/// P collects the even series indices (cosh^{2k} x), Q the odd ones
/// (cosh^{2k+1} x).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    P,
    Q,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Branch::P => write!(f, "P"),
            Branch::Q => write!(f, "Q"),
        }
    }
}

/// A branch together with its exponent s and truncation index.
///
/// s is stored as s2 = 2s in {0, 1}, the only values allowed by 2s^2 = s,
/// which keeps every recursion coefficient an exact small expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchSpec {
    pub branch: Branch,
    pub s2: u8,
    pub critical_index: usize,
}

impl BranchSpec {
    pub fn s(&self) -> f64 {
        self.s2 as f64 / 2.0
    }
}

/// Select the unique (s, n_c) for which the branch's lower-order factor —
/// (M + 3 - 2s - 2n) for P, (M + 2 - 2s - 2n) for Q — vanishes at an
/// integer n_c >= 1. Forced: P uses s = 1/2 for even M and s = 0 for odd M;
/// Q uses s = 0 for even M and s = 1/2 for odd M.
pub fn critical_index(m: u32, branch: Branch) -> BranchSpec {
    let even = m % 2 == 0;
    let (s2, offset) = match branch {
        Branch::P => (u8::from(even), 3),
        Branch::Q => (u8::from(!even), 2),
    };
    let num = m as usize + offset - s2 as usize;
    debug_assert!(num % 2 == 0);
    BranchSpec {
        branch,
        s2,
        critical_index: num / 2,
    }
}

/// The generated polynomial family for one branch.
///
/// polys[0] = 1 and polys[n] is monic of degree n in E; the table is
/// immutable after construction.
#[derive(Clone, Debug)]
pub struct RecursionTable {
    params: ModelParams,
    spec: BranchSpec,
    polys: Vec<CPoly>,
}

impl RecursionTable {
    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn spec(&self) -> &BranchSpec {
        &self.spec
    }

    pub fn polys(&self) -> &[CPoly] {
        &self.polys
    }

    pub fn poly(&self, n: usize) -> &CPoly {
        &self.polys[n]
    }

    pub fn critical(&self) -> &CPoly {
        &self.polys[self.spec.critical_index - 1]
    }
}

/// Constant part of the bracket multiplying the previous member, so that
/// polys[n] = (E + bracket(n)) * polys[n-1] - lower(n) * polys[n-2].
fn bracket_constant(params: &ModelParams, spec: &BranchSpec, n: usize) -> C64 {
    let m = params.m as f64;
    let zeta = params.zeta;
    let nf = n as f64;
    let s2 = spec.s2 as f64;
    match spec.branch {
        Branch::P => Complex64::new(
            4.0 * nf * nf + 4.0 * nf * s2 - 8.0 * nf + s2 * s2 - 4.0 * s2 + 4.0 - m * m
                + zeta * zeta,
            zeta * (2.0 * m - 8.0 * nf + 6.0),
        ),
        Branch::Q => Complex64::new(
            4.0 * nf * nf + 4.0 * nf * s2 - 4.0 * nf + s2 * s2 - 2.0 * s2 + 1.0 - m * m
                + zeta * zeta,
            zeta * (2.0 * m - 8.0 * nf + 2.0),
        ),
    }
}

/// Coefficient of polys[n-2]; purely imaginary, with the truncating factor
/// linear in n.
fn lower_coefficient(params: &ModelParams, spec: &BranchSpec, n: usize) -> C64 {
    let m = params.m as f64;
    let zeta = params.zeta;
    let nf = n as f64;
    let s2 = spec.s2 as f64;
    let factor = match spec.branch {
        Branch::P => (2.0 * nf - 3.0) * (m + 3.0 - s2 - 2.0 * nf),
        Branch::Q => (2.0 * nf - 1.0) * (m + 2.0 - s2 - 2.0 * nf),
    };
    Complex64::new(0.0, 8.0 * zeta * (nf - 1.0) * factor)
}

/// Generate polys[0..=n_max] for one branch by the three-term recursion,
/// with polys[-1] treated as zero. Each member is monic of degree n by
/// construction.
pub fn generate(params: &ModelParams, spec: &BranchSpec, n_max: usize) -> RecursionTable {
    let mut polys: Vec<CPoly> = Vec::with_capacity(n_max + 1);
    polys.push(CPoly::one());
    for n in 1..=n_max {
        let b0 = bracket_constant(params, spec, n);
        let low = lower_coefficient(params, spec, n);
        let prev = polys[n - 1].coeffs();
        let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
        // (E + b0) * prev
        for (k, &c) in prev.iter().enumerate() {
            coeffs[k + 1] += c;
            coeffs[k] += b0 * c;
        }
        if n >= 2 {
            for (k, &c) in polys[n - 2].coeffs().iter().enumerate() {
                coeffs[k] -= low * c;
            }
        }
        polys.push(CPoly::new(coeffs).expect("recursion coefficients are finite"));
    }
    RecursionTable {
        params: *params,
        spec: *spec,
        polys,
    }
}

/// The critical polynomial polys[n_c - 1] whose roots are this branch's QES
/// energies. Degrees over both branches sum to M.
pub fn critical_polynomial(params: &ModelParams, branch: Branch) -> CPoly {
    let spec = critical_index(params.m(), branch);
    let table = generate(params, &spec, spec.critical_index - 1);
    table.polys[spec.critical_index - 1].clone()
}

/// Remainder norms of polys[n_c - 1 + j] mod the critical polynomial.
#[derive(Clone, Debug)]
pub struct FactorizationReport {
    pub branch: Branch,
    /// (j, max remainder coefficient magnitude, same relative to the
    /// dividend's largest coefficient).
    pub remainders: Vec<(usize, f64, f64)>,
    pub max_relative: f64,
}

/// Check that every member at and above the critical index is divisible by
/// the critical polynomial, reporting remainder magnitudes for j = 0..=extra.
pub fn factorization_check(
    params: &ModelParams,
    branch: Branch,
    extra: usize,
) -> Result<FactorizationReport> {
    let spec = critical_index(params.m(), branch);
    let nc = spec.critical_index;
    let table = generate(params, &spec, nc - 1 + extra);
    let critical = &table.polys[nc - 1];
    let mut remainders = Vec::with_capacity(extra + 1);
    let mut max_relative = 0.0f64;
    for j in 0..=extra {
        let dividend = &table.polys[nc - 1 + j];
        let (_, rem) = dividend.divrem(critical)?;
        let abs = rem.max_coeff_norm();
        let rel = abs / dividend.max_coeff_norm().max(f64::MIN_POSITIVE);
        max_relative = max_relative.max(rel);
        remainders.push((j, abs, rel));
    }
    Ok(FactorizationReport {
        branch,
        remainders,
        max_relative,
    })
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Truncated wavefunction series coefficients at a QES energy.
///
/// For an in-branch index k the series weight is R_n(E)/n! with n = 2k for P
/// and n = 2k + 1 for Q; the retained list runs k = 0..=n_c-2 and is
/// normalized so the leading (highest-power) entry is 1. E must be a root of
/// the branch's critical polynomial to within [`CRITICAL_ROOT_TOL`], which
/// is exactly the condition for all later in-branch coefficients to vanish.
pub fn coefficients_at_energy(
    params: &ModelParams,
    spec: &BranchSpec,
    energy: C64,
) -> Result<Vec<C64>> {
    let nc = spec.critical_index;
    let table = generate(params, spec, nc - 1);
    let critical = &table.polys[nc - 1];
    let residual = critical.eval(energy).norm();
    let tolerance = CRITICAL_ROOT_TOL * critical.root_scale(energy);
    if residual > tolerance {
        return Err(Error::NotACriticalRoot {
            energy,
            residual,
            tolerance,
        });
    }
    let parity = match spec.branch {
        Branch::P => 0,
        Branch::Q => 1,
    };
    let mut coeffs: Vec<C64> = (0..nc - 1)
        .map(|k| table.polys[k].eval(energy) / factorial(2 * k + parity))
        .collect();
    let lead = *coeffs.last().expect("critical index >= 2 here");
    if lead.norm() == 0.0 {
        // Consecutive members of a three-term recursion cannot both vanish
        // unless the whole family does, so this cannot happen for a valid
        // table; guard against pathological inputs anyway.
        return Err(Error::NotACriticalRoot {
            energy,
            residual: f64::INFINITY,
            tolerance,
        });
    }
    for c in &mut coeffs {
        *c /= lead;
    }
    Ok(coeffs)
}
