//! Classified QES spectra, the reality transition in the coupling, and the
//! anti-isospectral map to the periodic partner potential.

use crate::bender_dunne::{critical_polynomial, Branch, ModelParams};
use crate::cpoly::{C64, RootOptions};
use crate::error::{Error, Result};

/// Reality tag of one level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reality {
    Real,
    PairMember,
}

/// One QES level with its branch of origin and pairing information.
///
/// `partner` indexes the conjugate level inside the owning spectrum when
/// `reality == PairMember`. `multiplicity` counts coincident levels (2 at
/// the degeneracy where two real levels merge before moving off the axis).
#[derive(Clone, Copy, Debug)]
pub struct QesLevel {
    pub energy: C64,
    pub branch: Branch,
    pub reality: Reality,
    pub partner: Option<usize>,
    pub multiplicity: usize,
}

/// The full QES spectrum for one (M, zeta): exactly M levels sorted by real
/// part, then imaginary part. The energy multiset is closed under complex
/// conjugation.
#[derive(Clone, Debug)]
pub struct QesSpectrum {
    pub params: ModelParams,
    pub levels: Vec<QesLevel>,
    pub pt_broken: bool,
}

impl QesSpectrum {
    pub fn energies(&self) -> Vec<C64> {
        self.levels.iter().map(|l| l.energy).collect()
    }
}

/// Result of the reality-transition bisection for odd M.
///
/// All levels are real at zeta_c - bracket_width and at least one conjugate
/// pair exists at zeta_c + bracket_width.
#[derive(Clone, Copy, Debug)]
pub struct CriticalCoupling {
    pub m: u32,
    pub zeta_c: f64,
    pub bracket_width: f64,
}

/// Tolerances used by [`solve_with`].
#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Root-finder residual acceptance (relative).
    pub root_tol: f64,
    /// Clustering radius for degenerate-root reporting (absolute).
    pub cluster_radius: f64,
    /// A level is real when |Im E| <= reality_tol * max(1, |E|).
    pub reality_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            root_tol: 1e-10,
            cluster_radius: 1e-7,
            reality_tol: 1e-9,
        }
    }
}

/// Conjugate-partner matching radius: |conj(a) - b| <= this * max(1, |a|).
/// Partner roots come from coefficient-conjugate polynomials and agree to
/// near machine precision, so this is generous without being loose.
const PAIR_MATCH_TOL: f64 = 1e-8;

fn canonical_sort(levels: &mut [(C64, Branch)]) {
    levels.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
}

/// Greedy conjugate matching. Levels with |Im| above the tolerance must pair
/// with a distinct level carrying the conjugate energy; a leftover complex
/// level means the input was not conjugation-closed and signals an upstream
/// bug.
pub fn classify_reality(energies: &[C64], tol: f64) -> Result<Vec<(Reality, Option<usize>)>> {
    let n = energies.len();
    let mut out: Vec<(Reality, Option<usize>)> = vec![(Reality::Real, None); n];
    let mut unpaired: Vec<usize> = Vec::new();
    for (i, e) in energies.iter().enumerate() {
        if e.im.abs() > tol * e.norm().max(1.0) {
            unpaired.push(i);
        }
    }
    while let Some(i) = unpaired.first().copied() {
        let target = energies[i].conj();
        let mut best: Option<(usize, f64)> = None;
        for &j in unpaired.iter().skip(1) {
            let d = (energies[j] - target).norm();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        let allowed = PAIR_MATCH_TOL * energies[i].norm().max(1.0);
        match best {
            Some((j, d)) if d <= allowed => {
                out[i] = (Reality::PairMember, Some(j));
                out[j] = (Reality::PairMember, Some(i));
                unpaired.retain(|&k| k != i && k != j);
            }
            _ => {
                return Err(Error::UnpairedComplexLevel { level: energies[i] });
            }
        }
    }
    Ok(out)
}

fn assemble(
    params: &ModelParams,
    mut labeled: Vec<(C64, Branch)>,
    opts: &SolveOptions,
) -> Result<QesSpectrum> {
    canonical_sort(&mut labeled);
    let energies: Vec<C64> = labeled.iter().map(|l| l.0).collect();
    let tags = classify_reality(&energies, opts.reality_tol)?;
    let levels: Vec<QesLevel> = labeled
        .iter()
        .zip(tags)
        .map(|(&(energy, branch), (reality, partner))| {
            // Clustered roots are reported as identical values, so exact
            // equality is the right multiplicity count.
            let multiplicity = energies
                .iter()
                .filter(|e| e.re == energy.re && e.im == energy.im)
                .count();
            QesLevel {
                energy,
                branch,
                reality,
                partner,
                multiplicity,
            }
        })
        .collect();
    let pt_broken = levels.iter().any(|l| l.reality == Reality::PairMember);
    Ok(QesSpectrum {
        params: *params,
        levels,
        pt_broken,
    })
}

/// The classified QES spectrum: the union of roots of both critical
/// polynomials, exactly M levels.
///
/// zeta < 0 is handled through the symmetry zeta -> -zeta, which conjugates
/// the critical polynomials: solve at |zeta| and conjugate the spectrum.
pub fn solve(params: &ModelParams) -> Result<QesSpectrum> {
    solve_with(params, &SolveOptions::default())
}

pub fn solve_with(params: &ModelParams, opts: &SolveOptions) -> Result<QesSpectrum> {
    let work = params.abs_zeta();
    let root_opts = RootOptions {
        tol: opts.root_tol,
        cluster_radius: opts.cluster_radius,
        ..RootOptions::default()
    };
    let mut labeled: Vec<(C64, Branch)> = Vec::with_capacity(params.m() as usize);
    for branch in [Branch::P, Branch::Q] {
        let critical = critical_polynomial(&work, branch);
        match critical.degree() {
            Some(d) if d >= 1 => {
                for root in critical.roots_with(&root_opts)? {
                    let energy = if params.zeta() < 0.0 { root.conj() } else { root };
                    labeled.push((energy, branch));
                }
            }
            _ => {} // degree-0 critical polynomial contributes no levels
        }
    }
    debug_assert_eq!(labeled.len(), params.m() as usize);
    assemble(params, labeled, opts)
}

/// Spectrum of the periodic partner V(theta) = (zeta cos 2theta - iM)^2:
/// energies negated, order reversed by the canonical sort, reality and
/// pairing recomputed (negation preserves conjugate pairing).
///
/// Panics if the input violates the conjugation-closure invariant of
/// [`QesSpectrum`]; spectra produced by [`solve`] always satisfy it.
pub fn anti_isospectral(spectrum: &QesSpectrum) -> QesSpectrum {
    let labeled: Vec<(C64, Branch)> = spectrum
        .levels
        .iter()
        .map(|l| (-l.energy, l.branch))
        .collect();
    let opts = SolveOptions::default();
    assemble(&spectrum.params, labeled, &opts)
        .expect("negation preserves conjugation closure of a valid spectrum")
}

/// Predicate for the bisection: every level classified real.
fn all_real(m: u32, zeta: f64, opts: &SolveOptions) -> Result<bool> {
    let params = ModelParams::new(m, zeta)?;
    let spectrum = solve_with(&params, opts)?;
    Ok(spectrum.levels.iter().all(|l| l.reality == Reality::Real))
}

/// Locate the critical coupling zeta_c(M) for odd M >= 3 by bisection on
/// the all-levels-real predicate over zeta in (0, zeta_hi], with the
/// bracket found by geometric search from 0.25.
pub fn critical_zeta(m: u32, tol: f64) -> Result<CriticalCoupling> {
    if m == 1 {
        return Err(Error::NoFiniteCriticalCoupling);
    }
    if m % 2 == 0 || m == 0 {
        return Err(Error::CriticalZetaRequiresOddM { m });
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidParams {
            reason: format!("bisection tolerance must be positive and finite (got {tol})"),
        });
    }
    let opts = SolveOptions::default();
    const PROBE_LO: f64 = 1e-9;
    const PROBE_HI: f64 = 1024.0;
    let mut probe = 0.25f64;
    let (mut lo, mut hi);
    if all_real(m, probe, &opts)? {
        loop {
            let next = probe * 2.0;
            if next > PROBE_HI {
                return Err(Error::NoTransitionFound {
                    lo: 0.0,
                    hi: PROBE_HI,
                });
            }
            if !all_real(m, next, &opts)? {
                lo = probe;
                hi = next;
                break;
            }
            probe = next;
        }
    } else {
        loop {
            let next = probe / 2.0;
            if next < PROBE_LO {
                return Err(Error::NoTransitionFound {
                    lo: PROBE_LO,
                    hi: PROBE_HI,
                });
            }
            if all_real(m, next, &opts)? {
                lo = next;
                hi = probe;
                break;
            }
            probe = next;
        }
    }
    log::debug!("critical_zeta(M={m}): bracket ({lo}, {hi}) found, bisecting to {tol}");
    let mut iterations = 0;
    while hi - lo > tol && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if all_real(m, mid, &opts)? {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(CriticalCoupling {
        m,
        zeta_c: 0.5 * (lo + hi),
        bracket_width: 0.5 * (hi - lo),
    })
}

/// One grid point of a coupling scan. Per-point failures are recorded and
/// the scan continues.
#[derive(Clone, Debug)]
pub struct ScanRow {
    pub zeta: f64,
    pub result: std::result::Result<Vec<QesLevel>, String>,
}

/// Spectra over a coupling grid with levels tracked by continuity:
/// each successful row reorders its levels by nearest-neighbor matching
/// against the previous successful row, so a fixed slot follows one level
/// trajectory across the grid.
pub fn scan(m: u32, zeta_grid: &[f64]) -> Result<Vec<ScanRow>> {
    for &z in zeta_grid {
        if !z.is_finite() {
            return Err(Error::NonFinite {
                context: "scan grid value",
            });
        }
        if z == 0.0 {
            return Err(Error::InvalidParams {
                reason: "scan grid must exclude zeta = 0".into(),
            });
        }
    }
    let mut rows = Vec::with_capacity(zeta_grid.len());
    let mut previous: Option<Vec<C64>> = None;
    for &zeta in zeta_grid {
        let outcome = ModelParams::new(m, zeta).and_then(|p| solve(&p));
        match outcome {
            Ok(spectrum) => {
                let levels = match &previous {
                    Some(prev) => reorder_by_continuity(prev, spectrum.levels),
                    None => spectrum.levels,
                };
                previous = Some(levels.iter().map(|l| l.energy).collect());
                rows.push(ScanRow {
                    zeta,
                    result: Ok(levels),
                });
            }
            Err(e) => {
                log::warn!("scan point zeta = {zeta} failed: {e}");
                rows.push(ScanRow {
                    zeta,
                    result: Err(e.to_string()),
                });
            }
        }
    }
    Ok(rows)
}

/// Greedy global matching: repeatedly bind the closest (previous slot,
/// current level) pair. Partner indices are remapped to the new order.
fn reorder_by_continuity(prev: &[C64], levels: Vec<QesLevel>) -> Vec<QesLevel> {
    let n = levels.len();
    if prev.len() != n {
        return levels;
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n);
    for (i, p) in prev.iter().enumerate() {
        for (j, l) in levels.iter().enumerate() {
            pairs.push(((p - l.energy).norm(), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut slot_of: Vec<Option<usize>> = vec![None; n]; // old index -> new slot
    let mut slot_used = vec![false; n];
    let mut old_used = vec![false; n];
    for &(_, slot, old) in &pairs {
        if !slot_used[slot] && !old_used[old] {
            slot_used[slot] = true;
            old_used[old] = true;
            slot_of[old] = Some(slot);
        }
    }
    let mut out: Vec<QesLevel> = vec![levels[0]; n];
    for (old, level) in levels.into_iter().enumerate() {
        let slot = slot_of[old].expect("every level is assigned a slot");
        let mut remapped = level;
        remapped.partner = remapped
            .partner
            .map(|p| slot_of[p].expect("partners are assigned slots"));
        out[slot] = remapped;
    }
    out
}
