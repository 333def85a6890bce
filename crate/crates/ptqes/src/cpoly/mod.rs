//! Complex-coefficient polynomials in the energy variable, with the root
//! finder used by every spectral path in the crate.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) mod dd;
mod roots;

pub use roots::RootOptions;

/// Complex scalar used throughout the crate. Constructors reject NaN and
/// infinity so the numerical core only ever sees finite data.
pub type C64 = Complex64;

pub(crate) fn ensure_finite(v: C64, context: &'static str) -> Result<C64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { context })
    }
}

/// A polynomial with complex coefficients, stored in ascending degree order.
///
/// The zero polynomial is the empty coefficient list and has no degree;
/// any other value has a nonzero leading coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct CPoly {
    coeffs: Vec<C64>,
}

impl CPoly {
    /// Build from ascending coefficients, trimming exact trailing zeros.
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        for &c in &coeffs {
            ensure_finite(c, "CPoly coefficient")?;
        }
        let mut p = CPoly { coeffs };
        p.trim();
        Ok(p)
    }

    pub fn zero() -> Self {
        CPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        CPoly::constant(C64::new(1.0, 0.0))
    }

    pub fn constant(c: C64) -> Self {
        let mut p = CPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// c * E^k.
    pub fn monomial(c: C64, k: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        let mut p = CPoly { coeffs };
        p.trim();
        p
    }

    /// Monic polynomial with the given roots (test helper and scan support).
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut p = CPoly::one();
        for &r in roots {
            p = p.mul(&CPoly {
                coeffs: vec![-r, C64::new(1.0, 0.0)],
            });
        }
        p
    }

    fn trim(&mut self) {
        while let Some(last) = self.coeffs.last() {
            if last.re == 0.0 && last.im == 0.0 {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Coefficient of E^k (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn leading(&self) -> Option<C64> {
        self.coeffs.last().copied()
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &CPoly) -> CPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![C64::new(0.0, 0.0); n];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.coeff(k) + other.coeff(k);
        }
        let mut p = CPoly { coeffs: out };
        p.trim();
        p
    }

    pub fn sub(&self, other: &CPoly) -> CPoly {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: C64) -> CPoly {
        let mut p = CPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        };
        p.trim();
        p
    }

    pub fn mul(&self, other: &CPoly) -> CPoly {
        if self.is_zero() || other.is_zero() {
            return CPoly::zero();
        }
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        let mut p = CPoly { coeffs: out };
        p.trim();
        p
    }

    /// Coefficient-wise complex conjugation. Maps zeta -> -zeta for the
    /// energy polynomials and conjugates every root.
    pub fn conj_coeffs(&self) -> CPoly {
        CPoly {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn derivative(&self) -> CPoly {
        if self.coeffs.len() <= 1 {
            return CPoly::zero();
        }
        let mut p = CPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        };
        p.trim();
        p
    }

    /// Euclidean division: self = q * divisor + r with deg r < deg divisor.
    pub fn divrem(&self, divisor: &CPoly) -> Result<(CPoly, CPoly)> {
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((CPoly::zero(), self.clone()));
        }
        let lead = divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut q = vec![C64::new(0.0, 0.0); qlen];
        for k in (0..qlen).rev() {
            let f = rem[k + dd] / lead;
            q[k] = f;
            for j in 0..=dd {
                rem[k + j] -= f * divisor.coeffs[j];
            }
        }
        rem.truncate(dd);
        let mut quot = CPoly { coeffs: q };
        quot.trim();
        let mut r = CPoly { coeffs: rem };
        r.trim();
        Ok((quot, r))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Magnitude scale used by the root acceptance contract:
    /// sum_k |a_k| |r|^k.
    pub fn root_scale(&self, r: C64) -> f64 {
        let rn = r.norm();
        let mut pow = 1.0;
        let mut s = 0.0;
        for c in &self.coeffs {
            s += c.norm() * pow;
            pow *= rn;
        }
        s.max(f64::MIN_POSITIVE)
    }

    pub(crate) fn to_dd(&self) -> Vec<dd::DdComplex> {
        self.coeffs
            .iter()
            .map(|c| dd::DdComplex::from_f64(c.re, c.im))
            .collect()
    }

    /// All roots with multiplicity, using the default clustering radius.
    ///
    /// `tol` is the relative residual acceptance threshold; see
    /// [`RootOptions`] for the contract.
    pub fn roots(&self, tol: f64) -> Result<Vec<C64>> {
        self.roots_with(&RootOptions {
            tol,
            ..RootOptions::default()
        })
    }

    pub fn roots_with(&self, opts: &RootOptions) -> Result<Vec<C64>> {
        match self.degree() {
            Some(d) if d >= 1 => {}
            d => return Err(Error::RootsDegree { degree: d }),
        }
        roots::find_roots_dd(&self.to_dd(), opts)
    }

    /// Entry point for callers that carry dd coefficients (the gauged-matrix
    /// characteristic polynomial), so the whole crate shares one root finder.
    pub(crate) fn roots_of_dd(coeffs: &[dd::DdComplex], opts: &RootOptions) -> Result<Vec<C64>> {
        if coeffs.len() < 2 {
            return Err(Error::RootsDegree {
                degree: if coeffs.is_empty() { None } else { Some(0) },
            });
        }
        roots::find_roots_dd(coeffs, opts)
    }
}

impl std::ops::Add for &CPoly {
    type Output = CPoly;
    fn add(self, rhs: &CPoly) -> CPoly {
        CPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &CPoly {
    type Output = CPoly;
    fn sub(self, rhs: &CPoly) -> CPoly {
        CPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &CPoly {
    type Output = CPoly;
    fn mul(self, rhs: &CPoly) -> CPoly {
        CPoly::mul(self, rhs)
    }
}
