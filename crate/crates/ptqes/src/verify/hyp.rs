//! Exact finite combinations phi(x) = A(cosh x) + sinh x * B(cosh x).
//!
//! Closed under d/dx (via sinh^2 = cosh^2 - 1) and under the PT
//! substitution x -> i pi/2 - x with coefficient conjugation, which maps the
//! basis as cosh x -> -i sinh x and sinh x -> i cosh x. Derivatives are
//! therefore analytic term-by-term operations, never finite differences.

use num_complex::Complex64;

use crate::cpoly::{C64, CPoly};

/// phi(x) = even(cosh x) + sinh x * odd(cosh x).
#[derive(Clone, Debug, PartialEq)]
pub struct HypPoly {
    even: CPoly,
    odd: CPoly,
}

impl HypPoly {
    pub fn new(even: CPoly, odd: CPoly) -> Self {
        HypPoly { even, odd }
    }

    pub fn zero() -> Self {
        HypPoly {
            even: CPoly::zero(),
            odd: CPoly::zero(),
        }
    }

    /// A(cosh x) with ascending coefficients in cosh x.
    pub fn from_cosh_poly(coeffs: Vec<C64>) -> Self {
        HypPoly {
            even: CPoly::new(coeffs).expect("finite coefficients"),
            odd: CPoly::zero(),
        }
    }

    /// sinh x * B(cosh x).
    pub fn from_sinh_times(coeffs: Vec<C64>) -> Self {
        HypPoly {
            even: CPoly::zero(),
            odd: CPoly::new(coeffs).expect("finite coefficients"),
        }
    }

    pub fn even_part(&self) -> &CPoly {
        &self.even
    }

    pub fn odd_part(&self) -> &CPoly {
        &self.odd
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn eval(&self, x: C64) -> C64 {
        let c = x.cosh();
        let s = x.sinh();
        self.even.eval(c) + s * self.odd.eval(c)
    }

    pub fn add(&self, other: &HypPoly) -> HypPoly {
        HypPoly {
            even: self.even.add(&other.even),
            odd: self.odd.add(&other.odd),
        }
    }

    pub fn scale(&self, c: C64) -> HypPoly {
        HypPoly {
            even: self.even.scale(c),
            odd: self.odd.scale(c),
        }
    }

    /// d/dx. With z = cosh x: (A(z))' = sinh x A'(z) and
    /// (sinh x B(z))' = z B(z) + (z^2 - 1) B'(z).
    pub fn derivative(&self) -> HypPoly {
        let z = CPoly::monomial(C64::new(1.0, 0.0), 1);
        let z2m1 = CPoly::new(vec![
            C64::new(-1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
        ])
        .expect("constant coefficients");
        let even = z.mul(&self.odd).add(&z2m1.mul(&self.odd.derivative()));
        let odd = self.even.derivative();
        HypPoly { even, odd }
    }

    pub fn conj_coeffs(&self) -> HypPoly {
        HypPoly {
            even: self.even.conj_coeffs(),
            odd: self.odd.conj_coeffs(),
        }
    }

    /// The PT image: conjugate all coefficients, then substitute
    /// x -> i pi/2 - x, i.e. cosh x -> -i sinh x and sinh x -> i cosh x.
    /// The result is again a finite hyperbolic polynomial because even sinh
    /// powers reduce through sinh^2 = cosh^2 - 1.
    pub fn pt(&self) -> HypPoly {
        let z2m1 = CPoly::new(vec![
            C64::new(-1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
        ])
        .expect("constant coefficients");
        let mut even = CPoly::zero();
        let mut odd = CPoly::zero();
        let i = Complex64::new(0.0, 1.0);
        let minus_i = Complex64::new(0.0, -1.0);

        // A-part: conj(a_k) (-i)^k sinh^k x.
        let mut pow = CPoly::one(); // (z^2 - 1)^j
        let mut j = 0usize;
        for (k, &a) in self.even.coeffs().iter().enumerate() {
            if k / 2 > j {
                pow = pow.mul(&z2m1);
                j += 1;
            }
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            if k % 2 == 0 {
                even = even.add(&pow.scale(a.conj() * sign));
            } else {
                odd = odd.add(&pow.scale(a.conj() * minus_i * sign));
            }
        }

        // B-part: i cosh x * conj(b_k) (-i)^k sinh^k x.
        let z = CPoly::monomial(C64::new(1.0, 0.0), 1);
        let mut pow = CPoly::one();
        let mut j = 0usize;
        for (k, &b) in self.odd.coeffs().iter().enumerate() {
            if k / 2 > j {
                pow = pow.mul(&z2m1);
                j += 1;
            }
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let zp = z.mul(&pow);
            if k % 2 == 0 {
                even = even.add(&zp.scale(b.conj() * i * sign));
            } else {
                odd = odd.add(&zp.scale(b.conj() * sign));
            }
        }

        HypPoly { even, odd }
    }
}
