//! Truncated Taylor arithmetic.
//!
//! A [`Jet`] carries the Taylor coefficients `f(x₀), f′(x₀), f″(x₀)/2!, …`
//! of a function around a point. Evaluating a closed form on `Jet::var(x₀)`
//! yields its derivatives up to [`Jet::ORDER`] exactly, up to rounding, which
//! is how every "analytic derivative" in this crate is obtained.

use core::ops::{Add, Div, Mul, Neg, Sub};

#[allow(unused_imports)]
use num_traits::Float;

const LEN: usize = 5;
const FACTORIAL: [f64; LEN] = [1.0, 1.0, 2.0, 6.0, 24.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    coeffs: [f64; LEN],
}

impl Jet {
    /// Highest derivative order carried.
    pub const ORDER: usize = LEN - 1;

    pub fn constant(value: f64) -> Self {
        let mut coeffs = [0.0; LEN];
        coeffs[0] = value;
        Self { coeffs }
    }

    /// The independent variable seeded at `x`.
    pub fn var(x: f64) -> Self {
        let mut coeffs = [0.0; LEN];
        coeffs[0] = x;
        coeffs[1] = 1.0;
        Self { coeffs }
    }

    pub fn from_coeffs(coeffs: [f64; LEN]) -> Self {
        Self { coeffs }
    }

    /// Taylor coefficient `f⁽ᵏ⁾(x₀)/k!`.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs[k]
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// The `k`-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> f64 {
        self.coeffs[k] * FACTORIAL[k]
    }

    /// Jet of `f′`. The top coefficient is unknown and set to NaN.
    pub fn derive(&self) -> Self {
        let mut coeffs = [f64::NAN; LEN];
        for k in 0..LEN - 1 {
            coeffs[k] = (k + 1) as f64 * self.coeffs[k + 1];
        }
        Self { coeffs }
    }

    pub fn exp(self) -> Self {
        let a = &self.coeffs;
        let mut e = [0.0; LEN];
        e[0] = a[0].exp();
        for k in 1..LEN {
            let mut s = 0.0;
            for j in 1..=k {
                s += j as f64 * a[j] * e[k - j];
            }
            e[k] = s / k as f64;
        }
        Self { coeffs: e }
    }

    pub fn ln(self) -> Self {
        let a = &self.coeffs;
        let mut l = [0.0; LEN];
        l[0] = a[0].ln();
        for k in 1..LEN {
            let mut s = 0.0;
            for j in 1..k {
                s += j as f64 * l[j] * a[k - j];
            }
            l[k] = (a[k] - s / k as f64) / a[0];
        }
        Self { coeffs: l }
    }

    /// Real power. The base value must be positive unless `r` is a
    /// nonnegative integer handled by repeated multiplication.
    pub fn powf(self, r: f64) -> Self {
        let a = &self.coeffs;
        let mut p = [0.0; LEN];
        p[0] = a[0].powf(r);
        for k in 1..LEN {
            let mut s = 0.0;
            for j in 1..=k {
                s += (r * j as f64 - (k - j) as f64) * a[j] * p[k - j];
            }
            p[k] = s / (k as f64 * a[0]);
        }
        Self { coeffs: p }
    }

    pub fn powi(self, n: u32) -> Self {
        let mut out = Jet::constant(1.0);
        for _ in 0..n {
            out = out * self;
        }
        out
    }

    pub fn sqrt(self) -> Self {
        self.powf(0.5)
    }

    pub fn recip(self) -> Self {
        Jet::constant(1.0) / self
    }
}

impl From<f64> for Jet {
    fn from(value: f64) -> Self {
        Jet::constant(value)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, rhs: Jet) -> Jet {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: Jet) -> Jet {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
        self
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(mut self) -> Jet {
        for a in self.coeffs.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut c = [0.0; LEN];
        for (k, ck) in c.iter_mut().enumerate() {
            for i in 0..=k {
                *ck += self.coeffs[i] * rhs.coeffs[k - i];
            }
        }
        Jet { coeffs: c }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        let b = &rhs.coeffs;
        let mut q = [0.0; LEN];
        for k in 0..LEN {
            let mut s = self.coeffs[k];
            for i in 1..=k {
                s -= b[i] * q[k - i];
            }
            q[k] = s / b[0];
        }
        Jet { coeffs: q }
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.coeffs[0] += rhs;
        self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: f64) -> Jet {
        self.coeffs[0] -= rhs;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(mut self, rhs: f64) -> Jet {
        for a in self.coeffs.iter_mut() {
            *a *= rhs;
        }
        self
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, rhs: f64) -> Jet {
        self * (1.0 / rhs)
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        rhs * self
    }
}

impl Add<Jet> for f64 {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        rhs + self
    }
}

impl Sub<Jet> for f64 {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        -rhs + self
    }
}
