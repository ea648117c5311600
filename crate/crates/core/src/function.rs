//! Evaluable real functions and intervals.

use alloc::sync::Arc;
use core::fmt;


use crate::jet::Jet;

/// A closed-form function that can be evaluated on jets.
pub type JetFn = Arc<dyn Fn(Jet) -> Jet + Send + Sync>;
/// A plain pointwise function.
pub type PlainFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// An interval of the real line. Either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    /// `(0, ∞)`.
    pub const fn positive_half_line() -> Self {
        Self::new(0.0, f64::INFINITY)
    }

    pub const fn real_line() -> Self {
        Self::new(f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn is_valid(&self) -> bool {
        !self.lo.is_nan() && !self.hi.is_nan() && self.lo < self.hi
    }

    /// Open-interval membership.
    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn contains_closed(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    /// A finite window for scanning; infinite ends are replaced by the finite
    /// end offset by `reach`.
    pub fn finite_window(&self, reach: f64) -> (f64, f64) {
        match (self.lo.is_finite(), self.hi.is_finite()) {
            (true, true) => (self.lo, self.hi),
            (true, false) => (self.lo, self.lo + reach),
            (false, true) => (self.hi - reach, self.hi),
            (false, false) => (-reach, reach),
        }
    }

    /// Intersection, or `None` when empty.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let out = Interval::new(self.lo.max(other.lo), self.hi.min(other.hi));
        out.is_valid().then_some(out)
    }
}

/// Central-difference step used when no analytic derivative is available.
pub fn difference_step(x: f64) -> f64 {
    1e-6_f64.max(1e-6 * x.abs())
}

/// A real function of one variable, with derivatives either carried
/// analytically (through jets) or approximated by central differences.
#[derive(Clone)]
pub enum RealFunction {
    Analytic(JetFn),
    Sampled(PlainFn),
}

impl fmt::Debug for RealFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealFunction::Analytic(_) => f.write_str("RealFunction::Analytic"),
            RealFunction::Sampled(_) => f.write_str("RealFunction::Sampled"),
        }
    }
}

impl RealFunction {
    pub fn analytic<F>(f: F) -> Self
    where
        F: Fn(Jet) -> Jet + Send + Sync + 'static,
    {
        RealFunction::Analytic(Arc::new(f))
    }

    pub fn sampled<F>(f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        RealFunction::Sampled(Arc::new(f))
    }

    pub fn is_analytic(&self) -> bool {
        matches!(self, RealFunction::Analytic(_))
    }

    /// Value at `x`. Closures are fed a seeded jet so that composed
    /// derivative expressions evaluate correctly.
    pub fn value(&self, x: f64) -> f64 {
        match self {
            RealFunction::Analytic(f) => f(Jet::var(x)).value(),
            RealFunction::Sampled(f) => f(x),
        }
    }

    /// Full jet at `x`, when analytic.
    pub fn jet(&self, x: f64) -> Option<Jet> {
        match self {
            RealFunction::Analytic(f) => Some(f(Jet::var(x))),
            RealFunction::Sampled(_) => None,
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        match self {
            RealFunction::Analytic(f) => f(Jet::var(x)).derivative(1),
            RealFunction::Sampled(f) => {
                let h = difference_step(x);
                (f(x + h) - f(x - h)) / (2.0 * h)
            }
        }
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        match self {
            RealFunction::Analytic(f) => f(Jet::var(x)).derivative(2),
            RealFunction::Sampled(f) => {
                // a wider step keeps the rounding error of the second
                // difference near eps^(1/2)
                let h = 1e-4_f64.max(1e-4 * x.abs());
                (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
            }
        }
    }

    /// The derivative as a function in its own right.
    pub fn differentiated(&self) -> RealFunction {
        match self {
            RealFunction::Analytic(f) => {
                let f = f.clone();
                RealFunction::analytic(move |x| f(x).derive())
            }
            RealFunction::Sampled(f) => {
                let f = f.clone();
                RealFunction::sampled(move |x| {
                    let h = difference_step(x);
                    (f(x + h) - f(x - h)) / (2.0 * h)
                })
            }
        }
    }

    /// Plain pointwise view of the function.
    pub fn as_plain(&self) -> PlainFn {
        match self {
            RealFunction::Analytic(f) => {
                let f = f.clone();
                Arc::new(move |x| f(Jet::var(x)).value())
            }
            RealFunction::Sampled(f) => f.clone(),
        }
    }
}
