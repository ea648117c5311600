//! The two closed-form families: the harmonic oscillator carried through
//! the square-root PCT, and the oscillator under an energy-dependent force.
//! Both come with spectra, wavefunctions, superpotentials and partners.
//! The identity-PCT oscillator is included as the isospectral reference.

use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

use crate::function::{Interval, RealFunction};
use crate::jet::Jet;
use crate::specfun::{hermite_jet, integrate_real_line, QuadratureError};
use crate::susy::{apply_a, PartnerPair, Provenance, Superpotential};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedKind {
    HarmonicOscillator,
    EnergyDependent,
}

/// Seed Hamiltonian parameters, `ħ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeedModel {
    pub kind: SeedKind,
    pub mass: f64,
    pub omega: f64,
    /// Strength of the energy-dependent force; 0 for the plain oscillator.
    pub lambda: f64,
}

impl SeedModel {
    pub fn oscillator(mass: f64, omega: f64) -> Result<Self, ModelError> {
        Self::new(SeedKind::HarmonicOscillator, mass, omega, 0.0)
    }

    pub fn energy_dependent(mass: f64, omega: f64, lambda: f64) -> Result<Self, ModelError> {
        Self::new(SeedKind::EnergyDependent, mass, omega, lambda)
    }

    fn new(kind: SeedKind, mass: f64, omega: f64, lambda: f64) -> Result<Self, ModelError> {
        check_positive(mass, omega)?;
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(ModelError::InvalidArgument("λ must be finite and nonnegative"));
        }
        Ok(Self { kind, mass, omega, lambda })
    }

    /// Seed level `ℰₙ`.
    pub fn seed_energy(&self, n: usize) -> f64 {
        match self.kind {
            SeedKind::HarmonicOscillator => self.omega * (n as f64 + 0.5),
            SeedKind::EnergyDependent => edp_energy(n, self.lambda, self.mass, self.omega),
        }
    }
}

impl Default for SeedModel {
    fn default() -> Self {
        Self {
            kind: SeedKind::HarmonicOscillator,
            mass: 1.0,
            omega: 1.0,
            lambda: 0.0,
        }
    }
}

fn check_positive(mass: f64, omega: f64) -> Result<(), ModelError> {
    if mass > 0.0 && omega > 0.0 && mass.is_finite() && omega.is_finite() {
        Ok(())
    } else {
        Err(ModelError::InvalidArgument("m and ω must be positive"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub n: usize,
    pub seed_energy: f64,
    pub partner_energy: f64,
    /// `σₙ = ℰₙ/m`
    pub sigma_n: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectrumTable {
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumTable {
    fn build(levels: usize, mass: f64, seed: impl Fn(usize) -> f64, partner: impl Fn(usize) -> f64) -> Self {
        let entries = (0..levels)
            .map(|n| {
                let seed_energy = seed(n);
                SpectrumEntry {
                    n,
                    seed_energy,
                    partner_energy: partner(n),
                    sigma_n: seed_energy / mass,
                }
            })
            .collect();
        Self { entries }
    }

    pub fn partner_energies(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.partner_energy).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Seed,
    PartnerMinus,
    PartnerPlus,
}

/// A closed-form state together with its normalization constant.
#[derive(Debug, Clone)]
pub struct WaveFunctionSpec {
    pub branch: Branch,
    pub n: usize,
    pub function: RealFunction,
    pub normalization: f64,
    pub domain: Interval,
}

impl WaveFunctionSpec {
    pub fn value(&self, x: f64) -> f64 {
        self.function.value(x)
    }

    pub fn density(&self, x: f64) -> f64 {
        self.value(x).powi(2)
    }
}

/// `2ⁿ·n!`, as a float.
fn hermite_norm_factor(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * 2.0 * k as f64)
}

/// Normalized oscillator eigenfunction
/// `ψₙ = (mω/π)^{1/4}·Hₙ(√(mω)·x)·e^{−mωx²/2}/√(2ⁿn!)` with `ℰₙ = ω(n+½)`.
pub fn ho_seed(n: usize, mass: f64, omega: f64) -> Result<(f64, WaveFunctionSpec), ModelError> {
    check_positive(mass, omega)?;
    let mw = mass * omega;
    let norm = (mw / PI).powf(0.25) / hermite_norm_factor(n).sqrt();
    let root = mw.sqrt();
    let function = RealFunction::analytic(move |x| {
        hermite_jet(n as u32, x * root) * (x * x * (-0.5 * mw)).exp() * norm
    });
    let spec = WaveFunctionSpec {
        branch: Branch::Seed,
        n,
        function,
        normalization: norm,
        domain: Interval::real_line(),
    };
    Ok((omega * (n as f64 + 0.5), spec))
}

/// `Eₙ = 8(1 − 1/(2n+1)²)`, the partner levels of the square-root family
/// with `m = ω = 1`.
pub fn ho_pct_spectrum(n: usize) -> f64 {
    OscillatorPct::default().partner_energy(n)
}

/// `φₙ⁻` of the square-root family with `m = ω = 1`.
pub fn ho_pct_phi_minus(n: usize) -> WaveFunctionSpec {
    OscillatorPct::default().phi_minus(n)
}

/// `φₙ⁺ = cₙ·Âφₙ₊₁⁻` of the square-root family with `m = ω = 1`.
pub fn ho_pct_phi_plus(n: usize) -> WaveFunctionSpec {
    OscillatorPct::default().phi_plus(n)
}

/// `(n+3/2)/(2√(2((n+3/2)²−¼)))`, the `φₙ⁺` prefactor for `m = ω = 1`.
pub fn ho_pct_plus_coefficient(n: usize) -> f64 {
    let a = n as f64 + 1.5;
    a / (2.0 * (2.0 * (a * a - 0.25)).sqrt())
}

/// `φₙ⁻` with the Hermite argument `√(4√2·x̃)`, without the `1/(2n+1)`
/// scaling. It is not an eigenfunction for `n ≥ 1`; kept for comparison.
pub fn ho_pct_phi_minus_printed(n: usize) -> WaveFunctionSpec {
    let s = (2 * n + 1) as f64;
    let norm = (512.0 * SQRT_2 / s.powi(5)).powf(0.25) / (hermite_norm_factor(n) * PI.sqrt()).sqrt();
    let function = RealFunction::analytic(move |x| {
        x.powf(0.25) * hermite_jet(n as u32, (x * (4.0 * SQRT_2)).sqrt()) * (x * (-2.0 * SQRT_2 / s)).exp() * norm
    });
    WaveFunctionSpec {
        branch: Branch::PartnerMinus,
        n,
        function,
        normalization: norm,
        domain: Interval::positive_half_line(),
    }
}

/// The oscillator under `q = √(2√2·x̃/(ωσ))` with `σ = ℰₙ/m`.
///
/// With `p = 2√2m²/ω` and `s = 2n+1`:
/// `W = −1/(4x̃) + p`,
/// `Eₙ = (8m⁴/ω²)(1 − 1/s²)` and
/// `φₙ⁻ ∝ x̃^{1/4}·Hₙ(√(κx̃))·e^{−κx̃/2}`, `κ = 4√2m²/(ωs)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorPct {
    mass: f64,
    omega: f64,
}

impl Default for OscillatorPct {
    fn default() -> Self {
        Self { mass: 1.0, omega: 1.0 }
    }
}

impl OscillatorPct {
    pub fn new(mass: f64, omega: f64) -> Result<Self, ModelError> {
        check_positive(mass, omega)?;
        Ok(Self { mass, omega })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// `2√2m²/ω`, the particular Riccati solution.
    pub fn particular(&self) -> f64 {
        2.0 * SQRT_2 * self.mass * self.mass / self.omega
    }

    pub fn seed_energy(&self, n: usize) -> f64 {
        self.omega * (n as f64 + 0.5)
    }

    pub fn partner_energy(&self, n: usize) -> f64 {
        let s = (2 * n + 1) as f64;
        8.0 * self.mass.powi(4) / (self.omega * self.omega) * (1.0 - 1.0 / (s * s))
    }

    /// Limit of `Eₙ` as `n → ∞`.
    pub fn energy_bound(&self) -> f64 {
        8.0 * self.mass.powi(4) / (self.omega * self.omega)
    }

    pub fn spectrum(&self, levels: usize) -> SpectrumTable {
        SpectrumTable::build(levels, self.mass, |n| self.seed_energy(n), |n| self.partner_energy(n))
    }

    pub fn superpotential(&self) -> Superpotential {
        let p = self.particular();
        Superpotential::new(
            RealFunction::analytic(move |x| x.recip() * -0.25 + p),
            Interval::positive_half_line(),
            Provenance::RiccatiParticular,
        )
    }

    /// `U₋ = p² − 3/(16x̃²) − p/(2x̃)`, `U₊ = p² + 5/(16x̃²) − p/(2x̃)`.
    pub fn partners(&self) -> PartnerPair {
        let p = self.particular();
        PartnerPair {
            u_minus: RealFunction::analytic(move |x| {
                let inv = x.recip();
                inv * inv * (-3.0 / 16.0) - inv * (0.5 * p) + p * p
            }),
            u_plus: RealFunction::analytic(move |x| {
                let inv = x.recip();
                inv * inv * (5.0 / 16.0) - inv * (0.5 * p) + p * p
            }),
            domain: Interval::positive_half_line(),
        }
    }

    fn kappa(&self, n: usize) -> f64 {
        4.0 * SQRT_2 * self.mass * self.mass / (self.omega * (2 * n + 1) as f64)
    }

    /// Normalization `N` with `N² = κ^{3/2}/(2ⁿn!√π(n+½))`.
    pub fn phi_minus_normalization(&self, n: usize) -> f64 {
        let k = self.kappa(n);
        (k.powf(1.5) / (hermite_norm_factor(n) * PI.sqrt() * (n as f64 + 0.5))).sqrt()
    }

    pub fn phi_minus(&self, n: usize) -> WaveFunctionSpec {
        let k = self.kappa(n);
        let norm = self.phi_minus_normalization(n);
        let function = RealFunction::analytic(move |x| {
            x.powf(0.25) * hermite_jet(n as u32, (x * k).sqrt()) * (x * (-0.5 * k)).exp() * norm
        });
        WaveFunctionSpec {
            branch: Branch::PartnerMinus,
            n,
            function,
            normalization: norm,
            domain: Interval::positive_half_line(),
        }
    }

    /// Prefactor of `φₙ⁺ = cₙ·Âφₙ₊₁⁻`; equals `1/√Eₙ₊₁`.
    pub fn plus_coefficient(&self, n: usize) -> f64 {
        ho_pct_plus_coefficient(n) * self.omega / (self.mass * self.mass)
    }

    pub fn phi_plus(&self, n: usize) -> WaveFunctionSpec {
        let c = self.plus_coefficient(n);
        let raw = apply_a(&self.superpotential(), &self.phi_minus(n + 1).function);
        let function = match raw {
            RealFunction::Analytic(f) => RealFunction::analytic(move |x| f(x) * c),
            RealFunction::Sampled(f) => RealFunction::sampled(move |x| f(x) * c),
        };
        WaveFunctionSpec {
            branch: Branch::PartnerPlus,
            n,
            function,
            normalization: c,
            domain: Interval::positive_half_line(),
        }
    }
}

/// Seed level of the energy-dependent model: the real root of
/// `ℰ³ + (2mω²/λ²)ℰ − (2mω³/λ²)(n+½) = 0`.
///
/// Solved in the form `λ²ℰ³ + 2mω²ℰ − 2mω³(n+½) = 0` by Newton steps kept
/// inside a shrinking bracket on `[0, ω(n+1)+λ²]`. `λ = 0` gives `ω(n+½)`.
pub fn edp_energy(n: usize, lambda: f64, mass: f64, omega: f64) -> f64 {
    let level = omega * (n as f64 + 0.5);
    if lambda == 0.0 {
        return level;
    }
    let l2 = lambda * lambda;
    let a = 2.0 * mass * omega * omega;
    let f = |e: f64| l2 * e * e * e + a * e - a * level;
    let df = |e: f64| 3.0 * l2 * e * e + a;
    let (mut lo, mut hi) = (0.0, omega * (n as f64 + 1.0) + l2);
    let mut e = level.min(hi);
    for _ in 0..200 {
        let fe = f(e);
        if fe == 0.0 {
            return e;
        }
        if fe > 0.0 {
            hi = e;
        } else {
            lo = e;
        }
        let mut next = e - fe / df(e);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - e).abs() <= 4.0 * f64::EPSILON * e.abs() {
            return next;
        }
        e = next;
    }
    e
}

/// `ψₙ(x) ∝ Hₙ(√(mω)(x−x₀))·e^{−mω(x−x₀)²/2}` with `x₀ = λℰₙ/(mω²)`,
/// normalized by quadrature.
pub fn edp_seed_wavefn(n: usize, lambda: f64, mass: f64, omega: f64) -> Result<(f64, WaveFunctionSpec), ModelError> {
    check_positive(mass, omega)?;
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(ModelError::InvalidArgument("λ must be finite and nonnegative"));
    }
    let energy = edp_energy(n, lambda, mass, omega);
    let mw = mass * omega;
    let root = mw.sqrt();
    let center = lambda * energy / (mass * omega * omega);
    let raw = move |x: Jet| {
        let y = x - center;
        hermite_jet(n as u32, y * root) * (y * y * (-0.5 * mw)).exp()
    };
    let norm_sq = integrate_real_line(|x| raw(Jet::constant(x)).value().powi(2), center, 1e-12, 1e-14)?;
    let norm = norm_sq.sqrt().recip();
    let spec = WaveFunctionSpec {
        branch: Branch::Seed,
        n,
        function: RealFunction::analytic(move |x| raw(x) * norm),
        normalization: norm,
        domain: Interval::real_line(),
    };
    Ok((energy, spec))
}

fn check_ground_energy(ground_energy: f64) -> Result<(), ModelError> {
    if ground_energy > 0.0 && ground_energy.is_finite() {
        Ok(())
    } else {
        Err(ModelError::InvalidArgument("ℰ₀ must be positive"))
    }
}

/// `W = −1/(4x̃) + √2m²/ℰ₀ + (λℰ₀/(2ω^{3/2}))·√(2√2m/x̃)`.
pub fn edp_superpotential(lambda: f64, ground_energy: f64, mass: f64, omega: f64) -> Result<Superpotential, ModelError> {
    check_ground_energy(ground_energy)?;
    check_positive(mass, omega)?;
    let c0 = SQRT_2 * mass * mass / ground_energy;
    let c1 = lambda * ground_energy / (2.0 * omega.powf(1.5)) * (2.0 * SQRT_2 * mass).sqrt();
    Ok(Superpotential::new(
        RealFunction::analytic(move |x| x.recip() * -0.25 + c0 + x.powf(-0.5) * c1),
        Interval::positive_half_line(),
        Provenance::RiccatiParticular,
    ))
}

/// Closed-form partners of the energy-dependent family with `m = ω = 1`:
///
/// `U₋ = 2/ℰ₀² − 3/(16x̃²) + (ℰ₀³λ²−1)/(√2ℰ₀x̃) + 2λ√(√2/x̃)`,
/// `U₊ = (√2/ℰ₀ + λℰ₀/√(√2x̃) − 1/(4x̃))² + 1/(4x̃²) − (λℰ₀/4)(√2/x̃)^{3/2}`.
pub fn edp_partners(lambda: f64, ground_energy: f64) -> Result<PartnerPair, ModelError> {
    check_ground_energy(ground_energy)?;
    let e0 = ground_energy;
    let root2 = SQRT_2;
    let u_minus = RealFunction::analytic(move |x| {
        let inv = x.recip();
        inv * inv * (-3.0 / 16.0)
            + inv * ((e0.powi(3) * lambda * lambda - 1.0) / (root2 * e0))
            + (inv * root2).sqrt() * (2.0 * lambda)
            + 2.0 / (e0 * e0)
    });
    let u_plus = RealFunction::analytic(move |x| {
        let inv = x.recip();
        let inner = (x * root2).sqrt().recip() * (lambda * e0) - inv * 0.25 + root2 / e0;
        inner * inner + inv * inv * 0.25 - (inv * root2).powf(1.5) * (lambda * e0 / 4.0)
    });
    Ok(PartnerPair {
        u_minus,
        u_plus,
        domain: Interval::positive_half_line(),
    })
}

/// `Eₙ = 2m⁴(ℰ₀⁻² − ℰₙ⁻²)` with `ℰ` from [`edp_energy`].
pub fn edp_partner_spectrum(n: usize, lambda: f64, mass: f64, omega: f64) -> f64 {
    let e0 = edp_energy(0, lambda, mass, omega);
    let en = edp_energy(n, lambda, mass, omega);
    2.0 * mass.powi(4) * (1.0 / (e0 * e0) - 1.0 / (en * en))
}

pub fn edp_spectrum(levels: usize, lambda: f64, mass: f64, omega: f64) -> SpectrumTable {
    SpectrumTable::build(
        levels,
        mass,
        |n| edp_energy(n, lambda, mass, omega),
        |n| edp_partner_spectrum(n, lambda, mass, omega),
    )
}

/// Identity-PCT oscillator: `W = mωx̃`, `U₋ = m²ω²x̃² − mω`,
/// `U₊ = U₋ + 2mω`, `Eₙ = 2m(ℰₙ − ℰ₀)`, tabulated for `levels` levels.
pub fn identity_partner_suite(
    mass: f64,
    omega: f64,
    levels: usize,
) -> Result<(Superpotential, PartnerPair, SpectrumTable), ModelError> {
    check_positive(mass, omega)?;
    let mw = mass * omega;
    let w = Superpotential::new(
        RealFunction::analytic(move |x| x * mw),
        Interval::real_line(),
        Provenance::GroundState,
    );
    let pair = PartnerPair {
        u_minus: RealFunction::analytic(move |x| x * x * (mw * mw) - mw),
        u_plus: RealFunction::analytic(move |x| x * x * (mw * mw) + mw),
        domain: Interval::real_line(),
    };
    let seed = |n: usize| omega * (n as f64 + 0.5);
    let table = SpectrumTable::build(levels, mass, seed, |n| 2.0 * mass * (seed(n) - seed(0)));
    Ok((w, pair, table))
}
