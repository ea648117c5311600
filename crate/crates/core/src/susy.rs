//! Superpotentials, partner potentials `U∓ = W² ∓ W′`, the ladder operators
//! `Â = d/dx̃ + W`, `Â† = −d/dx̃ + W`, intertwining checks and the Riccati
//! equations that determine `W`.

use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

use crate::function::{Interval, RealFunction};
use crate::jet::Jet;
use crate::numerics::{self, GridFunction, NumericsError, RealGrid};
use crate::specfun::{self, integrate, QuadratureError, QuadratureSpec, UpperLimit};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SusyError {
    #[error("ground state is not positive at x̃ = {x} (value {value})")]
    ZeroCrossing { x: f64, value: f64 },
    #[error("grid [{start}, {end}] is not inside the superpotential domain")]
    DomainMismatch { start: f64, end: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// How a superpotential was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Provenance {
    GroundState,
    RiccatiParticular,
    /// Member of the general Riccati family with integration constant `C`;
    /// `pole` is where `1/z` blows up, when one lies in the requested domain.
    RiccatiGeneral { constant: f64, pole: Option<f64> },
}

#[derive(Debug, Clone)]
pub struct Superpotential {
    w: RealFunction,
    domain: Interval,
    provenance: Provenance,
}

impl Superpotential {
    pub fn new(w: RealFunction, domain: Interval, provenance: Provenance) -> Self {
        Self { w, domain, provenance }
    }

    pub fn function(&self) -> &RealFunction {
        &self.w
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn value(&self, x: f64) -> f64 {
        self.w.value(x)
    }

    /// `W′`, analytic when available, else central differences with
    /// `h = max(1e-6, 1e-6·|x̃|)`.
    pub fn derivative(&self, x: f64) -> f64 {
        self.w.derivative(x)
    }

    pub fn is_analytic(&self) -> bool {
        self.w.is_analytic()
    }

    fn check_grid(&self, grid: &RealGrid) -> Result<(), SusyError> {
        if self.domain.contains_closed(grid.start()) && self.domain.contains_closed(grid.end()) {
            Ok(())
        } else {
            Err(SusyError::DomainMismatch {
                start: grid.start(),
                end: grid.end(),
            })
        }
    }
}

/// `W = −φ₀′/φ₀`.
///
/// The ground state is scanned at 2001 interior points of the domain
/// (infinite ends truncated 20 units out); a non-positive or non-finite
/// sample is reported as a zero crossing.
pub fn superpotential_from_ground_state(phi0: &RealFunction, domain: Interval) -> Result<Superpotential, SusyError> {
    if !domain.is_valid() {
        return Err(SusyError::InvalidArgument("empty domain"));
    }
    let (a, b) = domain.finite_window(20.0);
    const SAMPLES: usize = 2001;
    for i in 1..=SAMPLES {
        let x = a + (b - a) * i as f64 / (SAMPLES + 1) as f64;
        let value = phi0.value(x);
        if !(value > 0.0 && value.is_finite()) {
            return Err(SusyError::ZeroCrossing { x, value });
        }
    }
    let w = match phi0 {
        RealFunction::Analytic(f) => {
            let f = f.clone();
            RealFunction::analytic(move |x| {
                let phi = f(x);
                -(phi.derive() / phi)
            })
        }
        RealFunction::Sampled(_) => {
            let phi = phi0.clone();
            RealFunction::sampled(move |x| -phi.derivative(x) / phi.value(x))
        }
    };
    Ok(Superpotential::new(w, domain, Provenance::GroundState))
}

/// `U∓ = W² ∓ W′` on the domain of `W`.
#[derive(Debug, Clone)]
pub struct PartnerPair {
    pub u_minus: RealFunction,
    pub u_plus: RealFunction,
    pub domain: Interval,
}

pub fn partner_potentials(w: &Superpotential) -> PartnerPair {
    let (u_minus, u_plus) = match &w.w {
        RealFunction::Analytic(f) => {
            let (f1, f2) = (f.clone(), f.clone());
            (
                RealFunction::analytic(move |x| {
                    let w = f1(x);
                    w * w - w.derive()
                }),
                RealFunction::analytic(move |x| {
                    let w = f2(x);
                    w * w + w.derive()
                }),
            )
        }
        RealFunction::Sampled(_) => {
            let (w1, w2) = (w.w.clone(), w.w.clone());
            (
                RealFunction::sampled(move |x| w1.value(x).powi(2) - w1.derivative(x)),
                RealFunction::sampled(move |x| w2.value(x).powi(2) + w2.derivative(x)),
            )
        }
    };
    PartnerPair {
        u_minus,
        u_plus,
        domain: w.domain,
    }
}

fn ladder(w: &Superpotential, phi: &RealFunction, sign: f64) -> RealFunction {
    match (&w.w, phi) {
        (RealFunction::Analytic(wf), RealFunction::Analytic(pf)) => {
            let (wf, pf) = (wf.clone(), pf.clone());
            RealFunction::analytic(move |x| {
                let p = pf(x);
                p.derive() * sign + wf(x) * p
            })
        }
        _ => {
            let (w, phi) = (w.w.clone(), phi.clone());
            RealFunction::sampled(move |x| sign * phi.derivative(x) + w.value(x) * phi.value(x))
        }
    }
}

/// `Âφ = φ′ + Wφ`. Analytic when both `W` and `φ` are.
pub fn apply_a(w: &Superpotential, phi: &RealFunction) -> RealFunction {
    ladder(w, phi, 1.0)
}

/// `Â†φ = −φ′ + Wφ`. Analytic when both `W` and `φ` are.
pub fn apply_adag(w: &Superpotential, phi: &RealFunction) -> RealFunction {
    ladder(w, phi, -1.0)
}

fn ladder_on_grid(w: &Superpotential, phi: &GridFunction, sign: f64) -> Result<GridFunction, SusyError> {
    w.check_grid(phi.grid())?;
    let d = numerics::derivative(phi);
    let values = phi
        .grid()
        .points()
        .zip(phi.values().iter().zip(d.values()))
        .map(|(x, (&p, &dp))| sign * dp + w.value(x) * p)
        .collect();
    Ok(GridFunction::new(*phi.grid(), values)?)
}

/// `Âφ` on a grid, with finite-difference `φ′`.
pub fn apply_a_on_grid(w: &Superpotential, phi: &GridFunction) -> Result<GridFunction, SusyError> {
    ladder_on_grid(w, phi, 1.0)
}

/// `Â†φ` on a grid, with finite-difference `φ′`.
pub fn apply_adag_on_grid(w: &Superpotential, phi: &GridFunction) -> Result<GridFunction, SusyError> {
    ladder_on_grid(w, phi, -1.0)
}

/// `−φ″ + Uφ`.
pub fn apply_hamiltonian(potential: &RealFunction, phi: &RealFunction) -> RealFunction {
    match (potential, phi) {
        (RealFunction::Analytic(uf), RealFunction::Analytic(pf)) => {
            let (uf, pf) = (uf.clone(), pf.clone());
            RealFunction::analytic(move |x| {
                let p = pf(x);
                uf(x) * p - p.derive().derive()
            })
        }
        _ => {
            let (u, phi) = (potential.clone(), phi.clone());
            RealFunction::sampled(move |x| -phi.second_derivative(x) + u.value(x) * phi.value(x))
        }
    }
}

/// Riccati equation in the normal form `−ξ′ + ξ² − a(x̃)·ξ − b(x̃) = 0`.
#[derive(Clone)]
pub struct RiccatiProblem {
    a: RealFunction,
    b: RealFunction,
    domain: Interval,
}

impl core::fmt::Debug for RiccatiProblem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("RiccatiProblem").field("domain", &self.domain).finish_non_exhaustive()
    }
}

impl RiccatiProblem {
    pub fn new(a: RealFunction, b: RealFunction, domain: Interval) -> Self {
        Self { a, b, domain }
    }

    /// The oscillator equation after the square-root map:
    /// `a = 1/(2x̃)`, `b = 2m⁴/ℰ₀² − 2m²/(√2·ω·x̃)`.
    pub fn oscillator(mass: f64, omega: f64, ground_energy: f64) -> Self {
        let c0 = 2.0 * mass.powi(4) / (ground_energy * ground_energy);
        let c1 = SQRT_2 * mass * mass / omega;
        Self::new(
            RealFunction::analytic(|x| x.recip() * 0.5),
            RealFunction::analytic(move |x| c0 - x.recip() * c1),
            Interval::positive_half_line(),
        )
    }

    /// The energy-dependent toy model:
    /// `b = 2m⁴/ℰ₀² − (2m²/(√2ωx̃))·(1 − λ√(2√2·m·x̃/ω))`.
    pub fn energy_dependent(mass: f64, omega: f64, lambda: f64, ground_energy: f64) -> Self {
        let c0 = 2.0 * mass.powi(4) / (ground_energy * ground_energy);
        let c1 = SQRT_2 * mass * mass / omega;
        let c2 = lambda * (2.0 * SQRT_2 * mass / omega).sqrt();
        Self::new(
            RealFunction::analytic(|x| x.recip() * 0.5),
            RealFunction::analytic(move |x| c0 - x.recip() * c1 * (1.0 - x.sqrt() * c2)),
            Interval::positive_half_line(),
        )
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    /// Pointwise residual at `x`.
    pub fn residual_at(&self, xi: &RealFunction, x: f64) -> f64 {
        let v = xi.value(x);
        -xi.derivative(x) + v * v - self.a.value(x) * v - self.b.value(x)
    }
}

/// Residual of the Riccati equation for `ξ` on `grid`.
pub fn riccati_residual(xi: &RealFunction, problem: &RiccatiProblem, grid: &RealGrid) -> Result<GridFunction, SusyError> {
    if !(problem.domain.contains_closed(grid.start()) && problem.domain.contains_closed(grid.end()))
        || grid.start() <= 0.0 && problem.domain.lo == 0.0
    {
        return Err(SusyError::DomainMismatch {
            start: grid.start(),
            end: grid.end(),
        });
    }
    Ok(GridFunction::sample(grid, |x| problem.residual_at(xi, x))?)
}

/// `k = 4√2·m²/ω`, the decay rate in the linearized equation for `z`.
fn riccati_rate(mass: f64, omega: f64) -> f64 {
    4.0 * SQRT_2 * mass * mass / omega
}

/// General solution of `z′ = (1/(2x̃) − k)·z − 1`:
/// `z = √x̃·(C·e^{−kx̃} − √(π/k)·e^{−kx̃}·erfi(√(kx̃)))`, evaluated through the
/// Dawson integral as `√x̃·(C·e^{−kx̃} − (2/√k)·F(√(kx̃)))`.
pub fn riccati_z(constant: f64, mass: f64, omega: f64, x: f64) -> f64 {
    let k = riccati_rate(mass, omega);
    x.sqrt() * (constant * (-k * x).exp() - 2.0 / k.sqrt() * specfun::dawson((k * x).sqrt()))
}

/// `z` with a plus sign in front of the erfi term. It solves
/// `z′ = (1/(2x̃) − k)·z + 1`, not the linearized equation; kept to
/// document the sign.
pub fn riccati_z_plus_sign(constant: f64, mass: f64, omega: f64, x: f64) -> f64 {
    let k = riccati_rate(mass, omega);
    let u = (k * x).sqrt();
    (1.0 / (2.0 * mass)) * (omega * PI * x / SQRT_2).sqrt() * (-k * x).exp() * specfun::erfi(u)
        + constant * x.sqrt() * (-k * x).exp()
}

fn riccati_z_jet(constant: f64, k: f64, x: Jet) -> Jet {
    x.sqrt() * ((x * -k).exp() * constant - specfun::dawson_jet((x * k).sqrt()) * (2.0 / k.sqrt()))
}

/// Where `z` vanishes on `(0, ∞)`: `erfi(√(kx̃)) = C·√(k/π)`, only for `C > 0`.
fn riccati_pole(constant: f64, k: f64) -> Option<f64> {
    if constant <= 0.0 {
        return None;
    }
    let target = constant * (k / PI).sqrt();
    let mut lo = 0.0;
    let mut hi = 1.0;
    while specfun::erfi(hi) < target {
        lo = hi;
        hi *= 2.0;
        if hi > 26.0 {
            return None;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if specfun::erfi(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    let u = 0.5 * (lo + hi);
    Some(u * u / k)
}

/// Member of the general superpotential family
/// `W = −1/(4x̃) + 2√2m²/ω + 1/z(x̃)`.
///
/// For `C > 0`, `z` has one zero on the half-line; the returned domain is
/// the longer side of the requested domain around it, and the pole is
/// recorded in the provenance.
pub fn riccati_general(constant: f64, mass: f64, omega: f64, domain: Interval) -> Result<Superpotential, SusyError> {
    if !(mass > 0.0 && omega > 0.0) {
        return Err(SusyError::InvalidArgument("m and ω must be positive"));
    }
    if !domain.is_valid() || domain.lo < 0.0 {
        return Err(SusyError::InvalidArgument("domain must lie in x̃ > 0"));
    }
    let k = riccati_rate(mass, omega);
    let particular = 2.0 * SQRT_2 * mass * mass / omega;
    let pole = riccati_pole(constant, k);
    let clipped = match pole {
        Some(p) if domain.contains(p) => {
            let left = Interval::new(domain.lo, p);
            let right = Interval::new(p, domain.hi);
            if right.hi - right.lo >= left.hi - left.lo {
                right
            } else {
                left
            }
        }
        _ => domain,
    };
    let w = RealFunction::analytic(move |x| {
        x.recip() * -0.25 + particular + riccati_z_jet(constant, k, x).recip()
    });
    Ok(Superpotential::new(
        w,
        clipped,
        Provenance::RiccatiGeneral { constant, pole },
    ))
}

/// The ξ part of a general family member, `2√2m²/ω + 1/z`.
pub fn riccati_general_xi(constant: f64, mass: f64, omega: f64) -> RealFunction {
    let k = riccati_rate(mass, omega);
    let particular = 2.0 * SQRT_2 * mass * mass / omega;
    RealFunction::analytic(move |x| riccati_z_jet(constant, k, x).recip() + particular)
}

/// Closed-form partner family to check against a superpotential.
pub struct PartnerFamily<'a> {
    /// `φₙ⁻`
    pub phi_minus: &'a dyn Fn(usize) -> RealFunction,
    /// `Eₙ`
    pub energy: &'a dyn Fn(usize) -> f64,
    /// Normalization claimed for `φₙ⁺ = cₙ·Âφₙ₊₁⁻`, if any.
    pub plus_coefficient: Option<&'a dyn Fn(usize) -> f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntertwineReport {
    pub n: usize,
    /// `‖Âφₙ₊₁⁻‖²`
    pub norm_sq_a_phi: f64,
    /// `Eₙ₊₁`
    pub expected_e: f64,
    /// `‖Ĥ₊(Âφₙ₊₁⁻) − Eₙ₊₁·Âφₙ₊₁⁻‖∞` over the grid interior.
    pub residual_hplus: f64,
    /// `sup |Âφ₀⁻|` over the grid.
    pub zero_mode_sup: f64,
    /// `|cₙ − 1/√Eₙ₊₁|` when a coefficient is supplied.
    pub coefficient_error: Option<f64>,
}

/// Checks the intertwining `Âφₙ₊₁⁻ ∝ φₙ⁺` with `φₙ⁺ = Âφₙ₊₁⁻/√Eₙ₊₁`.
///
/// The norm is integrated over the superpotential's domain; the residuals
/// are taken on `grid`, analytically when every ingredient is analytic and
/// by second differences otherwise.
pub fn intertwine_check(
    w: &Superpotential,
    family: &PartnerFamily<'_>,
    n: usize,
    grid: &RealGrid,
) -> Result<IntertwineReport, SusyError> {
    w.check_grid(grid)?;
    let pair = partner_potentials(w);
    let a_phi = apply_a(w, &(family.phi_minus)(n + 1));
    let expected_e = (family.energy)(n + 1);

    let domain = w.domain();
    let spec = match domain.hi.is_finite() {
        true => QuadratureSpec::finite(domain.lo, domain.hi),
        false => QuadratureSpec::semi_infinite(domain.lo),
    }
    .with_tolerances(1e-12, 1e-14)
    .with_max_subdivisions(4000);
    debug_assert!(spec.upper == UpperLimit::Infinity || domain.hi.is_finite());
    let norm_sq_a_phi = integrate(|x| a_phi.value(x).powi(2), &spec)?;

    let residual_hplus = if a_phi.is_analytic() && pair.u_plus.is_analytic() {
        let h = apply_hamiltonian(&pair.u_plus, &a_phi);
        let points: Vec<f64> = grid.points().collect();
        points[1..points.len() - 1]
            .iter()
            .fold(0.0f64, |m, &x| m.max((h.value(x) - expected_e * a_phi.value(x)).abs()))
    } else {
        let sampled = GridFunction::sample(grid, |x| a_phi.value(x))?;
        let d2 = numerics::second_difference(&sampled);
        let v = sampled.values();
        let mut worst = 0.0f64;
        for (i, x) in grid.points().enumerate().skip(1).take(grid.count() - 2) {
            let r = -d2.values()[i] + pair.u_plus.value(x) * v[i] - expected_e * v[i];
            worst = worst.max(r.abs());
        }
        worst
    };

    let zero_mode = apply_a(w, &(family.phi_minus)(0));
    let zero_mode_sup = grid.points().fold(0.0f64, |m, x| m.max(zero_mode.value(x).abs()));

    let coefficient_error = family
        .plus_coefficient
        .map(|c| (c(n) - 1.0 / expected_e.sqrt()).abs());

    Ok(IntertwineReport {
        n,
        norm_sq_a_phi,
        expected_e,
        residual_hplus,
        zero_mode_sup,
        coefficient_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn oscillator_w() -> Superpotential {
        Superpotential::new(RealFunction::analytic(|x| x), Interval::real_line(), Provenance::GroundState)
    }

    #[test]
    fn ground_state_examples() {
        let gauss = RealFunction::analytic(|x| (x * x * -0.5).exp());
        let w = superpotential_from_ground_state(&gauss, Interval::real_line()).unwrap();
        for &x in &[-2.0, 0.3, 4.0] {
            assert_abs_diff_eq!(w.value(x), x, epsilon = 1e-14);
            assert_abs_diff_eq!(w.derivative(x), 1.0, epsilon = 1e-14);
        }
        let c = RealFunction::analytic(|_| Jet::constant(3.0));
        let w = superpotential_from_ground_state(&c, Interval::new(0.0, 1.0)).unwrap();
        assert_eq!(w.value(0.5), 0.0);
    }

    #[test]
    fn ground_state_zero_crossing_is_reported() {
        let odd = RealFunction::analytic(|x| x);
        let err = superpotential_from_ground_state(&odd, Interval::new(-1.0, 1.0)).unwrap_err();
        assert!(matches!(err, SusyError::ZeroCrossing { .. }));
    }

    #[test]
    fn sampled_ground_state_uses_differences() {
        let gauss = RealFunction::sampled(|x| (-x * x / 2.0).exp());
        let w = superpotential_from_ground_state(&gauss, Interval::new(-5.0, 5.0)).unwrap();
        assert!(!w.is_analytic());
        assert_abs_diff_eq!(w.value(1.2), 1.2, epsilon = 1e-8);
        assert_abs_diff_eq!(w.derivative(1.2), 1.0, epsilon = 1e-4);
    }

    #[test]
    fn oscillator_partners() {
        let pair = partner_potentials(&oscillator_w());
        for &x in &[-1.5, 0.0, 2.5] {
            assert_abs_diff_eq!(pair.u_minus.value(x), x * x - 1.0, epsilon = 1e-14);
            assert_abs_diff_eq!(pair.u_plus.value(x), x * x + 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn ladder_operators_on_gaussian() {
        let w = oscillator_w();
        let gauss = RealFunction::analytic(|x| (x * x * -0.5).exp());
        let a = apply_a(&w, &gauss);
        let ad = apply_adag(&w, &gauss);
        for &x in &[-1.0, 0.4, 2.0] {
            assert_abs_diff_eq!(a.value(x), 0.0, epsilon = 1e-15);
            assert_abs_diff_eq!(ad.value(x), 2.0 * x * (-x * x / 2.0).exp(), epsilon = 1e-15);
        }
        let zero = RealFunction::analytic(|_| Jet::constant(0.0));
        assert_eq!(apply_adag(&w, &zero).value(0.7), 0.0);
    }

    #[test]
    fn ladder_on_grid_matches_analytic() {
        let w = oscillator_w();
        let grid = numerics::make_grid(-6.0, 6.0, 2401).unwrap();
        let f = GridFunction::sample(&grid, |x| (-x * x / 2.0).exp()).unwrap();
        let ad = apply_adag_on_grid(&w, &f).unwrap();
        for (x, v) in grid.points().zip(ad.values()) {
            assert_abs_diff_eq!(*v, 2.0 * x * (-x * x / 2.0).exp(), epsilon = 1e-4);
        }
        let a = apply_a_on_grid(&w, &f).unwrap();
        assert!(a.max_abs() < 1e-4);

        let half = Superpotential::new(RealFunction::analytic(|x| x), Interval::new(0.0, 1.0), Provenance::GroundState);
        assert!(matches!(apply_a_on_grid(&half, &f), Err(SusyError::DomainMismatch { .. })));
    }

    #[test]
    fn oscillator_riccati_residual_without_xi() {
        let problem = RiccatiProblem::oscillator(1.0, 1.0, 0.5);
        let zero = RealFunction::analytic(|_| Jet::constant(0.0));
        let grid = numerics::make_grid(0.1, 5.0, 50).unwrap();
        let r = riccati_residual(&zero, &problem, &grid).unwrap();
        for (x, v) in grid.points().zip(r.values()) {
            let want = -2.0 / 0.25 + 2.0 / (SQRT_2 * x);
            assert_abs_diff_eq!(*v, want, epsilon = 1e-12);
        }
        let bad = numerics::make_grid(-1.0, 1.0, 5).unwrap();
        assert!(riccati_residual(&zero, &problem, &bad).is_err());
    }

    #[test]
    fn riccati_pole_location() {
        let k = riccati_rate(1.0, 1.0);
        let p = riccati_pole(1.0, k).unwrap();
        assert_abs_diff_eq!(riccati_z(1.0, 1.0, 1.0, p), 0.0, epsilon = 1e-13);
        assert!(riccati_pole(0.0, k).is_none());
        assert!(riccati_pole(-2.0, k).is_none());
        let w = riccati_general(1.0, 1.0, 1.0, Interval::positive_half_line()).unwrap();
        assert_abs_diff_eq!(w.domain().lo, p);
        assert!(w.domain().hi.is_infinite());
    }

    #[test]
    fn large_constant_recovers_particular_solution() {
        let xi = riccati_general_xi(1e30, 1.0, 1.0);
        // the pole sits near x̃ ≈ 12 for C = 1e30
        for &x in &[0.5, 1.0, 2.0] {
            assert_abs_diff_eq!(xi.value(x), 2.0 * SQRT_2, epsilon = 1e-9);
        }
    }

    #[test]
    fn factorization_on_compact_test_function() {
        // ⟨f, Ĥ₋f⟩ = ‖Âf‖² for f vanishing with its derivative at both ends
        let w = Superpotential::new(
            RealFunction::analytic(|x| x.recip() * -0.25 + 2.0 * SQRT_2),
            Interval::positive_half_line(),
            Provenance::RiccatiParticular,
        );
        let pair = partner_potentials(&w);
        let (a, b) = (0.5, 4.0);
        let f = RealFunction::analytic(move |x| ((x - a) * (b - x)).powi(2));
        let hf = apply_hamiltonian(&pair.u_minus, &f);
        let af = apply_a(&w, &f);
        let spec = QuadratureSpec::finite(a, b);
        let lhs = integrate(|x| f.value(x) * hf.value(x), &spec).unwrap();
        let rhs = integrate(|x| af.value(x).powi(2), &spec).unwrap();
        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-8 * rhs.abs());
        // and Ĥ₊ = ÂÂ†
        let hpf = apply_hamiltonian(&pair.u_plus, &f);
        let adf = apply_adag(&w, &f);
        let lhs = integrate(|x| f.value(x) * hpf.value(x), &spec).unwrap();
        let rhs = integrate(|x| adf.value(x).powi(2), &spec).unwrap();
        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-8 * rhs.abs());
    }
}
