//! Point canonical transformations `x = q(x̃)`, `ψ(x) = φ(x̃)·g(x̃)`.
//!
//! Three kinds are provided: the identity, the closed-form square-root map
//! that turns the oscillator potential into one linear in `x̃`, and a generic
//! map defined implicitly by `S(q(x̃)) = √m·(x̃ − x̃₀)/σ` with
//! `S(q) = ∫ √U`, which enforces `(q′)²·U(q) = m/σ²`.
//!
//! The weight always satisfies `2g′/g = q″/q′`, which fixes `g` up to a
//! constant; the constant is chosen so that `g = |q′|^{1/2}` everywhere (in
//! particular `g(1) = |q′(1)|^{1/2}`).

use alloc::sync::Arc;
use core::cell::Cell;
use core::f64::consts::SQRT_2;

#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

use crate::function::{Interval, RealFunction};
use crate::jet::Jet;
use crate::specfun::{integrate, QuadratureError, QuadratureSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PctError {
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("potential is not positive at q = {q} (U = {value})")]
    NonPositivePotential { q: f64, value: f64 },
    #[error("could not bracket the inverse of S for target {target}")]
    BracketFailed { target: f64 },
    #[error("x̃ = {x} lies outside the map's domain")]
    OutsideDomain { x: f64 },
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PctKind {
    Identity,
    SqrtOscillator,
    Generic,
}

#[derive(Clone)]
enum MapRepr {
    Identity,
    /// `q = sign·√(scale·x̃)`
    Sqrt { scale: f64 },
    Generic(Arc<GenericData>),
}

struct GenericData {
    potential: RealFunction,
    anchor: f64,
    /// `√m/σ`
    rate: f64,
    origin: f64,
}

/// A point canonical transformation on a fixed domain of `x̃`.
#[derive(Clone)]
pub struct CoordinateMap {
    kind: PctKind,
    domain: Interval,
    sigma: f64,
    mass: f64,
    sign: f64,
    repr: MapRepr,
}

impl core::fmt::Debug for CoordinateMap {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("CoordinateMap")
            .field("kind", &self.kind)
            .field("domain", &self.domain)
            .field("sigma", &self.sigma)
            .field("mass", &self.mass)
            .field("sign", &self.sign)
            .finish()
    }
}

/// `x = x̃`, `g ≡ 1`.
pub fn identity_map(domain: Interval) -> Result<CoordinateMap, PctError> {
    if !domain.is_valid() {
        return Err(PctError::InvalidArgument("empty domain"));
    }
    Ok(CoordinateMap {
        kind: PctKind::Identity,
        domain,
        sigma: 1.0,
        mass: 1.0,
        sign: 1.0,
        repr: MapRepr::Identity,
    })
}

/// `q = sign·√(2√2·x̃/(ωσ))`, the solution of `(q′)²·mω²q²/2 = m/σ²`
/// through the origin. The domain must lie in `x̃ ≥ 0` (open at 0).
pub fn sqrt_map_oscillator(
    mass: f64,
    omega: f64,
    sigma: f64,
    sign: i8,
    domain: Interval,
) -> Result<CoordinateMap, PctError> {
    if !(mass > 0.0 && omega > 0.0 && sigma > 0.0) {
        return Err(PctError::InvalidArgument("m, ω and σ must be positive"));
    }
    if sign != 1 && sign != -1 {
        return Err(PctError::InvalidArgument("sign must be +1 or -1"));
    }
    if !domain.is_valid() || domain.lo < 0.0 {
        return Err(PctError::InvalidArgument("domain must lie in x̃ > 0"));
    }
    Ok(CoordinateMap {
        kind: PctKind::SqrtOscillator,
        domain,
        sigma,
        mass,
        sign: sign as f64,
        repr: MapRepr::Sqrt {
            scale: 2.0 * SQRT_2 / (omega * sigma),
        },
    })
}

/// `q = S⁻¹(√m·(x̃ − x̃₀)/σ)` with `S(q) = ∫_anchor^q √U(y) dy` and `x̃₀` the
/// domain start, so that `q(x̃₀) = anchor` and `q` increases with `x̃`.
///
/// `U` must be positive on the traversed range of `q` (it may vanish at the
/// anchor itself). Evaluation reports a non-positive potential or a failed
/// inversion bracket.
pub fn generic_map(
    potential: RealFunction,
    mass: f64,
    sigma: f64,
    anchor: f64,
    domain: Interval,
) -> Result<CoordinateMap, PctError> {
    if !(mass > 0.0 && sigma > 0.0) {
        return Err(PctError::InvalidArgument("m and σ must be positive"));
    }
    if !domain.is_valid() || !domain.lo.is_finite() {
        return Err(PctError::InvalidArgument("domain needs a finite start"));
    }
    if !anchor.is_finite() {
        return Err(PctError::InvalidArgument("anchor must be finite"));
    }
    Ok(CoordinateMap {
        kind: PctKind::Generic,
        domain,
        sigma,
        mass,
        sign: 1.0,
        repr: MapRepr::Generic(Arc::new(GenericData {
            potential,
            anchor,
            rate: mass.sqrt() / sigma,
            origin: domain.lo,
        })),
    })
}

impl GenericData {
    /// `S(q) = ∫_anchor^q √U`.
    fn action(&self, q: f64) -> Result<f64, PctError> {
        if q == self.anchor {
            return Ok(0.0);
        }
        let bad = Cell::new(None);
        let integrand = |y: f64| {
            let u = self.potential.value(y);
            if u < 0.0 || u.is_nan() {
                bad.set(Some((y, u)));
                0.0
            } else {
                u.sqrt()
            }
        };
        let (a, b, s) = if q > self.anchor { (self.anchor, q, 1.0) } else { (q, self.anchor, -1.0) };
        let spec = QuadratureSpec::finite(a, b).with_tolerances(1e-13, 1e-15);
        let value = integrate(integrand, &spec)?;
        if let Some((y, u)) = bad.get() {
            return Err(PctError::NonPositivePotential { q: y, value: u });
        }
        Ok(s * value)
    }

    fn root_potential(&self, q: f64) -> Result<f64, PctError> {
        let u = self.potential.value(q);
        if u > 0.0 && u.is_finite() {
            Ok(u.sqrt())
        } else {
            Err(PctError::NonPositivePotential { q, value: u })
        }
    }

    fn invert(&self, x: f64) -> Result<f64, PctError> {
        const TOL: f64 = 1e-12;
        let target = self.rate * (x - self.origin);
        if target == 0.0 {
            return Ok(self.anchor);
        }
        let dir = target.signum();
        // geometric bracket expansion away from the anchor
        let mut step = 0.5 * self.anchor.abs().max(1.0);
        let mut near = self.anchor;
        let mut far = self.anchor + dir * step;
        let mut s_far = self.action(far)?;
        let mut expansions = 0;
        while (s_far - target) * dir < 0.0 {
            near = far;
            step *= 2.0;
            far = self.anchor + dir * step;
            s_far = self.action(far)?;
            expansions += 1;
            if expansions > 200 || !far.is_finite() {
                return Err(PctError::BracketFailed { target });
            }
        }
        let (mut lo, mut hi) = if near < far { (near, far) } else { (far, near) };
        let mut q = 0.5 * (lo + hi);
        for _ in 0..200 {
            let residual = self.action(q)? - target;
            if residual == 0.0 {
                return Ok(q);
            }
            // S is increasing in q
            if residual > 0.0 {
                hi = q;
            } else {
                lo = q;
            }
            let slope = self.potential.value(q);
            let newton = if slope > 0.0 { q - residual / slope.sqrt() } else { f64::NAN };
            let next = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
            if (next - q).abs() <= TOL || hi - lo <= TOL {
                return Ok(next);
            }
            q = next;
        }
        Err(PctError::BracketFailed { target })
    }
}

impl CoordinateMap {
    pub fn kind(&self) -> PctKind {
        self.kind
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn sign(&self) -> f64 {
        self.sign
    }

    /// `q(x̃)`.
    pub fn q(&self, x: f64) -> Result<f64, PctError> {
        match &self.repr {
            MapRepr::Identity => Ok(x),
            MapRepr::Sqrt { scale } => Ok(self.sign * (scale * x).sqrt()),
            MapRepr::Generic(data) => data.invert(x),
        }
    }

    /// `q′(x̃)`.
    pub fn q_prime(&self, x: f64) -> Result<f64, PctError> {
        match &self.repr {
            MapRepr::Identity => Ok(1.0),
            MapRepr::Sqrt { scale } => Ok(self.sign * 0.5 * scale.sqrt() / x.sqrt()),
            MapRepr::Generic(data) => {
                let q = data.invert(x)?;
                Ok(data.rate / data.root_potential(q)?)
            }
        }
    }

    /// `q″(x̃)`.
    pub fn q_double_prime(&self, x: f64) -> Result<f64, PctError> {
        match &self.repr {
            MapRepr::Identity => Ok(0.0),
            MapRepr::Sqrt { scale } => Ok(-self.sign * 0.25 * scale.sqrt() * x.powf(-1.5)),
            MapRepr::Generic(data) => {
                // differentiate q′ = c/√U(q): q″ = −(c²/2)·U′(q)/U(q)²
                let q = data.invert(x)?;
                let u = data.root_potential(q)?.powi(2);
                let du = data.potential.derivative(q);
                Ok(-0.5 * data.rate * data.rate * du / (u * u))
            }
        }
    }

    /// `q″/q′`.
    pub fn curvature_ratio(&self, x: f64) -> Result<f64, PctError> {
        match &self.repr {
            MapRepr::Identity => Ok(0.0),
            MapRepr::Sqrt { .. } => Ok(-0.5 / x),
            MapRepr::Generic(_) => Ok(self.q_double_prime(x)? / self.q_prime(x)?),
        }
    }

    /// Weight `g = |q′|^{1/2}`.
    pub fn g(&self, x: f64) -> Result<f64, PctError> {
        Ok(self.q_prime(x)?.abs().sqrt())
    }

    /// `g′ = g·q″/(2q′)`.
    pub fn g_prime(&self, x: f64) -> Result<f64, PctError> {
        Ok(self.g(x)? * 0.5 * self.curvature_ratio(x)?)
    }

    /// `q` on a jet, for the closed-form kinds.
    pub fn q_jet(&self, x: Jet) -> Option<Jet> {
        match &self.repr {
            MapRepr::Identity => Some(x),
            MapRepr::Sqrt { scale } => Some((x * *scale).sqrt() * self.sign),
            MapRepr::Generic(_) => None,
        }
    }

    /// `g` on a jet, for the closed-form kinds.
    pub fn g_jet(&self, x: Jet) -> Option<Jet> {
        match &self.repr {
            MapRepr::Identity => Some(Jet::constant(1.0)),
            MapRepr::Sqrt { scale } => Some(x.powf(-0.25) * (0.5 * scale.sqrt()).sqrt()),
            MapRepr::Generic(_) => None,
        }
    }

    /// Largest `|(q′)²·U(q) − m/σ²|` over `points`.
    pub fn defect<I: IntoIterator<Item = f64>>(&self, potential: &dyn Fn(f64) -> f64, points: I) -> Result<f64, PctError> {
        let target = self.mass / (self.sigma * self.sigma);
        let mut worst = 0.0f64;
        for x in points {
            let qp = self.q_prime(x)?;
            worst = worst.max((qp * qp * potential(self.q(x)?) - target).abs());
        }
        Ok(worst)
    }

    /// `S(q(x̃))` for generic maps.
    pub fn action_at(&self, x: f64) -> Option<Result<f64, PctError>> {
        match &self.repr {
            MapRepr::Generic(data) => Some(data.invert(x).and_then(|q| data.action(q))),
            _ => None,
        }
    }
}

/// `φ(x̃) = ψ(q(x̃))/g(x̃)`.
pub fn transform_wavefunction<'a, F>(psi: F, map: &'a CoordinateMap) -> impl Fn(f64) -> Result<f64, PctError> + 'a
where
    F: Fn(f64) -> f64 + 'a,
{
    move |x| {
        if !map.domain.contains_closed(x) {
            return Err(PctError::OutsideDomain { x });
        }
        let g = map.g(x)?;
        if !(g.is_finite() && g != 0.0) {
            return Err(PctError::OutsideDomain { x });
        }
        Ok(psi(map.q(x)?) / g)
    }
}

/// Jet version of [`transform_wavefunction`] for the closed-form kinds.
pub fn transform_wavefunction_analytic<F>(psi: F, map: &CoordinateMap) -> Option<RealFunction>
where
    F: Fn(Jet) -> Jet + Send + Sync + 'static,
{
    if map.kind == PctKind::Generic {
        return None;
    }
    let map = map.clone();
    Some(RealFunction::analytic(move |x| {
        let q = map.q_jet(x).expect("closed-form map");
        let g = map.g_jet(x).expect("closed-form map");
        psi(q) / g
    }))
}
