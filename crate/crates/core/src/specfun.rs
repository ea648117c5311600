//! Special functions and quadrature: physicists' Hermite polynomials, the
//! imaginary error function (through the Dawson integral), and adaptive
//! Gauss–Kronrod integration on finite and semi-infinite intervals.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

use crate::jet::Jet;

/// Physicists' Hermite polynomial `Hₙ(y)` by upward recurrence
/// `Hₙ₊₁ = 2yHₙ − 2nHₙ₋₁`.
///
/// Values overflow to ±∞ once `|Hₙ(y)|` exceeds `f64::MAX` (roughly
/// `n·log₁₀(2|y|) > 308`); no scaling is attempted.
pub fn hermite(n: u32, y: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * y;
    for k in 1..n {
        let next = 2.0 * y * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
        if cur.is_infinite() {
            break;
        }
    }
    cur
}

/// `Hₙ` evaluated on a jet, giving its derivatives by the same recurrence.
pub fn hermite_jet(n: u32, y: Jet) -> Jet {
    let mut prev = Jet::constant(1.0);
    if n == 0 {
        return prev;
    }
    let mut cur = y * 2.0;
    for k in 1..n {
        let next = y * cur * 2.0 - prev * (2.0 * k as f64);
        prev = cur;
        cur = next;
    }
    cur
}

const FRAC_2_SQRT_PI: f64 = core::f64::consts::FRAC_2_SQRT_PI;

/// Below this magnitude erfi is summed from its Maclaurin series, above it
/// the Dawson integral comes from its asymptotic expansion.
const ERFI_SERIES_LIMIT: f64 = 6.0;

/// Σ x^{2k+1}/(k!(2k+1)). Every term is positive, so the sum keeps full
/// relative precision.
fn erfi_series_sum(x: f64) -> f64 {
    let x2 = x * x;
    let mut a = x;
    let mut sum = x;
    for k in 1..400 {
        a *= x2 / k as f64;
        let term = a / (2 * k + 1) as f64;
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Asymptotic Dawson integral `F(x) ≈ (1/2x) Σ (2k−1)!!/(2x²)^k`, truncated
/// at the smallest term. Relative error is of order `e^{−x²}`.
fn dawson_asymptotic(x: f64) -> f64 {
    let inv = 1.0 / (2.0 * x * x);
    let mut term: f64 = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let next = term * (2 * k - 1) as f64 * inv;
        if next >= term || next < 1e-17 * sum {
            break;
        }
        term = next;
        sum += term;
    }
    sum / (2.0 * x)
}

/// Dawson integral `F(x) = e^{−x²}∫₀ˣ e^{t²}dt`.
pub fn dawson(x: f64) -> f64 {
    if x.abs() <= ERFI_SERIES_LIMIT {
        (-x * x).exp() * erfi_series_sum(x)
    } else {
        dawson_asymptotic(x)
    }
}

/// Imaginary error function `erfi(x) = (2/√π)∫₀ˣ e^{t²}dt = (2/√π)e^{x²}F(x)`.
///
/// Relative error is near machine precision for `|x| ≤ 6`. The result
/// overflows to ±∞ for `|x|` beyond about 26.6.
pub fn erfi(x: f64) -> f64 {
    if x.abs() <= ERFI_SERIES_LIMIT {
        FRAC_2_SQRT_PI * erfi_series_sum(x)
    } else {
        FRAC_2_SQRT_PI * (x * x).exp() * dawson_asymptotic(x)
    }
}

/// Dawson integral composed with a jet, from `F′(u) = 1 − 2uF(u)`.
pub fn dawson_jet(u: Jet) -> Jet {
    let du = u.derive();
    let mut c = [0.0; Jet::ORDER + 1];
    c[0] = dawson(u.value());
    for k in 1..=Jet::ORDER {
        // coefficient k−1 of (1 − 2uF)·u′ only involves c[0..k]
        let f = Jet::from_coeffs(c);
        let rate = (1.0 - u * f * 2.0) * du;
        c[k] = rate.coeff(k - 1) / k as f64;
    }
    Jet::from_coeffs(c)
}

/// Imaginary error function composed with a jet.
pub fn erfi_jet(u: Jet) -> Jet {
    let du = u.derive();
    let rate = (u * u).exp() * du * FRAC_2_SQRT_PI;
    let mut c = [0.0; Jet::ORDER + 1];
    c[0] = erfi(u.value());
    for k in 1..=Jet::ORDER {
        c[k] = rate.coeff(k - 1) / k as f64;
    }
    Jet::from_coeffs(c)
}

/// Upper integration limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UpperLimit {
    Finite(f64),
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub lower: f64,
    pub upper: UpperLimit,
    pub relative_tolerance: f64,
    pub absolute_tolerance: f64,
    pub max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn finite(lower: f64, upper: f64) -> Self {
        Self {
            lower,
            upper: UpperLimit::Finite(upper),
            ..Self::semi_infinite(lower)
        }
    }

    pub fn semi_infinite(lower: f64) -> Self {
        Self {
            lower,
            upper: UpperLimit::Infinity,
            relative_tolerance: 1e-12,
            absolute_tolerance: 1e-14,
            max_subdivisions: 2000,
        }
    }

    pub fn with_tolerances(mut self, relative: f64, absolute: f64) -> Self {
        self.relative_tolerance = relative;
        self.absolute_tolerance = absolute;
        self
    }

    pub fn with_max_subdivisions(mut self, max_subdivisions: usize) -> Self {
        self.max_subdivisions = max_subdivisions;
        self
    }

    fn validate(&self) -> Result<(), QuadratureError> {
        let ordered = match self.upper {
            UpperLimit::Finite(b) => self.lower < b,
            UpperLimit::Infinity => self.lower.is_finite(),
        };
        if !ordered || !self.lower.is_finite() {
            return Err(QuadratureError::InvalidSpec("lower must be finite and below upper"));
        }
        if !(self.relative_tolerance > 0.0 && self.absolute_tolerance > 0.0) {
            return Err(QuadratureError::InvalidSpec("tolerances must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(QuadratureError::InvalidSpec("max_subdivisions must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(&'static str),
    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (estimate {estimate}, error {error_estimate})"
    )]
    NotConverged {
        estimate: f64,
        error_estimate: f64,
        subdivisions: usize,
    },
    #[error("integrand is not finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },
}

// 15-point Kronrod extension of the 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment, QuadratureError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    if !fc.is_finite() {
        return Err(QuadratureError::NonFiniteIntegrand { x: center });
    }
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.abs() * WGK[7];
    let mut samples = [(0.0, 0.0); 7];
    for (j, &node) in XGK[..7].iter().enumerate() {
        let dx = half * node;
        let (x1, x2) = (center - dx, center + dx);
        let (f1, f2) = (f(x1), f(x2));
        if !f1.is_finite() {
            return Err(QuadratureError::NonFiniteIntegrand { x: x1 });
        }
        if !f2.is_finite() {
            return Err(QuadratureError::NonFiniteIntegrand { x: x2 });
        }
        samples[j] = (f1, f2);
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for (j, &(f1, f2)) in samples.iter().enumerate() {
        asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let value = kronrod * half;
    let resasc = asc * half.abs();
    let resabs = abs_sum * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Ok(Segment { a, b, value, error })
}

fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<f64, QuadratureError> {
    let mut segments: Vec<Segment> = Vec::with_capacity(spec.max_subdivisions.min(4096));
    segments.push(kronrod15(f, a, b)?);
    loop {
        let total: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if error <= spec.absolute_tolerance.max(spec.relative_tolerance * total.abs()) {
            return Ok(total);
        }
        if segments.len() >= spec.max_subdivisions {
            return Err(QuadratureError::NotConverged {
                estimate: total,
                error_estimate: error,
                subdivisions: segments.len(),
            });
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            // interval exhausted at floating resolution
            return Err(QuadratureError::NotConverged {
                estimate: total,
                error_estimate: error,
                subdivisions: segments.len() + 1,
            });
        }
        segments.push(kronrod15(f, seg.a, mid)?);
        segments.push(kronrod15(f, mid, seg.b)?);
    }
}

/// Adaptive 15-point Gauss–Kronrod integration of `f` over the interval in
/// `spec`.
///
/// A semi-infinite range `[a, ∞)` is mapped onto `[0, 1)` with
/// `x = a + t/(1−t)`; the caller guarantees the integrand decays at least
/// exponentially. Endpoints are never sampled, so integrable endpoint
/// singularities are allowed.
pub fn integrate<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<f64, QuadratureError> {
    spec.validate()?;
    match spec.upper {
        UpperLimit::Finite(b) => adaptive(&f, spec.lower, b, spec),
        UpperLimit::Infinity => {
            let a = spec.lower;
            let mapped = |t: f64| {
                let s = 1.0 - t;
                let x = a + t / s;
                let v = f(x);
                if v == 0.0 {
                    0.0
                } else {
                    v / (s * s)
                }
            };
            adaptive(&mapped, 0.0, 1.0, spec)
        }
    }
}

/// Integral over the whole real line, split at `center`.
pub fn integrate_real_line<F: Fn(f64) -> f64>(
    f: F,
    center: f64,
    relative_tolerance: f64,
    absolute_tolerance: f64,
) -> Result<f64, QuadratureError> {
    let spec = QuadratureSpec::semi_infinite(0.0)
        .with_tolerances(relative_tolerance, 0.5 * absolute_tolerance);
    let right = integrate(|t| f(center + t), &spec)?;
    let left = integrate(|t| f(center - t), &spec)?;
    Ok(left + right)
}
