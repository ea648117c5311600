//! The verification battery behind `verify`.

use std::f64::consts::SQRT_2;

use susy_pct::models::{
    edp_energy, edp_partner_spectrum, edp_partners, edp_superpotential, ho_pct_phi_minus_printed,
    ho_pct_plus_coefficient, ho_pct_spectrum, identity_partner_suite, OscillatorPct, WaveFunctionSpec,
};
use susy_pct::numerics::{self, make_grid, rayleigh_ritz, GridFunction};
use susy_pct::specfun::{erfi, integrate, QuadratureSpec};
use susy_pct::susy::{
    intertwine_check, partner_potentials, riccati_general_xi, riccati_residual, riccati_z, PartnerFamily,
    RiccatiProblem,
};
use susy_pct::{Jet, RealFunction};

use crate::config::RunConfig;
use crate::output::{Check, VerificationReport};
use crate::CliError;

pub const SUITES: [&str; 11] = [
    "spectrum",
    "eigen",
    "eq20-regression",
    "normalization",
    "intertwine",
    "identity",
    "ritz",
    "riccati",
    "edp",
    "figures",
    "isospectral",
];

pub fn run(config: &RunConfig) -> Result<VerificationReport, CliError> {
    let selected: Vec<&str> = match config.suite.as_str() {
        "all" => SUITES.to_vec(),
        name => {
            let names: Vec<&str> = name.split(',').map(str::trim).collect();
            if let Some(bad) = names.iter().find(|n| !SUITES.contains(n)) {
                return Err(CliError::Config(format!(
                    "unknown suite `{bad}`; expected `all` or one of {}",
                    SUITES.join(", ")
                )));
            }
            names
        }
    };
    let family = OscillatorPct::new(config.mass, config.omega)?;
    let mut checks = Vec::new();
    for suite in selected {
        checks.extend(match suite {
            "spectrum" => spectrum(),
            "eigen" => eigen(&family, &config.levels_or(6))?,
            "eq20-regression" => eq20_regression(),
            "normalization" => normalization(&family, &config.levels_or(8)),
            "intertwine" => intertwine(&family, &config.levels_or(5))?,
            "identity" => identity(config)?,
            "ritz" => ritz(&family, config.levels_or(7).len())?,
            "riccati" => riccati(config),
            "edp" => edp()?,
            "figures" => figures(&family),
            "isospectral" => isospectral(&family),
            _ => unreachable!(),
        });
    }
    Ok(VerificationReport::new(checks))
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |m, v| if v.is_nan() || m.is_nan() { f64::NAN } else { m.max(v) })
}

fn sample_points(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect()
}

fn half_line_integral(f: impl Fn(f64) -> f64) -> f64 {
    let spec = QuadratureSpec::semi_infinite(0.0)
        .with_tolerances(1e-12, 1e-14)
        .with_max_subdivisions(4000);
    integrate(f, &spec).unwrap_or(f64::NAN)
}

/// `sup |−φ″ + (U−E)φ| / sup |φ|` with analytic derivatives.
fn analytic_residual(phi: &WaveFunctionSpec, u: &RealFunction, e: f64, points: &[f64]) -> f64 {
    let (mut worst, mut scale) = (0.0f64, 0.0f64);
    for &x in points {
        let Some(j) = phi.function.jet(x) else { return f64::NAN };
        worst = worst.max((-j.derivative(2) + (u.value(x) - e) * j.value()).abs());
        scale = scale.max(j.value().abs());
    }
    worst / scale
}

/// The same measure with three-point differences on `[0.5, 20]`.
fn grid_residual(phi: &WaveFunctionSpec, u: &RealFunction, e: f64, h: f64) -> Result<f64, CliError> {
    let count = ((20.0 - 0.5) / h).round() as usize + 1;
    let grid = make_grid(0.5, 20.0, count)?;
    let f = GridFunction::sample(&grid, |x| phi.value(x))?;
    let d2 = numerics::second_difference(&f);
    let worst = max_of((1..count - 1).map(|i| {
        let x = grid.point(i);
        (-d2.values()[i] + (u.value(x) - e) * f.values()[i]).abs()
    }));
    Ok(worst / f.max_abs())
}

fn spectrum() -> Vec<Check> {
    let formula = max_of((0..=10).map(|n| {
        let s = (2 * n + 1) as f64;
        (ho_pct_spectrum(n) - 8.0 * (1.0 - 1.0 / (s * s))).abs()
    }));
    let anchors = max_of(
        [(0, 0.0), (1, 64.0 / 9.0), (2, 192.0 / 25.0)]
            .iter()
            .map(|&(n, v)| (ho_pct_spectrum(n) - v).abs()),
    );
    vec![
        Check::at_most("spectrum.formula", formula, 1e-12),
        Check::at_most("spectrum.anchors", anchors, 1e-12),
    ]
}

fn eigen(family: &OscillatorPct, levels: &[usize]) -> Result<Vec<Check>, CliError> {
    let u = family.partners().u_minus;
    let points = sample_points(0.5, 20.0, 2000);
    let mut analytic = 0.0f64;
    let mut grid = 0.0f64;
    let mut ratio_dev = 0.0f64;
    for &n in levels {
        let phi = family.phi_minus(n);
        let e = family.partner_energy(n);
        analytic = analytic.max(analytic_residual(&phi, &u, e, &points));
        let coarse = grid_residual(&phi, &u, e, 1e-3)?;
        let fine = grid_residual(&phi, &u, e, 5e-4)?;
        grid = grid.max(coarse);
        ratio_dev = ratio_dev.max((coarse / fine - 4.0).abs());
    }
    Ok(vec![
        Check::at_most("eigen.analytic_residual", analytic, 1e-9),
        Check::at_most("eigen.grid_residual", grid, 1e-3),
        Check::at_most("eigen.grid_order_deviation", ratio_dev, 0.8),
    ])
}

fn eq20_regression() -> Vec<Check> {
    let family = OscillatorPct::default();
    let u = family.partners().u_minus;
    let points = sample_points(0.5, 20.0, 2000);
    let e = family.partner_energy(2);
    vec![
        Check::above(
            "eq20-regression.printed_residual_n2",
            analytic_residual(&ho_pct_phi_minus_printed(2), &u, e, &points),
            1e-2,
        ),
        Check::at_most(
            "eq20-regression.corrected_residual_n2",
            analytic_residual(&family.phi_minus(2), &u, e, &points),
            1e-9,
        ),
    ]
}

fn normalization(family: &OscillatorPct, levels: &[usize]) -> Vec<Check> {
    let states: Vec<_> = levels.iter().map(|&n| (n, family.phi_minus(n))).collect();
    let (mut norm, mut same, mut mixed) = (0.0f64, 0.0f64, 0.0f64);
    for (i, (n, a)) in states.iter().enumerate() {
        for (m, b) in &states[i..] {
            let v = half_line_integral(|x| a.value(x) * b.value(x));
            if n == m {
                norm = max_of([norm, (v - 1.0).abs()]);
            } else if (n + m) % 2 == 0 {
                same = max_of([same, v.abs()]);
            } else {
                mixed = max_of([mixed, v.abs()]);
            }
        }
    }
    vec![
        Check::at_most("normalization.norm", norm, 1e-8),
        Check::at_most("normalization.overlap_same_parity", same, 1e-8),
        Check::at_most("normalization.overlap_mixed_parity", mixed, 1e-8),
    ]
}

fn intertwine(family: &OscillatorPct, levels: &[usize]) -> Result<Vec<Check>, CliError> {
    let w = family.superpotential();
    let grid = make_grid(0.5, 20.0, 2000)?;
    let phi = |n: usize| family.phi_minus(n).function;
    let energy = |n: usize| family.partner_energy(n);
    let coefficient = |n: usize| family.plus_coefficient(n);
    let accessors = PartnerFamily {
        phi_minus: &phi,
        energy: &energy,
        plus_coefficient: Some(&coefficient),
    };
    let (mut norm, mut residual, mut zero, mut coeff) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &n in levels {
        let r = intertwine_check(&w, &accessors, n, &grid)?;
        norm = max_of([norm, (r.norm_sq_a_phi - r.expected_e).abs()]);
        residual = residual.max(r.residual_hplus);
        zero = zero.max(r.zero_mode_sup);
        coeff = coeff.max(r.coefficient_error.unwrap_or(f64::NAN));
    }
    let printed_coefficient = max_of((0..=6).map(|n| (ho_pct_plus_coefficient(n) - 1.0 / ho_pct_spectrum(n + 1).sqrt()).abs()));
    Ok(vec![
        Check::at_most("intertwine.norm", norm, 1e-6),
        Check::at_most("intertwine.hplus_residual", residual, 1e-9),
        Check::at_most("intertwine.zero_mode", zero, 1e-12),
        Check::at_most("intertwine.coefficient", coeff.max(printed_coefficient), 1e-12),
    ])
}

fn identity(config: &RunConfig) -> Result<Vec<Check>, CliError> {
    let (_, pair, table) = identity_partner_suite(config.mass, config.omega, 4)?;
    let grid = make_grid(-12.0, 12.0, 4801)?;
    let minus = numerics::discretize(|x| pair.u_minus.value(x), &grid)?;
    let plus = numerics::discretize(|x| pair.u_plus.value(x), &grid)?;
    let lm = numerics::eigenvalues_lowest(&minus, 4, 1e-12)?;
    let lp = numerics::eigenvalues_lowest(&plus, 3, 1e-12)?;
    let expected = table.partner_energies();
    Ok(vec![
        Check::at_most(
            "identity.minus_levels",
            max_of(lm.iter().zip(&expected).map(|(a, b)| (a - b).abs())),
            1e-3,
        ),
        Check::at_most(
            "identity.plus_shift",
            max_of(lp.iter().zip(&lm[1..]).map(|(a, b)| (a - b).abs())),
            1e-3,
        ),
    ])
}

fn ritz(family: &OscillatorPct, size: usize) -> Result<Vec<Check>, CliError> {
    let u = family.partners().u_minus;
    let grid = make_grid(1e-3, 60.0, 60000)?;
    let states: Vec<_> = (0..size).map(|n| family.phi_minus(n)).collect();
    let basis = states
        .iter()
        .map(|s| GridFunction::sample(&grid, |x| s.value(x)))
        .collect::<Result<Vec<_>, _>>()?;
    let second = states
        .iter()
        .map(|s| GridFunction::sample(&grid, |x| s.function.second_derivative(x)))
        .collect::<Result<Vec<_>, _>>()?;
    let r = rayleigh_ritz(|x| u.value(x), &basis, Some(&second))?;
    let err = max_of(
        r.eigenvalues
            .iter()
            .enumerate()
            .map(|(n, v)| (v - family.partner_energy(n)).abs()),
    );
    Ok(vec![
        Check::at_most("ritz.levels", err, 1e-6),
        Check::at_most("ritz.gram_condition", r.gram_condition, 1e12),
    ])
}

fn riccati(config: &RunConfig) -> Vec<Check> {
    let grid = make_grid(0.05, 20.0, 1000).expect("fixed grid");
    let particular = 2.0 * SQRT_2;
    let xi = RealFunction::analytic(move |_| Jet::constant(particular));
    let osc = riccati_residual(&xi, &RiccatiProblem::oscillator(1.0, 1.0, 0.5), &grid)
        .map(|r| r.max_abs())
        .unwrap_or(f64::NAN);
    let mut edp = 0.0f64;
    for lambda in [0.3, 1.0] {
        let e0 = edp_energy(0, lambda, 1.0, 1.0);
        let value = edp_superpotential(lambda, e0, 1.0, 1.0)
            .ok()
            .and_then(|w| match w.function().clone() {
                RealFunction::Analytic(f) => {
                    let xi = RealFunction::analytic(move |x| f(x) + x.recip() * 0.25);
                    let problem = RiccatiProblem::energy_dependent(1.0, 1.0, lambda, e0);
                    riccati_residual(&xi, &problem, &grid).ok().map(|r| r.max_abs())
                }
                RealFunction::Sampled(_) => None,
            })
            .unwrap_or(f64::NAN);
        edp = max_of([edp, value]);
    }
    let k = 4.0 * SQRT_2;
    let h = 1e-4;
    let constants: Vec<f64> = match config.constant {
        Some(c) => vec![c],
        None => vec![0.0, 1.0],
    };
    let mut linear = 0.0f64;
    let mut general = 0.0f64;
    let problem = RiccatiProblem::oscillator(1.0, 1.0, 0.5);
    for &c in &constants {
        let xi = riccati_general_xi(c, 1.0, 1.0);
        for x in sample_points(0.5, 5.0, 200) {
            let z = |x: f64| riccati_z(c, 1.0, 1.0, x);
            let dz = (z(x + h) - z(x - h)) / (2.0 * h);
            linear = max_of([linear, (dz - (0.5 / x - k) * z(x) + 1.0).abs()]);
            general = max_of([general, problem.residual_at(&xi, x).abs()]);
        }
    }
    let erfi_ref = (erfi(1.0) - 1.650_425_758_797_542_9).abs() / 1.650_425_758_797_542_9;
    vec![
        Check::at_most("riccati.particular_oscillator", osc, 1e-12),
        Check::at_most("riccati.particular_energy_dependent", edp, 1e-12),
        Check::at_most("riccati.linearized_z", linear, 1e-6),
        Check::at_most("riccati.general_xi", general, 1e-6),
        Check::at_most("riccati.erfi_reference", erfi_ref, 1e-12),
    ]
}

fn edp() -> Result<Vec<Check>, CliError> {
    let cubic = max_of((0..=10).map(|n| {
        let e = edp_energy(n, 1.0, 1.0, 1.0);
        (e.powi(3) + 2.0 * e - (2 * n + 1) as f64).abs()
    }));
    let root = edp_energy(0, 1.0, 1.0, 1.0);
    let points = sample_points(0.1, 10.0, 1000);
    let sup = |f: &dyn Fn(f64) -> f64| max_of(points.iter().map(|&x| f(x).abs()));

    let osc = OscillatorPct::default();
    let osc_w = osc.superpotential();
    let w0 = edp_superpotential(0.0, 0.5, 1.0, 1.0)?;
    let w_reduction = sup(&|x| w0.value(x) - osc_w.value(x));
    let p0 = edp_partners(0.0, 0.5)?;
    let osc_pair = osc.partners();
    let u_reduction = sup(&|x| p0.u_minus.value(x) - osc_pair.u_minus.value(x))
        .max(sup(&|x| p0.u_plus.value(x) - osc_pair.u_plus.value(x)));

    let e0 = edp_energy(0, 0.3, 1.0, 1.0);
    let built = partner_potentials(&edp_superpotential(0.3, e0, 1.0, 1.0)?);
    let closed = edp_partners(0.3, e0)?;
    let algebra = sup(&|x| built.u_minus.value(x) - closed.u_minus.value(x))
        .max(sup(&|x| built.u_plus.value(x) - closed.u_plus.value(x)));

    let monotone_gap = (0..10)
        .map(|n| edp_partner_spectrum(n + 1, 0.5, 1.0, 1.0) - edp_partner_spectrum(n, 0.5, 1.0, 1.0))
        .fold(f64::INFINITY, f64::min);
    let reduction = max_of((0..=10).map(|n| (edp_partner_spectrum(n, 0.0, 1.0, 1.0) - ho_pct_spectrum(n)).abs()));
    Ok(vec![
        Check::at_most("edp.cubic_residual", cubic, 1e-12),
        Check::at_most("edp.root_lambda1", (root - 0.4534).abs(), 5e-5),
        Check::at_most("edp.w_reduction", w_reduction, 1e-12),
        Check::at_most("edp.partner_reduction", u_reduction, 1e-12),
        Check::at_most("edp.partner_algebra", algebra, 1e-12),
        Check::above("edp.spectrum_increment", monotone_gap, 0.0),
        Check::at_most("edp.spectrum_reduction", reduction, 0.0),
    ])
}

fn log_slope(phi: &WaveFunctionSpec) -> f64 {
    (phi.density(1e-3).ln() - phi.density(1e-4).ln()) / 10f64.ln()
}

fn figures(family: &OscillatorPct) -> Vec<Check> {
    let minus = max_of((0..8).map(|n| (log_slope(&family.phi_minus(n)) - 0.5).abs()));
    let even = max_of([0, 2, 4, 6].map(|n| (log_slope(&family.phi_plus(n)) + 0.5).abs()));
    let odd = max_of([1, 3, 5, 7].map(|n| (log_slope(&family.phi_plus(n)) - 0.5).abs()));
    let norm = max_of([0, 2, 4, 6].map(|n| {
        let phi = family.phi_plus(n);
        (half_line_integral(|x| phi.density(x)) - 1.0).abs()
    }));
    vec![
        Check::at_most("figures.minus_slope", minus, 0.05),
        Check::at_most("figures.plus_even_slope", even, 0.05),
        Check::at_most("figures.plus_odd_slope", odd, 0.05),
        Check::at_most("figures.plus_even_norm", norm, 1e-6),
    ]
}

fn isospectral(family: &OscillatorPct) -> Vec<Check> {
    let gap = (1..=10)
        .map(|n| (family.partner_energy(n) - 2.0 * family.mass() * (family.seed_energy(n) - family.seed_energy(0))).abs())
        .fold(f64::INFINITY, f64::min);
    vec![Check::above("isospectral.min_gap", gap, 0.1)]
}
