use std::f64::consts::{FRAC_2_SQRT_PI, SQRT_2};

use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use susy_pct::models::{ho_pct_spectrum, OscillatorPct};
use susy_pct::numerics::{self, apply_operator, discretize, eigen_lowest, make_grid, GridFunction};
use susy_pct::specfun::{erfi, hermite};
use susy_pct::susy::{partner_potentials, riccati_general, superpotential_from_ground_state};
use susy_pct::{Interval, RealFunction};

proptest! {
    #[test]
    fn hermite_recurrence(n in 1u32..30, y in -10.0f64..10.0) {
        let next = hermite(n + 1, y);
        let r = next - 2.0 * y * hermite(n, y) + 2.0 * n as f64 * hermite(n - 1, y);
        prop_assert!(r.abs() <= 1e-10 * next.abs().max(1.0));
    }

    #[test]
    fn hermite_parity(n in 0u32..30, y in -10.0f64..10.0) {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let (a, b) = (hermite(n, -y), sign * hermite(n, y));
        prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1e-300));
    }

    #[test]
    fn erfi_derivative(x in 0.0f64..3.0) {
        let h = 1e-5;
        let d = (erfi(x + h) - erfi(x - h)) / (2.0 * h);
        let want = FRAC_2_SQRT_PI * (x * x).exp();
        prop_assert!((d - want).abs() <= 1e-8 * want);
    }

    #[test]
    fn erfi_is_odd(x in -6.0f64..6.0) {
        prop_assert_eq!(erfi(-x), -erfi(x));
    }

    #[test]
    fn apply_operator_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, k in 1.0f64..4.0) {
        let grid = make_grid(-5.0, 5.0, 401).unwrap();
        let op = discretize(|x| x * x, &grid).unwrap();
        let f = GridFunction::sample(&grid, |x| (k * x).sin()).unwrap();
        let g = GridFunction::sample(&grid, |x| (-x * x).exp()).unwrap();
        let lhs = apply_operator(&op, &f.combine(a, &g, b).unwrap()).unwrap();
        let rhs = apply_operator(&op, &f).unwrap().combine(a, &apply_operator(&op, &g).unwrap(), b).unwrap();
        let scale = lhs.max_abs().max(1.0);
        let diff = lhs.combine(1.0, &rhs, -1.0).unwrap().max_abs();
        prop_assert!(diff <= 1e-12 * scale);
    }

    #[test]
    fn sturm_count_matches_eigenvalue_list(probe in -1.0f64..12.0) {
        let grid = make_grid(-8.0, 8.0, 801).unwrap();
        let op = discretize(|x| x * x, &grid).unwrap();
        let values = numerics::eigenvalues_lowest(&op, 8, 1e-12).unwrap();
        let below = values.iter().filter(|&&v| v < probe).count();
        // all eight levels lie below 16, so probes under 12 are fully resolved
        prop_assert_eq!(op.count_below(probe), below);
    }

    #[test]
    fn partner_difference(x in 0.05f64..20.0, lambda in 0.0f64..1.0) {
        let e0 = susy_pct::models::edp_energy(0, lambda, 1.0, 1.0);
        let w = susy_pct::models::edp_superpotential(lambda, e0, 1.0, 1.0).unwrap();
        let pair = partner_potentials(&w);
        let r = pair.u_plus.value(x) - pair.u_minus.value(x) - 2.0 * w.derivative(x);
        prop_assert!(r.abs() <= 1e-12 * (1.0 + w.derivative(x).abs()));
    }
}

#[test]
fn eigenvectors_are_orthonormal() {
    let grid = make_grid(-10.0, 10.0, 2001).unwrap();
    let op = discretize(|x| x * x - 1.0, &grid).unwrap();
    let result = eigen_lowest(&op, 6, 1e-12).unwrap();
    let vectors = result.eigenvectors.unwrap();
    for i in 0..vectors.len() {
        for j in 0..vectors.len() {
            let v = vectors[i].inner(&vectors[j]).unwrap();
            let want = if i == j { 1.0 } else { 0.0 };
            assert_abs_diff_eq!(v, want, epsilon = 1e-8);
        }
    }
}

fn lowest_error(potential: fn(f64) -> f64, lo: f64, hi: f64, count: usize, exact: f64) -> f64 {
    let grid = make_grid(lo, hi, count).unwrap();
    let op = discretize(potential, &grid).unwrap();
    (numerics::eigenvalues_lowest(&op, 1, 1e-13).unwrap()[0] - exact).abs()
}

#[test]
fn eigenvalues_converge_at_second_order() {
    let pi = std::f64::consts::PI;
    // box on (0, π): interior grid between the Dirichlet points
    let box_error = |n: usize| {
        let h = pi / n as f64;
        lowest_error(|_| 0.0, h, pi - h, n - 1, 1.0)
    };
    let ratio = box_error(100) / box_error(200);
    assert!((ratio - 4.0).abs() <= 0.8, "box ratio {ratio}");

    let osc = |count: usize| lowest_error(|x| x * x - 1.0, -10.0, 10.0, count, 0.0);
    let ratio = osc(401) / osc(801);
    assert!((ratio - 4.0).abs() <= 0.8, "oscillator ratio {ratio}");
}

#[test]
fn ground_state_and_riccati_routes_agree() {
    let phi0 = RealFunction::analytic(|x| x.powf(0.25) * (x * (-2.0 * SQRT_2)).exp());
    let w = superpotential_from_ground_state(&phi0, Interval::positive_half_line()).unwrap();
    let riccati = OscillatorPct::default().superpotential();
    for i in 0..200 {
        let x = 0.05 + 19.95 * i as f64 / 199.0;
        assert_abs_diff_eq!(w.value(x), riccati.value(x), epsilon = 1e-12);
    }
}

#[test]
fn numeric_intertwining_converges() {
    // Ĥ₊(Âφ₂⁻) = E₂·Âφ₂⁻ with three-point second differences
    let family = OscillatorPct::default();
    let w = family.superpotential();
    let pair = family.partners();
    let a_phi = susy_pct::susy::apply_a(&w, &family.phi_minus(2).function);
    let e = family.partner_energy(2);
    let residual = |h: f64| {
        let count = ((20.0 - 0.5) / h).round() as usize + 1;
        let grid = make_grid(0.5, 20.0, count).unwrap();
        let f = GridFunction::sample(&grid, |x| a_phi.value(x)).unwrap();
        let d2 = numerics::second_difference(&f);
        (1..count - 1)
            .map(|i| {
                let x = grid.point(i);
                (-d2.values()[i] + (pair.u_plus.value(x) - e) * f.values()[i]).abs()
            })
            .fold(0.0f64, f64::max)
    };
    let (coarse, fine) = (residual(1e-3), residual(5e-4));
    assert!(coarse <= 1e-3, "{coarse}");
    assert!((coarse / fine - 4.0).abs() <= 0.8, "ratio {}", coarse / fine);
}

#[test]
fn spectrum_is_bounded_and_not_isospectral() {
    let mut prev = -1.0;
    for n in 0..200 {
        let e = ho_pct_spectrum(n);
        assert!(e > prev && e < 8.0);
        prev = e;
    }
    assert!(8.0 - ho_pct_spectrum(10_000) < 1e-7);
    for n in 1..=10 {
        assert!(ho_pct_spectrum(n) != 2.0 * n as f64);
    }
}

#[test]
fn general_riccati_member_solves_riccati() {
    let problem = susy_pct::susy::RiccatiProblem::oscillator(1.0, 1.0, 0.5);
    for &c in &[-1.0, 0.0, 0.5] {
        let w = riccati_general(c, 1.0, 1.0, Interval::new(0.5, 5.0)).unwrap();
        let xi = susy_pct::susy::riccati_general_xi(c, 1.0, 1.0);
        assert_eq!(w.domain().lo, 0.5);
        for i in 0..50 {
            let x = 0.5 + 4.5 * i as f64 / 49.0;
            let r = problem.residual_at(&xi, x);
            assert!(r.abs() <= 1e-6, "C={c} x={x} r={r}");
        }
    }
}
