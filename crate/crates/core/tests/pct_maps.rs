use approx::{assert_abs_diff_eq, assert_relative_eq};
use susy_pct::pct::{generic_map, identity_map, sqrt_map_oscillator, transform_wavefunction};
use susy_pct::{Interval, RealFunction};

fn oscillator_potential() -> RealFunction {
    RealFunction::analytic(|q| q * q * 0.5)
}

#[test]
fn generic_map_reproduces_square_root_map() {
    let domain = Interval::new(0.0, 12.0);
    let generic = generic_map(oscillator_potential(), 1.0, 0.5, 0.0, domain).unwrap();
    let sqrt = sqrt_map_oscillator(1.0, 1.0, 0.5, 1, domain).unwrap();
    for i in 0..=40 {
        let x = 0.1 + 9.9 * i as f64 / 40.0;
        assert_abs_diff_eq!(generic.q(x).unwrap(), sqrt.q(x).unwrap(), epsilon = 1e-8);
        assert_relative_eq!(generic.q_prime(x).unwrap(), sqrt.q_prime(x).unwrap(), max_relative = 1e-8);
    }
}

#[test]
fn generic_map_round_trip() {
    let map = generic_map(oscillator_potential(), 2.0, 0.7, 0.0, Interval::new(0.0, 30.0)).unwrap();
    for &x in &[0.01, 0.5, 3.0, 17.0] {
        let s = map.action_at(x).unwrap().unwrap();
        assert_relative_eq!(s, 2f64.sqrt() * x / 0.7, max_relative = 1e-10);
    }
}

#[test]
fn generic_map_satisfies_defining_condition() {
    let u = |q: f64| 1.0 + q * q;
    let map = generic_map(RealFunction::analytic(|q| q * q + 1.0), 1.5, 0.8, -2.0, Interval::new(1.0, 9.0)).unwrap();
    let points = (0..25).map(|i| 1.0 + 8.0 * i as f64 / 24.0);
    let defect = map.defect(&u, points).unwrap();
    assert!(defect < 1e-9, "defect {defect}");
}

#[test]
fn weight_satisfies_first_condition() {
    // 2g′/g = q″/q′, with g′ taken by differencing g
    let maps = [
        sqrt_map_oscillator(1.0, 1.0, 1.5, -1, Interval::positive_half_line()).unwrap(),
        generic_map(oscillator_potential(), 1.0, 0.5, 0.0, Interval::new(0.0, 12.0)).unwrap(),
    ];
    for map in &maps {
        for &x in &[0.4, 1.0, 4.0] {
            let h = 1e-5;
            let dg = (map.g(x + h).unwrap() - map.g(x - h).unwrap()) / (2.0 * h);
            let lhs = 2.0 * dg / map.g(x).unwrap();
            assert_relative_eq!(lhs, map.curvature_ratio(x).unwrap(), max_relative = 1e-5);
        }
    }
}

#[test]
fn negative_branch_mirrors_positive() {
    let plus = sqrt_map_oscillator(1.0, 2.0, 0.5, 1, Interval::positive_half_line()).unwrap();
    let minus = sqrt_map_oscillator(1.0, 2.0, 0.5, -1, Interval::positive_half_line()).unwrap();
    for &x in &[0.2, 2.0] {
        assert_eq!(plus.q(x).unwrap(), -minus.q(x).unwrap());
        assert_eq!(plus.g(x).unwrap(), minus.g(x).unwrap());
    }
}

#[test]
fn identity_transform_is_transparent() {
    let map = identity_map(Interval::real_line()).unwrap();
    let phi = transform_wavefunction(|x: f64| (-x * x).exp(), &map);
    assert_eq!(phi(0.7).unwrap(), (-0.49f64).exp());
}
