use fingap::elliptic::{ExactRoots, Lattice64, LatticeMp};
use fingap::num::CNum;
use num_complex::Complex64;
use proptest::prelude::*;

fn lat() -> Lattice64 {
    Lattice64::from_roots(&ExactRoots::from_ints(3, -1, -2).unwrap(), 16).unwrap()
}

// point in the fundamental cell, kept away from lattice points
fn cell_point(lat: &Lattice64, s: f64, t: f64) -> Complex64 {
    lat.omega1 * (0.1 + 1.8 * s) + lat.omega3 * (0.1 + 1.8 * t)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

// Simpson on ∫_0^{π/2} sec²θ dθ / √((tan²θ + a)(tan²θ + b)), the real
// half-period ∫_{e1}^∞ dz / √(4(z-e1)(z-e2)(z-e3)) after z = e1 + t².
fn half_period_by_quadrature(a: f64, b: f64) -> f64 {
    let n = 4000;
    let h = std::f64::consts::FRAC_PI_2 / n as f64;
    let f = |th: f64| {
        let c = th.cos();
        let t = th.tan();
        if c.abs() < 1e-300 {
            return 1.0;
        }
        1.0 / (c * c * ((t * t + a) * (t * t + b)).sqrt())
    };
    let mut s = f(0.0) + f(std::f64::consts::FRAC_PI_2);
    for k in 1..n {
        s += f(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn real_half_period_matches_quadrature() {
    let l = lat();
    // e1 = 3: a = e1 - e2 = 4, b = e1 - e3 = 5
    let w = half_period_by_quadrature(4.0, 5.0);
    assert!((l.omega1.re - w).abs() < 1e-10, "{} vs {w}", l.omega1);
    assert!(l.omega1.im.abs() < 1e-14);
    assert!(l.is_rectangular());
}

#[test]
fn roots_and_invariants_are_reproduced() {
    let l = lat();
    for (i, want) in [(1, 3.0), (2, -1.0), (3, -2.0)] {
        let v = l.wp(&l.omega(i)).unwrap();
        assert!((v - want).norm() < 1e-10, "wp(omega{i}) = {v}");
        assert!(l.wp_prime(&l.omega(i)).unwrap().norm() < 1e-8);
    }
    assert!((l.g2 - 28.0).norm() < 1e-12);
    assert!((l.g3 - 24.0).norm() < 1e-12);
}

#[test]
fn laurent_expansion_near_origin() {
    // ℘(x) = 1/x² + g2 x²/20 + g3 x⁴/28 + O(x⁶)
    let l = lat();
    for x in [0.01, 0.02, 0.03] {
        let x = Complex64::new(x, 0.0);
        let want = 1.0 / (x * x) + 28.0 * x * x / 20.0 + 24.0 * x.powi(4) / 28.0;
        assert!((l.wp(&x).unwrap() - want).norm() < 1e-6);
    }
}

#[test]
fn legendre_relation() {
    let l = lat();
    let lhs = l.eta1 * l.omega3 - l.eta3 * l.omega1;
    let want = Complex64::new(0.0, std::f64::consts::FRAC_PI_2);
    assert!((lhs - want).norm() < 1e-12, "{lhs}");
    let mp = LatticeMp::from_roots(&ExactRoots::from_ints(3, -1, -2).unwrap(), 40).unwrap();
    let lhs = (mp.eta1.clone() * &mp.omega3 - mp.eta3.clone() * &mp.omega1).to_c64();
    assert!((lhs - want).norm() < 1e-15);
}

#[test]
fn pole_is_reported() {
    let l = lat();
    assert!(l.wp(&Complex64::new(0.0, 0.0)).is_err());
    assert!(l.wp(&(l.omega1 * 2.0)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn wp_is_doubly_periodic(s in 0.0f64..1.0, t in 0.0f64..1.0) {
        let l = lat();
        let x = cell_point(&l, s, t);
        let v = l.wp(&x).unwrap();
        for w in [l.omega1 * 2.0, l.omega3 * 2.0] {
            prop_assert!(rel(l.wp(&(x + w)).unwrap(), v) < 1e-9);
        }
    }

    #[test]
    fn differential_equation_holds(s in 0.0f64..1.0, t in 0.0f64..1.0) {
        let l = lat();
        let x = cell_point(&l, s, t);
        let p = l.wp(&x).unwrap();
        let d = l.wp_prime(&x).unwrap();
        let rhs = 4.0 * p * p * p - l.g2 * p - l.g3;
        prop_assert!(rel(d * d, rhs) < 1e-9);
    }

    #[test]
    fn wp_prime_is_derivative_of_wp(s in 0.0f64..1.0, t in 0.0f64..1.0) {
        let l = lat();
        let x = cell_point(&l, s, t);
        let h = 1e-4;
        let fd = (l.wp(&(x + h)).unwrap() - l.wp(&(x - h)).unwrap()) / (2.0 * h);
        prop_assert!(rel(fd, l.wp_prime(&x).unwrap()) < 1e-6);
    }

    #[test]
    fn zeta_derivative_is_minus_wp(s in 0.0f64..1.0, t in 0.0f64..1.0) {
        let l = lat();
        let x = cell_point(&l, s, t);
        let h = 1e-4;
        let fd = (l.zeta(&(x + h)).unwrap() - l.zeta(&(x - h)).unwrap()) / (2.0 * h);
        prop_assert!(rel(fd, -l.wp(&x).unwrap()) < 1e-6);
    }

    #[test]
    fn zeta_is_quasi_periodic(s in 0.0f64..1.0, t in 0.0f64..1.0, k in 1usize..4) {
        let l = lat();
        let x = cell_point(&l, s, t);
        let shifted = l.zeta(&(x + l.omega(k) * 2.0)).unwrap();
        let want = l.zeta(&x).unwrap() + l.eta(k) * 2.0;
        prop_assert!(rel(shifted, want) < 1e-9);
    }

    #[test]
    fn sigma_is_quasi_periodic(s in 0.0f64..1.0, t in 0.0f64..1.0, k in 1usize..4) {
        let l = lat();
        let x = cell_point(&l, s, t);
        let w = l.omega(k);
        let shifted = l.sigma(&(x + w * 2.0));
        let want = -(l.eta(k) * 2.0 * (x + w)).exp() * l.sigma(&x);
        prop_assert!(rel(shifted, want) < 1e-9);
    }

    #[test]
    fn co_sigma_squares_give_wp_minus_root(s in 0.0f64..1.0, t in 0.0f64..1.0, i in 1usize..4) {
        // (σ_i/σ)² = ℘ - e_i
        let l = lat();
        let x = cell_point(&l, s, t);
        let r = l.sigma_i(i, &x) / l.sigma(&x);
        prop_assert!(rel(r * r, l.wp(&x).unwrap() - l.root(i)) < 1e-9);
    }

    #[test]
    fn wp_is_even(s in 0.0f64..1.0, t in 0.0f64..1.0) {
        let l = lat();
        let x = cell_point(&l, s, t);
        prop_assert!(rel(l.wp(&(-x)).unwrap(), l.wp(&x).unwrap()) < 1e-10);
        prop_assert!(rel(-l.wp_prime(&(-x)).unwrap(), l.wp_prime(&x).unwrap()) < 1e-9);
    }
}
