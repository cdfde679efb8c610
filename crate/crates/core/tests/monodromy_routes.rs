use fingap::elliptic::{ExactRoots, Lattice, Lattice64};
use fingap::hp::field;
use fingap::monodromy::bethe::{bethe_eigen_residual, bethe_multiplier_printed};
use fingap::monodromy::hk::{alpha_bethe_offset, kappa_zero_at_rational_roots};
use fingap::monodromy::*;
use fingap::spectral::{band_edges, spectral_data, Coupling, SpectralData};
use fingap::Error;
use num_complex::Complex64 as C;

fn lattice() -> (ExactRoots, Lattice64) {
    let r = ExactRoots::from_ints(3, -1, -2).unwrap();
    let lat = Lattice::<C>::from_roots(&r, 15).unwrap();
    (r, lat)
}

fn data(r: &ExactRoots, l: [u32; 4]) -> SpectralData {
    spectral_data(&field(r), Coupling(l)).unwrap()
}

/// Explicit `Ξ` and `Q` for `l = (1,0,0,0)` and `(2,0,0,0)` in terms of
/// `℘`, `℘'`: returns `(Ξ, Ξ', Ξ'', Q)`.
fn explicit_xi(l0: u32, e: C, x: C, lat: &Lattice64) -> (C, C, C, C) {
    let s = lat.wp_set(&x).unwrap();
    let (p, p1) = (s.wp, s.wpp);
    let p2 = p * p * 6.0 - lat.g2 * 0.5;
    let p3 = p * p1 * 12.0;
    let p4 = p1 * p1 * 12.0 + p * p2 * 12.0;
    let q_lame = |e: C| (e - 1.0) * (e - 2.0) * (e + 3.0);
    match l0 {
        1 => (e + p, p1, p2, q_lame(e)),
        2 => {
            // E² + 3E℘ + 3/2 ℘'' + E²-3/2 g2 - E² : c = E² - 3/2 g2, a_0 = 3E, a_1 = 3/2
            let xi = e * e - lat.g2 * 1.5 + e * p * 3.0 + p2 * 1.5;
            let q = (e * e - lat.g2 * 3.0) * (e - 9.0) * (e + 3.0) * (e + 6.0);
            (xi, e * p1 * 3.0 + p3 * 1.5, e * p2 * 3.0 + p4 * 1.5, q)
        }
        _ => unreachable!(),
    }
}

/// `|(H-E)Λ|/|Λ|` from `y = Ξ'/(2Ξ) + √(-Q)/Ξ`, `Λ''/Λ = y' + y²`.
fn analytic_residual(l0: u32, e: C, x: C, lat: &Lattice64) -> f64 {
    let (f, f1, f2, q) = explicit_xi(l0, e, x, lat);
    let s = (-q).sqrt();
    let y = f1 / (f * 2.0) + s / f;
    let yp = f2 / (f * 2.0) - f1 * f1 / (f * f * 2.0) - s * f1 / (f * f);
    let u = lat.wp(&x).unwrap() * f64::from(l0 * (l0 + 1));
    (yp + y * y - u + e).norm()
}

fn sample_x() -> Vec<C> {
    vec![
        C::new(0.3, 0.2),
        C::new(0.55, -0.35),
        C::new(-0.4, 0.6),
        C::new(0.9, 0.45),
        C::new(0.15, -0.8),
    ]
}

#[test]
fn lambda_residual_lame_one_at_bethe_energy() {
    let (r, lat) = lattice();
    let sd = data(&r, [1, 0, 0, 0]);
    let lam = Lambda::new(&sd, &lat).unwrap();
    let t = C::new(0.31, 0.47);
    let e = -lat.wp(&t).unwrap();
    for x in sample_x() {
        assert!(analytic_residual(1, e, x, &lat) < 1e-8);
        assert!(lam.residual(e, x).unwrap() < 1e-8);
    }
}

#[test]
fn lambda_residual_lame_two() {
    let (r, lat) = lattice();
    let sd = data(&r, [2, 0, 0, 0]);
    let lam = Lambda::new(&sd, &lat).unwrap();
    let e = C::new(1.0, 0.3);
    let xn = XiNumeric::new(&sd).unwrap();
    for x in sample_x() {
        assert!(analytic_residual(2, e, x, &lat) < 1e-8);
        // the library Ξ is the explicit one
        let d = xn.derivs(e, x, &lat).unwrap();
        let (f, f1, f2, _) = explicit_xi(2, e, x, &lat);
        assert!(
            (d[0] - f).norm() + (d[1] - f1).norm() + (d[2] - f2).norm() < 1e-9 * (1.0 + f2.norm())
        );
        assert!(lam.residual(e, x).unwrap() < 1e-8);
    }
}

#[test]
fn lambda_eval_satisfies_the_equation_by_differences() {
    let (r, lat) = lattice();
    for (l0, e) in [(1u32, C::new(-0.4, 0.9)), (2, C::new(1.0, 0.3))] {
        let sd = data(&r, [l0, 0, 0, 0]);
        let lam = Lambda::new(&sd, &lat).unwrap();
        let h = 4e-3;
        for x in [C::new(0.45, 0.3), C::new(0.6, -0.25)] {
            let f = |x: C| lam.eval(x, e).unwrap();
            let d2 = (-f(x - 2.0 * h) + f(x - h) * 16.0 - f(x) * 30.0 + f(x + h) * 16.0
                - f(x + 2.0 * h))
                / (12.0 * h * h);
            let u = lat.wp(&x).unwrap() * f64::from(l0 * (l0 + 1));
            let res = (-d2 + (u - e) * f(x)).norm() / f(x).norm();
            assert!(res < 1e-6, "l0 = {l0}, x = {x}: {res:e}");
        }
    }
}

#[test]
fn lambda_rejects_band_edges() {
    let (r, lat) = lattice();
    let sd = data(&r, [1, 0, 0, 0]);
    assert!(matches!(
        lambda_eval(C::new(0.3, 0.2), C::new(1.0, 0.0), &sd, &lat),
        Err(Error::EdgeEnergy(_))
    ));
}

#[test]
fn ode_free_equation_on_unit_periods() {
    let lat = Lattice64::from_periods_f64(C::new(0.5, 0.0), C::new(0.15, 0.55)).unwrap();
    let e = C::new(std::f64::consts::PI.powi(2), 0.0);
    for k in [1, 3] {
        let res = monodromy_ode(e, k, Coupling([0; 4]), &lat).unwrap();
        let w = (-e).sqrt() * lat.omega(k) * 2.0;
        assert!(sets_agree(
            res.multiplier_set(),
            [w.exp(), (-w).exp()],
            1e-8
        ));
    }
}

#[test]
fn ode_wronskian_is_conserved() {
    let (_, lat) = lattice();
    for l in [[1u32, 0, 0, 0], [2, 0, 0, 0], [1, 1, 1, 0], [0, 2, 0, 1]] {
        for e in [C::new(-2.0, 0.7), C::new(5.0, 0.0)] {
            for k in [1, 3] {
                let r = monodromy_ode(e, k, Coupling(l), &lat).unwrap();
                let m = r.multipliers.unwrap();
                assert!((m[0] * m[1] - 1.0).norm() < 1e-8, "{l:?} {e} {k}");
            }
        }
    }
}

#[test]
fn integral_route_at_the_base_root() {
    let (r, lat) = lattice();
    let sd = data(&r, [2, 0, 0, 0]);
    let e0 = C::new(84f64.sqrt(), 0.0);
    for k in [1, 3] {
        let res = monodromy_integral(e0, k, &sd, &lat, e0).unwrap();
        assert_eq!(res.q_k, Some(0));
        assert!((res.multiplier - 1.0).norm() < 1e-12);
    }
    assert!(matches!(
        monodromy_integral(C::new(1.0, 1.0), 1, &sd, &lat, C::new(8.0, 0.0)),
        Err(Error::BadBasepoint(_))
    ));
    // the segment √84 → -10 runs through the root 9
    assert!(matches!(
        monodromy_integral(C::new(-10.0, 0.0), 1, &sd, &lat, e0),
        Err(Error::BranchAmbiguity(_))
    ));
}

#[test]
fn bands_and_gaps_on_the_real_axis() {
    let (r, lat) = lattice();
    let sd = data(&r, [1, 0, 0, 0]);
    let edges: Vec<f64> = band_edges(Coupling([1, 0, 0, 0]), &lat)
        .unwrap()
        .iter()
        .map(|z| z.re)
        .collect();
    assert_eq!(edges.len(), 3);
    // one sample per interval; lowest interval is a gap, then alternating
    let samples = [
        edges[0] - 1.0,
        0.5 * (edges[0] + edges[1]),
        0.5 * (edges[1] + edges[2]),
        edges[2] + 1.5,
    ];
    for (j, &e) in samples.iter().enumerate() {
        let e0 = edges
            .iter()
            .copied()
            .min_by(|a, b| (a - e).abs().total_cmp(&(b - e).abs()))
            .unwrap();
        let b = monodromy_integral(C::new(e, 0.0), 1, &sd, &lat, C::new(e0, 0.0))
            .unwrap()
            .multiplier;
        let o = monodromy_ode(C::new(e, 0.0), 1, Coupling([1, 0, 0, 0]), &lat).unwrap();
        assert!(sets_agree([b, 1.0 / b], o.multiplier_set(), 1e-6));
        let in_band = j % 2 == 1;
        if in_band {
            assert!((b.norm() - 1.0).abs() < 1e-6, "E = {e}: |B| = {}", b.norm());
        } else {
            assert!((b.norm() - 1.0).abs() > 1e-2, "E = {e}: |B| = {}", b.norm());
        }
    }
}

#[test]
fn loop_around_a_root_inverts_the_multiplier() {
    let (r, lat) = lattice();
    let sd = data(&r, [1, 0, 0, 0]);
    let xn = XiNumeric::new(&sd).unwrap();
    let e0 = C::new(2.0, 0.0);
    let e = C::new(1.0, 0.8);
    let direct = monodromy_integral_path(&xn, &[e0, e], 1, &lat)
        .unwrap()
        .multiplier;
    let mut path = vec![e0, e];
    for j in 1..=96 {
        let th = 2.0 * std::f64::consts::PI * j as f64 / 96.0;
        path.push(C::new(1.0, 0.0) + C::new(0.0, 0.8) * C::from_polar(1.0, th));
    }
    let looped = monodromy_integral_path(&xn, &path, 1, &lat)
        .unwrap()
        .multiplier;
    assert!(
        (looped * direct - 1.0).norm() < 1e-8,
        "{looped} vs {direct}"
    );
}

fn sample_energies() -> Vec<C> {
    (0..10)
        .map(|j| C::new(-7.0 + 1.9 * j as f64, 0.5 + 0.13 * j as f64))
        .collect()
}

#[test]
fn three_routes_agree() {
    let (r, lat) = lattice();
    for (l, e0) in [
        ([1u32, 0, 0, 0], C::new(2.0, 0.0)),
        ([2, 0, 0, 0], C::new(84f64.sqrt(), 0.0)),
    ] {
        let sd = data(&r, l);
        let xn = XiNumeric::new(&sd).unwrap();
        for e in sample_energies() {
            let b = bethe_at_energy(&xn, &lat, e, 11).unwrap();
            for k in [1, 3] {
                let ode = monodromy_ode(e, k, Coupling(l), &lat)
                    .unwrap()
                    .multiplier_set();
                let int = monodromy_integral(e, k, &sd, &lat, e0)
                    .unwrap()
                    .multiplier_set();
                let bm = bethe_multiplier(&b, k, &lat).unwrap();
                let bet = [bm, 1.0 / bm];
                assert!(
                    sets_agree(ode, int, 1e-6),
                    "{l:?} E = {e} k = {k}: ode/integral"
                );
                assert!(
                    sets_agree(ode, bet, 1e-6),
                    "{l:?} E = {e} k = {k}: ode/bethe"
                );
                assert!(
                    sets_agree(int, bet, 1e-6),
                    "{l:?} E = {e} k = {k}: integral/bethe"
                );
            }
        }
    }
}

#[test]
fn bethe_lame_one_forces_c_and_energy() {
    let (_, lat) = lattice();
    for t in [C::new(0.31, 0.47), C::new(-0.2, 0.9), C::new(0.6, -0.15)] {
        let seed = BetheSeed {
            t: vec![t],
            c: C::new(0.1, 0.1),
        };
        let b = bethe_solve(Coupling([1, 0, 0, 0]), &lat, &seed).unwrap();
        let t1 = b.t[0];
        assert!(b.residuals.iter().all(|&x| x < 1e-10));
        assert!((b.c + lat.zeta(&t1).unwrap()).norm() < 1e-10);
        assert!((b.e + lat.wp(&t1).unwrap()).norm() < 1e-8);
        for x in sample_x() {
            assert!(bethe_eigen_residual(&b, &lat, x).unwrap() < 1e-6);
        }
    }
}

#[test]
fn bethe_eigenfunction_residuals_for_mixed_couplings() {
    let (r, lat) = lattice();
    for l in [[2u32, 0, 0, 0], [1, 1, 0, 0], [0, 1, 1, 0], [1, 0, 1, 1]] {
        let xn = XiNumeric::new(&data(&r, l)).unwrap();
        let e = C::new(0.7, 0.9);
        let b = bethe_at_energy(&xn, &lat, e, 5).unwrap();
        assert!((b.e - e).norm() < 1e-9);
        assert!(
            b.residuals.iter().all(|&x| x < 1e-10),
            "{l:?}: {:?}",
            b.residuals
        );
        for x in sample_x() {
            assert!(bethe_eigen_residual(&b, &lat, x).unwrap() < 1e-6, "{l:?}");
        }
    }
}

#[test]
fn bethe_multiplier_at_the_half_period_edge() {
    let (_, lat) = lattice();
    let seed = BetheSeed {
        t: vec![lat.omega(2)],
        c: -lat.eta(2),
    };
    let b = bethe_solve(Coupling([1, 0, 0, 0]), &lat, &seed).unwrap();
    assert!((b.t[0] - lat.omega(2)).norm() < 1e-12);
    assert!((b.e - lat.e[1] * -1.0).norm() < 1e-8);
    for k in [1, 3] {
        let m = bethe_multiplier(&b, k, &lat).unwrap();
        assert!(
            (m - 1.0).norm() < 1e-8 || (m + 1.0).norm() < 1e-8,
            "k = {k}: {m}"
        );
    }
    // the printed form, exp(2η_k Σt + 2ω_k(c - Σζ(t))), is not ±1 here
    let p = bethe_multiplier_printed(&b, 1, &lat).unwrap();
    assert!((p - 1.0).norm() > 1e-3 && (p + 1.0).norm() > 1e-3);
}

#[test]
fn hermite_krichever_closed_forms() {
    let (r, lat) = lattice();
    let sd = data(&r, [2, 0, 0, 0]);
    let xn = XiNumeric::new(&sd).unwrap();
    for e in [
        C::new(1.0, 0.5),
        C::new(-4.0, 1.0),
        C::new(12.0, 0.7),
        C::new(-8.0, 2.0),
        C::new(4.0, -1.5),
    ] {
        let hk = hk_example_params(e, &sd, &lat).unwrap();
        assert!(hk.lambda_mismatch < 1e-8);
        assert!((lat.wp(&hk.alpha).unwrap() - hk.wp_alpha).norm() < 1e-10);
        let b = bethe_at_energy(&xn, &lat, e, 3).unwrap();
        assert!(alpha_bethe_offset(&hk, &b, &lat).unwrap() < 1e-6);
        for (j, k) in [1usize, 3].into_iter().enumerate() {
            let ode = monodromy_ode(e, k, Coupling([2, 0, 0, 0]), &lat).unwrap();
            let m = hk.multiplier[j];
            assert!(sets_agree(ode.multiplier_set(), [m, 1.0 / m], 1e-6));
        }
    }
    let zeros = kappa_zero_at_rational_roots(&sd, &r);
    assert_eq!(zeros.len(), 3);
    assert!(zeros.iter().all(|(_, ok)| *ok));
    let p2 = C::new(84f64.sqrt(), 0.0);
    assert!(matches!(
        hk_example_params(p2, &sd, &lat),
        Err(Error::SingularP2(_))
    ));
}

#[test]
fn sweep_rows_follow_energies() {
    let (r, lat) = lattice();
    let sd = data(&r, [1, 0, 0, 0]);
    let es: Vec<C> = (0..4).map(|j| C::new(j as f64, 1.0)).collect();
    let rows = sweep(Route::Ode, &es, 1, &sd, &lat, None).unwrap();
    assert_eq!(rows.len(), 4);
    for (row, e) in rows.iter().zip(&es) {
        assert_eq!(row.e, *e);
        assert_eq!(row.route, "ode");
    }
}
