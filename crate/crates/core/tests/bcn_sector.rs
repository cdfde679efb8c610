use fingap::bcn::*;
use fingap::elliptic::{ExactRoots, Lattice, LatticeMp};
use fingap::hp::field;
use fingap::num::CNum;
use fingap::spectral::{spectral_data, Coupling};
use fingap::Error;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Complex, Rational};

fn roots() -> ExactRoots {
    ExactRoots::from_ints(3, -1, -2).unwrap()
}

fn q(a: i64) -> Rational {
    Rational::from(a)
}

fn qh(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

/// `H(Φg)/Φ` at `x` by a five-point stencil in each `x_j`, with every
/// potential taken straight from the lattice.
fn gauged_h_numeric(
    lat: &LatticeMp,
    n: usize,
    l: u32,
    li: Coupling,
    g: &GaugeChoice,
    m: &[u32],
    x: &[Complex],
) -> Complex {
    let like = x[0].clone();
    let ev: Vec<Complex> = (0..3).map(|i| lat.e[i].clone()).collect();
    let a = like.lift_q(&g.a);
    let b: Vec<Complex> = (1..4).map(|i| like.lift_q(&g.b[i])).collect();
    let poly = symmetrized_monomial(m);
    let f = |x: &[Complex]| -> Complex {
        let z: Vec<Complex> = x.iter().map(|xi| lat.wp(xi).unwrap()).collect();
        let mut phi = like.one_like();
        for j in 0..n {
            for k in j + 1..n {
                phi *= &(a.clone() * &(z[j].clone() - &z[k]).ln()).exp();
            }
            for i in 0..3 {
                phi *= &(b[i].clone() * &(z[j].clone() - &ev[i]).ln()).exp();
            }
        }
        phi * &poly.eval_num(&z)
    };
    let h = like.lift(1e-10, 0.0);
    let f0 = f(x);
    let mut lap = like.zero_like();
    for j in 0..n {
        let at = |s: f64| {
            let mut y = x.to_vec();
            y[j] = y[j].clone() + &h.scale(s);
            f(&y)
        };
        let num =
            -at(2.0) + &at(1.0).scale(16.0) - &f0.scale(30.0) + &at(-1.0).scale(16.0) - &at(-2.0);
        lap += &(num / &(h.clone() * &h).scale(12.0));
    }
    let mut v = like.zero_like();
    let ll = f64::from(l * (l + 1));
    for j in 0..n {
        for k in j + 1..n {
            let s = lat.wp(&(x[j].clone() - &x[k])).unwrap()
                + &lat.wp(&(x[j].clone() + &x[k])).unwrap();
            v += &s.scale(2.0 * ll);
        }
        for i in 0..4 {
            let c = f64::from(li.0[i] * (li.0[i] + 1));
            if c != 0.0 {
                let shifted = if i == 0 {
                    x[j].clone()
                } else {
                    x[j].clone() + &lat.omega(i)
                };
                v += &lat.wp(&shifted).unwrap().scale(c);
            }
        }
    }
    let z: Vec<Complex> = x.iter().map(|xi| lat.wp(xi).unwrap()).collect();
    let mut phi = like.one_like();
    for j in 0..n {
        for k in j + 1..n {
            phi *= &(a.clone() * &(z[j].clone() - &z[k]).ln()).exp();
        }
        for i in 0..3 {
            phi *= &(b[i].clone() * &(z[j].clone() - &ev[i]).ln()).exp();
        }
    }
    (-lap + &(v * &f0)) / &phi
}

fn random_points(lat: &LatticeMp, n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex> {
    let (w1, w3) = (lat.omega(1).to_c64(), lat.omega(3).to_c64());
    loop {
        let x: Vec<Complex64> = (0..n)
            .map(|_| w1 * rng.random_range(0.1..0.9) + w3 * rng.random_range(0.1..0.9))
            .collect();
        let ok = (0..n).all(|j| {
            (0..n).all(|k| {
                let lat64 = lat.to_f64();
                j == k
                    || (lat64.lattice_distance(&(x[j] - x[k])) > 0.1
                        && lat64.lattice_distance(&(x[j] + x[k])) > 0.1)
            })
        });
        if ok {
            return x.iter().map(|z| lat.lift(*z)).collect();
        }
    }
}

/// Checks `H(Φ basis_j)/Φ = Σ_i M[i][j] basis_i` at a few random points.
fn check_against_numeric(n: usize, l: u32, li: [u32; 4], g: &GaugeChoice) {
    let r = roots();
    let li = Coupling(li);
    let mat = bcn_matrix(n, l, li, g, &r).unwrap();
    let lat = Lattice::<Complex>::from_roots(&r, 50).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..2 {
        let x = random_points(&lat, n, &mut rng);
        let z: Vec<Complex> = x.iter().map(|xi| lat.wp(xi).unwrap()).collect();
        for (j, m) in mat.basis.iter().enumerate() {
            let lhs = gauged_h_numeric(&lat, n, l, li, g, m, &x);
            let mut rhs = x[0].zero_like();
            for (i, mi) in mat.basis.iter().enumerate() {
                rhs += &(x[0].lift_q(&mat.matrix[i][j]) * &symmetrized_monomial(mi).eval_num(&z));
            }
            let err = CNum::abs(&(lhs - &rhs)) / CNum::abs(&rhs).max(1.0);
            assert!(err < 1e-15, "N={n} l={l} li={li:?} m={m:?}: {err:e}");
        }
    }
}

#[test]
fn n1_matrix_for_l0_two() {
    let r = roots();
    let li = Coupling([2, 0, 0, 0]);
    let g = GaugeChoice::new(0, li, q(0), [q(-1), q(0), q(0), q(0)]).unwrap();
    let m = bcn_matrix(1, 0, li, &g, &r).unwrap();
    assert_eq!(m.basis, vec![vec![0], vec![1]]);
    assert_eq!(m.matrix, vec![vec![q(0), q(14)], vec![q(6), q(0)]]);
    let s = bcn_spectra(&m, 30).unwrap();
    let root = (3.0f64 * 28.0).sqrt();
    let mut ev: Vec<f64> = s
        .eigenvalues
        .iter()
        .map(|(z, _)| z.real().to_f64())
        .collect();
    ev.sort_by(f64::total_cmp);
    assert!((ev[0] + root).abs() < 1e-12 && (ev[1] - root).abs() < 1e-12);
    assert!(s.reality);
}

#[test]
fn free_case_is_zero() {
    let li = Coupling([0; 4]);
    let g = GaugeChoice::from_branches(0, li, false, [false; 4]);
    let m = bcn_matrix(1, 0, li, &g, &roots()).unwrap();
    assert_eq!(m.matrix, vec![vec![q(0)]]);
}

#[test]
fn d_zero_eigenvalue_is_image_of_one() {
    let r = roots();
    // N = 1, li = (2,0,0,0), b = (-1, 1/2, 1/2, 0): d = 0
    let li = Coupling([2, 0, 0, 0]);
    let g = GaugeChoice::new(0, li, q(0), [q(-1), qh(1, 2), qh(1, 2), q(0)]).unwrap();
    let m = bcn_matrix(1, 0, li, &g, &r).unwrap();
    assert_eq!(m.dim(), 1);
    let sd = spectral_data(&field(&r), li).unwrap();
    assert_eq!(sd.q.eval(&m.matrix[0][0]), 0);
    check_against_numeric(1, 0, [2, 0, 0, 0], &g);
}

#[test]
fn wdsym_examples() {
    let li = Coupling([0; 4]);
    let g = GaugeChoice::new(1, li, q(-1), [q(0), q(0), q(0), q(0)]).unwrap();
    assert_eq!(g.d(2).unwrap(), 1);
    assert_eq!(
        wdsym_basis(2, &g).unwrap(),
        vec![vec![0, 0], vec![1, 0], vec![1, 1]]
    );
    assert_eq!(wdsym_basis(1, &g).unwrap(), vec![vec![0]]);
    let g1 = GaugeChoice::new(0, Coupling([2, 0, 0, 0]), q(0), [q(-1), q(0), q(0), q(0)]).unwrap();
    assert_eq!(wdsym_basis(1, &g1).unwrap(), vec![vec![0], vec![1]]);
    let bad = GaugeChoice::new(0, li, q(1), [qh(1, 2), q(0), q(0), q(0)]).unwrap();
    assert!(matches!(
        wdsym_basis(2, &bad),
        Err(Error::NotQuasiSolvable(_))
    ));
}

#[test]
fn gauge_membership_is_checked() {
    let li = Coupling([1, 0, 0, 0]);
    assert!(GaugeChoice::new(1, li, q(0), [q(0), q(0), q(0), q(0)]).is_err());
    assert!(GaugeChoice::new(1, li, q(2), [qh(3, 2), q(0), q(0), q(0)]).is_err());
    assert!(GaugeChoice::new(1, li, q(2), [q(1), qh(1, 2), q(0), q(0)]).is_ok());
}

#[test]
fn n2_lame_pair_closes_and_is_stable() {
    let r = roots();
    let li = Coupling([0; 4]);
    let g = GaugeChoice::new(1, li, q(-1), [q(0), q(0), q(0), q(0)]).unwrap();
    let m = bcn_matrix(2, 1, li, &g, &r).unwrap();
    assert_eq!(m.dim(), 3);
    let lo = bcn_spectra(&m, 30).unwrap();
    let hi = bcn_spectra(&m, 60).unwrap();
    assert_eq!(lo.eigenvalues.len(), hi.eigenvalues.len());
    for ((a, ka), (b, kb)) in lo.eigenvalues.iter().zip(&hi.eigenvalues) {
        assert_eq!(ka, kb);
        let d = Complex::with_val(200, a - b);
        assert!(d.abs().real().to_f64() < 1e-8);
    }
    check_against_numeric(2, 1, [0; 4], &g);
}

#[test]
fn matrices_agree_with_direct_evaluation() {
    let cases: Vec<(usize, u32, [u32; 4], bool, [bool; 4])> = vec![
        (1, 0, [2, 0, 0, 0], false, [false; 4]),
        (1, 0, [1, 1, 0, 0], false, [false, false, false, false]),
        (1, 0, [1, 1, 1, 1], false, [false; 4]),
        (2, 1, [1, 1, 0, 0], false, [false; 4]),
        (2, 1, [2, 0, 0, 0], false, [false, false, true, true]),
        (2, 1, [0, 0, 1, 0], false, [false, false, false, true]),
        (3, 1, [0; 4], false, [false; 4]),
        (3, 0, [2, 0, 0, 0], false, [false; 4]),
        (2, 0, [2, 2, 0, 0], true, [false; 4]),
    ];
    for (n, l, li, au, bu) in cases {
        let g = GaugeChoice::from_branches(l, Coupling(li), au, bu);
        check_against_numeric(n, l, li, &g);
    }
}

#[test]
fn closure_and_dimension_up_to_three_particles() {
    let r = roots();
    let mut seen = std::collections::BTreeSet::new();
    for n in 1..=3usize {
        for l in 0..=2u32 {
            for li in [
                [0, 0, 0, 0],
                [2, 0, 0, 0],
                [1, 1, 0, 0],
                [1, 0, 1, 0],
                [0, 1, 1, 1],
                [3, 1, 0, 0],
            ] {
                let li = Coupling(li);
                for g in GaugeChoice::all(l, li) {
                    let Ok(d) = g.d(n) else { continue };
                    if d > 2 {
                        continue;
                    }
                    let m = bcn_matrix(n, l, li, &g, &r).unwrap();
                    assert_eq!(m.dim() as u64, binomial(u64::from(d) + n as u64, n as u64));
                    seen.insert((n, d));
                }
            }
        }
    }
    for n in 1..=3 {
        for d in 0..=2 {
            assert!(
                seen.contains(&(n, d)),
                "no gauge reached (N, d) = ({n}, {d})"
            );
        }
    }
}

#[test]
fn n1_crosscheck_against_spectral_polynomial() {
    let r = roots();
    let fld = field(&r);
    for l in [
        [2, 0, 0, 0],
        [0, 0, 0, 0],
        [1, 1, 0, 0],
        [1, 0, 0, 0],
        [3, 0, 0, 0],
        [1, 1, 1, 1],
        [2, 1, 0, 1],
    ] {
        let li = Coupling(l);
        let sd = spectral_data(&fld, li).unwrap();
        let cc = crosscheck_n1(li, &r, &sd.q).unwrap();
        assert_eq!(cc.product, sd.q);
        // every eigenvalue is a root of Q to 1e-8
        for (g, _, _) in &cc.components {
            let m = bcn_matrix(1, 0, li, g, &r).unwrap();
            let s = bcn_spectra(&m, 30).unwrap();
            let qc: Vec<Complex64> =
                sd.q.coeffs()
                    .iter()
                    .map(|c| Complex64::new(c.to_f64(), 0.0))
                    .collect();
            for (z, _) in &s.eigenvalues {
                let z = z.to_c64();
                let v = qc
                    .iter()
                    .rev()
                    .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
                let scale: f64 = qc
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c.norm() * z.norm().powi(k as i32))
                    .sum();
                assert!(v.norm() / scale.max(1.0) < 1e-8, "{l:?} eigenvalue {z}");
            }
        }
    }
    let li = Coupling([2, 0, 0, 0]);
    let sd = spectral_data(&fld, li).unwrap();
    assert_eq!(crosscheck_n1(li, &r, &sd.q).unwrap().components.len(), 4);
}

#[test]
fn crosscheck_rejects_wrong_polynomial() {
    let r = roots();
    let li = Coupling([1, 0, 0, 0]);
    let wrong = fingap::algebra::Poly::from_ints(&[1, 0, 0, 1]);
    assert!(matches!(
        crosscheck_n1(li, &r, &wrong),
        Err(Error::MismatchFailure(_))
    ));
}

#[test]
fn square_integrable_gauge_for_l1_l0_one_is_not_quasi_solvable() {
    let li = Coupling([1, 0, 0, 0]);
    for b2 in [false, true] {
        for b3 in [false, true] {
            let g = GaugeChoice::from_branches(1, li, true, [true, true, b2, b3]);
            assert!(g.is_square_integrable(1, li));
            assert!(matches!(
                bcn_matrix(2, 1, li, &g, &roots()),
                Err(Error::NotQuasiSolvable(_))
            ));
        }
    }
}

#[test]
fn square_integrable_gauges_that_close_have_real_spectra() {
    // b = (1/2, 1/2, -1/2, -1/2), d = 0
    let r = roots();
    let li = Coupling([0, 0, 1, 1]);
    let g = GaugeChoice::from_branches(0, li, true, [true, true, false, false]);
    assert!(g.is_square_integrable(0, li));
    let m = bcn_matrix(1, 0, li, &g, &r).unwrap();
    assert!(bcn_spectra(&m, 30).unwrap().reality);
}

#[test]
fn pair_identity_gate_passes() {
    let err = validate_pair_identity(&roots()).unwrap();
    assert!(err < IDENTITY_TOL);
    let r = ExactRoots::new(qh(7, 4), qh(-1, 4), qh(-3, 2)).unwrap();
    assert!(validate_pair_identity(&r).unwrap() < IDENTITY_TOL);
}

#[test]
fn json_shape() {
    let li = Coupling([2, 0, 0, 0]);
    let g = GaugeChoice::from_branches(0, li, false, [false; 4]);
    let m = bcn_matrix(1, 0, li, &g, &roots()).unwrap();
    let s = bcn_spectra(&m, 20).unwrap();
    let v = m.to_json(&s);
    for k in [
        "N",
        "couplings",
        "gauge",
        "dim",
        "matrix",
        "eigenvalues",
        "reality",
    ] {
        assert!(v.get(k).is_some(), "missing {k}");
    }
    assert_eq!(v["matrix"][0][1], "14/1");
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 2);
}

fn permuted_charpoly(m: &[Vec<Rational>], perm: &[usize]) -> fingap::algebra::Poly {
    let n = m.len();
    let pm: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| m[perm[i]][perm[j]].clone()).collect())
        .collect();
    fingap::algebra::linalg::charpoly(&pm)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spectrum_ignores_basis_order(seed in any::<u64>()) {
        let li = Coupling([1, 1, 0, 0]);
        let g = GaugeChoice::from_branches(1, li, false, [false; 4]);
        let m = bcn_matrix(2, 1, li, &g, &roots()).unwrap();
        let mut perm: Vec<usize> = (0..m.dim()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let base = bcn_spectra(&m, 20).unwrap().charpoly;
        prop_assert_eq!(permuted_charpoly(&m.matrix, &perm), base);
    }

    #[test]
    fn dimension_is_binomial(n in 1usize..5, d in 0u32..5) {
        prop_assert_eq!(multisets(n, d).len() as u64, binomial(u64::from(d) + n as u64, n as u64));
    }
}
