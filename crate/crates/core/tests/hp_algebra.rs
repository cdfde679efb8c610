use std::sync::OnceLock;

use fingap::algebra::Poly;
use fingap::elliptic::{ExactRoots, LatticeMp};
use fingap::hp::reduce::reexpand;
use fingap::hp::{annihilator, field, op_right_reduce, DiffOp, Elem, Field};
use fingap::num::CNum;
use fingap::spectral::darboux::{build_a, quasi_space_basis};
use fingap::spectral::{Alpha, Coupling};
use proptest::prelude::*;
use rug::{Complex, Rational};

fn ctx() -> Field {
    field(&ExactRoots::from_ints(3, -1, -2).unwrap())
}

fn lat() -> &'static LatticeMp {
    static L: OnceLock<LatticeMp> = OnceLock::new();
    L.get_or_init(|| LatticeMp::from_roots(&ExactRoots::from_ints(3, -1, -2).unwrap(), 40).unwrap())
}

// c0 + c1 z + c2 z² + c3 ℘' + c4 ℘(x+ω1) + c5 (z-e2)^{1/2} + c6 z (z-e3)^{1/2}
fn elem(c: &[i8]) -> Elem {
    let f = ctx();
    let z = Elem::z(&f);
    let parts = [
        Elem::one(&f),
        z.clone(),
        z.pow(2),
        Elem::wp_prime(&f),
        Elem::wp_shift(&f, 1),
        Elem::half_power(&f, 0b010),
        &z * &Elem::half_power(&f, 0b100),
    ];
    parts.iter().zip(c).fold(Elem::zero(&f), |acc, (p, &k)| {
        &acc + &p.scale(&Rational::from(k))
    })
}

fn coeffs() -> impl Strategy<Value = Vec<i8>> {
    prop::collection::vec(-3i8..4, 7)
}

fn op(c: &[i8], d: &[i8]) -> DiffOp {
    DiffOp::new(&ctx(), vec![elem(c), elem(d)])
}

fn point() -> Complex {
    let l = lat();
    l.omega1.clone() * &l.lift_q(&Rational::from((3, 7)))
        + l.omega3.clone() * &l.lift_q(&Rational::from((5, 9)))
}

fn value(f: &Elem, x: &Complex) -> Complex {
    f.eval(x, lat(), [1, 1, 1]).unwrap()
}

// k-th derivative by central differences at 40 digits, step 1e-10
fn fd(f: &Elem, x: &Complex, k: usize) -> Complex {
    let h = lat().lift_q(&Rational::from((1, 10_000_000_000u64)));
    let at = |s: i32| value(f, &(x.clone() + &(h.clone() * &h.lift(s as f64, 0.0))));
    match k {
        0 => at(0),
        1 => (at(1) - at(-1)) / (h.clone() * &h.lift(2.0, 0.0)),
        2 => (at(1) - at(0) * &h.lift(2.0, 0.0) + at(-1)) / (h.clone() * &h),
        _ => unreachable!(),
    }
}

fn close(a: &Complex, b: &Complex, tol: f64) -> bool {
    CNum::abs(&(a.clone() - b)) <= tol * CNum::abs(b).max(1.0)
}

#[test]
fn wp_prime_squared_is_the_cubic() {
    let f = ctx();
    let z = Elem::z(&f);
    let p = Elem::wp_prime(&f);
    let cubic = Elem::poly(&f, Poly::from_ints(&[-24, -28, 0, 4]));
    assert_eq!(&p * &p, cubic);
    assert_eq!(z.ddx(), p);
    // ℘'' = 6℘² - g2/2
    assert_eq!(z.ddx_n(2), Elem::poly(&f, Poly::from_ints(&[-14, 0, 6])));
}

#[test]
fn wp_shift_is_the_translate() {
    let l = lat();
    let x = point();
    for i in 1..=3 {
        let shifted = l.wp(&(x.clone() + &l.omega(i))).unwrap();
        assert!(close(
            &value(&Elem::wp_shift(&ctx(), i), &x),
            &shifted,
            1e-30
        ));
    }
}

#[test]
fn reduction_reexpands_to_a() {
    let f = ctx();
    for l in [
        [1, 0, 0, 0],
        [2, 0, 0, 0],
        [1, 1, 0, 0],
        [1, 1, 1, 1],
        [3, 1, 0, 0],
    ] {
        let l = Coupling::new(l).unwrap();
        let a = build_a(&f, l).unwrap();
        let h = DiffOp::hamiltonian(&f, l.as_i64());
        let g = l.genus() as usize;
        let terms = op_right_reduce(&a, &h, g).unwrap();
        assert_eq!(terms.len(), g + 1);
        assert!(
            reexpand(&terms, &h).unwrap().sub(&a).unwrap().is_zero(),
            "{l}"
        );
    }
}

#[test]
fn annihilator_kills_quasi_spaces() {
    let f = ctx();
    let mut checked = 0;
    for alpha in [
        [0, -1, 0, 0],
        [0, -2, -1, 0],
        [-1, -1, -1, -1],
        [2, -1, -2, -3],
    ] {
        let Ok(q) = quasi_space_basis(&f, Alpha(alpha)) else {
            continue;
        };
        checked += 1;
        let l = annihilator(&q.basis).unwrap();
        assert_eq!(l.order(), q.basis.len());
        assert!(l.is_monic());
        for b in &q.basis {
            assert!(l.apply(b).unwrap().is_zero(), "{alpha:?}");
        }
    }
    assert!(checked >= 2, "only {checked} quasi-spaces built");
}

#[test]
fn annihilator_of_monomials() {
    // {1, z, z²} in x: annihilated by a monic third-order operator
    let f = ctx();
    let z = Elem::z(&f);
    let basis = [Elem::one(&f), z.clone(), z.pow(2)];
    let l = annihilator(&basis).unwrap();
    assert_eq!(l.order(), 3);
    for b in &basis {
        assert!(l.apply(b).unwrap().is_zero());
    }
}

#[test]
fn operator_application_matches_finite_differences() {
    let f = ctx();
    let x = point();
    let h = DiffOp::hamiltonian(&f, [2, 1, 0, 0]);
    let g = elem(&[1, 2, -1, 1, 1, 0, 0]);
    let exact = value(&h.apply(&g).unwrap(), &x);
    let numeric = h
        .coeffs()
        .iter()
        .enumerate()
        .fold(x.zero_like(), |acc, (k, c)| {
            acc + &(value(c, &x) * &fd(&g, &x, k))
        });
    assert!(close(&exact, &numeric, 1e-8));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in coeffs(), b in coeffs(), c in coeffs()) {
        let (a, b, c) = (elem(&a), elem(&b), elem(&c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Elem::one(&ctx()), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn leibniz_rule(a in coeffs(), b in coeffs()) {
        let (a, b) = (elem(&a), elem(&b));
        prop_assert_eq!((&a * &b).ddx(), &(&a.ddx() * &b) + &(&a * &b.ddx()));
    }

    #[test]
    fn ddx_matches_finite_differences(a in coeffs()) {
        let a = elem(&a);
        let x = point();
        prop_assert!(close(&value(&a.ddx(), &x), &fd(&a, &x, 1), 1e-15));
    }

    #[test]
    fn evaluation_is_a_ring_map(a in coeffs(), b in coeffs()) {
        let (a, b) = (elem(&a), elem(&b));
        let x = point();
        let prod = value(&a, &x) * &value(&b, &x);
        prop_assert!(close(&value(&(&a * &b), &x), &prod, 1e-30));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn compose_acts_as_successive_application(
        p in (coeffs(), coeffs()), q in (coeffs(), coeffs()), g in coeffs()
    ) {
        let (p, q, g) = (op(&p.0, &p.1), op(&q.0, &q.1), elem(&g));
        let pq = p.compose(&q).unwrap();
        prop_assert_eq!(pq.apply(&g).unwrap(), p.apply(&q.apply(&g).unwrap()).unwrap());
        // numeric: P applied to Q g through finite differences
        let x = point();
        let qg = q.apply(&g).unwrap();
        let numeric = p
            .coeffs()
            .iter()
            .enumerate()
            .fold(x.zero_like(), |acc, (k, c)| acc + &(value(c, &x) * &fd(&qg, &x, k)));
        prop_assert!(close(&value(&pq.apply(&g).unwrap(), &x), &numeric, 1e-8));
    }

    #[test]
    fn commutator_is_antisymmetric(p in (coeffs(), coeffs()), q in (coeffs(), coeffs())) {
        let (p, q) = (op(&p.0, &p.1), op(&q.0, &q.1));
        let s = p.commutator(&q).unwrap().add(&q.commutator(&p).unwrap()).unwrap();
        prop_assert!(s.is_zero());
    }
}
