//! Weierstrass and theta functions on a period lattice.
//!
//! Conventions: `omega1`, `omega3` are half-periods, `tau = omega3/omega1`
//! with `Im tau > 0`, `omega2 = -omega1 - omega3`, and `e_i = ℘(omega_i)`.
//! The theta nome is `q = exp(iπτ)`; the reported nome is `p = q^2`.
//! Every function is evaluated from theta series in `q` at
//! `v = πx/(2 omega1)`, without argument reduction.
//!
//! When the lattice is built from exact rational roots, the half-period
//! attached to the largest root is real and the one attached to the smallest
//! is purely imaginary; the user's `e1` is always attached to `omega1` and the
//! user's `e3` to `omega3` (with the sign of `omega3` chosen so `Im tau > 0`).

mod theta;

use num_complex::Complex64;
use rug::{Complex, Rational};
use serde_json::{json, Value};

pub use theta::{theta_all, theta_constants, ThetaConstants, ThetaValues};

use crate::num::{digits_to_bits, CNum, FormatDigits};
use crate::{Error, Result};

/// Radius of the excluded disk around poles.
pub const POLE_RADIUS: f64 = 1e-12;
/// Lattices with `|p| >= 1 - NOME_MARGIN` are rejected.
pub const NOME_MARGIN: f64 = 1e-3;

/// Three distinct rational roots with zero sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactRoots {
    pub e: [Rational; 3],
}

impl ExactRoots {
    pub fn new(e1: Rational, e2: Rational, e3: Rational) -> Result<Self> {
        if e1 == e2 || e2 == e3 || e1 == e3 {
            return Err(Error::DegenerateLattice(format!(
                "repeated root among ({e1}, {e2}, {e3})"
            )));
        }
        let s = Rational::from(&e1 + &e2) + &e3;
        if s != 0 {
            return Err(Error::InvalidInput(format!(
                "roots must sum to zero, got {s}"
            )));
        }
        Ok(ExactRoots { e: [e1, e2, e3] })
    }

    pub fn from_ints(e1: i64, e2: i64, e3: i64) -> Result<Self> {
        Self::new(Rational::from(e1), Rational::from(e2), Rational::from(e3))
    }

    /// `g2 = -4(e1 e2 + e2 e3 + e3 e1)`.
    pub fn g2(&self) -> Rational {
        let [a, b, c] = &self.e;
        let s = Rational::from(a * b) + Rational::from(b * c) + Rational::from(c * a);
        s * Rational::from(-4)
    }

    /// `g3 = 4 e1 e2 e3`.
    pub fn g3(&self) -> Rational {
        let [a, b, c] = &self.e;
        Rational::from(a * b) * c * Rational::from(4)
    }

    /// `(e_i - e_j)(e_i - e_k)`, the residue constant of `℘(x + omega_i)`.
    pub fn residue(&self, i: usize) -> Rational {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        Rational::from(&self.e[i] - &self.e[j]) * Rational::from(&self.e[i] - &self.e[k])
    }
}

/// Selector for [`Lattice::eval`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllipticKind {
    Wp,
    WpPrime,
    Zeta,
    Sigma,
    Sigma1,
    Sigma2,
    Sigma3,
    /// `θ1(x) = 2 Σ (-1)^{n-1} q^{(n-1/2)^2} sin((2n-1)πx)`, depending only on `tau`.
    Theta1,
}

impl std::str::FromStr for EllipticKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "wp" => Self::Wp,
            "wp_prime" => Self::WpPrime,
            "zeta" => Self::Zeta,
            "sigma" => Self::Sigma,
            "sigma1" => Self::Sigma1,
            "sigma2" => Self::Sigma2,
            "sigma3" => Self::Sigma3,
            "theta1" => Self::Theta1,
            _ => {
                return Err(Error::InvalidInput(format!(
                    "unknown elliptic function {s:?}"
                )))
            }
        })
    }
}

/// `℘`, `℘'` and `ζ` at one point, from a single theta evaluation.
#[derive(Clone, Debug)]
pub struct WpSet<T> {
    pub wp: T,
    pub wpp: T,
    pub zeta: T,
}

#[derive(Clone, Debug)]
pub struct Lattice<T> {
    pub omega1: T,
    pub omega3: T,
    pub tau: T,
    /// `p = exp(2πiτ)`.
    pub nome: T,
    pub e: [T; 3],
    pub g2: T,
    pub g3: T,
    pub eta1: T,
    pub eta3: T,
    /// Working decimal digits.
    pub precision: u32,
    /// Exact roots this lattice was built from, if any.
    pub exact: Option<ExactRoots>,
    q: T,
    q14: T,
    consts: ThetaConstants<T>,
    /// `π / (2 omega1)`
    k: T,
}

pub type Lattice64 = Lattice<Complex64>;
pub type LatticeMp = Lattice<Complex>;

fn agm<T: CNum>(a: &T, b: &T) -> T {
    let (mut a, mut b) = (a.clone(), b.clone());
    let eps = a.epsilon() * 8.0;
    for _ in 0..200 {
        let an = (a.clone() + &b).scale(0.5);
        let bn = (a.clone() * &b).sqrt();
        // pick the root closer to the arithmetic mean
        let bn = if (an.clone() - &bn).abs() > (an.clone() + &bn).abs() {
            -bn
        } else {
            bn
        };
        let done = (an.clone() - &bn).abs() <= eps * an.abs();
        a = an;
        b = bn;
        if done {
            break;
        }
    }
    a
}

impl<T: CNum> Lattice<T> {
    /// Builds the lattice with half-periods `omega1`, `omega3`.
    pub fn from_periods(omega1: T, omega3: T, precision: u32) -> Result<Self> {
        if omega1.abs() == 0.0 || omega3.abs() == 0.0 {
            return Err(Error::DegenerateLattice("zero half-period".into()));
        }
        let tau = omega3.clone() / &omega1;
        if tau.im() <= 0.0 {
            return Err(Error::DegenerateLattice(format!(
                "Im tau = {} is not positive",
                tau.im()
            )));
        }
        let pi = T::pi(omega1.prec());
        let ipi = pi.mul_i();
        let q = (ipi.clone() * &tau).exp();
        let q14 = (ipi.clone() * &tau).scale(0.25).exp();
        let nome = q.square();
        if nome.abs() >= 1.0 - NOME_MARGIN {
            return Err(Error::DegenerateLattice(format!(
                "|p| = {} too close to 1",
                nome.abs()
            )));
        }
        let consts = theta_constants(&q, &q14);
        let k = pi.clone() / omega1.scale(2.0);
        let c = pi.square() / omega1.square().scale(12.0);
        let t2 = consts.th2.powi(4);
        let t4 = consts.th4.powi(4);
        let e1 = c.clone() * (t2.clone() + t4.scale(2.0));
        let e2 = c.clone() * (t2.clone() - &t4);
        let e3 = -(c * (t2.scale(2.0) + &t4));
        let eta1 = -(pi.square() * &consts.th1ppp) / (omega1.scale(12.0) * &consts.th1p);
        let g2 = -(e1.clone() * &e2 + e2.clone() * &e3 + e3.clone() * &e1).scale(4.0);
        let g3 = (e1.clone() * &e2 * &e3).scale(4.0);
        let mut lat = Lattice {
            omega1,
            omega3: omega3.clone(),
            tau,
            nome,
            e: [e1, e2, e3],
            g2,
            g3,
            eta1: eta1.clone(),
            eta3: eta1.clone(),
            precision,
            exact: None,
            q,
            q14,
            consts,
            k,
        };
        lat.eta3 = lat.zeta_raw(&omega3);
        Ok(lat)
    }

    /// Builds the lattice whose `℘` has roots `r.e` (see module docs for the
    /// half-period assignment).
    pub fn from_roots(r: &ExactRoots, precision: u32) -> Result<Self> {
        let bits = digits_to_bits(precision);
        let ev: Vec<T> = r.e.iter().map(|x| T::from_q(bits, x)).collect();
        // order indices by decreasing root
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| r.e[b].cmp(&r.e[a]));
        let (a, b, c) = (&ev[idx[0]], &ev[idx[1]], &ev[idx[2]]);
        let pi = T::pi(bits);
        let sac = (a.clone() - c).sqrt();
        let big1 = pi.clone() / agm(&sac, &(a.clone() - b).sqrt()).scale(2.0);
        let big3 = pi.mul_i() / agm(&sac, &(b.clone() - c).sqrt()).scale(2.0);
        let big2 = -(big1.clone() + &big3);
        let half = |i: usize| -> T {
            if i == idx[0] {
                big1.clone()
            } else if i == idx[1] {
                big2.clone()
            } else {
                big3.clone()
            }
        };
        let w1 = half(0);
        let mut w3 = half(2);
        if (w3.clone() / &w1).im() < 0.0 {
            w3 = -w3;
        }
        let mut lat = Self::from_periods(w1, w3, precision)?;
        let tol = lat.tolerance() * (1.0 + ev.iter().map(|x| x.abs()).fold(0.0, f64::max));
        for i in 0..3 {
            let d = (lat.e[i].clone() - &ev[i]).abs();
            if d > tol {
                return Err(Error::NonConvergence(format!(
                    "root e{} reproduced with error {d:e}",
                    i + 1
                )));
            }
        }
        lat.e = [ev[0].clone(), ev[1].clone(), ev[2].clone()];
        lat.g2 = T::from_q(bits, &r.g2());
        lat.g3 = T::from_q(bits, &r.g3());
        lat.exact = Some(r.clone());
        Ok(lat)
    }

    /// Absolute tolerance `10^(-precision+4)`, floored at `f64` resolution
    /// for the `f64` path.
    pub fn tolerance(&self) -> f64 {
        let eps = self.omega1.epsilon();
        10f64.powi(-(self.precision as i32) + 4).max(eps * 1e4)
    }

    pub fn bits(&self) -> u32 {
        self.omega1.prec()
    }

    pub fn lift(&self, z: Complex64) -> T {
        T::from_c64(self.bits(), z)
    }

    pub fn lift_q(&self, q: &Rational) -> T {
        T::from_q(self.bits(), q)
    }

    /// `omega_i` for `i` in `1..=3`.
    pub fn omega(&self, i: usize) -> T {
        match i {
            1 => self.omega1.clone(),
            2 => -(self.omega1.clone() + &self.omega3),
            3 => self.omega3.clone(),
            _ => panic!("half-period index {i} out of range"),
        }
    }

    /// `eta_i = ζ(omega_i)` for `i` in `1..=3`.
    pub fn eta(&self, i: usize) -> T {
        match i {
            1 => self.eta1.clone(),
            2 => -(self.eta1.clone() + &self.eta3),
            3 => self.eta3.clone(),
            _ => panic!("half-period index {i} out of range"),
        }
    }

    /// Root `e_i` for `i` in `1..=3`.
    pub fn root(&self, i: usize) -> T {
        self.e[i - 1].clone()
    }

    /// Nearest lattice point `2m omega1 + 2n omega3` to `x`, with `(m, n)`.
    pub fn nearest_lattice_point(&self, x: &T) -> (T, i64, i64) {
        let w1 = self.omega1.to_c64() * 2.0;
        let w3 = self.omega3.to_c64() * 2.0;
        let xc = x.to_c64();
        // solve xc = s w1 + t w3 over the reals
        let det = w1.re * w3.im - w1.im * w3.re;
        let s = (xc.re * w3.im - xc.im * w3.re) / det;
        let t = (w1.re * xc.im - w1.im * xc.re) / det;
        let mut best = (f64::INFINITY, 0, 0);
        for dm in -1..=1 {
            for dn in -1..=1 {
                let m = s.round() as i64 + dm;
                let n = t.round() as i64 + dn;
                let d = (xc - w1 * m as f64 - w3 * n as f64).norm();
                if d < best.0 {
                    best = (d, m, n);
                }
            }
        }
        let p = self.omega1.scale(2.0 * best.1 as f64) + self.omega3.scale(2.0 * best.2 as f64);
        (p, best.1, best.2)
    }

    /// Distance from `x` to the nearest lattice point.
    pub fn lattice_distance(&self, x: &T) -> f64 {
        let (p, _, _) = self.nearest_lattice_point(x);
        (x.clone() - &p).abs()
    }

    fn check_pole(&self, x: &T) -> Result<()> {
        let d = self.lattice_distance(x);
        if d < POLE_RADIUS {
            return Err(Error::PoleProximity(format!(
                "x = {} is {d:e} from a lattice point",
                x.to_c64()
            )));
        }
        Ok(())
    }

    fn v(&self, x: &T) -> T {
        self.k.clone() * x
    }

    fn zeta_raw(&self, x: &T) -> T {
        let th = theta_all(&self.v(x), &self.q, &self.q14);
        self.eta1.clone() * x / &self.omega1 + self.k.clone() * &th.th1p / &th.th1
    }

    /// `℘(x)`, `℘'(x)`, `ζ(x)` together.
    pub fn wp_set(&self, x: &T) -> Result<WpSet<T>> {
        self.check_pole(x)?;
        let th = theta_all(&self.v(x), &self.q, &self.q14);
        let r = th.th1p.clone() / &th.th1;
        let k2 = self.k.square();
        let wp = k2.clone() * (r.square() - th.th1pp.clone() / &th.th1)
            - self.eta1.clone() / &self.omega1;
        let c = &self.consts;
        let wpp = -(k2 * &self.k * c.th1p.square() * &th.th2 * &th.th3 * &th.th4).scale(2.0)
            / th.th1.powi(3);
        let zeta = self.eta1.clone() * x / &self.omega1 + self.k.clone() * &r;
        Ok(WpSet { wp, wpp, zeta })
    }

    pub fn wp(&self, x: &T) -> Result<T> {
        Ok(self.wp_set(x)?.wp)
    }

    pub fn wp_prime(&self, x: &T) -> Result<T> {
        Ok(self.wp_set(x)?.wpp)
    }

    pub fn zeta(&self, x: &T) -> Result<T> {
        self.check_pole(x)?;
        Ok(self.zeta_raw(x))
    }

    pub fn sigma(&self, x: &T) -> T {
        let th = theta_all(&self.v(x), &self.q, &self.q14);
        let pref = (self.eta1.clone() * &x.square() / self.omega1.scale(2.0)).exp();
        pref * &th.th1 / (self.k.clone() * &self.consts.th1p)
    }

    /// Co-sigma `σ_i(x) = exp(-η_i x) σ(x + ω_i) / σ(ω_i)`, `i` in `1..=3`.
    pub fn sigma_i(&self, i: usize, x: &T) -> T {
        let th = theta_all(&self.v(x), &self.q, &self.q14);
        let pref = (self.eta1.clone() * &x.square() / self.omega1.scale(2.0)).exp();
        let (num, den) = match i {
            1 => (th.th2, &self.consts.th2),
            2 => (th.th3, &self.consts.th3),
            3 => (th.th4, &self.consts.th4),
            _ => panic!("co-sigma index {i} out of range"),
        };
        pref * &num / den
    }

    /// `θ1(x)` with period-one normalization in `x`.
    pub fn theta1(&self, x: &T) -> T {
        let v = T::pi(self.bits()) * x;
        theta_all(&v, &self.q, &self.q14).th1
    }

    pub fn eval(&self, kind: EllipticKind, x: &T) -> Result<T> {
        match kind {
            EllipticKind::Wp => self.wp(x),
            EllipticKind::WpPrime => self.wp_prime(x),
            EllipticKind::Zeta => self.zeta(x),
            EllipticKind::Sigma => Ok(self.sigma(x)),
            EllipticKind::Sigma1 => Ok(self.sigma_i(1, x)),
            EllipticKind::Sigma2 => Ok(self.sigma_i(2, x)),
            EllipticKind::Sigma3 => Ok(self.sigma_i(3, x)),
            EllipticKind::Theta1 => Ok(self.theta1(x)),
        }
    }

    /// Half-power branches `s_i(x)` with `s_i^2 = ℘(x) - e_i` and
    /// `s_1 s_2 s_3 = ℘'(x)/2`, given by `s_i = -σ_i(x)/σ(x)`.
    pub fn half_powers(&self, x: &T) -> Result<[T; 3]> {
        self.check_pole(x)?;
        let s = self.sigma(x);
        Ok([1, 2, 3].map(|i| -(self.sigma_i(i, x) / &s)))
    }

    /// Same lattice in `f64`.
    pub fn to_f64(&self) -> Lattice64 {
        Lattice64 {
            omega1: self.omega1.to_c64(),
            omega3: self.omega3.to_c64(),
            tau: self.tau.to_c64(),
            nome: self.nome.to_c64(),
            e: [self.e[0].to_c64(), self.e[1].to_c64(), self.e[2].to_c64()],
            g2: self.g2.to_c64(),
            g3: self.g3.to_c64(),
            eta1: self.eta1.to_c64(),
            eta3: self.eta3.to_c64(),
            precision: self.precision.min(15),
            exact: self.exact.clone(),
            q: self.q.to_c64(),
            q14: self.q14.to_c64(),
            consts: ThetaConstants {
                th1p: self.consts.th1p.to_c64(),
                th1ppp: self.consts.th1ppp.to_c64(),
                th2: self.consts.th2.to_c64(),
                th3: self.consts.th3.to_c64(),
                th4: self.consts.th4.to_c64(),
            },
            k: self.k.to_c64(),
        }
    }

    /// Real rectangular lattice: `omega1` real, `omega3` purely imaginary.
    pub fn is_rectangular(&self) -> bool {
        let tol = 1e-12 * self.omega1.abs().max(self.omega3.abs());
        self.omega1.im().abs() <= tol && self.omega3.re().abs() <= tol
    }
}

impl Lattice64 {
    pub fn from_periods_f64(omega1: Complex64, omega3: Complex64) -> Result<Self> {
        Self::from_periods(omega1, omega3, 15)
    }
}

impl LatticeMp {
    pub fn from_periods_mp(omega1: Complex64, omega3: Complex64, precision: u32) -> Result<Self> {
        let bits = digits_to_bits(precision);
        Self::from_periods(
            Complex::from_c64(bits, omega1),
            Complex::from_c64(bits, omega3),
            precision,
        )
    }
}

impl<T: CNum + FormatDigits> Lattice<T> {
    /// JSON object `{omega1, omega3, e, g2, g3, eta, precision}`.
    pub fn to_json(&self) -> Value {
        let d = self.precision as usize;
        let c = |z: &T| crate::report::complex_value(z, d);
        json!({
            "omega1": c(&self.omega1),
            "omega3": c(&self.omega3),
            "e": [c(&self.e[0]), c(&self.e[1]), c(&self.e[2])],
            "g2": c(&self.g2),
            "g3": c(&self.g3),
            "eta": [c(&self.eta(1)), c(&self.eta(2)), c(&self.eta(3))],
            "precision": self.precision,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Lattice64 {
        Lattice64::from_periods_f64(Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.5)).unwrap()
    }

    #[test]
    fn square_lattice_symmetry() {
        let l = square();
        assert!(l.e[1].norm() < 1e-12);
        assert!(l.g3.norm() < 1e-10);
    }

    #[test]
    fn roots_reproduced() {
        let r = ExactRoots::from_ints(3, -1, -2).unwrap();
        assert_eq!(r.g2(), 28);
        assert_eq!(r.g3(), 24);
        let l = Lattice64::from_roots(&r, 15).unwrap();
        for i in 1..=3 {
            let v = l.wp(&l.omega(i)).unwrap();
            assert!((v - l.root(i)).norm() < 1e-10, "{i}: {v}");
        }
        assert!(l.tau.re.abs() < 1e-14 && l.tau.im > 0.0);
    }

    #[test]
    fn root_order_is_respected() {
        let r = ExactRoots::from_ints(-1, 3, -2).unwrap();
        let l = Lattice64::from_roots(&r, 15).unwrap();
        for i in 1..=3 {
            assert!((l.wp(&l.omega(i)).unwrap() - l.root(i)).norm() < 1e-10);
        }
        assert!(l.tau.im > 0.0);
    }

    #[test]
    fn repeated_root_rejected() {
        assert!(matches!(
            ExactRoots::from_ints(1, 1, -2),
            Err(Error::DegenerateLattice(_))
        ));
    }

    #[test]
    fn pole_is_refused() {
        let l = square();
        assert!(matches!(
            l.wp(&Complex64::new(1.0, 1.0)),
            Err(Error::PoleProximity(_))
        ));
        assert!(l.wp(&Complex64::new(1.0, 1e-6)).is_ok());
    }

    #[test]
    fn thin_lattice_refused() {
        let r = Lattice64::from_periods_f64(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1e-5));
        assert!(matches!(r, Err(Error::DegenerateLattice(_))));
    }

    #[test]
    fn legendre_relation() {
        let l = Lattice64::from_periods_f64(Complex64::new(0.5, 0.0), Complex64::new(0.3, 0.4))
            .unwrap();
        let lhs = l.eta1 * l.omega3 - l.eta3 * l.omega1;
        assert!((lhs - Complex64::new(0.0, std::f64::consts::FRAC_PI_2)).norm() < 1e-12);
    }

    #[test]
    fn half_power_product_is_half_wp_prime() {
        let l = Lattice64::from_roots(&ExactRoots::from_ints(3, -1, -2).unwrap(), 15).unwrap();
        let x = Complex64::new(0.23, 0.17);
        let s = l.half_powers(&x).unwrap();
        let wp = l.wp(&x).unwrap();
        for i in 0..3 {
            assert!((s[i] * s[i] - (wp - l.e[i])).norm() < 1e-9);
        }
        assert!((s[0] * s[1] * s[2] - l.wp_prime(&x).unwrap() / 2.0).norm() < 1e-9);
    }
}
