//! `Λ(x,E) = √Ξ · exp ∫ √(-Q(E))/Ξ dx` by quadrature, and its logarithmic
//! derivative `Λ'/Λ = Ξ'/(2Ξ) + √(-Q)/Ξ`.

use num_complex::Complex64;

use super::quad::integrate;
use crate::algebra::Poly;
use crate::elliptic::Lattice64;
use crate::hp::RatZ;
use crate::spectral::{Coupling, SpectralData};
use crate::{Error, Result};

type C = Complex64;

/// `|Q(E)|` below which `E` counts as a band edge.
pub const EDGE_TOL: f64 = 1e-10;
const QUAD_TOL: f64 = 1e-13;

/// `Ξ(x,E)` as a rational function of `z = ℘(x)`: for each power `E^p` the
/// coefficient and its first two `z`-derivatives.
#[derive(Clone, Debug)]
pub struct XiNumeric {
    pub l: Coupling,
    terms: Vec<[RatZ; 3]>,
    pub q: Poly,
    pub a: Poly,
    pub c: Poly,
}

impl XiNumeric {
    pub fn new(sd: &SpectralData) -> Result<Self> {
        let mut terms = Vec::with_capacity(sd.xi.len());
        for x in &sd.xi {
            if x.parity().is_some_and(|p| p != 0) {
                return Err(Error::InvalidInput(
                    "Xi coefficients must be even elliptic functions".into(),
                ));
            }
            let f = &**x.field();
            let r0 = x.term(0).clone();
            let r1 = r0.dz(f);
            let r2 = r1.dz(f);
            terms.push([r0, r1, r2]);
        }
        Ok(XiNumeric {
            l: sd.l,
            terms,
            q: sd.q.clone(),
            a: sd.a.clone(),
            c: sd.c.clone(),
        })
    }

    pub fn q_at(&self, e: C) -> C {
        self.q.eval_num(&e)
    }

    /// `Ξ`, `∂_z Ξ`, `∂_z² Ξ` at `z`.
    pub fn in_z(&self, e: C, z: C, roots: &[C; 3]) -> [C; 3] {
        let mut out = [C::new(0.0, 0.0); 3];
        let mut ep = C::new(1.0, 0.0);
        for t in &self.terms {
            for d in 0..3 {
                out[d] += t[d].eval_num(&z, roots) * ep;
            }
            ep *= e;
        }
        out
    }

    /// `Ξ`, `Ξ'`, `Ξ''` in `x`.
    pub fn derivs(&self, e: C, x: C, lat: &Lattice64) -> Result<[C; 3]> {
        let w = lat.wp_set(&x)?;
        let [f, fz, fzz] = self.in_z(e, w.wp, &lat.e);
        let wp2 = w.wp * w.wp * 6.0 - lat.g2 * 0.5;
        Ok([f, fz * w.wpp, fzz * w.wpp * w.wpp + fz * wp2])
    }

    /// Numerator of `Ξ(·,E)` after clearing the poles at `e_i`, ascending in `z`.
    pub fn numerator_in_z(&self, e: C, roots: &[C; 3]) -> Vec<C> {
        let mut top = [0u32; 3];
        for t in &self.terms {
            for i in 0..3 {
                top[i] = top[i].max(t[0].pole[i]);
            }
        }
        let mut acc: Vec<C> = Vec::new();
        let mut ep = C::new(1.0, 0.0);
        for t in &self.terms {
            let r = &t[0];
            let mut p: Vec<C> = r
                .num
                .coeffs()
                .iter()
                .map(|a| C::new(a.to_f64(), 0.0))
                .collect();
            for i in 0..3 {
                for _ in r.pole[i]..top[i] {
                    p = mul_linear(&p, roots[i]);
                }
            }
            if acc.len() < p.len() {
                acc.resize(p.len(), C::new(0.0, 0.0));
            }
            for (k, v) in p.iter().enumerate() {
                acc[k] += v * ep;
            }
            ep *= e;
        }
        while acc.len() > 1 && acc.last().is_some_and(|v| v.norm() == 0.0) {
            acc.pop();
        }
        acc
    }
}

fn mul_linear(p: &[C], r: C) -> Vec<C> {
    let mut out = vec![C::new(0.0, 0.0); p.len() + 1];
    for (k, v) in p.iter().enumerate() {
        out[k + 1] += v;
        out[k] -= v * r;
    }
    out
}

/// Poles of `Ξ` and of the potential: `ω_i + Λ` for `l_i > 0`, plus `Λ`.
pub(crate) fn singular_distance(l: Coupling, lat: &Lattice64, x: C) -> f64 {
    let mut d = lat.lattice_distance(&x);
    for i in 1..4 {
        if l.0[i] > 0 {
            d = d.min(lat.lattice_distance(&(x - lat.omega(i))));
        }
    }
    d
}

/// Evaluator for `Λ(x,E)` on one lattice.
pub struct Lambda<'a> {
    pub xi: XiNumeric,
    pub lat: &'a Lattice64,
    pub base: C,
}

impl<'a> Lambda<'a> {
    /// Base point `ω_1`, or `(ω_1+ω_3)/2` when `ω_1` is a pole of `Ξ`.
    pub fn new(sd: &SpectralData, lat: &'a Lattice64) -> Result<Self> {
        let xi = XiNumeric::new(sd)?;
        let base = if sd.l.0[1] == 0 {
            lat.omega1
        } else {
            (lat.omega1 + lat.omega3) * 0.5
        };
        Ok(Lambda { xi, lat, base })
    }

    pub fn with_base(mut self, base: C) -> Self {
        self.base = base;
        self
    }

    /// The branch `√(-Q(E))` used throughout (principal).
    pub fn sqrt_minus_q(&self, e: C) -> Result<C> {
        let q = self.xi.q_at(e);
        if q.norm() < EDGE_TOL {
            return Err(Error::EdgeEnergy(format!("{e}")));
        }
        Ok((-q).sqrt())
    }

    /// `y = Λ'/Λ` and `y'` at `x` for the branch `s = √(-Q)`.
    pub fn log_derivative(&self, e: C, s: C, x: C) -> Result<(C, C)> {
        let [f, f1, f2] = self.xi.derivs(e, x, self.lat)?;
        if f.norm() < 1e-12 * (1.0 + f1.norm()) {
            return Err(Error::PathPole);
        }
        let y = f1 / (f * 2.0) + s / f;
        let yp = f2 / (f * 2.0) - f1 * f1 / (f * f * 2.0) - s * f1 / (f * f);
        Ok((y, yp))
    }

    /// `|(H-E)Λ| / |Λ|` at `x`, from `Λ''/Λ = y' + y²`.
    pub fn residual(&self, e: C, x: C) -> Result<f64> {
        let s = self.sqrt_minus_q(e)?;
        let (y, yp) = self.log_derivative(e, s, x)?;
        let u = super::ode::potential(self.xi.l, self.lat, x)?;
        Ok((-(yp + y * y) + u - e).norm())
    }

    fn check_segment(&self, a: C, b: C) -> Result<()> {
        let need = 0.05 * self.lat.omega1.norm();
        for j in 0..=512 {
            let x = a + (b - a) * (j as f64 / 512.0);
            if singular_distance(self.xi.l, self.lat, x) < need {
                return Err(Error::PathPole);
            }
        }
        Ok(())
    }

    /// `∫_a^b Λ'/Λ dx` along the straight segment.
    pub fn log_integral(&self, e: C, s: C, a: C, b: C) -> Result<C> {
        self.check_segment(a, b)?;
        let d = b - a;
        integrate(
            |t| Ok(self.log_derivative(e, s, a + d * t)?.0 * d),
            0.0,
            1.0,
            QUAD_TOL,
            QUAD_TOL,
        )
    }

    /// `Λ(x,E)` normalised by the principal `√Ξ(x0)` at the base point.
    pub fn eval(&self, x: C, e: C) -> Result<C> {
        let s = self.sqrt_minus_q(e)?;
        let f0 = self.xi.derivs(e, self.base, self.lat)?[0];
        if f0.norm() < 1e-12 {
            return Err(Error::PathPole);
        }
        Ok(f0.sqrt() * self.log_integral(e, s, self.base, x)?.exp())
    }

    /// `Λ(x+2ω_k)/Λ(x)` from `∫ Λ'/Λ` over one period, on a path kept away
    /// from the zeros of `Ξ`.
    pub fn period_multiplier(&self, e: C, k: usize) -> Result<C> {
        let s = self.sqrt_minus_q(e)?;
        let step = self.lat.omega(k) * 2.0;
        let (w1, w3) = (self.lat.omega1, self.lat.omega3);
        let shifts = [0.0, 0.13, -0.13, 0.27, -0.27, 0.41, -0.41];
        for &a in &shifts {
            for &b in &shifts {
                let x0 = (w1 + w3) * 0.5 + w1 * a + w3 * b;
                if self.check_segment(x0, x0 + step).is_err() {
                    continue;
                }
                let vals: Vec<f64> = (0..=128)
                    .filter_map(|j| {
                        self.xi
                            .derivs(e, x0 + step * (j as f64 / 128.0), self.lat)
                            .ok()
                    })
                    .map(|d| d[0].norm())
                    .collect();
                let hi = vals.iter().cloned().fold(0.0, f64::max);
                let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
                if vals.len() < 129 || lo < 1e-2 * hi {
                    continue;
                }
                if let Ok(v) = self.log_integral(e, s, x0, x0 + step) {
                    return Ok(v.exp());
                }
            }
        }
        Err(Error::PathPole)
    }
}

/// `Λ(x,E)` with the default base point.
pub fn lambda_eval(x: C, e: C, sd: &SpectralData, lat: &Lattice64) -> Result<C> {
    Lambda::new(sd, lat)?.eval(x, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::{ExactRoots, Lattice};
    use crate::hp::field;
    use crate::spectral::spectral_data;

    fn setup(l: [u32; 4]) -> (SpectralData, Lattice64) {
        let r = ExactRoots::from_ints(3, -1, -2).unwrap();
        let lat = Lattice::<C>::from_roots(&r, 15).unwrap();
        (spectral_data(&field(&r), Coupling(l)).unwrap(), lat)
    }

    #[test]
    fn free_plane_wave() {
        let (sd, lat) = setup([0; 4]);
        let lam = Lambda::new(&sd, &lat).unwrap();
        let e = C::new(2.0, 0.5);
        let x = C::new(0.3, 0.2);
        let got = lam.eval(x, e).unwrap();
        let want = ((-e).sqrt() * (x - lat.omega1)).exp();
        assert!((got - want).norm() < 1e-12 * want.norm());
    }

    #[test]
    fn numerator_roots_match_xi_zeros() {
        let (sd, lat) = setup([2, 0, 0, 0]);
        let xn = XiNumeric::new(&sd).unwrap();
        let e = C::new(1.0, 0.3);
        let num = xn.numerator_in_z(e, &lat.e);
        assert_eq!(num.len(), 3);
        for z in crate::algebra::roots::roots_c64(&num).unwrap() {
            assert!(xn.in_z(e, z, &lat.e)[0].norm() < 1e-10);
        }
    }
}
