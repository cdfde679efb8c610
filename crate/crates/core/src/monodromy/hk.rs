//! Hermite–Krichever data for `l = (2,0,0,0)`:
//! `℘(α) = e_1 - (E-3e_1)(E+6e_1)² / (9(E²-3g_2))`,
//! `κ = 2√(-Q(E)) / (3(E²-3g_2))`, and the multiplier
//! `exp(-2η_k α + 2ω_k ζ(α) + 2κω_k)`.

use num_complex::Complex64;
use rug::Rational;
use serde_json::{json, Value};

use super::bethe::{bethe_multiplier, wp_inverse, BetheConfig};
use super::lambda::Lambda;
use crate::elliptic::{ExactRoots, Lattice64};
use crate::report::complex_value;
use crate::spectral::{Coupling, SpectralData};
use crate::{Error, Result};

type C = Complex64;

pub const P2_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct HkParams {
    pub e: C,
    pub alpha: C,
    pub kappa: C,
    pub wp_alpha: C,
    /// Multipliers for `k = 1, 3`.
    pub multiplier: [C; 2],
    /// Largest mismatch against `Λ(x+2ω_k)/Λ(x)` over `k = 1, 3`.
    pub lambda_mismatch: f64,
}

fn p2(e: C, lat: &Lattice64) -> Result<C> {
    let p = e * e - lat.g2 * 3.0;
    if p.norm() < P2_TOL {
        return Err(Error::SingularP2(p.norm()));
    }
    Ok(p)
}

/// `℘(α)` from the closed form.
pub fn hk_wp_alpha(e: C, lat: &Lattice64) -> Result<C> {
    let e1 = lat.e[0];
    let d = e + e1 * 6.0;
    Ok(e1 - (e - e1 * 3.0) * d * d / (p2(e, lat)? * 9.0))
}

/// `κ` for the branch `s = √(-Q(E))`.
pub fn hk_kappa(e: C, s: C, lat: &Lattice64) -> Result<C> {
    Ok(s * 2.0 / (p2(e, lat)? * 3.0))
}

pub fn hk_multiplier(alpha: C, kappa: C, k: usize, lat: &Lattice64) -> Result<C> {
    let (eta, om) = (lat.eta(k), lat.omega(k));
    Ok((eta * alpha * -2.0 + om * lat.zeta(&alpha)? * 2.0 + kappa * om * 2.0).exp())
}

/// `(α, κ)` with the sign of `α` (equivalently of `℘'(α)`) chosen so the
/// multiplier matches `Λ(x+2ω_1)/Λ(x)` computed with the same `√(-Q)`.
pub fn hk_example_params(e: C, sd: &SpectralData, lat: &Lattice64) -> Result<HkParams> {
    if sd.l != Coupling([2, 0, 0, 0]) {
        return Err(Error::InvalidInput(format!(
            "closed forms are for couplings (2,0,0,0), not {}",
            sd.l
        )));
    }
    p2(e, lat)?;
    let lam = Lambda::new(sd, lat)?;
    let s = lam.sqrt_minus_q(e)?;
    let wp_alpha = hk_wp_alpha(e, lat)?;
    let kappa = hk_kappa(e, s, lat)?;
    let a0 = wp_inverse(lat, wp_alpha)?;
    let target = [lam.period_multiplier(e, 1)?, lam.period_multiplier(e, 3)?];
    let mut best: Option<(f64, C, [C; 2])> = None;
    for alpha in [a0, -a0] {
        let m = [
            hk_multiplier(alpha, kappa, 1, lat)?,
            hk_multiplier(alpha, kappa, 3, lat)?,
        ];
        let err = (0..2)
            .map(|j| (m[j] - target[j]).norm() / target[j].norm().max(1.0))
            .fold(0.0, f64::max);
        if best.as_ref().is_none_or(|b| err < b.0) {
            best = Some((err, alpha, m));
        }
    }
    let (lambda_mismatch, alpha, multiplier) = best.expect("two candidates");
    Ok(HkParams {
        e,
        alpha,
        kappa,
        wp_alpha,
        multiplier,
        lambda_mismatch,
    })
}

/// Lattice distance of `α + Σt_j`, with `(t, c)` or its reflection `(-t, -c)`
/// (the data of `Λ(-x)`) chosen to match the multiplier of `α`.
pub fn alpha_bethe_offset(hk: &HkParams, b: &BetheConfig, lat: &Lattice64) -> Result<f64> {
    let m = bethe_multiplier(b, 1, lat)?;
    let sum: C = b.t.iter().sum();
    let same = (m - hk.multiplier[0]).norm() <= (1.0 / m - hk.multiplier[0]).norm();
    let s = if same { sum } else { -sum };
    Ok(lat.lattice_distance(&(hk.alpha + s)))
}

/// For each rational root `E` of `Q`, whether `κ` vanishes there exactly:
/// `Q(E) = 0` over `Q` and `E² ≠ 3g_2`.
pub fn kappa_zero_at_rational_roots(
    sd: &SpectralData,
    roots: &ExactRoots,
) -> Vec<(Rational, bool)> {
    let g2 = roots.g2();
    let mut out = Vec::new();
    for e in roots.e.iter().map(|ei| Rational::from(ei * 3u32)) {
        let p2 = (e.clone() * &e) - Rational::from(&g2 * 3u32);
        let ok = sd.q.eval(&e) == 0 && p2 != 0;
        out.push((e, ok));
    }
    out
}

impl HkParams {
    pub fn to_json(&self) -> Value {
        let c = |z: &C| complex_value(z, 17);
        json!({
            "E": c(&self.e),
            "alpha": c(&self.alpha),
            "kappa": c(&self.kappa),
            "wp_alpha": c(&self.wp_alpha),
            "multiplier": {"k1": c(&self.multiplier[0]), "k3": c(&self.multiplier[1])},
            "lambda_mismatch": self.lambda_mismatch,
        })
    }
}
