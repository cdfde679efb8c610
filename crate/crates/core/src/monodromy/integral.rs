//! Multiplier as a hyperelliptic integral of the second kind:
//! `B(E) = (-1)^{q_k} exp(-½ ∫_{E0}^{E} (-2η_k a + 2ω_k c)/√(-Q) dẼ)`.

use num_complex::Complex64;
use serde_json::json;

use super::lambda::XiNumeric;
use super::ode::monodromy_ode;
use super::quad::integrate;
use super::{MonodromyResult, Route};
use crate::algebra::roots::roots_c64;
use crate::elliptic::Lattice64;
use crate::spectral::SpectralData;
use crate::{Error, Result};

type C = Complex64;

const BRANCH_TOL: f64 = 1e-3;
const MAX_HALVINGS: u32 = 40;

fn coeffs(p: &crate::algebra::Poly) -> Vec<C> {
    p.coeffs().iter().map(|a| C::new(a.to_f64(), 0.0)).collect()
}

fn horner(c: &[C], z: C) -> C {
    c.iter().rev().fold(C::new(0.0, 0.0), |acc, a| acc * z + a)
}

/// `p(z) / (z - r)` by synthetic division, dropping the remainder.
fn deflate(p: &[C], r: C) -> Vec<C> {
    let n = p.len() - 1;
    let mut out = vec![C::new(0.0, 0.0); n];
    let mut carry = C::new(0.0, 0.0);
    for k in (0..n).rev() {
        carry = p[k + 1] + carry * r;
        out[k] = carry;
    }
    out
}

fn segment_distance(a: C, b: C, z: C) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (a + d * t - z).norm()
}

/// Sign of `√w` continued from `prev`.
fn continue_sqrt(w: C, prev: C) -> C {
    let r = w.sqrt();
    if (r - prev).norm() <= (r + prev).norm() {
        r
    } else {
        -r
    }
}

/// `∫_0^1 num(t)/√w(t) dt` with `√w` continued from `root` at `t = 0`,
/// splitting `[0,1]` where `arg w` moves by more than `π/2`. Returns the
/// integral and the continued root at `t = 1`.
fn tracked_integral(w: impl Fn(f64) -> C, num: impl Fn(f64) -> C, mut root: C) -> Result<(C, C)> {
    let mut pieces = Vec::new();
    let mut s: f64 = 0.0;
    let mut h: f64 = 1.0 / 64.0;
    while s < 1.0 {
        let mut halvings = 0;
        loop {
            let t = (s + h).min(1.0);
            let ok = (1..=4).all(|j| {
                let a0 = w(s + (t - s) * (j - 1) as f64 / 4.0);
                let a1 = w(s + (t - s) * j as f64 / 4.0);
                (a1 / a0).arg().abs() <= std::f64::consts::FRAC_PI_2
            });
            if ok {
                pieces.push((s, t, root));
                root = continue_sqrt(w(t), root);
                s = t;
                break;
            }
            h *= 0.5;
            halvings += 1;
            if halvings > MAX_HALVINGS {
                return Err(Error::BranchAmbiguity(format!(
                    "branch tracking stalled at s = {s}"
                )));
            }
        }
        h = (h * 2.0).min(1.0 / 64.0);
    }
    let mut total = C::new(0.0, 0.0);
    for (lo, hi, start) in pieces {
        let mid = continue_sqrt(w(0.5 * (lo + hi)), start);
        total += integrate(
            |t| Ok(num(t) / continue_sqrt(w(t), mid)),
            lo,
            hi,
            1e-14,
            1e-13,
        )?;
    }
    Ok((total, root))
}

/// The exponent `I = ∫ (-2η_k a + 2ω_k c)/√(-Q) dẼ` along the polyline
/// `path`, which starts at the root `E0 = path[0]`. On the first segment
/// `Ẽ = E0 + (E1-E0)s²` removes the square-root endpoint singularity and
/// `√(-Q)` starts from the principal value of `√W(0)`, `-Q = s²W`; later
/// segments continue that branch.
pub fn hyperelliptic_exponent_along(
    xn: &XiNumeric,
    path: &[C],
    k: usize,
    lat: &Lattice64,
) -> Result<C> {
    let e0 = *path
        .first()
        .ok_or_else(|| Error::InvalidInput("empty energy path".into()))?;
    let q = coeffs(&xn.q);
    let scale: f64 = q
        .iter()
        .enumerate()
        .map(|(i, a)| a.norm() * e0.norm().powi(i as i32))
        .sum();
    let q0 = horner(&q, e0).norm();
    if q0 > 1e-9 * scale.max(1.0) {
        return Err(Error::BadBasepoint(q0));
    }
    let r = deflate(&q, e0);
    let others: Vec<C> = roots_c64(&r)?;
    for (n, seg) in path.windows(2).enumerate() {
        for &z in others.iter().chain(if n > 0 { Some(&e0) } else { None }) {
            if (n > 0 || (z - e0).norm() > BRANCH_TOL)
                && segment_distance(seg[0], seg[1], z) < BRANCH_TOL
            {
                return Err(Error::BranchAmbiguity(format!("{z}")));
            }
        }
    }
    let a = coeffs(&xn.a);
    let c = coeffs(&xn.c);
    let (eta, om) = (lat.eta(k), lat.omega(k));
    let f = |et: C| horner(&a, et) * eta * -2.0 + horner(&c, et) * om * 2.0;
    let mut total = C::new(0.0, 0.0);
    let mut root = C::new(0.0, 0.0);
    for (n, seg) in path.windows(2).enumerate() {
        let (p0, delta) = (seg[0], seg[1] - seg[0]);
        if delta.norm() == 0.0 {
            continue;
        }
        let (v, end) = if n == 0 {
            // -Q(Ẽ) = s² W(s) with W(s) = -Δ R(Ẽ(s))
            let w = |s: f64| -delta * horner(&r, e0 + delta * (s * s));
            let num = |s: f64| f(e0 + delta * (s * s)) * delta * 2.0;
            tracked_integral(w, num, w(0.0).sqrt())?
        } else {
            let w = |t: f64| -horner(&q, p0 + delta * t);
            let num = |t: f64| f(p0 + delta * t) * delta;
            tracked_integral(w, num, root)?
        };
        total += v;
        root = end;
    }
    Ok(total)
}

/// [`hyperelliptic_exponent_along`] on the straight segment `E0 → E`.
pub fn hyperelliptic_exponent(xn: &XiNumeric, e: C, k: usize, lat: &Lattice64, e0: C) -> Result<C> {
    hyperelliptic_exponent_along(xn, &[e0, e], k, lat)
}

/// Multiplier by the integral route; `q_k` comes from the ODE route at `E0`.
pub fn monodromy_integral(
    e: C,
    k: usize,
    sd: &SpectralData,
    lat: &Lattice64,
    e0: C,
) -> Result<MonodromyResult> {
    let xn = XiNumeric::new(sd)?;
    monodromy_integral_with(&xn, e, k, lat, e0)
}

pub fn monodromy_integral_with(
    xn: &XiNumeric,
    e: C,
    k: usize,
    lat: &Lattice64,
    e0: C,
) -> Result<MonodromyResult> {
    monodromy_integral_path(xn, &[e0, e], k, lat)
}

/// Integral route along a polyline of energies from the root `path[0]`.
pub fn monodromy_integral_path(
    xn: &XiNumeric,
    path: &[C],
    k: usize,
    lat: &Lattice64,
) -> Result<MonodromyResult> {
    if !matches!(k, 1..=3) {
        return Err(Error::InvalidInput(format!(
            "period index {k} must be 1, 2 or 3"
        )));
    }
    let expo = hyperelliptic_exponent_along(xn, path, k, lat)?;
    let (e0, e) = (path[0], path[path.len() - 1]);
    let at_edge = monodromy_ode(e0, k, xn.l, lat)?;
    let q_k = at_edge.q_k.unwrap_or(0);
    let sign = if q_k == 0 { 1.0 } else { -1.0 };
    let b = (expo * -0.5).exp() * sign;
    Ok(MonodromyResult {
        e,
        k,
        route: Route::Integral,
        multiplier: b,
        multipliers: None,
        q_k: Some(q_k),
        path: json!({
            "E0": [e0.re, e0.im],
            "vertices": path.len(),
            "exponent": [expo.re, expo.im],
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deflation_is_exact_division() {
        // (z - 2)(z + 1)(z - 3i)
        let r = [C::new(2.0, 0.0), C::new(-1.0, 0.0), C::new(0.0, 3.0)];
        let mut p = vec![C::new(1.0, 0.0)];
        for z in r {
            let mut n = vec![C::new(0.0, 0.0); p.len() + 1];
            for (k, v) in p.iter().enumerate() {
                n[k + 1] += v;
                n[k] -= v * z;
            }
            p = n;
        }
        let d = deflate(&p, r[0]);
        let z = C::new(0.4, -0.7);
        assert!((horner(&d, z) - (z - r[1]) * (z - r[2])).norm() < 1e-14);
    }
}
