//! Direct Floquet computation: the transfer matrix of `f'' = (u - E) f`
//! along a straight path `x0 → x0 + 2ω_k`, by Dormand–Prince 5(4).

use num_complex::Complex64;
use serde_json::json;

use super::{MonodromyResult, Route};
use crate::elliptic::Lattice64;
use crate::spectral::Coupling;
use crate::{Error, Result};

type C = Complex64;

const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const CN: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
/// Fifth-order weights minus the embedded fourth-order ones.
const E: [f64; 7] = [
    35.0 / 384.0 - 5179.0 / 57600.0,
    0.0,
    500.0 / 1113.0 - 7571.0 / 16695.0,
    125.0 / 192.0 - 393.0 / 640.0,
    -2187.0 / 6784.0 + 92097.0 / 339200.0,
    11.0 / 84.0 - 187.0 / 2100.0,
    -1.0 / 40.0,
];

const MAX_STEPS: usize = 200_000;

/// Integrates `y' = rhs(t, y)` for `y ∈ C^N` from `t = 0` to `t = 1` with
/// mixed absolute/relative local error `tol`.
pub fn dopri5<const N: usize, F>(mut rhs: F, y0: [C; N], tol: f64) -> Result<[C; N]>
where
    F: FnMut(f64, &[C; N]) -> Result<[C; N]>,
{
    let mut t: f64 = 0.0;
    let mut y = y0;
    let mut h: f64 = 0.01;
    let mut k = [[C::new(0.0, 0.0); N]; 7];
    k[0] = rhs(t, &y)?;
    for _ in 0..MAX_STEPS {
        if t >= 1.0 {
            return Ok(y);
        }
        h = h.min(1.0 - t);
        for s in 1..7 {
            let mut ys = y;
            for (n, v) in ys.iter_mut().enumerate() {
                for j in 0..s {
                    if A[s - 1][j] != 0.0 {
                        *v += k[j][n] * (h * A[s - 1][j]);
                    }
                }
            }
            k[s] = rhs(t + CN[s] * h, &ys)?;
        }
        // the seventh stage is evaluated at the fifth-order solution
        let mut y5 = y;
        for (n, v) in y5.iter_mut().enumerate() {
            for j in 0..6 {
                *v += k[j][n] * (h * A[5][j]);
            }
        }
        let mut err: f64 = 0.0;
        for n in 0..N {
            let mut e = C::new(0.0, 0.0);
            for j in 0..7 {
                e += k[j][n] * E[j];
            }
            let sc = tol * (1.0 + y[n].norm().max(y5[n].norm()));
            err = err.max((e * h).norm() / sc);
        }
        if err <= 1.0 {
            t += h;
            y = y5;
            k[0] = k[6];
        }
        let fac = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= fac;
        if h < 1e-14 {
            return Err(Error::NonConvergence(format!(
                "step size underflow at t = {t}"
            )));
        }
    }
    Err(Error::NonConvergence("too many steps".into()))
}

/// `u(x) = Σ l_i(l_i+1) ℘(x + ω_i)`, with `℘(x+ω_i) = e_i + K_i/(℘(x) - e_i)`.
pub fn potential(l: Coupling, lat: &Lattice64, x: C) -> Result<C> {
    let z = lat.wp(&x)?;
    let mut u = z * f64::from(l.0[0] * (l.0[0] + 1));
    for i in 1..4 {
        let li = l.0[i];
        if li > 0 {
            let (ei, ej, ek) = (lat.e[i - 1], lat.e[i % 3], lat.e[(i + 1) % 3]);
            u += (ei + (ei - ej) * (ei - ek) / (z - ei)) * f64::from(li * (li + 1));
        }
    }
    Ok(u)
}

/// Singular points of `u`: `ω_i + Λ` for `l_i > 0`.
fn pole_distance(l: Coupling, lat: &Lattice64, x: C) -> f64 {
    let mut d = f64::INFINITY;
    for i in 0..4 {
        if l.0[i] > 0 {
            let w = if i == 0 {
                C::new(0.0, 0.0)
            } else {
                lat.omega(i)
            };
            d = d.min(lat.lattice_distance(&(x - w)));
        }
    }
    d
}

/// Base point for the period path: `(ω1 + ω3)/2` or a nearby shift keeping
/// the path `0.1·min|2ω|` away from the poles of `u`.
pub fn ode_base_point(l: Coupling, lat: &Lattice64, k: usize) -> Result<C> {
    let w1 = lat.omega1;
    let w3 = lat.omega3;
    let step = lat.omega(k) * 2.0;
    let need = 0.1 * (2.0 * w1.norm()).min(2.0 * w3.norm());
    let shifts = [0.0, 0.15, -0.15, 0.3, -0.3, 0.45, -0.45];
    for &a in &shifts {
        for &b in &shifts {
            let x0 = (w1 + w3) * 0.5 + w1 * a + w3 * b;
            let ok =
                (0..=256).all(|j| pole_distance(l, lat, x0 + step * (j as f64 / 256.0)) >= need);
            if ok {
                return Ok(x0);
            }
        }
    }
    Err(Error::PolePath)
}

/// Transfer matrix `[[f1, f2], [f1', f2']]` over `x0 → x0 + 2ω_k`.
pub fn transfer_matrix(e: C, k: usize, l: Coupling, lat: &Lattice64) -> Result<([[C; 2]; 2], C)> {
    let x0 = ode_base_point(l, lat, k)?;
    let step = lat.omega(k) * 2.0;
    let one = C::new(1.0, 0.0);
    let zero = C::new(0.0, 0.0);
    let y = dopri5(
        |t, y: &[C; 4]| {
            let q = potential(l, lat, x0 + step * t)? - e;
            Ok([y[1] * step, y[0] * q * step, y[3] * step, y[2] * q * step])
        },
        [one, zero, zero, one],
        1e-13,
    )?;
    Ok(([[y[0], y[2]], [y[1], y[3]]], x0))
}

/// Eigenvalues of a 2×2 matrix.
pub fn eigenvalues2(m: &[[C; 2]; 2]) -> [C; 2] {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = (tr * tr - det * 4.0).sqrt();
    [(tr + disc) * 0.5, (tr - disc) * 0.5]
}

/// Floquet multipliers of `(H - E) f = 0` for the period `2ω_k`.
pub fn monodromy_ode(e: C, k: usize, l: Coupling, lat: &Lattice64) -> Result<MonodromyResult> {
    if !matches!(k, 1..=3) {
        return Err(Error::InvalidInput(format!(
            "period index {k} must be 1, 2 or 3"
        )));
    }
    let (m, x0) = transfer_matrix(e, k, l, lat)?;
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let lam = eigenvalues2(&m);
    let tr = m[0][0] + m[1][1];
    // at a band edge both multipliers are ±1; the sign of the trace decides
    let q_k = if tr.re >= 0.0 { 0 } else { 1 };
    Ok(MonodromyResult {
        e,
        k,
        route: Route::Ode,
        multiplier: lam[0],
        multipliers: Some(lam),
        q_k: Some(q_k),
        path: json!({
            "x0": [x0.re, x0.im],
            "det": [det.re, det.im],
            "trace": [tr.re, tr.im],
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator() {
        // y'' = -y on [0, 1]: cos 1
        let y = dopri5(
            |_, y: &[C; 2]| Ok([y[1], -y[0]]),
            [C::new(1.0, 0.0), C::new(0.0, 0.0)],
            1e-12,
        )
        .unwrap();
        assert!((y[0].re - 1f64.cos()).abs() < 1e-10);
    }

    #[test]
    fn free_multipliers() {
        let lat = Lattice64::from_periods_f64(C::new(0.5, 0.0), C::new(0.1, 0.7)).unwrap();
        let e = C::new(std::f64::consts::PI.powi(2), 0.0);
        for k in [1, 3] {
            let r = monodromy_ode(e, k, Coupling([0; 4]), &lat).unwrap();
            let w = (-e).sqrt() * lat.omega(k) * 2.0;
            let want = [w.exp(), (-w).exp()];
            let got = r.multipliers.unwrap();
            let ok = |a: C, b: C| (a - b).norm() < 1e-8 * (1.0 + b.norm());
            assert!(
                (ok(got[0], want[0]) && ok(got[1], want[1]))
                    || (ok(got[0], want[1]) && ok(got[1], want[0]))
            );
        }
    }
}
