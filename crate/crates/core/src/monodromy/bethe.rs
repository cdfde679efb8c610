//! Bethe roots `t_1..t_n` (`n = l_0+l_1+l_2+l_3`) and the constant `c` of
//! `Λ̃(x) = Π σ(x+t_j) / (σ^{l_0} Π σ_i^{l_i}) · e^{cx}`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::lambda::XiNumeric;
use crate::algebra::roots::roots_c64;
use crate::elliptic::Lattice64;
use crate::report::complex_value;
use crate::spectral::Coupling;
use crate::{Error, Result};

type C = Complex64;

pub const COLLISION_TOL: f64 = 1e-8;
pub const RESIDUAL_TOL: f64 = 1e-10;
const MAX_ITER: usize = 100;
const MAX_HALVINGS: usize = 20;

#[derive(Clone, Debug)]
pub struct BetheConfig {
    pub l: Coupling,
    pub t: Vec<C>,
    pub c: C,
    pub e: C,
    /// `|F_j|` for the Bethe equations, then the active `δ`-constraints.
    pub residuals: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct BetheSeed {
    pub t: Vec<C>,
    pub c: C,
}

fn half(lat: &Lattice64, i: usize) -> C {
    if i == 0 {
        C::new(0.0, 0.0)
    } else {
        lat.omega(i)
    }
}

fn eta0(lat: &Lattice64, i: usize) -> C {
    if i == 0 {
        C::new(0.0, 0.0)
    } else {
        lat.eta(i)
    }
}

/// Rejects coincident roots and roots on the lattice.
pub fn check_distinct(t: &[C], lat: &Lattice64) -> Result<()> {
    for (j, a) in t.iter().enumerate() {
        if lat.lattice_distance(a) <= COLLISION_TOL {
            return Err(Error::Collision(format!(
                "t_{} = {a} lies on the lattice",
                j + 1
            )));
        }
        for (k, b) in t.iter().enumerate().skip(j + 1) {
            if (a - b).norm() <= COLLISION_TOL {
                return Err(Error::Collision(format!("t_{} = t_{}", j + 1, k + 1)));
            }
        }
    }
    Ok(())
}

struct System<'a> {
    l: Coupling,
    lat: &'a Lattice64,
    n: usize,
    target: Option<C>,
}

impl System<'_> {
    /// Residuals and Jacobian (columns `t_1..t_n, c`).
    fn eval(&self, v: &[C]) -> Result<(Vec<C>, DMatrix<C>)> {
        let (n, lat, l) = (self.n, self.lat, self.l.0);
        let t = &v[..n];
        let c = v[n];
        let mut rows: Vec<(C, Vec<C>)> = Vec::new();
        // Bethe equations
        for j in 0..n {
            let mut f = c;
            let mut jac = vec![C::new(0.0, 0.0); n + 1];
            jac[n] = C::new(1.0, 0.0);
            for k in 0..n {
                if k != j {
                    let s = lat.wp_set(&(t[k] - t[j]))?;
                    f += s.zeta;
                    jac[k] -= s.wp;
                    jac[j] += s.wp;
                }
            }
            for i in 0..4 {
                if l[i] > 0 {
                    let li = f64::from(l[i]);
                    let s = lat.wp_set(&(t[j] - half(lat, i)))?;
                    f += (s.zeta + eta0(lat, i)) * li;
                    jac[j] -= s.wp * li;
                }
            }
            rows.push((f, jac));
        }
        // δ-constraints
        for i in 0..4 {
            if l[i] == 0 {
                continue;
            }
            let mut g = c + eta0(lat, i) * n as f64;
            let mut jac = vec![C::new(0.0, 0.0); n + 1];
            jac[n] = C::new(1.0, 0.0);
            for j in 0..n {
                let s = lat.wp_set(&(t[j] - half(lat, i)))?;
                g += s.zeta;
                jac[j] = -s.wp;
            }
            rows.push((g, jac));
        }
        if let Some(target) = self.target {
            let (e, grad) = energy_and_gradient(self.l, lat, t, c)?;
            rows.push((e - target, grad));
        }
        let m = rows.len();
        let mut jm = DMatrix::zeros(m, n + 1);
        let mut r = Vec::with_capacity(m);
        for (a, (f, jac)) in rows.into_iter().enumerate() {
            r.push(f);
            for (b, v) in jac.into_iter().enumerate() {
                jm[(a, b)] = v;
            }
        }
        Ok((r, jm))
    }
}

fn max_norm(r: &[C]) -> f64 {
    r.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `E` from the eigenvalue formula and `∂E/∂(t, c)`.
fn energy_and_gradient(l: Coupling, lat: &Lattice64, t: &[C], c: C) -> Result<(C, Vec<C>)> {
    let n = t.len();
    let [l0, l1, l2, l3] = l.0.map(f64::from);
    let e = &lat.e;
    let mut en = -c * c
        + e[0] * (l0 * l1 + l2 * l3)
        + e[1] * (l0 * l2 + l1 * l3)
        + e[2] * (l0 * l3 + l1 * l2);
    let mut grad = vec![C::new(0.0, 0.0); n + 1];
    grad[n] = -c * 2.0;
    for i in 1..4 {
        let li = f64::from(l.0[i]);
        let ei = lat.eta(i);
        en -= ei * li * (c * 2.0 + ei * n as f64);
        grad[n] -= ei * li * 2.0;
    }
    // h(y) = ℘'(y) + 2ζ(y)℘(y) is the derivative of ℘(y) - ζ(y)²
    for j in 0..n {
        for i in 0..4 {
            if l.0[i] > 0 {
                let li = f64::from(l.0[i]);
                let s = lat.wp_set(&(t[j] - half(lat, i)))?;
                en -= (s.wp - s.zeta * s.zeta) * li;
                grad[j] -= (s.wpp + s.zeta * s.wp * 2.0) * li;
            }
        }
        for k in 0..n {
            if k != j {
                let s = lat.wp_set(&(t[j] - t[k]))?;
                if j < k {
                    en += s.wp - s.zeta * s.zeta;
                }
                grad[j] += s.wpp + s.zeta * s.wp * 2.0;
            }
        }
    }
    Ok((en, grad))
}

/// Eigenvalue `E(t, c)`.
pub fn bethe_energy(l: Coupling, lat: &Lattice64, t: &[C], c: C) -> Result<C> {
    Ok(energy_and_gradient(l, lat, t, c)?.0)
}

fn newton(sys: &System, seed: &BetheSeed) -> Result<BetheConfig> {
    let n = sys.n;
    if seed.t.len() != n {
        return Err(Error::InvalidInput(format!(
            "expected {n} Bethe roots, got {}",
            seed.t.len()
        )));
    }
    check_distinct(&seed.t, sys.lat)?;
    let mut v: Vec<C> = seed.t.iter().copied().chain([seed.c]).collect();
    let (mut r, mut jac) = sys.eval(&v)?;
    let mut best = max_norm(&r);
    for _ in 0..MAX_ITER {
        if best < 1e-13 {
            break;
        }
        let rhs = DVector::from_iterator(r.len(), r.iter().map(|z| -z));
        let step = jac
            .clone()
            .svd(true, true)
            .solve(&rhs, 1e-13)
            .map_err(|e| Error::NonConvergence(e.to_string()))?;
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..=MAX_HALVINGS {
            let trial: Vec<C> = v
                .iter()
                .zip(step.iter())
                .map(|(a, d)| a + d * lambda)
                .collect();
            if check_distinct(&trial[..n], sys.lat).is_ok() {
                if let Ok((r2, j2)) = sys.eval(&trial) {
                    let m2 = max_norm(&r2);
                    if m2 < best {
                        v = trial;
                        r = r2;
                        jac = j2;
                        best = m2;
                        accepted = true;
                        break;
                    }
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    if best >= RESIDUAL_TOL {
        return Err(Error::Divergence(best));
    }
    check_distinct(&v[..n], sys.lat)?;
    let t = v[..n].to_vec();
    let c = v[n];
    let e = bethe_energy(sys.l, sys.lat, &t, c)?;
    let nb = n + sys.l.0.iter().filter(|&&x| x > 0).count();
    Ok(BetheConfig {
        l: sys.l,
        t,
        c,
        e,
        residuals: r[..nb].iter().map(|z| z.norm()).collect(),
    })
}

/// Damped Gauss–Newton on the Bethe equations and `δ`-constraints from `seed`.
pub fn bethe_solve(l: Coupling, lat: &Lattice64, seed: &BetheSeed) -> Result<BetheConfig> {
    let sys = System {
        l,
        lat,
        n: l.total() as usize,
        target: None,
    };
    newton(&sys, seed)
}

/// Same system with the extra equation `E(t, c) = target`.
pub fn bethe_solve_energy(
    l: Coupling,
    lat: &Lattice64,
    target: C,
    seed: &BetheSeed,
) -> Result<BetheConfig> {
    let sys = System {
        l,
        lat,
        n: l.total() as usize,
        target: Some(target),
    };
    newton(&sys, seed)
}

/// Newton for `℘(t) = z` from a grid of starts; `t` reduced to the
/// fundamental parallelogram around 0.
pub fn wp_inverse(lat: &Lattice64, z: C) -> Result<C> {
    let (w1, w3) = (lat.omega1 * 2.0, lat.omega3 * 2.0);
    let tol = 1e-13 * (1.0 + z.norm());
    let grid = [0.125, 0.375, 0.625, 0.875];
    for &a in &grid {
        for &b in &grid {
            let mut t = w1 * a + w3 * b;
            for _ in 0..60 {
                let Ok(s) = lat.wp_set(&t) else { break };
                let f = s.wp - z;
                if f.norm() <= tol {
                    let (p, _, _) = lat.nearest_lattice_point(&t);
                    return Ok(t - p);
                }
                if s.wpp.norm() == 0.0 {
                    break;
                }
                t -= f / s.wpp;
            }
        }
    }
    Err(Error::NonConvergence(format!("no preimage of {z} under ℘")))
}

/// Starting points for an energy-targeted solve: `℘(t_j)` are the zeros of
/// `Ξ(·,E)` in `z`, tried with every sign pattern, then random points.
pub fn energy_seeds(
    xn: &XiNumeric,
    lat: &Lattice64,
    e: C,
    random: usize,
    rng_seed: u64,
) -> Result<Vec<BetheSeed>> {
    let l = xn.l;
    let n = l.total() as usize;
    let mut out = Vec::new();
    let num = xn.numerator_in_z(e, &lat.e);
    if num.len() == n + 1 {
        let zs = roots_c64(&num)?;
        let base: Vec<C> = zs.iter().filter_map(|&z| wp_inverse(lat, z).ok()).collect();
        if base.len() == n {
            for mask in 0..(1u32 << n) {
                let t: Vec<C> = (0..n)
                    .map(|j| {
                        if mask >> j & 1 == 1 {
                            -base[j]
                        } else {
                            base[j]
                        }
                    })
                    .collect();
                if let Some(c) = seed_c(l, lat, &t) {
                    out.push(BetheSeed { t, c });
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let (w1, w3) = (lat.omega1 * 2.0, lat.omega3 * 2.0);
    for _ in 0..random {
        let t: Vec<C> = (0..n)
            .map(|_| w1 * rng.random_range(0.05..0.95) + w3 * rng.random_range(0.05..0.95))
            .collect();
        if let Some(c) = seed_c(l, lat, &t) {
            out.push(BetheSeed { t, c });
        }
    }
    Ok(out)
}

/// `c` solving the first active constraint for given `t`.
fn seed_c(l: Coupling, lat: &Lattice64, t: &[C]) -> Option<C> {
    let n = t.len() as f64;
    let i = (0..4).find(|&i| l.0[i] > 0)?;
    let mut s = eta0(lat, i) * n;
    for tj in t {
        s += lat.zeta(&(tj - half(lat, i))).ok()?;
    }
    Some(-s)
}

/// Bethe configuration at energy `e`, from [`energy_seeds`].
pub fn bethe_at_energy(
    xn: &XiNumeric,
    lat: &Lattice64,
    e: C,
    rng_seed: u64,
) -> Result<BetheConfig> {
    let mut best = f64::INFINITY;
    for seed in energy_seeds(xn, lat, e, 32, rng_seed)? {
        match bethe_solve_energy(xn.l, lat, e, &seed) {
            Ok(b) => return Ok(b),
            Err(Error::Divergence(r)) => best = best.min(r),
            Err(_) => {}
        }
    }
    Err(Error::Divergence(best))
}

/// `Λ̃(x+2ω_k) = B Λ̃(x)` with `B = exp(2η_k Σt_j + 2ω_k c) · Π_{i∉{0,k}} (-1)^{l_i}`,
/// from the quasi-periodicity of `σ` and `σ_i`.
pub fn bethe_multiplier(b: &BetheConfig, k: usize, lat: &Lattice64) -> Result<C> {
    if !matches!(k, 1..=3) {
        return Err(Error::InvalidInput(format!(
            "period index {k} must be 1, 2 or 3"
        )));
    }
    let sum: C = b.t.iter().sum();
    let flips: u32 = (1..4).filter(|&i| i != k).map(|i| b.l.0[i]).sum();
    let sign = if flips.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok((lat.eta(k) * sum * 2.0 + lat.omega(k) * b.c * 2.0).exp() * sign)
}

/// The printed form `exp(2η_k Σt_j + 2ω_k (c - Σζ(t_j)))`, kept for comparison.
pub fn bethe_multiplier_printed(b: &BetheConfig, k: usize, lat: &Lattice64) -> Result<C> {
    let sum: C = b.t.iter().sum();
    let mut zs = C::new(0.0, 0.0);
    for t in &b.t {
        zs += lat.zeta(t)?;
    }
    Ok((lat.eta(k) * sum * 2.0 + lat.omega(k) * (b.c - zs) * 2.0).exp())
}

/// `Λ̃'/Λ̃` and its derivative at `x`.
pub fn bethe_log_derivative(b: &BetheConfig, lat: &Lattice64, x: C) -> Result<(C, C)> {
    let mut y = b.c;
    let mut yp = C::new(0.0, 0.0);
    for t in &b.t {
        let s = lat.wp_set(&(x + t))?;
        y += s.zeta;
        yp -= s.wp;
    }
    for i in 0..4 {
        if b.l.0[i] > 0 {
            let li = f64::from(b.l.0[i]);
            let s = lat.wp_set(&(x + half(lat, i)))?;
            y -= (s.zeta - eta0(lat, i)) * li;
            yp += s.wp * li;
        }
    }
    Ok((y, yp))
}

/// `|(H-E)Λ̃| / |Λ̃|` at `x`.
pub fn bethe_eigen_residual(b: &BetheConfig, lat: &Lattice64, x: C) -> Result<f64> {
    let (y, yp) = bethe_log_derivative(b, lat, x)?;
    let u = super::ode::potential(b.l, lat, x)?;
    Ok((-(yp + y * y) + u - b.e).norm())
}

impl BetheConfig {
    pub fn to_json(&self) -> Value {
        let c = |z: &C| complex_value(z, 17);
        json!({
            "l": self.l.0,
            "t": self.t.iter().map(c).collect::<Vec<_>>(),
            "c": c(&self.c),
            "E": c(&self.e),
            "residuals": self.residuals,
        })
    }
}
