//! Complex roots of rational polynomials: Aberth–Ehrlich in `f64`, then
//! Newton polishing at the target precision.

use num_complex::Complex64;

use super::poly::Poly;
use crate::num::CNum;
use crate::{Error, Result};

const MAX_ITER: usize = 2000;

fn aberth_f64(p: &Poly) -> Result<Vec<Complex64>> {
    let c: Vec<Complex64> = p
        .coeffs()
        .iter()
        .map(|a| Complex64::new(a.to_f64(), 0.0))
        .collect();
    roots_c64(&c)
}

/// Roots of `Σ c_k z^k` (ascending, nonzero leading coefficient) by
/// Aberth–Ehrlich iteration.
pub fn roots_c64(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    // Cauchy bound
    let r = 1.0 + c[..n].iter().map(|a| (a / lead).norm()).fold(0.0, f64::max);
    let horner = |z: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for a in c.iter().rev() {
            d = d * z + v;
            v = v * z + a;
        }
        (v, d)
    };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                0.5 * r,
                2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4,
            )
        })
        .collect();
    for _ in 0..MAX_ITER {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (v, d) = horner(z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let w = v / d;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| 1.0 / (z[k] - z[j]))
                .sum();
            let step = w / (1.0 - w * s);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / z[k].norm().max(1e-300));
            }
        }
        if moved < 1e-15 {
            return Ok(z);
        }
    }
    // accept if residuals are small relative to the coefficient scale
    let scale: f64 = c.iter().map(|a| a.norm()).sum();
    if z.iter()
        .all(|&zz| horner(zz).0.norm() <= 1e-8 * scale * (1.0 + zz.norm()).powi(n as i32))
    {
        Ok(z)
    } else {
        Err(Error::NonConvergence(
            "Aberth iteration did not converge".into(),
        ))
    }
}

/// All complex roots of `p`, repeated by multiplicity, at the precision of
/// `like` (which only supplies the precision).
pub fn roots<T: CNum>(p: &Poly, like: &T) -> Result<Vec<T>> {
    Ok(roots_with_multiplicity(p, like)?
        .into_iter()
        .flat_map(|(z, m)| std::iter::repeat_n(z, m))
        .collect())
}

/// Distinct roots with multiplicities from the squarefree decomposition.
pub fn roots_with_multiplicity<T: CNum>(p: &Poly, like: &T) -> Result<Vec<(T, usize)>> {
    let mut out = Vec::new();
    for (f, m) in p.squarefree() {
        for z in squarefree_roots(&f, like)? {
            out.push((z, m));
        }
    }
    Ok(out)
}

fn squarefree_roots<T: CNum>(f: &Poly, like: &T) -> Result<Vec<T>> {
    let fp = f.derivative();
    let approx = aberth_f64(f)?;
    let eps = like.epsilon();
    let mut out = Vec::with_capacity(approx.len());
    for z0 in approx {
        let mut z = like.lift(z0.re, z0.im);
        let mut ok = false;
        for _ in 0..100 {
            let v = f.eval_num(&z);
            // rounding floor of Horner's rule at z
            let r = z.abs();
            let floor = 16.0
                * eps
                * f.coeffs()
                    .iter()
                    .rev()
                    .fold(0.0, |acc, c| acc * r + c.to_f64().abs());
            let step = v.clone() / fp.eval_num(&z);
            z = z - &step;
            if step.abs() <= 4.0 * eps * z.abs().max(1.0) || v.abs() <= floor {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::NonConvergence(format!(
                "Newton polishing stalled near {z0}"
            )));
        }
        out.push(z);
    }
    Ok(out)
}
