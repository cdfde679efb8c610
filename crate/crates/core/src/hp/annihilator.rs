//! Monic operator of least order annihilating a finite basis.

use rug::Rational;

use super::diffop::DiffOp;
use super::elem::{Elem, RatZ};
use crate::algebra::linalg::solve_fraction_free;
use crate::algebra::Poly;
use crate::{Error, Result};

/// `Π_{i ∈ mask} (z - e_i)` applied to `r`.
fn mul_mask(r: &RatZ, mask: u8, f: &super::elem::FieldCtx) -> RatZ {
    let mut out = r.clone();
    for i in 0..3 {
        if mask & (1 << i) != 0 {
            out = out.mul_lin(i, f);
        }
    }
    out
}

/// Writes `y / det` in the pole-at-roots form, or fails if `det / gcd` has a
/// factor other than the `z - e_i`.
fn to_ratz(y: &Poly, det: &Poly, f: &super::elem::FieldCtx) -> Result<RatZ> {
    if y.is_zero() {
        return Ok(RatZ::zero());
    }
    let g = y.gcd(det);
    let mut num = y.div_exact(&g).unwrap();
    let mut den = det.div_exact(&g).unwrap();
    let mut pole = [0u32; 3];
    for i in 0..3 {
        while let Some(q) = den.div_exact(&f.lin[i]) {
            if q.is_zero() {
                break;
            }
            den = q;
            pole[i] += 1;
        }
    }
    if !den.is_constant() {
        return Err(Error::ApparentSingularity(format!(
            "denominator factor {den:?}"
        )));
    }
    num = num.scale(&(Rational::from(1) / den.coeff(0)));
    Ok(RatZ { num, pole }.canonical(f))
}

/// Monic `L` of order `basis.len()` with `L f = 0` for every basis element.
///
/// All basis elements must carry the same half-power pattern.
pub fn annihilator(basis: &[Elem]) -> Result<DiffOp> {
    let first = basis
        .first()
        .ok_or_else(|| Error::InvalidInput("empty basis".into()))?;
    let ctx = first.field().clone();
    let fc = &*ctx;
    let mut mu = None;
    for b in basis {
        first.check_field(b)?;
        let p = b.parity().ok_or(if b.is_zero() {
            Error::DependentBasis
        } else {
            Error::MixedParity
        })?;
        if *mu.get_or_insert(p) != p {
            return Err(Error::MixedParity);
        }
    }
    let mu = mu.unwrap();
    let n = basis.len();
    // coefficient c_k carries S^{nu_k}, nu_k = 7 when n - k is odd
    let nu = |k: usize| if (n - k) % 2 == 1 { 7u8 } else { 0 };
    let m_of = |k: usize| if k % 2 == 1 { mu ^ 7 } else { mu };

    let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(n);
    let mut rhs: Vec<Poly> = Vec::with_capacity(n);
    for b in basis {
        let mut d = b.clone();
        let mut entries: Vec<RatZ> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            if k > 0 {
                d = d.ddx();
            }
            let r = d.term(m_of(k)).clone();
            if k < n {
                entries.push(mul_mask(&r, nu(k) & m_of(k), fc));
            } else {
                entries.push(r.neg());
            }
        }
        let top = [0, 1, 2].map(|i| entries.iter().map(|r| r.pole[i]).max().unwrap_or(0));
        let cleared: Vec<Poly> = entries
            .iter()
            .map(|r| {
                let mut p = r.num.clone();
                for i in 0..3 {
                    for _ in r.pole[i]..top[i] {
                        p = &p * &fc.lin[i];
                    }
                }
                p
            })
            .collect();
        rhs.push(cleared[n].clone());
        rows.push(cleared[..n].to_vec());
    }
    let (det, y) = solve_fraction_free(&rows, &rhs).ok_or(Error::DependentBasis)?;
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..n {
        let g = to_ratz(&y[k], &det, fc)?;
        coeffs.push(Elem::from_ratz(&ctx, nu(k), g));
    }
    coeffs.push(Elem::one(&ctx));
    let op = DiffOp::new(&ctx, coeffs);
    for (j, b) in basis.iter().enumerate() {
        if !op.apply(b)?.is_zero() {
            return Err(Error::ClosureFailure(format!(
                "annihilator does not kill basis element {j}"
            )));
        }
    }
    Ok(op)
}
