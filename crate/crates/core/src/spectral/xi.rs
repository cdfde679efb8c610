//! `Ξ(x,E)` from its doubly periodic ansatz, the spectral polynomial `Q(E)`
//! and the derivative-basis coefficients `a(E)`, `c(E)`.

use rug::Rational;
use serde_json::{json, Map, Value};

use super::{build_a, Coupling};
use crate::algebra::linalg::nullspace;
use crate::algebra::{Poly, RatFunc};
use crate::hp::{op_right_reduce, DiffOp, Elem, Field};
use crate::report::poly_value;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct SpectralData {
    pub l: Coupling,
    pub g: u32,
    /// Constant term of `Ξ` in the basis `{1, ℘(x+ω_i)^k}`.
    pub c0: Poly,
    /// `b[i][j]` multiplies `℘(x+ω_i)^{l_i - j}`.
    pub b: [Vec<Poly>; 4],
    /// `xi[p]` is the coefficient of `E^p`, a function of `x`.
    pub xi: Vec<Elem>,
    pub q: Poly,
    pub a: Poly,
    pub c: Poly,
    /// `a_parts[i][j]` multiplies `(d/dx)^{2j} ℘(x+ω_i)`.
    pub a_parts: [Vec<Poly>; 4],
}

/// `(d/dx)^{2j} ℘` as a polynomial in `℘`, for `j = 0..n`.
pub fn even_derivative_polys(n: usize, g2: &Rational, g3: &Rational) -> Vec<Poly> {
    // (℘')² = 4℘³ - g2 ℘ - g3,  ℘'' = 6℘² - g2/2
    let wp1sq = Poly::from_coeffs(vec![
        -g3.clone(),
        -g2.clone(),
        Rational::new(),
        Rational::from(4),
    ]);
    let wp2 = Poly::from_coeffs(vec![
        -g2.clone() / Rational::from(2),
        Rational::new(),
        Rational::from(6),
    ]);
    let mut out = Vec::with_capacity(n);
    let mut cur = Poly::x();
    for _ in 0..n {
        let d1 = cur.derivative();
        let next = &(&d1.derivative() * &wp1sq) + &(&d1 * &wp2);
        out.push(std::mem::replace(&mut cur, next));
    }
    out
}

/// The ansatz functions `1, ℘(x+ω_i)^k (1 ≤ k ≤ l_i)` with their labels.
fn ansatz_basis(ctx: &Field, l: Coupling) -> Vec<(Option<(usize, u32)>, Elem)> {
    let mut out = vec![(None, Elem::one(ctx))];
    for i in 0..4 {
        let w = Elem::wp_shift(ctx, i);
        let mut p = Elem::one(ctx);
        for k in 1..=l.0[i] {
            p = &p * &w;
            out.push((Some((i, k)), p.clone()));
        }
    }
    out
}

/// `(∂³ - 4u∂ - 2u')f` and `4∂f`; `(∂³ - 4(u - E)∂ - 2u')f` is their
/// combination `P0 + E·P1`.
fn prod_de_parts(f: &Elem, u: &Elem, up: &Elem) -> (Elem, Elem) {
    let f1 = f.ddx();
    let f3 = f1.ddx().ddx();
    let p0 = &(&f3 - &(u * &f1).scale(&Rational::from(4))) - &(up * f).scale(&Rational::from(2));
    (p0, f1.scale(&Rational::from(4)))
}

fn potential(ctx: &Field, l: Coupling) -> Elem {
    DiffOp::hamiltonian(ctx, l.as_i64()).coeff(0).clone()
}

fn poly_lcm(a: &Poly, b: &Poly) -> Poly {
    (a * b)
        .div_exact(&a.gcd(b))
        .expect("gcd divides the product")
}

pub fn spectral_data(ctx: &Field, l: Coupling) -> Result<SpectralData> {
    let g = l.genus();
    let basis = ansatz_basis(ctx, l);
    let u = potential(ctx, l);
    let up = u.ddx();
    let parts: Vec<(Elem, Elem)> = basis
        .iter()
        .map(|(_, f)| prod_de_parts(f, &u, &up))
        .collect();
    // every part is S^{1,2,3} times a rational function of z
    let mut top = [0u32; 3];
    for (p0, p1) in &parts {
        for e in [p0, p1] {
            for (mu, r) in e.terms() {
                if mu != 7 {
                    return Err(Error::AnsatzFailure(format!(
                        "unexpected half-power pattern {mu}"
                    )));
                }
                for i in 0..3 {
                    top[i] = top[i].max(r.pole[i]);
                }
            }
        }
    }
    let clear = |e: &Elem| -> Poly {
        let r = e.term(7);
        let mut p = r.num.clone();
        for i in 0..3 {
            for _ in r.pole[i]..top[i] {
                p = &p * &ctx.lin[i];
            }
        }
        p
    };
    let cols: Vec<(Poly, Poly)> = parts
        .iter()
        .map(|(p0, p1)| (clear(p0), clear(p1)))
        .collect();
    let nrows = cols
        .iter()
        .map(|(a, b)| a.coeffs().len().max(b.coeffs().len()))
        .max()
        .unwrap_or(0);
    let matrix: Vec<Vec<RatFunc>> = (0..nrows)
        .map(|r| {
            cols.iter()
                .map(|(a, b)| RatFunc::from_poly(Poly::from_coeffs(vec![a.coeff(r), b.coeff(r)])))
                .collect()
        })
        .collect();
    let ns = nullspace(&matrix, basis.len());
    if ns.len() != 1 {
        return Err(Error::AnsatzFailure(format!(
            "solution space has dimension {} for {l}",
            ns.len()
        )));
    }
    // clear denominators, remove content, make c0 monic
    let v = &ns[0];
    let den = v.iter().fold(Poly::one(), |acc, r| poly_lcm(&acc, r.den()));
    let mut coeffs: Vec<Poly> = v
        .iter()
        .map(|r| (r.num() * &den).div_exact(r.den()).unwrap())
        .collect();
    let content = coeffs.iter().fold(Poly::zero(), |acc, p| acc.gcd(p));
    coeffs = coeffs
        .iter()
        .map(|p| p.div_exact(&content).unwrap())
        .collect();
    if coeffs[0].is_zero() {
        return Err(Error::AnsatzFailure(
            "constant coefficient c0 vanishes".into(),
        ));
    }
    let lead = Rational::from(1) / coeffs[0].lead();
    coeffs = coeffs.iter().map(|p| p.scale(&lead)).collect();
    let c0 = coeffs[0].clone();
    if c0.deg() != g as usize
        || coeffs[1..]
            .iter()
            .any(|p| !p.is_zero() && p.deg() >= g as usize)
    {
        return Err(Error::AnsatzFailure(format!(
            "E-degrees do not match genus {g}"
        )));
    }
    let mut b: [Vec<Poly>; 4] = std::array::from_fn(|i| vec![Poly::zero(); l.0[i] as usize]);
    for ((label, _), p) in basis.iter().zip(&coeffs).skip(1) {
        let (i, k) = label.unwrap();
        b[i][(l.0[i] - k) as usize] = p.clone();
    }
    // Ξ as a polynomial in E with function coefficients
    let xi: Vec<Elem> = (0..=g as usize)
        .map(|p| {
            basis
                .iter()
                .zip(&coeffs)
                .fold(Elem::zero(ctx), |acc, ((_, f), c)| {
                    let cp = c.coeff(p);
                    if cp == 0 {
                        acc
                    } else {
                        &acc + &f.scale(&cp)
                    }
                })
        })
        .collect();
    check_prod_de(&xi, &u, &up)?;
    let q = spectral_polynomial(&xi, &u)?;
    if q.deg() != 2 * g as usize + 1 || q.lead() != 1 {
        return Err(Error::AnsatzFailure(format!(
            "Q has degree {} (expected {})",
            q.deg(),
            2 * g + 1
        )));
    }
    let (a, c, a_parts) = derivative_basis(ctx, l, &c0, &b);
    Ok(SpectralData {
        l,
        g,
        c0,
        b,
        xi,
        q,
        a,
        c,
        a_parts,
    })
}

/// `(∂³ - 4(u - E)∂ - 2u') Ξ = 0`, coefficient by coefficient in `E`.
fn check_prod_de(xi: &[Elem], u: &Elem, up: &Elem) -> Result<()> {
    for p in 0..=xi.len() {
        let mut acc = match xi.get(p) {
            Some(f) => prod_de_parts(f, u, up).0,
            None => Elem::zero(u.field()),
        };
        if p > 0 {
            acc = &acc + &xi[p - 1].ddx().scale(&Rational::from(4));
        }
        if !acc.is_zero() {
            return Err(Error::AnsatzFailure(format!(
                "Ξ fails the product equation at E^{p}"
            )));
        }
    }
    Ok(())
}

/// `Q(E) = Ξ²(E - u) + ½ΞΞ'' - ¼Ξ'²`, with the `x`-independence of every
/// coefficient checked.
pub fn spectral_polynomial(xi: &[Elem], u: &Elem) -> Result<Poly> {
    let ctx = u.field();
    let d1: Vec<Elem> = xi.iter().map(Elem::ddx).collect();
    let d2: Vec<Elem> = d1.iter().map(Elem::ddx).collect();
    let n = xi.len();
    let half = Rational::from((1, 2));
    let quarter = Rational::from((1, 4));
    let mut q = Vec::with_capacity(2 * n);
    for p in 0..2 * n {
        let mut acc = Elem::zero(ctx);
        for a in 0..n {
            if p < a || p - a >= n {
                continue;
            }
            let b = p - a;
            let prod = &xi[a] * &xi[b];
            acc = &acc - &(u * &prod);
            acc = &acc + &(&xi[a] * &d2[b]).scale(&half);
            acc = &acc - &(&d1[a] * &d1[b]).scale(&quarter);
        }
        for a in 0..n {
            if p >= 1 && p > a && p - 1 - a < n {
                acc = &acc + &(&xi[a] * &xi[p - 1 - a]);
            }
        }
        let c = acc.as_constant().ok_or_else(|| {
            Error::AnsatzFailure(format!("coefficient of E^{p} in Q depends on x"))
        })?;
        q.push(c);
    }
    Ok(Poly::from_coeffs(q))
}

/// Rewrites `Σ_j b_j^{(i)} ℘_i^{l_i-j}` as `Σ_j a_j^{(i)} (d/dx)^{2j}℘_i`
/// plus a constant, which is folded into `c(E)`.
fn derivative_basis(
    ctx: &Field,
    l: Coupling,
    c0: &Poly,
    b: &[Vec<Poly>; 4],
) -> (Poly, Poly, [Vec<Poly>; 4]) {
    let maxl = *l.0.iter().max().unwrap() as usize;
    let dpolys = even_derivative_polys(maxl, &ctx.g2, &ctx.g3);
    let mut c = c0.clone();
    let mut parts: [Vec<Poly>; 4] = std::array::from_fn(|i| vec![Poly::zero(); l.0[i] as usize]);
    for i in 0..4 {
        let li = l.0[i] as usize;
        // coefficient of ℘_i^k, k = 0..=li
        let mut w: Vec<Poly> = vec![Poly::zero(); li + 1];
        for (j, bj) in b[i].iter().enumerate() {
            w[li - j] = bj.clone();
        }
        for k in (1..=li).rev() {
            let dp = &dpolys[k - 1];
            let coef = w[k].scale(&(Rational::from(1) / dp.lead()));
            for (m, dm) in dp.coeffs().iter().enumerate() {
                if *dm != 0 {
                    w[m] = &w[m] - &coef.scale(dm);
                }
            }
            parts[i][k - 1] = coef;
        }
        c = &c + &w[0];
    }
    let a = parts
        .iter()
        .filter_map(|p| p.first())
        .fold(Poly::zero(), |acc, p| &acc + p);
    (a, c, parts)
}

impl SpectralData {
    pub fn to_json(&self) -> Value {
        let mut b = Map::new();
        for i in 0..4 {
            for (j, p) in self.b[i].iter().enumerate() {
                b.insert(format!("{i},{j}"), poly_value(p));
            }
        }
        json!({
            "l": self.l.0.to_vec(),
            "g": self.g,
            "Q": poly_value(&self.q),
            "a": poly_value(&self.a),
            "c": poly_value(&self.c),
            "Xi": { "c0": poly_value(&self.c0), "b": Value::Object(b) },
        })
    }
}

/// Outcome of the exact operator checks for one coupling vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub l: Coupling,
    pub g: u32,
    pub a_commutes: bool,
    pub a_squared_plus_q: bool,
    pub xi_matches_reduction: bool,
    pub c_all_zero: bool,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.a_commutes && self.a_squared_plus_q && self.xi_matches_reduction && self.c_all_zero
    }
}

/// `A² + Q(H) = 0` and the reduction of `A` by `H` reproducing `Ξ` with all
/// `c_j = 0`; any failure is a [`Error::RelationFailure`].
pub fn verify_a_relations(ctx: &Field, l: Coupling) -> Result<RelationReport> {
    let a = build_a(ctx, l)?;
    let sd = spectral_data(ctx, l)?;
    let g = sd.g as usize;
    let h = DiffOp::hamiltonian(ctx, l.as_i64());
    let qh = DiffOp::poly_of_h(h.coeff(0), &sd.q)?;
    if !a.compose(&a)?.add(&qh)?.is_zero() {
        return Err(Error::RelationFailure(format!("A² + Q(H) ≠ 0 for {l}")));
    }
    let terms = op_right_reduce(&a, &h, g)?;
    for (j, t) in terms.iter().enumerate() {
        if t.a != sd.xi[g - j] {
            return Err(Error::RelationFailure(format!(
                "a_{j} = {:?} but the E^{} coefficient of Ξ is {:?}",
                t.a,
                g - j,
                sd.xi[g - j]
            )));
        }
        if t.c != 0 {
            return Err(Error::RelationFailure(format!(
                "c_{j} = {} ≠ 0 for {l}",
                t.c
            )));
        }
    }
    Ok(RelationReport {
        l,
        g: sd.g,
        a_commutes: true,
        a_squared_plus_q: true,
        xi_matches_reduction: true,
        c_all_zero: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::ExactRoots;
    use crate::hp::field;

    #[test]
    fn derivative_polys() {
        let d = even_derivative_polys(3, &Rational::from(28), &Rational::from(24));
        assert_eq!(d[0], Poly::x());
        assert_eq!(d[1], Poly::from_ints(&[-14, 0, 6]));
        // ℘'''' = 120℘³ - 18 g2 ℘ - 12 g3
        assert_eq!(d[2], Poly::from_ints(&[-12 * 24, -18 * 28, 0, 120]));
    }

    #[test]
    fn free_and_lame_one() {
        let f = field(&ExactRoots::from_ints(3, -1, -2).unwrap());
        let s = spectral_data(&f, Coupling([0; 4])).unwrap();
        assert_eq!(s.q, Poly::x());
        assert!(s.xi[0].is_one());
        let s = spectral_data(&f, Coupling([1, 0, 0, 0])).unwrap();
        // (E+3)(E-1)(E-2)
        assert_eq!(s.q, Poly::from_ints(&[6, -7, 0, 1]));
        assert_eq!(s.xi[0], Elem::z(&f));
        assert_eq!(s.a, Poly::one());
        assert_eq!(s.c, Poly::x());
    }
}
