//! Ordinary differential operators `Σ_k c_k(x) (d/dx)^k` with coefficients
//! in the half-power algebra.

use std::fmt;

use rug::Rational;

use super::elem::{same_field, Elem, Field};
use crate::{Error, Result};

#[derive(Clone)]
pub struct DiffOp {
    ctx: Field,
    /// `coeffs[k]` multiplies `(d/dx)^k`; no trailing zeros.
    coeffs: Vec<Elem>,
}

impl PartialEq for DiffOp {
    fn eq(&self, o: &Self) -> bool {
        same_field(&self.ctx, &o.ctx) && self.coeffs == o.coeffs
    }
}

impl Eq for DiffOp {}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::format_op(self))
    }
}

fn binom(n: usize, k: usize) -> Rational {
    let mut r = Rational::from(1);
    for i in 0..k {
        r *= Rational::from((n - i) as u64);
        r /= Rational::from((i + 1) as u64);
    }
    r
}

impl DiffOp {
    pub fn new(ctx: &Field, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DiffOp {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn zero(ctx: &Field) -> Self {
        Self::new(ctx, Vec::new())
    }

    /// Multiplication by `f`.
    pub fn mult(f: &Elem) -> Self {
        Self::new(f.field(), vec![f.clone()])
    }

    pub fn identity(ctx: &Field) -> Self {
        Self::mult(&Elem::one(ctx))
    }

    /// `(d/dx)^n`.
    pub fn d(ctx: &Field, n: usize) -> Self {
        let mut c = vec![Elem::zero(ctx); n + 1];
        c[n] = Elem::one(ctx);
        Self::new(ctx, c)
    }

    /// `H = -(d/dx)^2 + Σ_{i=0}^{3} l_i(l_i+1) ℘(x + ω_i)`.
    pub fn hamiltonian(ctx: &Field, l: [i64; 4]) -> Self {
        let mut v = Elem::zero(ctx);
        for (i, &li) in l.iter().enumerate() {
            let c = li * (li + 1);
            if c != 0 {
                v = &v + &Elem::wp_shift(ctx, i).scale(&Rational::from(c));
            }
        }
        Self::new(ctx, vec![v, Elem::zero(ctx), Elem::from_int(ctx, -1)])
    }

    pub fn field(&self) -> &Field {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `(d/dx)^k`; panics beyond the stored range.
    pub fn coeff(&self, k: usize) -> &Elem {
        &self.coeffs[k]
    }

    pub fn coeff_or_zero(&self, k: usize) -> Elem {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Elem::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order, with the zero operator reported as order 0.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    fn check(&self, o: &DiffOp) -> Result<()> {
        if same_field(&self.ctx, &o.ctx) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, o: &DiffOp) -> Result<DiffOp> {
        self.check(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        Ok(Self::new(
            &self.ctx,
            (0..n)
                .map(|k| &self.coeff_or_zero(k) + &o.coeff_or_zero(k))
                .collect(),
        ))
    }

    pub fn sub(&self, o: &DiffOp) -> Result<DiffOp> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> DiffOp {
        Self::new(&self.ctx, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, a: &Rational) -> DiffOp {
        Self::new(&self.ctx, self.coeffs.iter().map(|c| c.scale(a)).collect())
    }

    /// Left multiplication by the function `f`.
    pub fn left_mul(&self, f: &Elem) -> Result<DiffOp> {
        if !same_field(&self.ctx, f.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::new(
            &self.ctx,
            self.coeffs.iter().map(|c| f * c).collect(),
        ))
    }

    /// `P(f) = Σ c_k f^{(k)}`.
    pub fn apply(&self, f: &Elem) -> Result<Elem> {
        if !same_field(&self.ctx, f.field()) {
            return Err(Error::FieldMismatch);
        }
        let mut acc = Elem::zero(&self.ctx);
        let mut d = f.clone();
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                d = d.ddx();
            }
            if !c.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        Ok(acc)
    }

    /// `P ∘ Q` by the Leibniz rule.
    pub fn compose(&self, q: &DiffOp) -> Result<DiffOp> {
        self.check(q)?;
        if self.is_zero() || q.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let n = self.order();
        // derivatives of Q's coefficients up to order n
        let derivs: Vec<Vec<Elem>> = q
            .coeffs
            .iter()
            .map(|c| {
                let mut v = Vec::with_capacity(n + 1);
                v.push(c.clone());
                for m in 1..=n {
                    let next = v[m - 1].ddx();
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = vec![Elem::zero(&self.ctx); n + q.order() + 1];
        for (k, pk) in self.coeffs.iter().enumerate() {
            if pk.is_zero() {
                continue;
            }
            for (j, dj) in derivs.iter().enumerate() {
                for m in 0..=k {
                    if dj[m].is_zero() {
                        continue;
                    }
                    let t = (pk * &dj[m]).scale(&binom(k, m));
                    let idx = k - m + j;
                    out[idx] = &out[idx] + &t;
                }
            }
        }
        Ok(Self::new(&self.ctx, out))
    }

    /// `[P, Q] = PQ - QP`.
    pub fn commutator(&self, q: &DiffOp) -> Result<DiffOp> {
        self.compose(q)?.sub(&q.compose(self)?)
    }

    /// `H ∘ R` for `H = -(d/dx)^2 + V`, without the general Leibniz loop.
    pub fn h_compose(v: &Elem, r: &DiffOp) -> Result<DiffOp> {
        if !same_field(v.field(), &r.ctx) {
            return Err(Error::FieldMismatch);
        }
        let ctx = &r.ctx;
        let mut out = vec![Elem::zero(ctx); r.coeffs.len() + 2];
        for (k, c) in r.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c1 = c.ddx();
            let c2 = c1.ddx();
            out[k] = &(&out[k] - &c2) + &(v * c);
            out[k + 1] = &out[k + 1] - &c1.scale(&Rational::from(2));
            out[k + 2] = &out[k + 2] - c;
        }
        Ok(Self::new(ctx, out))
    }

    /// `p(H) = Σ p_k H^k` for a polynomial `p`, by Horner's rule.
    pub fn poly_of_h(v: &Elem, p: &crate::algebra::Poly) -> Result<DiffOp> {
        let ctx = v.field();
        let mut acc = Self::zero(ctx);
        for a in p.coeffs().iter().rev() {
            acc = Self::h_compose(v, &acc)?.add(&Self::mult(&Elem::constant(ctx, a.clone())))?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;
    use crate::elliptic::ExactRoots;
    use crate::hp::elem::field;

    fn ctx() -> Field {
        field(&ExactRoots::from_ints(3, -1, -2).unwrap())
    }

    #[test]
    fn second_derivative_operator() {
        let f = ctx();
        let dd = DiffOp::d(&f, 1).compose(&DiffOp::d(&f, 1)).unwrap();
        assert_eq!(dd, DiffOp::d(&f, 2));
        assert_eq!(
            dd.apply(&Elem::z(&f)).unwrap(),
            Elem::poly(&f, Poly::from_ints(&[-14, 0, 6]))
        );
    }

    #[test]
    fn commutator_with_multiplication() {
        let f = ctx();
        let c = DiffOp::d(&f, 1)
            .commutator(&DiffOp::mult(&Elem::z(&f)))
            .unwrap();
        assert_eq!(c, DiffOp::mult(&Elem::wp_prime(&f)));
    }

    #[test]
    fn h_compose_matches_general() {
        let f = ctx();
        let h = DiffOp::hamiltonian(&f, [2, 1, 0, 1]);
        let r = DiffOp::new(
            &f,
            vec![Elem::wp_shift(&f, 3), Elem::half_power(&f, 6), Elem::z(&f)],
        );
        let v = h.coeff(0).clone();
        assert_eq!(DiffOp::h_compose(&v, &r).unwrap(), h.compose(&r).unwrap());
    }

    #[test]
    fn field_mismatch_detected() {
        let a = ctx();
        let b = field(&ExactRoots::from_ints(1, 0, -1).unwrap());
        assert_eq!(
            DiffOp::d(&a, 1).compose(&DiffOp::d(&b, 1)),
            Err(Error::FieldMismatch)
        );
    }
}
