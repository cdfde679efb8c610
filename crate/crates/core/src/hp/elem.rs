//! Elements `Σ_μ S^μ r_μ(z)` of the function algebra in `z = ℘(x)`, where
//! `S^μ = Π_{i∈μ} (z - e_i)^{1/2}` and each `r_μ` is a rational function whose
//! poles sit at the roots `e_i`.
//!
//! The product `S^{{1,2,3}}` is `℘'(x)/2`; this fixes the branch of every
//! half power.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rug::ops::Pow;
use rug::Rational;

use crate::algebra::Poly;
use crate::elliptic::{ExactRoots, Lattice};
use crate::num::CNum;
use crate::{Error, Result};

/// The exact scalar field data: the rational roots `e_1, e_2, e_3`.
#[derive(Debug)]
pub struct FieldCtx {
    pub roots: ExactRoots,
    /// `z - e_i`.
    pub lin: [Poly; 3],
    pub g2: Rational,
    pub g3: Rational,
}

pub type Field = Arc<FieldCtx>;

pub fn field(roots: &ExactRoots) -> Field {
    Arc::new(FieldCtx {
        roots: roots.clone(),
        lin: [0, 1, 2].map(|i| Poly::linear(&roots.e[i])),
        g2: roots.g2(),
        g3: roots.g3(),
    })
}

pub fn same_field(a: &Field, b: &Field) -> bool {
    Arc::ptr_eq(a, b) || a.roots == b.roots
}

/// `num(z) / Π (z - e_i)^{pole_i}` with `num(e_i) ≠ 0` whenever `pole_i > 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatZ {
    pub num: Poly,
    pub pole: [u32; 3],
}

impl fmt::Debug for RatZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/D{:?}", self.num, self.pole)
    }
}

impl RatZ {
    pub fn zero() -> Self {
        RatZ::default()
    }

    pub fn poly(p: Poly) -> Self {
        RatZ {
            num: p,
            pole: [0; 3],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn canonical(mut self, f: &FieldCtx) -> Self {
        if self.num.is_zero() {
            self.pole = [0; 3];
            return self;
        }
        for i in 0..3 {
            while self.pole[i] > 0 && self.num.eval(&f.roots.e[i]) == 0 {
                self.num = self.num.div_exact(&f.lin[i]).unwrap();
                self.pole[i] -= 1;
            }
        }
        self
    }

    fn raise(&self, f: &FieldCtx, to: [u32; 3]) -> Poly {
        let mut p = self.num.clone();
        for i in 0..3 {
            for _ in self.pole[i]..to[i] {
                p = &p * &f.lin[i];
            }
        }
        p
    }

    pub fn add(&self, o: &RatZ, f: &FieldCtx) -> RatZ {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let pole = [0, 1, 2].map(|i| self.pole[i].max(o.pole[i]));
        RatZ {
            num: &self.raise(f, pole) + &o.raise(f, pole),
            pole,
        }
        .canonical(f)
    }

    pub fn neg(&self) -> RatZ {
        RatZ {
            num: -&self.num,
            pole: self.pole,
        }
    }

    pub fn mul(&self, o: &RatZ, f: &FieldCtx) -> RatZ {
        if self.is_zero() || o.is_zero() {
            return RatZ::zero();
        }
        let pole = [0, 1, 2].map(|i| self.pole[i] + o.pole[i]);
        RatZ {
            num: &self.num * &o.num,
            pole,
        }
        .canonical(f)
    }

    /// Multiplies by `z - e_i`.
    pub fn mul_lin(&self, i: usize, f: &FieldCtx) -> RatZ {
        if self.is_zero() {
            return RatZ::zero();
        }
        if self.pole[i] > 0 {
            let mut r = self.clone();
            r.pole[i] -= 1;
            r
        } else {
            RatZ {
                num: &self.num * &f.lin[i],
                pole: self.pole,
            }
        }
    }

    /// Divides by `z - e_i`.
    pub fn div_lin(&self, i: usize) -> RatZ {
        if self.is_zero() {
            return RatZ::zero();
        }
        let mut r = self.clone();
        r.pole[i] += 1;
        r
    }

    pub fn scale(&self, a: &Rational) -> RatZ {
        if *a == 0 {
            return RatZ::zero();
        }
        RatZ {
            num: self.num.scale(a),
            pole: self.pole,
        }
    }

    /// `d/dz`.
    pub fn dz(&self, f: &FieldCtx) -> RatZ {
        if self.is_zero() {
            return RatZ::zero();
        }
        let active: Vec<usize> = (0..3).filter(|&i| self.pole[i] > 0).collect();
        let mut prod = Poly::one();
        for &i in &active {
            prod = &prod * &f.lin[i];
        }
        let mut num = &self.num.derivative() * &prod;
        for &i in &active {
            let mut t = self.num.scale(&Rational::from(self.pole[i]));
            for &j in &active {
                if j != i {
                    t = &t * &f.lin[j];
                }
            }
            num = &num - &t;
        }
        let mut pole = self.pole;
        for &i in &active {
            pole[i] += 1;
        }
        RatZ { num, pole }.canonical(f)
    }

    pub fn eval_q(&self, z: &Rational, f: &FieldCtx) -> Option<Rational> {
        let mut d = Rational::from(1);
        for i in 0..3 {
            let t = Rational::from(z - &f.roots.e[i]);
            if self.pole[i] > 0 && t == 0 {
                return None;
            }
            d *= t.pow(self.pole[i]);
        }
        Some(self.num.eval(z) / d)
    }

    pub fn eval_num<T: CNum>(&self, z: &T, e: &[T; 3]) -> T {
        let mut v = self.num.eval_num(z);
        for i in 0..3 {
            if self.pole[i] > 0 {
                v = v / (z.clone() - &e[i]).powi(self.pole[i]);
            }
        }
        v
    }
}

/// An element of the half-power algebra.
#[derive(Clone)]
pub struct Elem {
    ctx: Field,
    t: [RatZ; 8],
}

impl PartialEq for Elem {
    fn eq(&self, o: &Self) -> bool {
        same_field(&self.ctx, &o.ctx) && self.t == o.t
    }
}

impl Eq for Elem {}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::hp::text::format_elem(self))
    }
}

/// Product of `z - e_i` over the bits of `mu`, excluding bit `skip`.
fn lin_product(f: &FieldCtx, mu: u8, skip: Option<usize>) -> Poly {
    let mut p = Poly::one();
    for i in 0..3 {
        if mu & (1 << i) != 0 && Some(i) != skip {
            p = &p * &f.lin[i];
        }
    }
    p
}

impl Elem {
    pub fn zero(ctx: &Field) -> Self {
        Elem {
            ctx: ctx.clone(),
            t: Default::default(),
        }
    }

    pub fn constant(ctx: &Field, a: Rational) -> Self {
        Self::from_ratz(ctx, 0, RatZ::poly(Poly::constant(a)))
    }

    pub fn one(ctx: &Field) -> Self {
        Self::constant(ctx, Rational::from(1))
    }

    pub fn from_int(ctx: &Field, a: i64) -> Self {
        Self::constant(ctx, Rational::from(a))
    }

    pub fn poly(ctx: &Field, p: Poly) -> Self {
        Self::from_ratz(ctx, 0, RatZ::poly(p))
    }

    /// `z = ℘(x)`.
    pub fn z(ctx: &Field) -> Self {
        Self::poly(ctx, Poly::x())
    }

    pub fn from_ratz(ctx: &Field, mu: u8, r: RatZ) -> Self {
        let mut e = Self::zero(ctx);
        e.t[mu as usize] = r.canonical(ctx);
        e
    }

    /// `S^mu` with `r = 1`.
    pub fn half_power(ctx: &Field, mu: u8) -> Self {
        Self::from_ratz(ctx, mu, RatZ::poly(Poly::one()))
    }

    /// `℘'(x) = 2 S^{1,2,3}`.
    pub fn wp_prime(ctx: &Field) -> Self {
        Self::from_ratz(ctx, 7, RatZ::poly(Poly::from_ints(&[2])))
    }

    /// `℘(x + ω_i)` for `i` in `0..=3` (with `ω_0 = 0`):
    /// `e_i + (e_i - e_j)(e_i - e_k)/(z - e_i)`.
    pub fn wp_shift(ctx: &Field, i: usize) -> Self {
        if i == 0 {
            return Self::z(ctx);
        }
        let k = ctx.roots.residue(i - 1);
        let e = ctx.roots.e[i - 1].clone();
        let num = &Poly::linear(&ctx.roots.e[i - 1]).scale(&e) + &Poly::constant(k);
        Self::from_ratz(
            ctx,
            0,
            RatZ {
                num,
                pole: unit_pole(i - 1),
            },
        )
    }

    pub fn field(&self) -> &Field {
        &self.ctx
    }

    pub fn term(&self, mu: u8) -> &RatZ {
        &self.t[mu as usize]
    }

    /// Nonzero `(mu, r_mu)` pairs in increasing `mu`.
    pub fn terms(&self) -> impl Iterator<Item = (u8, &RatZ)> {
        self.t
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_zero())
            .map(|(m, r)| (m as u8, r))
    }

    pub fn is_zero(&self) -> bool {
        self.t.iter().all(|r| r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx)
    }

    /// The single `mu` carried by a nonzero homogeneous element.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms().map(|(m, _)| m);
        let m = it.next()?;
        it.next().is_none().then_some(m)
    }

    /// Constant value if the element is a rational constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::new());
        }
        let r = &self.t[0];
        if self.parity() == Some(0) && r.pole == [0; 3] && r.num.is_constant() {
            Some(r.num.coeff(0))
        } else {
            None
        }
    }

    /// Polynomial in `z` if the element is one.
    pub fn as_poly(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let r = &self.t[0];
        (self.parity() == Some(0) && r.pole == [0; 3]).then(|| r.num.clone())
    }

    pub fn scale(&self, a: &Rational) -> Self {
        Elem {
            ctx: self.ctx.clone(),
            t: self.t.clone().map(|r| r.scale(a)),
        }
    }

    pub fn check_field(&self, o: &Elem) -> Result<()> {
        if same_field(&self.ctx, &o.ctx) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn assert_field(&self, o: &Elem) {
        assert!(
            same_field(&self.ctx, &o.ctx),
            "elements over different root fields"
        );
    }

    /// `d/dx`, via `dz/dx = 2 S^{1,2,3}`.
    pub fn ddx(&self) -> Self {
        let f = &*self.ctx;
        let mut out = Self::zero(&self.ctx);
        for (mu, r) in self.terms() {
            let full = lin_product(f, mu, None);
            let a = r.dz(f).mul(&RatZ::poly(full), f).scale(&Rational::from(2));
            let mut s = Poly::zero();
            for i in 0..3 {
                if mu & (1 << i) != 0 {
                    s = &s + &lin_product(f, mu, Some(i));
                }
            }
            let num = a.add(&r.mul(&RatZ::poly(s), f), f);
            let m = (mu ^ 7) as usize;
            out.t[m] = out.t[m].add(&num, f);
        }
        out
    }

    /// `k`-th derivative.
    pub fn ddx_n(&self, k: usize) -> Self {
        let mut e = self.clone();
        for _ in 0..k {
            e = e.ddx();
        }
        e
    }

    /// Division by a monomial `c S^mu Π(z - e_i)^{k_i}` with integer `k_i` of
    /// either sign.
    pub fn div_monomial(&self, d: &Elem) -> Result<Elem> {
        self.check_field(d)?;
        let mu = d.parity().ok_or(Error::NonMonomialDivisor)?;
        let r = d.term(mu);
        let f = &*self.ctx;
        // split num = c Π (z - e_i)^{m_i}
        let mut num = r.num.clone();
        let mut zeros = [0u32; 3];
        for i in 0..3 {
            while num.deg() > 0 {
                match num.div_exact(&f.lin[i]) {
                    Some(q) => {
                        num = q;
                        zeros[i] += 1;
                    }
                    None => break,
                }
            }
        }
        if !num.is_constant() {
            return Err(Error::NonMonomialDivisor);
        }
        // 1/(c S^mu Π(z-e_i)^{m_i - p_i}) = Π(z-e_i)^{p_i - m_i} / (c Π_{i∈mu}(z-e_i)) · S^mu
        let inv_c = Rational::from(1) / num.coeff(0);
        let mut inv = RatZ::poly(Poly::constant(inv_c));
        for i in 0..3 {
            for _ in 0..r.pole[i] {
                inv = inv.mul_lin(i, f);
            }
            for _ in 0..zeros[i] {
                inv = inv.div_lin(i);
            }
            if mu & (1 << i) != 0 {
                inv = inv.div_lin(i);
            }
        }
        Ok(self * &Elem::from_ratz(&self.ctx, mu, inv))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Numeric value at `x` on a lattice built from the same roots, with
    /// `branch[i] = ±1` flipping the sign of `(z - e_i)^{1/2}`.
    pub fn eval<T: CNum>(&self, x: &T, lat: &Lattice<T>, branch: [i8; 3]) -> Result<T> {
        let set = lat.wp_set(x)?;
        let s = lat.half_powers(x)?;
        Ok(self.eval_at(&set.wp, &s, &lat.e, branch))
    }

    /// Numeric value from precomputed `z` and half powers `s_i`.
    pub fn eval_at<T: CNum>(&self, z: &T, s: &[T; 3], e: &[T; 3], branch: [i8; 3]) -> T {
        let mut acc = z.zero_like();
        for (mu, r) in self.terms() {
            let mut v = r.eval_num(z, e);
            for i in 0..3 {
                if mu & (1 << i) != 0 {
                    v = v * &s[i];
                    if branch[i] < 0 {
                        v = -v;
                    }
                }
            }
            acc = acc + &v;
        }
        acc
    }
}

pub(crate) fn unit_pole(i: usize) -> [u32; 3] {
    let mut p = [0; 3];
    p[i] = 1;
    p
}

impl Add for &Elem {
    type Output = Elem;
    fn add(self, o: &Elem) -> Elem {
        self.assert_field(o);
        let f = &*self.ctx;
        let mut out = self.clone();
        for m in 0..8 {
            if !o.t[m].is_zero() {
                out.t[m] = out.t[m].add(&o.t[m], f);
            }
        }
        out
    }
}

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem {
            ctx: self.ctx.clone(),
            t: self.t.clone().map(|r| r.neg()),
        }
    }
}

impl Sub for &Elem {
    type Output = Elem;
    fn sub(self, o: &Elem) -> Elem {
        self + &(-o)
    }
}

impl Mul for &Elem {
    type Output = Elem;
    fn mul(self, o: &Elem) -> Elem {
        self.assert_field(o);
        let f = &*self.ctx;
        let mut out = Elem::zero(&self.ctx);
        for (m1, r1) in self.terms() {
            for (m2, r2) in o.terms() {
                let mut r = r1.mul(r2, f);
                let overlap = m1 & m2;
                for i in 0..3 {
                    if overlap & (1 << i) != 0 {
                        r = r.mul_lin(i, f);
                    }
                }
                let m = (m1 ^ m2) as usize;
                out.t[m] = out.t[m].add(&r, f);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Elem {
            type Output = Elem;
            fn $f(self, o: Elem) -> Elem {
                (&self).$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Field {
        field(&ExactRoots::from_ints(3, -1, -2).unwrap())
    }

    #[test]
    fn derivative_of_z_is_wp_prime() {
        let f = ctx();
        assert_eq!(Elem::z(&f).ddx(), Elem::wp_prime(&f));
        assert!(Elem::one(&f).ddx().is_zero());
    }

    #[test]
    fn second_derivative_of_z() {
        let f = ctx();
        // 6 z^2 - g2/2 with g2 = 28
        let want = Elem::poly(&f, Poly::from_ints(&[-14, 0, 6]));
        assert_eq!(Elem::z(&f).ddx().ddx(), want);
    }

    #[test]
    fn square_of_half_power_product() {
        let f = ctx();
        let s = Elem::half_power(&f, 7);
        // (℘'/2)^2 = (z-3)(z+1)(z+2)
        let want = Elem::poly(
            &f,
            &(&Poly::from_ints(&[-3, 1]) * &Poly::from_ints(&[1, 1])) * &Poly::from_ints(&[2, 1]),
        );
        assert_eq!(&s * &s, want);
    }

    #[test]
    fn shifted_wp_has_simple_pole() {
        let f = ctx();
        let w = Elem::wp_shift(&f, 1);
        let d = Elem::poly(&f, Poly::from_ints(&[-3, 1]));
        // (z - 3) ℘(x+ω1) = 3(z - 3) + 20
        assert_eq!(&w * &d, Elem::poly(&f, Poly::from_ints(&[11, 3])));
    }

    #[test]
    fn monomial_division_inverts_product() {
        let f = ctx();
        let a = &Elem::z(&f) + &Elem::half_power(&f, 3);
        let d = Elem::from_ratz(
            &f,
            5,
            RatZ {
                num: Poly::from_ints(&[7]),
                pole: [0, 2, 0],
            },
        );
        assert_eq!((&a * &d).div_monomial(&d).unwrap(), a);
        let bad = &Elem::z(&f) + &Elem::from_int(&f, 5);
        assert!(matches!(
            a.div_monomial(&bad),
            Err(Error::NonMonomialDivisor)
        ));
    }
}
