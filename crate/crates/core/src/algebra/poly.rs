//! Dense univariate polynomials over `Q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

use crate::num::CNum;

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<Rational>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("z"))
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::from(1))
    }

    pub fn constant(a: Rational) -> Self {
        Self::from_coeffs(vec![a])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rational::new(), Rational::from(1)])
    }

    /// `x - a`.
    pub fn linear(a: &Rational) -> Self {
        Self::from_coeffs(vec![Rational::from(-a), Rational::from(1)])
    }

    pub fn monomial(a: Rational, n: usize) -> Self {
        let mut c = vec![Rational::new(); n + 1];
        c[n] = a;
        Self::from_coeffs(c)
    }

    pub fn from_coeffs(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| *x == 0) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| Rational::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.c.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn scale(&self, a: &Rational) -> Self {
        if *a == 0 {
            return Self::zero();
        }
        Poly {
            c: self.c.iter().map(|x| Rational::from(x * a)).collect(),
        }
    }

    pub fn shift_up(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rational::new(); n];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = Rational::from(1) / self.lead();
        self.scale(&l)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| Rational::from(a * k as u32))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for a in self.c.iter().rev() {
            acc *= x;
            acc += a;
        }
        acc
    }

    pub fn eval_num<T: CNum>(&self, x: &T) -> T {
        let mut acc = x.zero_like();
        for a in self.c.iter().rev() {
            acc = acc * x + x.lift_q(a);
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Poly) -> Self {
        let mut acc = Self::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * q) + &Self::constant(a.clone());
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return (Self::zero(), self.clone());
        }
        let inv = Rational::from(1) / d.lead();
        let mut r = self.c.clone();
        let mut q = vec![Rational::new(); self.deg() - dd + 1];
        for k in (0..q.len()).rev() {
            let f = Rational::from(&r[k + dd] * &inv);
            if f != 0 {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= Rational::from(&f * b);
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Exact quotient; `None` if the division leaves a remainder.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// Divides out the rational content, leaving integer coefficients with
    /// gcd 1 and positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut den = Integer::from(1);
        for a in &self.c {
            den = den.lcm(a.denom());
        }
        let ints: Vec<Integer> = self
            .c
            .iter()
            .map(|a| Integer::from(a.numer() * &den) / a.denom())
            .collect();
        let mut g = Integer::new();
        for a in &ints {
            g = g.gcd(a);
        }
        if self.lead() < 0 {
            g = -g;
        }
        Poly {
            c: ints
                .into_iter()
                .map(|a| Rational::from((a, g.clone())))
                .collect(),
        }
    }

    /// Multiplicity of the root `a`.
    pub fn root_multiplicity(&self, a: &Rational) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Self::linear(a);
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.div_exact(&lin) {
            p = q;
            k += 1;
        }
        k
    }

    /// Yun's squarefree decomposition: `(f_i, i)` with `self = lead · Π f_i^i`.
    pub fn squarefree(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.div_exact(&a).unwrap();
        let mut c = fp.div_exact(&a).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if !g.is_constant() {
                out.push((g.clone(), i));
            }
            b = b.div_exact(&g).unwrap();
            if b.is_constant() {
                break;
            }
            c = d.div_exact(&g).unwrap();
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Number of distinct real roots in `(lo, hi]` by a Sturm sequence.
    pub fn sturm_count(&self, lo: &Rational, hi: &Rational) -> usize {
        let seq = self.sturm_sequence();
        let v = |x: &Rational| sign_changes(seq.iter().map(|p| p.eval(x)));
        v(lo) - v(hi)
    }

    /// Number of distinct real roots.
    pub fn real_root_count(&self) -> usize {
        let seq = self.sturm_sequence();
        let at_inf = |neg: bool| {
            sign_changes(seq.iter().map(|p| {
                let l = p.lead();
                if neg && p.deg() % 2 == 1 {
                    -l
                } else {
                    l
                }
            }))
        };
        at_inf(true) - at_inf(false)
    }

    fn sturm_sequence(&self) -> Vec<Poly> {
        let sf = {
            let g = self.gcd(&self.derivative());
            self.div_exact(&g).unwrap()
        };
        let mut seq = vec![sf.clone(), sf.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let (_, r) = seq[n - 2].divrem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        seq
    }

    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, a) in self.c.iter().enumerate().rev() {
            if *a == 0 {
                continue;
            }
            let neg = *a < 0;
            let mag = Rational::from(a.abs_ref());
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag == 1;
            match k {
                0 => s.push_str(&mag.to_string()),
                _ => {
                    if !unit {
                        s.push_str(&mag.to_string());
                        s.push('*');
                    }
                    s.push_str(var);
                    if k > 1 {
                        s.push('^');
                        s.push_str(&k.to_string());
                    }
                }
            }
        }
        s
    }
}

fn sign_changes(vals: impl Iterator<Item = Rational>) -> usize {
    let mut last = 0i32;
    let mut n = 0;
    for v in vals {
        let s = v.cmp0() as i32;
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|k| match (self.c.get(k), o.c.get(k)) {
                (Some(a), Some(b)) => Rational::from(a + b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::from_coeffs(c)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            c: self.c.iter().map(|a| Rational::from(-a)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rational::new(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += Rational::from(a * b);
            }
        }
        Poly::from_coeffs(c)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                (&self).$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    #[test]
    fn division_roundtrip() {
        let a = Poly::from_ints(&[1, -3, 0, 2, 5]);
        let b = Poly::from_ints(&[2, 0, 3]);
        let (qq, r) = a.divrem(&b);
        assert_eq!(&(&qq * &b) + &r, a);
        assert!(r.deg() < 2);
    }

    #[test]
    fn gcd_of_products() {
        let f = Poly::from_ints(&[-1, 1]);
        let g = Poly::from_ints(&[2, 0, 1]);
        let a = &(&f * &f) * &g;
        let b = &f * &Poly::from_ints(&[7, 1]);
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn squarefree_parts() {
        let f = Poly::from_ints(&[-1, 1]);
        let g = Poly::from_ints(&[3, 1]);
        let p = &(&f * &f) * &(&g * &(&g * &g)).scale(&q(5, 1));
        let sf = p.squarefree();
        assert_eq!(sf, vec![(f, 2), (g, 3)]);
    }

    #[test]
    fn sturm_counts_roots() {
        // (x-1)(x+2)(x^2+1)
        let p = &(&Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[2, 1]))
            * &Poly::from_ints(&[1, 0, 1]);
        assert_eq!(p.real_root_count(), 2);
        assert_eq!(p.sturm_count(&q(0, 1), &q(3, 1)), 1);
        assert_eq!(p.sturm_count(&q(-3, 1), &q(3, 1)), 2);
    }

    #[test]
    fn display_is_readable() {
        let p = Poly::from_coeffs(vec![q(-9, 4), q(0, 1), q(1, 1)]);
        assert_eq!(p.display("z"), "z^2 - 9/4");
    }
}
