//! Sparse multivariate polynomials over `Q` with a fixed number of variables.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::Rational;

use crate::num::CNum;

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, a: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], a);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::from(1))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::term(m, Rational::from(1))
    }

    pub fn term(m: Monomial, a: Rational) -> Self {
        let mut p = Self::zero(m.len());
        p.add_term(m, a);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, a: Rational) {
        debug_assert_eq!(m.len(), self.nvars);
        if a == 0 {
            return;
        }
        let e = self.terms.entry(m.clone()).or_default();
        *e += a;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, a: &Rational) -> Self {
        if *a == 0 {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), Rational::from(c * a)))
                .collect(),
        }
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m[i]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    /// Partial derivative in variable `i`.
    pub fn diff(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut m2 = m.clone();
                m2[i] -= 1;
                out.add_term(m2, Rational::from(c * m[i]));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval_num<T: CNum>(&self, x: &[T]) -> T {
        let like = &x[0];
        let mut acc = like.zero_like();
        for (m, c) in &self.terms {
            let mut t = like.lift_q(c);
            for (xi, &e) in x.iter().zip(m) {
                if e > 0 {
                    t = t * &xi.powi(e);
                }
            }
            acc = acc + &t;
        }
        acc
    }

    pub fn eval_q(&self, x: &[Rational]) -> Rational {
        let mut acc = Rational::new();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(m) {
                if e > 0 {
                    t *= Rational::from(xi.pow(e));
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact division by `x_i - x_j` (or by `x_i - a` when `j` is `None`);
    /// `None` if not divisible.
    pub fn div_linear(&self, i: usize, j: Option<usize>, a: &Rational) -> Option<Self> {
        // synthetic division in x_i, treating the rest as coefficients
        let mut rest = self.clone();
        let mut q = Self::zero(self.nvars);
        let root = match j {
            Some(j) => Self::var(self.nvars, j),
            None => Self::constant(self.nvars, a.clone()),
        };
        while !rest.is_zero() {
            let d = rest.degree_in(i);
            if d == 0 {
                return None;
            }
            // leading part in x_i
            let mut lead = Self::zero(self.nvars);
            for (m, c) in &rest.terms {
                if m[i] == d {
                    let mut m2 = m.clone();
                    m2[i] -= 1;
                    lead.add_term(m2, c.clone());
                }
            }
            let lin = &Self::var(self.nvars, i) - &root;
            rest = &rest - &(&lead * &lin);
            q = &q + &lead;
        }
        Some(q)
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            let e = out.terms.entry(m.clone()).or_default();
            *e += c;
            if *e == 0 {
                out.terms.remove(m);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), Rational::from(-c)))
                .collect(),
        }
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        self + &(-o)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                let e = out.terms.entry(m).or_default();
                *e += Rational::from(c1 * c2);
            }
        }
        out.terms.retain(|_, c| *c != 0);
        out
    }
}
