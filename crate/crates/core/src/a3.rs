//! The three-particle `l = 1` elliptic Calogero–Moser operators
//! `H = -(∂_1²+∂_2²+∂_3²)/2 + 2(℘_12+℘_23+℘_31)`, `P_1`, `P_3` and the extra
//! operators `I_12`, `I_23`, `I_31`, with commutators checked numerically.
//!
//! Coefficients live in the free algebra of the symbols `p_jk = ℘(x_j-x_k)`,
//! `p'_jk` for `j < k`, reduced by `p'' = 6p² - g2/2` and
//! `p'² = 4p³ - g2 p - g3`. The three-term addition relations between pairs
//! are not imposed, so a commutator can be nonzero symbolically and still
//! vanish as a function.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::{Complex, Rational};
use serde_json::{json, Value};

use crate::elliptic::{ExactRoots, LatticeMp};
use crate::num::CNum;
use crate::{Error, Result};

/// Minimum distance of every `x_j - x_k` from the lattice.
pub const SAMPLE_MARGIN: f64 = 0.05;

/// Pairs `(0,1), (0,2), (1,2)`, i.e. `12, 13, 23`.
pub const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

fn pair_index(j: usize, k: usize) -> (usize, i64) {
    match (j, k) {
        (0, 1) => (0, 1),
        (1, 0) => (0, -1),
        (0, 2) => (1, 1),
        (2, 0) => (1, -1),
        (1, 2) => (2, 1),
        (2, 1) => (2, -1),
        _ => panic!("no pair ({j}, {k})"),
    }
}

/// `[a_12, s_12, a_13, s_13, a_23, s_23]` for `Π p^a p'^s`, `s ∈ {0, 1}`.
type Mono = [u32; 6];

/// A polynomial in the pair symbols over `Q`, in reduced form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairPoly {
    g2: Rational,
    g3: Rational,
    terms: BTreeMap<Mono, Rational>,
}

impl PairPoly {
    pub fn zero(g2: &Rational, g3: &Rational) -> Self {
        PairPoly {
            g2: g2.clone(),
            g3: g3.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(g2: &Rational, g3: &Rational, a: Rational) -> Self {
        let mut p = Self::zero(g2, g3);
        p.add_term([0; 6], a);
        p
    }

    /// `p_jk = ℘(x_j - x_k)`.
    pub fn wp(g2: &Rational, g3: &Rational, j: usize, k: usize) -> Self {
        let (i, _) = pair_index(j, k);
        let mut m = [0; 6];
        m[2 * i] = 1;
        let mut p = Self::zero(g2, g3);
        p.add_term(m, Rational::from(1));
        p
    }

    /// `p'_jk = ℘'(x_j - x_k)`, odd under `j ↔ k`.
    pub fn wp1(g2: &Rational, g3: &Rational, j: usize, k: usize) -> Self {
        let (i, s) = pair_index(j, k);
        let mut m = [0; 6];
        m[2 * i + 1] = 1;
        let mut p = Self::zero(g2, g3);
        p.add_term(m, Rational::from(s));
        p
    }

    /// `p''_jk = 6p² - g2/2`.
    pub fn wp2(g2: &Rational, g3: &Rational, j: usize, k: usize) -> Self {
        let p = Self::wp(g2, g3, j, k);
        &(&p * &p).scale(&Rational::from(6)) - &Self::constant(g2, g3, Rational::from(g2 / 2u32))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Mono, a: Rational) {
        if a == 0 {
            return;
        }
        let e = self.terms.entry(m).or_default();
        *e += a;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    /// Adds `a·m` where `m` may carry `p'²` factors.
    fn add_unreduced(&mut self, m: [u32; 6], a: Rational) {
        for i in 0..3 {
            if m[2 * i + 1] >= 2 {
                // p'² = 4p³ - g2 p - g3
                let mut m2 = m;
                m2[2 * i + 1] -= 2;
                let mut t = m2;
                t[2 * i] += 3;
                self.add_unreduced(t, Rational::from(&a * 4u32));
                let mut t = m2;
                t[2 * i] += 1;
                self.add_unreduced(t, -Rational::from(&a * &self.g2));
                let c = -Rational::from(&a * &self.g3);
                self.add_unreduced(m2, c);
                return;
            }
        }
        self.add_term(m, a);
    }

    pub fn scale(&self, a: &Rational) -> Self {
        let mut out = Self::zero(&self.g2, &self.g3);
        for (m, c) in &self.terms {
            out.add_term(*m, Rational::from(c * a));
        }
        out
    }

    /// `∂/∂x_i`, with `∂_j p_jk = p'_jk`, `∂_k p_jk = -p'_jk`.
    pub fn diff(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.g2, &self.g3);
        for (m, c) in &self.terms {
            for (pi, &(j, k)) in PAIRS.iter().enumerate() {
                let sign = if i == j {
                    1
                } else if i == k {
                    -1
                } else {
                    continue;
                };
                let (a, s) = (m[2 * pi], m[2 * pi + 1]);
                let c = Rational::from(c * sign);
                if a > 0 {
                    let mut t = *m;
                    t[2 * pi] -= 1;
                    t[2 * pi + 1] += 1;
                    out.add_unreduced(t, Rational::from(&c * a));
                }
                if s == 1 {
                    // p'' = 6p² - g2/2
                    let mut t = *m;
                    t[2 * pi + 1] = 0;
                    let mut t2 = t;
                    t2[2 * pi] += 2;
                    out.add_term(t2, Rational::from(&c * 6u32));
                    out.add_term(t, -Rational::from(&c * &self.g2) / 2u32);
                }
            }
        }
        out
    }

    /// Relabels `x_j → x_σ(j)`.
    pub fn permute(&self, sigma: [usize; 3]) -> Self {
        let mut out = Self::zero(&self.g2, &self.g3);
        for (m, c) in &self.terms {
            let mut t = [0; 6];
            let mut sign = 1i64;
            for (pi, &(j, k)) in PAIRS.iter().enumerate() {
                let (qi, s) = pair_index(sigma[j], sigma[k]);
                t[2 * qi] = m[2 * pi];
                t[2 * qi + 1] = m[2 * pi + 1];
                if m[2 * pi + 1] == 1 {
                    sign *= s;
                }
            }
            out.add_term(t, Rational::from(c * sign));
        }
        out
    }

    /// Value with `vals[i] = (p, p')` for pair `i`.
    pub fn eval<T: CNum>(&self, vals: &[(T, T); 3]) -> T {
        let like = &vals[0].0;
        let mut acc = like.zero_like();
        for (m, c) in &self.terms {
            let mut t = like.lift_q(c);
            for i in 0..3 {
                if m[2 * i] > 0 {
                    t = t * &vals[i].0.powi(m[2 * i]);
                }
                if m[2 * i + 1] > 0 {
                    t = t * &vals[i].1;
                }
            }
            acc = acc + &t;
        }
        acc
    }
}

impl Add for &PairPoly {
    type Output = PairPoly;
    fn add(self, o: &PairPoly) -> PairPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &PairPoly {
    type Output = PairPoly;
    fn sub(self, o: &PairPoly) -> PairPoly {
        self + &(-o)
    }
}

impl Neg for &PairPoly {
    type Output = PairPoly;
    fn neg(self) -> PairPoly {
        self.scale(&Rational::from(-1))
    }
}

impl Mul for &PairPoly {
    type Output = PairPoly;
    fn mul(self, o: &PairPoly) -> PairPoly {
        let mut out = PairPoly::zero(&self.g2, &self.g3);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let m = std::array::from_fn(|i| a[i] + b[i]);
                out.add_unreduced(m, Rational::from(ca * cb));
            }
        }
        out
    }
}

/// `Σ_α c_α(p) ∂^α` in `x_1, x_2, x_3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairVarOp {
    g2: Rational,
    g3: Rational,
    terms: BTreeMap<[u32; 3], PairPoly>,
}

impl PairVarOp {
    pub fn zero(g2: &Rational, g3: &Rational) -> Self {
        PairVarOp {
            g2: g2.clone(),
            g3: g3.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Multiplication by `c`.
    pub fn coef(c: PairPoly) -> Self {
        let mut op = Self::zero(&c.g2, &c.g3);
        op.add_term([0; 3], c);
        op
    }

    pub fn scalar(g2: &Rational, g3: &Rational, a: Rational) -> Self {
        Self::coef(PairPoly::constant(g2, g3, a))
    }

    /// `∂_i`.
    pub fn d(g2: &Rational, g3: &Rational, i: usize) -> Self {
        let mut op = Self::zero(g2, g3);
        let mut a = [0; 3];
        a[i] = 1;
        op.add_term(a, PairPoly::constant(g2, g3, Rational::from(1)));
        op
    }

    fn add_term(&mut self, a: [u32; 3], c: PairPoly) {
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&a) {
            Some(old) => &old + &c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(a, merged);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|a| a.iter().sum()).max().unwrap_or(0)
    }

    /// Coefficient of `∂^α`.
    pub fn coefficient(&self, alpha: [u32; 3]) -> PairPoly {
        self.terms
            .get(&alpha)
            .cloned()
            .unwrap_or_else(|| PairPoly::zero(&self.g2, &self.g3))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &PairPoly)> {
        self.terms.iter()
    }

    pub fn scale(&self, a: &Rational) -> Self {
        let mut out = Self::zero(&self.g2, &self.g3);
        for (k, c) in &self.terms {
            out.add_term(*k, c.scale(a));
        }
        out
    }

    /// `self(f)` for a coefficient function `f`.
    pub fn apply(&self, f: &PairPoly) -> PairPoly {
        let mut out = PairPoly::zero(&self.g2, &self.g3);
        for (alpha, c) in &self.terms {
            out = &out + &(c * &diff_multi(f, *alpha));
        }
        out
    }

    pub fn commutator(&self, o: &PairVarOp) -> PairVarOp {
        &(self * o) - &(o * self)
    }

    /// Relabels `x_j → x_σ(j)` in coefficients and derivatives.
    pub fn permute(&self, sigma: [usize; 3]) -> Self {
        let mut out = Self::zero(&self.g2, &self.g3);
        for (a, c) in &self.terms {
            let mut b = [0; 3];
            for j in 0..3 {
                b[sigma[j]] = a[j];
            }
            out.add_term(b, c.permute(sigma));
        }
        out
    }
}

fn diff_multi(f: &PairPoly, alpha: [u32; 3]) -> PairPoly {
    let mut g = f.clone();
    for (i, &n) in alpha.iter().enumerate() {
        for _ in 0..n {
            g = g.diff(i);
        }
    }
    g
}

fn binom(n: u32, k: u32) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * u64::from(n - i) / u64::from(i + 1))
}

impl Add for &PairVarOp {
    type Output = PairVarOp;
    fn add(self, o: &PairVarOp) -> PairVarOp {
        let mut out = self.clone();
        for (a, c) in &o.terms {
            out.add_term(*a, c.clone());
        }
        out
    }
}

impl Sub for &PairVarOp {
    type Output = PairVarOp;
    fn sub(self, o: &PairVarOp) -> PairVarOp {
        self + &o.scale(&Rational::from(-1))
    }
}

impl Mul for &PairVarOp {
    type Output = PairVarOp;
    /// Composition `self ∘ o` by the Leibniz rule.
    fn mul(self, o: &PairVarOp) -> PairVarOp {
        let mut out = PairVarOp::zero(&self.g2, &self.g3);
        for (alpha, a) in &self.terms {
            for g0 in 0..=alpha[0] {
                for g1 in 0..=alpha[1] {
                    for g2 in 0..=alpha[2] {
                        let gamma = [g0, g1, g2];
                        let mult = (0..3).map(|i| binom(alpha[i], gamma[i])).product::<u64>();
                        for (beta, b) in &o.terms {
                            let db = diff_multi(b, gamma);
                            if db.is_zero() {
                                continue;
                            }
                            let k = std::array::from_fn(|i| alpha[i] - gamma[i] + beta[i]);
                            out.add_term(k, (a * &db).scale(&Rational::from(mult)));
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct A3Operators {
    pub h: PairVarOp,
    pub p1: PairVarOp,
    pub p3: PairVarOp,
    pub i12: PairVarOp,
    pub i23: PairVarOp,
    pub i31: PairVarOp,
}

/// The displayed operators; `I_23` and `I_31` come from `I_12` under the
/// cyclic relabeling `1 → 2 → 3 → 1`.
pub fn build_a3_operators(roots: &ExactRoots) -> A3Operators {
    let (g2, g3) = (roots.g2(), roots.g3());
    let q = |a: i64| Rational::from(a);
    let d = |i: usize| PairVarOp::d(&g2, &g3, i);
    let c = |p: PairPoly| PairVarOp::coef(p);
    let p = |j: usize, k: usize| PairPoly::wp(&g2, &g3, j, k);
    let p1 = |j: usize, k: usize| PairPoly::wp1(&g2, &g3, j, k);
    let p2 = |j: usize, k: usize| PairPoly::wp2(&g2, &g3, j, k);
    let (x1, x2, x3) = (0, 1, 2);

    let lap = &(&(&d(x1) * &d(x1)) + &(&d(x2) * &d(x2))) + &(&d(x3) * &d(x3));
    let pot = &(&p(x1, x2) + &p(x2, x3)) + &p(x3, x1);
    let h = &lap.scale(&Rational::from((-1, 2))) + &c(pot.scale(&q(2)));

    let op_p1 = &(&d(x1) + &d(x2)) + &d(x3);

    let op_p3 = &(&(&(&d(x1) * &d(x2)) * &d(x3)) + &(&c(p(x1, x2).scale(&q(2))) * &d(x3)))
        + &(&(&c(p(x2, x3).scale(&q(2))) * &d(x1)) + &(&c(p(x3, x1).scale(&q(2))) * &d(x2)));

    let u = &d(x1) - &d(x3);
    let v = &d(x2) - &d(x3);
    let uu = &u * &u;
    let vv = &v * &v;
    let uv = &u * &v;
    let mut i12 = &uu * &vv;
    i12 = &i12 - &(&c(p(x2, x3).scale(&q(8))) * &uu);
    i12 = &i12 - &(&c(p(x1, x3).scale(&q(8))) * &vv);
    let c_uv = &(&p(x1, x2) - &p(x1, x3)) - &p(x2, x3);
    i12 = &i12 + &(&c(c_uv.scale(&q(4))) * &uv);
    let c_u = &(&p1(x1, x2) + &p1(x1, x3)) + &p1(x2, x3).scale(&q(6));
    i12 = &i12 - &(&c(c_u.scale(&q(2))) * &u);
    let c_v = &(&(-&p1(x1, x2)) + &p1(x1, x3).scale(&q(6))) + &p1(x2, x3);
    i12 = &i12 - &(&c(c_v.scale(&q(2))) * &v);
    let mut c0 = &(&p2(x1, x2).scale(&q(-2)) - &p2(x1, x3).scale(&q(6))) - &p2(x2, x3).scale(&q(6));
    let sq =
        &(&(&p(x1, x2) * &p(x1, x2)) + &(&p(x1, x3) * &p(x1, x3))) + &(&p(x2, x3) * &p(x2, x3));
    c0 = &c0 + &sq.scale(&q(4));
    let cross = &(&(&p(x1, x2) * &p(x1, x3)) + &(&p(x1, x2) * &p(x2, x3)))
        + &(&p(x1, x3) * &p(x2, x3)).scale(&q(7));
    c0 = &c0 + &cross.scale(&q(8));
    i12 = &i12 + &c(c0);

    let cyc = [1, 2, 0];
    let i23 = i12.permute(cyc);
    let i31 = i23.permute(cyc);
    A3Operators {
        h,
        p1: op_p1,
        p3: op_p3,
        i12,
        i23,
        i31,
    }
}

/// The fixed test family: `1`, the six symbols `p_jk`, `p'_jk`, and all
/// degree-2 products of them.
pub fn test_functions(roots: &ExactRoots) -> Vec<PairPoly> {
    let (g2, g3) = (roots.g2(), roots.g3());
    let mut syms = Vec::new();
    for &(j, k) in &PAIRS {
        syms.push(PairPoly::wp(&g2, &g3, j, k));
        syms.push(PairPoly::wp1(&g2, &g3, j, k));
    }
    let mut out = vec![PairPoly::constant(&g2, &g3, Rational::from(1))];
    out.extend(syms.iter().cloned());
    for a in 0..syms.len() {
        for b in a..syms.len() {
            out.push(&syms[a] * &syms[b]);
        }
    }
    out
}

/// `(℘, ℘')` at the three differences of `x`, or [`Error::SamplePole`] if a
/// difference is within [`SAMPLE_MARGIN`] of the lattice.
pub fn pair_values(lat: &LatticeMp, x: &[Complex; 3]) -> Result<[(Complex, Complex); 3]> {
    let mut out = Vec::with_capacity(3);
    for &(j, k) in &PAIRS {
        let dx = x[j].clone() - &x[k];
        let dist = lat.lattice_distance(&dx);
        if dist < SAMPLE_MARGIN {
            return Err(Error::SamplePole(format!(
                "x{} - x{} is {dist:e} from the lattice",
                j + 1,
                k + 1
            )));
        }
        let s = lat.wp_set(&dx)?;
        out.push((s.wp, s.wpp));
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

/// `samples` seeded random points in the period parallelogram whose pairwise
/// differences clear [`SAMPLE_MARGIN`].
pub fn sample_points(lat: &LatticeMp, samples: usize, seed: u64) -> Vec<[Complex; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (w1, w3) = (lat.omega1.to_c64() * 2.0, lat.omega3.to_c64() * 2.0);
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let x: [Complex64; 3] = std::array::from_fn(|_| {
            w1 * rng.random_range(0.0..1.0) + w3 * rng.random_range(0.0..1.0)
        });
        let lx = x.map(|z| lat.lift(z));
        if PAIRS
            .iter()
            .all(|&(j, k)| lat.lattice_distance(&(lx[j].clone() - &lx[k])) >= SAMPLE_MARGIN)
        {
            out.push(lx);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct CommutatorReport {
    pub pair: String,
    pub precision: u32,
    pub samples: usize,
    pub max_residual: f64,
    /// Whether the commutator is zero already in the free algebra.
    pub symbolic_zero: bool,
}

impl CommutatorReport {
    pub fn to_json(&self) -> Value {
        json!({
            "pair": self.pair,
            "precision": self.precision,
            "samples": self.samples,
            "max_residual": self.max_residual,
            "symbolic_zero": self.symbolic_zero,
        })
    }
}

/// Max of `|[X,Y] f|` over the test family and of `|c_α|` over the
/// coefficients of `[X,Y]`, at the given points.
pub fn commutator_residual_at(
    x: &PairVarOp,
    y: &PairVarOp,
    lat: &LatticeMp,
    points: &[[Complex; 3]],
    tests: &[PairPoly],
) -> Result<f64> {
    let comm = x.commutator(y);
    if comm.is_zero() {
        return Ok(0.0);
    }
    let mut funcs: Vec<PairPoly> = tests.iter().map(|f| comm.apply(f)).collect();
    funcs.extend(comm.terms().map(|(_, c)| c.clone()));
    let vals: Vec<[(Complex, Complex); 3]> = points
        .iter()
        .map(|p| pair_values(lat, p))
        .collect::<Result<_>>()?;
    let worst = vals
        .par_iter()
        .map(|v| {
            funcs
                .iter()
                .map(|f| CNum::abs(&f.eval(v)))
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    Ok(worst)
}

/// [`commutator_residual_at`] on [`sample_points`].
pub fn commutator_residual(
    name: &str,
    x: &PairVarOp,
    y: &PairVarOp,
    roots: &ExactRoots,
    lat: &LatticeMp,
    samples: usize,
    seed: u64,
) -> Result<CommutatorReport> {
    let points = sample_points(lat, samples, seed);
    let r = commutator_residual_at(x, y, lat, &points, &test_functions(roots))?;
    Ok(CommutatorReport {
        pair: name.to_string(),
        precision: lat.precision,
        samples,
        max_residual: r,
        symbolic_zero: x.commutator(y).is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> (Rational, Rational) {
        (Rational::from(28), Rational::from(24))
    }

    #[test]
    fn derivative_of_wp_prime_squared_is_consistent() {
        let (g2, g3) = g();
        let p1 = PairPoly::wp1(&g2, &g3, 0, 1);
        // d/dx1 (p'^2) = 2 p' p''
        let lhs = (&p1 * &p1).diff(0);
        let rhs = (&p1 * &PairPoly::wp2(&g2, &g3, 0, 1)).scale(&Rational::from(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn odd_symbol_changes_sign_under_swap() {
        let (g2, g3) = g();
        let a = PairPoly::wp1(&g2, &g3, 1, 0);
        let b = PairPoly::wp1(&g2, &g3, 0, 1);
        assert_eq!(a, -&b);
        assert_eq!(b.permute([1, 0, 2]), a);
    }
}
