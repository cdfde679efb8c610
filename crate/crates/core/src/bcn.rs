//! The gauged `BC_N` Inozemtsev Hamiltonian
//! `H = -Σ∂_j² + 2l(l+1)Σ_{j<k}(℘(x_j-x_k) + ℘(x_j+x_k)) + Σ_j Σ_i l_i(l_i+1)℘(x_j+ω_i)`
//! on the finite space `W_d^sym`, assembled exactly in `z_j = ℘(x_j)`.
//!
//! With `P(z) = 4z³ - g2 z - g3` the Laplacian becomes
//! `Σ_j (P(z_j)∂_j² + ½P'(z_j)∂_j)`, the one-body potentials are
//! `℘(x+ω_i) = e_i + (e_i-e_j)(e_i-e_k)/(z-e_i)`, and the pair term uses
//! `℘(u+v) + ℘(u-v) = (P(z_u)+P(z_v))/(2(z_u-z_v)²) - 2(z_u+z_v)`, which is
//! checked numerically before any `N ≥ 2` assembly.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Complex, Rational};
use serde_json::{json, Value};

use crate::algebra::linalg::charpoly;
use crate::algebra::mpoly::MPoly;
use crate::algebra::roots::roots_with_multiplicity;
use crate::algebra::Poly;
use crate::elliptic::{ExactRoots, Lattice64};
use crate::num::{digits_to_bits, CNum};
use crate::report::{complex_value, poly_value, rational_str};
use crate::spectral::Coupling;
use crate::{Error, Result};

pub const IDENTITY_TOL: f64 = 1e-10;
pub const IDENTITY_SAMPLES: usize = 100;

fn half(n: i64) -> Rational {
    Rational::from((n, 2))
}

/// Exponents of the gauge factor
/// `Φ(z) = Π_{j<k}(z_j-z_k)^a Π_j Π_{i=1}^3 (z_j-e_i)^{b_i}`; `b_0` only
/// enters through `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeChoice {
    pub a: Rational,
    pub b: [Rational; 4],
}

impl GaugeChoice {
    /// Checks `a ∈ {-l, l+1}` and `b_i ∈ {-l_i/2, (l_i+1)/2}`.
    pub fn new(l: u32, li: Coupling, a: Rational, b: [Rational; 4]) -> Result<Self> {
        let l = i64::from(l);
        if a != -l && a != l + 1 {
            return Err(Error::InvalidInput(format!(
                "a = {a} is not -l or l+1 for l = {l}"
            )));
        }
        for (i, bi) in b.iter().enumerate() {
            let li = i64::from(li.0[i]);
            if *bi != half(-li) && *bi != half(li + 1) {
                return Err(Error::InvalidInput(format!(
                    "b{i} = {bi} is not -l{i}/2 or (l{i}+1)/2"
                )));
            }
        }
        Ok(GaugeChoice { a, b })
    }

    /// `upper` picks `l+1` (resp. `(l_i+1)/2`) over `-l` (resp. `-l_i/2`).
    pub fn from_branches(l: u32, li: Coupling, a_upper: bool, b_upper: [bool; 4]) -> Self {
        let l = i64::from(l);
        let a = Rational::from(if a_upper { l + 1 } else { -l });
        let b = std::array::from_fn(|i| {
            let li = i64::from(li.0[i]);
            if b_upper[i] {
                half(li + 1)
            } else {
                half(-li)
            }
        });
        GaugeChoice { a, b }
    }

    /// All 32 branch combinations.
    pub fn all(l: u32, li: Coupling) -> Vec<Self> {
        (0..32u32)
            .map(|m| {
                GaugeChoice::from_branches(
                    l,
                    li,
                    m & 16 != 0,
                    std::array::from_fn(|i| m & (1 << i) != 0),
                )
            })
            .collect()
    }

    /// `a = l+1`, `b_0 = (l_0+1)/2`, `b_1 = (l_1+1)/2`.
    pub fn is_square_integrable(&self, l: u32, li: Coupling) -> bool {
        self.a == i64::from(l) + 1
            && self.b[0] == half(i64::from(li.0[0]) + 1)
            && self.b[1] == half(i64::from(li.0[1]) + 1)
    }

    pub fn d_rational(&self, n: usize) -> Rational {
        let s: Rational = self.b.iter().sum();
        -(Rational::from(&self.a * (n as i64 - 1)) + s)
    }

    /// `d = -((N-1)a + b_0 + b_1 + b_2 + b_3)`.
    pub fn d(&self, n: usize) -> Result<u32> {
        let d = self.d_rational(n);
        if *d.denom() != 1 || d < 0 {
            return Err(Error::NotQuasiSolvable(format!(
                "d = {d} is not a non-negative integer"
            )));
        }
        d.numer()
            .to_u32()
            .ok_or_else(|| Error::NotQuasiSolvable(format!("d = {d} is too large")))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": rational_str(&self.a),
            "b": self.b.iter().map(rational_str).collect::<Vec<_>>(),
        })
    }
}

/// Weakly decreasing multi-indices with entries in `0..=d`, in graded
/// reverse-lexicographic order: by total degree, then by the reversed
/// sequence.
pub fn wdsym_basis(n: usize, gauge: &GaugeChoice) -> Result<Vec<Vec<u32>>> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "particle count must be at least 1".into(),
        ));
    }
    Ok(multisets(n, gauge.d(n)?))
}

pub fn multisets(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for m in 0..=max {
            cur.push(m);
            rec(n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out.sort_by(|x, y| {
        let (sx, sy): (u32, u32) = (x.iter().sum(), y.iter().sum());
        sx.cmp(&sy).then_with(|| x.iter().rev().cmp(y.iter().rev()))
    });
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `Σ_{σ∈S_N} Π_j z_j^{m_σ(j)}`.
pub fn symmetrized_monomial(m: &[u32]) -> MPoly {
    let n = m.len();
    let mut out = MPoly::zero(n);
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mono = perm.iter().map(|&p| m[p]).collect();
        out.add_term(mono, Rational::from(1));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Order of the stabilizer of `m` in `S_N`.
fn stabilizer(m: &[u32]) -> u64 {
    let mut counts = BTreeMap::new();
    for &x in m {
        *counts.entry(x).or_insert(0u64) += 1;
    }
    counts.values().map(|&c| (1..=c).product::<u64>()).product()
}

/// Max relative error of the pair-term identity over `samples` random
/// `(u, v)` kept `0.1·min|ω|` away from the lattice (also `u ± v`).
pub fn pair_identity_error(lat: &Lattice64, samples: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (w1, w3) = (lat.omega(1), lat.omega(3));
    let margin = 0.1 * w1.norm().min(w3.norm());
    let (g2, g3) = (lat.g2, lat.g3);
    let p = |z: Complex64| z * z * z * 4.0 - g2 * z - g3;
    let mut worst: f64 = 0.0;
    let mut done = 0;
    let mut tries = 0;
    while done < samples {
        tries += 1;
        if tries > 100 * samples {
            return Err(Error::NonConvergence(
                "could not place identity samples".into(),
            ));
        }
        let pt = |s: f64, t: f64| w1 * (2.0 * s) + w3 * (2.0 * t);
        let u = pt(rng.random_range(0.0..1.0), rng.random_range(0.0..1.0));
        let v = pt(rng.random_range(0.0..1.0), rng.random_range(0.0..1.0));
        if [u, v, u + v, u - v]
            .iter()
            .any(|x| lat.lattice_distance(x) < margin)
        {
            continue;
        }
        let (zu, zv) = (lat.wp(&u)?, lat.wp(&v)?);
        let lhs = lat.wp(&(u + v))? + lat.wp(&(u - v))?;
        let rhs = (p(zu) + p(zv)) / ((zu - zv) * (zu - zv) * 2.0) - (zu + zv) * 2.0;
        worst = worst.max((lhs - rhs).norm() / lhs.norm().max(1.0));
        done += 1;
    }
    Ok(worst)
}

/// The validation gate: errors with [`Error::IdentityValidationFailed`] unless
/// the identity holds to [`IDENTITY_TOL`] at [`IDENTITY_SAMPLES`] pairs.
pub fn validate_pair_identity(roots: &ExactRoots) -> Result<f64> {
    let lat = Lattice64::from_roots(roots, 16)?;
    let err = pair_identity_error(&lat, IDENTITY_SAMPLES, 0x5eed)?;
    if !(err <= IDENTITY_TOL) {
        return Err(Error::IdentityValidationFailed(err));
    }
    Ok(err)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Factor {
    /// `z_j - z_k`, `j < k`.
    Pair(usize, usize),
    /// `z_j - e_i`.
    Root(usize, usize),
}

/// `1/(z_j - z_k)` as a sign and a canonical factor.
fn pair(j: usize, k: usize) -> (i64, Factor) {
    if j < k {
        (1, Factor::Pair(j, k))
    } else {
        (-1, Factor::Pair(k, j))
    }
}

struct Ring {
    n: usize,
    e: [Rational; 3],
    g2: Rational,
    g3: Rational,
}

impl Ring {
    fn var(&self, j: usize) -> MPoly {
        MPoly::var(self.n, j)
    }

    fn c(&self, a: Rational) -> MPoly {
        MPoly::constant(self.n, a)
    }

    fn factor(&self, f: Factor) -> MPoly {
        match f {
            Factor::Pair(j, k) => &self.var(j) - &self.var(k),
            Factor::Root(j, i) => &self.var(j) - &self.c(self.e[i].clone()),
        }
    }

    fn divide(&self, p: &MPoly, f: Factor) -> Option<MPoly> {
        match f {
            Factor::Pair(j, k) => p.div_linear(j, Some(k), &Rational::new()),
            Factor::Root(j, i) => p.div_linear(j, None, &self.e[i]),
        }
    }

    /// `P(z_j) = 4z_j³ - g2 z_j - g3`.
    fn p(&self, j: usize) -> MPoly {
        let z = self.var(j);
        let z3 = z.pow(3);
        &(&z3.scale(&Rational::from(4)) - &z.scale(&self.g2)) - &self.c(self.g3.clone())
    }

    /// `P'(z_j) = 12z_j² - g2`.
    fn dp(&self, j: usize) -> MPoly {
        &self.var(j).pow(2).scale(&Rational::from(12)) - &self.c(self.g2.clone())
    }
}

/// A polynomial over a product of the linear factors.
#[derive(Clone)]
struct Frac {
    num: MPoly,
    den: BTreeMap<Factor, u32>,
}

impl Frac {
    fn new(num: MPoly, factors: &[Factor]) -> Self {
        let mut den = BTreeMap::new();
        for &f in factors {
            *den.entry(f).or_insert(0) += 1;
        }
        Frac { num, den }
    }

    fn add(self, o: Frac, ring: &Ring) -> Frac {
        let mut den = self.den.clone();
        for (f, &e) in &o.den {
            let x = den.entry(*f).or_insert(0);
            *x = (*x).max(e);
        }
        let lift = |fr: &Frac| {
            let mut p = fr.num.clone();
            for (f, &e) in &den {
                for _ in fr.den.get(f).copied().unwrap_or(0)..e {
                    p = &p * &ring.factor(*f);
                }
            }
            p
        };
        Frac {
            num: &lift(&self) + &lift(&o),
            den,
        }
    }

    fn into_poly(self, ring: &Ring, what: &str) -> Result<MPoly> {
        let mut p = self.num;
        for (f, e) in self.den {
            for _ in 0..e {
                p = ring.divide(&p, f).ok_or_else(|| {
                    Error::ClosureFailure(format!("{what} is not polynomial (factor {f:?})"))
                })?;
            }
        }
        Ok(p)
    }
}

fn sum_fracs(parts: Vec<Frac>, ring: &Ring) -> Frac {
    let mut it = parts.into_iter();
    let first = it.next().expect("at least one part");
    it.fold(first, |acc, f| acc.add(f, ring))
}

/// `Φ⁻¹ H Φ` on symmetric polynomials:
/// `-Σ_j (P_j ∂_j² + c_j ∂_j) - 2a Σ_{j<k} (P_j∂_j - P_k∂_k)/(z_j-z_k) + W`.
struct GaugedH {
    p: Vec<MPoly>,
    /// `½P'_j + 2P_j Σ_i b_i/(z_j-e_i)`.
    first: Vec<MPoly>,
    a: Rational,
    /// `Φ⁻¹ H Φ · 1`.
    w: MPoly,
}

fn gauged_hamiltonian(ring: &Ring, l: u32, li: Coupling, g: &GaugeChoice) -> Result<GaugedH> {
    let n = ring.n;
    let q = |x: i64| Rational::from(x);
    let ll = q(i64::from(l) * (i64::from(l) + 1));
    let a = g.a.clone();
    let b = &g.b;
    let p: Vec<MPoly> = (0..n).map(|j| ring.p(j)).collect();
    let dp: Vec<MPoly> = (0..n).map(|j| ring.dp(j)).collect();
    let half_q = Rational::from((1, 2));

    let mut first = Vec::with_capacity(n);
    for j in 0..n {
        let mut c = dp[j].scale(&half_q);
        for i in 0..3 {
            let pj = ring
                .divide(&p[j], Factor::Root(j, i))
                .expect("P vanishes at e_i");
            c = &c + &pj.scale(&Rational::from(&b[i + 1] * 2u32));
        }
        first.push(c);
    }

    let mut w = MPoly::zero(n);
    // one-body part per coordinate
    for j in 0..n {
        let mut parts = Vec::new();
        let l0 = i64::from(li.0[0]);
        let mut poly = ring.var(j).scale(&q(l0 * (l0 + 1)));
        for i in 0..3 {
            let lk = i64::from(li.0[i + 1]);
            let k = q(lk * (lk + 1));
            let r = Rational::from(&k * &ring.e[i]);
            poly = &poly + &ring.c(r);
            let res = residue(&ring.e, i);
            parts.push(Frac::new(ring.c(k * res), &[Factor::Root(j, i)]));
            let bi = &b[i + 1];
            parts.push(Frac::new(
                p[j].scale(bi),
                &[Factor::Root(j, i), Factor::Root(j, i)],
            ));
            parts.push(Frac::new(
                dp[j].scale(&Rational::from(bi * &half_q)).scale(&q(-1)),
                &[Factor::Root(j, i)],
            ));
            for i2 in 0..3 {
                let c = -Rational::from(bi * &b[i2 + 1]);
                parts.push(Frac::new(
                    p[j].scale(&c),
                    &[Factor::Root(j, i), Factor::Root(j, i2)],
                ));
            }
        }
        parts.push(Frac::new(poly, &[]));
        w = &w + &sum_fracs(parts, ring).into_poly(ring, "one-body potential")?;
    }
    // pair part per unordered pair
    for j in 0..n {
        for k in j + 1..n {
            let f = Factor::Pair(j, k);
            let mut parts = Vec::new();
            let pp = &p[j] + &p[k];
            // a P/(z_j-z_k)² from -P∂L, -a² P/(z_j-z_k)² from -P L², l(l+1) from V
            let c2 = (&a - Rational::from(&a * &a)) + &ll;
            parts.push(Frac::new(pp.scale(&c2), &[f, f]));
            let zz = &ring.var(j) + &ring.var(k);
            parts.push(Frac::new(zz.scale(&(ll.clone() * q(-4))), &[]));
            for (u, v) in [(j, k), (k, j)] {
                let (s, f) = pair(u, v);
                let sa = Rational::from(&a * s);
                parts.push(Frac::new(
                    dp[u].scale(&Rational::from(&sa * &half_q)).scale(&q(-1)),
                    &[f],
                ));
                for i in 0..3 {
                    let c = Rational::from(&sa * &b[i + 1]) * q(-2);
                    parts.push(Frac::new(p[u].scale(&c), &[f, Factor::Root(u, i)]));
                }
            }
            w = &w + &sum_fracs(parts, ring).into_poly(ring, "pair potential")?;
        }
    }
    // three-body part per unordered triple
    let a2 = -Rational::from(&a * &a);
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let mut parts = Vec::new();
                for (j, k, m) in [
                    (x, y, z),
                    (x, z, y),
                    (y, x, z),
                    (y, z, x),
                    (z, x, y),
                    (z, y, x),
                ] {
                    let (s1, f1) = pair(j, k);
                    let (s2, f2) = pair(j, m);
                    parts.push(Frac::new(
                        p[j].scale(&Rational::from(&a2 * (s1 * s2))),
                        &[f1, f2],
                    ));
                }
                w = &w + &sum_fracs(parts, ring).into_poly(ring, "three-body term")?;
            }
        }
    }
    Ok(GaugedH { p, first, a, w })
}

fn residue(e: &[Rational; 3], i: usize) -> Rational {
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    Rational::from(&e[i] - &e[j]) * Rational::from(&e[i] - &e[k])
}

impl GaugedH {
    fn apply(&self, g: &MPoly) -> Result<MPoly> {
        let n = g.nvars();
        let mut h = &self.w * g;
        let gd: Vec<MPoly> = (0..n).map(|j| g.diff(j)).collect();
        for j in 0..n {
            h = &h - &(&self.p[j] * &gd[j].diff(j));
            h = &h - &(&self.first[j] * &gd[j]);
        }
        let two_a = Rational::from(&self.a * 2u32);
        for j in 0..n {
            for k in j + 1..n {
                let num = &(&self.p[j] * &gd[j]) - &(&self.p[k] * &gd[k]);
                let quo = num
                    .div_linear(j, Some(k), &Rational::new())
                    .ok_or_else(|| {
                        Error::ClosureFailure("pair derivative term is not polynomial".into())
                    })?;
                h = &h - &quo.scale(&two_a);
            }
        }
        Ok(h)
    }
}

/// `matrix[i][j]` is the coefficient of `basis[i]` in `H·basis[j]`, where the
/// basis functions are `Φ Σ_σ Π z_j^{m_σ(j)}`.
#[derive(Clone, Debug)]
pub struct BcnMatrix {
    pub n: usize,
    pub l: u32,
    pub li: Coupling,
    pub gauge: GaugeChoice,
    pub d: u32,
    pub basis: Vec<Vec<u32>>,
    pub matrix: Vec<Vec<Rational>>,
}

/// Exact matrix of `Φ⁻¹ H Φ` on `W_d^sym`. Any image outside the span is a
/// [`Error::ClosureFailure`].
pub fn bcn_matrix(
    n: usize,
    l: u32,
    li: Coupling,
    gauge: &GaugeChoice,
    roots: &ExactRoots,
) -> Result<BcnMatrix> {
    let basis = wdsym_basis(n, gauge)?;
    let d = gauge.d(n)?;
    if n >= 2 {
        validate_pair_identity(roots)?;
    }
    let ring = Ring {
        n,
        e: roots.e.clone(),
        g2: roots.g2(),
        g3: roots.g3(),
    };
    let h = gauged_hamiltonian(&ring, l, li, gauge)?;
    let polys: Vec<MPoly> = basis.iter().map(|m| symmetrized_monomial(m)).collect();
    let dim = basis.len();
    let mut matrix = vec![vec![Rational::new(); dim]; dim];
    for (j, g) in polys.iter().enumerate() {
        let img = h.apply(g)?;
        let mut rest = img.clone();
        for (i, m) in basis.iter().enumerate() {
            let c = img.coeff(m) / Rational::from(stabilizer(m));
            rest = &rest - &polys[i].scale(&c);
            matrix[i][j] = c;
        }
        if !rest.is_zero() {
            return Err(Error::ClosureFailure(format!(
                "image of {:?} leaves W_d^sym",
                basis[j]
            )));
        }
    }
    Ok(BcnMatrix {
        n,
        l,
        li,
        gauge: gauge.clone(),
        d,
        basis,
        matrix,
    })
}

#[derive(Clone, Debug)]
pub struct BcnSpectrum {
    /// `det(E - M)`.
    pub charpoly: Poly,
    /// Distinct eigenvalues with multiplicities.
    pub eigenvalues: Vec<(Complex, usize)>,
    /// All eigenvalues real (exact Sturm count).
    pub reality: bool,
    pub square_integrable: bool,
    pub precision: u32,
}

/// Eigenvalues from the exact characteristic polynomial, polished at
/// `precision` decimal digits.
pub fn bcn_spectra(m: &BcnMatrix, precision: u32) -> Result<BcnSpectrum> {
    let cp = charpoly(&m.matrix);
    let like = <Complex as CNum>::from_c64(digits_to_bits(precision), Complex64::new(0.0, 0.0));
    let eigenvalues = roots_with_multiplicity(&cp, &like)?;
    let reality = cp
        .squarefree()
        .iter()
        .all(|(f, _)| f.real_root_count() == f.deg());
    Ok(BcnSpectrum {
        charpoly: cp,
        eigenvalues,
        reality,
        square_integrable: m.gauge.is_square_integrable(m.l, m.li),
        precision,
    })
}

impl BcnMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_json(&self, spec: &BcnSpectrum) -> Value {
        let digits = spec.precision as usize;
        let eig: Vec<Value> = spec
            .eigenvalues
            .iter()
            .flat_map(|(z, k)| std::iter::repeat_n(complex_value(z, digits), *k))
            .collect();
        let mut gauge = self.gauge.to_json();
        gauge["d"] = json!(self.d);
        json!({
            "N": self.n,
            "couplings": {"l": self.l, "li": self.li.0},
            "gauge": gauge,
            "dim": self.dim(),
            "basis": self.basis,
            "matrix": self.matrix.iter().map(|r| r.iter().map(rational_str).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "charpoly": poly_value(&spec.charpoly),
            "eigenvalues": eig,
            "reality": spec.reality,
            "square_integrable": spec.square_integrable,
        })
    }
}

#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub li: Coupling,
    /// Admissible `N = 1` gauges (the pair exponent `a` plays no role) with
    /// their characteristic polynomials.
    pub components: Vec<(GaugeChoice, u32, Poly)>,
    pub product: Poly,
    pub q: Poly,
}

/// `N = 1`: the characteristic polynomials over all admissible gauges must
/// multiply to `Q(E)`. Otherwise [`Error::MismatchFailure`].
pub fn crosscheck_n1(li: Coupling, roots: &ExactRoots, q: &Poly) -> Result<CrossCheck> {
    let mut components = Vec::new();
    let mut product = Poly::one();
    for m in 0..16u32 {
        let g =
            GaugeChoice::from_branches(0, li, false, std::array::from_fn(|i| m & (1 << i) != 0));
        if components
            .iter()
            .any(|(h, _, _): &(GaugeChoice, u32, Poly)| h.b == g.b)
        {
            continue;
        }
        let Ok(d) = g.d(1) else { continue };
        let bm = bcn_matrix(1, 0, li, &g, roots)?;
        let cp = charpoly(&bm.matrix);
        product = &product * &cp;
        components.push((g, d, cp));
    }
    if product != q.monic() {
        return Err(Error::MismatchFailure(format!(
            "product of characteristic polynomials {} differs from Q = {}",
            product.display("E"),
            q.display("E")
        )));
    }
    Ok(CrossCheck {
        li,
        components,
        product,
        q: q.clone(),
    })
}

impl CrossCheck {
    pub fn to_json(&self) -> Value {
        json!({
            "couplings": self.li.0,
            "components": self.components.iter().map(|(g, d, cp)| {
                let mut v = g.to_json();
                v["d"] = json!(d);
                v["charpoly"] = poly_value(cp);
                v
            }).collect::<Vec<_>>(),
            "product": poly_value(&self.product),
            "Q": poly_value(&self.q),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_order_and_count() {
        let b = multisets(2, 1);
        assert_eq!(b, vec![vec![0, 0], vec![1, 0], vec![1, 1]]);
        for n in 1..=4 {
            for d in 0..=3 {
                assert_eq!(
                    multisets(n, d).len() as u64,
                    binomial(u64::from(d) + n as u64, n as u64)
                );
            }
        }
    }

    #[test]
    fn stabilizer_orders() {
        assert_eq!(stabilizer(&[1, 1, 0]), 2);
        assert_eq!(stabilizer(&[2, 2, 2]), 6);
        assert_eq!(symmetrized_monomial(&[1, 1]).coeff(&[1, 1]), 2);
    }
}
