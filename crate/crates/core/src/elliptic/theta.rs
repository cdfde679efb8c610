//! Jacobi theta series in the nome `q = exp(iπτ)`.
//!
//! Conventions: `θ1(v) = 2 Σ_{n≥0} (-1)^n q^{(n+1/2)^2} sin((2n+1)v)`, and
//! `θ2, θ3, θ4` as usual. All series are summed until two consecutive terms
//! fall below the working epsilon relative to the running sum.

use crate::num::CNum;

const MAX_TERMS: usize = 20_000;

/// Values of `θ1, θ1', θ1'', θ2, θ3, θ4` at one argument.
#[derive(Clone, Debug)]
pub struct ThetaValues<T> {
    pub th1: T,
    pub th1p: T,
    pub th1pp: T,
    pub th2: T,
    pub th3: T,
    pub th4: T,
}

fn converged<T: CNum>(term: &T, sum: &T, eps: f64) -> bool {
    let t = term.abs();
    t == 0.0 || t <= eps * sum.abs().max(f64::MIN_POSITIVE)
}

/// Evaluates all four theta functions (and `θ1`'s first two derivatives)
/// at `v`, given `q` and `q^{1/4}`.
pub fn theta_all<T: CNum>(v: &T, q: &T, q14: &T) -> ThetaValues<T> {
    let eps = v.epsilon() * 0.25;
    let zero = v.zero_like();
    let one = v.one_like();
    let i = v.lift(0.0, 1.0);
    // w = e^{iv}; odd harmonics use w^{2n+1}, even ones w^{2n}.
    let w = (i.clone() * v).exp();
    let winv = one.clone() / &w;
    let w2 = w.square();
    let w2inv = winv.square();
    let q2 = q.square();

    let (mut th1, mut th1p, mut th1pp, mut th2) =
        (zero.clone(), zero.clone(), zero.clone(), zero.clone());
    // q^{(n+1/2)^2} = q^{1/4} q^{n(n+1)}
    let mut qn = q14.clone();
    let mut qstep = q2.clone(); // q^{2(n+1)}
    let mut wp = w.clone();
    let mut wm = winv.clone();
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let k = (2 * n + 1) as f64;
        let sin = (wp.clone() - &wm) / (i.clone() * v.lift(2.0, 0.0));
        let cos = (wp.clone() + &wm) * v.lift(0.5, 0.0);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let c1 = qn.scale(2.0 * sign);
        let t1 = c1.clone() * &sin;
        let t1p = c1.clone() * &cos.scale(k);
        let t1pp = c1 * &sin.scale(-k * k);
        let t2 = qn.scale(2.0) * &cos;
        th1 = th1 + &t1;
        th1p = th1p + &t1p;
        th1pp = th1pp + &t1pp;
        th2 = th2 + &t2;
        if converged(&t1p, &th1p, eps) && converged(&t2, &th2, eps) && converged(&t1pp, &th1pp, eps)
        {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
        qn = qn * &qstep;
        qstep = qstep * &q2;
        wp = wp * &w2;
        wm = wm * &w2inv;
    }

    let (mut th3, mut th4) = (one.clone(), one.clone());
    // q^{n^2}, advancing by q^{2n+1}
    let mut qn = q.clone();
    let mut qstep = q.clone() * &q2;
    let mut wp = w2.clone();
    let mut wm = w2inv.clone();
    let mut small = 0;
    for n in 1..MAX_TERMS {
        let cos2 = (wp.clone() + &wm) * v.lift(0.5, 0.0);
        let t3 = qn.scale(2.0) * &cos2;
        let t4 = if n % 2 == 0 { t3.clone() } else { -t3.clone() };
        th3 = th3 + &t3;
        th4 = th4 + &t4;
        if converged(&t3, &th3, eps) && converged(&t4, &th4, eps) {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
        qn = qn * &qstep;
        qstep = qstep * &q2;
        wp = wp * &w2;
        wm = wm * &w2inv;
    }
    ThetaValues {
        th1,
        th1p,
        th1pp,
        th2,
        th3,
        th4,
    }
}

/// Theta constants at `v = 0`: `θ1'(0)`, `θ1'''(0)`, `θ2(0)`, `θ3(0)`, `θ4(0)`.
#[derive(Clone, Debug)]
pub struct ThetaConstants<T> {
    pub th1p: T,
    pub th1ppp: T,
    pub th2: T,
    pub th3: T,
    pub th4: T,
}

pub fn theta_constants<T: CNum>(q: &T, q14: &T) -> ThetaConstants<T> {
    let eps = q.epsilon() * 0.25;
    let zero = q.zero_like();
    let one = q.one_like();
    let q2 = q.square();
    let (mut th1p, mut th1ppp, mut th2) = (zero.clone(), zero.clone(), zero);
    let mut qn = q14.clone();
    let mut qstep = q2.clone();
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let k = (2 * n + 1) as f64;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let t1 = qn.scale(2.0 * sign * k);
        let t3 = qn.scale(-2.0 * sign * k * k * k);
        let t2 = qn.scale(2.0);
        th1p = th1p + &t1;
        th1ppp = th1ppp + &t3;
        th2 = th2 + &t2;
        if converged(&t3, &th1ppp, eps) && converged(&t2, &th2, eps) {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
        qn = qn * &qstep;
        qstep = qstep * &q2;
    }
    let (mut th3, mut th4) = (one.clone(), one);
    let mut qn = q.clone();
    let mut qstep = q.clone() * &q2;
    let mut small = 0;
    for n in 1..MAX_TERMS {
        let t = qn.scale(2.0);
        let t4 = if n % 2 == 0 { t.clone() } else { -t.clone() };
        th3 = th3 + &t;
        th4 = th4 + &t4;
        if converged(&t, &th3, eps) {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
        qn = qn * &qstep;
        qstep = qstep * &q2;
    }
    ThetaConstants {
        th1p,
        th1ppp,
        th2,
        th3,
        th4,
    }
}
