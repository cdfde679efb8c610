//! Expansion of an odd-order operator in powers of `H`:
//! `A = (-1)^g Σ_j [(a_j d/dx - a_j'/2) + c_j] H^{g-j}`.

use rug::Rational;

use super::diffop::DiffOp;
use super::elem::Elem;
use crate::{Error, Result};

/// One level `(a_j, b_j, c_j)` of the expansion, with `b_j = -a_j'/2 + c_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedTerm {
    pub a: Elem,
    pub b: Elem,
    pub c: Rational,
}

/// Right division `R = S∘H + T` with `order(T) ≤ 1`; `H` must have leading
/// coefficient `-1` and order 2.
fn divide_by_h(r: &DiffOp, h: &DiffOp) -> Result<(DiffOp, DiffOp)> {
    let ctx = r.field();
    let mut rem = r.clone();
    let mut quo: Vec<Elem> = vec![Elem::zero(ctx); r.order().saturating_sub(1).max(1)];
    while !rem.is_zero() && rem.order() >= 2 {
        let m = rem.order();
        let lead = rem.coeff(m).clone();
        // (-lead ∂^{m-2}) ∘ H has leading term lead ∂^m
        let mut c = vec![Elem::zero(ctx); m - 1];
        c[m - 2] = -&lead;
        let s = DiffOp::new(ctx, c);
        rem = rem.sub(&s.compose(h)?)?;
        if !rem.is_zero() && rem.order() >= m {
            return Err(Error::ReductionFailure(
                "leading term did not cancel".into(),
            ));
        }
        quo[m - 2] = &quo[m - 2] - &lead;
    }
    Ok((DiffOp::new(ctx, quo), rem))
}

/// Decomposes `A` (order `2g+1`) against `H` (order 2, leading `-1`).
pub fn op_right_reduce(a: &DiffOp, h: &DiffOp, g: usize) -> Result<Vec<ReducedTerm>> {
    if a.order() != 2 * g + 1 {
        return Err(Error::ReductionFailure(format!(
            "order {} is not 2g+1 = {}",
            a.order(),
            2 * g + 1
        )));
    }
    if h.order() != 2 || *h.coeff(2) != Elem::from_int(h.field(), -1) {
        return Err(Error::ReductionFailure("H must be -d^2/dx^2 + V".into()));
    }
    // A = Σ_k (p_k ∂ + q_k) H^k
    let mut pq: Vec<(Elem, Elem)> = Vec::with_capacity(g + 1);
    let mut cur = a.clone();
    for _ in 0..=g {
        let (s, t) = divide_by_h(&cur, h)?;
        pq.push((t.coeff_or_zero(1), t.coeff_or_zero(0)));
        cur = s;
    }
    if !cur.is_zero() {
        return Err(Error::ReductionFailure(
            "nonzero quotient after g+1 divisions".into(),
        ));
    }
    let sign = if g.is_multiple_of(2) {
        Rational::from(1)
    } else {
        Rational::from(-1)
    };
    let half = Rational::from((1, 2));
    let mut out = Vec::with_capacity(g + 1);
    for j in 0..=g {
        let (p, q) = &pq[g - j];
        let aj = p.scale(&sign);
        let bj = q.scale(&sign);
        let cj = &bj + &aj.ddx().scale(&half);
        let c = cj
            .as_constant()
            .ok_or_else(|| Error::ReductionFailure(format!("c_{j} is not constant: {cj:?}")))?;
        out.push(ReducedTerm { a: aj, b: bj, c });
    }
    if !out[0].a.is_one() {
        return Err(Error::ReductionFailure("a_0 is not 1".into()));
    }
    Ok(out)
}

/// Rebuilds `(-1)^g Σ_j (a_j ∂ + b_j) H^{g-j}`.
pub fn reexpand(terms: &[ReducedTerm], h: &DiffOp) -> Result<DiffOp> {
    let ctx = h.field();
    let g = terms.len() - 1;
    let mut acc = DiffOp::zero(ctx);
    // Horner in H: acc = acc∘H + (a_j ∂ + b_j)
    for t in terms {
        let step = DiffOp::new(ctx, vec![t.b.clone(), t.a.clone()]);
        acc = acc.compose(h)?.add(&step)?;
    }
    let sign = if g.is_multiple_of(2) {
        Rational::from(1)
    } else {
        Rational::from(-1)
    };
    Ok(acc.scale(&sign))
}

/// `a_j''' - 4u a_j' + 4a_{j+1}' - 2u' a_j`, which vanishes for each `j`
/// when the `a_j` come from an operator commuting with `H`.
pub fn third_order_residual(terms: &[ReducedTerm], u: &Elem) -> Vec<Elem> {
    let up = u.ddx();
    let four = Rational::from(4);
    let two = Rational::from(2);
    (0..terms.len())
        .map(|j| {
            let a = &terms[j].a;
            let a1 = a.ddx();
            let a3 = a1.ddx().ddx();
            let next = terms
                .get(j + 1)
                .map(|t| t.a.ddx())
                .unwrap_or_else(|| Elem::zero(u.field()));
            &(&(&a3 - &(u * &a1).scale(&four)) + &next.scale(&four)) - &(&up * a).scale(&two)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::ExactRoots;
    use crate::hp::elem::field;

    #[test]
    fn free_case() {
        let f = field(&ExactRoots::from_ints(3, -1, -2).unwrap());
        let h = DiffOp::hamiltonian(&f, [0, 0, 0, 0]);
        let r = op_right_reduce(&DiffOp::d(&f, 1), &h, 0).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].a.is_one());
        assert_eq!(r[0].c, 0);
    }

    #[test]
    fn wrong_order_rejected() {
        let f = field(&ExactRoots::from_ints(3, -1, -2).unwrap());
        let h = DiffOp::hamiltonian(&f, [0, 0, 0, 0]);
        assert!(matches!(
            op_right_reduce(&DiffOp::d(&f, 2), &h, 0),
            Err(Error::ReductionFailure(_))
        ));
    }
}
