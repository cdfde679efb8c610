//! Quasi-solvable spaces `V_α = span{Φ̂(z) zⁿ}`, the Darboux–Crum factors
//! `L_α` annihilating them, and the commuting operator `A` built from four
//! such factors.

use rug::Rational;

use super::{normalize_coupling, Alpha, Coupling};
use crate::algebra::Poly;
use crate::hp::{annihilator, DiffOp, Elem, Field, RatZ};
use crate::{Error, Result};

/// A basis of `V_α` together with the matrix of `H` on it.
#[derive(Clone, Debug)]
pub struct QuasiSpace {
    pub alpha: Alpha,
    pub basis: Vec<Elem>,
    /// `matrix[m][n]` is the coefficient of `Φ̂ z^m` in `H(Φ̂ z^n)`.
    pub matrix: Vec<Vec<Rational>>,
}

/// `Φ̂(z) = Π_{i=1}^{3} (z - e_i)^{α_i/2}`.
pub fn phi_hat(ctx: &Field, alpha: Alpha) -> Elem {
    let mut num = Poly::one();
    let mut pole = [0u32; 3];
    let mut mu = 0u8;
    for i in 0..3 {
        let a = alpha.0[i + 1];
        if a.rem_euclid(2) == 1 {
            mu |= 1 << i;
        }
        let k = a.div_euclid(2);
        if k >= 0 {
            num = &num * &ctx.lin[i].pow(k as u32);
        } else {
            pole[i] = (-k) as u32;
        }
    }
    Elem::from_ratz(ctx, mu, RatZ { num, pole })
}

/// `{Φ̂ zⁿ}_{n=0..d}` and the matrix of `H^{(l)}` on it, where `l` is the
/// coupling for which `α` is admissible. The closure `H V_α ⊂ V_α` is
/// verified exactly.
pub fn quasi_space_basis(ctx: &Field, alpha: Alpha) -> Result<QuasiSpace> {
    let d = alpha.dimension_index().ok_or_else(|| {
        Error::NotQuasiSolvable(format!(
            "d = -Σα/2 is not a non-negative integer for α = {alpha}"
        ))
    })? as usize;
    let phi = phi_hat(ctx, alpha);
    let h = DiffOp::hamiltonian(ctx, alpha.coupling().as_i64());
    let basis: Vec<Elem> = (0..=d)
        .map(|n| &phi * &Elem::poly(ctx, Poly::monomial(Rational::from(1), n)))
        .collect();
    let mut matrix = vec![vec![Rational::new(); d + 1]; d + 1];
    for (n, b) in basis.iter().enumerate() {
        let image = h.apply(b)?.div_monomial(&phi)?;
        let p = image
            .as_poly()
            .filter(|p| p.degree().is_none_or(|k| k <= d))
            .ok_or_else(|| Error::ClosureFailure(format!("H(Φ̂ z^{n}) leaves V_{alpha}")))?;
        for (m, row) in matrix.iter_mut().enumerate() {
            row[n] = p.coeff(m);
        }
    }
    Ok(QuasiSpace {
        alpha,
        basis,
        matrix,
    })
}

/// `L_α`, the monic annihilator of `V_α`, with the intertwining
/// `H^{(α+d)} L_α = L_α H^{(l)}` checked as an operator identity.
pub fn darboux_step(ctx: &Field, alpha: Alpha, l: Coupling) -> Result<DiffOp> {
    let d = alpha.dimension_index().ok_or_else(|| {
        Error::NotQuasiSolvable(format!(
            "d = -Σα/2 is not a non-negative integer for α = {alpha}"
        ))
    })?;
    if !alpha.admissible_for(l) {
        return Err(Error::Inadmissible {
            alpha: alpha.0,
            couplings: l.as_i64(),
        });
    }
    let space = quasi_space_basis(ctx, alpha)?;
    let op = annihilator(&space.basis)?;
    let h = DiffOp::hamiltonian(ctx, l.as_i64());
    let target = DiffOp::hamiltonian(ctx, alpha.0.map(|a| a + d as i64));
    let lhs = DiffOp::h_compose(target.coeff(0), &op)?;
    let rhs = op.compose(&h)?;
    if lhs != rhs {
        return Err(Error::IntertwineFailure(alpha.0));
    }
    Ok(op)
}

/// The four `L̃` subscripts of `A`, written left to right as in the product
/// (the rightmost factor acts first).
pub fn a_factors(l: Coupling) -> [Alpha; 4] {
    let [l0, l1, l2, l3] = l.as_i64();
    let s = l0 + l1 + l2 + l3;
    if s % 2 == 0 {
        let e0 = (-l0 + l1 + l2 + l3) / 2;
        let e1 = (l0 - l1 + l2 + l3) / 2;
        let e2 = (l0 + l1 - l2 + l3) / 2;
        let e3 = (l0 + l1 + l2 - l3) / 2;
        [
            Alpha([-e3, e2 + 1, e1 + 1, -e0]),
            Alpha([-l1, l0 + 1, -l3, l2 + 1]),
            Alpha([-e0, -e1, e2 + 1, e3 + 1]),
            Alpha([-l0, -l1, -l2, -l3]),
        ]
    } else {
        let o0 = (s + 1) / 2;
        let o1 = (l0 + l1 - l2 - l3 - 1) / 2;
        let o2 = (l0 - l1 + l2 - l3 - 1) / 2;
        let o3 = (l0 - l1 - l2 + l3 - 1) / 2;
        [
            Alpha([o2 + 1, -o3, -o0, -o1]),
            Alpha([-l1, -l0, l3 + 1, -l2]),
            Alpha([-o0, o1 + 1, -o2, -o3]),
            Alpha([l0 + 1, -l1, -l2, -l3]),
        ]
    }
}

/// The Darboux factors actually applied, rightmost first: each entry is the
/// selected subscript (or `None` for `L̃ = 1`) and the coupling it acts on.
pub fn a_chain(l: Coupling) -> Result<Vec<(Option<Alpha>, Coupling)>> {
    let mut cur = l;
    let mut out = Vec::with_capacity(4);
    for raw in a_factors(l).iter().rev() {
        let sel = raw.select();
        out.push((sel, cur));
        if let Some(b) = sel {
            if !b.admissible_for(cur) {
                return Err(Error::Inadmissible {
                    alpha: b.0,
                    couplings: cur.as_i64(),
                });
            }
            let d = b.dimension_index().unwrap() as i64;
            cur = normalize_coupling(b.0.map(|a| a + d));
        }
    }
    if cur != l {
        return Err(Error::RelationFailure(format!(
            "Darboux chain for {l} ends at {cur}"
        )));
    }
    Ok(out)
}

/// The monic operator `A` of order `2g+1` commuting with `H^{(l)}`; the
/// commutator is checked to vanish exactly.
pub fn build_a(ctx: &Field, l: Coupling) -> Result<DiffOp> {
    let mut a = DiffOp::identity(ctx);
    for (sel, cur) in a_chain(l)? {
        if let Some(b) = sel {
            a = darboux_step(ctx, b, cur)?.compose(&a)?;
        }
    }
    let g = l.genus() as usize;
    if a.order() != 2 * g + 1 || !a.is_monic() {
        return Err(Error::RelationFailure(format!(
            "A for {l} has order {} (expected {})",
            a.order(),
            2 * g + 1
        )));
    }
    let h = DiffOp::hamiltonian(ctx, l.as_i64());
    if !a.commutator(&h)?.is_zero() {
        return Err(Error::RelationFailure(format!("[A, H] ≠ 0 for {l}")));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::ExactRoots;
    use crate::hp::field;

    fn ctx() -> Field {
        field(&ExactRoots::from_ints(3, -1, -2).unwrap())
    }

    #[test]
    fn lame_two_space() {
        let f = ctx();
        let q = quasi_space_basis(&f, Alpha([-2, 0, 0, 0])).unwrap();
        assert_eq!(q.basis, vec![Elem::one(&f), Elem::z(&f)]);
        // g2 = 28
        assert_eq!(
            q.matrix,
            vec![
                vec![Rational::new(), Rational::from(14)],
                vec![Rational::from(6), Rational::new()]
            ]
        );
        let free = quasi_space_basis(&f, Alpha([0, 0, 0, 0])).unwrap();
        assert_eq!(free.matrix, vec![vec![Rational::new()]]);
        assert!(matches!(
            quasi_space_basis(&f, Alpha([1, 1, 1, 1])),
            Err(Error::NotQuasiSolvable(_))
        ));
    }

    #[test]
    fn lame_two_chain() {
        let chain: Vec<_> = a_chain(Coupling([2, 0, 0, 0]))
            .unwrap()
            .into_iter()
            .map(|(a, _)| a.unwrap().0)
            .collect();
        assert_eq!(
            chain,
            vec![[-2, 0, 0, 0], [0, 2, -1, -1], [1, -2, 1, 0], [2, -1, -1, 0]]
        );
    }

    #[test]
    fn trivial_step_is_derivative() {
        let f = ctx();
        assert_eq!(
            darboux_step(&f, Alpha([0, 0, 0, 0]), Coupling([0; 4])).unwrap(),
            DiffOp::d(&f, 1)
        );
        assert!(matches!(
            darboux_step(&f, Alpha([-2, 0, 0, 0]), Coupling([1, 0, 0, 0])),
            Err(Error::Inadmissible { .. })
        ));
    }
}
