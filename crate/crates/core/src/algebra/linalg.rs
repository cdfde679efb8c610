//! Exact linear algebra kernels: fraction-free elimination over `Q[x]`,
//! Gaussian elimination over `Q(x)`, characteristic polynomials over `Q`.

use rug::Rational;

use super::poly::Poly;
use super::ratfunc::RatFunc;

/// Solution of a square polynomial system `M y = det(M) b` by fraction-free
/// (Bareiss) elimination. Returns `(det, y)` with `x = y / det`, or `None`
/// when `M` is singular.
pub fn solve_fraction_free(m: &[Vec<Poly>], rhs: &[Poly]) -> Option<(Poly, Vec<Poly>)> {
    let n = m.len();
    let mut a: Vec<Vec<Poly>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut prev = Poly::one();
    let mut negate = false;
    for k in 0..n {
        // lowest-degree nonzero pivot
        let p = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].deg())?;
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let t = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t
                    .div_exact(&prev)
                    .expect("Bareiss step must divide exactly");
            }
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    let mut y = vec![Poly::zero(); n];
    for i in (0..n).rev() {
        let mut s = &det * &a[i][n];
        for j in i + 1..n {
            s = &s - &(&a[i][j] * &y[j]);
        }
        y[i] = s
            .div_exact(&a[i][i])
            .expect("back substitution must divide exactly");
    }
    let det = if negate { -det } else { det };
    let y = if negate {
        y.into_iter().map(|v| -v).collect()
    } else {
        y
    };
    Some((det, y))
}

/// Basis of the right null space of `m` over `Q(x)`, one vector per free column.
pub fn nullspace(m: &[Vec<RatFunc>], ncols: usize) -> Vec<Vec<RatFunc>> {
    let mut a: Vec<Vec<RatFunc>> = m.to_vec();
    let rows = a.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].weight())
        else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].inv();
        for j in c..ncols {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..ncols {
                    if !a[r][j].is_zero() {
                        a[i][j] = &a[i][j] - &(&f * &a[r][j]);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![RatFunc::zero(); ncols];
            v[f] = RatFunc::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[row][f];
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(E·I - M)` by the Faddeev–LeVerrier recursion.
pub fn charpoly(m: &[Vec<Rational>]) -> Poly {
    let n = m.len();
    let mut coeffs = vec![Rational::new(); n + 1];
    coeffs[n] = Rational::from(1);
    let mut mk = vec![vec![Rational::new(); n]; n];
    for k in 1..=n {
        // mk <- M·mk + c_{n-k+1} I
        let mut next = vec![vec![Rational::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rational::new();
                for l in 0..n {
                    if m[i][l] != 0 && mk[l][j] != 0 {
                        s += Rational::from(&m[i][l] * &mk[l][j]);
                    }
                }
                next[i][j] = s;
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        mk = next;
        let mut tr = Rational::new();
        for i in 0..n {
            for l in 0..n {
                tr += Rational::from(&m[i][l] * &mk[l][i]);
            }
        }
        coeffs[n - k] = -tr / Rational::from(k as u32);
    }
    Poly::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64) -> Rational {
        Rational::from(a)
    }

    #[test]
    fn charpoly_of_two_by_two() {
        // {{0, 14}, {6, 0}} -> E^2 - 84
        let m = vec![vec![q(0), q(14)], vec![q(6), q(0)]];
        assert_eq!(charpoly(&m), Poly::from_ints(&[-84, 0, 1]));
    }

    #[test]
    fn fraction_free_matches_cramer() {
        let x = Poly::x();
        let one = Poly::one();
        let m = vec![vec![x.clone(), one.clone()], vec![one.clone(), x.clone()]];
        let rhs = vec![one.clone(), Poly::zero()];
        let (det, y) = solve_fraction_free(&m, &rhs).unwrap();
        // x0 = x/(x^2-1), x1 = -1/(x^2-1)
        let d = Poly::from_ints(&[-1, 0, 1]);
        let s = det.lead();
        assert_eq!(det, d.scale(&s));
        assert_eq!(y[0], x.scale(&s));
        assert_eq!(y[1], (-&one).scale(&s));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let x = RatFunc::from_poly(Poly::x());
        let one = RatFunc::one();
        let m = vec![vec![x.clone(), one.clone()], vec![&x * &x, x.clone()]];
        let ns = nullspace(&m, 2);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert!((&(&x * &v[0]) + &v[1]).is_zero());
    }
}
