//! The four `H`-invariant components `U_α` and their characteristic
//! polynomials, whose product is `Q(E)`.

use super::darboux::quasi_space_basis;
use super::{Alpha, Coupling};
use crate::algebra::linalg::charpoly;
use crate::algebra::Poly;
use crate::hp::Field;
use crate::Result;

#[derive(Clone, Debug)]
pub struct InvariantComponent {
    /// Subscript of `U` as listed for the parity of `Σ l_i`.
    pub alpha: Alpha,
    /// The `V` actually spanning `U` (`None` for `U = {0}`).
    pub space: Option<Alpha>,
    pub dim: usize,
    pub charpoly: Poly,
}

/// The subscripts of the four components of `V`.
pub fn component_alphas(l: Coupling) -> [Alpha; 4] {
    let [l0, l1, l2, l3] = l.as_i64();
    if (l0 + l1 + l2 + l3) % 2 == 0 {
        [
            Alpha([-l0, -l1, -l2, -l3]),
            Alpha([-l0, -l1, l2 + 1, l3 + 1]),
            Alpha([-l0, l1 + 1, -l2, l3 + 1]),
            Alpha([-l0, l1 + 1, l2 + 1, -l3]),
        ]
    } else {
        [
            Alpha([-l0, -l1, -l2, l3 + 1]),
            Alpha([-l0, -l1, l2 + 1, -l3]),
            Alpha([-l0, l1 + 1, -l2, -l3]),
            Alpha([l0 + 1, -l1, -l2, -l3]),
        ]
    }
}

/// Characteristic polynomial of `H` on each component and their product.
pub fn invariant_charpoly(ctx: &Field, l: Coupling) -> Result<(Poly, Vec<InvariantComponent>)> {
    let mut full = Poly::one();
    let mut parts = Vec::with_capacity(4);
    for alpha in component_alphas(l) {
        let space = alpha.select();
        let (dim, cp) = match space {
            Some(b) => {
                let q = quasi_space_basis(ctx, b)?;
                (q.basis.len(), charpoly(&q.matrix))
            }
            None => (0, Poly::one()),
        };
        full = &full * &cp;
        parts.push(InvariantComponent {
            alpha,
            space,
            dim,
            charpoly: cp,
        });
    }
    Ok((full, parts))
}
