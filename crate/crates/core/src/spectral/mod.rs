//! Objects attached to a coupling vector `l = (l_0, l_1, l_2, l_3)`: the
//! quasi-solvable spaces `V_α`, the Darboux–Crum factors `L_α`, the commuting
//! operator `A`, `Ξ(x,E)`, `Q(E)`, `a(E)`, `c(E)`, the invariant-space
//! characteristic polynomials and band edges.

pub mod bands;
pub mod darboux;
pub mod invariant;
pub mod xi;

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

pub use bands::{band_edges, roots_for_lattice};
pub use darboux::{a_factors, build_a, darboux_step, quasi_space_basis, QuasiSpace};
pub use invariant::{invariant_charpoly, InvariantComponent};
pub use xi::{spectral_data, verify_a_relations, RelationReport, SpectralData};

/// Non-negative couplings of `H = -d²/dx² + Σ l_i(l_i+1) ℘(x + ω_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coupling(pub [u32; 4]);

impl Coupling {
    pub fn new(l: [i64; 4]) -> Result<Self> {
        if l.iter().any(|&x| x < 0) {
            return Err(Error::InvalidInput(
                "couplings must be non-negative integers".into(),
            ));
        }
        Ok(Coupling(l.map(|x| x as u32)))
    }

    pub fn as_i64(&self) -> [i64; 4] {
        self.0.map(i64::from)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn genus(&self) -> u32 {
        genus(*self)
    }

    /// All vectors with `Σ l_i ≤ max_total`, in lexicographic order.
    pub fn all_up_to(max_total: u32) -> Vec<Coupling> {
        let mut out = Vec::new();
        for a in 0..=max_total {
            for b in 0..=max_total - a {
                for c in 0..=max_total - a - b {
                    for d in 0..=max_total - a - b - c {
                        out.push(Coupling([a, b, c, d]));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Coupling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

impl FromStr for Coupling {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::InvalidInput(format!(
                "expected four comma-separated couplings, got {s:?}"
            )));
        }
        let mut l = [0i64; 4];
        for (k, p) in parts.iter().enumerate() {
            l[k] = p.parse().map_err(|_| {
                Error::InvalidInput("couplings must be non-negative integers".into())
            })?;
        }
        Coupling::new(l)
    }
}

/// Degree `g` of the spectral curve; `A` has order `2g + 1`.
pub fn genus(l: Coupling) -> u32 {
    let mut k = l.0;
    k.sort_unstable_by(|a, b| b.cmp(a));
    let [k0, k1, k2, k3] = k;
    let s = k0 + k1 + k2 + k3;
    if s % 2 == 0 {
        if k0 + k3 >= k1 + k2 {
            k0
        } else {
            (k0 + k1 + k2 - k3) / 2
        }
    } else if k0 > k1 + k2 + k3 {
        k0
    } else {
        s.div_ceil(2)
    }
}

/// Exponent vector `α` with `α_i ∈ {-l_i, l_i + 1}` for some coupling `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alpha(pub [i64; 4]);

impl Alpha {
    /// `d = -Σ α_i / 2` when it is a non-negative integer.
    pub fn dimension_index(&self) -> Option<u32> {
        let s: i64 = self.0.iter().sum();
        (s % 2 == 0 && s <= 0).then(|| (-s / 2) as u32)
    }

    /// The unique non-negative coupling for which `α` is admissible.
    pub fn coupling(&self) -> Coupling {
        Coupling(
            self.0
                .map(|a| if a <= 0 { (-a) as u32 } else { (a - 1) as u32 }),
        )
    }

    pub fn admissible_for(&self, l: Coupling) -> bool {
        self.coupling() == l
    }

    /// `1 - α`.
    pub fn reflect(&self) -> Alpha {
        Alpha(self.0.map(|a| 1 - a))
    }

    /// The `L̃` / `U` selection: `α` when `Σα/2 ∈ Z≤0`, `1 - α` when
    /// `Σα/2 ∈ Z≥2`, nothing otherwise.
    pub fn select(&self) -> Option<Alpha> {
        let s: i64 = self.0.iter().sum();
        if s % 2 != 0 {
            None
        } else if s <= 0 {
            Some(*self)
        } else if s >= 4 {
            Some(self.reflect())
        } else {
            None
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// Coupling after a Darboux step: `α_i + d`, with `κ < 0` replaced by
/// `-κ - 1` (same `κ(κ+1)`).
pub(crate) fn normalize_coupling(k: [i64; 4]) -> Coupling {
    Coupling(k.map(|x| if x < 0 { (-x - 1) as u32 } else { x as u32 }))
}
