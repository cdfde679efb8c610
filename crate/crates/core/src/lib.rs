//! Finite-gap integration toolkit for Heun's equation in elliptic form
//! (the `BC_1` Inozemtsev model) and quasi-solvable sectors of the `BC_N`
//! Inozemtsev model.
//!
//! Layout:
//! - [`elliptic`]: Weierstrass/theta evaluation on a period lattice, in `f64`
//!   or at arbitrary precision.
//! - [`algebra`]: exact univariate/multivariate polynomials over `Q` and the
//!   small linear-algebra kernels built on them.
//! - [`hp`]: the exact function algebra in `z = ℘(x)` with half-integer powers
//!   of `z - e_i`, and differential operators over it.
//! - [`spectral`]: Darboux–Crum steps, the commuting operator `A`, `Ξ(x,E)`,
//!   the spectral polynomial `Q(E)` and band edges.
//! - [`monodromy`]: `Λ(x,E)`, Floquet multipliers by three routes, Bethe roots
//!   and the `l = (2,0,0,0)` Hermite–Krichever data.
//! - [`bcn`]: the gauged `BC_N` Hamiltonian on `W_d^sym`.
//! - [`a3`]: the three-particle `l = 1` operators and their commutators.
//! - [`report`]: deterministic JSON/CSV emission.
//! - [`acceptance`]: the end-to-end acceptance checks, shared by the test
//!   suite and `fingap selftest`.

pub mod a3;
pub mod acceptance;
pub mod algebra;
pub mod bcn;
pub mod elliptic;
pub mod error;
pub mod hp;
pub mod monodromy;
pub mod num;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
