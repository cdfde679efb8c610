//! Exact polynomial arithmetic over `Q` and the linear algebra built on it.

pub mod linalg;
pub mod mpoly;
pub mod poly;
pub mod ratfunc;
pub mod roots;

pub use mpoly::MPoly;
pub use poly::Poly;
pub use ratfunc::RatFunc;
