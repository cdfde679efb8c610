//! Exact half-power function algebra in `z = ℘(x)` and differential
//! operators over it.

pub mod annihilator;
pub mod diffop;
pub mod elem;
pub mod reduce;
pub mod text;

pub use annihilator::annihilator;
pub use diffop::DiffOp;
pub use elem::{field, Elem, Field, RatZ};
pub use reduce::{op_right_reduce, ReducedTerm};
