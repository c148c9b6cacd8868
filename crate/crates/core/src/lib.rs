//! Exact ordering oracles for a catalog of groups, Conradian and crossing
//! checkers, dynamical realizations, the dense-orbit gluing construction on
//! the free group, and the bi-orderings of Thompson's group F.

pub mod affine;
pub mod catalog;
pub mod dynreal;
pub mod exact;
pub mod free;
pub mod order;
pub mod thompson;
pub mod z2;

mod sign;

pub use sign::Sign;
