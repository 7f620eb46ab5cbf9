//! Exact computations with linear q-difference systems over Q(x).
//!
//! A system is `Y(qx) = Y(x) A(x)` with `A` invertible over Q(x), i.e. the row convention
//! `Phi(e) = e A` on a basis `e`. The crate covers q-calculus identities, the module
//! constructions, p-adic curvature and radii, rational solutions, and the classification
//! of rank one, triangular, antidiagonal and q-hypergeometric cases.

pub mod exact;
pub mod qcalc;
pub mod qmodule;
pub mod arithmetic;
pub mod solver;
pub mod classify;
