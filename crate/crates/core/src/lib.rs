//! Exact exterior calculus on symplectic manifolds with boundary.
//!
//! The crate provides polynomial-coefficient differential forms over Gaussian
//! rationals, the symplectic operator calculus on a Darboux frame (Lefschetz
//! sl(2) triple, delPlus/delMinus, adjoints, Laplacians), decision procedures
//! for symplectic boundary conditions on product manifolds, and exact
//! cohomology dimension computations with pairing integrals.

pub mod bc;
pub mod cohomology;
pub mod fixtures;
pub mod form;
pub mod frame;
pub mod identities;
pub mod linalg;
pub mod ops;
pub mod parser;
pub mod manifold;
pub mod poly;
pub mod randgen;
pub mod report;
pub mod scalar;
