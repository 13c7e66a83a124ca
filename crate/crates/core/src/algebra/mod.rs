//! Monomial ideal arithmetic and the depth engine.

pub mod betti;
pub mod homology;
pub mod lattice;
pub mod monomial;

pub use betti::{
    betti, depth_function, depth_quotient, pd, upper_koszul_complex, BettiTable, DepthFunction,
};
pub use homology::{Field, ReducedHomology, SimplicialComplex, DEFAULT_PRIME};
pub use lattice::{lcm_lattice, LatticeWalker};
pub use monomial::{edge_ideal, AlgebraError, Monomial, MonomialIdeal};
