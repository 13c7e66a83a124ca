//! Edge ideals of hypergraphs and the depth of their powers.
//!
//! The crate recognizes simplicial forests, computes the edgewise domination
//! number and the star packing number exactly, computes multigraded Betti
//! numbers, projective dimension and depth of monomial quotients, and checks
//! the lower bounds `depth R/I^s >= max(inv - s + 1, 1)` on hyperforests,
//! including certificates for the underlying induction on `(|E_T|, s)`.

pub mod algebra;
pub mod bounds;
pub mod certificate;
pub mod forest;
pub mod format;
pub mod generators;
pub mod hypergraph;
pub mod invariants;

pub use algebra::{
    edge_ideal, AlgebraError, BettiTable, DepthFunction, Field, Monomial, MonomialIdeal,
};
pub use bounds::{
    verify_alpha2_bound, verify_epsilon_bound, verify_generic_invariant, verify_mixed, BoundError,
    BoundReport, InvariantKind, MixedIdealInstance,
};
pub use certificate::{
    build_certificate, build_certificate_with, verify_certificate, Certificate, LeafChoice,
};
pub use forest::{good_leaf_order, is_hyperforest, is_hypertree, ForestVerdict, GoodLeafOrder};
pub use format::{parse_hypergraph, FormatError};
pub use generators::{random_forest, random_hyperforest, GenConfig, InvalidConfig};
pub use hypergraph::{Edge, Hypergraph, HypergraphError, Vertex};
pub use invariants::{alpha2, epsilon, DominatingEdgeSet, Star, StarPacking};
