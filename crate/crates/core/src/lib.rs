//! Reconstruction of graphs from their decks of vertex-deleted subgraphs,
//! driven by the modular decomposition.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: the small-graph value type and graph6.
//! * [`canon`]: canonical codes, isomorphism and automorphism orbits.
//! * [`modular`]: modules, indecomposability and the prime quotient.
//! * [`deck`]: decks and multiset bookkeeping over cards.
//! * [`reconstruct`]: recovering the skeleton, the intervals and finally the
//!   graph from a deck.
//! * [`oracle`]: exhaustive enumeration, brute-force preimages and the claim
//!   checker used by the acceptance suite.

pub mod canon;
pub mod deck;
pub mod error;
pub mod graph;
pub mod modular;
pub mod oracle;
pub mod reconstruct;

pub use canon::{
    automorphism_orbits, canonical_form, count_induced_copies, has_induced_subgraph, is_isomorphic,
    CanonicalCode, OrbitPartition,
};
pub use deck::{make_deck, Deck, Multiset};
pub use error::{Error, Graph6Error, Result};
pub use graph::{Graph, VertexSet};
pub use modular::{decompose, inflate, is_indecomposable, Decomposition};
pub use reconstruct::{reconstruct, Outcome, Provenance, ReconstructionResult, UnsupportedReason};
