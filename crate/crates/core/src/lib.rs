//! Exact workbench for hypergraph positional games.
//!
//! The crate covers Maker-Breaker and Maker-Maker games on small boards, the
//! compiler from restricted Geography instances to 4-uniform hypergraphs, the
//! regular-play strategies on the compiled boards, and verifiers that check
//! those strategies by exhaustion.

pub mod bitset;
pub mod error;
pub mod geography;
pub mod hypergraph;
pub mod reduction;
pub mod solvers;
pub mod strategies;

pub use bitset::VertexSet;
pub use error::{Error, Result};
pub use hypergraph::{Board, Hypergraph, MbPosition, MmPosition, Outcome, Pairing, Player};
