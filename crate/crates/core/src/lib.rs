//! Exact combinatorics of tiered graphs.
//!
//! The crate builds complete tiered graphs and their quasi-tiered extensions
//! `H ∪ Q`, enumerates tiered trees, computes their weight polynomials and
//! the Tutte polynomials of the graphs that generate them, and implements the
//! two-tier duality `G ↦ G'` together with the tree bijection `T ↦ T*`.
//! [`harness`] checks the resulting identities exhaustively at small sizes.
//!
//! Everything is exact: polynomial coefficients are arbitrary-precision
//! integers and edge orders are integer pairs.

pub mod activity;
pub mod canon;
pub mod duality;
pub mod error;
pub mod graph;
pub mod harness;
pub mod io;
pub mod poly;
pub mod trees;
pub mod tutte;

mod dsu;

pub use activity::{external_activity, internal_activity, EdgeOrder, OrderKey};
pub use error::{Error, Result};
pub use graph::{
    complete_tiered_graph, enumerate_complete_family, Edge, EdgeId, EdgeSet, Multigraph,
    OrderedPartition, QuasiTieredGraph, TieredGraph, Vertex,
};
pub use poly::{BiPoly, UniPoly};
pub use trees::{weight_polynomial, TieredTree};
pub use tutte::{tutte, tutte_c, TutteEngine};
