//! Independent sets in graphs that exclude a fixed induced subgraph.
//!
//! The crate is organized around one pipeline:
//!
//! * [`graph`] — compact undirected graphs (bitset adjacency), file formats,
//!   and the structural transforms used to build test instances.
//! * [`pattern`] — small fixed patterns, induced-copy detection and counting,
//!   and the substitution operation that composes two patterns into one.
//! * [`oracle`] — exact maximum independent set / clique by branch and bound,
//!   plus the cograph solver and the checkable predicates used to validate
//!   approximate output.
//! * [`approx`] — the approximation algorithms themselves, each returning a
//!   [`approx::Solution`] whose certificate explains which branch produced it.
//! * [`gen`] — seeded generators for hard instances: blow-ups, short-cycle
//!   removal, the triangle-free process, and gap compositions.
//! * [`bench`] — a small experiment harness that runs algorithms against
//!   generated corpora and emits deterministic CSV.
//!
//! Everything downstream of a seed is deterministic: same seed, same bytes.

pub mod approx;
pub mod bench;
pub mod gen;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod pattern;

pub use graph::{Graph, VertexSet};
pub use pattern::Pattern;
