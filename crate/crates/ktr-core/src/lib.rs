//! K-terminal reliability (KTR) of geometric intersection models.
//!
//! Vertices fail independently with known probabilities, edges are perfectly
//! reliable, and the KTR of a graph is the probability that a chosen set of
//! target vertices stays mutually connected. This crate works directly on
//! geometric representations:
//!
//! - [`geometry`]: arcs and chords on an integer-position circle, with
//!   intersection predicates, clockwise labeling, and neighborhood extraction.
//! - [`model`]: reliability instances (model + failure probabilities +
//!   targets) and their intersection-graph adjacency.
//! - [`exact`]: an O(n + m) solver for proper circular-arc instances built
//!   from a per-gap disconnection sweep and an at-least-two aggregation.
//! - [`oracle`]: exhaustive and Monte Carlo ground-truth solvers used to
//!   cross-check the exact solver.
//! - [`hardness`]: a constructive reduction from edge-cover counting in
//!   bipartite graphs to KTR on circle graphs, with exact counters that
//!   certify the reduction identity.
//! - [`fmt`]: the PCA/CHD/BIP text formats.
//! - [`gen`]: a seeded generator of proper circular-arc instances.

pub mod error;
pub mod exact;
pub mod fmt;
pub mod gen;
pub mod geometry;
pub mod hardness;
pub mod model;
pub mod oracle;

pub use error::{Error, Result};
