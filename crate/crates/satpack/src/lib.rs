//! Periodic packings and coverings of the plane by congruent disks.
//!
//! The crate builds, certifies, and optimizes periodic disk arrangements:
//!
//! - [`geom`]: planar primitives (lattices, torus distances, enclosing
//!   circles, angular arc sets);
//! - [`diskunion`]: exact areas of disk unions, dilations and erosions,
//!   and a Monte-Carlo area oracle;
//! - [`periodic`]: periodic arrangements with packing/covering
//!   certification, deep holes, and relative densities;
//! - [`checker`]: saturation and reduction predicates with re-verifiable
//!   replacement witnesses;
//! - [`constructions`]: the explicit arrangements and clusters the rest of
//!   the crate studies;
//! - [`bounds`]: cluster density bounds and named constants;
//! - [`engine`]: greedy saturation and simulated-annealing search;
//! - [`format`]: the textual arrangement/cluster/result file formats;
//! - [`render`]: deterministic SVG rendering.

// `!(x > 0.0)` is used deliberately as a NaN-rejecting guard.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod checker;
pub mod constructions;
pub mod diskunion;
pub mod engine;
pub mod format;
pub mod geom;
pub mod periodic;
pub mod render;

/// Version string recorded in result files.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
