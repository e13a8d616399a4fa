//! Citation-network clustering toolkit.
//!
//! Reconstructs two article-clustering pipelines over a publication corpus
//! and reconciles the results against a journal-category taxonomy:
//!
//! * **Direct citation**: the citation graph is exported in METIS format for
//!   an external partitioner; the resulting assignment is imported back and
//!   evaluated with graph conductance.
//! * **Co-citation**: citation counts feed a percentile filter; co-cited
//!   reference pairs over the retained nodes are Salton-normalized into a
//!   weighted graph; variable-level clustering emits size-bounded connected
//!   components through a rising threshold cascade; agglomerative
//!   max-edge-weight merging builds higher-order clusters.
//!
//! The [`reconcile`] module maps either clustering onto the taxonomy
//! (label-share heatmaps, cross-clustering intersection maps, fractional
//! top-area counts, nucleating pairs), and [`pipeline`] wires the stages into
//! a reproducible artifact-on-disk workflow driven by the `citenet` binary.
//!
//! Every operation is deterministic: identical inputs produce byte-identical
//! artifacts at any thread count.

pub mod agglomerate;
pub mod cocitation;
pub mod corpus;
pub mod error;
pub mod metrics;
pub mod pipeline;
pub mod reconcile;
pub mod render;
pub mod synth;
pub mod vlc;

pub use error::{Error, Result};
