//! Constructive (2,1)-decompositions of plane graphs.
//!
//! A (2,1)-decomposition of a graph splits its edges into a matching and an
//! acyclic orientation of the rest in which every vertex has out-degree at
//! most two. This crate computes such decompositions for plane graphs that
//! avoid a fixed family of forbidden configurations, verifies them
//! independently, turns them into 1-defective 3-(list-)colorings, and audits
//! the charge bookkeeping that guarantees a reducible configuration exists.

pub mod batch;
pub mod cert;
pub mod certify;
pub mod class_gate;
pub mod decompose;
pub mod discharge;
pub mod generate;
pub mod graph;
pub mod io;

pub use cert::NiceDecomposition;
pub use graph::{Dart, Face, FaceSet, GraphError, PlaneGraph, SimpleGraph, Vertex};
