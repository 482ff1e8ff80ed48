//! Plane graphs without 4- and 5-cycles and without ext-triangular 7-cycles.
//!
//! The crate reads embedded graphs as rotation systems, detects short-cycle
//! configurations, runs a discharging audit in exact thirds, and 3-colors
//! precolored instances either by exhaustive search or by a sequence of
//! local reductions that are lifted back one at a time.

pub mod cli;
pub mod colorer;
pub mod discharging;
pub mod generate;
pub mod plane_graph;
pub mod structures;

pub use plane_graph::{CycleRef, FaceWalk, GraphError, PlaneGraph, Side, Vertex};
