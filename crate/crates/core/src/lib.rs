//! Plane graphs, facial unique-maximum colorings and their verification.

pub mod fum;
pub mod generators;
pub mod plane_graph;
pub mod sat;
