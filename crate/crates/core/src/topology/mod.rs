//! Carathéodory balls sampled on rectangular grids, and their topology.
//!
//! A ball is rasterized by cell-center membership into a [`GridMask`]. Its
//! cells are labelled with 4-connectivity and the complement with
//! 8-connectivity, the pairing under which a ring of cells always separates
//! its inside from its outside. A complement component that does not reach
//! the border of the grid is a hole.

mod ball;
mod grid;
mod label;

pub use ball::{sample_metric_ball, simple_connectivity_threshold, DistanceField};
pub use grid::{svg_heatmap, GridMask, GridSpec};
pub use label::{classify, connected_component_count, hole_count, is_simply_connected, Topology};
