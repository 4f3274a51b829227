//! Cased drawings of straight-line graphs.

pub mod arrangement;
pub mod exact;
pub mod fixtures;
pub mod geometry;
pub mod matching;
pub mod crossing_graph;
pub mod switches;
pub mod objective;
pub mod oracle;
pub mod stacking;
pub mod flow;
pub mod twosat;
pub mod tunnels;
pub mod io;
pub mod svg;
pub mod solve;
