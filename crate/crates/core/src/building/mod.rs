//! The standard wedge of the building, its translates by flag
//! representatives, and the stabilizer degree bounds of its simplices.

mod complex;
mod flags;
mod standard;

pub use complex::{build_z, build_z_with_flags, vertex_label, ComplexZ, EdgeRep, VertexRep};
pub use flags::{enumerate_flag_reps, FlagRep};
pub use standard::{adjacency, standard_ball, standard_simplices, BoundProfile, StandardEdge, StandardVertex};
