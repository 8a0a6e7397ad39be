//! The weight-graded model of the abelianized stabilizers, inclusion maps
//! between them, and the boundary map whose cokernel is `H_0(Z_R, H_1)`.

mod boundary;
mod slots;

pub use boundary::{
    assemble_boundary, assemble_boundary_with, edge_inclusion, h0_dimension, h0_dimension_with, BoundaryMatrix,
    ColumnBlock, HomologyReport, Orientation, RowBlock,
};
pub use slots::{
    class_vector, h1_basis, membership, phi_check, surviving_degrees, H1Basis, SurvivingDegrees, WeightSlot,
};
