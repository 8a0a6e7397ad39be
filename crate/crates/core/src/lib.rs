pub mod building;
pub mod cli;
pub mod error;
pub mod group;
pub mod homology;
pub mod linalg;
pub mod oracle;
pub mod polynomial;

pub use error::{Error, Result};
