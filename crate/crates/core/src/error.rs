use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in GF(p)")]
    DivisionByZero,
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
    #[error("field context mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u32, u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("negative coefficient index {0}")]
    NegativeIndex(i64),
    #[error("matrix is singular")]
    Singular,
    #[error("columns do not generate a lattice commensurable with the standard lattice")]
    NotALattice,
    #[error("elementary matrix needs i != j (got {0}, {0})")]
    DiagonalElementary(usize),
    #[error("determinant is not 1")]
    NotSpecialLinear,
    #[error("element has level {level} < {required}")]
    LevelTooLow { level: u32, required: u32 },
    #[error("vertices do not form a simplex")]
    NotASimplex,
    #[error("unrealizable profile: b[{i}][{j}] < b[{i}][{k}] + b[{k}][{j}]")]
    UnrealizableProfile { i: usize, k: usize, j: usize },
    #[error("element is not in the stabilizer subgroup")]
    NotAMember,
    #[error("representative inconsistency: {0}")]
    RepresentativeInconsistency(String),
    #[error("group too large for oracle (limit {0})")]
    GroupTooLarge(usize),
    #[error("abelianization is not elementary abelian; witness {0}")]
    NotElementaryAbelian(String),
}

pub type Result<T> = std::result::Result<T, Error>;
