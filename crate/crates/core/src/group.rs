//! Elements of SL_n(GF(p)[t]), the congruence filtration by level, the
//! leading-coefficient maps onto sl_n, and commutators.
//!
//! Indices are 0-based throughout the API.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Field, Fp};
use crate::polynomial::{Poly, PolyMatrix};

/// Congruence depth of an element: the largest `i` with `g ≡ I mod t^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Finite(u32),
    Infinite,
}

impl Level {
    pub fn at_least(self, i: u32) -> bool {
        self >= Level::Finite(i)
    }

    /// Sum of levels, saturating at infinity.
    pub fn plus(self, other: Level) -> Level {
        match (self, other) {
            (Level::Finite(a), Level::Finite(b)) => Level::Finite(a + b),
            _ => Level::Infinite,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(i) => write!(f, "{i}"),
            Level::Infinite => write!(f, "inf"),
        }
    }
}

/// A matrix of polynomials with determinant exactly 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    matrix: PolyMatrix,
}

impl GroupElement {
    pub fn new(matrix: PolyMatrix) -> Result<Self> {
        if !matrix.det().is_one() {
            return Err(Error::NotSpecialLinear);
        }
        Ok(GroupElement { matrix })
    }

    pub fn identity(field: Field, n: usize) -> Self {
        GroupElement {
            matrix: PolyMatrix::identity(field, n),
        }
    }

    /// `I + E_ij(a)`.
    pub fn elementary(field: Field, n: usize, i: usize, j: usize, a: Poly) -> Result<Self> {
        if i == j {
            return Err(Error::DiagonalElementary(i));
        }
        if i >= n || j >= n {
            return Err(Error::DimensionMismatch(format!(
                "index ({i}, {j}) outside dimension {n}"
            )));
        }
        let mut m = PolyMatrix::identity(field, n);
        m.set(i, j, a);
        Ok(GroupElement { matrix: m })
    }

    /// A constant element of SL_n(GF(p)).
    pub fn constant(s: &DenseMatrix) -> Result<Self> {
        Self::new(PolyMatrix::from_dense(s)?)
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        self.matrix.get(i, j)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == PolyMatrix::identity(self.field(), self.n())
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        Ok(GroupElement {
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    /// Upper unitriangular: zero below the diagonal, ones on it.
    pub fn is_upper_unipotent(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| self.entry(i, i).is_one() && (0..i).all(|j| self.entry(i, j).is_zero()))
    }

    /// Exact inverse. Unitriangular elements use the finite Neumann series,
    /// everything else the adjugate (valid because det = 1).
    pub fn inverse(&self) -> GroupElement {
        let f = self.field();
        let n = self.n();
        if self.is_upper_unipotent() {
            let id = PolyMatrix::identity(f, n);
            let nil = self.matrix.sub(&id).expect("same shape");
            let neg = nil.map(|p| -p);
            let mut acc = id.clone();
            let mut term = id;
            for _ in 1..n {
                term = term.mul(&neg).expect("same shape");
                acc = acc.add(&term).expect("same shape");
            }
            return GroupElement { matrix: acc };
        }
        GroupElement {
            matrix: self.matrix.adjugate(),
        }
    }

    /// `g h g^-1 h^-1`.
    pub fn commutator(&self, other: &GroupElement) -> Result<GroupElement> {
        self.mul(other)?.mul(&self.inverse())?.mul(&other.inverse())
    }

    /// `s g s^-1` for a constant `s`.
    pub fn conjugate(&self, s: &GroupElement) -> Result<GroupElement> {
        s.mul(self)?.mul(&s.inverse())
    }

    pub fn level(&self) -> Level {
        let f = self.field();
        let id = PolyMatrix::identity(f, self.n());
        let diff = self.matrix.sub(&id).expect("same shape");
        match diff.entries().iter().filter_map(Poly::valuation).min() {
            None => Level::Infinite,
            Some(v) => Level::Finite(v as u32),
        }
    }

    /// The `t^i` coefficient matrix of `g - I`, defined for `level(g) >= i >= 1`.
    pub fn rho(&self, i: u32) -> Result<TracelessMatrix> {
        let level = self.level();
        if let Level::Finite(l) = level {
            if l < i {
                return Err(Error::LevelTooLow { level: l, required: i });
            }
        }
        if i == 0 {
            return Err(Error::LevelTooLow { level: 0, required: 1 });
        }
        TracelessMatrix::new(self.matrix.coefficient_matrix(i as usize))
    }

    /// Evaluation at `t = 0`.
    pub fn reduce_at_zero(&self) -> DenseMatrix {
        self.matrix.at_zero()
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.matrix)
    }
}

/// An element of sl_n(GF(p)).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TracelessMatrix {
    matrix: DenseMatrix,
}

impl TracelessMatrix {
    pub fn new(matrix: DenseMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::DimensionMismatch("sl_n elements are square".into()));
        }
        if !matrix.trace().is_zero() {
            return Err(Error::DimensionMismatch(format!("trace {} is nonzero", matrix.trace())));
        }
        Ok(TracelessMatrix { matrix })
    }

    pub fn zero(field: Field, n: usize) -> Self {
        TracelessMatrix {
            matrix: DenseMatrix::zeros(field, n, n),
        }
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> Fp {
        self.matrix.trace()
    }

    pub fn add(&self, other: &TracelessMatrix) -> Result<TracelessMatrix> {
        Ok(TracelessMatrix {
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    /// `XY - YX`.
    pub fn bracket(&self, other: &TracelessMatrix) -> Result<TracelessMatrix> {
        let xy = self.matrix.mul(&other.matrix)?;
        let yx = other.matrix.mul(&self.matrix)?;
        TracelessMatrix::new(xy.add(&yx.scale(self.matrix.field().neg(Fp::ONE)))?)
    }

    /// Coordinates in the entry basis, row-major.
    pub fn as_vector(&self) -> &[Fp] {
        self.matrix.entries()
    }
}

impl fmt::Debug for TracelessMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.matrix)
    }
}
