//! Lattices in `K^n` over the local ring at the uniformizer, stored as
//! column Hermite normal forms of polynomial bases.
//!
//! The polynomial variable here plays the role of the uniformizer. Every
//! lattice handled is generated by polynomial vectors and has determinant
//! `c * x^k`, so its quotient by a deep enough sublattice is a torsion module
//! supported at `x`; a basis over the polynomial ring therefore pins down the
//! local lattice and the polynomial HNF is a faithful label.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::matrix::PolyMatrix;
use super::poly::Poly;
use crate::error::{Error, Result};

/// A full-rank lattice given by its column HNF.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    hnf: PolyMatrix,
}

impl Lattice {
    /// Lattice spanned by the columns of `basis` (no scale normalization).
    pub fn from_basis(basis: &PolyMatrix) -> Result<Self> {
        Ok(Lattice {
            hnf: basis.column_hnf()?,
        })
    }

    pub fn hnf(&self) -> &PolyMatrix {
        &self.hnf
    }

    pub fn n(&self) -> usize {
        self.hnf.n()
    }

    /// `x^k L`.
    pub fn scaled(&self, k: usize) -> Lattice {
        Lattice {
            hnf: self
                .hnf
                .map(|p| p.shift(k))
                .column_hnf()
                .expect("scaling keeps full rank"),
        }
    }

    /// Whether `v` lies in the lattice, by back substitution against the
    /// triangular basis.
    pub fn contains_vector(&self, v: &[Poly]) -> bool {
        let n = self.n();
        let mut rhs = v.to_vec();
        for i in (0..n).rev() {
            let Some(y) = rhs[i].div_exact(self.hnf.get(i, i)) else {
                return false;
            };
            for (r, slot) in rhs.iter_mut().enumerate().take(i + 1) {
                *slot = &*slot - &(&y * self.hnf.get(r, i));
            }
        }
        true
    }

    /// Index of the lattice in its ambient standard lattice, as the total
    /// degree of the diagonal.
    pub fn colength(&self) -> usize {
        (0..self.n()).map(|i| self.hnf.get(i, i).degree().unwrap_or(0)).sum()
    }
}

/// `inner ⊆ outer`.
pub fn lattice_contains(outer: &Lattice, inner: &Lattice) -> bool {
    outer.n() == inner.n() && (0..inner.n()).all(|j| outer.contains_vector(&inner.hnf.column(j)))
}

/// The unique representative of a lattice class under scaling.
///
/// Columns are divided by the largest common power of the uniformizer, which
/// gives the representative contained in the standard lattice but not in its
/// uniformizer multiple, and then brought to HNF. Ordering and hashing use a
/// byte encoding of the HNF.
#[derive(Clone)]
pub struct CanonicalLabel {
    lattice: Lattice,
    key: Vec<u8>,
}

impl CanonicalLabel {
    /// Canonical label of the class of the lattice spanned by `basis`.
    pub fn of(basis: &PolyMatrix) -> Result<Self> {
        let det = basis.det();
        match det.valuation() {
            Some(v) if det.degree() == Some(v) => {}
            _ => return Err(Error::NotALattice),
        }
        let shift = basis
            .entries()
            .iter()
            .filter_map(Poly::valuation)
            .min()
            .ok_or(Error::NotALattice)?;
        let normalized = basis.map(|p| p.unshift(shift));
        let lattice = Lattice::from_basis(&normalized)?;
        let key = encode(&lattice.hnf);
        Ok(CanonicalLabel { lattice, key })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn n(&self) -> usize {
        self.lattice.n()
    }

    pub fn key(&self) -> &[u8] {
        &self.key
    }

    pub fn hex(&self) -> String {
        self.key.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn is_standard(&self) -> bool {
        (0..self.n()).all(|i| self.lattice.hnf.get(i, i).is_one())
    }
}

fn encode(hnf: &PolyMatrix) -> Vec<u8> {
    let p = hnf.field().characteristic();
    let width = if p <= 0x100 {
        1
    } else if p <= 0x1_0000 {
        2
    } else {
        4
    };
    let mut out = Vec::new();
    for e in hnf.entries() {
        out.extend_from_slice(&(e.coeffs().len() as u16).to_be_bytes());
        for c in e.coeffs() {
            out.extend_from_slice(&c.0.to_be_bytes()[4 - width..]);
        }
    }
    out
}

impl PartialEq for CanonicalLabel {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for CanonicalLabel {}

impl Hash for CanonicalLabel {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl PartialOrd for CanonicalLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl fmt::Debug for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Label({})", self.hex())
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice{:?}", self.hnf)
    }
}
