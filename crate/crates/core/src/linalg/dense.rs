use std::fmt;

use super::field::{Field, Fp};
use crate::error::{Error, Result};

/// A row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Fp>,
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub reduced: DenseMatrix,
    pub pivot_cols: Vec<usize>,
}

impl DenseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            field,
            rows,
            cols,
            entries: vec![Fp::ZERO; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = Fp::ONE;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows.iter().flatten().map(|&v| field.elem(v)).collect();
        Ok(DenseMatrix {
            field,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn from_entries(field: Field, rows: usize, cols: usize, entries: Vec<Fp>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.0 >= field.characteristic()) {
            return Err(Error::DimensionMismatch("entry out of range".into()));
        }
        Ok(DenseMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Fp] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Fp] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.field.check_same(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out[(i, j)], f.mul(a, other[(k, j)]));
                    out[(i, j)] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.field.check_same(&other.field)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("shapes differ".into()));
        }
        let f = self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(DenseMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, c: Fp) -> DenseMatrix {
        let f = self.field;
        let entries = self.entries.iter().map(|&a| f.mul(a, c)).collect();
        DenseMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn trace(&self) -> Fp {
        (0..self.rows.min(self.cols)).fold(Fp::ZERO, |acc, i| self.field.add(acc, self[(i, i)]))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, piv);
            let inv = f.inv(m[(r, c)]).expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = f.mul(m[(r, j)], inv);
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)];
                for j in c..m.cols {
                    let v = f.sub(m[(i, j)], f.mul(factor, m[(r, j)]));
                    m[(i, j)] = v;
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        Rref {
            rank: r,
            reduced: m,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn determinant(&self) -> Result<Fp> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let f = self.field;
        let mut m = self.clone();
        let mut det = Fp::ONE;
        for c in 0..m.cols {
            let Some(piv) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Fp::ZERO);
            };
            if piv != c {
                m.swap_rows(c, piv);
                det = f.neg(det);
            }
            let d = m[(c, c)];
            det = f.mul(det, d);
            let inv = f.inv(d)?;
            for i in c + 1..m.rows {
                let factor = f.mul(m[(i, c)], inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m[(i, j)], f.mul(factor, m[(c, j)]));
                    m[(i, j)] = v;
                }
            }
        }
        Ok(det)
    }

    /// Inverse of a square matrix; fails on singular input.
    pub fn inverse(&self) -> Result<DenseMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = Fp::ONE;
        }
        let red = aug.rref();
        if red.pivot_cols.len() < n || red.pivot_cols[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Self::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red.reduced[(i, n + j)];
            }
        }
        Ok(inv)
    }
}

/// Orders by shape, then row-major entries.
impl Ord for DenseMatrix {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.field.characteristic(), self.rows, self.cols, &self.entries).cmp(&(
            other.field.characteristic(),
            other.rows,
            other.cols,
            &other.entries,
        ))
    }
}

impl PartialOrd for DenseMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = Fp;
    fn index(&self, (i, j): (usize, usize)) -> &Fp {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fp {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "DenseMatrix over GF({}) {}x{}",
            self.field.characteristic(),
            self.rows,
            self.cols
        )?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn identity_rank() {
        let r = DenseMatrix::identity(gf(5), 4).rref();
        assert_eq!(r.rank, 4);
        assert_eq!(r.pivot_cols, vec![0, 1, 2, 3]);
    }

    #[test]
    fn zero_matrix_rank() {
        assert_eq!(DenseMatrix::zeros(gf(3), 3, 5).rank(), 0);
        assert_eq!(DenseMatrix::zeros(gf(3), 0, 0).rank(), 0);
    }

    #[test]
    fn dependent_rows_gf2() {
        let m = DenseMatrix::from_rows(gf(2), &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![0, 1]);
    }

    #[test]
    fn rref_idempotent() {
        let m = DenseMatrix::from_rows(gf(7), &[vec![2, 4, 1, 0], vec![1, 2, 3, 5], vec![3, 6, 4, 5]]).unwrap();
        let once = m.rref();
        let twice = once.reduced.rref();
        assert_eq!(once.reduced, twice.reduced);
        assert_eq!(once.rank, 2);
    }

    #[test]
    fn inverse_and_determinant() {
        let f = gf(3);
        let m = DenseMatrix::from_rows(f, &[vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), DenseMatrix::identity(f, 3));
        let singular = DenseMatrix::from_rows(f, &[vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(singular.determinant().unwrap(), Fp(0));
        assert_eq!(singular.inverse(), Err(Error::Singular));
    }

    #[test]
    fn mixing_fields_is_an_error() {
        let a = DenseMatrix::identity(gf(2), 2);
        let b = DenseMatrix::identity(gf(3), 2);
        assert_eq!(a.mul(&b), Err(Error::FieldMismatch(2, 3)));
    }
}
