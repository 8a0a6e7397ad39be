use std::collections::{BTreeMap, BTreeSet};

use super::dense::DenseMatrix;
use super::field::{Field, Fp};
use crate::error::{Error, Result};

/// A sparse matrix over GF(p) in coordinate form.
///
/// Triples are kept sorted by `(row, col)`, unique, and nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    triples: Vec<(usize, usize, Fp)>,
}

impl SparseMatrix {
    pub fn new(field: Field, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            field,
            rows,
            cols,
            triples: Vec::new(),
        }
    }

    /// Builds a matrix from triples. Duplicate positions are summed and zero
    /// results dropped.
    pub fn from_triples(
        field: Field,
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, Fp)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<(usize, usize), Fp> = BTreeMap::new();
        for (r, c, v) in triples {
            if r >= rows || c >= cols {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            let e = acc.entry((r, c)).or_insert(Fp::ZERO);
            *e = field.add(*e, field.elem(v.0 as i64));
        }
        let triples = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        Ok(SparseMatrix {
            field,
            rows,
            cols,
            triples,
        })
    }

    pub fn from_dense(m: &DenseMatrix) -> Self {
        let mut triples = Vec::new();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if !m[(i, j)].is_zero() {
                    triples.push((i, j, m[(i, j)]));
                }
            }
        }
        SparseMatrix {
            field: m.field(),
            rows: m.rows(),
            cols: m.cols(),
            triples,
        }
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

    pub fn nnz(&self) -> usize {
        self.triples.len()
    }

    pub fn triples(&self) -> &[(usize, usize, Fp)] {
        &self.triples
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.field, self.rows, self.cols);
        for &(r, c, v) in &self.triples {
            d[(r, c)] = v;
        }
        d
    }

    pub fn transpose(&self) -> Self {
        let mut triples: Vec<_> = self.triples.iter().map(|&(r, c, v)| (c, r, v)).collect();
        triples.sort_by_key(|&(r, c, _)| (r, c));
        SparseMatrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            triples,
        }
    }

    /// Rank by sparse Gaussian elimination with Markowitz pivoting.
    ///
    /// Each step picks the nonzero minimizing `(row_count - 1) * (col_count - 1)`
    /// among active rows and columns, ties broken by smallest `(row, col)`.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut rows: Vec<Vec<(usize, Fp)>> = vec![Vec::new(); self.rows];
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.cols];
        for &(r, c, v) in &self.triples {
            rows[r].push((c, v));
            col_rows[c].insert(r);
        }
        let mut rank = 0;
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for (r, row) in rows.iter().enumerate() {
                if row.is_empty() {
                    continue;
                }
                let rc = row.len() - 1;
                for &(c, _) in row {
                    let cost = rc * (col_rows[c].len() - 1);
                    if best.is_none_or(|(b, _, _)| cost < b) {
                        best = Some((cost, r, c));
                        if cost == 0 {
                            break;
                        }
                    }
                }
                if matches!(best, Some((0, _, _))) {
                    break;
                }
            }
            let Some((_, pr, pc)) = best else { break };
            rank += 1;
            let pivot_row = std::mem::take(&mut rows[pr]);
            for &(c, _) in &pivot_row {
                col_rows[c].remove(&pr);
            }
            let pv = pivot_row.iter().find(|&&(c, _)| c == pc).expect("pivot present").1;
            let pinv = f.inv(pv).expect("stored entries are nonzero");
            let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
            for r in targets {
                let a = rows[r]
                    .iter()
                    .find(|&&(c, _)| c == pc)
                    .expect("column index consistent")
                    .1;
                let factor = f.mul(a, pinv);
                let old = std::mem::take(&mut rows[r]);
                let merged = axpy_sorted(f, &old, &pivot_row, factor);
                for &(c, _) in &old {
                    col_rows[c].remove(&r);
                }
                for &(c, _) in &merged {
                    col_rows[c].insert(r);
                }
                rows[r] = merged;
            }
        }
        rank
    }

    /// Dimension of the cokernel, `rows - rank`.
    pub fn cokernel_dim(&self) -> usize {
        self.rows - self.rank()
    }
}

/// Returns `x - factor * y` for rows sorted by column index.
fn axpy_sorted(f: Field, x: &[(usize, Fp)], y: &[(usize, Fp)], factor: Fp) -> Vec<(usize, Fp)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            out.push((y[j].0, f.neg(f.mul(factor, y[j].1))));
            j += 1;
        } else {
            let v = f.sub(x[i].1, f.mul(factor, y[j].1));
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
