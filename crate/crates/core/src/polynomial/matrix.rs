use std::fmt;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Field};

/// A square matrix of polynomials over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    field: Field,
    n: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(field: Field, n: usize) -> Self {
        PolyMatrix {
            field,
            n,
            entries: vec![Poly::zero(field); n * n],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.entries[i * n + i] = Poly::one(field);
        }
        m
    }

    pub fn from_entries(field: Field, n: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for an {n}x{n} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch(field.characteristic(), 0));
        }
        Ok(PolyMatrix { field, n, entries })
    }

    /// Constant polynomial matrix with the entries of `m`.
    pub fn from_dense(m: &DenseMatrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::DimensionMismatch("non-square constant matrix".into()));
        }
        let f = m.field();
        let entries = m.entries().iter().map(|&c| Poly::constant(f, c)).collect();
        Ok(PolyMatrix {
            field: f,
            n: m.rows(),
            entries,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, cols: &[Vec<Poly>]) -> Result<Self> {
        let n = cols.len();
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::DimensionMismatch("columns must have length n".into()));
        }
        let mut m = Self::zero(field, n);
        for (j, col) in cols.iter().enumerate() {
            for (i, e) in col.iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Poly) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    /// Constant terms of every entry.
    pub fn at_zero(&self) -> DenseMatrix {
        let entries = self.entries.iter().map(|e| e.coeff(0)).collect();
        DenseMatrix::from_entries(self.field, self.n, self.n, entries).expect("shape is square")
    }

    /// Matrix of `t^k` coefficients.
    pub fn coefficient_matrix(&self, k: usize) -> DenseMatrix {
        let entries = self.entries.iter().map(|e| e.coeff(k)).collect();
        DenseMatrix::from_entries(self.field, self.n, self.n, entries).expect("shape is square")
    }

    fn check_compatible(&self, other: &PolyMatrix) -> Result<()> {
        self.field.check_same(&other.field)?;
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("{0}x{0} vs {1}x{1}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_compatible(other)?;
        let n = self.n;
        let mut out = Self::zero(self.field, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_compatible(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(PolyMatrix {
            field: self.field,
            n: self.n,
            entries,
        })
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_compatible(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(PolyMatrix {
            field: self.field,
            n: self.n,
            entries,
        })
    }

    /// Applies `f` to every entry.
    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            field: self.field,
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Poly {
        let rows: Vec<Vec<Poly>> = (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect();
        bareiss_det(self.field, rows)
    }

    /// Classical adjugate, `adj(A) * A = det(A) * I`.
    pub fn adjugate(&self) -> PolyMatrix {
        let n = self.n;
        let f = self.field;
        let mut adj = Self::zero(f, n);
        if n == 1 {
            adj.set(0, 0, Poly::one(f));
            return adj;
        }
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<Poly>> = (0..n)
                    .filter(|&r| r != i)
                    .map(|r| (0..n).filter(|&c| c != j).map(|c| self.get(r, c).clone()).collect())
                    .collect();
                let mut d = bareiss_det(f, minor);
                if (i + j) % 2 == 1 {
                    d = -&d;
                }
                adj.set(j, i, d);
            }
        }
        adj
    }

    /// Column Hermite normal form over GF(p)[t].
    ///
    /// The result `H = A U` with `U` unimodular is upper triangular, has monic
    /// diagonal entries, and every entry to the right of a diagonal entry has
    /// smaller degree than it. `H` depends only on the column span of `A`.
    pub fn column_hnf(&self) -> Result<PolyMatrix> {
        let n = self.n;
        let f = self.field;
        let mut cols: Vec<Vec<Poly>> = (0..n).map(|j| self.column(j)).collect();
        for row in (0..n).rev() {
            // Euclid on row `row` across columns 0..=row, pivot lands in column `row`.
            loop {
                let best = (0..=row)
                    .filter(|&c| !cols[c][row].is_zero())
                    .min_by_key(|&c| (cols[c][row].degree().unwrap(), std::cmp::Reverse(c)));
                let Some(b) = best else {
                    return Err(Error::Singular);
                };
                cols.swap(b, row);
                let mut done = true;
                for c in 0..row {
                    if cols[c][row].is_zero() {
                        continue;
                    }
                    let (q, _) = cols[c][row].div_rem(&cols[row][row])?;
                    let pivot_col = cols[row].clone();
                    for (x, y) in cols[c].iter_mut().zip(&pivot_col) {
                        *x = &*x - &(&q * y);
                    }
                    if !cols[c][row].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            let inv = f.inv(cols[row][row].leading())?;
            for x in cols[row].iter_mut() {
                *x = x.scale(inv);
            }
        }
        // Reduce entries right of each pivot, bottom row first so that later
        // column operations never disturb already reduced rows.
        for row in (0..n).rev() {
            for c in row + 1..n {
                let (q, _) = cols[c][row].div_rem(&cols[row][row])?;
                if q.is_zero() {
                    continue;
                }
                let pivot_col = cols[row].clone();
                for (x, y) in cols[c].iter_mut().zip(&pivot_col) {
                    *x = &*x - &(&q * y);
                }
            }
        }
        PolyMatrix::from_columns(f, &cols)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }
}

fn bareiss_det(field: Field, mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(field);
    }
    let mut negate = false;
    let mut prev = Poly::one(field);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Poly::zero(field);
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "PolyMatrix over GF({}) {}x{}",
            self.field.characteristic(),
            self.n,
            self.n
        )?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `I + E_ij(a)`.
#[cfg(test)]
pub(crate) fn unit_plus_elementary(field: Field, n: usize, i: usize, j: usize, a: Poly) -> PolyMatrix {
    let mut m = PolyMatrix::identity(field, n);
    let v = m.get(i, j) + &a;
    m.set(i, j, v);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Fp;
    use proptest::prelude::*;

    fn gf(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    fn t(f: Field, k: usize) -> Poly {
        Poly::t_pow(f, k)
    }

    #[test]
    fn product_examples() {
        let f = gf(3);
        let a = unit_plus_elementary(f, 3, 0, 1, t(f, 1));
        assert_eq!(a.mul(&PolyMatrix::identity(f, 3)).unwrap(), a);
        let b = unit_plus_elementary(f, 3, 1, 2, t(f, 1));
        let mut expect = PolyMatrix::identity(f, 3);
        expect.set(0, 1, t(f, 1));
        expect.set(1, 2, t(f, 1));
        expect.set(0, 2, t(f, 2));
        assert_eq!(a.mul(&b).unwrap(), expect);
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq, unit_plus_elementary(f, 3, 0, 1, t(f, 1).scale(Fp(2))));
        assert!(a.mul(&PolyMatrix::identity(f, 2)).is_err());
    }

    #[test]
    fn determinant_examples() {
        let f = gf(2);
        assert!(PolyMatrix::identity(f, 4).det().is_one());
        assert!(unit_plus_elementary(f, 3, 0, 1, t(f, 5)).det().is_one());
        let mut d = PolyMatrix::identity(f, 3);
        d.set(0, 0, t(f, 1));
        d.set(1, 1, t(f, 1));
        assert_eq!(d.det(), t(f, 2));
    }

    #[test]
    fn determinant_with_zero_pivot() {
        let f = gf(5);
        let m = PolyMatrix::from_columns(
            f,
            &[
                vec![Poly::zero(f), Poly::one(f), Poly::zero(f)],
                vec![Poly::one(f), Poly::zero(f), Poly::zero(f)],
                vec![Poly::zero(f), Poly::zero(f), t(f, 2)],
            ],
        )
        .unwrap();
        assert_eq!(m.det(), t(f, 2).scale(Fp(4)));
    }

    #[test]
    fn hnf_examples() {
        let f = gf(2);
        assert_eq!(
            PolyMatrix::identity(f, 3).column_hnf().unwrap(),
            PolyMatrix::identity(f, 3)
        );
        let a = PolyMatrix::from_columns(f, &[vec![t(f, 1), Poly::zero(f)], vec![Poly::one(f), Poly::one(f)]]).unwrap();
        let h = a.column_hnf().unwrap();
        assert_eq!(h, a);
        assert!(PolyMatrix::zero(f, 2).column_hnf().is_err());
    }

    fn arb_poly(p: u32, len: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec(0..p as i64, 0..=len).prop_map(move |c| Poly::from_ints(gf(p), &c))
    }

    fn arb_matrix(p: u32, n: usize, len: usize) -> impl Strategy<Value = PolyMatrix> {
        prop::collection::vec(arb_poly(p, len), n * n).prop_map(move |e| PolyMatrix::from_entries(gf(p), n, e).unwrap())
    }

    /// Random unimodular matrix as a product of elementary column operations.
    fn arb_unimodular(p: u32, n: usize) -> impl Strategy<Value = PolyMatrix> {
        prop::collection::vec((0..n, 0..n, arb_poly(p, 3), 1..p), 1..8).prop_map(move |ops| {
            let f = gf(p);
            let mut u = PolyMatrix::identity(f, n);
            for (i, j, a, s) in ops {
                let e = if i == j {
                    let mut d = PolyMatrix::identity(f, n);
                    d.set(i, i, Poly::constant(f, Fp(s)));
                    d
                } else {
                    unit_plus_elementary(f, n, i, j, a)
                };
                u = u.mul(&e).unwrap();
            }
            u
        })
    }

    proptest! {
        #[test]
        fn hnf_invariant_under_unimodular(a in arb_matrix(3, 3, 2), u in arb_unimodular(3, 3)) {
            prop_assume!(!a.det().is_zero());
            let h1 = a.column_hnf().unwrap();
            let h2 = a.mul(&u).unwrap().column_hnf().unwrap();
            prop_assert_eq!(&h1, &h2);
            prop_assert!(h1.is_upper_triangular());
            for i in 0..3 {
                let d = h1.get(i, i);
                prop_assert_eq!(d.leading(), Fp::ONE);
                for j in i + 1..3 {
                    prop_assert!(h1.get(i, j).degree().is_none_or(|x| x < d.degree().unwrap()));
                }
            }
        }

        #[test]
        fn adjugate_identity(a in arb_matrix(5, 3, 2)) {
            let f = gf(5);
            let prod = a.adjugate().mul(&a).unwrap();
            let d = a.det();
            let mut expect = PolyMatrix::zero(f, 3);
            for i in 0..3 { expect.set(i, i, d.clone()); }
            prop_assert_eq!(prod, expect);
        }

        #[test]
        fn det_multiplicative(a in arb_matrix(2, 3, 2), b in arb_matrix(2, 3, 2)) {
            prop_assert_eq!(a.mul(&b).unwrap().det(), &a.det() * &b.det());
        }
    }
}
