use std::fmt;

use crate::linalg::{DenseMatrix, Field, Fp};

/// A determinant-one representative of a coset `sB` in `SL_n(GF(p)) / B`,
/// with `B` the upper triangular subgroup.
///
/// The coset is the complete flag `s<e_1> ⊂ s<e_1, e_2> ⊂ ...`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlagRep {
    s: DenseMatrix,
}

impl FlagRep {
    /// The identity matrix, representative of the standard flag.
    pub fn identity(field: Field, n: usize) -> Self {
        FlagRep {
            s: DenseMatrix::identity(field, n),
        }
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.s
    }

    /// Whether `self` and `other` represent the same coset, i.e. whether
    /// `self^-1 other` is upper triangular.
    pub fn same_coset(&self, other: &FlagRep) -> bool {
        let q = self
            .s
            .inverse()
            .expect("flag representatives are invertible")
            .mul(&other.s)
            .expect("same shape");
        (0..q.rows()).all(|i| (0..i).all(|j| q[(i, j)].is_zero()))
    }
}

impl fmt::Debug for FlagRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.s.rows())
            .map(|i| {
                self.s
                    .row(i)
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "Flag[{}]", rows.join(" | "))
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// One representative per complete flag of `GF(p)^n`, sorted by row-major
/// entries.
///
/// Column `k` has its lowest nonzero entry in row `pivot[k]`, equal to 1 for
/// `k < n - 1`; entries in rows that are pivots of earlier columns vanish.
/// The last column is scaled to make the determinant 1. This is a normal form
/// for right multiplication by `B`, so each flag appears once.
pub fn enumerate_flag_reps(field: Field, n: usize) -> Vec<FlagRep> {
    let mut reps = Vec::new();
    for pivot in permutations(n) {
        let mut free = Vec::new();
        for (k, &pk) in pivot.iter().enumerate() {
            for i in 0..pk {
                if !pivot[..k].contains(&i) {
                    free.push((i, k));
                }
            }
        }
        let p = field.characteristic() as u64;
        let total = p.pow(free.len() as u32);
        for code in 0..total {
            let mut s = DenseMatrix::zeros(field, n, n);
            for (k, &pk) in pivot.iter().enumerate() {
                s[(pk, k)] = Fp::ONE;
            }
            let mut c = code;
            for &(i, k) in &free {
                s[(i, k)] = Fp((c % p) as u32);
                c /= p;
            }
            let det = s.determinant().expect("square");
            let fix = field.inv(det).expect("normal form is invertible");
            for i in 0..n {
                s[(i, n - 1)] = field.mul(s[(i, n - 1)], fix);
            }
            reps.push(FlagRep { s });
        }
    }
    reps.sort();
    reps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(p: u32, n: usize) -> usize {
        enumerate_flag_reps(Field::new(p).unwrap(), n).len()
    }

    #[test]
    fn flag_counts() {
        assert_eq!(count(2, 2), 3);
        assert_eq!(count(2, 3), 21);
        assert_eq!(count(3, 3), 52);
        assert_eq!(count(5, 2), 6);
        assert_eq!(count(2, 4), 15 * 7 * 3);
    }

    #[test]
    fn representatives_are_distinct_cosets_of_det_one() {
        for (p, n) in [(2, 3), (3, 3), (3, 2), (2, 4)] {
            let f = Field::new(p).unwrap();
            let reps = enumerate_flag_reps(f, n);
            for (i, a) in reps.iter().enumerate() {
                assert_eq!(a.matrix().determinant().unwrap(), Fp::ONE);
                for b in &reps[i + 1..] {
                    assert!(!a.same_coset(b), "{a:?} ~ {b:?}");
                }
            }
            assert!(reps.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn identity_is_a_representative() {
        let f = Field::new(3).unwrap();
        let reps = enumerate_flag_reps(f, 3);
        assert!(reps.iter().any(|r| r.matrix() == &DenseMatrix::identity(f, 3)));
    }
}
