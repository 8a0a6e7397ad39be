use std::collections::BTreeMap;
use std::fmt;

use crate::building::BoundProfile;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::Fp;

/// A one-dimensional graded piece `t^r W_{α_ij}`; indices are 0-based, `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightSlot {
    pub i: usize,
    pub j: usize,
    pub r: u32,
}

impl fmt::Display for WeightSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i + 1, self.j + 1, self.r)
    }
}

/// Surviving degrees per positive root `(i, j)`, 0-based.
pub type SurvivingDegrees = BTreeMap<(usize, usize), Vec<u32>>;

/// Degrees `r` at root `(i, j)` that no commutator `[I + E_ik(a t^l), I + E_kj(b t^m)]`
/// with `l + m = r` inside the bounds can reach.
pub fn surviving_degrees(profile: &BoundProfile) -> Result<SurvivingDegrees> {
    profile.check_realizable()?;
    let n = profile.n();
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let bij = profile.get(i, j);
            if bij < 1 {
                continue;
            }
            let degrees: Vec<u32> = (1..=bij)
                .filter(|&r| (i + 1..j).all(|k| !splits(r, profile.get(i, k), profile.get(k, j))))
                .map(|r| r as u32)
                .collect();
            out.insert((i, j), degrees);
        }
    }
    Ok(out)
}

/// Whether `r = l + m` with `1 <= l <= a` and `1 <= m <= b`.
fn splits(r: i64, a: i64, b: i64) -> bool {
    a >= 1 && b >= 1 && r >= 2 && r <= a + b
}

/// Ordered basis of the abelianized stabilizer of a simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Basis {
    profile: BoundProfile,
    slots: Vec<WeightSlot>,
}

impl H1Basis {
    pub fn profile(&self) -> &BoundProfile {
        &self.profile
    }

    pub fn slots(&self) -> &[WeightSlot] {
        &self.slots
    }

    pub fn dim(&self) -> usize {
        self.slots.len()
    }

    pub fn position(&self, slot: &WeightSlot) -> Option<usize> {
        self.slots.binary_search(slot).ok()
    }
}

pub fn h1_basis(profile: &BoundProfile) -> Result<H1Basis> {
    let slots = surviving_degrees(profile)?
        .into_iter()
        .flat_map(|((i, j), rs)| rs.into_iter().map(move |r| WeightSlot { i, j, r }))
        .collect::<Vec<_>>();
    debug_assert!(slots.windows(2).all(|w| w[0] < w[1]));
    Ok(H1Basis {
        profile: profile.clone(),
        slots,
    })
}

/// Membership in the congruence part of the stabilizer: upper unitriangular,
/// entry `(i, j)` divisible by `t` and of degree at most `b_ij`.
pub fn membership(profile: &BoundProfile, u: &GroupElement) -> bool {
    let n = profile.n();
    if u.n() != n || !u.is_upper_unipotent() {
        return false;
    }
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let e = u.entry(i, j);
            match (e.valuation(), e.degree()) {
                (None, _) => true,
                (Some(v), Some(d)) => v >= 1 && d as i64 <= profile.get(i, j),
                _ => unreachable!(),
            }
        })
    })
}

/// Coordinates of the class of `u` in the slot basis: the `t^r` coefficient of
/// entry `(i, j)` for each slot `(i, j, r)`.
///
/// Every cross term of a product lands in a degree killed by a commutator, so
/// this is a homomorphism on the stabilizer.
pub fn class_vector(basis: &H1Basis, u: &GroupElement) -> Result<Vec<Fp>> {
    if !membership(&basis.profile, u) {
        return Err(Error::NotAMember);
    }
    Ok(basis
        .slots
        .iter()
        .map(|s| u.entry(s.i, s.j).coeff(s.r as usize))
        .collect())
}

/// Whether reading off the full `t^k` coefficient matrix is a homomorphism on
/// the stabilizer with this profile.
pub fn phi_check(profile: &BoundProfile, k: u32) -> bool {
    if k <= 1 {
        return true;
    }
    let n = profile.n();
    let k = k as i64;
    (0..n).all(|i| {
        (i + 1..n)
            .all(|j| profile.get(i, j) < k || (i + 1..j).all(|m| !splits(k, profile.get(i, m), profile.get(m, j))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::StandardVertex;
    use crate::linalg::Field;
    use crate::polynomial::Poly;

    fn bounds(n: usize, b: &[i64]) -> BoundProfile {
        BoundProfile::from_upper_bounds(n, b).unwrap()
    }

    fn vertex(r: &[u32]) -> BoundProfile {
        BoundProfile::from_simplex(&[StandardVertex::new(r.to_vec()).unwrap()]).unwrap()
    }

    fn slots(b: &H1Basis) -> Vec<(usize, usize, u32)> {
        b.slots().iter().map(|s| (s.i + 1, s.j + 1, s.r)).collect()
    }

    #[test]
    fn degree_skipping_example() {
        let s = surviving_degrees(&bounds(3, &[1, 1, 3])).unwrap();
        let expect: SurvivingDegrees = [((0, 1), vec![1]), ((1, 2), vec![1]), ((0, 2), vec![1, 3])].into();
        assert_eq!(s, expect);
    }

    #[test]
    fn trivial_profile_has_no_slots() {
        assert!(surviving_degrees(&bounds(3, &[0, 0, 0])).unwrap().is_empty());
        assert!(surviving_degrees(&vertex(&[0, 0])).unwrap().is_empty());
    }

    #[test]
    fn uneven_profile() {
        let s = surviving_degrees(&bounds(3, &[2, 1, 3])).unwrap();
        let expect: SurvivingDegrees = [((0, 1), vec![1, 2]), ((1, 2), vec![1]), ((0, 2), vec![1])].into();
        assert_eq!(s, expect);
    }

    #[test]
    fn unrealizable_rejected() {
        let p = BoundProfile::from_simplex(&[StandardVertex::new(vec![1, 1]).unwrap()]).unwrap();
        assert!(surviving_degrees(&p).is_ok());
        assert!(BoundProfile::from_upper_bounds(3, &[1, 1, 1]).is_err());
    }

    #[test]
    fn basis_examples() {
        assert_eq!(slots(&h1_basis(&vertex(&[1, 0])).unwrap()), vec![(1, 2, 1), (1, 3, 1)]);
        let e = BoundProfile::from_simplex(&[
            StandardVertex::new(vec![1, 0]).unwrap(),
            StandardVertex::new(vec![1, 1]).unwrap(),
        ])
        .unwrap();
        assert_eq!(slots(&h1_basis(&e).unwrap()), vec![(1, 3, 1)]);
        assert_eq!(
            slots(&h1_basis(&vertex(&[2, 1])).unwrap()),
            vec![(1, 2, 1), (1, 3, 1), (2, 3, 1)]
        );
    }

    #[test]
    fn degree_one_always_survives() {
        for n in 2..=5 {
            for s in crate::building::standard_simplices(n, 3) {
                let p = BoundProfile::from_simplex(&s).unwrap();
                for ((i, j), rs) in surviving_degrees(&p).unwrap() {
                    assert!(p.get(i, j) >= 1);
                    assert_eq!(rs[0], 1);
                }
            }
        }
    }

    #[test]
    fn membership_and_class_examples() {
        let f = Field::new(2).unwrap();
        let p = bounds(3, &[1, 1, 3]);
        let b = h1_basis(&p).unwrap();
        let t = |k| Poly::t_pow(f, k);
        let el = |i, j, a| GroupElement::elementary(f, 3, i, j, a).unwrap();
        assert!(membership(&p, &el(0, 2, t(3))));
        assert!(!membership(&p, &el(0, 2, t(4))));
        assert!(!membership(&p, &el(1, 0, t(1))));
        assert!(!membership(&p, &el(0, 1, Poly::one(f))));
        // basis order is (1,2,1), (1,3,1), (1,3,3), (2,3,1)
        assert_eq!(
            class_vector(&b, &el(0, 2, t(3))).unwrap(),
            vec![Fp(0), Fp(0), Fp(1), Fp(0)]
        );
        assert_eq!(class_vector(&b, &el(0, 2, t(2))).unwrap(), vec![Fp(0); 4]);
        assert_eq!(
            class_vector(&b, &el(0, 1, t(1))).unwrap(),
            vec![Fp(1), Fp(0), Fp(0), Fp(0)]
        );
        assert_eq!(class_vector(&b, &el(0, 2, t(4))), Err(Error::NotAMember));
        let f3 = Field::new(3).unwrap();
        let b3 = h1_basis(&p).unwrap();
        let g = GroupElement::elementary(f3, 3, 0, 1, Poly::monomial(f3, Fp(2), 1)).unwrap();
        assert_eq!(class_vector(&b3, &g).unwrap(), vec![Fp(2), Fp(0), Fp(0), Fp(0)]);
    }

    #[test]
    fn phi_examples() {
        assert!(!phi_check(&bounds(3, &[2, 2, 4]), 2));
        assert!(phi_check(&bounds(3, &[2, 2, 4]), 1));
        for b in 0..6 {
            let p = bounds(2, &[b]);
            for k in 1..=b.max(1) as u32 {
                assert!(phi_check(&p, k));
            }
        }
        assert!(phi_check(&bounds(3, &[1, 1, 3]), 3));
        assert!(!phi_check(&bounds(3, &[1, 1, 3]), 2));
    }

    fn random_member(profile: &BoundProfile, f: Field, rng: &mut impl rand::Rng) -> GroupElement {
        let n = profile.n();
        let mut u = GroupElement::identity(f, n);
        for _ in 0..rng.gen_range(1..5) {
            let i = rng.gen_range(0..n - 1);
            let j = rng.gen_range(i + 1..n);
            let b = profile.get(i, j);
            if b < 1 {
                continue;
            }
            let coeffs: Vec<_> = (0..=b)
                .map(|d| {
                    if d == 0 {
                        f.elem(0)
                    } else {
                        f.elem(rng.gen_range(0..f.characteristic()) as i64)
                    }
                })
                .collect();
            let e = GroupElement::elementary(f, n, i, j, Poly::from_coeffs(f, coeffs)).unwrap();
            u = u.mul(&e).unwrap();
        }
        u
    }

    #[test]
    fn class_vector_is_additive() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 2..=3 {
            for p in [2, 3] {
                let f = Field::new(p).unwrap();
                for s in crate::building::standard_simplices(n, 3) {
                    let profile = BoundProfile::from_simplex(&s).unwrap();
                    let basis = h1_basis(&profile).unwrap();
                    for _ in 0..200 {
                        let u = random_member(&profile, f, &mut rng);
                        let v = random_member(&profile, f, &mut rng);
                        let uv = u.mul(&v).unwrap();
                        let sum: Vec<_> = class_vector(&basis, &u)
                            .unwrap()
                            .iter()
                            .zip(class_vector(&basis, &v).unwrap())
                            .map(|(&a, b)| f.add(a, b))
                            .collect();
                        assert_eq!(class_vector(&basis, &uv).unwrap(), sum, "{s:?}");
                    }
                }
            }
        }
    }
}
