//! Brute-force checks that share no code with the slot model.
//!
//! Stabilizer groups are enumerated inside `SL_n(GF(p)[t]/(t^m))` with their
//! own truncated arithmetic, and abelianizations are computed by closing the
//! set of all commutators.

use std::collections::{HashMap, VecDeque};

use crate::building::{vertex_label, BoundProfile, FlagRep, StandardVertex};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::Field;
use crate::polynomial::{lattice_contains, Poly};

/// Default group-order limit; groups of at least this order are not enumerated.
pub const DEFAULT_LIMIT: usize = 1 << 20;

/// Shape of a truncated matrix ring `M_n(GF(p)[t]/(t^m))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Truncation {
    n: usize,
    m: usize,
    p: u32,
}

/// Coefficient bytes: entry `(i, j)` occupies `[(i n + j) m, (i n + j + 1) m)`.
type Elem = Vec<u8>;

impl Truncation {
    fn identity(&self) -> Elem {
        let mut e = vec![0u8; self.n * self.n * self.m];
        for i in 0..self.n {
            e[(i * self.n + i) * self.m] = 1;
        }
        e
    }

    fn encode(&self, g: &GroupElement) -> Elem {
        let mut e = vec![0u8; self.n * self.n * self.m];
        for i in 0..self.n {
            for j in 0..self.n {
                for (d, c) in g.entry(i, j).coeffs().iter().take(self.m).enumerate() {
                    e[(i * self.n + j) * self.m + d] = c.0 as u8;
                }
            }
        }
        e
    }

    fn mul(&self, a: &[u8], b: &[u8]) -> Elem {
        let (n, m, p) = (self.n, self.m, self.p);
        let mut acc = vec![0u32; n * n * m];
        for i in 0..n {
            for k in 0..n {
                let x = &a[(i * n + k) * m..(i * n + k + 1) * m];
                if x.iter().all(|&c| c == 0) {
                    continue;
                }
                for j in 0..n {
                    let y = &b[(k * n + j) * m..(k * n + j + 1) * m];
                    let out = &mut acc[(i * n + j) * m..(i * n + j + 1) * m];
                    for (d1, &c1) in x.iter().enumerate() {
                        if c1 == 0 {
                            continue;
                        }
                        for (d2, &c2) in y.iter().take(m - d1).enumerate() {
                            out[d1 + d2] = (out[d1 + d2] + c1 as u32 * c2 as u32) % p;
                        }
                    }
                }
            }
        }
        acc.into_iter().map(|c| c as u8).collect()
    }

    fn pow(&self, a: &[u8], e: u32) -> Elem {
        (0..e).fold(self.identity(), |acc, _| self.mul(&acc, a))
    }

    /// Inverse as the last power before the identity.
    fn inverse(&self, a: &[u8]) -> Elem {
        let id = self.identity();
        let mut prev = id.clone();
        let mut cur = a.to_vec();
        while cur != id {
            prev = cur.clone();
            cur = self.mul(&cur, a);
        }
        prev
    }

    /// `t^k` coefficient matrix.
    fn coefficient(&self, a: &[u8], k: usize) -> Vec<u8> {
        (0..self.n * self.n).map(|e| a[e * self.m + k]).collect()
    }
}

fn hex(e: &[u8]) -> String {
    e.iter().map(|b| format!("{b:x}")).collect()
}

/// An enumerated finite matrix group.
#[derive(Debug, Clone)]
pub struct FiniteGroupTable {
    shape: Truncation,
    elements: Vec<Elem>,
    index: HashMap<Elem, usize>,
    generators: Vec<Elem>,
}

impl FiniteGroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn modulus(&self) -> usize {
        self.shape.m
    }

    pub fn contains(&self, e: &[u8]) -> bool {
        self.index.contains_key(e)
    }

    /// Serialized elements in discovery order, identity first.
    pub fn elements(&self) -> &[Vec<u8>] {
        &self.elements
    }

    fn closure(shape: Truncation, generators: Vec<Elem>, limit: usize) -> Result<Self> {
        let id = shape.identity();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id.clone(), 0)]);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in &generators {
                let h = shape.mul(&g, s);
                if !index.contains_key(&h) {
                    if elements.len() + 1 >= limit {
                        return Err(Error::GroupTooLarge(limit));
                    }
                    index.insert(h.clone(), elements.len());
                    elements.push(h.clone());
                    queue.push_back(h);
                }
            }
        }
        Ok(FiniteGroupTable {
            shape,
            elements,
            index,
            generators,
        })
    }

    fn is_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.generators.iter().all(|s| self.contains(&self.shape.mul(a, s))))
    }
}

/// Closure of the images of `generators` in `SL_n(GF(p)[t]/(t^m))`; fails once
/// the order would reach `limit`.
pub fn generate_group(generators: &[GroupElement], m: usize, limit: usize) -> Result<FiniteGroupTable> {
    let first = generators
        .first()
        .ok_or_else(|| Error::DimensionMismatch("no generators".into()))?;
    let p = first.field().characteristic();
    if p > u8::MAX as u32 {
        return Err(Error::DimensionMismatch("oracle supports p < 256".into()));
    }
    let shape = Truncation {
        n: first.n(),
        m: m.max(1),
        p,
    };
    let gens = generators.iter().map(|g| shape.encode(g)).collect();
    FiniteGroupTable::closure(shape, gens, limit)
}

/// Subgroup generated by all commutators `[a, b]`, checked to be normal.
pub fn commutator_subgroup(tbl: &FiniteGroupTable) -> Result<FiniteGroupTable> {
    let shape = tbl.shape;
    let mut comms: Vec<Elem> = Vec::new();
    let mut seen = HashMap::new();
    let inverses: Vec<Elem> = tbl.elements.iter().map(|a| shape.inverse(a)).collect();
    for (a, ai) in tbl.elements.iter().zip(&inverses) {
        for (b, bi) in tbl.elements.iter().zip(&inverses) {
            let c = shape.mul(&shape.mul(&shape.mul(a, b), ai), bi);
            if seen.insert(c.clone(), ()).is_none() {
                comms.push(c);
            }
        }
    }
    let sub = FiniteGroupTable::closure(shape, comms, tbl.order().max(1))?;
    for s in &tbl.generators {
        let si = shape.inverse(s);
        for c in &sub.elements {
            if !sub.contains(&shape.mul(&shape.mul(s, c), &si)) {
                return Err(Error::RepresentativeInconsistency(
                    "commutator subgroup is not normal".into(),
                ));
            }
        }
    }
    Ok(sub)
}

/// `d` with `|G / [G, G]| = p^d`, after checking the quotient has exponent `p`.
pub fn abelianization_dim(tbl: &FiniteGroupTable) -> Result<u32> {
    let comm = commutator_subgroup(tbl)?;
    abelianization_dim_with(tbl, &comm)
}

fn abelianization_dim_with(tbl: &FiniteGroupTable, comm: &FiniteGroupTable) -> Result<u32> {
    let shape = tbl.shape;
    if let Some(w) = tbl.elements.iter().find(|g| !comm.contains(&shape.pow(g, shape.p))) {
        return Err(Error::NotElementaryAbelian(hex(w)));
    }
    let mut ratio = tbl.order() / comm.order();
    let mut d = 0;
    while ratio > 1 {
        if !ratio.is_multiple_of(shape.p as usize) {
            return Err(Error::NotElementaryAbelian("index is not a power of p".into()));
        }
        ratio /= shape.p as usize;
        d += 1;
    }
    Ok(d)
}

/// Generators `I + E_ij(t^r)` of the congruence part of a stabilizer.
pub fn stabilizer_generators(field: Field, profile: &BoundProfile) -> Vec<GroupElement> {
    let n = profile.n();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for r in 1..=profile.get(i, j).max(0) {
                gens.push(GroupElement::elementary(field, n, i, j, Poly::t_pow(field, r as usize)).expect("i != j"));
            }
        }
    }
    if gens.is_empty() {
        gens.push(GroupElement::identity(field, n));
    }
    gens
}

/// Outcome of comparing the slot model with brute force for one profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub order: usize,
    /// `p^(sum of max(0, b_ij))`.
    pub expected_order: u128,
    pub commutator_order: usize,
    pub brute_force_dim: u32,
    pub model_dim: usize,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.order as u128 == self.expected_order && self.brute_force_dim as usize == self.model_dim
    }
}

/// Enumerates the stabilizer for `profile` and compares its abelianization
/// with the surviving-slot count.
pub fn verify_h1_formula(profile: &BoundProfile, field: Field, limit: usize) -> Result<Verification> {
    let model_dim = crate::homology::h1_basis(profile)?.dim();
    let m = 1 + profile.max_bound() as usize;
    let tbl = generate_group(&stabilizer_generators(field, profile), m, limit)?;
    debug_assert!(tbl.is_closed());
    let comm = commutator_subgroup(&tbl)?;
    let brute_force_dim = abelianization_dim_with(&tbl, &comm)?;
    Ok(Verification {
        order: tbl.order(),
        expected_order: (field.characteristic() as u128).pow(profile.entry_count() as u32),
        commutator_order: comm.order(),
        brute_force_dim,
        model_dim,
    })
}

/// Whether reading off the `t^k` coefficient matrix is additive on the
/// enumerated stabilizer, tested on every (element, generator) pair.
pub fn phi_oracle(profile: &BoundProfile, field: Field, k: u32, limit: usize) -> Result<bool> {
    let m = (1 + profile.max_bound() as usize).max(k as usize + 1);
    let tbl = generate_group(&stabilizer_generators(field, profile), m, limit)?;
    let shape = tbl.shape;
    let k = k as usize;
    let p = shape.p as u16;
    Ok(tbl.elements.iter().all(|g| {
        tbl.generators.iter().all(|s| {
            let lhs = shape.coefficient(&shape.mul(g, s), k);
            let a = shape.coefficient(g, k);
            let b = shape.coefficient(s, k);
            lhs.iter()
                .zip(a.iter().zip(&b))
                .all(|(&l, (&x, &y))| l as u16 == (x as u16 + y as u16) % p)
        })
    }))
}

/// Adjacency of two standard vertices decided by lattices: some scaling
/// `x^k L'` sits strictly between `x L` and `L` (or the same with roles swapped).
pub fn adjacency_oracle(field: Field, a: &StandardVertex, b: &StandardVertex) -> bool {
    if a.n() != b.n() {
        return false;
    }
    let id = FlagRep::identity(field, a.n());
    let la = vertex_label(&id, a);
    let lb = vertex_label(&id, b);
    let reach = a.radius().max(b.radius()) as usize + 1;
    let between = |outer: &crate::polynomial::Lattice, inner: &crate::polynomial::Lattice| {
        let bottom = outer.scaled(1);
        (0..=reach).any(|k| {
            let mid = inner.scaled(k);
            lattice_contains(outer, &mid) && lattice_contains(&mid, &bottom) && &mid != outer && mid != bottom
        })
    };
    between(la.lattice(), lb.lattice()) || between(lb.lattice(), la.lattice())
}
