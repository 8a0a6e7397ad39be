use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;

use super::flags::{enumerate_flag_reps, FlagRep};
use super::standard::{standard_ball, StandardEdge, StandardVertex};
use crate::linalg::Field;
use crate::polynomial::{CanonicalLabel, Poly, PolyMatrix};

/// Label of the vertex `s · [t^{r_1} e_1, ..., t^{r_{n-1}} e_{n-1}, e_n]`.
///
/// Lattices are taken over the local ring at infinity, whose uniformizer is
/// `1/t`; in that variable the scaled basis is `x^{r_1 - r_i} s e_i`.
pub fn vertex_label(s: &FlagRep, r: &StandardVertex) -> CanonicalLabel {
    let m = s.matrix();
    let f = m.field();
    let full = r.full();
    let top = full[0];
    let cols: Vec<Vec<Poly>> = (0..r.n())
        .map(|i| {
            let k = (top - full[i]) as usize;
            (0..r.n()).map(|row| Poly::monomial(f, m[(row, i)], k)).collect()
        })
        .collect();
    let basis = PolyMatrix::from_columns(f, &cols).expect("square basis");
    CanonicalLabel::of(&basis).expect("translates of standard vertices are lattices")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexRep {
    /// Position of the flag in the enumeration the complex was built from.
    pub flag_index: usize,
    pub flag: FlagRep,
    pub vertex: StandardVertex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRep {
    pub flag_index: usize,
    pub flag: FlagRep,
    pub edge: StandardEdge,
    /// Endpoint labels in increasing order, each with the standard vertex it
    /// is the translate of.
    pub ends: [(CanonicalLabel, StandardVertex); 2],
}

/// The radius-`R` slice of the union of flag translates of the standard wedge,
/// 1-skeleton only, deduplicated by lattice label.
#[derive(Debug, Clone)]
pub struct ComplexZ {
    field: Field,
    n: usize,
    radius: u32,
    vertices: BTreeMap<CanonicalLabel, VertexRep>,
    edges: BTreeMap<(CanonicalLabel, CanonicalLabel), EdgeRep>,
}

type VertexMap = BTreeMap<CanonicalLabel, VertexRep>;
type EdgeMap = BTreeMap<(CanonicalLabel, CanonicalLabel), EdgeRep>;

fn keep_first_vertex(map: &mut VertexMap, key: CanonicalLabel, rep: VertexRep) {
    match map.get(&key) {
        Some(old) if (old.flag_index, &old.vertex) <= (rep.flag_index, &rep.vertex) => {}
        _ => {
            map.insert(key, rep);
        }
    }
}

fn keep_first_edge(map: &mut EdgeMap, key: (CanonicalLabel, CanonicalLabel), rep: EdgeRep) {
    match map.get(&key) {
        Some(old) if (old.flag_index, &old.edge) <= (rep.flag_index, &rep.edge) => {}
        _ => {
            map.insert(key, rep);
        }
    }
}

/// Builds the complex from all flag representatives in enumeration order.
pub fn build_z(field: Field, n: usize, radius: u32) -> ComplexZ {
    build_z_with_flags(field, n, radius, &enumerate_flag_reps(field, n))
}

/// Builds the complex from the given flag representatives; the earliest flag
/// (then the smallest standard simplex) provides each representative.
pub fn build_z_with_flags(field: Field, n: usize, radius: u32, flags: &[FlagRep]) -> ComplexZ {
    let (ball_vertices, ball_edges) = standard_ball(n, radius);
    let (vertices, edges) = flags
        .par_iter()
        .enumerate()
        .map(|(idx, s)| {
            let labels: BTreeMap<&StandardVertex, CanonicalLabel> =
                ball_vertices.iter().map(|r| (r, vertex_label(s, r))).collect();
            let mut vs = VertexMap::new();
            for (r, l) in &labels {
                keep_first_vertex(
                    &mut vs,
                    l.clone(),
                    VertexRep {
                        flag_index: idx,
                        flag: s.clone(),
                        vertex: (*r).clone(),
                    },
                );
            }
            let mut es = EdgeMap::new();
            for e in &ball_edges {
                let [a, b] = e.endpoints();
                let (la, lb) = (labels[a].clone(), labels[b].clone());
                let ends = if la < lb {
                    [(la, a.clone()), (lb, b.clone())]
                } else {
                    [(lb, b.clone()), (la, a.clone())]
                };
                let key = (ends[0].0.clone(), ends[1].0.clone());
                keep_first_edge(
                    &mut es,
                    key,
                    EdgeRep {
                        flag_index: idx,
                        flag: s.clone(),
                        edge: e.clone(),
                        ends,
                    },
                );
            }
            (vs, es)
        })
        .reduce(
            || (VertexMap::new(), EdgeMap::new()),
            |(mut va, mut ea), (vb, eb)| {
                for (k, v) in vb {
                    keep_first_vertex(&mut va, k, v);
                }
                for (k, e) in eb {
                    keep_first_edge(&mut ea, k, e);
                }
                (va, ea)
            },
        );
    let mut z = ComplexZ {
        field,
        n,
        radius,
        vertices,
        edges,
    };
    if z.vertices.is_empty() {
        // no flags supplied; v0 is still part of the complex
        let s = FlagRep::identity(field, n);
        let o = StandardVertex::origin(n);
        z.vertices.insert(
            vertex_label(&s, &o),
            VertexRep {
                flag_index: 0,
                flag: s,
                vertex: o,
            },
        );
    }
    z
}

impl ComplexZ {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn vertices(&self) -> &BTreeMap<CanonicalLabel, VertexRep> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<(CanonicalLabel, CanonicalLabel), EdgeRep> {
        &self.edges
    }

    /// Label of the base vertex `v_0`.
    pub fn origin(&self) -> CanonicalLabel {
        CanonicalLabel::of(&PolyMatrix::identity(self.field, self.n)).expect("identity is a lattice basis")
    }

    /// Graph distance from `v_0` to every vertex.
    pub fn distances_from_origin(&self) -> BTreeMap<CanonicalLabel, u32> {
        let mut adj: BTreeMap<&CanonicalLabel, Vec<&CanonicalLabel>> = BTreeMap::new();
        for (a, b) in self.edges.keys() {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let origin = self.origin();
        let mut dist = BTreeMap::new();
        dist.insert(origin.clone(), 0);
        let mut queue = VecDeque::from([origin]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for w in adj.get(&v).into_iter().flatten() {
                if !dist.contains_key(*w) {
                    dist.insert((*w).clone(), d + 1);
                    queue.push_back((*w).clone());
                }
            }
        }
        dist
    }
}
