use std::fmt;

use crate::error::{Error, Result};

/// A vertex of the standard wedge: exponents `r_1 >= ... >= r_{n-1} >= 0`,
/// with the implicit last exponent `r_n = 0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StandardVertex {
    r: Vec<u32>,
}

impl StandardVertex {
    pub fn new(r: Vec<u32>) -> Result<Self> {
        if r.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::DimensionMismatch(format!(
                "exponents {r:?} are not weakly decreasing"
            )));
        }
        Ok(StandardVertex { r })
    }

    /// The base vertex `v_0` in dimension `n`.
    pub fn origin(n: usize) -> Self {
        StandardVertex { r: vec![0; n - 1] }
    }

    pub fn n(&self) -> usize {
        self.r.len() + 1
    }

    pub fn exponents(&self) -> &[u32] {
        &self.r
    }

    /// All `n` exponents including the trailing zero.
    pub fn full(&self) -> Vec<i64> {
        self.r.iter().map(|&x| x as i64).chain(std::iter::once(0)).collect()
    }

    /// Distance from `v_0`, which is `r_1`.
    pub fn radius(&self) -> u32 {
        self.r.first().copied().unwrap_or(0)
    }

    pub fn is_origin(&self) -> bool {
        self.radius() == 0
    }
}

impl fmt::Debug for StandardVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for StandardVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.r.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An edge of the standard wedge, endpoints stored in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StandardEdge {
    a: StandardVertex,
    b: StandardVertex,
}

impl StandardEdge {
    pub fn new(x: StandardVertex, y: StandardVertex) -> Result<Self> {
        if !adjacency(&x, &y) {
            return Err(Error::NotASimplex);
        }
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        Ok(StandardEdge { a, b })
    }

    pub fn endpoints(&self) -> [&StandardVertex; 2] {
        [&self.a, &self.b]
    }

    pub fn profile(&self) -> BoundProfile {
        BoundProfile::from_simplex(&[self.a.clone(), self.b.clone()]).expect("edge endpoints are adjacent")
    }
}

impl fmt::Display for StandardEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// Two standard vertices span an edge when their full exponent vectors differ
/// by a nonzero vector in `{0,1}^n` or `{-1,0}^n`.
pub fn adjacency(x: &StandardVertex, y: &StandardVertex) -> bool {
    if x.n() != y.n() || x == y {
        return false;
    }
    let d: Vec<i64> = x.full().iter().zip(y.full()).map(|(a, b)| b - a).collect();
    d.iter().all(|&v| v == 0 || v == 1) || d.iter().all(|&v| v == 0 || v == -1)
}

fn decreasing_tuples(len: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<StandardVertex>) {
    if prefix.len() == len {
        out.push(StandardVertex { r: prefix.clone() });
        return;
    }
    for v in 0..=max {
        prefix.push(v);
        decreasing_tuples(len, v, prefix, out);
        prefix.pop();
    }
}

/// Vertices of the wedge with `r_1 <= radius` (sorted) and the edges among them.
pub fn standard_ball(n: usize, radius: u32) -> (Vec<StandardVertex>, Vec<StandardEdge>) {
    let mut vertices = Vec::new();
    decreasing_tuples(n - 1, radius, &mut Vec::new(), &mut vertices);
    vertices.sort();
    let mut edges = Vec::new();
    for (i, x) in vertices.iter().enumerate() {
        for y in &vertices[i + 1..] {
            if adjacency(x, y) {
                edges.push(StandardEdge {
                    a: x.clone(),
                    b: y.clone(),
                });
            }
        }
    }
    (vertices, edges)
}

/// Every simplex (set of pairwise adjacent vertices) of the wedge with
/// `r_1 <= radius`, each as a sorted vertex list.
pub fn standard_simplices(n: usize, radius: u32) -> Vec<Vec<StandardVertex>> {
    let (vertices, _) = standard_ball(n, radius);
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn extend(
        vertices: &[StandardVertex],
        start: usize,
        stack: &mut Vec<StandardVertex>,
        out: &mut Vec<Vec<StandardVertex>>,
    ) {
        for i in start..vertices.len() {
            if stack.iter().all(|v| adjacency(v, &vertices[i])) {
                stack.push(vertices[i].clone());
                out.push(stack.clone());
                extend(vertices, i + 1, stack, out);
                stack.pop();
            }
        }
    }
    extend(&vertices, 0, &mut stack, &mut out);
    out
}

/// Upper bounds `b_ij` on the degree of entry `(i, j)` of a stabilizer.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoundProfile {
    n: usize,
    b: Vec<i64>,
}

impl BoundProfile {
    /// `b_ij = min over vertices of (r_i - r_j)`.
    pub fn from_simplex(vertices: &[StandardVertex]) -> Result<Self> {
        let first = vertices.first().ok_or(Error::NotASimplex)?;
        let n = first.n();
        for (k, x) in vertices.iter().enumerate() {
            if x.n() != n || vertices[k + 1..].iter().any(|y| !adjacency(x, y)) {
                return Err(Error::NotASimplex);
            }
        }
        let fulls: Vec<Vec<i64>> = vertices.iter().map(StandardVertex::full).collect();
        let mut b = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    b[i * n + j] = fulls.iter().map(|r| r[i] - r[j]).min().unwrap();
                }
            }
        }
        Ok(BoundProfile { n, b })
    }

    /// Profile from the bounds above the diagonal, listed by increasing root
    /// height (`b_12, b_23, ..., b_13, b_24, ..., b_1n`). Entries below the
    /// diagonal are zero. Realizability is checked.
    pub fn from_upper_bounds(n: usize, bounds: &[i64]) -> Result<Self> {
        let roots = positive_roots(n);
        if bounds.len() != roots.len() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} bounds for n = {n}, got {}",
                roots.len(),
                bounds.len()
            )));
        }
        let mut b = vec![0; n * n];
        for (&(i, j), &v) in roots.iter().zip(bounds) {
            b[i * n + j] = v;
        }
        let p = BoundProfile { n, b };
        p.check_realizable()?;
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[i * self.n + j]
    }

    pub fn max_bound(&self) -> i64 {
        positive_roots(self.n)
            .iter()
            .map(|&(i, j)| self.get(i, j))
            .max()
            .unwrap_or(0)
            .max(0)
    }

    /// `sum over i < j of max(0, b_ij)`: the GF(p)-dimension of the
    /// stabilizer's entry space.
    pub fn entry_count(&self) -> u64 {
        positive_roots(self.n)
            .iter()
            .map(|&(i, j)| self.get(i, j).max(0) as u64)
            .sum()
    }

    /// `b_ij >= b_ik + b_kj` for `i < k < j`, and `b_ij <= 0` below the diagonal.
    pub fn check_realizable(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                for k in i + 1..j {
                    if self.get(i, j) < self.get(i, k) + self.get(k, j) {
                        return Err(Error::UnrealizableProfile {
                            i: i + 1,
                            k: k + 1,
                            j: j + 1,
                        });
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                if self.get(i, j) > 0 {
                    return Err(Error::DimensionMismatch(format!(
                        "bound below diagonal at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BoundProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = positive_roots(self.n)
            .iter()
            .map(|&(i, j)| format!("b{}{}={}", i + 1, j + 1, self.get(i, j)))
            .collect();
        write!(f, "BoundProfile[{}]", parts.join(" "))
    }
}

/// Positive roots `(i, j)`, `i < j`, 0-based, ordered by height then by `i`.
pub(crate) fn positive_roots(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|h| (0..n - h).map(move |i| (i, i + h))).collect()
}
