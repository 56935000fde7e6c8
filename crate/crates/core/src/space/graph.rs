use crate::error::{input, Result};
use crate::params::ParameterTuple;
use crate::space::triangle::{classify_triangle, TriangleTable, TriangleVerdict};

/// A δ-edge-labelled graph on vertices `0..n`.
///
/// Distances live in a dense symmetric matrix; `0` marks a missing pair.
/// A complete graph doubles as a δ-valued (pre)metric space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelledGraph {
    n: usize,
    delta: u32,
    dist: Vec<u32>,
}

impl LabelledGraph {
    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize, delta: u32) -> Self {
        Self {
            n,
            delta,
            dist: vec![0; n * n],
        }
    }

    pub fn from_edges(n: usize, delta: u32, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let mut g = Self::empty(n, delta);
        for &(u, v, d) in edges {
            if u < n && v < n && g.is_edge(u, v) {
                return input(format!("pair {u} {v} given more than once"));
            }
            g.set(u, v, d)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        match self.dist[u * self.n + v] {
            0 => None,
            d => Some(d),
        }
    }

    /// Raw label, `0` when the pair is missing.
    #[inline]
    pub(crate) fn raw(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    /// Sets the distance of a pair, overwriting any previous value.
    pub fn set(&mut self, u: usize, v: usize, d: u32) -> Result<()> {
        if u >= self.n || v >= self.n {
            return input(format!("vertex out of range for {} vertices", self.n));
        }
        if u == v {
            return input(format!("loop at vertex {u}"));
        }
        if d == 0 || d > self.delta {
            return input(format!("distance {d} outside 1..={}", self.delta));
        }
        self.put(u, v, d);
        Ok(())
    }

    #[inline]
    pub(crate) fn put(&mut self, u: usize, v: usize, d: u32) {
        self.dist[u * self.n + v] = d;
        self.dist[v * self.n + u] = d;
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        self.raw(u, v) != 0
    }

    /// Unordered pairs `(u, v)` with `u < v`, lexicographically.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
    }

    /// Present edges `(u, v, d)` with `u < v`, lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.pairs()
            .filter_map(|(u, v)| self.get(u, v).map(|d| (u, v, d)))
    }

    pub fn missing_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs().filter(|&(u, v)| !self.is_edge(u, v))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn is_complete(&self) -> bool {
        self.missing_pairs().next().is_none()
    }

    /// Checks that `other` agrees with `self` on every edge of `self`.
    pub fn is_extended_by(&self, other: &LabelledGraph) -> bool {
        self.n == other.n && self.edges().all(|(u, v, d)| other.get(u, v) == Some(d))
    }

    /// Sorted vertex triples `u < v < w` whose three pairs are all present
    /// and form a forbidden triangle.
    pub fn forbidden_triangles(&self, table: &TriangleTable) -> Vec<(usize, usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let a = self.raw(u, v);
                if a == 0 {
                    continue;
                }
                for w in v + 1..n {
                    let (b, c) = (self.raw(u, w), self.raw(v, w));
                    if b != 0 && c != 0 && !table.allowed(a, b, c) {
                        out.push((u, v, w));
                    }
                }
            }
        }
        out
    }

    /// Verdicts of every complete triangle, keyed by sorted vertex triple.
    pub fn triangle_verdicts(
        &self,
        p: &ParameterTuple,
    ) -> Result<Vec<((usize, usize, usize), TriangleVerdict)>> {
        let n = self.n;
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                for w in v + 1..n {
                    if let (Some(a), Some(b), Some(c)) =
                        (self.get(u, v), self.get(u, w), self.get(v, w))
                    {
                        out.push(((u, v, w), classify_triangle(p, a, b, c)?));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Relabels vertices: vertex `i` of `self` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> LabelledGraph {
        let mut g = LabelledGraph::empty(self.n, self.delta);
        for (u, v, d) in self.edges() {
            g.put(perm[u], perm[v], d);
        }
        g
    }
}

/// Whether a complete graph lies in the class.
pub fn is_member(p: &ParameterTuple, g: &LabelledGraph) -> Result<bool> {
    if g.delta() != p.delta {
        return input(format!(
            "graph has delta {} but parameters have delta {}",
            g.delta(),
            p.delta
        ));
    }
    if !g.is_complete() {
        return input("membership is only defined for complete graphs");
    }
    Ok(g.triangle_verdicts(p)?.iter().all(|(_, v)| v.is_allowed()))
}
