//! Simple undirected graphs on at most 64 vertices, stored as one adjacency
//! word per vertex.

use std::fmt;

use crate::error::GraphError;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// Mask with the lowest `n` bits set.
#[inline]
pub const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

#[inline]
pub fn bits(word: u64) -> Bits {
    Bits(word)
}

/// A set of vertices of a graph with at most 64 vertices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        VertexSet(vs.into_iter().fold(0, |acc, v| acc | bit(v)))
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= bit(v);
    }

    #[inline]
    pub fn iter(self) -> Bits {
        bits(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

/// Simple undirected graph with `n <= 64` vertices.
///
/// Row `adj[u]` has bit `w` set iff `{u, w}` is an edge. Rows are kept
/// symmetric, loop-free and confined to the low `n` bits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        let all = low_bits(n);
        for (u, row) in g.adj.iter_mut().enumerate() {
            *row = all & !bit(u);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::VertexCount(n));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).expect("petersen edges are valid")
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, w) in edges {
            if u >= n || w >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(w),
                    n,
                });
            }
            if u == w {
                return Err(GraphError::Loop(u));
            }
            g.add_edge(u, w);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, validating symmetry, loops and range.
    pub fn from_adjacency(rows: Vec<u64>) -> Result<Self, GraphError> {
        let n = rows.len();
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        let mask = low_bits(n);
        for (u, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(GraphError::VertexOutOfRange {
                    vertex: 63 - (row & !mask).leading_zeros() as usize,
                    n,
                });
            }
            if row & bit(u) != 0 {
                return Err(GraphError::Loop(u));
            }
            for w in bits(row) {
                if rows[w] & bit(u) == 0 {
                    return Err(GraphError::Asymmetric { u, w });
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    /// Builds a graph from a 0/1 matrix.
    pub fn from_matrix(matrix: &[Vec<u8>]) -> Result<Self, GraphError> {
        let n = matrix.len();
        let mut rows = vec![0u64; n];
        for (u, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(GraphError::NotSquare);
            }
            for (w, &x) in row.iter().enumerate() {
                if x != 0 {
                    rows[u] |= bit(w);
                }
            }
        }
        Graph::from_adjacency(rows)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_bits(self.n)
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> u64 {
        self.adj[u]
    }

    #[inline]
    pub fn neighbor_set(&self, u: usize) -> VertexSet {
        VertexSet(self.adj[u])
    }

    #[inline]
    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        self.adj[u] & bit(w) != 0
    }

    #[inline]
    pub fn add_edge(&mut self, u: usize, w: usize) {
        debug_assert!(u != w && u < self.n && w < self.n);
        self.adj[u] |= bit(w);
        self.adj[w] |= bit(u);
    }

    #[inline]
    pub fn remove_edge(&mut self, u: usize, w: usize) {
        self.adj[u] &= !bit(w);
        self.adj[w] &= !bit(u);
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    #[inline]
    pub fn common_neighbors(&self, u: usize, w: usize) -> usize {
        (self.adj[u] & self.adj[w]).count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, w)` with `u < w`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| bits(self.adj[u] & !low_bits(u + 1)).map(move |w| (u, w)))
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * (self.n - 1) / 2
    }

    pub fn is_clique(&self, set: u64) -> bool {
        bits(set).all(|v| (set & !bit(v)) & !self.adj[v] == 0)
    }

    pub fn is_coclique(&self, set: u64) -> bool {
        bits(set).all(|v| self.adj[v] & set == 0)
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertex_mask();
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(u, &row)| !row & all & !bit(u))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Relabels vertices: vertex `u` of `self` becomes vertex `perm[u]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(
            perm.len(),
            self.n,
            "permutation length must match vertex count"
        );
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            let mut row = 0;
            for w in bits(self.adj[u]) {
                row |= bit(perm[w]);
            }
            adj[perm[u]] = row;
        }
        Graph { n: self.n, adj }
    }

    /// Subgraph induced on `vertices`, relabelled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(vertices.len())?;
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &w) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, w) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Whether `perm` maps the edge set onto itself.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        perm.len() == self.n
            && (0..self.n).all(|u| {
                let mut image = 0;
                for w in bits(self.adj[u]) {
                    image |= bit(perm[w]);
                }
                image == self.adj[perm[u]]
            })
    }

    /// Edges present in exactly one of the two graphs.
    pub fn symmetric_difference(&self, other: &Graph) -> Vec<(usize, usize)> {
        assert_eq!(self.n, other.n);
        (0..self.n)
            .flat_map(|u| {
                bits((self.adj[u] ^ other.adj[u]) & !low_bits(u + 1)).map(move |w| (u, w))
            })
            .collect()
    }

    /// Whether some edge has two common neighbours forming a diamond (K4 minus an edge).
    pub fn has_diamond(&self) -> bool {
        self.edges()
            .any(|(u, w)| (self.adj[u] & self.adj[w]).count_ones() >= 2)
    }

    /// Whether the graph contains a clique on `size` vertices.
    pub fn has_clique_of_size(&self, size: usize) -> bool {
        fn grow(g: &Graph, cand: u64, need: usize) -> bool {
            if need == 0 {
                return true;
            }
            if (cand.count_ones() as usize) < need {
                return false;
            }
            let mut rest = cand;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if grow(g, rest & g.adj[v], need - 1) {
                    return true;
                }
            }
            false
        }
        grow(self, self.vertex_mask(), size)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={:?})",
            self.n,
            self.edges().collect::<Vec<_>>()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_k4_is_empty() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.complement(), Graph::empty(4).unwrap());
    }

    #[test]
    fn pentagon_complement_is_a_pentagon() {
        let c5 = Graph::cycle(5).unwrap();
        let co = c5.complement();
        assert_eq!(co.degrees(), vec![2; 5]);
        assert_eq!(co.edge_count(), 5);
        // 0-2-4-1-3-0
        assert!(co.has_edge(0, 2) && co.has_edge(2, 4) && co.has_edge(4, 1) && co.has_edge(1, 3));
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(matches!(
            Graph::from_adjacency(vec![0b10, 0b00]),
            Err(GraphError::Asymmetric { .. })
        ));
        assert!(matches!(
            Graph::from_adjacency(vec![0b1]),
            Err(GraphError::Loop(0))
        ));
        assert!(matches!(
            Graph::from_adjacency(vec![0b100, 0]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        assert!(Graph::empty(65).is_err());
    }

    #[test]
    fn petersen_is_cubic_and_diamond_free() {
        let p = Graph::petersen();
        assert_eq!(p.degrees(), vec![3; 10]);
        assert_eq!(p.edge_count(), 15);
        assert!(!p.has_diamond());
        assert!(!p.has_clique_of_size(3));
    }

    #[test]
    fn permutation_preserves_structure() {
        let c5 = Graph::cycle(5).unwrap();
        let rotated = c5.permuted(&[1, 2, 3, 4, 0]);
        assert_eq!(rotated, c5);
        assert!(c5.is_automorphism(&[4, 3, 2, 1, 0]));
        assert!(!c5.is_automorphism(&[1, 0, 2, 3, 4]));
    }
}
