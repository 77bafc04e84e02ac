//! Maximal clique enumeration and regular-clique detection.

use crate::graph::{bit, bits, Graph, VertexSet};

/// All maximal cliques, each once, sorted lexicographically by their sorted
/// member lists.
pub fn enumerate_maximal_cliques(g: &Graph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    expand(g, 0, g.vertex_mask(), 0, &mut out);
    sort_cliques(&mut out);
    out
}

fn sort_cliques(cliques: &mut [VertexSet]) {
    cliques.sort_by_cached_key(|c| c.to_vec());
}

// Bron-Kerbosch with Tomita pivoting over bitsets.
fn expand(g: &Graph, r: u64, mut p: u64, mut x: u64, out: &mut Vec<VertexSet>) {
    if p == 0 {
        if x == 0 {
            out.push(VertexSet(r));
        }
        return;
    }
    let pivot = bits(p | x)
        .max_by_key(|&u| (p & g.neighbors(u)).count_ones())
        .expect("p is non-empty");
    for v in bits(p & !g.neighbors(pivot)) {
        let nv = g.neighbors(v);
        expand(g, r | bit(v), p & nv, x & nv, out);
        p &= !bit(v);
        x |= bit(v);
    }
}

/// Size of a largest clique.
pub fn clique_number(g: &Graph) -> usize {
    enumerate_maximal_cliques(g)
        .iter()
        .map(|c| c.len())
        .max()
        .unwrap_or(0)
}

/// A clique together with its regularity value, if it has one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueCertificate {
    pub vertices: VertexSet,
    /// Number of clique neighbours of every outside vertex; present only when
    /// that number is the same positive value for all outside vertices.
    pub e: Option<usize>,
}

impl CliqueCertificate {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Regularity value of `clique`: `Some(e)` when every vertex outside has
/// exactly `e > 0` neighbours inside.
pub fn clique_regularity(g: &Graph, clique: VertexSet) -> Option<usize> {
    let outside = g.vertex_mask() & !clique.0;
    let mut e = None;
    for v in bits(outside) {
        let c = (g.neighbors(v) & clique.0).count_ones() as usize;
        match e {
            None => e = Some(c),
            Some(prev) if prev != c => return None,
            _ => {}
        }
    }
    e.filter(|&e| e > 0)
}

/// Every maximal clique tested for regularity; only regular ones are returned.
pub fn find_regular_cliques(g: &Graph) -> Vec<CliqueCertificate> {
    enumerate_maximal_cliques(g)
        .into_iter()
        .filter_map(|c| {
            clique_regularity(g, c).map(|e| CliqueCertificate {
                vertices: c,
                e: Some(e),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rook(n: usize) -> Graph {
        let mut g = Graph::empty(n * n).unwrap();
        for a in 0..n * n {
            for b in a + 1..n * n {
                if a / n == b / n || a % n == b % n {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    #[test]
    fn k4_has_one_clique() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(enumerate_maximal_cliques(&k4), vec![VertexSet(0b1111)]);
    }

    #[test]
    fn four_cycle_edges_are_one_regular() {
        let c4 = Graph::cycle(4).unwrap();
        let certs = find_regular_cliques(&c4);
        assert_eq!(certs.len(), 4);
        assert!(certs.iter().all(|c| c.e == Some(1) && c.size() == 2));
    }

    #[test]
    fn rook_3x3_lines_are_one_regular() {
        let certs = find_regular_cliques(&rook(3));
        assert_eq!(certs.len(), 6);
        assert!(certs.iter().all(|c| c.e == Some(1) && c.size() == 3));
    }

    #[test]
    fn petersen_has_no_regular_clique() {
        let p = Graph::petersen();
        assert_eq!(enumerate_maximal_cliques(&p).len(), 15);
        assert!(find_regular_cliques(&p).is_empty());
    }

    #[test]
    fn canonical_order() {
        // two triangles sharing vertex 2, plus an edge 0-5
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (0, 5)])
            .unwrap();
        let cl: Vec<Vec<usize>> = enumerate_maximal_cliques(&g)
            .iter()
            .map(|c| c.to_vec())
            .collect();
        assert_eq!(cl, vec![vec![0, 1, 2], vec![0, 5], vec![2, 3, 4]]);
    }
}
