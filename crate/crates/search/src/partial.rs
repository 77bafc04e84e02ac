//! Partial graphs and the pruning rules checked on them.

use std::sync::Arc;

use neumaier_core::graph::{bit, bits, low_bits};
use neumaier_core::{canonical_form, Graph};

use crate::error::SearchError;

/// A structural predicate checked on every partial graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Adjacent pairs have at most `hi` common neighbours, and must still be
    /// able to reach `lo`.
    Lambda { lo: usize, hi: usize },
    /// No clique on `size` vertices.
    NoClique(usize),
    /// Every clique on `size` vertices has exactly `e` neighbours in it from
    /// each outside vertex.
    RegularCliques { size: usize, e: usize },
}

/// Per-vertex data shared by all partial graphs of one search stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub target: Vec<usize>,
    pub layer: Vec<usize>,
    /// Vertices each vertex may still be joined to while both are open.
    pub reach: Vec<u64>,
    pub layer_pairs: Vec<(usize, usize)>,
}

impl Frame {
    /// `layer_pairs` lists the (unordered) layer pairs whose vertices may
    /// still become adjacent.
    pub fn new(
        target: Vec<usize>,
        layer: Vec<usize>,
        layer_pairs: &[(usize, usize)],
    ) -> Result<Frame, SearchError> {
        let n = target.len();
        if layer.len() != n {
            return Err(SearchError::Domain(format!(
                "{} targets but {} layers",
                n,
                layer.len()
            )));
        }
        let mut pairs: Vec<(usize, usize)> = layer_pairs
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        let reach = (0..n)
            .map(|u| {
                let mut m = 0;
                for w in 0..n {
                    let key = (layer[u].min(layer[w]), layer[u].max(layer[w]));
                    if w != u && pairs.binary_search(&key).is_ok() {
                        m |= bit(w);
                    }
                }
                m
            })
            .collect();
        Ok(Frame {
            target,
            layer,
            reach,
            layer_pairs: pairs,
        })
    }

    /// One layer, every pair open, the same degree target everywhere.
    pub fn uniform(n: usize, degree: usize) -> Frame {
        Frame::new(vec![degree; n], vec![0; n], &[(0, 0)]).expect("lengths agree")
    }
}

/// A graph under construction. A pair is decided once it is an edge, once
/// either endpoint is closed, or when the frame never allows it; open pairs
/// are non-edges that may still be added.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialGraph {
    pub graph: Graph,
    pub closed: u64,
    pub frame: Arc<Frame>,
}

impl PartialGraph {
    pub fn new(graph: Graph, frame: Arc<Frame>) -> Result<PartialGraph, SearchError> {
        if graph.n() != frame.target.len() {
            return Err(SearchError::Domain(format!(
                "graph has {} vertices, frame has {}",
                graph.n(),
                frame.target.len()
            )));
        }
        if let Some(v) = (0..graph.n()).find(|&v| graph.degree(v) > frame.target[v]) {
            return Err(SearchError::Domain(format!(
                "vertex {} exceeds its degree cap {}",
                v + 1,
                frame.target[v]
            )));
        }
        Ok(PartialGraph {
            graph,
            closed: 0,
            frame,
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn deficit(&self, v: usize) -> usize {
        self.frame.target[v].saturating_sub(self.graph.degree(v))
    }

    /// Vertices whose degree is below target.
    pub fn open_vertices(&self) -> u64 {
        (0..self.n())
            .filter(|&v| self.graph.degree(v) < self.frame.target[v])
            .fold(0, |m, v| m | bit(v))
    }

    /// Vertices `v` may still be joined to.
    pub fn allowed(&self, v: usize) -> u64 {
        if self.closed & bit(v) != 0 {
            return 0;
        }
        self.frame.reach[v] & !self.closed & !self.graph.neighbors(v)
    }

    pub fn is_decided(&self, u: usize, w: usize) -> bool {
        self.graph.has_edge(u, w) || self.allowed(u) & bit(w) == 0
    }

    pub fn close(&mut self, v: usize) {
        self.closed |= bit(v);
    }

    /// Colouring that every symmetry of the state must preserve, with
    /// `individualized` given a colour of its own.
    pub fn coloring(&self, individualized: Option<usize>) -> Vec<usize> {
        let keys: Vec<(usize, usize, bool, bool)> = (0..self.n())
            .map(|v| {
                (
                    self.frame.layer[v],
                    self.frame.target[v],
                    self.closed & bit(v) != 0,
                    individualized == Some(v),
                )
            })
            .collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        sorted.dedup();
        keys.iter()
            .map(|k| sorted.binary_search(k).expect("key present"))
            .collect()
    }

    /// Equal for two partial graphs of the same frame exactly when one maps
    /// onto the other.
    pub fn canonical_key(&self) -> String {
        canonical_form(&self.graph, Some(&self.coloring(None))).key()
    }

    /// Whether `perm` maps this state onto itself.
    pub fn preserves_state(&self, perm: &[usize]) -> bool {
        let image = |m: u64| bits(m).fold(0u64, |acc, w| acc | bit(perm[w]));
        (0..self.n()).all(|v| {
            let p = perm[v];
            self.frame.target[p] == self.frame.target[v]
                && self.frame.layer[p] == self.frame.layer[v]
                && (self.closed & bit(p) != 0) == (self.closed & bit(v) != 0)
                && self.frame.reach[p] == image(self.frame.reach[v])
                && self.graph.neighbors(p) == image(self.graph.neighbors(v))
        })
    }

    /// Whether the state can still be completed as far as the rules and
    /// degree targets can tell. `touched` restricts the clique-freeness test
    /// to cliques through that vertex.
    pub fn is_viable(&self, rules: &[Rule], touched: Option<usize>) -> bool {
        let g = &self.graph;
        let open = self.open_vertices();
        for v in 0..self.n() {
            let d = g.degree(v);
            let target = self.frame.target[v];
            if d > target {
                return false;
            }
            if d < target && d + ((self.allowed(v) & open).count_ones() as usize) < target {
                return false;
            }
        }
        rules.iter().all(|rule| match *rule {
            Rule::Lambda { lo, hi } => self.lambda_ok(lo, hi),
            Rule::NoClique(size) => match touched {
                Some(x) => !clique_through(g, x, size),
                None => !g.has_clique_of_size(size),
            },
            Rule::RegularCliques { size, e } => self.cliques_ok(size, e),
        })
    }

    fn lambda_ok(&self, lo: usize, hi: usize) -> bool {
        let g = &self.graph;
        for (a, b) in g.edges() {
            let na = g.neighbors(a);
            let nb = g.neighbors(b);
            let c = (na & nb).count_ones() as usize;
            if c > hi {
                return false;
            }
            if c < lo {
                let (aa, ab) = (self.allowed(a), self.allowed(b));
                let potential = c + ((na & ab) | (nb & aa) | (aa & ab)).count_ones() as usize;
                if potential < lo {
                    return false;
                }
            }
        }
        true
    }

    fn cliques_ok(&self, size: usize, e: usize) -> bool {
        let g = &self.graph;
        let outside_all = g.vertex_mask();
        let mut ok = true;
        for_each_clique(g, size, &mut |k| {
            for t in bits(outside_all & !k) {
                let cnt = (g.neighbors(t) & k).count_ones() as usize;
                if cnt > e || cnt + ((self.allowed(t) & k).count_ones() as usize) < e {
                    ok = false;
                    return false;
                }
            }
            true
        });
        ok
    }

    /// 1-based text form used by checkpoints.
    pub fn describe(&self) -> String {
        let closed: Vec<String> = bits(self.closed).map(|v| (v + 1).to_string()).collect();
        let edges: Vec<String> = self
            .graph
            .edges()
            .map(|(u, w)| format!("{}-{}", u + 1, w + 1))
            .collect();
        format!("closed {}\nedges {}", closed.join(" "), edges.join(" "))
    }
}

/// Whether some clique on `size` vertices contains `x`.
pub fn clique_through(g: &Graph, x: usize, size: usize) -> bool {
    if size == 0 {
        return true;
    }
    let mut found = false;
    grow(g, g.neighbors(x), size - 1, bit(x), &mut |_| {
        found = true;
        false
    });
    found
}

/// Calls `f` on every clique with exactly `size` vertices; stops when `f`
/// returns false.
pub fn for_each_clique(g: &Graph, size: usize, f: &mut dyn FnMut(u64) -> bool) {
    grow(g, g.vertex_mask(), size, 0, f);
}

fn grow(g: &Graph, cand: u64, need: usize, chosen: u64, f: &mut dyn FnMut(u64) -> bool) -> bool {
    if need == 0 {
        return f(chosen);
    }
    if (cand.count_ones() as usize) < need {
        return true;
    }
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if !grow(g, rest & g.neighbors(v), need - 1, chosen | bit(v), f) {
            return false;
        }
    }
    true
}

/// Mask of the vertices `0..n`.
pub fn all_vertices(n: usize) -> u64 {
    low_bits(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn allowed_respects_layers_and_closing() {
        let frame = Arc::new(Frame::new(vec![2; 4], vec![0, 0, 1, 1], &[(0, 1)]).unwrap());
        let mut p = PartialGraph::new(Graph::empty(4).unwrap(), frame).unwrap();
        assert_eq!(p.allowed(0), 0b1100);
        p.close(2);
        assert_eq!(p.allowed(0), 0b1000);
        assert_eq!(p.allowed(2), 0);
        assert!(p.is_decided(0, 1));
        assert!(!p.is_decided(0, 3));
    }

    #[test]
    fn counts_cliques() {
        let k5 = Graph::complete(5).unwrap();
        let mut count = 0;
        for_each_clique(&k5, 3, &mut |_| {
            count += 1;
            true
        });
        assert_eq!(count, 10);
        assert!(clique_through(&k5, 2, 5));
        assert!(!clique_through(&k5, 2, 6));
    }

    #[test]
    fn lambda_lower_bound_prunes_closed_pairs() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let mut p = PartialGraph::new(g, Arc::new(Frame::uniform(3, 2))).unwrap();
        let rules = [Rule::Lambda { lo: 1, hi: 1 }];
        assert!(p.is_viable(&rules, None));
        p.close(2);
        assert!(!p.is_viable(&rules, None));
    }
}
