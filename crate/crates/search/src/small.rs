//! Small exhaustive generators: graphs with a given degree sequence and
//! regular graphs without diamonds.

use std::sync::Arc;
use std::time::Instant;

use neumaier_core::graph::bit;
use neumaier_core::{are_isomorphic, Graph};

use crate::engine::{dedupe_graphs, run_stage, SearchStats, Stage, StageResult};
use crate::error::SearchError;
use crate::partial::{Frame, PartialGraph, Rule};

/// Longest degree sequence accepted by [`enumerate_by_degree_sequence`].
pub const MAX_SEQUENCE_LEN: usize = 10;

fn complete_all(frame: Frame, rules: Vec<Rule>) -> (Vec<Graph>, SearchStats) {
    let start = Instant::now();
    let n = frame.target.len();
    let mut stats = SearchStats::default();
    let root = PartialGraph::new(Graph::empty(n).expect("n is small"), Arc::new(frame))
        .expect("empty graph meets every cap");
    let stage = Stage {
        name: "complete".into(),
        order: (0..n).collect(),
        rules,
    };
    let done = match run_stage(vec![(0, root)], &stage, 1, None, &mut stats) {
        StageResult::Done(ps) => ps,
        StageResult::Interrupted(_) => unreachable!("no deadline was set"),
    };
    let graphs = dedupe_graphs(done.into_iter().map(|p| p.graph).collect(), &mut stats);
    stats.completions_found = graphs.len() as u64;
    stats.wall_time = start.elapsed();
    (graphs, stats)
}

/// One graph per isomorphism class with the given degree sequence.
pub fn enumerate_by_degree_sequence(seq: &[usize]) -> Result<Vec<Graph>, SearchError> {
    let n = seq.len();
    if n == 0 || n > MAX_SEQUENCE_LEN {
        return Err(SearchError::Domain(format!(
            "sequence length {} outside 1..={}",
            n, MAX_SEQUENCE_LEN
        )));
    }
    if seq.iter().sum::<usize>() % 2 != 0 {
        return Err(SearchError::Domain("degree sum is odd".into()));
    }
    if let Some(&d) = seq.iter().find(|&&d| d >= n) {
        return Err(SearchError::Domain(format!(
            "degree {} too large for {} vertices",
            d, n
        )));
    }
    let frame = Frame::new(seq.to_vec(), vec![0; n], &[(0, 0)])?;
    Ok(complete_all(frame, Vec::new()).0)
}

/// All `degree`-regular graphs on `n` vertices with no diamond and no K4,
/// one per isomorphism class.
pub fn enumerate_regular_diamondfree(n: usize, degree: usize) -> Vec<Graph> {
    if n == 0 || degree >= n || !(n * degree).is_multiple_of(2) || n > MAX_SEQUENCE_LEN * 2 {
        return Vec::new();
    }
    // an edge with two common neighbours spans a diamond or a K4
    let rules = vec![Rule::Lambda { lo: 0, hi: 1 }, Rule::NoClique(4)];
    complete_all(Frame::uniform(n, degree), rules).0
}

/// The 4-regular graph on nine vertices `x, a, ..., h` (labels 0..8) that
/// has no partition into triangles.
pub fn gamma1() -> Graph {
    let (x, a, b, c, d, e, f, g, h) = (0, 1, 2, 3, 4, 5, 6, 7, 8);
    Graph::from_edges(
        9,
        &[
            (x, e),
            (x, f),
            (x, g),
            (x, h),
            (a, b),
            (a, e),
            (a, g),
            (a, h),
            (b, c),
            (b, e),
            (b, f),
            (c, f),
            (c, g),
            (c, h),
            (d, e),
            (d, f),
            (d, g),
            (d, h),
        ],
    )
    .expect("fixed edge list")
}

/// A partition of the vertex set into triangles, if one exists.
pub fn triangle_partition(g: &Graph) -> Option<Vec<[usize; 3]>> {
    fn cover(g: &Graph, left: u64, out: &mut Vec<[usize; 3]>) -> bool {
        if left == 0 {
            return true;
        }
        let u = left.trailing_zeros() as usize;
        let rest = left & !bit(u);
        let nu = g.neighbors(u) & rest;
        let mut vs = nu;
        while vs != 0 {
            let v = vs.trailing_zeros() as usize;
            vs &= vs - 1;
            let mut ws = nu & g.neighbors(v) & !low(v + 1);
            while ws != 0 {
                let w = ws.trailing_zeros() as usize;
                ws &= ws - 1;
                out.push([u, v, w]);
                if cover(g, rest & !bit(v) & !bit(w), out) {
                    return true;
                }
                out.pop();
            }
        }
        false
    }
    fn low(n: usize) -> u64 {
        neumaier_core::graph::low_bits(n)
    }
    if !g.n().is_multiple_of(3) {
        return None;
    }
    let mut out = Vec::new();
    cover(g, g.vertex_mask(), &mut out).then_some(out)
}

/// Whether every graph in `graphs` has a triangle partition or is
/// isomorphic to [`gamma1`].
pub fn triangle_partition_or_gamma1(graphs: &[Graph]) -> bool {
    let special = gamma1();
    graphs
        .iter()
        .all(|g| triangle_partition(g).is_some() || are_isomorphic(g, &special))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma1_is_four_regular_without_diamonds() {
        let g = gamma1();
        assert!(g.degrees().iter().all(|&d| d == 4));
        assert!(!g.has_diamond());
        assert!(!g.has_clique_of_size(4));
        assert!(triangle_partition(&g).is_none());
    }

    #[test]
    fn triangle_partition_of_two_triangles() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(triangle_partition(&g), Some(vec![[0, 1, 2], [3, 4, 5]]));
    }

    #[test]
    fn rejects_bad_sequences() {
        assert!(enumerate_by_degree_sequence(&[1, 1, 1]).is_err());
        assert!(enumerate_by_degree_sequence(&[3, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0]).is_err());
        assert!(enumerate_by_degree_sequence(&[3, 1, 1]).is_err());
    }
}
