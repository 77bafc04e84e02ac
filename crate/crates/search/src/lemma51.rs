//! Completion of the partial vertex neighbourhoods forced by two 5-cliques
//! meeting in three vertices, for parameters (25,16,9;3,5).

use std::sync::Arc;
use std::time::Instant;

use neumaier_core::{classify, Graph, NeumaierTag, ParameterSet};

use crate::engine::{dedupe_graphs, run_stage, SearchStats, Stage, StageResult};
use crate::partial::{Frame, PartialGraph, Rule};

pub const LEMMA51_PARAMS: ParameterSet = ParameterSet::new(25, 16, 9, 3, 5);

/// Vertices of the local graph.
pub const LOCAL_N: usize = 16;
/// Local degree of every vertex of the neighbourhood.
pub const LOCAL_DEGREE: usize = 9;

// x_i is vertex i - 1
const BASE_EDGES: [(usize, usize); 29] = [
    (5, 10),
    (10, 6),
    (6, 11),
    (11, 5),
    (5, 6),
    (6, 7),
    (7, 11),
    (11, 12),
    (12, 6),
    (7, 12),
    (10, 11),
    (5, 8),
    (8, 10),
    (10, 9),
    (9, 5),
    (7, 8),
    (8, 12),
    (12, 9),
    (9, 7),
    (1, 6),
    (2, 6),
    (3, 6),
    (4, 6),
    (13, 11),
    (14, 11),
    (15, 11),
    (16, 11),
    (7, 3),
    (7, 4),
];

const BASE_TAIL: [(usize, usize); 6] = [(7, 13), (7, 14), (12, 1), (12, 2), (12, 15), (12, 16)];

/// Neighbours of x5 and x10 outside the base, per seed.
pub const SEED_CHOICES: [(&str, [usize; 4], [usize; 4]); 4] = [
    ("a", [1, 2, 13, 14], [3, 4, 15, 16]),
    ("b", [1, 2, 13, 15], [3, 4, 14, 16]),
    ("c", [1, 3, 13, 15], [2, 4, 14, 16]),
    ("d", [1, 3, 13, 14], [2, 4, 15, 16]),
];

fn local(edges: &[(usize, usize)]) -> Graph {
    let zero: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    Graph::from_edges(LOCAL_N, &zero).expect("labels within 1..=16")
}

/// The required edges around the two cliques, before x7 and x12 are placed.
pub fn lemma51_base() -> Graph {
    local(&BASE_EDGES[..27])
}

/// Base edges with x7 ~ x3, x4, x13, x14 and x12 ~ x1, x2, x15, x16.
pub fn lemma51_core() -> Graph {
    let mut edges = BASE_EDGES.to_vec();
    edges.extend_from_slice(&BASE_TAIL);
    local(&edges)
}

/// The four seed neighbourhoods, labelled "a" to "d".
pub fn lemma51_seeds() -> Vec<(&'static str, Graph)> {
    SEED_CHOICES
        .iter()
        .map(|&(name, five, ten)| {
            let mut g = lemma51_core();
            for y in five {
                g.add_edge(4, y - 1);
            }
            for y in ten {
                g.add_edge(9, y - 1);
            }
            (name, g)
        })
        .collect()
}

/// Rules on the neighbourhood of a vertex: adjacent pairs share two to four
/// neighbours there, no 5-clique, and every 4-clique is 2-regular.
pub fn local_rules() -> Vec<Rule> {
    vec![
        Rule::Lambda { lo: 2, hi: 4 },
        Rule::NoClique(5),
        Rule::RegularCliques { size: 4, e: 2 },
    ]
}

pub fn global_rules() -> Vec<Rule> {
    vec![
        Rule::Lambda { lo: 9, hi: 9 },
        Rule::NoClique(6),
        Rule::RegularCliques { size: 5, e: 3 },
    ]
}

/// Partial neighbourhood graph with every local degree capped at nine.
pub fn local_partial(g: Graph) -> PartialGraph {
    PartialGraph::new(g, Arc::new(Frame::uniform(LOCAL_N, LOCAL_DEGREE)))
        .expect("seed degrees are at most nine")
}

/// Puts `u` at 0, the neighbourhood at 1..=16 and the rest at 17..=24.
pub fn embed_neighborhood(local: &Graph) -> PartialGraph {
    let n = LEMMA51_PARAMS.v as usize;
    let mut g = Graph::empty(n).expect("25 vertices");
    for i in 1..=LOCAL_N {
        g.add_edge(0, i);
    }
    for (a, b) in local.edges() {
        g.add_edge(a + 1, b + 1);
    }
    let layer: Vec<usize> = (0..n)
        .map(|v| match v {
            0 => 0,
            1..=16 => 1,
            _ => 2,
        })
        .collect();
    let frame = Frame::new(vec![16; n], layer, &[(1, 2), (2, 2)]).expect("lengths agree");
    PartialGraph::new(g, Arc::new(frame)).expect("degrees within caps")
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeedReport {
    pub seed: String,
    /// Completed neighbourhoods, up to isomorphism.
    pub neighborhoods: usize,
    /// Graphs after adding the edges between the neighbourhood and the rest.
    pub after_edge_stage: usize,
    /// Completed graphs.
    pub completed: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Lemma51Report {
    pub seeds: Vec<SeedReport>,
    /// Neumaier graphs with the target parameters, one per isomorphism class.
    pub graphs: Vec<Graph>,
    pub stats: SearchStats,
}

fn finish(result: StageResult) -> Vec<PartialGraph> {
    match result {
        StageResult::Done(ps) => ps,
        StageResult::Interrupted(_) => unreachable!("no deadline was set"),
    }
}

/// Runs all four seeds through the three completion stages.
pub fn lemma51_pipeline(workers: usize) -> Lemma51Report {
    let start = Instant::now();
    let mut report = Lemma51Report::default();
    let mut all = Vec::new();
    let local_stage = Stage {
        name: "neighborhood".into(),
        order: (0..LOCAL_N).collect(),
        rules: local_rules(),
    };
    let edge_stage = Stage {
        name: "edges".into(),
        order: (1..=LOCAL_N).collect(),
        rules: global_rules(),
    };
    let outer_stage = Stage {
        name: "second-neighborhood".into(),
        order: (LOCAL_N + 1..LEMMA51_PARAMS.v as usize).collect(),
        rules: global_rules(),
    };
    for (name, seed) in lemma51_seeds() {
        let stats = &mut report.stats;
        let root = local_partial(seed);
        let locals = finish(run_stage(
            vec![(0, root)],
            &local_stage,
            workers,
            None,
            stats,
        ));
        let neighborhoods = dedupe_graphs(locals.into_iter().map(|p| p.graph).collect(), stats);
        let embedded = neighborhoods
            .iter()
            .map(|g| (0, embed_neighborhood(g)))
            .collect();
        let middle = finish(run_stage(embedded, &edge_stage, workers, None, stats));
        let after_edge_stage = middle.len();
        let middle = middle.into_iter().map(|p| (0, p)).collect();
        let done = finish(run_stage(middle, &outer_stage, workers, None, stats));
        let graphs: Vec<Graph> = done
            .into_iter()
            .map(|p| p.graph)
            .filter(is_lemma51_graph)
            .collect();
        report.seeds.push(SeedReport {
            seed: name.to_string(),
            neighborhoods: neighborhoods.len(),
            after_edge_stage,
            completed: graphs.len(),
        });
        all.extend(graphs);
    }
    report.graphs = dedupe_graphs(all, &mut report.stats);
    report.stats.completions_found = report.graphs.len() as u64;
    report.stats.wall_time = start.elapsed();
    report
}

/// Whether `g` is a Neumaier graph with parameters (25,16,9;3,5).
pub fn is_lemma51_graph(g: &Graph) -> bool {
    classify(g).ok().is_some_and(|v| {
        matches!(
            v.tag,
            NeumaierTag::NeumaierStronglyRegular | NeumaierTag::StrictlyNeumaier
        ) && v.parameters() == Some(LEMMA51_PARAMS)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_have_expected_degrees() {
        for (_, g) in lemma51_seeds() {
            for x in [4, 5, 6, 9, 10, 11] {
                assert_eq!(g.degree(x), 9, "x{}", x + 1);
            }
        }
        assert_eq!(lemma51_base().degree(6), 5);
    }

    #[test]
    fn seed_cliques() {
        let g = lemma51_core();
        assert!(g.is_clique((1 << 4) | (1 << 5) | (1 << 9) | (1 << 10)));
        assert!(g.is_clique((1 << 5) | (1 << 6) | (1 << 10) | (1 << 11)));
    }
}
