//! Exhaustive search for strictly Neumaier graphs, seeded from a regular
//! clique and the edges into it.

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use neumaier_core::params::is_admissible;
use neumaier_core::{classify, Graph, ParameterSet};

use crate::checkpoint::Checkpoint;
use crate::engine::{
    dedupe_graphs, run_stage, Frontier, SearchOptions, SearchOutcome, SearchStats, Stage,
    StageResult,
};
use crate::error::SearchError;
use crate::partial::{Frame, PartialGraph, Rule};

/// Largest vertex count the search accepts.
pub const MAX_STRICT_VERTICES: u32 = 40;

const CLIQUE: usize = 0;
const OUTSIDE: usize = 1;

fn layers(p: &ParameterSet) -> Vec<usize> {
    (0..p.v as usize)
        .map(|v| if v < p.s as usize { CLIQUE } else { OUTSIDE })
        .collect()
}

/// Frame for joining every outside vertex to `e` clique vertices.
pub fn skeleton_frame(p: &ParameterSet) -> Frame {
    let target = (0..p.v as usize)
        .map(|v| if v < p.s as usize { p.k } else { p.e } as usize)
        .collect();
    Frame::new(target, layers(p), &[(CLIQUE, OUTSIDE)]).expect("lengths agree")
}

/// Frame for completing the graph on the outside vertices.
pub fn completion_frame(p: &ParameterSet) -> Frame {
    Frame::new(
        vec![p.k as usize; p.v as usize],
        layers(p),
        &[(OUTSIDE, OUTSIDE)],
    )
    .expect("lengths agree")
}

pub fn skeleton_stage(p: &ParameterSet) -> Stage {
    Stage {
        name: "skeleton".into(),
        order: (p.s as usize..p.v as usize).collect(),
        rules: vec![
            Rule::Lambda {
                lo: 0,
                hi: p.lambda as usize,
            },
            Rule::NoClique(p.s as usize + 1),
            Rule::RegularCliques {
                size: p.s as usize,
                e: p.e as usize,
            },
        ],
    }
}

pub fn completion_stage(p: &ParameterSet) -> Stage {
    Stage {
        name: "completion".into(),
        order: (p.s as usize..p.v as usize).collect(),
        rules: vec![
            Rule::Lambda {
                lo: p.lambda as usize,
                hi: p.lambda as usize,
            },
            Rule::NoClique(p.s as usize + 1),
            Rule::RegularCliques {
                size: p.s as usize,
                e: p.e as usize,
            },
        ],
    }
}

/// The clique on the first `s` vertices, with nothing else decided.
pub fn seed_partial(p: &ParameterSet) -> PartialGraph {
    let mut g = Graph::empty(p.v as usize).expect("vertex count checked");
    for a in 0..p.s as usize {
        for b in a + 1..p.s as usize {
            g.add_edge(a, b);
        }
    }
    PartialGraph::new(g, Arc::new(skeleton_frame(p))).expect("clique meets the caps")
}

/// Skeletons up to isomorphism: the clique and the edges into it.
pub fn strict_skeletons(p: &ParameterSet) -> Result<Vec<Graph>, SearchError> {
    validate(p)?;
    let mut stats = SearchStats::default();
    match run_stage(
        vec![(0, seed_partial(p))],
        &skeleton_stage(p),
        1,
        None,
        &mut stats,
    ) {
        StageResult::Done(ps) => Ok(ps.into_iter().map(|p| p.graph).collect()),
        StageResult::Interrupted(_) => unreachable!("no deadline was set"),
    }
}

fn validate(p: &ParameterSet) -> Result<(), SearchError> {
    if !is_admissible(p) {
        return Err(SearchError::Domain(format!("{p} is not admissible")));
    }
    if p.v > MAX_STRICT_VERTICES {
        return Err(SearchError::Domain(format!(
            "{p} has more than {MAX_STRICT_VERTICES} vertices"
        )));
    }
    Ok(())
}

fn completion_partial(frame: &Arc<Frame>, g: Graph, closed: u64) -> PartialGraph {
    let mut partial = PartialGraph::new(g, frame.clone()).expect("skeleton meets the caps");
    partial.closed = closed;
    partial
}

/// All strictly Neumaier graphs with parameters `p`, up to isomorphism.
/// When the budget runs out the frontier is saved to `opts.checkpoint` (if
/// set) and `BudgetExceeded` carries the partial outcome.
pub fn exhaustive_strict_search(
    p: &ParameterSet,
    opts: &SearchOptions,
) -> Result<SearchOutcome, SearchError> {
    validate(p)?;
    drive(p, 0, vec![(0, seed_partial(p))], opts)
}

/// Continues a search from a checkpoint written by an earlier run.
pub fn resume_strict_search(
    path: &Path,
    opts: &SearchOptions,
) -> Result<SearchOutcome, SearchError> {
    let cp = Checkpoint::load(path)?;
    let p = cp.params;
    validate(&p)?;
    let frame = Arc::new(match cp.stage {
        0 => skeleton_frame(&p),
        1 => completion_frame(&p),
        s => return Err(SearchError::Checkpoint(format!("unknown stage {s}"))),
    });
    let mut frontier = Vec::with_capacity(cp.items.len());
    for item in cp.items {
        let mut partial = PartialGraph::new(item.graph, frame.clone())
            .map_err(|e| SearchError::Checkpoint(e.to_string()))?;
        partial.closed = item.closed;
        frontier.push((item.level, partial));
    }
    drive(&p, cp.stage, frontier, opts)
}

fn drive(
    p: &ParameterSet,
    mut stage: usize,
    mut frontier: Frontier,
    opts: &SearchOptions,
) -> Result<SearchOutcome, SearchError> {
    let start = Instant::now();
    let deadline = opts.deadline(start);
    let mut stats = SearchStats::default();
    let clique_mask = neumaier_core::graph::low_bits(p.s as usize);
    loop {
        let spec = if stage == 0 {
            skeleton_stage(p)
        } else {
            completion_stage(p)
        };
        match run_stage(frontier, &spec, opts.workers, deadline, &mut stats) {
            StageResult::Interrupted(rest) => {
                stats.wall_time = start.elapsed();
                let mut outcome = SearchOutcome {
                    graphs: Vec::new(),
                    stats,
                    checkpoint: None,
                };
                if let Some(path) = &opts.checkpoint {
                    Checkpoint::from_frontier(*p, stage, &rest).save(path)?;
                    outcome.checkpoint = Some(path.clone());
                }
                return Err(SearchError::BudgetExceeded(Box::new(outcome)));
            }
            StageResult::Done(done) if stage == 0 => {
                let frame = Arc::new(completion_frame(p));
                frontier = done
                    .into_iter()
                    .map(|s| (0, completion_partial(&frame, s.graph, clique_mask)))
                    .collect();
                stage = 1;
            }
            StageResult::Done(done) => {
                let graphs: Vec<Graph> = done
                    .into_iter()
                    .map(|s| s.graph)
                    .filter(|g| classify(g).is_ok_and(|v| v.is_strictly_neumaier_with(p)))
                    .collect();
                let graphs = dedupe_graphs(graphs, &mut stats);
                stats.completions_found = graphs.len() as u64;
                stats.wall_time = start.elapsed();
                return Ok(SearchOutcome {
                    graphs,
                    stats,
                    checkpoint: None,
                });
            }
        }
    }
}
