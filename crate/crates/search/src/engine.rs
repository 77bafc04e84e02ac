//! Vertex-by-vertex completion with orbit pruning and level-wise isomorph
//! rejection.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use neumaier_core::graph::{bit, bits};
use neumaier_core::{automorphism_group, canonical_form, Graph};

use crate::partial::{PartialGraph, Rule};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub completions_found: u64,
    pub isomorph_rejections: u64,
    pub orbit_rejections: u64,
    pub wall_time: Duration,
    /// Set when the time budget ran out before the search finished.
    pub budget_exhausted: bool,
}

impl SearchStats {
    pub fn absorb(&mut self, other: &SearchStats) {
        self.nodes_expanded += other.nodes_expanded;
        self.completions_found += other.completions_found;
        self.isomorph_rejections += other.isomorph_rejections;
        self.orbit_rejections += other.orbit_rejections;
        self.wall_time += other.wall_time;
        self.budget_exhausted |= other.budget_exhausted;
    }

    /// `key\tvalue` lines.
    pub fn to_tsv(&self) -> String {
        format!(
            "nodes_expanded\t{}\ncompletions_found\t{}\nisomorph_rejections\t{}\norbit_rejections\t{}\nwall_time_s\t{:.3}\nbudget_exhausted\t{}\n",
            self.nodes_expanded,
            self.completions_found,
            self.isomorph_rejections,
            self.orbit_rejections,
            self.wall_time.as_secs_f64(),
            self.budget_exhausted
        )
    }
}

/// Result of a search; when `stats.budget_exhausted` is set the graph list
/// is incomplete.
#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub graphs: Vec<Graph>,
    pub stats: SearchStats,
    pub checkpoint: Option<PathBuf>,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub budget: Option<Duration>,
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: None,
            workers: 1,
            checkpoint: None,
        }
    }
}

impl SearchOptions {
    pub fn deadline(&self, start: Instant) -> Option<Instant> {
        self.budget.map(|b| start + b)
    }
}

/// Children of `partial` that give `x` exactly `target_degree` neighbours,
/// one per orbit of neighbour sets under the symmetries of the state fixing
/// `x`. `x` is closed in every child.
pub fn extend_vertex(
    partial: &PartialGraph,
    x: usize,
    target_degree: usize,
    rules: &[Rule],
) -> Vec<PartialGraph> {
    extend_counted(partial, x, target_degree, rules).0
}

fn extend_counted(
    partial: &PartialGraph,
    x: usize,
    target_degree: usize,
    rules: &[Rule],
) -> (Vec<PartialGraph>, u64) {
    let g = &partial.graph;
    let degree = g.degree(x);
    if degree > target_degree {
        return (Vec::new(), 0);
    }
    let deficit = target_degree - degree;
    if deficit == 0 {
        let mut child = partial.clone();
        child.close(x);
        let ok = child.is_viable(rules, None);
        return (if ok { vec![child] } else { Vec::new() }, 0);
    }
    let hi = rules
        .iter()
        .filter_map(|r| match *r {
            Rule::Lambda { hi, .. } => Some(hi),
            _ => None,
        })
        .min()
        .unwrap_or(usize::MAX);
    let nx = g.neighbors(x);
    let candidates: Vec<usize> = bits(partial.allowed(x) & partial.open_vertices())
        .filter(|&y| (g.neighbors(y) & nx).count_ones() as usize <= hi)
        .collect();
    if candidates.len() < deficit {
        return (Vec::new(), 0);
    }
    let mut subsets = Vec::new();
    choose(g, &candidates, deficit, hi, 0, 0, &mut subsets);

    let group = automorphism_group(g, Some(&partial.coloring(Some(x))));
    let generators: Vec<&Vec<usize>> = group
        .generators
        .iter()
        .filter(|p| partial.preserves_state(p))
        .collect();
    let reps = orbit_representatives(&subsets, &generators);
    let rejected = (subsets.len() - reps.len()) as u64;

    let children = reps
        .into_iter()
        .filter_map(|set| {
            let mut child = partial.clone();
            for y in bits(set) {
                child.graph.add_edge(x, y);
            }
            child.close(x);
            child.is_viable(rules, Some(x)).then_some(child)
        })
        .collect();
    (children, rejected)
}

// Subsets of `cands` of size `need` in lexicographic order, skipping sets
// that put two adjacent vertices over the common-neighbour cap.
fn choose(
    g: &Graph,
    cands: &[usize],
    need: usize,
    hi: usize,
    start: usize,
    chosen: u64,
    out: &mut Vec<u64>,
) {
    if need == 0 {
        out.push(chosen);
        return;
    }
    for i in start..=cands.len() - need {
        let y = cands[i];
        let ok = bits(chosen & g.neighbors(y)).all(|z| g.common_neighbors(y, z) < hi);
        if ok {
            choose(g, cands, need - 1, hi, i + 1, chosen | bit(y), out);
        }
    }
}

fn image(perm: &[usize], set: u64) -> u64 {
    bits(set).fold(0, |acc, v| acc | bit(perm[v]))
}

// `subsets` arrive in lexicographic order, so the first member met in each
// orbit is its lexicographically smallest.
fn orbit_representatives(subsets: &[u64], generators: &[&Vec<usize>]) -> Vec<u64> {
    if generators.is_empty() {
        return subsets.to_vec();
    }
    let index: HashMap<u64, usize> = subsets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut parent: Vec<usize> = (0..subsets.len()).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for (i, &s) in subsets.iter().enumerate() {
        for p in generators {
            if let Some(&j) = index.get(&image(p, s)) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    (0..subsets.len())
        .filter(|&i| find(&mut parent, i) == i)
        .map(|i| subsets[i])
        .collect()
}

/// One pass over a list of vertices: each is completed in turn.
#[derive(Clone, Debug)]
pub struct Stage {
    pub name: String,
    pub order: Vec<usize>,
    pub rules: Vec<Rule>,
}

/// Partial graphs tagged with the number of stage vertices already completed.
pub type Frontier = Vec<(usize, PartialGraph)>;

pub enum StageResult {
    Done(Vec<PartialGraph>),
    Interrupted(Frontier),
}

/// Completes every vertex of `stage.order` in turn on each partial graph,
/// keeping one partial graph per isomorphism class at every level.
pub fn run_stage(
    items: Frontier,
    stage: &Stage,
    workers: usize,
    deadline: Option<Instant>,
    stats: &mut SearchStats,
) -> StageResult {
    let depth = stage.order.len();
    let mut levels: BTreeMap<usize, Vec<PartialGraph>> = BTreeMap::new();
    let mut seen: HashMap<usize, HashSet<String>> = HashMap::new();
    for (level, p) in items {
        let key = p.canonical_key();
        if seen.entry(level).or_default().insert(key) {
            levels.entry(level).or_default().push(p);
        } else {
            stats.isomorph_rejections += 1;
        }
    }
    loop {
        let Some((&level, _)) = levels.iter().next() else {
            return StageResult::Done(Vec::new());
        };
        if level >= depth {
            return StageResult::Done(levels.remove(&level).unwrap_or_default());
        }
        let frontier = levels.remove(&level).expect("level present");
        let x = stage.order[level];
        let (expanded, rest) = expand_all(&frontier, x, &stage.rules, workers, deadline, stats);
        let next = seen.entry(level + 1).or_default();
        for children in expanded {
            for (key, child) in children {
                if next.insert(key) {
                    levels.entry(level + 1).or_default().push(child);
                } else {
                    stats.isomorph_rejections += 1;
                }
            }
        }
        if !rest.is_empty() {
            stats.budget_exhausted = true;
            levels.entry(level).or_default().extend(rest);
            let frontier = levels
                .into_iter()
                .flat_map(|(l, ps)| ps.into_iter().map(move |p| (l, p)))
                .collect();
            return StageResult::Interrupted(frontier);
        }
    }
}

type Keyed = Vec<(String, PartialGraph)>;

// Expands parents in parallel; children come back grouped by parent in input
// order. Parents left unexpanded at the deadline are returned separately.
fn expand_all(
    frontier: &[PartialGraph],
    x: usize,
    rules: &[Rule],
    workers: usize,
    deadline: Option<Instant>,
    stats: &mut SearchStats,
) -> (Vec<Keyed>, Vec<PartialGraph>) {
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<(usize, Keyed, u64)>> = Mutex::new(Vec::new());
    let work = || loop {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            break;
        }
        let i = next.fetch_add(1, Ordering::SeqCst);
        if i >= frontier.len() {
            break;
        }
        let p = &frontier[i];
        let target = p.frame.target[x];
        let (children, rejected) = extend_counted(p, x, target, rules);
        let keyed = children
            .into_iter()
            .map(|c| (c.canonical_key(), c))
            .collect();
        results
            .lock()
            .expect("no poisoned lock")
            .push((i, keyed, rejected));
    };
    let workers = workers.max(1);
    if workers == 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(work);
            }
        });
    }
    let mut results = results.into_inner().expect("no poisoned lock");
    results.sort_by_key(|r| r.0);
    let mut done = vec![false; frontier.len()];
    let mut expanded = Vec::with_capacity(results.len());
    for (i, keyed, rejected) in results {
        done[i] = true;
        stats.nodes_expanded += 1;
        stats.orbit_rejections += rejected;
        expanded.push(keyed);
    }
    let rest = frontier
        .iter()
        .zip(&done)
        .filter(|(_, &d)| !d)
        .map(|(p, _)| p.clone())
        .collect();
    (expanded, rest)
}

/// Keeps one graph per isomorphism class and sorts by canonical string.
pub fn dedupe_graphs(graphs: Vec<Graph>, stats: &mut SearchStats) -> Vec<Graph> {
    let mut keyed: Vec<(String, Graph)> = graphs
        .into_iter()
        .map(|g| (canonical_form(&g, None).canonical_string, g))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let before = keyed.len();
    keyed.dedup_by(|a, b| a.0 == b.0);
    stats.isomorph_rejections += (before - keyed.len()) as u64;
    keyed.into_iter().map(|(_, g)| g).collect()
}
