//! Reference checks for the feasibility solver: direct evaluation of every
//! row and exhaustive enumeration of labelled graphs.

use neumaier_core::{ComplementParameters, Graph};
use neumaier_ilp::{
    build_model, solve_with, Branch, BranchSense, IlpModel, SolveOptions, SolveOutcome,
};
use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Every constraint checked directly on a labelled graph.
pub fn satisfies(m: &IlpModel, g: &Graph) -> bool {
    let n = m.v;
    for u in 0..n {
        if g.degree(u) != m.k {
            return false;
        }
        let in_coclique = (0..m.s).filter(|&w| w != u && g.has_edge(u, w)).count();
        if u < m.s && in_coclique != 0 || u >= m.s && in_coclique != m.e {
            return false;
        }
        for w in u + 1..n {
            let common = (0..n)
                .filter(|&t| g.has_edge(t, u) && g.has_edge(t, w))
                .count();
            if !g.has_edge(u, w) && common != m.mu {
                return false;
            }
        }
    }
    if m.fixed_edges.iter().any(|&(u, w)| !g.has_edge(u, w)) {
        return false;
    }
    match m.branch {
        None => true,
        Some(b) => {
            let (p, q) = b.pair;
            let common = (0..n)
                .filter(|&t| g.has_edge(t, p) && g.has_edge(t, q))
                .count() as i64;
            let l = m.lambda.to_integer();
            g.has_edge(p, q)
                && match b.sense {
                    BranchSense::MoreThanLambda => common > l,
                    BranchSense::FewerThanLambda => common < l,
                }
        }
    }
}

/// Counts labelled solutions, enumerating graphs with the right degrees.
pub fn brute_force(m: &IlpModel) -> usize {
    let pairs: Vec<(usize, usize)> = (0..m.v)
        .flat_map(|u| (u + 1..m.v).map(move |w| (u, w)))
        .collect();
    let mut g = Graph::empty(m.v).unwrap();
    let mut deg = vec![0usize; m.v];
    let mut remaining = vec![m.v - 1; m.v];
    let mut count = 0;
    fn go(
        i: usize,
        pairs: &[(usize, usize)],
        m: &IlpModel,
        g: &mut Graph,
        deg: &mut [usize],
        remaining: &mut [usize],
        count: &mut usize,
    ) {
        if i == pairs.len() {
            if satisfies(m, g) {
                *count += 1;
            }
            return;
        }
        let (u, w) = pairs[i];
        remaining[u] -= 1;
        remaining[w] -= 1;
        if deg[u] < m.k && deg[w] < m.k && !(w < m.s) {
            g.add_edge(u, w);
            deg[u] += 1;
            deg[w] += 1;
            if deg[u] + remaining[u] >= m.k && deg[w] + remaining[w] >= m.k {
                go(i + 1, pairs, m, g, deg, remaining, count);
            }
            g.remove_edge(u, w);
            deg[u] -= 1;
            deg[w] -= 1;
        }
        if deg[u] + remaining[u] >= m.k && deg[w] + remaining[w] >= m.k {
            go(i + 1, pairs, m, g, deg, remaining, count);
        }
        remaining[u] += 1;
        remaining[w] += 1;
    }
    go(0, &pairs, m, &mut g, &mut deg, &mut remaining, &mut count);
    count
}

/// Small co-edge-regular graphs: disjoint cliques, complete multipartite
/// graphs, the pentagon, the 3x3 rook graph and the prism.
fn catalogue() -> Vec<Graph> {
    let mut out = Vec::new();
    for (m, n) in [
        (2, 2),
        (3, 2),
        (4, 2),
        (2, 3),
        (3, 3),
        (2, 4),
        (5, 2),
        (6, 2),
    ] {
        let cliques: Vec<(usize, usize)> = (0..m * n)
            .flat_map(|u| {
                (u + 1..m * n)
                    .filter(move |&w| u / n == w / n)
                    .map(move |w| (u, w))
            })
            .collect();
        let g = Graph::from_edges(m * n, &cliques).unwrap();
        if m * n <= 9 {
            out.push(g.complement());
        }
        out.push(g);
    }
    out.push(Graph::cycle(5).unwrap());
    out.push(Graph::cycle(6).unwrap().complement());
    let rook: Vec<(usize, usize)> = (0..9)
        .flat_map(|u| {
            (u + 1..9)
                .filter(move |&w| u / 3 == w / 3 || u % 3 == w % 3)
                .map(move |w| (u, w))
        })
        .collect();
    out.push(Graph::from_edges(9, &rook).unwrap());
    out
}

/// An instance with a known solution: a catalogue graph relabelled so that
/// a regular coclique comes first.
fn planted_instance(rng: &mut StdRng) -> Option<IlpModel> {
    let graphs = catalogue();
    let g = &graphs[rng.gen_range(0..graphs.len())];
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let g = g.permuted(&perm);
    let regular: Vec<(u64, usize)> = (1u64..1 << n)
        .filter(|&c| g.is_coclique(c))
        .filter_map(|c| {
            let counts: Vec<u32> = (0..n)
                .filter(|u| c >> u & 1 == 0)
                .map(|u| (g.neighbors(u) & c).count_ones())
                .collect();
            let e = *counts.first()?;
            counts.iter().all(|&x| x == e).then_some((c, e as usize))
        })
        .collect();
    let &(c, e) = regular.get(rng.gen_range(0..regular.len().max(1)))?;
    let order: Vec<usize> = (0..n)
        .filter(|u| c >> u & 1 == 1)
        .chain((0..n).filter(|u| c >> u & 1 == 0))
        .collect();
    let mut relabel = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        relabel[old] = new;
    }
    let g = g.permuted(&relabel);
    let s = c.count_ones() as usize;
    let k = g.degree(0);
    let mu = (0..n)
        .flat_map(|u| (u + 1..n).map(move |w| (u, w)))
        .find(|&(u, w)| !g.has_edge(u, w))
        .map_or(0, |(u, w)| g.common_neighbors(u, w));
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut fixed: Vec<(usize, usize)> = (0..rng.gen_range(0..=3))
        .filter_map(|_| edges.get(rng.gen_range(0..edges.len().max(1))).copied())
        .collect();
    if rng.gen_bool(0.2) {
        fixed.push((rng.gen_range(0..n - 1), n - 1));
    }
    let branch_edge = edges.get(rng.gen_range(0..edges.len().max(1))).copied();
    let branch = branch_edge
        .filter(|_| rng.gen_bool(0.5))
        .map(|pair| Branch {
            pair,
            sense: if rng.gen_bool(0.5) {
                BranchSense::MoreThanLambda
            } else {
                BranchSense::FewerThanLambda
            },
        });
    let lambda = branch.map_or(0, |b| {
        let c = g.common_neighbors(b.pair.0, b.pair.1) as i64;
        match (b.sense, rng.gen_bool(0.7)) {
            (BranchSense::MoreThanLambda, true) => c - 1,
            (BranchSense::FewerThanLambda, true) => c + 1,
            _ => c,
        }
    });
    let cp = ComplementParameters {
        v: n as u32,
        k: k as u32,
        mu: mu as u32,
        e: e as u32,
        s: s as u32,
        lambda: Ratio::from_integer(lambda),
    };
    build_model(&cp, &fixed, branch, branch.is_some()).ok()
}

pub fn random_instance(rng: &mut StdRng) -> IlpModel {
    if rng.gen_bool(0.5) {
        if let Some(m) = planted_instance(rng) {
            return m;
        }
    }
    loop {
        let v = rng.gen_range(4..=12);
        let k_max = match v {
            4..=8 => 4,
            9 => 2,
            _ => 1,
        };
        let k = rng.gen_range(1..=k_max.min(v - 1));
        if v * k % 2 == 1 {
            continue;
        }
        let s = rng.gen_range(1..=v / 2);
        let cp = ComplementParameters {
            v: v as u32,
            k: k as u32,
            mu: rng.gen_range(0..=k) as u32,
            e: rng.gen_range(0..=k.min(s)) as u32,
            s: s as u32,
            lambda: Ratio::from_integer(rng.gen_range(0..k as i64)),
        };
        let mut fixed = Vec::new();
        for _ in 0..rng.gen_range(0..=2) {
            let u = rng.gen_range(0..v);
            let w = rng.gen_range(s.max(1)..v);
            if u != w {
                fixed.push((u, w));
            }
        }
        let branch = rng.gen_bool(0.4).then(|| Branch {
            pair: (rng.gen_range(0..v - 1), v - 1),
            sense: if rng.gen_bool(0.5) {
                BranchSense::MoreThanLambda
            } else {
                BranchSense::FewerThanLambda
            },
        });
        if let Ok(m) = build_model(&cp, &fixed, branch, branch.is_some()) {
            return m;
        }
    }
}

/// Solves `count` random instances under four solver configurations and
/// compares each answer with brute force. Returns the number of feasible
/// instances, or a description of the first disagreement.
pub fn check_agreement(seed: u64, count: usize) -> Result<usize, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut feasible = 0;
    for i in 0..count {
        let m = random_instance(&mut rng);
        let expected = brute_force(&m);
        for (symmetry_breaking, row_reasoning, parity_reasoning) in [
            (true, true, true),
            (false, true, false),
            (true, false, true),
            (false, false, false),
        ] {
            let opts = SolveOptions {
                budget: None,
                symmetry_breaking,
                row_reasoning,
                parity_reasoning,
            };
            match solve_with(&m, &opts).outcome {
                SolveOutcome::Feasible(g) => {
                    if expected == 0 {
                        return Err(format!(
                            "instance {i}: solver found a graph, brute force none: {m:?}"
                        ));
                    }
                    if !satisfies(&m, &g) {
                        return Err(format!("instance {i}: witness violates a row"));
                    }
                }
                SolveOutcome::Infeasible if expected > 0 => {
                    return Err(format!(
                        "instance {i}: solver missed {expected} solutions: {m:?}"
                    ));
                }
                SolveOutcome::Infeasible => {}
                SolveOutcome::Timeout => {
                    return Err(format!("instance {i}: timeout without a budget"))
                }
            }
        }
        feasible += usize::from(expected > 0);
    }
    Ok(feasible)
}
