//! Depth-first feasibility search over the edge variables of an [`IlpModel`].
//!
//! Common-neighbour variables are never stored; their sums are popcounts of
//! the decided neighbourhoods. Each assignment is propagated through the
//! degree rows, the coclique rows, the co-edge windows and the branch window,
//! and partial assignments are cut by lex-leader constraints for generators
//! of the symmetry group of the fixed structure.

use std::time::{Duration, Instant};

use neumaier_core::graph::{bit, bits, low_bits};
use neumaier_core::{automorphism_group, Graph};

use crate::model::{BranchSense, IlpModel};
use crate::rows::propagate_row;

/// Most cardinality targets combined in one row system.
const MAX_ROW_SETS: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Infeasible,
    Feasible(Graph),
    Timeout,
}

impl SolveOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            SolveOutcome::Infeasible => "Infeasible",
            SolveOutcome::Feasible(_) => "Feasible",
            SolveOutcome::Timeout => "Timeout",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    pub nodes: u64,
    pub wall_time: Duration,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub budget: Option<Duration>,
    /// Cut symmetric subtrees with lex-leader constraints.
    pub symmetry_breaking: bool,
    /// Combine the cardinality targets on each row.
    pub row_reasoning: bool,
    /// Check the linear rows for consistency modulo 2.
    pub parity_reasoning: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: Some(Duration::from_secs(3600)),
            symmetry_breaking: true,
            row_reasoning: true,
            parity_reasoning: true,
        }
    }
}

pub fn solve_feasibility(m: &IlpModel, budget: Option<Duration>) -> SolveReport {
    solve_with(
        m,
        &SolveOptions {
            budget,
            ..SolveOptions::default()
        },
    )
}

pub fn solve_with(m: &IlpModel, opts: &SolveOptions) -> SolveReport {
    let start = Instant::now();
    let mut s = Solver::new(m, opts, start);
    let outcome = if !s.initialize() {
        SolveOutcome::Infeasible
    } else {
        match s.dfs(0) {
            Ok(true) => SolveOutcome::Feasible(s.graph()),
            Ok(false) => SolveOutcome::Infeasible,
            Err(OutOfTime) => SolveOutcome::Timeout,
        }
    };
    SolveReport {
        outcome,
        nodes: s.nodes,
        wall_time: start.elapsed(),
    }
}

/// Branching order: pairs touching the coclique first, then the rest, both
/// lexicographic.
pub fn variable_order(v: usize, s: usize) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (0..v)
        .flat_map(|u| (u + 1..v).map(move |w| (u, w)))
        .collect();
    pairs.sort_by_key(|&(u, w)| (u >= s, u, w));
    pairs
}

/// Generators of the symmetries of the model: automorphisms of the fixed
/// edges that fix the coclique and the branch pair setwise.
pub fn model_symmetries(m: &IlpModel) -> Vec<Vec<usize>> {
    let g = Graph::from_edges(m.v, &m.fixed_edges).expect("model pairs are in range");
    let mut coloring: Vec<usize> = (0..m.v).map(|u| usize::from(u >= m.s)).collect();
    if let Some(b) = m.branch {
        coloring[b.pair.0] += 2;
        coloring[b.pair.1] += 2;
    }
    automorphism_group(&g, Some(&coloring)).generators
}

struct OutOfTime;

const UNDECIDED: u8 = 2;

struct Solver<'a> {
    m: &'a IlpModel,
    n: usize,
    mask: u64,
    coclique: u64,
    ones: Vec<u64>,
    zeros: Vec<u64>,
    trail: Vec<(usize, usize)>,
    queue: Vec<(usize, usize)>,
    order: Vec<(usize, usize)>,
    generators: Vec<Vec<usize>>,
    /// Branch pair with the window on its common neighbours.
    branch: Option<(usize, usize, i64, i64)>,
    deadline: Option<Instant>,
    row_reasoning: bool,
    parity_reasoning: bool,
    /// Edge totals inside a neighbourhood and inside a non-neighbourhood.
    inside_target: Option<usize>,
    outside_target: Option<usize>,
    nodes: u64,
}

impl<'a> Solver<'a> {
    fn new(m: &'a IlpModel, opts: &SolveOptions, start: Instant) -> Self {
        let n = m.v;
        let (k, mu) = (m.k as i64, m.mu as i64);
        let half = |x: i64| (x >= 0 && x % 2 == 0).then_some((x / 2) as usize);
        let n64 = n as i64;
        let l = m.lambda.to_integer();
        let branch = m.branch.map(|b| {
            let (lo, hi) = match b.sense {
                BranchSense::MoreThanLambda => (l + 1, i64::MAX),
                BranchSense::FewerThanLambda => (0, l - 1),
            };
            (b.pair.0, b.pair.1, lo, hi)
        });
        let generators = if opts.symmetry_breaking {
            model_symmetries(m)
        } else {
            Vec::new()
        };
        Solver {
            m,
            n,
            mask: low_bits(n),
            coclique: low_bits(m.s),
            ones: vec![0; n],
            zeros: vec![0; n],
            trail: Vec::new(),
            queue: Vec::new(),
            order: variable_order(n, m.s),
            generators,
            branch,
            deadline: opts.budget.map(|b| start + b),
            row_reasoning: opts.row_reasoning,
            parity_reasoning: opts.parity_reasoning,
            inside_target: half(k * k - k - mu * (n64 - 1 - k)),
            outside_target: half((k - mu) * (n64 - 1 - k)),
            nodes: 0,
        }
    }

    fn value(&self, u: usize, w: usize) -> u8 {
        if self.ones[u] & bit(w) != 0 {
            1
        } else if self.zeros[u] & bit(w) != 0 {
            0
        } else {
            UNDECIDED
        }
    }

    fn undecided(&self, u: usize) -> u64 {
        self.mask & !bit(u) & !self.ones[u] & !self.zeros[u]
    }

    fn set(&mut self, u: usize, w: usize, val: u8) -> bool {
        match self.value(u, w) {
            UNDECIDED => {
                if val == 1 {
                    self.ones[u] |= bit(w);
                    self.ones[w] |= bit(u);
                } else {
                    self.zeros[u] |= bit(w);
                    self.zeros[w] |= bit(u);
                }
                self.trail.push((u, w));
                self.queue.push((u, w));
                true
            }
            current => current == val,
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (u, w) = self.trail.pop().expect("trail longer than mark");
            self.ones[u] &= !bit(w);
            self.ones[w] &= !bit(u);
            self.zeros[u] &= !bit(w);
            self.zeros[w] &= !bit(u);
        }
        self.queue.clear();
    }

    fn set_all(&mut self, u: usize, targets: u64, val: u8) -> bool {
        bits(targets).all(|w| self.set(u, w, val))
    }

    /// Degree and coclique rows at `u`.
    fn check_vertex(&mut self, u: usize) -> bool {
        let k = self.m.k;
        let one = self.ones[u].count_ones() as usize;
        let und = self.undecided(u);
        let free = und.count_ones() as usize;
        if one > k || one + free < k {
            return false;
        }
        if free > 0 {
            if one == k {
                return self.set_all(u, und, 0);
            }
            if one + free == k {
                return self.set_all(u, und, 1);
            }
        }
        if self.coclique & bit(u) == 0 {
            let e = self.m.e;
            let one = (self.ones[u] & self.coclique).count_ones() as usize;
            let und = self.undecided(u) & self.coclique;
            let free = und.count_ones() as usize;
            if one > e || one + free < e {
                return false;
            }
            if free > 0 {
                if one == e {
                    return self.set_all(u, und, 0);
                }
                if one + free == e {
                    return self.set_all(u, und, 1);
                }
            }
        }
        true
    }

    /// Window `lo <= |common(a, b)| <= hi`, forcing when a bound is tight.
    fn window(&mut self, a: usize, b: usize, lo: usize, hi: usize) -> bool {
        let outside = self.mask & !bit(a) & !bit(b);
        let both = self.ones[a] & self.ones[b] & outside;
        let possible = !self.zeros[a] & !self.zeros[b] & outside;
        let c = both.count_ones() as usize;
        let p = possible.count_ones() as usize;
        if c > hi || p < lo {
            return false;
        }
        if p == lo && c < lo {
            for t in bits(possible & !both) {
                if !self.set(a, t, 1) || !self.set(b, t, 1) {
                    return false;
                }
            }
        } else if c == hi && p > hi {
            let a_only = self.ones[a] & self.undecided(b) & outside;
            let b_only = self.ones[b] & self.undecided(a) & outside;
            if !self.set_all(b, a_only, 0) || !self.set_all(a, b_only, 0) {
                return false;
            }
        }
        true
    }

    fn check_pair(&mut self, a: usize, b: usize) -> bool {
        let mu = self.m.mu;
        match self.value(a, b) {
            0 => self.window(a, b, mu, mu),
            UNDECIDED => {
                let outside = self.mask & !bit(a) & !bit(b);
                let c = (self.ones[a] & self.ones[b] & outside).count_ones() as usize;
                let p = (!self.zeros[a] & !self.zeros[b] & outside).count_ones() as usize;
                if c > mu || p < mu {
                    self.set(a, b, 1)
                } else {
                    true
                }
            }
            _ => match self.branch {
                Some((p, q, lo, hi)) if (a.min(b), a.max(b)) == (p, q) => {
                    hi >= 0 && self.window(a, b, lo as usize, hi.min(self.n as i64) as usize)
                }
                _ => true,
            },
        }
    }

    fn propagate(&mut self) -> bool {
        self.propagate_queue()
    }

    fn propagate_queue(&mut self) -> bool {
        let mut dirty = 0u64;
        loop {
            while let Some((u, w)) = self.queue.pop() {
                if !self.check_vertex(u) || !self.check_vertex(w) {
                    return false;
                }
                for t in 0..self.n {
                    if t != u && !self.check_pair(u, t) {
                        return false;
                    }
                    if t != w && !self.check_pair(w, t) {
                        return false;
                    }
                }
                dirty |= bit(u) | bit(w);
            }
            if dirty == 0 {
                return self.check_neighbourhood_counts();
            }
            if !self.row_reasoning {
                dirty = 0;
                continue;
            }
            let x = dirty.trailing_zeros() as usize;
            dirty &= dirty - 1;
            if !self.check_row(x) {
                return false;
            }
        }
    }

    /// For every vertex `c` with a complete row, the edges inside `N(c)` and
    /// inside its non-neighbourhood have fixed totals.
    fn check_neighbourhood_counts(&mut self) -> bool {
        loop {
            let before = self.trail.len();
            for c in 0..self.n {
                if self.undecided(c) != 0 {
                    continue;
                }
                let inside = self.ones[c];
                let outside = self.mask & !inside & !bit(c);
                if !self.induced_edge_count(inside, self.inside_target)
                    || !self.induced_edge_count(outside, self.outside_target)
                {
                    return false;
                }
            }
            if self.trail.len() == before {
                return true;
            }
            if !self.propagate_queue() {
                return false;
            }
        }
    }

    /// `target` edges inside `set`, forcing the undecided pairs when tight.
    fn induced_edge_count(&mut self, set: u64, target: Option<usize>) -> bool {
        let Some(target) = target else {
            return false;
        };
        let (mut one, mut free) = (0, 0);
        for x in bits(set) {
            one += (self.ones[x] & set).count_ones() as usize;
            free += (self.undecided(x) & set).count_ones() as usize;
        }
        let (one, free) = (one / 2, free / 2);
        if one > target || one + free < target {
            return false;
        }
        if free > 0 && (one == target || one + free == target) {
            let val = u8::from(one < target);
            for x in bits(set) {
                if !self.set_all(x, self.undecided(x) & set, val) {
                    return false;
                }
            }
        }
        true
    }

    /// Row system at `x`: degree, coclique count and the common-neighbour
    /// targets with decided non-neighbours whose rows are complete.
    fn check_row(&mut self, x: usize) -> bool {
        let und = self.undecided(x);
        if und == 0 {
            return true;
        }
        let m = self.m;
        let mut sets = vec![(self.mask & !bit(x), m.k)];
        if self.coclique & bit(x) == 0 {
            sets.push((self.coclique, m.e));
        }
        for c in bits(self.zeros[x]) {
            if sets.len() >= MAX_ROW_SETS {
                break;
            }
            if self.undecided(c) == 0 {
                sets.push((self.ones[c] & !bit(x), m.mu));
            }
        }
        if sets.len() <= 2 {
            return true;
        }
        match propagate_row(&sets, self.ones[x], und) {
            None => false,
            Some(f) => self.set_all(x, f.ones, 1) && self.set_all(x, f.zeros, 0),
        }
    }

    fn initialize(&mut self) -> bool {
        if self.inside_target.is_none() || self.outside_target.is_none() {
            return false;
        }
        let m = self.m;
        for u in 0..m.s {
            for w in u + 1..m.s {
                if !self.set(u, w, 0) {
                    return false;
                }
            }
        }
        for &(u, w) in &m.fixed_edges {
            if !self.set(u, w, 1) {
                return false;
            }
        }
        if let Some(b) = m.branch {
            if !self.set(b.pair.0, b.pair.1, 1) {
                return false;
            }
        }
        for u in 0..self.n {
            if !self.check_vertex(u) {
                return false;
            }
            for w in u + 1..self.n {
                if !self.check_pair(u, w) {
                    return false;
                }
            }
        }
        self.propagate() && self.lex_ok() && self.parity_ok()
    }

    /// Index of the pair `u < w` among all pairs.
    fn pair_index(&self, u: usize, w: usize) -> usize {
        let (u, w) = (u.min(w), u.max(w));
        u * (2 * self.n - u - 1) / 2 + (w - u - 1)
    }

    /// Every row whose coefficients are known is a linear equation in the
    /// undecided pairs: the degree and coclique rows, the co-edge rows against
    /// complete rows, and the edge totals around complete rows. The system
    /// must be solvable over GF(2).
    fn parity_ok(&self) -> bool {
        if !self.parity_reasoning {
            return true;
        }
        let words = (self.n * (self.n - 1) / 2).div_ceil(64);
        let mut system = Gf2System::new(words);
        let m = self.m;
        let row_equation = |u: usize, mask: u64, target: usize, system: &mut Gf2System| {
            let mut eq = vec![0u64; words];
            for t in bits(self.undecided(u) & mask) {
                let i = self.pair_index(u, t);
                eq[i / 64] |= 1 << (i % 64);
            }
            let rhs = (target + (self.ones[u] & mask).count_ones() as usize) % 2 == 1;
            system.insert(eq, rhs)
        };
        for u in 0..self.n {
            if self.undecided(u) == 0 {
                continue;
            }
            if !row_equation(u, self.mask & !bit(u), m.k, &mut system) {
                return false;
            }
            if self.coclique & bit(u) == 0 && !row_equation(u, self.coclique, m.e, &mut system) {
                return false;
            }
            for c in bits(self.zeros[u]) {
                if self.undecided(c) == 0 && !row_equation(u, self.ones[c], m.mu, &mut system) {
                    return false;
                }
            }
        }
        for c in 0..self.n {
            if self.undecided(c) != 0 {
                continue;
            }
            let inside = self.ones[c];
            let outside = self.mask & !inside & !bit(c);
            for (set, target) in [(inside, self.inside_target), (outside, self.outside_target)] {
                let Some(target) = target else { return false };
                let mut eq = vec![0u64; words];
                let mut ones = 0;
                for x in bits(set) {
                    ones += (self.ones[x] & set).count_ones() as usize;
                    for t in bits(self.undecided(x) & set & !low_bits(x + 1)) {
                        let i = self.pair_index(x, t);
                        eq[i / 64] |= 1 << (i % 64);
                    }
                }
                if !system.insert(eq, (target + ones / 2) % 2 == 1) {
                    return false;
                }
            }
        }
        true
    }

    /// The assignment must not be lexicographically smaller than its image
    /// under any generator, reading pairs in branching order with 1 > 0.
    fn lex_ok(&self) -> bool {
        'gens: for g in &self.generators {
            for &(u, w) in &self.order {
                let a = self.value(u, w);
                let b = self.value(g[u], g[w]);
                if a == UNDECIDED || b == UNDECIDED {
                    continue 'gens;
                }
                if a != b {
                    if a < b {
                        return false;
                    }
                    continue 'gens;
                }
            }
        }
        true
    }

    fn dfs(&mut self, from: usize) -> Result<bool, OutOfTime> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(OutOfTime);
                }
            }
        }
        let Some(i) = (from..self.order.len()).find(|&i| {
            let (u, w) = self.order[i];
            self.value(u, w) == UNDECIDED
        }) else {
            return Ok(self.is_solution());
        };
        let (u, w) = self.order[i];
        for val in [1, 0] {
            let mark = self.trail.len();
            if self.set(u, w, val)
                && self.propagate()
                && self.lex_ok()
                && self.parity_ok()
                && self.dfs(i + 1)?
            {
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }

    fn graph(&self) -> Graph {
        Graph::from_adjacency(self.ones.clone()).expect("solver keeps a symmetric adjacency")
    }

    /// Direct check of every row on a complete assignment.
    fn is_solution(&self) -> bool {
        let g = self.graph();
        check_solution(self.m, &g)
    }
}

/// Linear equations over GF(2) in echelon form, keyed by leading bit.
struct Gf2System {
    words: usize,
    pivots: Vec<Option<(Vec<u64>, bool)>>,
}

impl Gf2System {
    fn new(words: usize) -> Self {
        Gf2System {
            words,
            pivots: vec![None; words * 64],
        }
    }

    /// Adds an equation; false when it contradicts the earlier ones.
    fn insert(&mut self, mut eq: Vec<u64>, mut rhs: bool) -> bool {
        loop {
            let Some(w) = (0..self.words).rev().find(|&w| eq[w] != 0) else {
                return !rhs;
            };
            let lead = w * 64 + 63 - eq[w].leading_zeros() as usize;
            match &self.pivots[lead] {
                Some((row, r)) => {
                    for (a, b) in eq.iter_mut().zip(row).take(w + 1) {
                        *a ^= b;
                    }
                    rhs ^= r;
                }
                None => {
                    self.pivots[lead] = Some((eq, rhs));
                    return true;
                }
            }
        }
    }
}

/// Whether `g` satisfies every row of `m` with `y` read off as common neighbours.
pub fn check_solution(m: &IlpModel, g: &Graph) -> bool {
    if g.n() != m.v {
        return false;
    }
    let coclique: u64 = (0..m.s).map(bit).sum();
    let degrees = (0..m.v).all(|u| g.degree(u) == m.k);
    let cocl = (0..m.s).all(|u| g.neighbors(u) & coclique == 0)
        && (m.s..m.v).all(|u| (g.neighbors(u) & coclique).count_ones() as usize == m.e);
    let coedge = (0..m.v)
        .all(|u| (u + 1..m.v).all(|w| g.has_edge(u, w) || g.common_neighbors(u, w) == m.mu));
    let fixed = m.fixed_edges.iter().all(|&(u, w)| g.has_edge(u, w));
    let branch = m.branch.is_none_or(|b| {
        let (p, q) = b.pair;
        let l = m.lambda.to_integer();
        let c = g.common_neighbors(p, q) as i64;
        g.has_edge(p, q)
            && match b.sense {
                BranchSense::MoreThanLambda => c > l,
                BranchSense::FewerThanLambda => c < l,
            }
    });
    degrees && cocl && coedge && fixed && branch
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_model;
    use neumaier_core::ComplementParameters;
    use num_rational::Ratio;

    fn toy() -> ComplementParameters {
        ComplementParameters {
            v: 4,
            k: 1,
            mu: 0,
            e: 1,
            s: 2,
            lambda: Ratio::from_integer(0),
        }
    }

    #[test]
    fn toy_instance_is_a_perfect_matching() {
        let m = build_model(&toy(), &[], None, false).unwrap();
        let r = solve_feasibility(&m, None);
        let SolveOutcome::Feasible(g) = r.outcome else {
            panic!("expected a witness, got {:?}", r.outcome);
        };
        assert_eq!(g.edge_count(), 2);
        assert!((0..4).all(|u| g.degree(u) == 1));
        assert!(!g.has_edge(0, 1));
    }

    #[test]
    fn order_puts_coclique_pairs_first() {
        let order = variable_order(5, 2);
        assert_eq!(&order[..3], &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(order[7], (2, 3));
    }

    #[test]
    fn zero_budget_times_out_or_finishes() {
        let m = build_model(&toy(), &[], None, false).unwrap();
        let r = solve_feasibility(&m, Some(Duration::ZERO));
        assert_ne!(r.outcome, SolveOutcome::Infeasible);
    }
}
