//! Canonical labeling, isomorphism and automorphism groups by
//! individualization and refinement.
//!
//! Partitions are ordered lists of vertex masks. Refinement splits cells by
//! neighbour counts into splitter cells until the partition is equitable; the
//! search individualizes vertices of the first smallest non-singleton cell.
//! Leaves are compared by their trace and relabelled adjacency, and equal
//! leaves yield automorphisms that prune the rest of the tree.

use std::cmp::Ordering;
use std::collections::VecDeque;

use num_bigint::BigUint;

use crate::graph::{bit, bits, Graph};
use crate::graph6::encode_graph6;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalCertificate {
    /// `canonical_labeling[v]` is the new label of vertex `v`.
    pub canonical_labeling: Vec<usize>,
    /// graph6 of the relabelled graph.
    pub canonical_string: String,
    /// Sizes of the colour classes in colour order; a single entry when uncoloured.
    pub color_class_sizes: Vec<usize>,
}

impl CanonicalCertificate {
    /// Key that is equal for two coloured graphs exactly when they are isomorphic.
    pub fn key(&self) -> String {
        if self.color_class_sizes.len() <= 1 {
            self.canonical_string.clone()
        } else {
            let sizes: Vec<String> = self
                .color_class_sizes
                .iter()
                .map(|s| s.to_string())
                .collect();
            format!("{}|{}", self.canonical_string, sizes.join(","))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutGroup {
    pub generators: Vec<Vec<usize>>,
    pub order: BigUint,
    /// Orbits, each sorted, listed by smallest member.
    pub vertex_orbits: Vec<Vec<usize>>,
    /// Base of the stabilizer chain used for the order computation.
    pub base: Vec<usize>,
    /// Orbit length of `base[i]` under the pointwise stabilizer of `base[..i]`.
    pub basic_orbit_sizes: Vec<usize>,
}

impl AutGroup {
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order).ok()
    }

    pub fn orbit_of(&self, v: usize) -> &[usize] {
        self.vertex_orbits
            .iter()
            .find(|o| o.contains(&v))
            .map(|o| o.as_slice())
            .expect("every vertex lies in an orbit")
    }
}

/// Canonical form of `g`, optionally with a vertex colouring (`coloring[v]` is
/// the colour of `v`; colour classes are ordered by colour value and only
/// colour-preserving relabellings are allowed).
pub fn canonical_form(g: &Graph, coloring: Option<&[usize]>) -> CanonicalCertificate {
    let run = Search::run(g, coloring);
    let best = run.best.expect("search reaches at least one leaf");
    let canon = g.permuted(&best.position);
    CanonicalCertificate {
        canonical_labeling: best.position,
        canonical_string: encode_graph6(&canon),
        color_class_sizes: run.class_sizes,
    }
}

/// Whether `g` and `h` are isomorphic.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// A bijection `phi` with `u ~ w` in `g` exactly when `phi[u] ~ phi[w]` in `h`.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let cg = canonical_form(g, None);
    let ch = canonical_form(h, None);
    if cg.canonical_string != ch.canonical_string {
        return None;
    }
    let inverse_h = invert(&ch.canonical_labeling);
    let phi: Vec<usize> = cg
        .canonical_labeling
        .iter()
        .map(|&c| inverse_h[c])
        .collect();
    debug_assert!(g.permuted(&phi) == *h);
    Some(phi)
}

/// Automorphism group of `g`, optionally restricted to colour-preserving maps.
pub fn automorphism_group(g: &Graph, coloring: Option<&[usize]>) -> AutGroup {
    let run = Search::run(g, coloring);
    let n = g.n();
    let first = run.first.expect("search reaches at least one leaf");
    let mut order = BigUint::from(1u32);
    let mut basic_orbit_sizes = Vec::with_capacity(first.path.len());
    for d in 0..first.path.len() {
        let fixing: Vec<&Vec<usize>> = run
            .generators
            .iter()
            .filter(|p| first.path[..d].iter().all(|&x| p[x] == x))
            .collect();
        let mut orbits = OrbitPartition::from_generators(n, fixing.iter().copied());
        let size = orbits.orbit_size(first.path[d]);
        basic_orbit_sizes.push(size);
        order *= BigUint::from(size);
    }
    let orbits = OrbitPartition::from_generators(n, run.generators.iter());
    AutGroup {
        vertex_orbits: orbits.classes(),
        generators: run.generators,
        order,
        base: first.path,
        basic_orbit_sizes,
    }
}

/// One representative (the lexicographically smallest member) of each orbit of
/// `candidate_pairs` under the automorphism group, sorted.
pub fn pair_orbits(
    g: &Graph,
    candidate_pairs: &[(usize, usize)],
    coloring: Option<&[usize]>,
) -> Vec<(usize, usize)> {
    let group = automorphism_group(g, coloring);
    orbit_representatives_of_pairs(g.n(), &group.generators, candidate_pairs)
}

/// Pair-orbit representatives under the group generated by `generators`.
pub fn orbit_representatives_of_pairs(
    n: usize,
    generators: &[Vec<usize>],
    candidate_pairs: &[(usize, usize)],
) -> Vec<(usize, usize)> {
    let index = |u: usize, w: usize| {
        let (a, b) = if u < w { (u, w) } else { (w, u) };
        a * n + b
    };
    let mut uf = UnionFind::new(n * n);
    for p in generators {
        for u in 0..n {
            for w in u + 1..n {
                uf.union(index(u, w), index(p[u], p[w]));
            }
        }
    }
    let mut best: std::collections::BTreeMap<usize, (usize, usize)> = Default::default();
    for &(u, w) in candidate_pairs {
        let pair = if u < w { (u, w) } else { (w, u) };
        let root = uf.find(index(u, w));
        let entry = best.entry(root).or_insert(pair);
        if pair < *entry {
            *entry = pair;
        }
    }
    let mut reps: Vec<_> = best.into_values().collect();
    reps.sort();
    reps
}

/// Inverse of a permutation given as an image list.
pub fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Orbits of the group generated by a set of permutations.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    uf: UnionFind,
}

impl OrbitPartition {
    pub fn from_generators<'a, I>(n: usize, generators: I) -> Self
    where
        I: IntoIterator<Item = &'a Vec<usize>>,
    {
        let mut uf = UnionFind::new(n);
        for p in generators {
            for (v, &img) in p.iter().enumerate() {
                uf.union(v, img);
            }
        }
        OrbitPartition { uf }
    }

    pub fn same_orbit(&mut self, a: usize, b: usize) -> bool {
        self.uf.find(a) == self.uf.find(b)
    }

    pub fn orbit_size(&mut self, v: usize) -> usize {
        let r = self.uf.find(v);
        self.uf.size[r]
    }

    /// Orbits as sorted vertex lists, ordered by smallest member.
    pub fn classes(mut self) -> Vec<Vec<usize>> {
        let n = self.uf.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            let r = self.uf.find(v);
            by_root[r].push(v);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
        out.sort();
        out
    }
}

#[derive(Clone, Debug)]
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    // splitmix64 finalizer over the running value
    let mut z = h ^ x
        .wrapping_add(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(h << 6)
        .wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Refines `cells` to the coarsest equitable partition finer than it, starting
/// from the splitters in `queue`. Returns a label-invariant trace.
fn refine(g: &Graph, cells: &mut Vec<u64>, mut queue: VecDeque<u64>) -> u64 {
    let n = g.n();
    let mut trace = cells.len() as u64;
    let mut counts = [0u32; 64];
    while let Some(splitter) = queue.pop_front() {
        if cells.len() == n {
            break;
        }
        let mut j = 0;
        while j < cells.len() {
            let cell = cells[j];
            if cell & (cell - 1) == 0 {
                trace = mix(trace, (j as u64) << 8 | 1);
                j += 1;
                continue;
            }
            let mut lo = u32::MAX;
            let mut hi = 0;
            for v in bits(cell) {
                let c = (g.neighbors(v) & splitter).count_ones();
                counts[v] = c;
                lo = lo.min(c);
                hi = hi.max(c);
            }
            if lo == hi {
                trace = mix(trace, (j as u64) << 16 | (lo as u64) << 8 | 2);
                j += 1;
                continue;
            }
            let mut fragments: Vec<(u32, u64)> = Vec::new();
            for v in bits(cell) {
                match fragments.iter_mut().find(|(c, _)| *c == counts[v]) {
                    Some((_, m)) => *m |= bit(v),
                    None => fragments.push((counts[v], bit(v))),
                }
            }
            fragments.sort_unstable_by_key(|&(c, _)| c);
            let k = fragments.len();
            cells.splice(j..=j, fragments.iter().map(|&(_, m)| m));
            for &(c, m) in &fragments {
                trace = mix(
                    trace,
                    (j as u64) << 24 | (c as u64) << 8 | m.count_ones() as u64,
                );
                queue.push_back(m);
            }
            j += k;
        }
        trace = mix(trace, 0xffff);
    }
    mix(trace, cells.len() as u64)
}

#[derive(Clone, Debug)]
struct Leaf {
    /// `position[v]`: index of the singleton cell holding `v`.
    position: Vec<usize>,
    rows: Vec<u64>,
    trace: Vec<u64>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
    class_sizes: Vec<usize>,
}

impl<'a> Search<'a> {
    fn run(g: &'a Graph, coloring: Option<&[usize]>) -> Self {
        let n = g.n();
        let cells: Vec<u64> = match coloring {
            None => vec![g.vertex_mask()],
            Some(colors) => {
                assert_eq!(
                    colors.len(),
                    n,
                    "colouring must assign a colour to every vertex"
                );
                let mut values: Vec<usize> = colors.to_vec();
                values.sort_unstable();
                values.dedup();
                values
                    .iter()
                    .map(|&c| {
                        (0..n)
                            .filter(|&v| colors[v] == c)
                            .fold(0u64, |m, v| m | bit(v))
                    })
                    .collect()
            }
        };
        let class_sizes = cells.iter().map(|c| c.count_ones() as usize).collect();
        let mut search = Search {
            g,
            first: None,
            best: None,
            generators: Vec::new(),
            class_sizes,
        };
        let mut cells = cells;
        let queue: VecDeque<u64> = cells.iter().copied().collect();
        let t0 = refine(g, &mut cells, queue);
        let mut trace = vec![t0];
        let mut path = Vec::new();
        search.node(&cells, &mut trace, &mut path);
        search
    }

    fn compare_with_best(&self, trace: &[u64]) -> Ordering {
        match &self.best {
            None => Ordering::Greater,
            Some(b) => {
                let len = trace.len().min(b.trace.len());
                trace[..len].cmp(&b.trace[..len])
            }
        }
    }

    fn agrees_with_first(&self, trace: &[u64]) -> bool {
        match &self.first {
            None => true,
            Some(f) => f.trace.len() >= trace.len() && f.trace[..trace.len()] == *trace,
        }
    }

    /// Explores the subtree at `cells`; returns a level to jump back to.
    fn node(
        &mut self,
        cells: &[u64],
        trace: &mut Vec<u64>,
        path: &mut Vec<usize>,
    ) -> Option<usize> {
        let level = path.len();
        if cells.len() == self.g.n() {
            return self.leaf(cells, trace, path);
        }
        let (target, cell) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .map(|(i, &c)| (i, c))
            .expect("non-discrete partition has a non-singleton cell");

        let mut explored: Vec<usize> = Vec::new();
        for v in bits(cell) {
            if !explored.is_empty() {
                let fixing = self
                    .generators
                    .iter()
                    .filter(|p| path.iter().all(|&x| p[x] == x));
                let mut orbits = OrbitPartition::from_generators(self.g.n(), fixing);
                if explored.iter().any(|&u| orbits.same_orbit(u, v)) {
                    continue;
                }
            }
            explored.push(v);

            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(bit(v));
            child.push(cell & !bit(v));
            child.extend_from_slice(&cells[target + 1..]);
            let t = refine(self.g, &mut child, VecDeque::from([bit(v)]));
            trace.push(mix(t, target as u64));
            path.push(v);

            let prune =
                !self.agrees_with_first(trace) && self.compare_with_best(trace) == Ordering::Less;
            let jump = if prune {
                None
            } else {
                self.node(&child, trace, path)
            };

            path.pop();
            trace.pop();
            if let Some(to) = jump {
                if to < level {
                    return Some(to);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[u64], trace: &[u64], path: &[usize]) -> Option<usize> {
        let n = self.g.n();
        let mut position = vec![0usize; n];
        for (i, &c) in cells.iter().enumerate() {
            position[c.trailing_zeros() as usize] = i;
        }
        let mut rows = vec![0u64; n];
        for u in 0..n {
            let mut row = 0;
            for w in bits(self.g.neighbors(u)) {
                row |= bit(position[w]);
            }
            rows[position[u]] = row;
        }
        let leaf = Leaf {
            position,
            rows,
            trace: trace.to_vec(),
            path: path.to_vec(),
        };

        let Some(first) = &self.first else {
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return None;
        };
        if first.trace == leaf.trace && first.rows == leaf.rows {
            let gamma = automorphism_between(&first.position, &leaf.position);
            let back = common_prefix(&first.path, &leaf.path);
            self.record(gamma);
            return Some(back);
        }
        let best = self.best.as_ref().expect("best is set with first");
        match leaf
            .trace
            .cmp(&best.trace)
            .then_with(|| leaf.rows.cmp(&best.rows))
        {
            Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            Ordering::Equal => {
                let gamma = automorphism_between(&best.position, &leaf.position);
                let back = common_prefix(&best.path, &leaf.path);
                self.record(gamma);
                Some(back)
            }
            Ordering::Less => None,
        }
    }

    fn record(&mut self, gamma: Vec<usize>) {
        debug_assert!(self.g.is_automorphism(&gamma));
        if gamma.iter().enumerate().any(|(i, &p)| i != p) && !self.generators.contains(&gamma) {
            self.generators.push(gamma);
        }
    }
}

/// The map sending the vertex at each position of leaf `a` to the vertex at the
/// same position of leaf `b`.
fn automorphism_between(a: &[usize], b: &[usize]) -> Vec<usize> {
    let b_inv = invert(b);
    a.iter().map(|&pos| b_inv[pos]).collect()
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph6::decode_graph6;

    #[test]
    fn pentagon_group() {
        let c5 = Graph::cycle(5).unwrap();
        let aut = automorphism_group(&c5, None);
        assert_eq!(aut.order, BigUint::from(10u32));
        assert_eq!(aut.vertex_orbits, vec![vec![0, 1, 2, 3, 4]]);
        assert!(aut.generators.iter().all(|p| c5.is_automorphism(p)));
    }

    #[test]
    fn pentagon_is_self_complementary() {
        let c5 = Graph::cycle(5).unwrap();
        let phi = find_isomorphism(&c5, &c5.complement()).unwrap();
        assert_eq!(c5.permuted(&phi), c5.complement());
    }

    #[test]
    fn k4_vs_c4() {
        let k4 = Graph::complete(4).unwrap();
        assert!(!are_isomorphic(&k4, &Graph::cycle(4).unwrap()));
        assert_eq!(
            canonical_form(&k4, None),
            canonical_form(&decode_graph6("C~").unwrap(), None)
        );
    }

    #[test]
    fn large_symmetric_groups() {
        let aut = automorphism_group(&Graph::empty(64).unwrap(), None);
        let mut fact = BigUint::from(1u32);
        for i in 1..=64u32 {
            fact *= i;
        }
        assert_eq!(aut.order, fact);
        assert_eq!(
            automorphism_group(&Graph::petersen(), None).order_u64(),
            Some(120)
        );
    }

    #[test]
    fn coloring_restricts_the_group() {
        let c4 = Graph::cycle(4).unwrap();
        let aut = automorphism_group(&c4, Some(&[1, 0, 0, 0]));
        assert_eq!(aut.order_u64(), Some(2));
        assert_eq!(aut.vertex_orbits, vec![vec![0], vec![1, 3], vec![2]]);
    }

    #[test]
    fn path_pairs_form_one_orbit() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(pair_orbits(&p3, &[(1, 2), (0, 1)], None), vec![(0, 1)]);
        let k5 = Graph::complete(5).unwrap();
        let all: Vec<_> = k5.edges().collect();
        assert_eq!(pair_orbits(&k5, &all, None), vec![(0, 1)]);
    }
}
