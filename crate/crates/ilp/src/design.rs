//! Block designs on the regular coclique and the edges they fix.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use neumaier_core::{canonical_form, ComplementParameters, Graph};

use crate::error::IlpError;

/// Shape of the design induced on the coclique by the vertices outside it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DesignShape {
    pub points: usize,
    pub block_size: usize,
    pub lambda: usize,
    pub blocks: usize,
    /// Blocks are pairs and every pair of points is covered by its own
    /// `lambda` blocks, so the design is forced up to relabelling.
    pub partition_fixing: bool,
}

impl fmt::Display for DesignShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "2-({},{},{}) with {} blocks",
            self.points, self.block_size, self.lambda, self.blocks
        )
    }
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn derive_design_shape(cp: &ComplementParameters) -> DesignShape {
    let points = cp.s as usize;
    let blocks = (cp.v - cp.s) as usize;
    let lambda = cp.mu as usize;
    DesignShape {
        points,
        block_size: cp.e as usize,
        lambda,
        blocks,
        partition_fixing: cp.e == 2 && blocks == choose2(points) * lambda,
    }
}

/// A 2-design with repeated blocks allowed. Points are `0..points`; each
/// block is sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    pub points: usize,
    pub block_size: usize,
    pub lambda: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl Design {
    pub fn new(
        points: usize,
        block_size: usize,
        lambda: usize,
        mut blocks: Vec<Vec<usize>>,
    ) -> Result<Design, IlpError> {
        for b in blocks.iter_mut() {
            b.sort_unstable();
            if b.len() != block_size {
                return Err(IlpError::ShapeMismatch(format!(
                    "block {:?} has size {}, expected {}",
                    one_based(b),
                    b.len(),
                    block_size
                )));
            }
            if b.windows(2).any(|w| w[0] == w[1]) || b.iter().any(|&p| p >= points) {
                return Err(IlpError::ShapeMismatch(format!(
                    "block {:?} is not a set of points in 1..={}",
                    one_based(b),
                    points
                )));
            }
        }
        let d = Design {
            points,
            block_size,
            lambda,
            blocks,
        };
        if let Some((a, b, c)) = d.pair_counts().into_iter().find(|&(_, _, c)| c != lambda) {
            return Err(IlpError::ShapeMismatch(format!(
                "points {} and {} lie in {} blocks, expected {}",
                a + 1,
                b + 1,
                c,
                lambda
            )));
        }
        Ok(d)
    }

    /// `(a, b, number of blocks containing both)` for every pair of points.
    pub fn pair_counts(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.points {
            for b in a + 1..self.points {
                let c = self
                    .blocks
                    .iter()
                    .filter(|blk| blk.contains(&a) && blk.contains(&b))
                    .count();
                out.push((a, b, c));
            }
        }
        out
    }

    pub fn shape(&self) -> (usize, usize, usize, usize) {
        (self.points, self.block_size, self.lambda, self.blocks.len())
    }

    /// Reads one block per line as 1-based point numbers; `#` starts a comment.
    pub fn parse(text: &str, shape: &DesignShape) -> Result<Design, IlpError> {
        let mut blocks = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let block = line
                .split_whitespace()
                .map(|t| match t.parse::<usize>() {
                    Ok(p) if p >= 1 => Ok(p - 1),
                    _ => Err(IlpError::Parse(format!("line {}: bad point {t:?}", i + 1))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if block.len() != shape.block_size {
                return Err(IlpError::ShapeMismatch(format!(
                    "line {}: block has size {}, expected {}",
                    i + 1,
                    block.len(),
                    shape.block_size
                )));
            }
            if let Some(p) = block.iter().find(|&&p| p >= shape.points) {
                return Err(IlpError::ShapeMismatch(format!(
                    "line {}: point {} outside 1..={}",
                    i + 1,
                    p + 1,
                    shape.points
                )));
            }
            blocks.push(block);
        }
        if blocks.len() != shape.blocks {
            return Err(IlpError::ShapeMismatch(format!(
                "{} blocks, expected {}",
                blocks.len(),
                shape.blocks
            )));
        }
        Design::new(shape.points, shape.block_size, shape.lambda, blocks)
    }

    pub fn load(path: &Path, shape: &DesignShape) -> Result<Design, IlpError> {
        let text = std::fs::read_to_string(path)?;
        Design::parse(&text, shape).map_err(|e| match e {
            IlpError::Parse(msg) => IlpError::Parse(format!("{}: {msg}", path.display())),
            IlpError::ShapeMismatch(msg) => {
                IlpError::ShapeMismatch(format!("{}: {msg}", path.display()))
            }
            other => other,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "# 2-({},{},{}) design, {} blocks\n",
            self.points,
            self.block_size,
            self.lambda,
            self.blocks.len()
        );
        for b in &self.blocks {
            let line: Vec<String> = b.iter().map(|p| (p + 1).to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Equal for two designs exactly when a point permutation maps one block
    /// multiset onto the other.
    pub fn canonical_key(&self) -> String {
        design_key(self.points, self.block_size, &self.blocks)
    }
}

fn one_based(b: &[usize]) -> Vec<usize> {
    b.iter().map(|p| p + 1).collect()
}

// Points and blocks as the two colour classes of an incidence graph.
fn design_key(points: usize, _block_size: usize, blocks: &[Vec<usize>]) -> String {
    let n = points + blocks.len();
    let mut g = Graph::empty(n).expect("design fits in 64 vertices");
    for (i, b) in blocks.iter().enumerate() {
        for &p in b {
            g.add_edge(p, points + i);
        }
    }
    let coloring: Vec<usize> = (0..n).map(|v| usize::from(v >= points)).collect();
    canonical_form(&g, Some(&coloring)).key()
}

/// Exterior vertex `s + i` joined to the points of block `i`; pairs are
/// 0-based with the smaller vertex first.
pub fn fixed_edges_from_design(
    d: &Design,
    cp: &ComplementParameters,
) -> Result<Vec<(usize, usize)>, IlpError> {
    let shape = derive_design_shape(cp);
    if d.shape() != (shape.points, shape.block_size, shape.lambda, shape.blocks) {
        return Err(IlpError::ShapeMismatch(format!(
            "design is 2-({},{},{}) with {} blocks, parameters need {}",
            d.points,
            d.block_size,
            d.lambda,
            d.blocks.len(),
            shape
        )));
    }
    let s = shape.points;
    let mut edges: Vec<(usize, usize)> = d
        .blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.iter().map(move |&p| (p, s + i)))
        .collect();
    edges.sort_unstable();
    Ok(edges)
}

/// Largest `points + blocks` for which designs can be enumerated.
pub const MAX_DESIGN_VERTICES: usize = 64;

/// One design per isomorphism class with the given shape, repeated blocks
/// allowed, sorted by canonical key.
pub fn enumerate_small_designs(
    points: usize,
    block_size: usize,
    lambda: usize,
    block_count: usize,
) -> Result<Vec<Design>, IlpError> {
    if points + block_count > MAX_DESIGN_VERTICES || block_size < 2 || block_size > points {
        return Err(IlpError::Domain(format!(
            "cannot enumerate 2-({points},{block_size},{lambda}) designs with {block_count} blocks"
        )));
    }
    let per_pair = choose2(block_size);
    if per_pair * block_count != lambda * choose2(points) {
        return Ok(Vec::new());
    }
    let mut state = DesignSearch {
        points,
        block_size,
        block_count,
        deficit: vec![vec![lambda; points]; points],
        blocks: Vec::new(),
        seen: HashSet::new(),
        found: Vec::new(),
    };
    state.run();
    let mut found: Vec<(String, Design)> = state
        .found
        .into_iter()
        .map(|blocks| {
            let d = Design {
                points,
                block_size,
                lambda,
                blocks,
            };
            (d.canonical_key(), d)
        })
        .collect();
    found.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(found.into_iter().map(|(_, d)| d).collect())
}

struct DesignSearch {
    points: usize,
    block_size: usize,
    block_count: usize,
    deficit: Vec<Vec<usize>>,
    blocks: Vec<Vec<usize>>,
    seen: HashSet<String>,
    found: Vec<Vec<Vec<usize>>>,
}

impl DesignSearch {
    fn first_deficient_pair(&self) -> Option<(usize, usize)> {
        (0..self.points)
            .flat_map(|a| (a + 1..self.points).map(move |b| (a, b)))
            .find(|&(a, b)| self.deficit[a][b] > 0)
    }

    fn apply(&mut self, block: &[usize], sign: isize) {
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                let d = &mut self.deficit[a][b];
                *d = (*d as isize - sign) as usize;
            }
        }
    }

    fn fits(&self, block: &[usize]) -> bool {
        block
            .iter()
            .enumerate()
            .all(|(i, &a)| block[i + 1..].iter().all(|&b| self.deficit[a][b] > 0))
    }

    // Covers the first deficient pair completely with one multiset of
    // blocks at a time; partial designs are kept once per isomorphism class.
    fn run(&mut self) {
        let Some((a, b)) = self.first_deficient_pair() else {
            if self.blocks.len() == self.block_count {
                self.found.push(self.blocks.clone());
            }
            return;
        };
        let need = self.deficit[a][b];
        if self.blocks.len() + need > self.block_count {
            return;
        }
        let others: Vec<usize> = (0..self.points).filter(|&p| p != a && p != b).collect();
        let mut candidates = Vec::new();
        subsets(
            &others,
            self.block_size - 2,
            &mut Vec::new(),
            0,
            &mut |rest| {
                let mut blk = vec![a, b];
                blk.extend_from_slice(rest);
                blk.sort_unstable();
                candidates.push(blk);
            },
        );
        self.cover(&candidates, 0, need);
    }

    fn cover(&mut self, candidates: &[Vec<usize>], from: usize, need: usize) {
        if need == 0 {
            let key = design_key(self.points, self.block_size, &self.blocks);
            if self.seen.insert(key) {
                self.run();
            }
            return;
        }
        for i in from..candidates.len() {
            let blk = candidates[i].clone();
            if self.fits(&blk) {
                self.apply(&blk, 1);
                self.blocks.push(blk.clone());
                self.cover(candidates, i, need - 1);
                self.blocks.pop();
                self.apply(&blk, -1);
            }
        }
    }
}

fn subsets(
    items: &[usize],
    k: usize,
    cur: &mut Vec<usize>,
    from: usize,
    f: &mut dyn FnMut(&[usize]),
) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in from..items.len() {
        cur.push(items[i]);
        subsets(items, k, cur, i + 1, f);
        cur.pop();
    }
}
