//! Latin square graphs, the block matrices `M` and `M'` on 25 vertices, and
//! triangle switching.

use std::fmt;

use crate::error::ConstructionError;
use crate::graph::Graph;

/// An order-`n` Latin square with colours `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<Vec<usize>>,
}

impl LatinSquare {
    pub fn new(cells: Vec<Vec<usize>>) -> Result<Self, ConstructionError> {
        let n = cells.len();
        if n == 0 || n > 8 {
            return Err(ConstructionError::InvalidSquare(format!(
                "order {n} outside 1..=8"
            )));
        }
        for (i, row) in cells.iter().enumerate() {
            if row.len() != n {
                return Err(ConstructionError::InvalidSquare(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            if let Some(&c) = row.iter().find(|&&c| c == 0 || c > n) {
                return Err(ConstructionError::InvalidSquare(format!(
                    "colour {c} in row {} outside 1..={n}",
                    i + 1
                )));
            }
        }
        for i in 0..n {
            let mut row_seen = vec![false; n + 1];
            let mut col_seen = vec![false; n + 1];
            for j in 0..n {
                if std::mem::replace(&mut row_seen[cells[i][j]], true) {
                    return Err(ConstructionError::InvalidSquare(format!(
                        "colour {} repeated in row {}",
                        cells[i][j],
                        i + 1
                    )));
                }
                if std::mem::replace(&mut col_seen[cells[j][i]], true) {
                    return Err(ConstructionError::InvalidSquare(format!(
                        "colour {} repeated in column {}",
                        cells[j][i],
                        i + 1
                    )));
                }
            }
        }
        Ok(LatinSquare { n, cells })
    }

    /// Parses `n` lines of `n` whitespace-separated colours.
    pub fn parse(text: &str) -> Result<Self, ConstructionError> {
        let cells = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|line| {
                line.split_whitespace()
                    .map(|t| {
                        t.parse::<usize>().map_err(|_| {
                            ConstructionError::InvalidSquare(format!("not a colour: {t:?}"))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        LatinSquare::new(cells)
    }

    /// The cyclic square with colour `(i + j) mod n + 1` in row `i`, column `j`.
    pub fn cyclic(n: usize) -> Result<Self, ConstructionError> {
        LatinSquare::new(
            (0..n)
                .map(|i| (0..n).map(|j| (i + j) % n + 1).collect())
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Colour of the cell in row `i`, column `j` (both 1-based).
    pub fn color(&self, i: usize, j: usize) -> usize {
        self.cells[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.cells
    }
}

impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.cells {
            let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// The order-five square whose graph is switched into the 25-vertex example.
pub fn paper_square_order5() -> LatinSquare {
    LatinSquare::new(vec![
        vec![1, 2, 3, 4, 5],
        vec![2, 1, 4, 5, 3],
        vec![3, 5, 1, 2, 4],
        vec![4, 3, 5, 1, 2],
        vec![5, 4, 2, 3, 1],
    ])
    .expect("fixed square is valid")
}

/// Vertex index of cell `(i, j)` (1-based) in a Latin square graph of order `n`.
pub fn cell_index(n: usize, i: usize, j: usize) -> usize {
    n * (i - 1) + (j - 1)
}

/// Cells are adjacent when they share a row, a column or a colour.
pub fn latin_square_graph(square: &LatinSquare) -> Result<Graph, ConstructionError> {
    let n = square.order();
    if n < 2 {
        return Err(ConstructionError::InvalidSquare(format!(
            "order {n} is too small for a Latin square graph"
        )));
    }
    let mut g = Graph::empty(n * n)?;
    for a in 0..n * n {
        let (ia, ja) = (a / n, a % n);
        for b in a + 1..n * n {
            let (ib, jb) = (b / n, b % n);
            if ia == ib || ja == jb || square.cells[ia][ja] == square.cells[ib][jb] {
                g.add_edge(a, b);
            }
        }
    }
    Ok(g)
}

/// One entry of the block alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    /// All-zero block of any shape (`O`, `0`, `0^t`).
    Zero,
    /// All-one block of any shape (`j`, `j^t`).
    Ones,
    I,
    A,
    At,
    B,
    IPlusA,
    IPlusAt,
    /// `E_i`: row `i` (1-based) all ones.
    E(usize),
    Et(usize),
    /// `J - E_i`.
    EBar(usize),
    EBarT(usize),
}

impl Block {
    fn entry(self, r: usize, c: usize) -> u8 {
        let a = |r: usize, c: usize| (c == (r + 1) % 3) as u8;
        let eye = (r == c) as u8;
        match self {
            Block::Zero => 0,
            Block::Ones => 1,
            Block::I => eye,
            Block::A => a(r, c),
            Block::At => a(c, r),
            Block::B => a(r, c) + a(c, r),
            Block::IPlusA => eye + a(r, c),
            Block::IPlusAt => eye + a(c, r),
            Block::E(i) => (r + 1 == i) as u8,
            Block::Et(i) => (c + 1 == i) as u8,
            Block::EBar(i) => (r + 1 != i) as u8,
            Block::EBarT(i) => (c + 1 != i) as u8,
        }
    }

    fn is_square_only(self) -> bool {
        !matches!(self, Block::Zero | Block::Ones)
    }

    pub fn transpose(self) -> Block {
        match self {
            Block::A => Block::At,
            Block::At => Block::A,
            Block::IPlusA => Block::IPlusAt,
            Block::IPlusAt => Block::IPlusA,
            Block::E(i) => Block::Et(i),
            Block::Et(i) => Block::E(i),
            Block::EBar(i) => Block::EBarT(i),
            Block::EBarT(i) => Block::EBar(i),
            other => other,
        }
    }
}

/// A symmetric block matrix: `widths[r]` is the size of block row/column `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSpec {
    pub widths: Vec<usize>,
    pub blocks: Vec<Vec<Block>>,
}

impl BlockSpec {
    /// The 25-vertex layout: one row of width 1 followed by eight of width 3.
    pub fn paper_layout(blocks: Vec<Vec<Block>>) -> Self {
        let mut widths = vec![1];
        widths.extend([3; 8]);
        BlockSpec { widths, blocks }
    }

    pub fn size(&self) -> usize {
        self.widths.iter().sum()
    }

    /// The expanded 0/1 matrix.
    pub fn matrix(&self) -> Result<Vec<Vec<u8>>, ConstructionError> {
        let k = self.widths.len();
        if self.blocks.len() != k || self.blocks.iter().any(|r| r.len() != k) {
            return Err(ConstructionError::Layout(format!(
                "expected a {k}x{k} arrangement of blocks"
            )));
        }
        let offsets: Vec<usize> = self
            .widths
            .iter()
            .scan(0, |acc, &w| {
                let start = *acc;
                *acc += w;
                Some(start)
            })
            .collect();
        let size = self.size();
        let mut m = vec![vec![0u8; size]; size];
        for (br, row) in self.blocks.iter().enumerate() {
            for (bc, &block) in row.iter().enumerate() {
                let (h, w) = (self.widths[br], self.widths[bc]);
                if block.is_square_only() && (h != 3 || w != 3) {
                    return Err(ConstructionError::Layout(format!(
                        "block {block:?} at ({}, {}) needs a 3x3 slot, found {h}x{w}",
                        br + 1,
                        bc + 1
                    )));
                }
                for r in 0..h {
                    for c in 0..w {
                        m[offsets[br] + r][offsets[bc] + c] = block.entry(r, c);
                    }
                }
            }
        }
        Ok(m)
    }
}

/// Builds the graph of a block matrix, checking symmetry and the zero diagonal.
pub fn assemble_from_blocks(spec: &BlockSpec) -> Result<Graph, ConstructionError> {
    let m = spec.matrix()?;
    let size = m.len();
    for i in 0..size {
        if m[i][i] != 0 {
            return Err(ConstructionError::DiagonalNonzero(i));
        }
        for j in i + 1..size {
            if m[i][j] != m[j][i] {
                return Err(ConstructionError::AsymmetricSpec(i, j));
            }
            if m[i][j] > 1 {
                return Err(ConstructionError::Layout(format!(
                    "entry ({i}, {j}) is {}",
                    m[i][j]
                )));
            }
        }
    }
    Ok(Graph::from_matrix(&m)?)
}

/// Block matrix `M` of the order-five Latin square graph.
pub fn paper_m_spec() -> BlockSpec {
    use Block::*;
    BlockSpec::paper_layout(vec![
        vec![Zero, Ones, Ones, Ones, Ones, Zero, Zero, Zero, Zero],
        vec![Ones, B, E(1), E(2), E(3), EBar(1), EBar(2), EBar(3), Zero],
        vec![Ones, Et(1), B, I, I, IPlusA, A, I, B],
        vec![Ones, Et(2), I, B, I, I, IPlusA, A, IPlusAt],
        vec![Ones, Et(3), I, I, B, A, I, IPlusA, IPlusA],
        vec![Zero, EBarT(1), IPlusAt, I, At, B, A, At, IPlusAt],
        vec![Zero, EBarT(2), At, IPlusAt, I, At, B, A, IPlusA],
        vec![Zero, EBarT(3), I, At, IPlusAt, A, At, B, B],
        vec![Zero, Zero, B, IPlusA, IPlusAt, IPlusA, IPlusAt, B, Zero],
    ])
}

/// `M` with the blocks joining block rows 6, 7 and 8 replaced by `I`.
pub fn paper_m_prime_spec() -> BlockSpec {
    let mut spec = paper_m_spec();
    for (r, c) in [(5, 6), (5, 7), (6, 7)] {
        spec.blocks[r][c] = Block::I;
        spec.blocks[c][r] = Block::I;
    }
    spec
}

/// The strictly Neumaier graph on 25 vertices with parameters `(25,12,5;2,5)`.
pub fn gamma25() -> Graph {
    assemble_from_blocks(&paper_m_prime_spec()).expect("M' is a valid block matrix")
}

/// The order-five Latin square graph in the vertex order of `M`.
pub fn gamma_l_block_order() -> Graph {
    assemble_from_blocks(&paper_m_spec()).expect("M is a valid block matrix")
}

/// Cell `(row, column)` (1-based) of the paper square carried by each vertex of
/// the block matrices `M` and `M'`.
///
/// Blocks are `x11`; `L' - x11`; row 1, column 1 and colour 1 outside `L'`;
/// row 2, column 2 and colour 2 outside `L'`; the remaining three cells.
/// Cells are in (row, column) order within each block except in the row-2
/// and colour-2 blocks, which `M` lists in a rotated order.
pub const M_CELLS: [(usize, usize); 25] = [
    (1, 1),
    (1, 2),
    (2, 1),
    (2, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (3, 1),
    (4, 1),
    (5, 1),
    (3, 3),
    (4, 4),
    (5, 5),
    (2, 5),
    (2, 3),
    (2, 4),
    (3, 2),
    (4, 2),
    (5, 2),
    (5, 3),
    (3, 4),
    (4, 5),
    (3, 5),
    (4, 3),
    (5, 4),
];

/// Maps each vertex of `M`/`M'` to its index in `latin_square_graph(paper_square_order5())`.
pub fn m_vertex_to_cell_index() -> Vec<usize> {
    M_CELLS.iter().map(|&(i, j)| cell_index(5, i, j)).collect()
}

/// Three triangles removed and three added.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TriangleSwitch {
    pub removed: Vec<[usize; 3]>,
    pub added: Vec<[usize; 3]>,
}

impl TriangleSwitch {
    pub fn inverse(&self) -> TriangleSwitch {
        TriangleSwitch {
            removed: self.added.clone(),
            added: self.removed.clone(),
        }
    }

    /// The same switch on relabelled vertices: `v` becomes `map[v]`.
    pub fn relabelled(&self, map: &[usize]) -> TriangleSwitch {
        let f = |ts: &[[usize; 3]]| -> Vec<[usize; 3]> {
            ts.iter()
                .map(|t| {
                    let mut r = [map[t[0]], map[t[1]], map[t[2]]];
                    r.sort_unstable();
                    r
                })
                .collect()
        };
        TriangleSwitch {
            removed: f(&self.removed),
            added: f(&self.added),
        }
    }
}

fn triangle_edges(t: &[usize; 3]) -> [(usize, usize); 3] {
    [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
}

pub fn apply_triangle_switch(g: &Graph, sw: &TriangleSwitch) -> Result<Graph, ConstructionError> {
    let mut h = g.clone();
    for t in &sw.removed {
        for (u, w) in triangle_edges(t) {
            if !h.has_edge(u, w) {
                return Err(ConstructionError::MissingEdge(u, w));
            }
            h.remove_edge(u, w);
        }
    }
    for t in &sw.added {
        for (u, w) in triangle_edges(t) {
            if h.has_edge(u, w) {
                return Err(ConstructionError::EdgeAlreadyPresent(u, w));
            }
            h.add_edge(u, w);
        }
    }
    Ok(h)
}

/// Recovers the triangle switch turning `before` into `after` from their edge
/// difference.
pub fn derive_triangle_switch(
    before: &Graph,
    after: &Graph,
) -> Result<TriangleSwitch, ConstructionError> {
    let diff = before.symmetric_difference(after);
    let removed: Vec<_> = diff
        .iter()
        .copied()
        .filter(|&(u, w)| before.has_edge(u, w))
        .collect();
    let added: Vec<_> = diff
        .iter()
        .copied()
        .filter(|&(u, w)| after.has_edge(u, w))
        .collect();
    Ok(TriangleSwitch {
        removed: split_into_triangles(before.n(), &removed)?,
        added: split_into_triangles(before.n(), &added)?,
    })
}

fn split_into_triangles(
    n: usize,
    edges: &[(usize, usize)],
) -> Result<Vec<[usize; 3]>, ConstructionError> {
    let g = Graph::from_edges(n, edges)?;
    let mut out = Vec::new();
    let mut covered = Graph::empty(n)?;
    for &(u, w) in edges {
        if covered.has_edge(u, w) {
            continue;
        }
        let third = crate::graph::bits(g.neighbors(u) & g.neighbors(w))
            .find(|&x| !covered.has_edge(u, x) && !covered.has_edge(w, x))
            .ok_or_else(|| {
                ConstructionError::Layout(format!(
                    "edge ({u}, {w}) lies in no triangle of the difference"
                ))
            })?;
        let mut t = [u, w, third];
        t.sort_unstable();
        for (a, b) in triangle_edges(&t) {
            covered.add_edge(a, b);
        }
        out.push(t);
    }
    if out.len() * 3 != edges.len() {
        return Err(ConstructionError::Layout(
            "difference is not a union of edge-disjoint triangles".into(),
        ));
    }
    out.sort_unstable();
    Ok(out)
}

/// The switch taking `M` to `M'`, in block-matrix vertex labels.
pub fn paper_switch() -> TriangleSwitch {
    derive_triangle_switch(&gamma_l_block_order(), &gamma25())
        .expect("M and M' differ by a triangle switch")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::regularity_profile;

    #[test]
    fn order_two_square_gives_k4() {
        let g = latin_square_graph(&LatinSquare::cyclic(2).unwrap()).unwrap();
        assert_eq!(g, Graph::complete(4).unwrap());
    }

    #[test]
    fn cyclic_order_three_profile() {
        let g = latin_square_graph(&LatinSquare::cyclic(3).unwrap()).unwrap();
        let p = regularity_profile(&g);
        assert_eq!(p.regular_degree, Some(6));
        assert_eq!(p.edge_regular_lambda, Some(3));
        assert_eq!(p.co_edge_regular_mu, Some(6));
    }

    #[test]
    fn paper_square_cells() {
        let l = paper_square_order5();
        assert_eq!(l.color(1, 1), 1);
        assert_eq!(l.color(2, 2), 1);
        assert_eq!(l.color(3, 5), 4);
    }

    #[test]
    fn rejects_bad_squares() {
        assert!(LatinSquare::new(vec![vec![1, 2], vec![1, 2]]).is_err());
        assert!(LatinSquare::new(vec![vec![1, 3], vec![2, 1]]).is_err());
        assert!(LatinSquare::parse("1 2\n2 x\n").is_err());
        assert_eq!(
            LatinSquare::parse("1 2\n2 1\n").unwrap(),
            LatinSquare::cyclic(2).unwrap()
        );
    }

    #[test]
    fn diagonal_triangles() {
        let spec = BlockSpec {
            widths: vec![3, 3],
            blocks: vec![vec![Block::B, Block::Zero], vec![Block::Zero, Block::B]],
        };
        let g = assemble_from_blocks(&spec).unwrap();
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]
        );
    }

    #[test]
    fn asymmetric_spec_is_rejected() {
        let spec = BlockSpec {
            widths: vec![3, 3],
            blocks: vec![vec![Block::B, Block::A], vec![Block::A, Block::B]],
        };
        assert!(matches!(
            assemble_from_blocks(&spec),
            Err(ConstructionError::AsymmetricSpec(..))
        ));
        let spec = BlockSpec {
            widths: vec![3],
            blocks: vec![vec![Block::I]],
        };
        assert_eq!(
            assemble_from_blocks(&spec),
            Err(ConstructionError::DiagonalNonzero(0))
        );
    }

    #[test]
    fn m_and_m_prime_differ_by_nine_edges_each_way() {
        let sw = paper_switch();
        assert_eq!(sw.removed.len(), 3);
        assert_eq!(sw.added.len(), 3);
        assert_eq!(
            gamma_l_block_order().symmetric_difference(&gamma25()).len(),
            18
        );
    }

    #[test]
    fn m_cells_label_the_latin_square_graph() {
        let ls = latin_square_graph(&paper_square_order5()).unwrap();
        assert_eq!(
            gamma_l_block_order().permuted(&m_vertex_to_cell_index()),
            ls
        );
    }

    #[test]
    fn switch_in_cell_labels() {
        let cells = |ts: &[[usize; 3]]| -> Vec<[(usize, usize); 3]> {
            let mut out: Vec<_> = ts
                .iter()
                .map(|t| {
                    let mut c = t.map(|v| M_CELLS[v]);
                    c.sort_unstable();
                    c
                })
                .collect();
            out.sort_unstable();
            out
        };
        let sw = paper_switch();
        assert_eq!(
            cells(&sw.removed),
            vec![
                [(2, 3), (5, 2), (5, 3)],
                [(2, 4), (3, 2), (3, 4)],
                [(2, 5), (4, 2), (4, 5)],
            ]
        );
        assert_eq!(
            cells(&sw.added),
            vec![
                [(2, 3), (3, 4), (4, 2)],
                [(2, 4), (4, 5), (5, 2)],
                [(2, 5), (3, 2), (5, 3)],
            ]
        );
    }

    #[test]
    fn switch_round_trip() {
        let g = gamma_l_block_order();
        let sw = paper_switch();
        let h = apply_triangle_switch(&g, &sw).unwrap();
        assert_eq!(h, gamma25());
        assert_eq!(apply_triangle_switch(&h, &sw.inverse()).unwrap(), g);
        assert_eq!(
            apply_triangle_switch(&g, &TriangleSwitch::default()).unwrap(),
            g
        );
        assert!(matches!(
            apply_triangle_switch(&h, &sw),
            Err(ConstructionError::MissingEdge(..))
        ));
    }
}
