//! Fixed-edge sets: the forced coclique partition and fixed-edge files.

use std::path::Path;

use neumaier_core::ComplementParameters;

use crate::design::derive_design_shape;
use crate::error::IlpError;

/// Groups the exterior vertices into one run of `mu'` consecutive vertices
/// per coclique pair `{i, j}` (pairs in lexicographic order) and joins each
/// group to its pair. With `require_group_adjacency` the vertices inside a
/// group are also joined to each other.
pub fn partition_fixing(
    cp: &ComplementParameters,
    require_group_adjacency: bool,
) -> Result<Vec<(usize, usize)>, IlpError> {
    let shape = derive_design_shape(cp);
    if !shape.partition_fixing {
        return Err(IlpError::NotApplicable(format!(
            "blocks of size {} on {} points with {} blocks",
            shape.block_size, shape.points, shape.blocks
        )));
    }
    let s = shape.points;
    let mu = shape.lambda;
    let mut edges = Vec::new();
    let mut next = s;
    for i in 0..s {
        for j in i + 1..s {
            let group: Vec<usize> = (next..next + mu).collect();
            next += mu;
            for &x in &group {
                edges.push((i, x));
                edges.push((j, x));
            }
            if require_group_adjacency {
                for (a, &x) in group.iter().enumerate() {
                    for &y in &group[a + 1..] {
                        edges.push((x, y));
                    }
                }
            }
        }
    }
    edges.sort_unstable();
    Ok(edges)
}

/// Parses `u w` lines (1-based, `#` comments) into sorted 0-based pairs.
pub fn parse_fixed_edges(text: &str) -> Result<Vec<(usize, usize)>, IlpError> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| IlpError::Parse(format!("line {}: {e}", no + 1)))?;
        match nums[..] {
            [u, w] if u >= 1 && w >= 1 => out.push(((u - 1).min(w - 1), (u - 1).max(w - 1))),
            _ => {
                return Err(IlpError::Parse(format!(
                    "line {}: expected two 1-based vertices",
                    no + 1
                )))
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn load_fixed_edges(path: &Path) -> Result<Vec<(usize, usize)>, IlpError> {
    parse_fixed_edges(&std::fs::read_to_string(path)?)
}

pub fn fixed_edges_to_text(edges: &[(usize, usize)]) -> String {
    edges
        .iter()
        .map(|&(u, w)| format!("{} {}\n", u + 1, w + 1))
        .collect()
}
