//! Text checkpoints: a stage tag and the frontier as edge lists.
//!
//! ```text
//! neumaier-search checkpoint
//! params 16,9,4,2,4
//! stage 1
//! item 3
//! closed 1 2 3 4 5 6 7
//! edges 1-2 1-3 ...
//! ```
//!
//! Vertices are 1-based. `item` carries the number of stage vertices done.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use neumaier_core::graph::bit;
use neumaier_core::{Graph, ParameterSet};

use crate::engine::Frontier;
use crate::error::SearchError;

const HEADER: &str = "neumaier-search checkpoint";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckpointItem {
    pub level: usize,
    pub closed: u64,
    pub graph: Graph,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub params: ParameterSet,
    pub stage: usize,
    pub items: Vec<CheckpointItem>,
}

impl Checkpoint {
    pub fn from_frontier(params: ParameterSet, stage: usize, frontier: &Frontier) -> Checkpoint {
        Checkpoint {
            params,
            stage,
            items: frontier
                .iter()
                .map(|(level, p)| CheckpointItem {
                    level: *level,
                    closed: p.closed,
                    graph: p.graph.clone(),
                })
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut out = format!(
            "{HEADER}\nparams {},{},{},{},{}\nstage {}\n",
            p.v, p.k, p.lambda, p.e, p.s, self.stage
        );
        for item in &self.items {
            let closed: Vec<String> = (0..item.graph.n())
                .filter(|&v| item.closed & bit(v) != 0)
                .map(|v| (v + 1).to_string())
                .collect();
            let edges: Vec<String> = item
                .graph
                .edges()
                .map(|(u, w)| format!("{}-{}", u + 1, w + 1))
                .collect();
            let _ = writeln!(out, "item {}", item.level);
            let _ = writeln!(out, "closed {}", closed.join(" "));
            let _ = writeln!(out, "edges {}", edges.join(" "));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Checkpoint, SearchError> {
        let bad = |m: String| SearchError::Checkpoint(m);
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        if lines.next() != Some(HEADER) {
            return Err(bad("missing header".into()));
        }
        let params: ParameterSet = field(lines.next(), "params")?
            .parse()
            .map_err(|e| bad(format!("params: {e}")))?;
        let stage = number(field(lines.next(), "stage")?)?;
        let n = params.v as usize;
        let mut items = Vec::new();
        while let Some(line) = lines.next() {
            let level = number(field(Some(line), "item")?)?;
            let mut closed = 0;
            for t in field(lines.next(), "closed")?.split_whitespace() {
                closed |= bit(vertex(t, n)?);
            }
            let mut edges = Vec::new();
            for t in field(lines.next(), "edges")?.split_whitespace() {
                let (a, b) = t.split_once('-').ok_or_else(|| bad(format!("edge {t}")))?;
                edges.push((vertex(a, n)?, vertex(b, n)?));
            }
            let graph = Graph::from_edges(n, &edges).map_err(|e| bad(e.to_string()))?;
            items.push(CheckpointItem {
                level,
                closed,
                graph,
            });
        }
        Ok(Checkpoint {
            params,
            stage,
            items,
        })
    }

    pub fn save(&self, path: &Path) -> Result<(), SearchError> {
        fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Checkpoint, SearchError> {
        Checkpoint::parse(&fs::read_to_string(path)?)
    }
}

fn field<'a>(line: Option<&'a str>, name: &str) -> Result<&'a str, SearchError> {
    let line = line.ok_or_else(|| SearchError::Checkpoint(format!("missing {name} line")))?;
    match line.split_once(' ') {
        Some((head, rest)) if head == name => Ok(rest.trim()),
        None if line == name => Ok(""),
        _ => Err(SearchError::Checkpoint(format!(
            "expected {name}, got {line:?}"
        ))),
    }
}

fn number(t: &str) -> Result<usize, SearchError> {
    t.parse()
        .map_err(|_| SearchError::Checkpoint(format!("not a number: {t:?}")))
}

fn vertex(t: &str, n: usize) -> Result<usize, SearchError> {
    let v = number(t)?;
    if v == 0 || v > n {
        return Err(SearchError::Checkpoint(format!(
            "vertex {v} outside 1..={n}"
        )));
    }
    Ok(v - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let c = Checkpoint {
            params: ParameterSet::new(16, 9, 4, 2, 4),
            stage: 1,
            items: vec![
                CheckpointItem {
                    level: 2,
                    closed: 0b101,
                    graph: Graph::from_edges(16, &[(0, 1), (3, 15)]).unwrap(),
                },
                CheckpointItem {
                    level: 3,
                    closed: 0,
                    graph: Graph::empty(16).unwrap(),
                },
            ],
        };
        assert_eq!(Checkpoint::parse(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn rejects_garbage() {
        assert!(Checkpoint::parse("hello").is_err());
        let text = format!("{HEADER}\nparams 16,9,4,2,4\nstage 0\nitem 0\nclosed 17\nedges\n");
        assert!(Checkpoint::parse(&text).is_err());
    }
}
