//! Nonexistence campaigns: every fixed-edge source, every branch the
//! edge-regularity exclusion needs, solved or exported.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use neumaier_core::{
    classify, complement_parameters, encode_graph6, pair_orbits, params::is_admissible,
    ComplementParameters, Graph, ParameterSet,
};

use crate::design::{derive_design_shape, fixed_edges_from_design, Design};
use crate::error::IlpError;
use crate::export::{export_model, ExportFormat};
use crate::fixing::partition_fixing;
use crate::model::{build_model, Branch, BranchSense, IlpModel};
use crate::solver::{solve_with, SolveOptions, SolveOutcome};

#[derive(Clone, Debug)]
pub struct CampaignOptions {
    /// Per-run time limit.
    pub timeout: Duration,
    /// Drop the edge-regularity branch because no strongly regular graph
    /// with the complement parameters exists.
    pub assume_no_srg: bool,
    /// Fix edges inside each coclique-pair group too.
    pub group_adjacency: bool,
    /// Explicit fixed edges, used when no designs are given.
    pub fixed_edges: Option<Vec<(usize, usize)>>,
    /// Write `.lp` and `.mps` files here instead of solving.
    pub export_only: Option<PathBuf>,
    pub workers: usize,
    pub solver: SolveOptions,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions {
            timeout: Duration::from_secs(3600),
            assume_no_srg: false,
            group_adjacency: false,
            fixed_edges: None,
            export_only: None,
            workers: 1,
            solver: SolveOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    Infeasible,
    Feasible(String),
    Timeout,
    Exported,
}

impl RunOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            RunOutcome::Infeasible => "Infeasible",
            RunOutcome::Feasible(_) => "Feasible",
            RunOutcome::Timeout => "Timeout",
            RunOutcome::Exported => "Exported",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CampaignRun {
    pub source: String,
    pub branch: Option<Branch>,
    pub outcome: RunOutcome,
    /// Whether a feasible witness complements to a strictly Neumaier graph
    /// with the campaign parameters.
    pub witness_strict: Option<bool>,
    pub nodes: u64,
    pub wall_time: Duration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Nonexistent,
    FoundGraph,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Nonexistent => "Nonexistent",
            Verdict::FoundGraph => "FoundGraph",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CampaignReport {
    pub params: ParameterSet,
    pub complement: ComplementParameters,
    pub er_branch: bool,
    pub runs: Vec<CampaignRun>,
    pub verdict: Verdict,
}

impl CampaignReport {
    fn verdict_of(runs: &[CampaignRun]) -> Verdict {
        if runs.iter().any(|r| r.witness_strict == Some(true)) {
            Verdict::FoundGraph
        } else if !runs.is_empty() && runs.iter().all(|r| r.outcome == RunOutcome::Infeasible) {
            Verdict::Nonexistent
        } else {
            Verdict::Inconclusive
        }
    }

    /// Header row, one row per run, then `key\tvalue` footer lines ending
    /// with the verdict.
    pub fn to_tsv(&self) -> String {
        let p = &self.params;
        let mut out = String::from("source\tpair\tsense\toutcome\tnodes\twall_s\twitness\n");
        for r in &self.runs {
            let (pair, sense) = match r.branch {
                Some(b) => (
                    format!("{}-{}", b.pair.0 + 1, b.pair.1 + 1),
                    b.sense.as_str(),
                ),
                None => ("-".to_string(), "-"),
            };
            let witness = match &r.outcome {
                RunOutcome::Feasible(g6) => g6.as_str(),
                _ => "-",
            };
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{:.3}\t{}",
                r.source,
                pair,
                sense,
                r.outcome.label(),
                r.nodes,
                r.wall_time.as_secs_f64(),
                witness
            );
        }
        let _ = writeln!(out, "params\t{},{},{},{},{}", p.v, p.k, p.lambda, p.e, p.s);
        let _ = writeln!(out, "complement\t{}", self.complement);
        let _ = writeln!(out, "er_branch\t{}", self.er_branch);
        let _ = writeln!(out, "verdict\t{}", self.verdict.as_str());
        out
    }
}

/// A named set of fixed edges.
#[derive(Clone, Debug)]
pub struct FixedEdgeSource {
    pub label: String,
    pub edges: Vec<(usize, usize)>,
}

/// Fixed-edge sources for `p`: one per design file when any are given,
/// otherwise explicit edges, otherwise the forced coclique partition.
pub fn fixed_edge_sources(
    cp: &ComplementParameters,
    design_files: &[PathBuf],
    opts: &CampaignOptions,
) -> Result<Vec<FixedEdgeSource>, IlpError> {
    let shape = derive_design_shape(cp);
    if !design_files.is_empty() {
        let mut files = design_files.to_vec();
        files.sort();
        return files
            .iter()
            .map(|f| {
                let d = Design::load(f, &shape)?;
                Ok(FixedEdgeSource {
                    label: f.file_stem().map_or_else(
                        || f.display().to_string(),
                        |s| s.to_string_lossy().into_owned(),
                    ),
                    edges: fixed_edges_from_design(&d, cp)?,
                })
            })
            .collect();
    }
    if let Some(edges) = &opts.fixed_edges {
        return Ok(vec![FixedEdgeSource {
            label: "fixed".into(),
            edges: edges.clone(),
        }]);
    }
    if shape.partition_fixing {
        return Ok(vec![FixedEdgeSource {
            label: "partition".into(),
            edges: partition_fixing(cp, opts.group_adjacency)?,
        }]);
    }
    Err(IlpError::MissingDesigns)
}

/// Design files in `dir`, sorted.
pub fn design_files_in(dir: &Path) -> Result<Vec<PathBuf>, IlpError> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    Ok(files)
}

/// Pairs that can still be edges: not inside the coclique, and not at a
/// vertex whose fixed edges already use up its degree or coclique count.
pub fn potential_edges(cp: &ComplementParameters, fixed: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let (v, s) = (cp.v as usize, cp.s as usize);
    let mut degree = vec![0usize; v];
    let mut into_coclique = vec![0usize; v];
    for &(a, b) in fixed {
        degree[a] += 1;
        degree[b] += 1;
        if a < s {
            into_coclique[b] += 1;
        }
    }
    let mut out = Vec::new();
    for u in 0..v {
        for w in u + 1..v {
            if w < s {
                continue;
            }
            let is_fixed = fixed.binary_search(&(u, w)).is_ok();
            let open = degree[u] < cp.k as usize
                && degree[w] < cp.k as usize
                && (u >= s || into_coclique[w] < cp.e as usize);
            if is_fixed || open {
                out.push((u, w));
            }
        }
    }
    out
}

/// Representatives of the orbits of potential edges under the symmetries of
/// the fixed edges that preserve the coclique.
pub fn branch_pairs(cp: &ComplementParameters, fixed: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let v = cp.v as usize;
    let g = Graph::from_edges(v, fixed).expect("fixed edges are in range");
    let coloring: Vec<usize> = (0..v).map(|u| usize::from(u >= cp.s as usize)).collect();
    pair_orbits(&g, &potential_edges(cp, fixed), Some(&coloring))
}

/// Whether the edge-regularity branch is part of the campaign.
pub fn er_branch_active(cp: &ComplementParameters, assume_no_srg: bool) -> bool {
    cp.lambda_is_integral() && !assume_no_srg
}

/// One model of a campaign.
#[derive(Clone, Debug)]
pub struct PlannedRun {
    /// File stem used when exporting.
    pub name: String,
    pub source: String,
    pub branch: Option<Branch>,
    pub model: IlpModel,
}

#[derive(Clone, Debug)]
pub struct CampaignPlan {
    pub complement: ComplementParameters,
    pub er_branch: bool,
    pub runs: Vec<PlannedRun>,
}

fn run_name(source: &FixedEdgeSource, branch: Option<Branch>) -> String {
    match branch {
        Some(b) => format!(
            "{}_{}-{}_{}",
            source.label,
            b.pair.0 + 1,
            b.pair.1 + 1,
            b.sense
        ),
        None => source.label.clone(),
    }
}

/// Every model the campaign for `p` solves: one per fixed-edge source, or
/// two per branch-pair orbit when the edge-regularity branch is active.
pub fn plan_campaign(
    p: &ParameterSet,
    design_files: &[PathBuf],
    opts: &CampaignOptions,
) -> Result<CampaignPlan, IlpError> {
    if !is_admissible(p) {
        return Err(IlpError::Domain(format!("{p} is not admissible")));
    }
    let cp = complement_parameters(p).map_err(|e| IlpError::Domain(e.to_string()))?;
    let sources = fixed_edge_sources(&cp, design_files, opts)?;
    let er = er_branch_active(&cp, opts.assume_no_srg);
    let mut runs = Vec::new();
    for src in &sources {
        let branches: Vec<Option<Branch>> = if er {
            branch_pairs(&cp, &src.edges)
                .into_iter()
                .flat_map(|pair| {
                    [BranchSense::MoreThanLambda, BranchSense::FewerThanLambda]
                        .map(|sense| Some(Branch { pair, sense }))
                })
                .collect()
        } else {
            vec![None]
        };
        for branch in branches {
            runs.push(PlannedRun {
                name: run_name(src, branch),
                source: src.label.clone(),
                branch,
                model: build_model(&cp, &src.edges, branch, er)?,
            });
        }
    }
    Ok(CampaignPlan {
        complement: cp,
        er_branch: er,
        runs,
    })
}

fn witness_is_strict(p: &ParameterSet, g: &Graph) -> bool {
    classify(&g.complement()).is_ok_and(|v| v.is_strictly_neumaier_with(p))
}

fn execute(
    p: &ParameterSet,
    m: &IlpModel,
    name: &str,
    opts: &CampaignOptions,
) -> Result<(RunOutcome, Option<bool>, u64, Duration), IlpError> {
    if let Some(dir) = &opts.export_only {
        for format in [ExportFormat::Lp, ExportFormat::Mps] {
            let path = dir.join(format!("{name}.{}", format.extension()));
            std::fs::write(path, export_model(m, format))?;
        }
        return Ok((RunOutcome::Exported, None, 0, Duration::ZERO));
    }
    let solver = SolveOptions {
        budget: Some(opts.timeout),
        ..opts.solver.clone()
    };
    let report = solve_with(m, &solver);
    Ok(match report.outcome {
        SolveOutcome::Infeasible => (RunOutcome::Infeasible, None, report.nodes, report.wall_time),
        SolveOutcome::Timeout => (RunOutcome::Timeout, None, report.nodes, report.wall_time),
        SolveOutcome::Feasible(g) => (
            RunOutcome::Feasible(encode_graph6(&g)),
            Some(witness_is_strict(p, &g)),
            report.nodes,
            report.wall_time,
        ),
    })
}

pub fn run_campaign(
    p: &ParameterSet,
    design_files: &[PathBuf],
    opts: &CampaignOptions,
) -> Result<CampaignReport, IlpError> {
    let plan = plan_campaign(p, design_files, opts)?;
    if let Some(dir) = &opts.export_only {
        std::fs::create_dir_all(dir)?;
    }
    let planned = &plan.runs;
    let results: Vec<Mutex<Option<Result<_, IlpError>>>> =
        planned.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..opts.workers.clamp(1, planned.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(run) = planned.get(i) else { break };
                let r = execute(p, &run.model, &run.name, opts);
                *results[i].lock().expect("result slot") = Some(r);
            });
        }
    });
    let mut runs = Vec::with_capacity(planned.len());
    for (run, slot) in planned.iter().zip(results) {
        let (outcome, witness_strict, nodes, wall_time) = slot
            .into_inner()
            .expect("result slot")
            .expect("every run executes")?;
        runs.push(CampaignRun {
            source: run.source.clone(),
            branch: run.branch,
            outcome,
            witness_strict,
            nodes,
            wall_time,
        });
    }
    let verdict = CampaignReport::verdict_of(&runs);
    Ok(CampaignReport {
        params: *p,
        complement: plan.complement,
        er_branch: plan.er_branch,
        runs,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_branch_pairs_for_25_vertices() {
        let cp = complement_parameters(&ParameterSet::new(25, 16, 9, 3, 5)).unwrap();
        let fixed = partition_fixing(&cp, true).unwrap();
        assert_eq!(branch_pairs(&cp, &fixed).len(), 4);
    }

    #[test]
    fn two_branch_pairs_without_fixed_edges() {
        let cp = complement_parameters(&ParameterSet::new(25, 12, 5, 2, 5)).unwrap();
        assert_eq!(branch_pairs(&cp, &[]), vec![(0, 5), (5, 6)]);
    }

    #[test]
    fn designs_are_required_without_partition() {
        let p = ParameterSet::new(28, 18, 11, 4, 7);
        let err = run_campaign(&p, &[], &CampaignOptions::default());
        assert!(matches!(err, Err(IlpError::MissingDesigns)));
    }
}
