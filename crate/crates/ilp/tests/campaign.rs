use std::path::PathBuf;

use neumaier_core::{classify, decode_graph6, ParameterSet};
use neumaier_ilp::{
    build_model, design_files_in, export_model, parse_lp, plan_campaign, run_campaign,
    solve_feasibility, CampaignOptions, ExportFormat, IlpError, RunOutcome, SolveOutcome, Verdict,
};

fn designs(shape: &str) -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/designs")
        .join(shape);
    design_files_in(&dir).unwrap()
}

/// Linear rows of the coclique-partition structure with `mu` vertices per
/// group, reduced modulo 2: every exterior vertex has degree `4 mu - 2` among
/// exterior vertices and `mu` neighbours inside the neighbourhood of each
/// coclique vertex it misses. Returns whether the system is solvable.
fn partition_rows_solvable_mod_2(mu: usize) -> bool {
    let pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
        .collect();
    let group: Vec<(usize, usize)> = pairs
        .iter()
        .flat_map(|&p| std::iter::repeat_n(p, mu))
        .collect();
    let n = group.len();
    let var = |x: usize, y: usize| {
        let (x, y) = (x.min(y), x.max(y));
        x * n + y
    };
    let mut rows: Vec<(Vec<bool>, bool)> = Vec::new();
    for x in 0..n {
        let mut deg = vec![false; n * n];
        for y in (0..n).filter(|&y| y != x) {
            deg[var(x, y)] = true;
        }
        rows.push((deg, (4 * mu - 2) % 2 == 1));
        for c in (0..5).filter(|&c| c != group[x].0 && c != group[x].1) {
            let mut row = vec![false; n * n];
            for y in (0..n).filter(|&y| group[y].0 == c || group[y].1 == c) {
                row[var(x, y)] = true;
            }
            rows.push((row, mu % 2 == 1));
        }
    }
    // Gauss-Jordan over GF(2).
    let mut rank = 0;
    for col in 0..n * n {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].0[col]) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.0[col] {
                for (a, b) in row.0.iter_mut().zip(&pivot.0) {
                    *a ^= b;
                }
                row.1 ^= pivot.1;
            }
        }
        rank += 1;
    }
    rows[rank..].iter().all(|(_, rhs)| !rhs)
}

#[test]
fn partition_rows_are_inconsistent_mod_2_exactly_for_odd_mu() {
    assert!(partition_rows_solvable_mod_2(2));
    assert!(!partition_rows_solvable_mod_2(3));
    assert!(!partition_rows_solvable_mod_2(5));
}

#[test]
fn cheap_tier_is_refuted_at_the_root() {
    for p in [
        ParameterSet::new(35, 22, 12, 3, 5),
        ParameterSet::new(55, 34, 18, 3, 5),
    ] {
        let report = run_campaign(&p, &[], &CampaignOptions::default()).unwrap();
        assert!(!report.er_branch);
        assert_eq!(report.runs.len(), 1);
        assert_eq!(report.runs[0].outcome, RunOutcome::Infeasible);
        assert_eq!(report.runs[0].nodes, 0);
        assert_eq!(report.verdict, Verdict::Nonexistent);
    }
}

#[test]
fn twenty_five_vertices_all_branches_infeasible() {
    let p = ParameterSet::new(25, 16, 9, 3, 5);
    let opts = CampaignOptions {
        group_adjacency: true,
        ..CampaignOptions::default()
    };
    let report = run_campaign(&p, &[], &opts).unwrap();
    assert!(report.er_branch);
    assert_eq!(report.runs.len(), 8);
    let mut pairs: Vec<_> = report.runs.iter().map(|r| r.branch.unwrap().pair).collect();
    pairs.dedup();
    assert_eq!(pairs.len(), 4);
    assert!(report
        .runs
        .iter()
        .all(|r| r.outcome == RunOutcome::Infeasible));
    assert_eq!(report.verdict, Verdict::Nonexistent);
    let tsv = report.to_tsv();
    assert_eq!(tsv.lines().last(), Some("verdict\tNonexistent"));
    assert_eq!(
        tsv.lines().filter(|l| l.starts_with("partition\t")).count(),
        8
    );
}

#[test]
fn smallest_parameters_yield_strict_witnesses() {
    let p = ParameterSet::new(16, 9, 4, 2, 4);
    let report = run_campaign(&p, &[], &CampaignOptions::default()).unwrap();
    assert_eq!(report.verdict, Verdict::FoundGraph);
    for run in &report.runs {
        if let RunOutcome::Feasible(g6) = &run.outcome {
            let g = decode_graph6(g6).unwrap().complement();
            let strict = classify(&g).unwrap().is_strictly_neumaier_with(&p);
            assert_eq!(run.witness_strict, Some(strict));
        }
    }
    assert!(report
        .runs
        .iter()
        .any(|r| r.outcome == RunOutcome::Infeasible));
}

#[test]
fn more_fixed_edges_never_rescue_an_infeasible_branch() {
    let p = ParameterSet::new(16, 9, 4, 2, 4);
    let plan = plan_campaign(&p, &[], &CampaignOptions::default()).unwrap();
    let cp = plan.complement;
    for run in &plan.runs {
        let m = &run.model;
        let outcome = solve_feasibility(m, None).outcome;
        match outcome {
            SolveOutcome::Feasible(g) => {
                let all: Vec<_> = g.edges().collect();
                let pinned = build_model(&cp, &all, m.branch, true).unwrap();
                assert!(matches!(
                    solve_feasibility(&pinned, None).outcome,
                    SolveOutcome::Feasible(_)
                ));
            }
            SolveOutcome::Infeasible => {
                for extra in [(4, 5), (5, 6), (6, 15)] {
                    let mut fixed = m.fixed_edges.clone();
                    fixed.push(extra);
                    if let Ok(more) = build_model(&cp, &fixed, m.branch, true) {
                        assert_eq!(
                            solve_feasibility(&more, None).outcome,
                            SolveOutcome::Infeasible
                        );
                    }
                }
            }
            SolveOutcome::Timeout => unreachable!(),
        }
    }
}

#[test]
fn design_campaigns_emit_one_model_per_design() {
    let opts = CampaignOptions {
        assume_no_srg: true,
        ..CampaignOptions::default()
    };
    for (p, shape, count) in [
        (ParameterSet::new(28, 18, 11, 4, 7), "2-7-3-3", 10),
        (ParameterSet::new(33, 24, 17, 6, 9), "2-9-3-2", 36),
    ] {
        let files = designs(shape);
        assert_eq!(files.len(), count);
        let plan = plan_campaign(&p, &files, &opts).unwrap();
        assert!(!plan.er_branch);
        assert_eq!(plan.runs.len(), count);
        for run in &plan.runs {
            let m = &run.model;
            assert_eq!(m.fixed_edges.len(), (m.v - m.s) * m.e);
            let counts = neumaier_ilp::model::family_counts(&m.constraints());
            assert_eq!(counts, m.expected_family_counts());
        }
    }
}

#[test]
fn export_only_writes_parseable_models() {
    let p = ParameterSet::new(28, 18, 11, 4, 7);
    let dir = tempfile::tempdir().unwrap();
    let opts = CampaignOptions {
        assume_no_srg: true,
        export_only: Some(dir.path().to_path_buf()),
        ..CampaignOptions::default()
    };
    let files = designs("2-7-3-3");
    let report = run_campaign(&p, &files, &opts).unwrap();
    assert!(report
        .runs
        .iter()
        .all(|r| r.outcome == RunOutcome::Exported));
    assert_eq!(report.verdict, Verdict::Inconclusive);
    let plan = plan_campaign(&p, &files, &opts).unwrap();
    for run in &plan.runs {
        let lp = std::fs::read_to_string(dir.path().join(format!("{}.lp", run.name))).unwrap();
        assert_eq!(lp, export_model(&run.model, ExportFormat::Lp));
        let parsed = parse_lp(&lp).unwrap();
        assert_eq!(
            parsed.family_counts().unwrap(),
            run.model.expected_family_counts()
        );
        assert!(dir.path().join(format!("{}.mps", run.name)).is_file());
    }
}

#[test]
fn forty_vertex_designs_give_models_of_the_right_shape() {
    let p = ParameterSet::new(40, 30, 22, 7, 10);
    let files = designs("2-10-3-2");
    assert_eq!(files.len(), 960);
    let opts = CampaignOptions {
        assume_no_srg: true,
        ..CampaignOptions::default()
    };
    let plan = plan_campaign(&p, &files, &opts).unwrap();
    assert_eq!(plan.runs.len(), 960);
    let m = &plan.runs[0].model;
    assert_eq!((m.v, m.k, m.mu, m.e, m.s), (40, 9, 2, 3, 10));
    assert_eq!(m.x_count(), 40 * 39 / 2);
    assert!(plan.runs.iter().all(|r| r.model.fixed_edges.len() == 90));
}

#[test]
fn wrong_design_shape_is_rejected() {
    let p = ParameterSet::new(28, 18, 11, 4, 7);
    let err = plan_campaign(&p, &designs("2-9-3-2")[..1], &CampaignOptions::default());
    assert!(matches!(err, Err(IlpError::ShapeMismatch(_))));
}
