//! Feasibility programs for the complements of strictly Neumaier graphs,
//! block designs that seed them, and a native solver.

pub mod campaign;
pub mod design;
pub mod error;
pub mod export;
pub mod fixing;
pub mod model;
pub mod rows;
pub mod solver;

pub use campaign::{
    branch_pairs, design_files_in, er_branch_active, plan_campaign, run_campaign, CampaignOptions,
    CampaignPlan, CampaignReport, CampaignRun, PlannedRun, RunOutcome, Verdict,
};
pub use design::{
    derive_design_shape, enumerate_small_designs, fixed_edges_from_design, Design, DesignShape,
};
pub use error::IlpError;
pub use export::{export_model, parse_lp, ExportFormat, ParsedLp};
pub use fixing::{load_fixed_edges, parse_fixed_edges, partition_fixing};
pub use model::{build_model, Branch, BranchSense, Constraint, Family, IlpModel, Sense, Var};
pub use solver::{
    check_solution, solve_feasibility, solve_with, SolveOptions, SolveOutcome, SolveReport,
};
