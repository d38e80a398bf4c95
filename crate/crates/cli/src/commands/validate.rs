use serde_json::json;

use crate::checks::{dists_suite, mc_suite, specfun_suite, Check};
use crate::manifest::{emit, fmt, CsvTable, RunManifest};
use crate::{CliError, CliResult, RunContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Specfun,
    Dists,
    Mc,
    All,
}

#[derive(Debug, Clone)]
pub struct ValidateArgs {
    pub suite: Suite,
    /// Overrides every KS limit in the dists suite.
    pub ks_threshold: Option<f64>,
    /// Random points per special function.
    pub points: usize,
}

/// Runs the selected suites, prints one line per check and fails with
/// [`CliError::Validation`] if any check fails.
pub fn run_validate(ctx: &RunContext, args: &ValidateArgs) -> CliResult<(Vec<Check>, RunManifest)> {
    let mut checks = Vec::new();
    let all = args.suite == Suite::All;
    if all || args.suite == Suite::Specfun {
        checks.extend(specfun_suite(args.points, ctx.seed, 1e-10));
    }
    if all || args.suite == Suite::Dists {
        checks.extend(dists_suite(&ctx.scenario, ctx.samples, ctx.seed, ctx.workers, args.ks_threshold));
    }
    if all || args.suite == Suite::Mc {
        checks.extend(mc_suite(ctx.samples, ctx.seed, ctx.workers));
    }
    for c in &checks {
        println!("{c}");
    }
    let mut t = CsvTable::new(&["check", "statistic", "limit", "passed"]);
    for c in &checks {
        t.push(vec![c.name.replace(',', ";"), fmt(c.statistic), fmt(c.limit), c.passed.to_string()]);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let m = emit(ctx, "validate", &t, json!({ "checks": checks, "failed": failed }))?;
    if failed > 0 {
        return Err(CliError::Validation(failed));
    }
    Ok((checks, m))
}
