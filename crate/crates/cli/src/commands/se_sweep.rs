use risage::linkperf::{max_target_se, ThresholdOptions};
use serde_json::json;

use super::ThresholdMode;
use crate::grid::Grid;
use crate::manifest::{emit, fmt, CsvTable, RunManifest};
use crate::{CliError, CliResult, RunContext};

#[derive(Debug, Clone)]
pub struct SeSweepArgs {
    pub speeds: Grid,
    /// RIS sizes; the scenario value if empty.
    pub elements: Vec<u32>,
    /// BS antenna counts; the scenario value if empty.
    pub antennas: Vec<u32>,
    pub level: f64,
    pub threshold_mode: ThresholdMode,
}

pub fn run_se_sweep(ctx: &RunContext, args: &SeSweepArgs) -> CliResult<RunManifest> {
    if let Some(v) = args.speeds.0.iter().find(|v| **v < 0.0) {
        return Err(CliError::Usage(format!("speed {v} is negative")));
    }
    if !(args.level > 0.0 && args.level < 1.0) {
        return Err(CliError::Usage(format!("outage level {} is outside (0,1)", args.level)));
    }
    if ctx.scenario.config.aging.correlation.is_some() {
        eprintln!("warning: the scenario pins aging.correlation, so speed has no effect");
    }
    let ns = if args.elements.is_empty() { vec![ctx.scenario.ris_elements()] } else { args.elements.clone() };
    let ms = if args.antennas.is_empty() { vec![ctx.scenario.antennas()] } else { args.antennas.clone() };
    let opts = ThresholdOptions {
        a2g_rule: args.threshold_mode.into(),
        ..Default::default()
    };
    let mut t = CsvTable::new(&["v_mps", "N", "M", "se_max", "se_ref_g2a"]);
    let mut clamped = 0usize;
    for &n in &ns {
        for &m in &ms {
            for &v in &args.speeds.0 {
                let s = ctx.scenario.with(|c| {
                    c.ris.elements = n;
                    c.bs.antennas = m;
                    c.aging.uav_speed_mps = v;
                })?;
                let r = max_target_se(&s, args.level, opts)?;
                clamped += usize::from(r.threshold.flags.a2g_los_clamped || r.threshold.flags.a2g_nlos_clamped);
                t.push(vec![fmt(v), n.to_string(), m.to_string(), fmt(r.se_max), fmt(r.se_ref_g2a)]);
            }
        }
    }
    println!("se-sweep: {} rows", t.rows.len());
    emit(
        ctx,
        "se_sweep",
        &t,
        json!({ "level": args.level, "rows_with_clamped_a2g_threshold": clamped }),
    )
}
