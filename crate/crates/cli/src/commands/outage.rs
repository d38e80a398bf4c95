use risage::linkperf::{e2e_outage_analytical, max_target_se, ThresholdOptions};
use risage::mcsim::{estimate_outage, sample_a2g_snr, sample_g2a_snr, A2gPath, A2gSampler, G2aSampler, RngStream};
use serde_json::json;

use super::{ThresholdMode, STREAM_A2G, STREAM_G2A};
use crate::grid::Grid;
use crate::manifest::{emit, fmt, CsvTable, RunManifest};
use crate::{CliError, CliResult, RunContext};

#[derive(Debug, Clone)]
pub struct OutageArgs {
    /// Desired outage levels L, each in (0, 1).
    pub levels: Grid,
    /// Common BS and UAV transmit power in dBm.
    pub powers: Grid,
    pub threshold_mode: ThresholdMode,
}

/// OP at the planned threshold γ̂_th for every (P, L) pair.
///
/// Both hops are drawn once at the scenario power and rescaled, so all rows
/// share one set of paired channel draws.
pub fn run_outage(ctx: &RunContext, args: &OutageArgs) -> CliResult<RunManifest> {
    if let Some(l) = args.levels.0.iter().find(|l| !(**l > 0.0 && **l < 1.0)) {
        return Err(CliError::Usage(format!("outage level {l} is outside (0,1)")));
    }
    let s0 = &ctx.scenario;
    let g = sample_g2a_snr(&G2aSampler::from_scenario(s0), &RngStream::new(ctx.seed, STREAM_G2A), ctx.samples, ctx.plan())?;
    let mut a2g = A2gSampler::from_scenario(s0);
    if a2g.phase_bits.is_none() {
        a2g.path = A2gPath::Reduced;
    }
    let a = sample_a2g_snr(&a2g, &RngStream::new(ctx.seed, STREAM_A2G), ctx.samples, ctx.plan())?;
    let p_bs = s0.config.radio.tx_power_bs_dbm;
    let p_uav = s0.config.radio.tx_power_uav_dbm;

    let opts = ThresholdOptions {
        a2g_rule: args.threshold_mode.into(),
        ..Default::default()
    };
    let mut t = CsvTable::new(&["P_dbm", "L", "gamma_hat_th", "op_analytical", "op_mc", "se_max"]);
    let mut flagged = Vec::new();
    for &p in &args.powers.0 {
        let s = s0.with(|c| {
            c.radio.tx_power_bs_dbm = p;
            c.radio.tx_power_uav_dbm = p;
        })?;
        // path gains do not depend on power, so a dB shift rescales both states
        let gs = 10f64.powf((p - p_bs) / 10.0);
        let us = 10f64.powf((p - p_uav) / 10.0);
        let (gp, ap) = (g.scaled(gs, gs), a.scaled(us, us));
        for &l in &args.levels.0 {
            let r = max_target_se(&s, l, opts)?;
            let th = r.threshold.gamma_hat_th;
            let op = e2e_outage_analytical(&s, th)?;
            let mc = estimate_outage(&gp, &ap, th)?;
            if r.threshold.flags.any() {
                flagged.push(json!({ "P_dbm": p, "L": l, "flags": r.threshold.flags }));
            }
            t.push(vec![fmt(p), fmt(l), fmt(th), fmt(op), fmt(mc.probability), fmt(r.se_max)]);
        }
    }
    println!("outage: {} rows, {} paired draws per row", t.rows.len(), ctx.samples);
    emit(
        ctx,
        "outage",
        &t,
        json!({
            "samples": ctx.samples,
            "threshold_mode": format!("{:?}", args.threshold_mode).to_lowercase(),
            "degenerate_thresholds": flagged,
        }),
    )
}
