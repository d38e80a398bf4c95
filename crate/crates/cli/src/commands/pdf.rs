use risage::dists::{
    a2g_large_n, g2a_cdf_mixture, g2a_cdf_upper, g2a_pdf_asymptotic, g2a_pdf_mixture, A2gLaw, A2gParams, A2gSeries,
    ChiMoments, G2aParams, MixtureWeights, A2G_SERIES_TERMS, A2G_TAIL_TOL,
};
use risage::mcsim::{
    estimate_chi_moments, freedman_diaconis_width, histogram, ks_statistic, sample_a2g_snr, sample_g2a_snr, A2gPath,
    A2gSampler, EmpiricalCdf, G2aSampler, RngStream,
};
use risage::numeric::CdfTable;
use risage::scenario::Scenario;
use serde_json::json;

use super::{STREAM_A2G, STREAM_CHI, STREAM_G2A};
use crate::grid::Grid;
use crate::manifest::{emit, fmt, CsvTable, RunManifest};
use crate::{CliError, CliResult, RunContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PdfHop {
    G2a,
    A2g,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PdfMode {
    /// Exact mixture (G2A) or the product-form series (A2G).
    Exact,
    /// Single noncentral chi-square law (A2G only).
    #[value(name = "large_n", alias = "large-n")]
    LargeN,
    /// High-SNR plateau of the density (G2A only).
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ChiMode {
    /// Jensen working values for the series moments.
    Jensen,
    /// Moments estimated by simulation.
    Mc,
}

#[derive(Debug, Clone)]
pub struct PdfArgs {
    pub hop: PdfHop,
    pub mode: PdfMode,
    /// Evaluation grid; 200 points up to the 99.5% sample quantile if unset.
    pub grid: Option<Grid>,
    pub antennas: Option<u32>,
    pub elements: Option<u32>,
    pub chi: ChiMode,
}

type Density = Box<dyn Fn(f64) -> f64>;

fn state_laws(s: &Scenario, args: &PdfArgs, ctx: &RunContext) -> CliResult<(Density, Density, serde_json::Value)> {
    match (args.hop, args.mode) {
        (PdfHop::G2a, PdfMode::Exact) => {
            let (gl, gn) = (G2aParams::from_scenario(s, true)?, G2aParams::from_scenario(s, false)?);
            let w = MixtureWeights::from_los(s.g2a.p_los)?;
            let pdf = move |x: f64| g2a_pdf_mixture(&gl, &gn, &w, x).unwrap_or(f64::NAN);
            let cdf = move |x: f64| g2a_cdf_mixture(&gl, &gn, &w, x).unwrap_or(f64::NAN);
            Ok((Box::new(pdf), Box::new(cdf), json!({})))
        }
        (PdfHop::G2a, PdfMode::Asymptotic) => {
            let (gl, gn) = (G2aParams::from_scenario(s, true)?, G2aParams::from_scenario(s, false)?);
            let w = MixtureWeights::from_los(s.g2a.p_los)?;
            let level = w.p_los * g2a_pdf_asymptotic(&gl, true) + w.p_nlos * g2a_pdf_asymptotic(&gn, false);
            let cdf = move |x: f64| g2a_cdf_upper(&gl, &gn, &w, x);
            Ok((Box::new(move |_| level), Box::new(cdf), json!({ "plateau": level })))
        }
        (PdfHop::A2g, PdfMode::LargeN) => {
            let w = MixtureWeights::from_los(s.a2g.p_los)?;
            let mut laws = Vec::new();
            let mut warn = false;
            for (p, los) in [(w.p_los, true), (w.p_nlos, false)] {
                if p > 0.0 {
                    let a = A2gParams::from_scenario(s, los)?;
                    warn |= a2g_large_n(&a).small_n_warning;
                    laws.push((p, A2gLaw::large_n(&a)?, a2g_large_n(&a).law));
                }
            }
            if warn {
                eprintln!("warning: N < 16, the large-N law is a rough approximation");
            }
            let pdf_laws: Vec<_> = laws.iter().map(|(p, l, _)| (*p, l.clone())).collect();
            let cdf_laws: Vec<_> = laws.iter().map(|(p, _, l)| (*p, *l)).collect();
            let pdf = move |x: f64| pdf_laws.iter().map(|(p, l)| p * l.pdf(x)).sum();
            let cdf = move |x: f64| cdf_laws.iter().map(|(p, l)| p * l.cdf(x)).sum();
            Ok((Box::new(pdf), Box::new(cdf), json!({ "small_n_warning": warn })))
        }
        (PdfHop::A2g, PdfMode::Exact) => {
            let w = MixtureWeights::from_los(s.a2g.p_los)?;
            let mut laws = Vec::new();
            let mut meta = Vec::new();
            for (p, los) in [(w.p_los, true), (w.p_nlos, false)] {
                if p == 0.0 {
                    continue;
                }
                let a = A2gParams::from_scenario(s, los)?;
                let moments = match args.chi {
                    ChiMode::Jensen => ChiMoments::Jensen,
                    ChiMode::Mc => {
                        let st = RngStream::new(ctx.seed, STREAM_CHI + u64::from(!los));
                        let (mean, variance) = estimate_chi_moments(&a, &st, 200_000, ctx.plan())?;
                        ChiMoments::Given { mean, variance }
                    }
                };
                let series = A2gSeries::new(&a, moments, A2G_SERIES_TERMS, A2G_TAIL_TOL)?;
                if series.truncated() {
                    eprintln!(
                        "warning: {} LOS series truncated at {} terms, tail mass {:.2e}",
                        if los { "LOS" } else { "NLOS" },
                        series.terms(),
                        series.tail_mass()
                    );
                }
                meta.push(json!({
                    "los": los,
                    "terms": series.terms(),
                    "tail_mass": series.tail_mass(),
                    "truncated": series.truncated(),
                }));
                let law = A2gLaw::Series(series);
                let table = law.cdf_table(2000)?;
                laws.push((p, law, table));
            }
            let laws = std::rc::Rc::new(laws);
            let l2 = laws.clone();
            let pdf = move |x: f64| laws.iter().map(|(p, l, _)| p * l.pdf(x)).sum();
            let cdf = move |x: f64| l2.iter().map(|(p, _, t): &(f64, A2gLaw, CdfTable)| p * t.eval(x)).sum();
            Ok((Box::new(pdf), Box::new(cdf), json!({ "series": meta })))
        }
        (hop, mode) => Err(CliError::Usage(format!(
            "mode {mode:?} is not defined for hop {hop:?}; use exact or {}",
            if hop == PdfHop::G2a { "asymptotic" } else { "large_n" }
        ))),
    }
}

pub fn run_pdf(ctx: &RunContext, args: &PdfArgs) -> CliResult<RunManifest> {
    let s = ctx.scenario.with(|c| {
        if let Some(m) = args.antennas {
            c.bs.antennas = m;
        }
        if let Some(n) = args.elements {
            c.ris.elements = n;
        }
    })?;
    let ctx = &RunContext {
        scenario: s.clone(),
        ..ctx.clone()
    };
    let (pdf, cdf, extra) = state_laws(&s, args, ctx)?;

    let batch = match args.hop {
        PdfHop::G2a => sample_g2a_snr(&G2aSampler::from_scenario(&s), &RngStream::new(ctx.seed, STREAM_G2A), ctx.samples, ctx.plan())?,
        PdfHop::A2g => {
            let mut a = A2gSampler::from_scenario(&s);
            if a.phase_bits.is_none() {
                a.path = A2gPath::Reduced;
            }
            sample_a2g_snr(&a, &RngStream::new(ctx.seed, STREAM_A2G), ctx.samples, ctx.plan())?
        }
    };
    let grid = match &args.grid {
        Some(g) => g.0.clone(),
        None => {
            let top = EmpiricalCdf::new(&batch.values)?.quantile(0.995);
            (0..200).map(|i| (i as f64 + 0.5) * top / 200.0).collect()
        }
    };
    if grid.iter().any(|&x| x < 0.0) {
        return Err(CliError::Usage("pdf grid values must be >= 0".into()));
    }
    let width = freedman_diaconis_width(&batch.values)?;
    let bins = histogram(&batch.values, &grid, width)?;
    let ks = ks_statistic(&batch.values, &cdf)?;

    let mut t = CsvTable::new(&["x", "analytical_pdf", "mc_pdf", "mc_ci_low", "mc_ci_high"]);
    for (x, b) in grid.iter().zip(&bins) {
        t.push(vec![fmt(*x), fmt(pdf(*x)), fmt(b.density), fmt(b.ci_low), fmt(b.ci_high)]);
    }
    let hop = match args.hop {
        PdfHop::G2a => "g2a",
        PdfHop::A2g => "a2g",
    };
    let mode = match args.mode {
        PdfMode::Exact => "exact",
        PdfMode::LargeN => "large_n",
        PdfMode::Asymptotic => "asymptotic",
    };
    println!("pdf {hop} {mode}: KS = {ks:.5} over {} draws", batch.len());
    emit(
        ctx,
        &format!("pdf_{hop}_{mode}"),
        &t,
        json!({
            "hop": hop,
            "mode": mode,
            "ks": ks,
            "samples": batch.len(),
            "bin_width": width,
            "antennas": s.antennas(),
            "ris_elements": s.ris_elements(),
            "model": extra,
        }),
    )
}
