use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use chrono::Utc;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::{CliError, CliResult, RunContext, CSV_SCHEMA};

/// Version string in `git describe` style. Builds from a checkout can set
/// RISAGE_GIT_DESCRIBE; otherwise the package version is used.
pub fn version() -> String {
    option_env!("RISAGE_GIT_DESCRIBE")
        .map(str::to_string)
        .unwrap_or_else(|| format!("v{}", env!("CARGO_PKG_VERSION")))
}

/// SHA-256 of the canonical TOML of the effective configuration.
pub fn config_hash(ctx: &RunContext) -> String {
    let digest = Sha256::digest(ctx.scenario.config.to_toml().as_bytes());
    hex::encode(digest)
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub config_hash: String,
    pub version: String,
    pub seed: u64,
    pub command: String,
    pub timestamp: String,
    pub scenario: PathBuf,
    pub csv_schema: u32,
    pub outputs: Vec<PathBuf>,
    /// Command-specific results such as KS statistics.
    pub results: serde_json::Value,
}

/// One CSV artifact: header comment, column names, rows.
pub struct CsvTable {
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(columns: &'static [&'static str]) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Rendered text; identical inputs give identical bytes.
    pub fn render(&self, header: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {header}");
        let _ = writeln!(s, "{}", self.columns.join(","));
        for r in &self.rows {
            let _ = writeln!(s, "{}", r.join(","));
        }
        s
    }
}

/// Shortest round-trip float formatting.
pub fn fmt(v: f64) -> String {
    format!("{v}")
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Writes `<stem>.csv`, a plot-script stub and `<stem>.manifest.json` into
/// the output directory and returns the manifest.
pub fn emit(ctx: &RunContext, stem: &str, table: &CsvTable, results: serde_json::Value) -> CliResult<RunManifest> {
    std::fs::create_dir_all(&ctx.out_dir).map_err(|e| CliError::io(&ctx.out_dir, e))?;
    let hash = config_hash(ctx);
    let csv_name = format!("{stem}.csv");
    let manifest_name = format!("{stem}.manifest.json");
    let plot_name = format!("plot_{stem}.py");
    let header = format!("risage config_hash={hash} schema={CSV_SCHEMA} manifest={manifest_name}");
    write(&ctx.out_dir.join(&csv_name), &table.render(&header))?;
    write(&ctx.out_dir.join(&plot_name), &plot_stub(&csv_name, table.columns))?;
    let m = RunManifest {
        config_hash: hash,
        version: version(),
        seed: ctx.seed,
        command: ctx.command.clone(),
        timestamp: Utc::now().to_rfc3339(),
        scenario: ctx.scenario_path.clone(),
        csv_schema: CSV_SCHEMA,
        outputs: vec![csv_name.into(), plot_name.into()],
        results,
    };
    let json = serde_json::to_string_pretty(&m).expect("manifest serializes");
    write(&ctx.out_dir.join(&manifest_name), &(json + "\n"))?;
    Ok(m)
}

/// Minimal matplotlib script plotting every column against the first.
fn plot_stub(csv: &str, columns: &[&str]) -> String {
    let x = columns[0];
    let ys: Vec<String> = columns[1..].iter().map(|c| format!("\"{c}\"")).collect();
    format!(
        r##"# Plot stub generated by risage. Edit freely.
import sys
import pandas as pd
import matplotlib.pyplot as plt

df = pd.read_csv("{csv}", comment="#")
fig, ax = plt.subplots()
for col in [{ys}]:
    if pd.api.types.is_numeric_dtype(df[col]):
        ax.plot(df["{x}"], df[col], label=col)
ax.set_xlabel("{x}")
ax.legend()
fig.savefig(sys.argv[1] if len(sys.argv) > 1 else "{csv}".replace(".csv", ".png"))
"##,
        ys = ys.join(", ")
    )
}
