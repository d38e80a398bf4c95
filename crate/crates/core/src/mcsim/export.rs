use std::io::Write;

use serde::Serialize;

use super::{PartitionPlan, RngStream, SampleBatch};
use crate::error::{Error, Result};

/// Sidecar describing how an exported batch was produced.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchMetadata {
    pub config_hash: String,
    pub streams: Vec<RngStream>,
    pub plan: PartitionPlan,
    pub samples: usize,
    pub columns: Vec<String>,
}

impl BatchMetadata {
    pub fn for_batches(batches: &[&SampleBatch], config_hash: &str) -> Self {
        Self {
            config_hash: config_hash.to_string(),
            streams: batches.iter().map(|b| b.stream).collect(),
            plan: batches.first().map(|b| b.plan).unwrap_or_default(),
            samples: batches.iter().map(|b| b.len()).sum(),
            columns: ["sample_index", "hop", "los_state", "snr_linear"].map(String::from).to_vec(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("metadata always serializes")
    }
}

fn io(e: std::io::Error) -> Error {
    Error::arg(format!("write failed: {e}"))
}

/// Writes `sample_index,hop,los_state,snr_linear` rows for every batch.
pub fn write_batch_csv<W: Write>(out: &mut W, batches: &[&SampleBatch]) -> Result<()> {
    writeln!(out, "sample_index,hop,los_state,snr_linear").map_err(io)?;
    for b in batches {
        for (i, (v, l)) in b.values.iter().zip(&b.los).enumerate() {
            let state = if *l { "los" } else { "nlos" };
            writeln!(out, "{i},{},{state},{v:e}", b.hop.as_str()).map_err(io)?;
        }
    }
    Ok(())
}
