//! Monte Carlo reference simulator.
//!
//! Every batch is split into fixed-size chunks and chunk `c` draws from its
//! own ChaCha stream derived from `(master_seed, stream_id, c)`. Workers take
//! chunks round-robin and the results are reassembled in chunk order, so a
//! batch depends only on the seed, the stream id, the sample count and the
//! chunk size. The worker count never changes a single bit.

mod channel;
mod export;
mod samplers;
mod stats;

pub use channel::{age_vector, rician_magnitude, sample_rician_vector};
pub use export::{write_batch_csv, BatchMetadata};
pub use samplers::{
    estimate_chi_moments, sample_a2g_snr, sample_g2a_snr, A2gPath, A2gSampler, G2aSampler, LosMode,
};
pub use stats::{
    estimate_outage, freedman_diaconis_width, histogram, ks_statistic, ks_two_sample, wilson_interval,
    EmpiricalCdf, HistogramBin, OutageEstimate,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Seed plus stream identifier; every pair names an independent sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    pub master_seed: u64,
    pub stream_id: u64,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RngStream {
    pub const fn new(master_seed: u64, stream_id: u64) -> Self {
        Self { master_seed, stream_id }
    }

    /// A sibling stream with a different id.
    pub fn child(&self, stream_id: u64) -> Self {
        Self::new(self.master_seed, stream_id)
    }

    /// Generator for one chunk of this stream.
    pub fn chunk_rng(&self, chunk: u64) -> ChaCha8Rng {
        let mut id = self.stream_id;
        let mut st = self.master_seed ^ splitmix64(&mut id);
        let mut key = [0u8; 32];
        for w in key.chunks_exact_mut(8) {
            w.copy_from_slice(&splitmix64(&mut st).to_le_bytes());
        }
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(chunk);
        rng
    }

    /// Generator for single-shot use.
    pub fn rng(&self) -> ChaCha8Rng {
        self.chunk_rng(0)
    }
}

/// Hop a batch belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hop {
    G2a,
    A2g,
}

impl Hop {
    pub fn as_str(&self) -> &'static str {
        match self {
            Hop::G2a => "g2a",
            Hop::A2g => "a2g",
        }
    }
}

/// Linear SNR draws of one hop with their LOS states.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    pub hop: Hop,
    pub values: Vec<f64>,
    pub los: Vec<bool>,
    pub stream: RngStream,
    pub plan: PartitionPlan,
}

impl SampleBatch {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Multiplies LOS draws by `los` and NLOS draws by `nlos`.
    ///
    /// Samplers run at unit mean SNR can be rescaled this way to any power
    /// level without redrawing.
    pub fn scaled(&self, los: f64, nlos: f64) -> SampleBatch {
        let values = self
            .values
            .iter()
            .zip(&self.los)
            .map(|(&v, &l)| v * if l { los } else { nlos })
            .collect();
        SampleBatch { values, ..self.clone() }
    }
}

/// How a batch is cut into chunks and spread over threads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionPlan {
    pub chunk_size: usize,
    pub workers: usize,
}

impl Default for PartitionPlan {
    fn default() -> Self {
        Self {
            chunk_size: 1 << 16,
            workers: 1,
        }
    }
}

impl PartitionPlan {
    pub fn new(chunk_size: usize, workers: usize) -> Result<Self> {
        if chunk_size == 0 || workers == 0 {
            return Err(Error::arg("chunk size and worker count must be positive"));
        }
        Ok(Self { chunk_size, workers })
    }

    pub fn with_workers(self, workers: usize) -> Self {
        Self {
            workers: workers.max(1),
            ..self
        }
    }

    /// Runs `draw(rng, len)` for every chunk of an n-sample job and
    /// concatenates the pieces in chunk order.
    pub fn run<T, F>(&self, stream: &RngStream, n: usize, draw: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&mut ChaCha8Rng, usize) -> Vec<T> + Sync,
    {
        let chunks = n.div_ceil(self.chunk_size);
        let len = |c: usize| self.chunk_size.min(n - c * self.chunk_size);
        let workers = self.workers.min(chunks).max(1);
        let mut parts: Vec<Option<Vec<T>>> = (0..chunks).map(|_| None).collect();
        if workers == 1 {
            for (c, slot) in parts.iter_mut().enumerate() {
                *slot = Some(draw(&mut stream.chunk_rng(c as u64), len(c)));
            }
        } else {
            std::thread::scope(|s| {
                let handles: Vec<_> = (0..workers)
                    .map(|w| {
                        let draw = &draw;
                        s.spawn(move || {
                            (w..chunks)
                                .step_by(workers)
                                .map(|c| (c, draw(&mut stream.chunk_rng(c as u64), len(c))))
                                .collect::<Vec<_>>()
                        })
                    })
                    .collect();
                for h in handles {
                    for (c, v) in h.join().expect("sampling worker panicked") {
                        parts[c] = Some(v);
                    }
                }
            });
        }
        parts.into_iter().flat_map(|p| p.expect("every chunk is filled")).collect()
    }
}
