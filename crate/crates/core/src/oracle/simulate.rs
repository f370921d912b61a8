//! Forward simulation of the continuation game for drawn shocks.
//!
//! Shocks come from SplitMix64, a 64-bit splittable mixer: each draw is the
//! top 53 bits of the next output mapped onto `[-R, R)`. Runs are
//! reproducible for a given seed within one build.

use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::model::{enacted_outcome_unchecked, LegislativeChoice, ModelParams, RegimeInterpretation, StageOutcome};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSample {
    pub seed: u64,
    pub draws: usize,
    pub outcomes: Vec<StageOutcome>,
}

/// Sample mean and standard error of one payoff column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleMean {
    pub mean: f64,
    pub std_error: f64,
}

impl SampleMean {
    pub fn of(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = if n > 1.0 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        Self {
            mean,
            std_error: (var / n).sqrt(),
        }
    }
}

impl PathSample {
    pub fn mean_of(&self, field: impl Fn(&StageOutcome) -> f64) -> SampleMean {
        let values: Vec<f64> = self.outcomes.iter().map(field).collect();
        SampleMean::of(&values)
    }
}

/// Derives a sub-seed for a named purpose, so that independent consumers of
/// one configured seed never share a stream.
pub fn derive_seed(seed: u64, purpose: &str) -> u64 {
    // FNV-1a over the tag, then one SplitMix64 step over the combination.
    let tag = purpose
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    SplitMix64::seed_from_u64(seed ^ tag).next_u64()
}

/// Uniform shock source on `[-R, R)`.
pub struct ShockStream {
    rng: SplitMix64,
    bound: f64,
}

impl ShockStream {
    pub fn new(seed: u64, bound: f64) -> Self {
        Self {
            rng: SplitMix64::seed_from_u64(seed),
            bound,
        }
    }

    pub fn next_shock(&mut self) -> f64 {
        let u: f64 = self.rng.random();
        -self.bound + 2.0 * self.bound * u
    }
}

/// Draws `draws` shocks and plays the continuation game for each.
pub fn simulate_paths(
    params: &ModelParams,
    legislated: &LegislativeChoice,
    seed: u64,
    draws: usize,
    mode: RegimeInterpretation,
) -> Result<PathSample, ModelError> {
    if draws == 0 {
        return Err(ModelError::NoDraws);
    }
    let mut stream = ShockStream::new(seed, params.shock_bound);
    let outcomes = (0..draws)
        .map(|_| enacted_outcome_unchecked(stream.next_shock(), legislated, params, mode))
        .collect();
    Ok(PathSample {
        seed,
        draws,
        outcomes,
    })
}
