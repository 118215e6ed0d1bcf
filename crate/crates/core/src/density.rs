//! MSTD density of subsets of `[0, n − 1]`: exhaustive census for small
//! windows, seeded Monte Carlo for large ones.
//!
//! Monte Carlo samples are drawn in fixed batches of [`MC_BATCH`]. Batch `i`
//! gets its own ChaCha8 stream, seeded with the user seed and stream number
//! `i`, so the merged counts depend only on `(n, samples, seed)` and never on
//! how batches are scheduled across threads.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bbs::count_bbs_reflection;
use crate::construction::ConstructionParams;
use crate::error::{Error, Result};
use crate::intset::{mask_is_mstd, IntSet};

pub const DEFAULT_CENSUS_LIMIT: usize = 26;
/// The census kernel packs a subset and its sum/difference accumulators into
/// single words.
pub const MAX_CENSUS_WINDOW: usize = 32;
pub const MC_BATCH: u64 = 10_000;
pub const GENERATOR: &str = "ChaCha8Rng";

/// 97.5% standard normal quantile.
const Z_95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub n: usize,
    pub mode: Mode,
    pub mstd_count: u64,
    pub total: u64,
    pub rho: f64,
    pub ci95: Option<(f64, f64)>,
    pub seed: Option<u64>,
    pub generator: Option<String>,
}

impl DensityEstimate {
    /// `mstd_count / total` exactly.
    pub fn rho_exact(&self) -> BigRational {
        BigRational::new(BigInt::from(self.mstd_count), BigInt::from(self.total))
    }

    pub const CSV_HEADER: &'static str = "n,mode,mstd_count,total,rho,ci95_lo,ci95_hi,seed,generator";

    pub fn csv_row(&self) -> String {
        let mode = match self.mode {
            Mode::Exhaustive => "exhaustive",
            Mode::MonteCarlo => "monte_carlo",
        };
        let (lo, hi) = match self.ci95 {
            Some((lo, hi)) => (lo.to_string(), hi.to_string()),
            None => (String::new(), String::new()),
        };
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            mode,
            self.mstd_count,
            self.total,
            self.rho,
            lo,
            hi,
            self.seed.map(|s| s.to_string()).unwrap_or_default(),
            self.generator.as_deref().unwrap_or_default()
        )
    }
}

/// Exact count of MSTD subsets of `[0, n − 1]`, rejected above `limit`.
pub fn census_with_limit(n: usize, limit: usize) -> Result<DensityEstimate> {
    if n == 0 {
        return Err(Error::EmptyWindow);
    }
    if n > limit.min(MAX_CENSUS_WINDOW) {
        return Err(Error::CensusLimitExceeded {
            n,
            limit: limit.min(MAX_CENSUS_WINDOW),
        });
    }
    let count = census_count(n);
    let total = 1u64 << n;
    Ok(DensityEstimate {
        n,
        mode: Mode::Exhaustive,
        mstd_count: count,
        total,
        rho: count as f64 / total as f64,
        ci95: None,
        seed: None,
        generator: None,
    })
}

pub fn census(n: usize) -> Result<DensityEstimate> {
    census_with_limit(n, DEFAULT_CENSUS_LIMIT)
}

fn census_count(n: usize) -> u64 {
    let total = 1u64 << n;
    let chunk = 1u64 << n.saturating_sub(10).min(16);
    let window = n as u32;
    (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let lo = c * chunk;
            let hi = (lo + chunk).min(total);
            (lo..hi).filter(|&mask| mask_is_mstd(mask, window)).count() as u64
        })
        .sum()
}

/// MSTD subsets of `[0, d − 1]` that contain both endpoints.
pub fn census_spanning(d: usize) -> Result<u64> {
    if d == 0 || d > MAX_CENSUS_WINDOW {
        return Err(Error::CensusLimitExceeded {
            n: d,
            limit: MAX_CENSUS_WINDOW,
        });
    }
    if d == 1 {
        return Ok(0);
    }
    let inner = 1u64 << (d - 2);
    let ends = 1u64 | 1u64 << (d - 1);
    let window = d as u32;
    Ok((0..inner)
        .into_par_iter()
        .filter(|&m| mask_is_mstd(ends | m << 1, window))
        .count() as u64)
}

/// Wilson score interval at 95%.
pub fn wilson_interval(hits: u64, samples: u64) -> (f64, f64) {
    let n = samples as f64;
    let p = hits as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z_95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // The closed form can leave the estimate outside by rounding at 0 and 1.
    let lo = if hits == 0 { 0.0 } else { (centre - half).max(0.0).min(p) };
    let hi = if hits == samples { 1.0 } else { (centre + half).min(1.0).max(p) };
    (lo, hi)
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, words: &mut [u64]) -> IntSet {
    for w in words.iter_mut() {
        *w = rng.next_u64();
    }
    IntSet::from_words(n, words.to_vec()).expect("window is positive")
}

fn batch_hits(n: usize, seed: u64, batch: u64, count: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    let mut words = vec![0u64; n.div_ceil(64)];
    (0..count)
        .filter(|_| random_subset(&mut rng, n, &mut words).is_mstd())
        .count() as u64
}

/// Estimates the density from `samples` uniform subsets of `[0, n − 1]`.
pub fn monte_carlo(n: usize, samples: u64, seed: u64) -> Result<DensityEstimate> {
    if n == 0 {
        return Err(Error::EmptyWindow);
    }
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    let hits: u64 = (0..samples.div_ceil(MC_BATCH))
        .into_par_iter()
        .map(|batch| {
            let count = MC_BATCH.min(samples - batch * MC_BATCH);
            batch_hits(n, seed, batch, count)
        })
        .sum();
    Ok(DensityEstimate {
        n,
        mode: Mode::MonteCarlo,
        mstd_count: hits,
        total: samples,
        rho: hits as f64 / samples as f64,
        ci95: Some(wilson_interval(hits, samples)),
        seed: Some(seed),
        generator: Some(GENERATOR.to_string()),
    })
}

/// Share of all subsets of `[0, n − 1]` taken by the constructed family:
/// `B(n − 22) / 2ⁿ`.
pub fn family_fraction(n: usize) -> Result<BigRational> {
    let params = ConstructionParams::new(n)?;
    let family = count_bbs_reflection(params.middle_len())?;
    Ok(BigRational::new(
        BigInt::from(family),
        BigInt::from(1u8) << n,
    ))
}
