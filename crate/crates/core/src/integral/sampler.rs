//! Reproducible random streams and the Monte Carlo driver.
//!
//! Samples are cut into fixed blocks and block `b` always draws from stream
//! `b`, so the sample sequence does not depend on how blocks are spread over
//! worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Point};

/// Samples per stream in the driver.
pub const BLOCK: usize = 64;

pub const DEFAULT_SEED: u64 = 7;

/// One ChaCha20 stream.
#[derive(Clone, Debug)]
pub struct Sampler {
    seed: u64,
    stream: u64,
    rng: ChaCha20Rng,
    draws: u64,
}

impl Sampler {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler {
            seed,
            stream,
            rng,
            draws: 0,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Number of scalar variates drawn so far.
    pub fn draws(&self) -> u64 {
        self.draws
    }

    pub fn gaussian(&mut self) -> f64 {
        self.draws += 1;
        self.rng.sample(StandardNormal)
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.draws += 1;
        self.rng.random::<f64>()
    }

    pub fn gaussian_vector(&mut self, n: usize) -> Point {
        (0..n).map(|_| self.gaussian()).collect()
    }

    /// Uniform direction on the unit sphere of `R^n`.
    pub fn unit_vector(&mut self, n: usize) -> Point {
        loop {
            if let Some(u) = linalg::normalize(&self.gaussian_vector(n)) {
                return u;
            }
        }
    }
}

/// Monte Carlo result.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MCEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(N)`.
    pub stderr: f64,
    #[serde(rename = "N")]
    pub samples: usize,
    pub seed: u64,
}

impl MCEstimate {
    /// An exactly known value reported in estimate form.
    pub fn exact(value: f64, samples: usize, seed: u64) -> Self {
        MCEstimate {
            mean: value,
            stderr: 0.0,
            samples,
            seed,
        }
    }

    pub fn from_values(values: &[f64], seed: u64) -> Self {
        let n = values.len();
        let mean = pairwise_sum(values) / n as f64;
        let sq: Vec<f64> = values.iter().map(|x| (x - mean) * (x - mean)).collect();
        let var = if n > 1 { pairwise_sum(&sq) / (n - 1) as f64 } else { 0.0 };
        MCEstimate {
            mean,
            stderr: (var / n as f64).sqrt(),
            samples: n,
            seed,
        }
    }

    /// Multiplies mean and standard error by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        MCEstimate {
            mean: self.mean * c,
            stderr: self.stderr * c.abs(),
            ..self.clone()
        }
    }

    /// True if `|mean - target| <= k * stderr + slack`.
    pub fn within(&self, target: f64, k: f64, slack: f64) -> bool {
        (self.mean - target).abs() <= k * self.stderr + slack
    }
}

/// Summation with `O(log N)` error growth, independent of thread layout.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// Sample size, seed and worker count of an estimator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct McConfig {
    pub seed: u64,
    pub samples: usize,
    pub threads: usize,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            seed: DEFAULT_SEED,
            samples: 10_000,
            threads: 1,
        }
    }
}

impl McConfig {
    pub fn new(seed: u64, samples: usize) -> Self {
        McConfig {
            seed,
            samples,
            threads: 1,
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }
}

/// Evaluates `draw` on `cfg.samples` independent samples.
pub fn run<F>(cfg: &McConfig, draw: F) -> Result<MCEstimate>
where
    F: Fn(&mut Sampler) -> Result<f64> + Sync,
{
    if cfg.samples < 2 {
        return Err(Error::InvalidArgument("Monte Carlo needs at least 2 samples".into()));
    }
    let mut values = vec![0.0; cfg.samples];
    let blocks: Vec<(usize, &mut [f64])> = values.chunks_mut(BLOCK).enumerate().collect();
    let threads = cfg.threads.clamp(1, blocks.len());
    let mut work: Vec<Vec<(usize, &mut [f64])>> = (0..threads).map(|_| Vec::new()).collect();
    for (i, b) in blocks.into_iter().enumerate() {
        work[i % threads].push(b);
    }
    let draw = &draw;
    let seed = cfg.seed;
    let outcomes: Vec<Result<()>> = std::thread::scope(|s| {
        let handles: Vec<_> = work
            .into_iter()
            .map(|mine| {
                s.spawn(move || -> Result<()> {
                    for (b, out) in mine {
                        let mut sampler = Sampler::new(seed, b as u64);
                        for slot in out.iter_mut() {
                            *slot = draw(&mut sampler)?;
                        }
                    }
                    Ok(())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("estimator worker panicked")).collect()
    });
    outcomes.into_iter().collect::<Result<Vec<()>>>()?;
    Ok(MCEstimate::from_values(&values, cfg.seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let mut a = Sampler::new(7, 3);
        let mut b = Sampler::new(7, 3);
        let mut c = Sampler::new(7, 4);
        let xa: Vec<f64> = (0..5).map(|_| a.uniform()).collect();
        let xb: Vec<f64> = (0..5).map(|_| b.uniform()).collect();
        let xc: Vec<f64> = (0..5).map(|_| c.uniform()).collect();
        assert_eq!(xa, xb);
        assert_ne!(xa, xc);
        assert_eq!(a.draws(), 5);
    }

    #[test]
    fn result_is_independent_of_thread_count() {
        let draw = |s: &mut Sampler| Ok(s.gaussian());
        let one = run(&McConfig::new(11, 1000), draw).unwrap();
        let four = run(&McConfig::new(11, 1000).with_threads(4), draw).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn standard_error_of_a_constant_is_zero() {
        let e = run(&McConfig::new(1, 100), |_| Ok(2.5)).unwrap();
        assert_eq!(e.mean, 2.5);
        assert_eq!(e.stderr, 0.0);
    }

    #[test]
    fn uniform_mean_is_one_half() {
        let e = run(&McConfig::new(5, 20_000), |s| Ok(s.uniform())).unwrap();
        assert!(e.within(0.5, 3.0, 0.0), "{e:?}");
        // sd of U(0,1) is 1/sqrt(12)
        assert!((e.stderr * (20_000f64).sqrt() - (1.0 / 12f64).sqrt()).abs() < 0.01);
    }
}
