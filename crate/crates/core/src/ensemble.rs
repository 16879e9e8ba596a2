//! Quasi-momentum ensembles and averaged walk distributions.
//!
//! A finite-temperature condensate occupies a narrow band of quasi-momenta
//! around `beta = 0`; a thermal cloud fills the zone uniformly. Each sampled
//! `beta` is an independent walk; the ensemble distribution is their mean.
//!
//! Samples come from ChaCha8 seeded with the 64-bit seed and are drawn
//! before any walk runs, so the parallel stage only sees a fixed list.
//! Walks run on a dedicated rayon pool in fixed-size chunks and are summed
//! in sample-index order, which makes the result independent of the worker
//! count down to the last bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{run_walk, DistributionHistory, KickParams, WalkProtocol};
use crate::lattice::{make_lattice, ratchet_state, RatchetSpec, Spin, SpinorWavefunction};
use crate::scalar::Real;

/// Walks evaluated concurrently before their sum is folded into the mean.
const CHUNK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuasiMomentumEnsemble {
    fwhm: f64,
    n_samples: usize,
    seed: u64,
    thermal_fraction: f64,
}

impl QuasiMomentumEnsemble {
    pub fn new(fwhm: f64, n_samples: usize, seed: u64, thermal_fraction: f64) -> Result<Self> {
        if !(fwhm.is_finite() && fwhm >= 0.0) {
            return Err(Error::argument("fwhm", format!("must be finite and >= 0, got {fwhm}")));
        }
        if n_samples == 0 {
            return Err(Error::argument("n_samples", "must be at least 1"));
        }
        if !(0.0..=1.0).contains(&thermal_fraction) {
            return Err(Error::argument(
                "thermal_fraction",
                format!("must lie in [0, 1], got {thermal_fraction}"),
            ));
        }
        Ok(QuasiMomentumEnsemble {
            fwhm,
            n_samples,
            seed,
            thermal_fraction,
        })
    }

    /// A single walk at `beta = 0`.
    pub fn resonant() -> Self {
        QuasiMomentumEnsemble {
            fwhm: 0.0,
            n_samples: 1,
            seed: 0,
            thermal_fraction: 0.0,
        }
    }

    pub fn fwhm(&self) -> f64 {
        self.fwhm
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn thermal_fraction(&self) -> f64 {
        self.thermal_fraction
    }

    /// Number of uniformly drawn samples, `round(f n)`.
    pub fn thermal_count(&self) -> usize {
        ((self.thermal_fraction * self.n_samples as f64).round() as usize).min(self.n_samples)
    }

    /// Standard deviation of the Gaussian part, `fwhm / sqrt(8 ln 2)`.
    pub fn sigma(&self) -> f64 {
        self.fwhm / (8.0 * std::f64::consts::LN_2).sqrt()
    }

    /// Every sample sits at `beta = 0`, so one walk represents the ensemble.
    pub fn is_degenerate(&self) -> bool {
        self.fwhm == 0.0 && self.thermal_count() == 0
    }
}

/// Reduces `x` into `[0, 1)`; `-0.0` and values rounding up to 1 become `0`.
fn wrap_unit(x: f64) -> f64 {
    let w = x.rem_euclid(1.0);
    if w >= 1.0 || w == 0.0 {
        0.0
    } else {
        w
    }
}

/// The ensemble's quasi-momenta: `round(f n)` uniform draws first, then
/// Gaussian draws wrapped mod 1.
pub fn sample_betas(ensemble: &QuasiMomentumEnsemble) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(ensemble.seed);
    let thermal = ensemble.thermal_count();
    let mut betas = Vec::with_capacity(ensemble.n_samples);
    for _ in 0..thermal {
        betas.push(wrap_unit(rng.random::<f64>()));
    }
    let sigma = ensemble.sigma();
    if sigma == 0.0 {
        betas.resize(ensemble.n_samples, 0.0);
        return betas;
    }
    let normal = Normal::new(0.0, sigma).expect("sigma is finite and positive");
    while betas.len() < ensemble.n_samples {
        betas.push(wrap_unit(normal.sample(&mut rng)));
    }
    betas
}

fn to_beta<T: Real>(beta: f64) -> T {
    let b = T::lit(beta);
    // narrow types can round values just below 1 up to 1
    if b >= T::one() {
        T::zero()
    } else {
        b
    }
}

/// Mean distribution history over the ensemble, starting every walker in the
/// ratchet state of `spec` in spin `|2>` on the lattice sized for `steps`.
pub fn ensemble_distribution<T: Real>(
    protocol: &WalkProtocol<T>,
    spec: &RatchetSpec,
    steps: usize,
    params: &KickParams<T>,
    ensemble: &QuasiMomentumEnsemble,
    workers: usize,
) -> Result<DistributionHistory<T>> {
    let lattice = make_lattice(steps, params.k().as_f64(), spec)?;
    let initial = ratchet_state::<T>(spec, &lattice, Spin::Two)?;
    ensemble_over_betas(protocol, &initial, steps, params, &sample_betas(ensemble), workers)
}

/// Mean history of walks from `initial` over an explicit list of quasi-momenta.
pub fn ensemble_over_betas<T: Real>(
    protocol: &WalkProtocol<T>,
    initial: &SpinorWavefunction<T>,
    steps: usize,
    params: &KickParams<T>,
    betas: &[f64],
    workers: usize,
) -> Result<DistributionHistory<T>> {
    if workers == 0 {
        return Err(Error::argument("workers", "must be at least 1"));
    }
    if betas.is_empty() {
        return Err(Error::argument("n_samples", "must be at least 1"));
    }
    let run = |index: usize| -> Result<DistributionHistory<T>> {
        let beta = betas[index];
        run_walk(protocol, initial, steps, params, to_beta(beta)).map_err(|e| Error::Sample {
            index,
            beta,
            source: Box::new(e),
        })
    };

    if betas.iter().all(|&b| b == betas[0]) {
        // identical samples: the mean is the single walk itself
        return run(0);
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::argument("workers", e.to_string()))?;

    let mut sum: Option<DistributionHistory<T>> = None;
    for start in (0..betas.len()).step_by(CHUNK) {
        let end = (start + CHUNK).min(betas.len());
        let chunk: Vec<Result<DistributionHistory<T>>> =
            pool.install(|| (start..end).into_par_iter().map(run).collect());
        for history in chunk {
            let history = history?;
            match sum.as_mut() {
                None => sum = Some(history),
                Some(acc) => acc.accumulate(&history),
            }
        }
    }
    let mut mean = sum.expect("at least one sample");
    mean.scale(T::one() / T::from_int(betas.len() as i64));
    Ok(mean)
}
