//! Observables of walk histories: kinetic energy, power-law growth, central
//! and side-peak weights, and the pixelwise comparison of two distribution
//! matrices.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::DistributionHistory;
use crate::lattice::MomentumLattice;
use crate::scalar::Real;

/// `E(j) = (1/2) sum_n n^2 P(n, j)` for `j = 0..=j_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergySeries<T> {
    values: Vec<T>,
}

impl<T: Real> EnergySeries<T> {
    /// Series from explicit values, `values[j] = E(j)`; entries must be finite and >= 0.
    pub fn new(values: Vec<T>) -> Result<Self> {
        if let Some(j) = values.iter().position(|e| !(e.is_finite() && *e >= T::zero())) {
            return Err(Error::Domain(format!("energy at step {j} is {}", values[j])));
        }
        Ok(EnergySeries { values })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn at(&self, step: usize) -> T {
        self.values[step]
    }

    pub fn max_step(&self) -> usize {
        self.values.len().saturating_sub(1)
    }
}

/// `(1/2) sum_n n^2 P(n)` on integer momenta.
pub fn energy_of<T: Real>(p: &[T], lattice: &MomentumLattice) -> T {
    let half = T::lit(0.5);
    lattice
        .momenta()
        .zip(p)
        .map(|(n, &pn)| {
            let n = T::from_int(n);
            half * n * n * pn
        })
        .sum()
}

pub fn mean_energy<T: Real>(history: &DistributionHistory<T>) -> EnergySeries<T> {
    mean_energy_of_totals(history.totals(), history.lattice())
}

/// Energy series of per-step total distributions on `lattice`.
pub fn mean_energy_of_totals<T: Real>(totals: &[Vec<T>], lattice: &MomentumLattice) -> EnergySeries<T> {
    EnergySeries {
        values: totals.iter().map(|p| energy_of(p, lattice)).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub prefactor: f64,
    pub stderr: f64,
    /// Inclusive step window.
    pub fit_range: (usize, usize),
}

/// Least-squares line through `(ln j, ln E(j))` for `j` in the inclusive window.
pub fn fit_power_law<T: Real>(series: &EnergySeries<T>, range: (usize, usize)) -> Result<PowerLawFit> {
    let (lo, hi) = range;
    if lo == 0 {
        return Err(Error::argument("fit_range", "window must start at step 1 or later"));
    }
    if hi < lo || hi - lo + 1 < 3 {
        return Err(Error::argument(
            "fit_range",
            format!("window [{lo}, {hi}] has fewer than 3 points"),
        ));
    }
    if hi > series.max_step() {
        return Err(Error::argument(
            "fit_range",
            format!("window ends at {hi} but the series stops at {}", series.max_step()),
        ));
    }
    let mut xs = Vec::with_capacity(hi - lo + 1);
    let mut ys = Vec::with_capacity(hi - lo + 1);
    for j in lo..=hi {
        let e = series.at(j).as_f64();
        if !(e > 0.0) {
            return Err(Error::Domain(format!("energy at step {j} is {e}, not positive")));
        }
        xs.push((j as f64).ln());
        ys.push(e.ln());
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok(PowerLawFit {
        exponent: slope,
        prefactor: intercept.exp(),
        stderr: (ssr / (n - 2.0) / sxx).sqrt(),
        fit_range: range,
    })
}

/// `sum_{|n| <= halfwidth} P(n)`.
pub fn central_fraction<T: Real>(p: &[T], lattice: &MomentumLattice, halfwidth: u64) -> T {
    lattice
        .momenta()
        .zip(p)
        .filter(|(n, _)| n.unsigned_abs() <= halfwidth)
        .map(|(_, &pn)| pn)
        .sum()
}

/// `sum_{|n| >= threshold} P(n)`: the weight carried by the ballistic arms.
pub fn side_peak_mass<T: Real>(p: &[T], lattice: &MomentumLattice, threshold: u64) -> T {
    lattice
        .momenta()
        .zip(p)
        .filter(|(n, _)| n.unsigned_abs() >= threshold)
        .map(|(_, &pn)| pn)
        .sum()
}

/// Pixelwise relative deviation of `observed` from `a * predicted`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonResult<T> {
    /// `None` where the prediction vanishes.
    pub pixels: Array2<Option<T>>,
    pub total_error: T,
    pub evaluated: usize,
    pub skipped: usize,
    pub scale_a: T,
}

/// `D = |observed - a predicted| / (a predicted)` on every pixel with
/// `predicted > 0`; the total sums evaluated pixels only.
pub fn compare_walks<T: Real>(
    observed: &Array2<T>,
    predicted: &Array2<T>,
    scale_a: T,
) -> Result<ComparisonResult<T>> {
    if observed.shape() != predicted.shape() {
        return Err(Error::argument(
            "shape",
            format!("observed {:?} vs predicted {:?}", observed.shape(), predicted.shape()),
        ));
    }
    if !(scale_a.is_finite() && scale_a > T::zero()) {
        return Err(Error::argument("a", format!("rescaling factor must be positive, got {scale_a}")));
    }
    if let Some(bad) = predicted.iter().find(|v| !(v.is_finite() && **v >= T::zero())) {
        return Err(Error::argument("predicted", format!("pixel value {bad} is not a probability")));
    }
    let pixels = ndarray::Zip::from(observed).and(predicted).map_collect(|&o, &p| {
        (p > T::zero()).then(|| {
            let expected = scale_a * p;
            (o - expected).abs() / expected
        })
    });
    let evaluated = pixels.iter().filter(|d| d.is_some()).count();
    let total_error = pixels.iter().flatten().copied().sum();
    Ok(ComparisonResult {
        skipped: pixels.len() - evaluated,
        pixels,
        total_error,
        evaluated,
        scale_a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use proptest::prelude::*;

    fn lat(a: i64, b: i64) -> MomentumLattice {
        MomentumLattice::new(a, b).unwrap()
    }

    #[test]
    fn ratchet_start_energy() {
        let l = lat(-3, 3);
        let mut p = vec![0.0; 7];
        p[3] = 0.5;
        p[4] = 0.5;
        assert_eq!(energy_of(&p, &l), 0.25);
        let mut delta = vec![0.0; 7];
        delta[3] = 1.0;
        assert_eq!(energy_of(&delta, &l), 0.0);
    }

    #[test]
    fn exact_power_laws() {
        let quad = EnergySeries::new((0..=20).map(|j| 3.0 * (j * j) as f64).collect()).unwrap();
        let fit = fit_power_law(&quad, (2, 20)).unwrap();
        assert!((fit.exponent - 2.0).abs() < 1e-12);
        assert!(fit.stderr < 1e-12);
        assert!((fit.prefactor - 3.0).abs() < 1e-10);
        let lin = EnergySeries::new((0..=15).map(|j| 5.0 * j as f64).collect()).unwrap();
        assert!((fit_power_law(&lin, (2, 15)).unwrap().exponent - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fit_window_checks() {
        let s = EnergySeries::new(vec![0.25, 1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!(matches!(fit_power_law(&s, (2, 3)), Err(Error::Argument { field: "fit_range", .. })));
        assert!(matches!(fit_power_law(&s, (0, 3)), Err(Error::Argument { .. })));
        assert!(matches!(fit_power_law(&s, (2, 9)), Err(Error::Argument { .. })));
        let z = EnergySeries::new(vec![0.25, 1.0, 0.0, 3.0, 4.0]).unwrap();
        assert!(matches!(fit_power_law(&z, (1, 4)), Err(Error::Domain(_))));
        assert!(EnergySeries::new(vec![-1.0]).is_err());
    }

    #[test]
    fn noisy_fit_has_positive_stderr() {
        let s = EnergySeries::new(vec![0.0, 1.0, 4.4, 8.5, 16.9, 24.0]).unwrap();
        let fit = fit_power_law(&s, (1, 5)).unwrap();
        assert!(fit.stderr > 0.0);
        assert!((fit.exponent - 2.0).abs() < 0.1);
    }

    #[test]
    fn central_fraction_examples() {
        let l = lat(-10, 10);
        let mut delta = vec![0.0; 21];
        delta[10] = 1.0;
        assert_eq!(central_fraction(&delta, &l, 0), 1.0);
        let uniform = vec![1.0f64 / 21.0; 21];
        assert!((central_fraction(&uniform, &l, 2) - 5.0 / 21.0).abs() < 1e-15);
        assert!((side_peak_mass(&uniform, &l, 9) - 4.0 / 21.0).abs() < 1e-15);
    }

    #[test]
    fn comparison_examples() {
        let x = array![[0.1f64, 0.0], [0.3, 0.6]];
        let r = compare_walks(&(&x * 3.0), &x, 3.0).unwrap();
        assert_eq!(r.total_error, 0.0);
        assert_eq!((r.evaluated, r.skipped), (3, 1));
        assert_eq!(r.pixels[[0, 1]], None);
        let r = compare_walks(&(&x * 4.0), &x, 2.0).unwrap();
        assert!(r.pixels.iter().flatten().all(|&d| (d - 1.0).abs() < 1e-15));
        assert!(matches!(
            compare_walks(&array![[1.0]], &x, 1.0),
            Err(Error::Argument { field: "shape", .. })
        ));
        assert!(compare_walks(&x, &x, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn energy_is_reflection_invariant(weights in prop::collection::vec(0.0f64..1.0, 21)) {
            let l = lat(-10, 10);
            let total: f64 = weights.iter().sum::<f64>() + 1e-12;
            let p: Vec<f64> = weights.iter().map(|w| w / total).collect();
            let reflected: Vec<f64> = p.iter().rev().copied().collect();
            prop_assert!((energy_of(&p, &l) - energy_of(&reflected, &l)).abs() < 1e-12);
        }

        #[test]
        fn self_comparison_vanishes(values in prop::collection::vec(1e-6f64..1.0, 12)) {
            let x = Array2::from_shape_vec((3, 4), values).unwrap();
            let r = compare_walks(&x, &x, 1.0).unwrap();
            prop_assert_eq!(r.total_error, 0.0);
            prop_assert_eq!(r.skipped, 0);
        }

        #[test]
        fn pure_power_laws_are_recovered(exponent in 0.2f64..3.0, prefactor in 0.01f64..100.0) {
            let s = EnergySeries::new((0..=15).map(|j| prefactor * (j as f64).powf(exponent)).collect()).unwrap();
            let fit = fit_power_law(&s, (2, 15)).unwrap();
            prop_assert!((fit.exponent - exponent).abs() < 1e-12);
        }
    }
}
