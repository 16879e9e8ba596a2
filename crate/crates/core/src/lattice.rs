//! Truncated integer-momentum lattice, spinor wavefunctions on it, and the
//! ratchet initial states.
//!
//! Momenta are integers in units of two photon recoils. The quasimomentum
//! `beta` is not part of the state; it only enters the free evolution.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{i_pow, Real};

/// Inclusive momentum window `[n_min, n_max]` with `n_min < 0 < n_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MomentumLattice {
    n_min: i64,
    n_max: i64,
}

impl MomentumLattice {
    pub fn new(n_min: i64, n_max: i64) -> Result<Self> {
        if !(n_min < 0 && 0 < n_max) {
            return Err(Error::argument(
                "lattice",
                format!("bounds must satisfy n_min < 0 < n_max, got [{n_min}, {n_max}]"),
            ));
        }
        Ok(MomentumLattice { n_min, n_max })
    }

    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    pub fn n_max(&self) -> i64 {
        self.n_max
    }

    /// Number of momentum classes.
    pub fn size(&self) -> usize {
        (self.n_max - self.n_min + 1) as usize
    }

    pub fn contains(&self, n: i64) -> bool {
        (self.n_min..=self.n_max).contains(&n)
    }

    pub fn index_of(&self, n: i64) -> Option<usize> {
        self.contains(n).then(|| (n - self.n_min) as usize)
    }

    pub fn momentum(&self, index: usize) -> i64 {
        self.n_min + index as i64
    }

    pub fn momenta(&self) -> impl DoubleEndedIterator<Item = i64> + Clone {
        self.n_min..=self.n_max
    }
}

/// Momentum classes of a ratchet state. Class `s` carries `e^{i s pi/2}/sqrt(S)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatchetSpec {
    classes: Vec<i64>,
}

impl RatchetSpec {
    pub fn new(classes: Vec<i64>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::argument("classes", "ratchet needs at least one momentum class"));
        }
        let mut sorted = classes.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::argument("classes", format!("duplicate momentum class in {classes:?}")));
        }
        Ok(RatchetSpec { classes })
    }

    /// Classes `0, 1, ..., count-1`.
    pub fn contiguous(count: usize) -> Result<Self> {
        Self::new((0..count as i64).collect())
    }

    pub fn classes(&self) -> &[i64] {
        &self.classes
    }

    /// S, the number of classes.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    fn min_class(&self) -> i64 {
        *self.classes.iter().min().expect("nonempty")
    }

    fn max_class(&self) -> i64 {
        *self.classes.iter().max().expect("nonempty")
    }

    /// Walker amplitude of class `s`: `i^s / sqrt(S)`.
    pub fn amplitude<T: Real>(&self, s: i64) -> Complex<T> {
        i_pow::<T>(s) / T::from_int(self.len() as i64).sqrt()
    }
}

/// Lattice wide enough to host a `j_max`-step walk at kick strength `k`.
///
/// Half-width beyond the ratchet classes is `2 j_max ceil(k) + S + 10`, so
/// the lattice always has at least `2 j ceil(k) + 2S + 21` sites.
pub fn make_lattice(j_max: usize, k: f64, spec: &RatchetSpec) -> Result<MomentumLattice> {
    if !k.is_finite() {
        return Err(Error::argument("k", format!("kick strength must be finite, got {k}")));
    }
    if k < 0.0 {
        return Err(Error::argument("k", format!("kick strength must be >= 0, got {k}")));
    }
    let half = 2 * j_max as i64 * k.ceil() as i64 + spec.len() as i64 + 10;
    MomentumLattice::new(spec.min_class().min(0) - half, spec.max_class().max(0) + half)
}

/// Internal state. `|2>` is the first basis vector, `|1>` the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spin {
    Two,
    One,
}

/// Two complex amplitude arrays over a momentum lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorWavefunction<T> {
    lattice: MomentumLattice,
    amp2: Vec<Complex<T>>,
    amp1: Vec<Complex<T>>,
}

impl<T: Real> SpinorWavefunction<T> {
    /// Tolerance on `|norm - 1|` accepted at construction.
    pub fn norm_tolerance() -> T {
        T::epsilon() * T::lit(4096.0)
    }

    /// Wraps amplitude arrays; they must cover the lattice and be normalized.
    pub fn from_amplitudes(
        lattice: MomentumLattice,
        amp2: Vec<Complex<T>>,
        amp1: Vec<Complex<T>>,
    ) -> Result<Self> {
        let state = Self::from_raw(lattice, amp2, amp1)?;
        let norm = state.norm_sqr();
        if (norm - T::one()).abs() > Self::norm_tolerance() {
            return Err(Error::argument("amplitudes", format!("state norm is {norm}, expected 1")));
        }
        Ok(state)
    }

    /// Like [`Self::from_amplitudes`] but rescales to unit norm.
    pub fn normalized(
        lattice: MomentumLattice,
        amp2: Vec<Complex<T>>,
        amp1: Vec<Complex<T>>,
    ) -> Result<Self> {
        let mut state = Self::from_raw(lattice, amp2, amp1)?;
        let norm = state.norm_sqr();
        if norm <= T::zero() {
            return Err(Error::argument("amplitudes", "state has zero norm"));
        }
        let scale = T::one() / norm.sqrt();
        for a in state.amp2.iter_mut().chain(state.amp1.iter_mut()) {
            *a = *a * scale;
        }
        Ok(state)
    }

    fn from_raw(lattice: MomentumLattice, amp2: Vec<Complex<T>>, amp1: Vec<Complex<T>>) -> Result<Self> {
        let size = lattice.size();
        if amp2.len() != size || amp1.len() != size {
            return Err(Error::argument(
                "amplitudes",
                format!(
                    "expected {size} amplitudes per spin, got {} and {}",
                    amp2.len(),
                    amp1.len()
                ),
            ));
        }
        if amp2.iter().chain(&amp1).any(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::argument("amplitudes", "non-finite amplitude"));
        }
        Ok(SpinorWavefunction { lattice, amp2, amp1 })
    }

    /// Used by the evolution operators, which preserve the norm themselves.
    pub(crate) fn from_parts(lattice: MomentumLattice, amp2: Vec<Complex<T>>, amp1: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(amp2.len(), lattice.size());
        debug_assert_eq!(amp1.len(), lattice.size());
        SpinorWavefunction { lattice, amp2, amp1 }
    }

    pub fn lattice(&self) -> &MomentumLattice {
        &self.lattice
    }

    pub fn amps2(&self) -> &[Complex<T>] {
        &self.amp2
    }

    pub fn amps1(&self) -> &[Complex<T>] {
        &self.amp1
    }

    pub fn amps(&self, spin: Spin) -> &[Complex<T>] {
        match spin {
            Spin::Two => &self.amp2,
            Spin::One => &self.amp1,
        }
    }

    /// Amplitude at momentum `n`, zero outside the lattice.
    pub fn amp(&self, spin: Spin, n: i64) -> Complex<T> {
        self.lattice
            .index_of(n)
            .map(|i| self.amps(spin)[i])
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    pub fn norm_sqr(&self) -> T {
        self.amp2.iter().chain(&self.amp1).map(|a| a.norm_sqr()).sum()
    }

    /// `P_2(n)`, `P_1(n)` over the lattice.
    pub fn spin_probabilities(&self) -> (Vec<T>, Vec<T>) {
        (
            self.amp2.iter().map(|a| a.norm_sqr()).collect(),
            self.amp1.iter().map(|a| a.norm_sqr()).collect(),
        )
    }

    /// `P(n) = P_1(n) + P_2(n)` over the lattice.
    pub fn probabilities(&self) -> Vec<T> {
        self.amp2
            .iter()
            .zip(&self.amp1)
            .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
            .collect()
    }

    pub(crate) fn into_parts(self) -> (MomentumLattice, Vec<Complex<T>>, Vec<Complex<T>>) {
        (self.lattice, self.amp2, self.amp1)
    }
}

/// Ratchet walker state placed entirely in one internal state.
pub fn ratchet_state<T: Real>(
    spec: &RatchetSpec,
    lattice: &MomentumLattice,
    spin: Spin,
) -> Result<SpinorWavefunction<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let mut walker = vec![zero; lattice.size()];
    for &s in spec.classes() {
        let index = lattice.index_of(s).ok_or(Error::Range {
            class: s,
            n_min: lattice.n_min(),
            n_max: lattice.n_max(),
        })?;
        walker[index] = spec.amplitude(s);
    }
    let empty = vec![zero; lattice.size()];
    let (amp2, amp1) = match spin {
        Spin::Two => (walker, empty),
        Spin::One => (empty, walker),
    };
    SpinorWavefunction::from_amplitudes(*lattice, amp2, amp1)
}
