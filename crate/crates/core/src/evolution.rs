//! Floquet operators of the spinor kicked rotor and full walk protocols.
//!
//! One period is `U = U_f U_k`: the kick `e^{-i sigma_z k cos(theta)}`
//! (optionally with the light-shift offset `e^{-i sigma_z k}`) followed by
//! free evolution `e^{-i tau (n + beta)^2 / 2}`. In the momentum basis the
//! kick is a banded convolution with Bessel weights,
//! `<n| e^{-ik cos theta} |m> = (-i)^{n-m} J_{n-m}(k)`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::bessel::{bessel_j_orders, tail_order};
use crate::error::{Error, Result};
use crate::gates::{hadamard_gate, mw_gate, w_gate, y_gate, CoinGate};
use crate::lattice::{MomentumLattice, SpinorWavefunction};
use crate::scalar::{cis, i_pow, Real};

/// Probability allowed to leave the lattice in one kick before it is an error.
pub const MAX_EDGE_LEAKAGE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KickParams<T> {
    k: T,
    tau: T,
    light_shift: bool,
}

impl<T: Real> KickParams<T> {
    pub fn new(k: T, tau: T, light_shift: bool) -> Result<Self> {
        if !(k.is_finite() && k >= T::zero()) {
            return Err(Error::argument("k", format!("kick strength must be finite and >= 0, got {k}")));
        }
        if !(tau.is_finite() && tau > T::zero()) {
            return Err(Error::argument("tau", format!("kick period must be finite and > 0, got {tau}")));
        }
        Ok(KickParams { k, tau, light_shift })
    }

    /// Kicks at the Talbot time `tau = 4 pi`, where free evolution is trivial at `beta = 0`.
    pub fn resonant(k: T) -> Result<Self> {
        Self::new(k, talbot_time(), false)
    }

    pub fn with_light_shift(mut self, on: bool) -> Self {
        self.light_shift = on;
        self
    }

    pub fn k(&self) -> T {
        self.k
    }

    pub fn tau(&self) -> T {
        self.tau
    }

    pub fn light_shift(&self) -> bool {
        self.light_shift
    }
}

/// `4 pi`.
pub fn talbot_time<T: Real>() -> T {
    T::PI() * T::lit(4.0)
}

/// Where the step coin sits inside one walk step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoinPosition {
    /// coin, kick, free evolution
    #[default]
    BeforeKick,
    /// kick, coin, free evolution
    AfterKick,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkProtocol<T> {
    pub init_coin: CoinGate<T>,
    pub step_coin: CoinGate<T>,
    pub light_shift: bool,
    pub coin_position: CoinPosition,
}

impl<T: Real> WalkProtocol<T> {
    pub fn new(init_coin: CoinGate<T>, step_coin: CoinGate<T>, light_shift: bool) -> Self {
        WalkProtocol {
            init_coin,
            step_coin,
            light_shift,
            coin_position: CoinPosition::default(),
        }
    }

    /// Initialized by `W`, executed by `Y`.
    pub fn original() -> Self {
        Self::new(w_gate(), y_gate(), false)
    }

    /// Initialized by `Y`, executed by the Hadamard coin.
    pub fn swapped() -> Self {
        Self::new(y_gate(), hadamard_gate(), false)
    }

    /// Initialized by `Y`, executed by `M(pi/2, chi)` pulses, with the
    /// light-shift phase carried by every kick.
    pub fn lightshift_raw(chi: T) -> Result<Self> {
        Ok(Self::new(y_gate(), mw_gate(T::FRAC_PI_2(), chi)?, true))
    }

    pub fn with_coin_position(mut self, position: CoinPosition) -> Self {
        self.coin_position = position;
        self
    }
}

/// Precomputed banded kick operator for one kick strength.
#[derive(Debug, Clone)]
pub struct KickKernel<T> {
    reach: usize,
    /// weights for spin |2>, `(-i)^q J_q(k)` at index `q + reach`
    weights2: Vec<Complex<T>>,
    /// weights for spin |1>, `i^q J_q(k)`
    weights1: Vec<Complex<T>>,
}

impl<T: Real> KickKernel<T> {
    pub fn new(params: &KickParams<T>) -> Self {
        let k = params.k();
        let reach = tail_order(k, T::epsilon() * T::lit(1e-3));
        let bessel = bessel_j_orders(reach, k);
        let (shift2, shift1) = if params.light_shift() {
            (cis(-k), cis(k))
        } else {
            let one = Complex::new(T::one(), T::zero());
            (one, one)
        };
        let mut weights2 = Vec::with_capacity(2 * reach + 1);
        let mut weights1 = Vec::with_capacity(2 * reach + 1);
        for q in -(reach as i64)..=reach as i64 {
            let jq = bessel[q.unsigned_abs() as usize] * if q < 0 && q % 2 != 0 { -T::one() } else { T::one() };
            weights2.push(i_pow::<T>(-q) * jq * shift2);
            weights1.push(i_pow::<T>(q) * jq * shift1);
        }
        KickKernel {
            reach,
            weights2,
            weights1,
        }
    }

    /// Largest momentum transfer kept in the kernel.
    pub fn reach(&self) -> usize {
        self.reach
    }

    pub fn apply(&self, state: SpinorWavefunction<T>) -> Result<SpinorWavefunction<T>> {
        let (lattice, amp2, amp1) = state.into_parts();
        let size = lattice.size();
        let reach = self.reach;
        let zero = Complex::new(T::zero(), T::zero());
        let mut out2 = vec![zero; size + 2 * reach];
        let mut out1 = vec![zero; size + 2 * reach];
        for (m, (&a2, &a1)) in amp2.iter().zip(&amp1).enumerate() {
            if a2 != zero {
                for (slot, &w) in out2[m..m + 2 * reach + 1].iter_mut().zip(&self.weights2) {
                    *slot += w * a2;
                }
            }
            if a1 != zero {
                for (slot, &w) in out1[m..m + 2 * reach + 1].iter_mut().zip(&self.weights1) {
                    *slot += w * a1;
                }
            }
        }
        let outside = |v: &[Complex<T>]| -> T {
            v[..reach]
                .iter()
                .chain(&v[reach + size..])
                .map(|a| a.norm_sqr())
                .sum()
        };
        let leakage = (outside(&out2) + outside(&out1)).as_f64();
        if leakage > MAX_EDGE_LEAKAGE {
            return Err(Error::Truncation {
                leakage,
                n_min: lattice.n_min(),
                n_max: lattice.n_max(),
            });
        }
        out2.truncate(reach + size);
        out2.drain(..reach);
        out1.truncate(reach + size);
        out1.drain(..reach);
        Ok(SpinorWavefunction::from_parts(lattice, out2, out1))
    }
}

/// Applies one kick (with the light-shift offset if `params` asks for it).
pub fn apply_kick<T: Real>(state: &SpinorWavefunction<T>, params: &KickParams<T>) -> Result<SpinorWavefunction<T>> {
    KickKernel::new(params).apply(state.clone())
}

fn check_beta<T: Real>(beta: T) -> Result<T> {
    if beta.is_finite() && beta >= T::zero() && beta < T::one() {
        Ok(beta)
    } else {
        Err(Error::argument("beta", format!("quasimomentum must lie in [0, 1), got {beta}")))
    }
}

/// Diagonal free-evolution phases `e^{-i tau (n + beta)^2 / 2}` on a lattice.
#[derive(Debug, Clone)]
pub struct FreePhases<T> {
    phases: Vec<Complex<T>>,
}

impl<T: Real> FreePhases<T> {
    pub fn new(lattice: &MomentumLattice, tau: T, beta: T) -> Result<Self> {
        let beta = check_beta(beta)?;
        if !(tau.is_finite() && tau > T::zero()) {
            return Err(Error::argument("tau", format!("kick period must be finite and > 0, got {tau}")));
        }
        // phase = 2 pi * turns, turns = (tau / 4pi) (n + beta)^2; the integer
        // part n^2 is reduced separately so resonance gives exact unit phases
        let ratio = tau / talbot_time();
        let phases = lattice
            .momenta()
            .map(|n| {
                let nf = T::from_int(n);
                let whole = ratio * T::from_int(n * n);
                let rest = ratio * (T::lit(2.0) * nf * beta + beta * beta);
                let turns = (whole - whole.floor()) + (rest - rest.floor());
                cis(-T::TAU() * turns)
            })
            .collect();
        Ok(FreePhases { phases })
    }

    pub fn apply(&self, state: SpinorWavefunction<T>) -> SpinorWavefunction<T> {
        let (lattice, mut amp2, mut amp1) = state.into_parts();
        for ((a2, a1), &p) in amp2.iter_mut().zip(amp1.iter_mut()).zip(&self.phases) {
            *a2 = *a2 * p;
            *a1 = *a1 * p;
        }
        SpinorWavefunction::from_parts(lattice, amp2, amp1)
    }
}

/// Free evolution over one period at quasimomentum `beta`.
pub fn apply_free<T: Real>(state: &SpinorWavefunction<T>, tau: T, beta: T) -> Result<SpinorWavefunction<T>> {
    Ok(FreePhases::new(state.lattice(), tau, beta)?.apply(state.clone()))
}

/// Applies `gate` to the internal state at every momentum class.
pub fn apply_coin<T: Real>(state: &SpinorWavefunction<T>, gate: &CoinGate<T>) -> SpinorWavefunction<T> {
    coin_owned(state.clone(), gate)
}

fn coin_owned<T: Real>(state: SpinorWavefunction<T>, gate: &CoinGate<T>) -> SpinorWavefunction<T> {
    let (lattice, mut amp2, mut amp1) = state.into_parts();
    for (a2, a1) in amp2.iter_mut().zip(amp1.iter_mut()) {
        (*a2, *a1) = gate.apply(*a2, *a1);
    }
    SpinorWavefunction::from_parts(lattice, amp2, amp1)
}

/// Step-by-step driver for one walk at fixed quasimomentum.
#[derive(Debug, Clone)]
pub struct Walker<T> {
    protocol: WalkProtocol<T>,
    kernel: KickKernel<T>,
    free: FreePhases<T>,
    state: SpinorWavefunction<T>,
    steps_done: usize,
}

impl<T: Real> Walker<T> {
    /// The light shift is active when either the protocol or `params` sets it.
    pub fn new(
        protocol: &WalkProtocol<T>,
        initial: SpinorWavefunction<T>,
        params: &KickParams<T>,
        beta: T,
    ) -> Result<Self> {
        let params = params.with_light_shift(params.light_shift() || protocol.light_shift);
        Ok(Walker {
            protocol: protocol.clone(),
            kernel: KickKernel::new(&params),
            free: FreePhases::new(initial.lattice(), params.tau(), beta)?,
            state: initial,
            steps_done: 0,
        })
    }

    pub fn state(&self) -> &SpinorWavefunction<T> {
        &self.state
    }

    pub fn steps_done(&self) -> usize {
        self.steps_done
    }

    /// Advances one step. The first step is opened by the initializing coin.
    pub fn step(&mut self) -> Result<()> {
        let first = self.steps_done == 0;
        let mut state = self.state.clone();
        match self.protocol.coin_position {
            CoinPosition::BeforeKick => {
                let coin = if first { &self.protocol.init_coin } else { &self.protocol.step_coin };
                state = coin_owned(state, coin);
                state = self.kernel.apply(state)?;
            }
            CoinPosition::AfterKick => {
                if first {
                    state = coin_owned(state, &self.protocol.init_coin);
                }
                state = self.kernel.apply(state)?;
                state = coin_owned(state, &self.protocol.step_coin);
            }
        }
        self.state = self.free.apply(state);
        self.steps_done += 1;
        Ok(())
    }
}

/// `P_total`, `P_2`, `P_1` for steps `0..=steps` over one lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionHistory<T> {
    lattice: MomentumLattice,
    total: Vec<Vec<T>>,
    spin2: Vec<Vec<T>>,
    spin1: Vec<Vec<T>>,
}

impl<T: Real> DistributionHistory<T> {
    fn empty(lattice: MomentumLattice) -> Self {
        DistributionHistory {
            lattice,
            total: Vec::new(),
            spin2: Vec::new(),
            spin1: Vec::new(),
        }
    }

    fn record(&mut self, state: &SpinorWavefunction<T>) {
        let (p2, p1) = state.spin_probabilities();
        self.total.push(p2.iter().zip(&p1).map(|(a, b)| *a + *b).collect());
        self.spin2.push(p2);
        self.spin1.push(p1);
    }

    pub fn lattice(&self) -> &MomentumLattice {
        &self.lattice
    }

    /// Number of walk steps recorded after the initial distribution.
    pub fn steps(&self) -> usize {
        self.total.len() - 1
    }

    pub fn total(&self, step: usize) -> &[T] {
        &self.total[step]
    }

    pub fn spin2(&self, step: usize) -> &[T] {
        &self.spin2[step]
    }

    pub fn spin1(&self, step: usize) -> &[T] {
        &self.spin1[step]
    }

    pub fn totals(&self) -> &[Vec<T>] {
        &self.total
    }

    /// `sum_n P_total(n, step)`.
    pub fn norm(&self, step: usize) -> T {
        self.total[step].iter().copied().sum()
    }

    /// `P_total` as a matrix with rows indexed by momentum and columns by step.
    pub fn to_matrix(&self) -> ndarray::Array2<T> {
        let size = self.lattice.size();
        ndarray::Array2::from_shape_fn((size, self.total.len()), |(i, j)| self.total[j][i])
    }

    /// Adds `other` pointwise; lattices and step counts must match.
    pub(crate) fn accumulate(&mut self, other: &Self) {
        assert_eq!(self.lattice, other.lattice);
        assert_eq!(self.total.len(), other.total.len());
        for (mine, theirs) in [
            (&mut self.total, &other.total),
            (&mut self.spin2, &other.spin2),
            (&mut self.spin1, &other.spin1),
        ] {
            for (row, orow) in mine.iter_mut().zip(theirs) {
                for (a, b) in row.iter_mut().zip(orow) {
                    *a += *b;
                }
            }
        }
    }

    pub(crate) fn scale(&mut self, factor: T) {
        for v in self
            .total
            .iter_mut()
            .chain(self.spin2.iter_mut())
            .chain(self.spin1.iter_mut())
            .flatten()
        {
            *v *= factor;
        }
    }
}

/// Runs `steps` walk steps from `initial` and records the distribution after
/// every step, including step 0.
pub fn run_walk<T: Real>(
    protocol: &WalkProtocol<T>,
    initial: &SpinorWavefunction<T>,
    steps: usize,
    params: &KickParams<T>,
    beta: T,
) -> Result<DistributionHistory<T>> {
    let mut walker = Walker::new(protocol, initial.clone(), params, beta)?;
    let mut history = DistributionHistory::empty(*initial.lattice());
    history.record(walker.state());
    for _ in 0..steps {
        walker.step()?;
        history.record(walker.state());
    }
    Ok(history)
}

/// Kick applied by sampling on an angle grid: synthesize the wavefunction at
/// `grid_points` angles, multiply by `e^{-/+ ik cos theta}`, and project back
/// onto the lattice by direct quadrature. Independent of the Bessel kernel.
pub fn quadrature_kick_oracle<T: Real>(
    state: &SpinorWavefunction<T>,
    params: &KickParams<T>,
    grid_points: usize,
) -> Result<SpinorWavefunction<T>> {
    let lattice = *state.lattice();
    let size = lattice.size();
    let required = 4 * size;
    if grid_points < required {
        return Err(Error::Aliasing {
            grid_points,
            lattice_size: size,
            required,
        });
    }
    let g = grid_points as i64;
    // e^{i 2pi r / G} for r in 0..G, indexed by (n * grid) mod G
    let roots: Vec<Complex<T>> = (0..g)
        .map(|r| cis(T::TAU() * T::from_int(r) / T::from_int(g)))
        .collect();
    let root = |n: i64, point: i64| roots[(n * point).rem_euclid(g) as usize];
    let k = params.k();
    let zero = Complex::new(T::zero(), T::zero());
    let mut kicked2 = vec![zero; grid_points];
    let mut kicked1 = vec![zero; grid_points];
    for point in 0..g {
        let theta = T::TAU() * T::from_int(point) / T::from_int(g);
        let (mut f2, mut f1) = (zero, zero);
        for (i, n) in lattice.momenta().enumerate() {
            let w = root(n, point);
            f2 += state.amps2()[i] * w;
            f1 += state.amps1()[i] * w;
        }
        let mut phase = k * theta.cos();
        if params.light_shift() {
            phase += k;
        }
        kicked2[point as usize] = f2 * cis(-phase);
        kicked1[point as usize] = f1 * cis(phase);
    }
    let inv = T::one() / T::from_int(g);
    let mut amp2 = vec![zero; size];
    let mut amp1 = vec![zero; size];
    for (i, n) in lattice.momenta().enumerate() {
        let (mut c2, mut c1) = (zero, zero);
        for point in 0..g {
            let w = root(n, point).conj();
            c2 += kicked2[point as usize] * w;
            c1 += kicked1[point as usize] * w;
        }
        amp2[i] = c2 * inv;
        amp1[i] = c1 * inv;
    }
    Ok(SpinorWavefunction::from_parts(lattice, amp2, amp1))
}
