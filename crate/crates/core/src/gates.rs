//! 2x2 coin unitaries acting on the internal state at every momentum class.
//!
//! Basis order is `(|2>, |1>)`; `sigma_z` has eigenvalue `+1` on `|2>`.
//! Global phases are kept as constructed.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cis, Real};

/// Row-major 2x2 complex unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinGate<T> {
    m: [[Complex<T>; 2]; 2],
}

impl<T: Real> CoinGate<T> {
    /// Entrywise tolerance on `M M^dagger = I` accepted at construction.
    pub fn unitarity_tolerance() -> T {
        T::epsilon() * T::lit(4096.0)
    }

    /// Builds a gate from its entries, rejecting non-unitary matrices.
    pub fn from_entries(m11: Complex<T>, m12: Complex<T>, m21: Complex<T>, m22: Complex<T>) -> Result<Self> {
        let gate = CoinGate {
            m: [[m11, m12], [m21, m22]],
        };
        let err = gate.unitarity_error();
        if !(err <= Self::unitarity_tolerance()) {
            return Err(Error::argument("gate", format!("matrix is not unitary (max |MM^+ - I| = {err})")));
        }
        Ok(gate)
    }

    pub fn identity() -> Self {
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        CoinGate {
            m: [[one, zero], [zero, one]],
        }
    }

    pub fn entries(&self) -> [[Complex<T>; 2]; 2] {
        self.m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.m[row][col]
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        let mut m = [[Complex::new(T::zero(), T::zero()); 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = self.m[r][0] * rhs.m[0][c] + self.m[r][1] * rhs.m[1][c];
            }
        }
        CoinGate { m }
    }

    pub fn dagger(&self) -> Self {
        let m = self.m;
        CoinGate {
            m: [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]],
        }
    }

    /// Multiplies every entry by `factor`.
    pub fn scaled(&self, factor: Complex<T>) -> Self {
        let mut m = self.m;
        m.iter_mut().flatten().for_each(|e| *e = *e * factor);
        CoinGate { m }
    }

    /// `(b2, b1) = M (a2, a1)`.
    #[inline]
    pub fn apply(&self, a2: Complex<T>, a1: Complex<T>) -> (Complex<T>, Complex<T>) {
        (
            self.m[0][0] * a2 + self.m[0][1] * a1,
            self.m[1][0] * a2 + self.m[1][1] * a1,
        )
    }

    /// Largest entrywise deviation of `M M^dagger` from the identity.
    pub fn unitarity_error(&self) -> T {
        let product = self.compose(&self.dagger());
        let mut worst = T::zero();
        for r in 0..2 {
            for c in 0..2 {
                let target = if r == c { T::one() } else { T::zero() };
                worst = worst.max((product.m[r][c] - Complex::new(target, T::zero())).norm());
            }
        }
        worst
    }

    /// Largest entrywise distance to another gate.
    pub fn distance(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.m[r][c] - other.m[r][c]).norm());
            }
        }
        worst
    }
}

/// Two lines of `(re,im)` pairs separated by a space, 17 significant digits.
impl<T: Real> fmt::Display for CoinGate<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.m {
            writeln!(
                f,
                "({:.16e},{:.16e}) ({:.16e},{:.16e})",
                row[0].re, row[0].im, row[1].re, row[1].im
            )?;
        }
        Ok(())
    }
}

fn finite<T: Real>(field: &'static str, value: T) -> Result<T> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::argument(field, format!("must be finite, got {value}")))
    }
}

/// Microwave rotation `M(alpha, chi)`:
/// `[[cos(a/2), e^{-i chi} sin(a/2)], [-e^{i chi} sin(a/2), cos(a/2)]]`.
pub fn mw_gate<T: Real>(alpha: T, chi: T) -> Result<CoinGate<T>> {
    let alpha = finite("alpha", alpha)?;
    let chi = finite("chi", chi)?;
    let half = alpha / T::lit(2.0);
    let (s, c) = half.sin_cos();
    let diag = Complex::new(c, T::zero());
    Ok(CoinGate {
        m: [[diag, cis(-chi) * s], [-cis(chi) * s, diag]],
    })
}

/// `(1/sqrt2) [[1, 1], [-1, 1]]`, the walk-initializing coin of the original protocol.
pub fn w_gate<T: Real>() -> CoinGate<T> {
    let r = T::FRAC_1_SQRT_2();
    let z = T::zero();
    CoinGate {
        m: [[Complex::new(r, z), Complex::new(r, z)], [Complex::new(-r, z), Complex::new(r, z)]],
    }
}

/// `(1/sqrt2) [[1, i], [i, 1]]`.
pub fn y_gate<T: Real>() -> CoinGate<T> {
    let r = T::FRAC_1_SQRT_2();
    let z = T::zero();
    CoinGate {
        m: [[Complex::new(r, z), Complex::new(z, r)], [Complex::new(z, r), Complex::new(r, z)]],
    }
}

/// `(1/sqrt2) [[1, 1], [1, -1]]`.
pub fn hadamard_gate<T: Real>() -> CoinGate<T> {
    let r = T::FRAC_1_SQRT_2();
    let z = T::zero();
    CoinGate {
        m: [[Complex::new(r, z), Complex::new(r, z)], [Complex::new(r, z), Complex::new(-r, z)]],
    }
}

/// `diag(e^{-ik}, e^{ik}) = e^{-ik sigma_z}`, the constant light-shift phase of one kick.
pub fn light_shift_phase<T: Real>(k: T) -> Result<CoinGate<T>> {
    let k = finite("k", k)?;
    let zero = Complex::new(T::zero(), T::zero());
    Ok(CoinGate {
        m: [[cis(-k), zero], [zero, cis(k)]],
    })
}

/// Effective coin of a `M(pi/2, chi)` pulse following a light-shifted kick:
/// `M(pi/2, chi) e^{-ik sigma_z}`.
pub fn lightshift_coin<T: Real>(chi: T, k: T) -> Result<CoinGate<T>> {
    Ok(mw_gate(T::FRAC_PI_2(), chi)?.compose(&light_shift_phase(k)?))
}
