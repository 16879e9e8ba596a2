//! Bessel functions of the first kind and integer order.
//!
//! Values come from Miller's downward recurrence
//! `J_{m-1}(x) = (2m/x) J_m(x) - J_{m+1}(x)`, started well above both the
//! highest requested order and the argument, and normalized with
//! `J_0(x) + 2 * sum_{k>=1} J_{2k}(x) = 1`. The recurrence is stable in the
//! downward direction, so small high-order values keep their relative
//! accuracy, which matters for the far tails of the kick kernel.

use crate::scalar::{parity_sign, Real};

/// `J_order(x)` for every order in `0..=max_order`, for `x >= 0`.
///
/// Panics if `x` is negative or not finite; use [`bessel_j`] for signed
/// arguments.
pub fn bessel_j_orders<T: Real>(max_order: usize, x: T) -> Vec<T> {
    assert!(
        x.is_finite() && x >= T::zero(),
        "bessel_j_orders needs a finite nonnegative argument"
    );
    let mut out = vec![T::zero(); max_order + 1];
    if x == T::zero() {
        out[0] = T::one();
        return out;
    }
    if x <= T::epsilon() {
        // leading term of the power series; relative error O(x^2)
        let half = x / T::lit(2.0);
        let mut term = T::one();
        for (m, slot) in out.iter_mut().enumerate() {
            if m > 0 {
                term = term * half / T::from_int(m as i64);
            }
            *slot = term;
        }
        return out;
    }

    let x_ceil = x.ceil().to_usize().unwrap_or(usize::MAX / 4);
    let base = max_order.max(x_ceil);
    let pad = 20 + (6.0 * (base as f64).cbrt()).ceil() as usize;
    let mut start = base + pad;
    if start % 2 == 1 {
        start += 1;
    }

    let rescale_at = T::max_value().sqrt().sqrt();
    let two_over_x = T::lit(2.0) / x;
    let mut upper = T::zero(); // J_{m+1}
    let mut current = T::one() / rescale_at; // J_m, arbitrary seed
    let mut norm = T::zero();
    for m in (1..=start).rev() {
        let lower = T::from_int(m as i64) * two_over_x * current - upper;
        upper = current;
        current = lower;
        let order = m - 1;
        if order <= max_order {
            out[order] = current;
        }
        if order % 2 == 0 && order > 0 {
            norm += T::lit(2.0) * current;
        }
        if current.abs() > rescale_at {
            let shrink = T::one() / rescale_at;
            current = current * shrink;
            upper = upper * shrink;
            norm = norm * shrink;
            for v in out.iter_mut().skip(order) {
                *v = *v * shrink;
            }
        }
    }
    norm += current; // J_0 term
    for v in out.iter_mut() {
        *v = *v / norm;
    }
    out
}

/// `J_n(x)` for any integer order and any real argument.
///
/// Uses `J_{-n}(x) = (-1)^n J_n(x)` and `J_n(-x) = (-1)^n J_n(x)`.
pub fn bessel_j<T: Real>(n: i64, x: T) -> T {
    let order = n.unsigned_abs() as usize;
    let value = bessel_j_orders(order, x.abs())[order];
    let mut sign = T::one();
    if n < 0 {
        sign = sign * parity_sign::<T>(n);
    }
    if x < T::zero() {
        sign = sign * parity_sign::<T>(n);
    }
    sign * value
}

/// Cached `J_m(x)` for one argument over a symmetric order range.
#[derive(Debug, Clone)]
pub struct BesselTable<T> {
    x: T,
    values: Vec<T>,
}

impl<T: Real> BesselTable<T> {
    /// Table for orders `-max_order..=max_order`.
    pub fn new(x: T, max_order: usize) -> Self {
        BesselTable {
            x,
            values: bessel_j_orders(max_order, x.abs()),
        }
    }

    pub fn argument(&self) -> T {
        self.x
    }

    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    /// `J_n(x)`; orders beyond the table are treated as zero.
    pub fn get(&self, n: i64) -> T {
        let order = n.unsigned_abs() as usize;
        let Some(&v) = self.values.get(order) else {
            return T::zero();
        };
        let mut flips = 0;
        if n < 0 {
            flips += n;
        }
        if self.x < T::zero() {
            flips += n;
        }
        parity_sign::<T>(flips) * v
    }
}

/// Smallest order `q >= |x|` beyond which `|J_q(x)|` stays below `cutoff`.
pub fn tail_order<T: Real>(x: T, cutoff: T) -> usize {
    let x = x.abs();
    if x == T::zero() {
        return 0;
    }
    let guess = (x.ceil().to_usize().unwrap_or(0) + 60).max(8);
    let values = bessel_j_orders(guess, x);
    let floor = x.floor().to_usize().unwrap_or(0);
    for q in floor..=guess {
        if values[q..].iter().all(|v| v.abs() < cutoff) {
            return q;
        }
    }
    guess
}
