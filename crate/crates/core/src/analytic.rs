//! Closed-form momentum distribution of the resonant Hadamard-executed walk.
//!
//! After `T = N + 1` steps of `U = G_H diag(e^{-ik cos}, e^{ik cos})` the
//! upper matrix elements are `e^{-ik cos} p_1` and `e^{ik cos} p_2`, where
//! `p_{1,2}` are Laurent polynomials in `w = e^{ik cos theta}` obeying
//! `p^(N) = z~ p^(N-1) + 2 p^(N-2)` with `z = w^{-1} + w`, `z~ = w^{-1} - w`.
//! Writing `p = sum_l a_l w^{N-2l}`, the coefficients have closed forms as
//! triple binomial sums; they are evaluated here in exact arithmetic and
//! cross-checked against the recursion.
//!
//! The coefficients reach `~3^N` with alternating signs, so floating point
//! is only used at the last stage, when the Bessel sums are formed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bessel::BesselTable;
use crate::error::{Error, Result};
use crate::gates::hadamard_gate;
use crate::lattice::{MomentumLattice, RatchetSpec};
use crate::scalar::{cis, parity_sign, Real};

/// Default largest step index accepted by [`coefficients_closed_form`].
pub const MAX_ORDER: usize = 64;

/// Probability missing from the lattice before the analytic distribution is
/// reported as truncated.
pub const MAX_ANALYTIC_LEAKAGE: f64 = 1e-9;

/// Finite Laurent polynomial in one formal variable, stored densely from its
/// lowest exponent upward.
#[derive(Debug, Clone)]
pub struct LaurentPolynomial<C> {
    low: i64,
    coeffs: Vec<C>,
}

impl<C> PartialEq for LaurentPolynomial<C>
where
    C: Clone + num_traits::Num,
{
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.clone().trimmed(), other.clone().trimmed());
        a.coeffs.is_empty() && b.coeffs.is_empty() || (a.low == b.low && a.coeffs == b.coeffs)
    }
}

impl<C> LaurentPolynomial<C>
where
    C: Clone + num_traits::Num,
{
    pub fn zero() -> Self {
        LaurentPolynomial {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    /// `c w^exponent`.
    pub fn monomial(c: C, exponent: i64) -> Self {
        LaurentPolynomial {
            low: exponent,
            coeffs: vec![c],
        }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// `z = w^{-1} + w`.
    pub fn z() -> Self {
        Self::from_terms([(-1, C::one()), (1, C::one())])
    }

    /// `z~ = w^{-1} - w`.
    pub fn z_tilde() -> Self {
        Self::from_terms([(-1, C::one()), (1, C::zero() - C::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut acc: BTreeMap<i64, C> = BTreeMap::new();
        for (e, c) in terms {
            let slot = acc.entry(e).or_insert_with(C::zero);
            *slot = slot.clone() + c;
        }
        let Some((&low, _)) = acc.first_key_value() else {
            return Self::zero();
        };
        let high = *acc.last_key_value().expect("nonempty").0;
        let mut coeffs = vec![C::zero(); (high - low + 1) as usize];
        for (e, c) in acc {
            coeffs[(e - low) as usize] = c;
        }
        LaurentPolynomial { low, coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            return Self::zero();
        }
        self.coeffs.drain(..lead);
        self.low += lead as i64;
        self
    }

    /// Coefficient of `w^exponent`.
    pub fn coefficient(&self, exponent: i64) -> C {
        let i = exponent - self.low;
        if i < 0 {
            return C::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(C::zero)
    }

    /// `(exponent, coefficient)` for every nonzero term, lowest exponent first.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// The `order + 1` coefficients of exponents `order - 2l`, `l = 0..=order`.
    pub fn slots(&self, order: usize) -> Vec<C> {
        (0..=order as i64).map(|l| self.coefficient(order as i64 - 2 * l)).collect()
    }

    /// Inverse of [`Self::slots`].
    pub fn from_slots(slots: &[C]) -> Self {
        let order = slots.len() as i64 - 1;
        Self::from_terms(slots.iter().enumerate().map(|(l, c)| (order - 2 * l as i64, c.clone())))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms().chain(other.terms()).map(|(e, c)| (e, c.clone())))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_terms(
            self.terms()
                .map(|(e, c)| (e, c.clone()))
                .chain(other.terms().map(|(e, c)| (e, C::zero() - c.clone()))),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                terms.push((ea + eb, ca.clone() * cb.clone()));
            }
        }
        Self::from_terms(terms)
    }

    pub fn scale(&self, factor: C) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c.clone() * factor.clone())))
    }

    /// Multiplication by `z~` as shift-and-add: the coefficient of `w^e`
    /// moves to `w^{e-1}` and, negated, to `w^{e+1}`.
    pub fn times_z_tilde(&self) -> Self {
        Self::from_terms(self.terms().flat_map(|(e, c)| [(e - 1, c.clone()), (e + 1, C::zero() - c.clone())]))
    }

    /// Value at `w`, for coefficient types convertible to `f64`.
    pub fn evaluate(&self, w: Complex<f64>) -> Complex<f64>
    where
        C: ToPrimitive,
    {
        self.terms()
            .map(|(e, c)| w.powi(e as i32) * c.to_f64().expect("coefficient fits f64"))
            .sum()
    }
}

/// Coefficients `a_{l,1}`, `a_{l,2}` of `p_1`, `p_2` for step index `N = j - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticCoefficients {
    order: usize,
    a1: Vec<BigRational>,
    a2: Vec<BigRational>,
}

impl AnalyticCoefficients {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn a1(&self) -> &[BigRational] {
        &self.a1
    }

    pub fn a2(&self) -> &[BigRational] {
        &self.a2
    }

    pub fn p1(&self) -> LaurentPolynomial<BigRational> {
        LaurentPolynomial::from_slots(&self.a1)
    }

    pub fn p2(&self) -> LaurentPolynomial<BigRational> {
        LaurentPolynomial::from_slots(&self.a2)
    }
}

/// Pascal triangle with `binomial(a, b) = 0` outside `0 <= b <= a`.
struct Binomials {
    rows: Vec<Vec<BigInt>>,
}

impl Binomials {
    fn up_to(n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![BigInt::one(); i + 1];
            for j in 1..i {
                row[j] = &prev[j - 1] + &prev[j];
            }
            rows.push(row);
        }
        Binomials { rows }
    }

    fn get(&self, a: i64, b: i64) -> BigInt {
        if a < 0 || b < 0 || b > a {
            return BigInt::zero();
        }
        self.rows[a as usize][b as usize].clone()
    }
}

fn signed(power: i64) -> BigInt {
    if power.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn check_order(order: usize, max: usize) -> Result<()> {
    if order > max {
        return Err(Error::Size { requested: order, max });
    }
    Ok(())
}

/// Evaluates the closed-form binomial sums for `a_{l,1}` and `a_{l,2}`.
///
/// Summation limits: `u = 0..=floor(N/2)`; `binomial(a, b)` vanishes for
/// `b < 0` or `b > a`, which also enforces `m <= u`. Both coefficient sets
/// carry the overall sign `(-1)^{N - l + m}`.
pub fn coefficients_closed_form(order: usize) -> Result<AnalyticCoefficients> {
    coefficients_closed_form_with_limit(order, MAX_ORDER)
}

pub fn coefficients_closed_form_with_limit(order: usize, max_order: usize) -> Result<AnalyticCoefficients> {
    check_order(order, max_order)?;
    let n = order as i64;
    let binom = Binomials::up_to(order + 1);
    let c = |a: i64, b: i64| binom.get(a, b);
    let eight_pow = |m: i64| BigInt::from(8u8).pow(m as u32);
    let denominator = BigInt::one() << order;

    let mut a1 = Vec::with_capacity(order + 1);
    let mut a2 = Vec::with_capacity(order + 1);
    for l in 0..=n {
        let mut s1 = BigInt::zero();
        let mut s2 = BigInt::zero();
        for u in 0..=n / 2 {
            let even = c(n, 2 * u);
            let odd = c(n, 2 * u + 1);
            for m in 0..=l {
                let common = c(u, m) * eight_pow(m) * signed(n - l + m);
                if common.is_zero() {
                    continue;
                }
                s1 += (&even - &odd) * c(n - 2 * m, l - m) * &common;
                s1 -= BigInt::from(2) * &odd * c(n - 2 * m - 1, l - m) * &common;
                if m < l {
                    s1 += BigInt::from(2) * &odd * c(n - 2 * m - 1, l - m - 1) * &common;
                }
                s2 += c(n + 1, 2 * u + 1) * c(n - 2 * m, l - m) * &common;
            }
        }
        a1.push(BigRational::new(s1, denominator.clone()));
        a2.push(BigRational::new(s2, denominator.clone()));
    }
    Ok(AnalyticCoefficients { order, a1, a2 })
}

/// `p_1`, `p_2` of order `N` built by exact shift-and-add from
/// `p^(0) = 1`, `p_1^(1) = z`, `p_2^(1) = z~`.
pub fn polynomials_recursion(order: usize) -> (LaurentPolynomial<BigRational>, LaurentPolynomial<BigRational>) {
    type P = LaurentPolynomial<BigRational>;
    let run = |first: P| -> P {
        let mut prev = P::constant(BigRational::one());
        if order == 0 {
            return prev;
        }
        let mut cur = first;
        let two = BigRational::from_integer(BigInt::from(2));
        for _ in 2..=order {
            let next = cur.times_z_tilde().add(&prev.scale(two.clone()));
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    };
    (run(P::z()), run(P::z_tilde()))
}

/// Coefficients from the recursion; the independent check on the closed forms.
pub fn coefficients_recursion(order: usize) -> Result<AnalyticCoefficients> {
    check_order(order, MAX_ORDER)?;
    let (p1, p2) = polynomials_recursion(order);
    Ok(AnalyticCoefficients {
        order,
        a1: p1.slots(order),
        a2: p2.slots(order),
    })
}

/// `2^N a_l` as integers; `None` if some coefficient is not of that form.
pub fn scaled_integer_coefficients(coeffs: &AnalyticCoefficients) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let scale = BigRational::from_integer(BigInt::one() << coeffs.order);
    let lift = |v: &[BigRational]| -> Option<Vec<BigInt>> {
        v.iter()
            .map(|a| {
                let s = a * &scale;
                s.is_integer().then(|| s.to_integer())
            })
            .collect()
    };
    Some((lift(&coeffs.a1)?, lift(&coeffs.a2)?))
}

fn rational_to<T: Real>(value: &BigRational) -> T {
    let f = value.to_f64().unwrap_or_else(|| {
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    });
    T::lit(f)
}

/// Momentum distribution after `steps` steps of the `Y`-initialized,
/// Hadamard-executed walk at `beta = 0`, `tau = 4 pi`, from the ratchet `spec`:
///
/// `P(n) = 1/(2^{j+1} S) [ (sum_{l,s} a_{l,1} (-1)^s J_{n-s}((N-2l-1)k))^2
///        + (sum a_{l,2} (-1)^s J_{n-s}((N-2l+1)k))^2 + the same two with -k ]`.
pub fn analytic_distribution<T: Real>(
    steps: usize,
    k: T,
    spec: &RatchetSpec,
    lattice: &MomentumLattice,
) -> Result<Vec<T>> {
    if steps == 0 {
        return Err(Error::argument("j", "the closed form needs at least one step"));
    }
    if !(k.is_finite() && k >= T::zero()) {
        return Err(Error::argument("k", format!("kick strength must be finite and >= 0, got {k}")));
    }
    for &s in spec.classes() {
        if !lattice.contains(s) {
            return Err(Error::Range {
                class: s,
                n_min: lattice.n_min(),
                n_max: lattice.n_max(),
            });
        }
    }
    let order = steps - 1;
    let coeffs = coefficients_closed_form(order)?;
    let a1: Vec<T> = coeffs.a1().iter().map(rational_to).collect();
    let a2: Vec<T> = coeffs.a2().iter().map(rational_to).collect();

    // every Bessel argument is c k with |c| <= N + 1
    let max_order = spec
        .classes()
        .iter()
        .map(|&s| (lattice.n_max() - s).max(s - lattice.n_min()))
        .max()
        .expect("nonempty spec") as usize;
    let n = order as i64;
    let table_for = |multiple: i64| BesselTable::new(T::from_int(multiple) * k, max_order);
    let tables: BTreeMap<i64, BesselTable<T>> = (-(n + 1)..=n + 1).map(|c| (c, table_for(c))).collect();

    let prefactor = T::one() / (T::lit(2.0).powi(steps as i32 + 1) * T::from_int(spec.len() as i64));
    let distribution: Vec<T> = lattice
        .momenta()
        .map(|momentum| {
            let mut sums = [T::zero(); 4];
            for l in 0..=n {
                let c1 = n - 2 * l - 1;
                let c2 = n - 2 * l + 1;
                for &s in spec.classes() {
                    let sign = parity_sign::<T>(s);
                    let order = momentum - s;
                    let (w1, w2) = (a1[l as usize] * sign, a2[l as usize] * sign);
                    sums[0] += w1 * tables[&c1].get(order);
                    sums[1] += w2 * tables[&c2].get(order);
                    sums[2] += w1 * tables[&-c1].get(order);
                    sums[3] += w2 * tables[&-c2].get(order);
                }
            }
            prefactor * sums.iter().map(|&x| x * x).sum::<T>()
        })
        .collect();

    let missing = (T::one() - distribution.iter().copied().sum::<T>()).as_f64();
    if missing > MAX_ANALYTIC_LEAKAGE {
        return Err(Error::Truncation {
            leakage: missing,
            n_min: lattice.n_min(),
            n_max: lattice.n_max(),
        });
    }
    Ok(distribution)
}

/// `(sqrt2)^{N+1} U(theta)^{N+1}` for `U = G_H diag(e^{-ik cos theta}, e^{ik cos theta})`:
/// the matrix elements `[[A_1, A_2], [A_3, A_4]]` evaluated at one angle.
pub fn matrix_elements(order: usize, k: f64, theta: f64) -> [[Complex<f64>; 2]; 2] {
    let phase = k * theta.cos();
    let h = hadamard_gate::<f64>().scaled(Complex::new(std::f64::consts::SQRT_2, 0.0));
    let kick = [cis(-phase), cis(phase)];
    let step = |m: [[Complex<f64>; 2]; 2]| -> [[Complex<f64>; 2]; 2] {
        // m * G_H * diag(kick) * sqrt2
        let mut out = [[Complex::new(0.0, 0.0); 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = (m[r][0] * h.get(0, c) + m[r][1] * h.get(1, c)) * kick[c];
            }
        }
        out
    };
    let mut acc = [[Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)], [Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)]];
    for _ in 0..=order {
        acc = step(acc);
    }
    acc
}

/// One CSV row per `(N, l)`: `N,l,a1,a2` with exact `numerator/denominator` strings.
pub fn coefficient_rows(coeffs: &AnalyticCoefficients) -> Vec<(usize, usize, String, String)> {
    let fmt = |r: &BigRational| format!("{}/{}", r.numer(), r.denom());
    (0..=coeffs.order)
        .map(|l| (coeffs.order, l, fmt(&coeffs.a1[l]), fmt(&coeffs.a2[l])))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::make_lattice;

    type Exact = LaurentPolynomial<BigRational>;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&n| q(n)).collect()
    }

    #[test]
    fn order_zero() {
        let c = coefficients_closed_form(0).unwrap();
        assert_eq!(c.a1(), ints(&[1]).as_slice());
        assert_eq!(c.a2(), ints(&[1]).as_slice());
        assert_eq!(coefficients_recursion(0).unwrap(), c);
    }

    #[test]
    fn order_one_matches_initial_polynomials() {
        // p_1 = z = w^{-1} + w, p_2 = z~ = w^{-1} - w; slots are exponents (+1, -1)
        let c = coefficients_closed_form(1).unwrap();
        assert_eq!(c.a1(), ints(&[1, 1]).as_slice());
        assert_eq!(c.a2(), ints(&[-1, 1]).as_slice());
        assert_eq!(c.p2(), Exact::z_tilde());
        assert_eq!(c.p1(), Exact::z());
    }

    #[test]
    fn order_two_by_hand() {
        // p_2 = z~^2 + 2 = (w^{-2} - 2 + w^2) + 2
        let r = coefficients_recursion(2).unwrap();
        assert_eq!(r.a2(), ints(&[1, 0, 1]).as_slice());
        // p_1 = z~ z + 2 = (w^{-2} - w^2) + 2
        assert_eq!(r.a1(), ints(&[-1, 2, 1]).as_slice());
    }

    #[test]
    fn order_five_closed_form_equals_recursion() {
        assert_eq!(coefficients_closed_form(5).unwrap(), coefficients_recursion(5).unwrap());
        assert_eq!(coefficients_closed_form(5).unwrap().a2(), ints(&[-1, -3, 2, -2, 3, 1]).as_slice());
    }

    #[test]
    fn high_order_is_exact() {
        let c = coefficients_recursion(24).unwrap();
        assert_eq!(c.a1().len(), 25);
        assert!(c.a1().iter().chain(c.a2()).all(|a| a.is_integer()));
        assert_eq!(coefficients_closed_form(24).unwrap(), c);
    }

    #[test]
    fn closed_forms_scale_to_integers() {
        for order in 0..=12 {
            let c = coefficients_closed_form(order).unwrap();
            assert!(scaled_integer_coefficients(&c).is_some());
        }
    }

    #[test]
    fn order_limit() {
        assert_eq!(
            coefficients_closed_form(65).unwrap_err(),
            Error::Size { requested: 65, max: 64 }
        );
        assert!(coefficients_closed_form_with_limit(70, 80).is_ok());
    }

    /// a_{l,2} with the sign (-1)^{-l+m}, i.e. without the global (-1)^N.
    fn a2_without_global_sign(order: usize) -> Vec<BigRational> {
        let c = coefficients_closed_form(order).unwrap();
        let flip = if order.is_multiple_of(2) { q(1) } else { q(-1) };
        c.a2().iter().map(|a| a * &flip).collect()
    }

    #[test]
    fn global_sign_variant_matches_recursion_only_for_even_orders() {
        for order in 1..=8 {
            let same = a2_without_global_sign(order) == coefficients_recursion(order).unwrap().a2();
            assert_eq!(same, order % 2 == 0, "order {order}");
        }
    }

    #[test]
    fn prerequisite_identities() {
        let z = Exact::z();
        let zt = Exact::z_tilde();
        assert_eq!(z.mul(&z).sub(&zt.mul(&zt)), Exact::constant(q(4)));
        let lhs = z.sub(&zt).mul(&z.mul(&zt).add(&zt.mul(&zt)).add(&Exact::constant(q(8))));
        let rhs = z.scale(q(2)).sub(&zt).scale(q(4));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn shift_and_add_equals_multiplication() {
        let p = Exact::from_terms([(3, q(2)), (1, q(-5)), (-1, q(7))]);
        assert_eq!(p.times_z_tilde(), p.mul(&Exact::z_tilde()));
    }

    #[test]
    fn slots_have_order_plus_one_entries() {
        let (p1, p2) = polynomials_recursion(7);
        assert_eq!(p1.slots(7).len(), 8);
        assert_eq!(Exact::from_slots(&p2.slots(7)), p2);
    }

    #[test]
    fn matrix_elements_follow_polynomials() {
        for order in 0..=6 {
            let (p1, p2) = polynomials_recursion(order);
            for &theta in &[0.0, 0.4, 1.9, 3.0, 5.5] {
                for &k in &[0.5, 1.45] {
                    let a = matrix_elements(order, k, theta);
                    let w = cis(k * f64::cos(theta));
                    let a1 = w.inv() * p1.evaluate(w);
                    let a2 = w * p2.evaluate(w);
                    assert!((a[0][0] - a1).norm() < 1e-11, "A1, N = {order}");
                    assert!((a[0][1] - a2).norm() < 1e-11, "A2, N = {order}");
                }
            }
        }
    }

    #[test]
    fn matrix_element_symmetries() {
        for order in 0..=6usize {
            let sign = if order % 2 == 0 { -1.0 } else { 1.0 }; // (-1)^{N+1}
            for &theta in &[0.1, 0.9, 2.2, 4.0] {
                let plus = matrix_elements(order, 1.3, theta);
                let minus = matrix_elements(order, -1.3, theta);
                assert!((plus[0][0] - minus[1][1] * sign).norm() < 1e-12);
                // the off-diagonal pair is related with the opposite sign, (-1)^N
                assert!((plus[0][1] + minus[1][0] * sign).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_kick_single_step() {
        let spec = RatchetSpec::contiguous(2).unwrap();
        let lat = make_lattice(1, 0.0, &spec).unwrap();
        let p = analytic_distribution(1, 0.0, &spec, &lat).unwrap();
        for (i, n) in lat.momenta().enumerate() {
            let expected = if n == 0 || n == 1 { 0.5 } else { 0.0 };
            assert!((p[i] - expected).abs() < 1e-15, "n = {n}");
        }
    }

    #[test]
    fn normalization() {
        for &k in &[0.5, 1.45, 2.0] {
            for &j in &[1usize, 4, 13, 25] {
                let spec = RatchetSpec::contiguous(2).unwrap();
                let lat = make_lattice(j, k, &spec).unwrap();
                let p = analytic_distribution(j, k, &spec, &lat).unwrap();
                let total: f64 = p.iter().sum();
                assert!((total - 1.0).abs() < 1e-9, "j = {j}, k = {k}: {total}");
            }
        }
    }

    #[test]
    fn narrow_lattice_is_reported() {
        let spec = RatchetSpec::contiguous(2).unwrap();
        let lat = MomentumLattice::new(-4, 5).unwrap();
        assert!(matches!(
            analytic_distribution(10, 1.45, &spec, &lat),
            Err(Error::Truncation { .. })
        ));
        assert!(analytic_distribution(0, 1.45, &spec, &lat).is_err());
    }

    #[test]
    fn coefficient_strings() {
        let rows = coefficient_rows(&coefficients_closed_form(2).unwrap());
        assert_eq!(rows[0], (2, 0, "-1/1".to_string(), "1/1".to_string()));
        assert_eq!(rows.len(), 3);
    }
}
