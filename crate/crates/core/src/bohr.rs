//! Bohr analysis on the real line: means, Fourier–Bohr coefficients,
//! certified almost-periods, the translate pseudometric, ε-nets of
//! translates, frequency-module rank, and the Bohr approximation.
//!
//! Everything certified here reduces to the coefficient-sum bound
//!
//! ```text
//! sup_x |f(x+a) - f(x+b)|  <=  Σ_k |c_k| · |e^{iλ_k a} - e^{iλ_k b}|
//! ```
//!
//! which is finitely checkable; sampling supplies matching lower bounds.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use thiserror::Error;

use crate::ratlin;
use crate::scalar::Real;
use crate::trigpoly::{Frequency, FrequencyBasis, TrigPolynomial};
use crate::trigpoly::TrigPolyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BohrError {
    /// No grid point certifies; signals tau_max or step too coarse, not a
    /// disproof.
    #[error("NotFound: no grid point certifies (tau_max or step too coarse)")]
    NotFound,
    #[error("EmptyGrid: the frequency grid is empty")]
    EmptyGrid,
    #[error("NonFiniteSample: sampler returned a non-finite value")]
    NonFiniteSample,
    #[error("InvalidParameter: {0}")]
    InvalidParameter(&'static str),
    #[error("NetBudget: {0}")]
    NetBudget(&'static str),
    #[error(transparent)]
    Poly(#[from] TrigPolyError),
}

/// A certified ε-almost-period: `upper_bound` dominates
/// sup_x |f(x+tau) - f(x)| and is strictly below `epsilon`; `lower_bound`
/// is the largest sampled value of the same supremum.
#[derive(Debug, Clone, PartialEq)]
pub struct AlmostPeriodCertificate<T> {
    pub tau: T,
    pub upper_bound: T,
    pub lower_bound: T,
    pub epsilon: T,
}

impl<T: Real> AlmostPeriodCertificate<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "tau": self.tau.to_f64().unwrap_or(f64::NAN),
            "upper_bound": self.upper_bound.to_f64().unwrap_or(f64::NAN),
            "lower_bound": self.lower_bound.to_f64().unwrap_or(f64::NAN),
            "epsilon": self.epsilon.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// A finite ε-net of translates: every translate T_s f is within
/// `covering_bound` (< epsilon, certified) of some T_{s_i} f.
#[derive(Debug, Clone, PartialEq)]
pub struct NetWitness<T> {
    pub epsilon: T,
    pub centers: Vec<T>,
    pub covering_bound: T,
}

impl<T: Real> NetWitness<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "epsilon": self.epsilon.to_f64().unwrap_or(f64::NAN),
            "centers": self.centers.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect::<Vec<_>>(),
            "covering_bound": self.covering_bound.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// Result of the sampled Bohr approximation pipeline.
#[derive(Debug, Clone)]
pub struct SampledApproximation<T> {
    pub poly: TrigPolynomial<T>,
    /// max |sampler(x) - poly(x)| over the verification grid.
    pub residual: T,
}

// Stride for deterministic sampling of suprema; an irrational multiple of pi
// so sample phases do not resonate with the common test frequencies.
fn golden_stride<T: Real>() -> T {
    T::TAU() * T::of(0.618033988749894848)
}

/// Exact Bohr mean M(f) = lim (1/2N)∫_{-N}^{N} f: the zero-frequency
/// coefficient, 0 if absent.
pub fn bohr_mean_exact<T: Real>(f: &TrigPolynomial<T>) -> Complex<T> {
    f.coefficient(&Frequency::zero(f.basis().len()))
}

/// Default quadrature resolution for a window of half-width `n`: fine enough
/// that the composite-midpoint discretization error stays below the 1/N
/// truncation term for the smooth integrands used here.
pub fn default_quadrature_steps(n: f64) -> usize {
    (2.0 * n.powf(1.5)).ceil().clamp(1000.0, 2.0e7) as usize
}

/// Composite-midpoint estimate of (1/2N)∫_{-N}^{N} f.
pub fn bohr_mean_numeric<T: Real>(
    sampler: impl Fn(T) -> Complex<T>,
    n: T,
    steps: usize,
) -> Result<Complex<T>, BohrError> {
    if !(n > T::zero()) {
        return Err(BohrError::InvalidParameter("N must be positive"));
    }
    if steps < 2 {
        return Err(BohrError::InvalidParameter("steps must be at least 2"));
    }
    let h = (n + n) / T::of(steps as f64);
    let mut sum = Complex::new(T::zero(), T::zero());
    for j in 0..steps {
        let x = -n + h * (T::of(j as f64) + T::of(0.5));
        let v = sampler(x);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(BohrError::NonFiniteSample);
        }
        sum = sum + v;
    }
    Ok(sum / T::of(steps as f64))
}

/// Exact Fourier–Bohr coefficient a(λ) = M(f · e^{-iλx}).
pub fn fourier_bohr_coefficient<T: Real>(
    f: &TrigPolynomial<T>,
    lambda: &Frequency,
) -> Result<Complex<T>, BohrError> {
    if lambda.len() != f.basis().len() {
        return Err(BohrError::Poly(TrigPolyError::FrequencyLength {
            expected: f.basis().len(),
            got: lambda.len(),
        }));
    }
    let conj_char = TrigPolynomial::character(
        std::sync::Arc::clone(f.basis()),
        lambda.neg(),
        Complex::new(T::one(), T::zero()),
    )?;
    Ok(bohr_mean_exact(&f.multiply(&conj_char)?))
}

/// Numeric spectrum recovery: estimates a(μ) over a frequency grid and keeps
/// the entries with |a(μ)| at or above `threshold`.
pub fn spectrum_scan<T: Real>(
    sampler: impl Fn(T) -> Complex<T>,
    grid: &[T],
    n: T,
    steps: usize,
    threshold: T,
) -> Result<Vec<(T, Complex<T>)>, BohrError> {
    if !(threshold > T::zero()) {
        return Err(BohrError::InvalidParameter("threshold must be positive"));
    }
    if grid.is_empty() {
        return Err(BohrError::EmptyGrid);
    }
    let mut found = Vec::new();
    for &mu in grid {
        let est = bohr_mean_numeric(|x| sampler(x) * Complex::cis(-mu * x), n, steps)?;
        if est.norm() >= threshold {
            found.push((mu, est));
        }
    }
    Ok(found)
}

/// Certified coefficient bound for sup_x |f(x+a) - f(x+b)|.
fn translate_upper_bound<T: Real>(f: &TrigPolynomial<T>, a: T, b: T) -> T {
    f.terms().iter().fold(T::zero(), |acc, term| {
        let lambda = f.basis().frequency_value(&term.freq);
        acc + term.coeff.norm() * (Complex::cis(lambda * a) - Complex::cis(lambda * b)).norm()
    })
}

/// Lower and upper bounds for the translate pseudometric
/// d_f(a,b) = sup_x |f(a+x) - f(b+x)|.
///
/// The upper bound is the coefficient-sum bound (valid because the translate
/// difference factors through e^{iλa} - e^{iλb} termwise); the lower bound is
/// the maximum over `samples` deterministic sample points.
pub fn translate_distance_bounds<T: Real>(
    f: &TrigPolynomial<T>,
    a: T,
    b: T,
    samples: usize,
) -> (T, T) {
    let upper = translate_upper_bound(f, a, b);
    let stride = golden_stride::<T>();
    let mut lower = T::zero();
    for j in 0..samples.max(1) {
        let x = stride * T::of(j as f64);
        let d = (f.eval(a + x) - f.eval(b + x)).norm();
        if d > lower {
            lower = d;
        }
    }
    (lower.min(upper), upper)
}

fn certificate_at<T: Real>(
    f: &TrigPolynomial<T>,
    tau: T,
    upper: T,
    epsilon: T,
) -> AlmostPeriodCertificate<T> {
    let (lower, _) = translate_distance_bounds(f, tau, T::zero(), 256);
    AlmostPeriodCertificate {
        tau,
        upper_bound: upper,
        lower_bound: lower.min(upper),
        epsilon,
    }
}

/// Grid search for a certified ε-almost-period.
///
/// Translations near zero always certify, so the scan first skips that
/// initial certified prefix; once the bound has exceeded ε it returns the
/// first re-entry into a certified window, walked forward to the window's
/// grid-local minimum (so a periodic f reports its period, not the window
/// edge). If the bound never exceeds ε on the whole grid, every translation
/// works and the first grid point is returned.
pub fn find_almost_period<T: Real>(
    f: &TrigPolynomial<T>,
    epsilon: T,
    tau_max: T,
    step: T,
) -> Result<AlmostPeriodCertificate<T>, BohrError> {
    if !(epsilon > T::zero()) {
        return Err(BohrError::InvalidParameter("epsilon must be positive"));
    }
    if !(step > T::zero() && step < tau_max) {
        return Err(BohrError::InvalidParameter("need 0 < step < tau_max"));
    }
    let total = (tau_max / step).floor().to_f64().unwrap_or(0.0) as usize;
    let bound = |k: usize| translate_upper_bound(f, step * T::of(k as f64), T::zero());
    let mut in_prefix = true;
    let mut k = 1;
    while k <= total {
        let u = bound(k);
        if in_prefix {
            if u >= epsilon {
                in_prefix = false;
            }
            k += 1;
            continue;
        }
        if u < epsilon {
            let (mut best_k, mut best_u) = (k, u);
            let mut k2 = k + 1;
            while k2 <= total {
                let u2 = bound(k2);
                if u2 < best_u {
                    best_k = k2;
                    best_u = u2;
                    k2 += 1;
                } else {
                    break;
                }
            }
            return Ok(certificate_at(f, step * T::of(best_k as f64), best_u, epsilon));
        }
        k += 1;
    }
    if in_prefix {
        // The bound stayed below epsilon everywhere (constant-like f).
        return Ok(certificate_at(f, step, bound(1), epsilon));
    }
    Err(BohrError::NotFound)
}

/// Empirical estimate of Bohr's inclusion length: the largest gap between
/// consecutive certified ε-almost-periods on the grid over (0, horizon].
pub fn inclusion_length_estimate<T: Real>(
    f: &TrigPolynomial<T>,
    epsilon: T,
    horizon: T,
    step: T,
) -> Result<T, BohrError> {
    if !(epsilon > T::zero()) {
        return Err(BohrError::InvalidParameter("epsilon must be positive"));
    }
    if !(step > T::zero() && step < horizon) {
        return Err(BohrError::InvalidParameter("need 0 < step < horizon"));
    }
    let total = (horizon / step).floor().to_f64().unwrap_or(0.0) as usize;
    let mut previous: Option<T> = None;
    let mut max_gap = T::zero();
    let mut count = 0usize;
    for k in 1..=total {
        let tau = step * T::of(k as f64);
        if translate_upper_bound(f, tau, T::zero()) < epsilon {
            if let Some(prev) = previous {
                let gap = tau - prev;
                if gap > max_gap {
                    max_gap = gap;
                }
            }
            previous = Some(tau);
            count += 1;
        }
    }
    if count < 2 {
        return Err(BohrError::NotFound);
    }
    Ok(max_gap)
}

/// Rank over ℚ of the frequency module of f, by exact rational Gaussian
/// elimination on the coordinate vectors.
pub fn frequency_module_rank<T: Real>(f: &TrigPolynomial<T>) -> usize {
    let rows: Vec<Vec<BigRational>> = f
        .terms()
        .iter()
        .map(|t| t.freq.coords().to_vec())
        .collect();
    ratlin::rank(&rows)
}

/// Constructs a finite ε-net of translates.
///
/// The frequency module of f is rewritten over an integer-combination basis
/// μ_1..μ_r; the phase map s ↦ (μ_1 s, .., μ_r s) mod 2π is dense in the
/// r-torus, which is gridded with the largest mesh whose triangle-inequality
/// certificate closes (found by halving). One real translation parameter is
/// collected per grid cell; any two translations in the same cell are within
/// the certified covering bound.
pub fn epsilon_net_translates<T: Real>(
    f: &TrigPolynomial<T>,
    epsilon: T,
) -> Result<NetWitness<T>, BohrError> {
    if !(epsilon > T::zero()) {
        return Err(BohrError::InvalidParameter("epsilon must be positive"));
    }
    let moving: Vec<(T, Vec<BigRational>)> = f
        .terms()
        .iter()
        .filter(|t| !t.freq.is_zero())
        .map(|t| (t.coeff.norm(), t.freq.coords().to_vec()))
        .collect();
    let coords: Vec<Vec<BigRational>> = moving.iter().map(|(_, c)| c.clone()).collect();
    let (mu_basis, int_coeffs) = ratlin::integer_span(&coords);
    let rank = mu_basis.len();

    // W bounds d_f(s, s') by W * (max per-axis phase distance).
    let mut weight = T::zero();
    for ((cnorm, _), expansion) in moving.iter().zip(&int_coeffs) {
        let l1 = expansion.iter().fold(T::zero(), |acc, n| {
            acc + T::of(n.to_f64().unwrap_or(f64::INFINITY).abs())
        });
        weight = weight + *cnorm * l1;
    }

    let two_pi = T::TAU();
    let mut mesh = T::PI();
    while !(weight * mesh < epsilon) {
        mesh = mesh / T::of(2.0);
        if mesh < T::of(1e-12) {
            return Err(BohrError::NetBudget("mesh underflow; epsilon too small for this polynomial"));
        }
    }
    let per_axis = (two_pi / mesh)
        .ceil()
        .to_f64()
        .unwrap_or(f64::INFINITY) as usize;
    let total_f64 = (per_axis as f64).powi(rank as i32);
    if !(total_f64 <= 4.0e6) {
        return Err(BohrError::NetBudget("torus grid too large for this epsilon and rank"));
    }
    let total = total_f64 as usize;

    // Phase velocities of the basis frequencies.
    let mu_values: Vec<T> = mu_basis
        .iter()
        .map(|mu| {
            mu.iter()
                .zip(f.basis().symbols())
                .fold(T::zero(), |acc, (coord, (_, value))| {
                    acc + T::of(coord.to_f64().unwrap_or(f64::NAN)) * *value
                })
        })
        .collect();
    let max_speed = mu_values
        .iter()
        .fold(T::zero(), |acc, v| acc.max(v.abs()))
        .max(T::one() * T::epsilon())
        .max(if rank == 0 { T::one() } else { T::zero() });

    let ds = mesh * T::of(0.45) / max_speed;
    let mut visited: Vec<Option<T>> = vec![None; total.max(1)];
    let mut found = 0usize;
    let mut s = T::zero();
    let cap = 1000usize.saturating_mul(total.max(1)).saturating_add(100_000);
    let mut iterations = 0usize;
    while found < total.max(1) {
        iterations += 1;
        if iterations > cap {
            return Err(BohrError::NetBudget("torus coverage budget exhausted"));
        }
        let mut idx = 0usize;
        for value in &mu_values {
            let mut phi = (*value * s) % two_pi;
            if phi < T::zero() {
                phi = phi + two_pi;
            }
            let cell = ((phi / mesh + T::of(0.5)).floor().to_f64().unwrap_or(0.0) as usize)
                % per_axis;
            idx = idx * per_axis + cell;
        }
        if visited[idx].is_none() {
            visited[idx] = Some(s);
            found += 1;
        }
        s = s + ds;
    }
    let mut centers: Vec<T> = visited.into_iter().flatten().collect();
    centers.sort_by(|a, b| a.partial_cmp(b).expect("centers are finite"));
    Ok(NetWitness {
        epsilon,
        centers,
        covering_bound: weight * mesh,
    })
}

/// Keeps the largest-|coefficient| terms of f so that the certified uniform
/// error of the dropped tail stays strictly below ε.
pub fn bohr_approximate<T: Real>(f: &TrigPolynomial<T>, epsilon: T) -> TrigPolynomial<T> {
    let mut order: Vec<usize> = (0..f.terms().len()).collect();
    // Smallest coefficients first; frequency order breaks ties deterministically.
    order.sort_by(|&i, &j| {
        let (a, b) = (&f.terms()[i], &f.terms()[j]);
        a.coeff
            .norm()
            .partial_cmp(&b.coeff.norm())
            .expect("coefficients are finite")
            .then_with(|| a.freq.cmp(&b.freq))
    });
    let mut dropped = vec![false; f.terms().len()];
    let mut dropped_sum = T::zero();
    for &i in &order {
        let next = dropped_sum + f.terms()[i].coeff.norm();
        if next < epsilon {
            dropped_sum = next;
            dropped[i] = true;
        } else {
            break;
        }
    }
    let kept = f
        .terms()
        .iter()
        .enumerate()
        .filter(|(i, _)| !dropped[*i])
        .map(|(_, t)| (t.coeff, t.freq.clone()))
        .collect();
    TrigPolynomial::new(std::sync::Arc::clone(f.basis()), kept)
        .expect("sub-polynomial keeps valid frequencies")
}

/// Sampled Bohr approximation: spectrum scan over the grid, reconstruction as
/// a trig polynomial over fresh symbols, plus the max residual against the
/// sampler on a verification grid.
pub fn bohr_approximate_sampled<T: Real>(
    sampler: impl Fn(T) -> Complex<T>,
    grid: &[T],
    epsilon: T,
    n: T,
    steps: usize,
) -> Result<SampledApproximation<T>, BohrError> {
    if !(epsilon > T::zero()) {
        return Err(BohrError::InvalidParameter("epsilon must be positive"));
    }
    let mut unique: Vec<T> = Vec::new();
    for &mu in grid {
        if !unique.iter().any(|&seen| seen == mu) {
            unique.push(mu);
        }
    }
    let recovered = spectrum_scan(&sampler, &unique, n, steps, epsilon)?;

    let mut symbols: Vec<(String, T)> = Vec::new();
    let mut entries: Vec<(Complex<T>, usize, bool)> = Vec::new(); // (coeff, symbol idx, negated)
    let mut constant: Option<Complex<T>> = None;
    for (mu, coeff) in &recovered {
        if *mu == T::zero() {
            constant = Some(*constant.get_or_insert(Complex::new(T::zero(), T::zero())) + *coeff);
        } else {
            let idx = symbols.len();
            symbols.push((format!("mu{idx}"), mu.abs()));
            entries.push((*coeff, idx, *mu < T::zero()));
        }
    }
    let width = symbols.len();
    let basis = FrequencyBasis::new(symbols)
        .map_err(|e| BohrError::InvalidParameter(match e {
            _ => "recovered grid frequencies must be finite and nonzero",
        }))?;
    let mut terms: Vec<(Complex<T>, Frequency)> = Vec::new();
    if let Some(c0) = constant {
        terms.push((c0, Frequency::zero(width)));
    }
    for (coeff, idx, negated) in entries {
        let freq = if negated {
            Frequency::unit(width, idx).neg()
        } else {
            Frequency::unit(width, idx)
        };
        terms.push((coeff, freq));
    }
    let poly = TrigPolynomial::new(basis, terms)?;

    let verification = 512usize;
    let span = T::of(50.0);
    let mut residual = T::zero();
    for j in 0..verification {
        let x = -span + (span + span) * (T::of(j as f64) + T::of(0.5)) / T::of(verification as f64);
        let d = (sampler(x) - poly.eval(x)).norm();
        if d > residual {
            residual = d;
        }
    }
    Ok(SampledApproximation { poly, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use std::sync::Arc;

    type Poly = TrigPolynomial<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn e_ix() -> Poly {
        Poly::character(FrequencyBasis::unit(), Frequency::unit(1, 0), c(1.0, 0.0)).unwrap()
    }

    fn two_freqs() -> Poly {
        Poly::new(
            FrequencyBasis::one_sqrt2(),
            vec![
                (c(1.0, 0.0), Frequency::unit(2, 0)),
                (c(1.0, 0.0), Frequency::unit(2, 1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn mean_exact_examples() {
        assert_eq!(bohr_mean_exact(&two_freqs()), c(0.0, 0.0));
        let basis = FrequencyBasis::unit();
        let f = Poly::new(
            Arc::clone(&basis),
            vec![
                (c(3.0, 0.0), Frequency::zero(1)),
                (c(1.0, 0.0), Frequency::unit(1, 0)),
            ],
        )
        .unwrap();
        assert_eq!(bohr_mean_exact(&f), c(3.0, 0.0));
        assert_eq!(bohr_mean_exact(&Poly::zero(basis)), c(0.0, 0.0));
    }

    #[test]
    fn mean_numeric_constant_is_exact() {
        let m = bohr_mean_numeric(|_x: f64| c(5.0, 0.0), 10.0, 100).unwrap();
        assert!((m - c(5.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn mean_numeric_converges_to_exact_mean() {
        let n = 2000.0;
        let steps = default_quadrature_steps(n);
        let f = e_ix();
        let m = bohr_mean_numeric(|x| f.eval(x), n, steps).unwrap();
        assert!(m.norm() < 1e-3);
        let basis = FrequencyBasis::unit();
        let g = Poly::new(
            basis,
            vec![
                (c(3.0, 0.0), Frequency::zero(1)),
                (c(1.0, 0.0), Frequency::unit(1, 0)),
            ],
        )
        .unwrap();
        let mg = bohr_mean_numeric(|x| g.eval(x), n, steps).unwrap();
        assert!((mg - c(3.0, 0.0)).norm() < 1e-3);
    }

    #[test]
    fn mean_numeric_rejects_bad_parameters() {
        assert_eq!(
            bohr_mean_numeric(|_x: f64| c(0.0, 0.0), 0.0, 10),
            Err(BohrError::InvalidParameter("N must be positive"))
        );
        assert_eq!(
            bohr_mean_numeric(|_x: f64| c(0.0, 0.0), 1.0, 1),
            Err(BohrError::InvalidParameter("steps must be at least 2"))
        );
        assert_eq!(
            bohr_mean_numeric(|_x: f64| c(f64::NAN, 0.0), 1.0, 4),
            Err(BohrError::NonFiniteSample)
        );
    }

    #[test]
    fn fourier_coefficient_reads_terms_exactly() {
        let f = e_ix();
        let one = Frequency::unit(1, 0);
        assert_eq!(fourier_bohr_coefficient(&f, &one).unwrap(), c(1.0, 0.0));

        let basis = FrequencyBasis::one_sqrt2();
        let g = Poly::new(
            basis,
            vec![
                (c(3.0, 0.0), Frequency::zero(2)),
                (c(2.0, 0.0), Frequency::unit(2, 0)),
                (c(-1.0, 0.0), Frequency::unit(2, 1)),
            ],
        )
        .unwrap();
        assert_eq!(
            fourier_bohr_coefficient(&g, &Frequency::unit(2, 1)).unwrap(),
            c(-1.0, 0.0)
        );
        // Distinct frequency reads exactly zero.
        let f2 = two_freqs();
        let sqrt2_only = Frequency::new(vec![q(0, 1), q(2, 1)]);
        assert_eq!(fourier_bohr_coefficient(&f2, &sqrt2_only).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn spectrum_scan_recovers_planted_spectrum() {
        let basis = FrequencyBasis::unit();
        let f = Poly::character(basis, Frequency::unit(1, 0), c(2.0, 0.0)).unwrap();
        let n = 2000.0;
        let steps = default_quadrature_steps(n);
        let got = spectrum_scan(|x| f.eval(x), &[0.0, 1.0, 2.0], n, steps, 0.5).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].0, 1.0);
        // Oracle: the exact Fourier-Bohr coefficient.
        let exact = fourier_bohr_coefficient(&f, &Frequency::unit(1, 0)).unwrap();
        assert!((got[0].1 - exact).norm() < 1e-2);

        let empty = spectrum_scan(|_x: f64| c(0.0, 0.0), &[0.0, 1.0], 100.0, 1000, 0.5).unwrap();
        assert!(empty.is_empty());

        let basis2 = FrequencyBasis::one_sqrt2();
        let g = Poly::new(
            basis2,
            vec![
                (c(3.0, 0.0), Frequency::zero(2)),
                (c(1.0, 0.0), Frequency::unit(2, 1)),
            ],
        )
        .unwrap();
        let grid = [0.0, std::f64::consts::SQRT_2];
        let got2 = spectrum_scan(|x| g.eval(x), &grid, n, steps, 0.5).unwrap();
        assert_eq!(got2.len(), 2);
        assert!((got2[0].1 - c(3.0, 0.0)).norm() < 1e-2);
        assert!((got2[1].1 - c(1.0, 0.0)).norm() < 1e-2);
    }

    #[test]
    fn spectrum_scan_rejects_empty_grid() {
        assert_eq!(
            spectrum_scan(|_x: f64| c(0.0, 0.0), &[], 10.0, 100, 0.5),
            Err(BohrError::EmptyGrid)
        );
    }

    #[test]
    fn translate_bounds_single_term_is_tight() {
        let f = e_ix();
        let (lower, upper) = translate_distance_bounds(&f, 0.7, -0.3, 64);
        let expected = (Complex::cis(0.7) - Complex::cis(-0.3)).norm();
        assert!((upper - expected).abs() < 1e-14);
        assert!((lower - upper).abs() < 1e-12);
    }

    #[test]
    fn translate_bounds_vanish_on_the_diagonal() {
        let f = two_freqs();
        let (lower, upper) = translate_distance_bounds(&f, 1.234, 1.234, 32);
        assert_eq!(lower, 0.0);
        assert_eq!(upper, 0.0);
    }

    #[test]
    fn translate_bounds_at_pell_point() {
        // 29·sqrt(2) is within 0.0122 of the integer 41, so translating by
        // 2*pi*29 moves both phases almost nowhere.
        let f = two_freqs();
        let tau = 2.0 * std::f64::consts::PI * 29.0;
        let (_, upper) = translate_distance_bounds(&f, tau, 0.0, 64);
        assert!(upper < 0.1, "upper = {upper}");
    }

    #[test]
    fn find_almost_period_of_periodic_function() {
        let f = e_ix();
        let cert = find_almost_period(&f, 0.1, 10.0, 1e-3).unwrap();
        assert!((cert.tau - 2.0 * std::f64::consts::PI).abs() < 1e-3);
        assert!(cert.upper_bound < 1e-3);
        assert!(cert.lower_bound <= cert.upper_bound);
        assert!(cert.upper_bound < cert.epsilon);
    }

    #[test]
    fn find_almost_period_two_freqs_near_pell_29() {
        let f = two_freqs();
        let cert = find_almost_period(&f, 0.1, 200.0, 1e-3).unwrap();
        assert!(cert.tau > 182.0 && cert.tau < 182.5, "tau = {}", cert.tau);
        assert!(cert.upper_bound < 0.08, "bound = {}", cert.upper_bound);
    }

    #[test]
    fn find_almost_period_two_freqs_at_coarser_epsilon() {
        // At epsilon = 0.2 the earlier convergent 12·sqrt(2) ~ 17 already
        // certifies, so the first window sits near 2*pi*12.
        let f = two_freqs();
        let cert = find_almost_period(&f, 0.2, 200.0, 1e-3).unwrap();
        assert!(cert.tau > 75.0 && cert.tau < 76.0, "tau = {}", cert.tau);
        assert!(cert.upper_bound < 0.14, "bound = {}", cert.upper_bound);
    }

    #[test]
    fn find_almost_period_constant_returns_first_grid_point() {
        let basis = FrequencyBasis::<f64>::unit();
        let f = Poly::constant(basis, c(4.0, 1.0));
        let cert = find_almost_period(&f, 0.1, 5.0, 0.01).unwrap();
        assert_eq!(cert.tau, 0.01);
        assert_eq!(cert.upper_bound, 0.0);
    }

    #[test]
    fn find_almost_period_not_found_when_grid_too_short() {
        let f = e_ix();
        assert_eq!(find_almost_period(&f, 0.1, 3.0, 1e-3), Err(BohrError::NotFound));
    }

    #[test]
    fn certificate_is_sound_against_brute_force() {
        let f = two_freqs();
        let cert = find_almost_period(&f, 0.1, 200.0, 1e-3).unwrap();
        let mut worst: f64 = 0.0;
        for j in 0..20_000 {
            let x = 0.37 * j as f64;
            worst = worst.max((f.eval(x + cert.tau) - f.eval(x)).norm());
        }
        assert!(worst <= cert.upper_bound + 1e-9);
    }

    #[test]
    fn inclusion_length_of_periodic_function() {
        let f = e_ix();
        let est = inclusion_length_estimate(&f, 0.1, 40.0, 1e-3).unwrap();
        // Certified points cluster around multiples of 2*pi with half-width
        // asin(0.05); the max gap is 2*pi minus the cluster width.
        let w = 2.0 * (0.05f64).asin();
        assert!((est - (2.0 * std::f64::consts::PI - 2.0 * w)).abs() < 0.01, "est = {est}");
    }

    #[test]
    fn inclusion_length_blows_up_for_small_frequency() {
        // f = e^{iax} with a = 1/100: the period is 200*pi.
        let basis = FrequencyBasis::unit();
        let f = Poly::character(basis, Frequency::new(vec![q(1, 100)]), c(1.0, 0.0)).unwrap();
        let est = inclusion_length_estimate(&f, 0.1, 1400.0, 0.05).unwrap();
        let w = 2.0 * (0.05f64).asin();
        let expected = (2.0 * std::f64::consts::PI - 2.0 * w) / 0.01;
        assert!((est - expected).abs() < 1.0, "est = {est}, expected = {expected}");
        assert!(est > 550.0 && est < 640.0);
    }

    #[test]
    fn inclusion_length_of_constant_is_the_grid_step() {
        let basis = FrequencyBasis::<f64>::unit();
        let f = Poly::constant(basis, c(1.0, 0.0));
        let est = inclusion_length_estimate(&f, 0.1, 1.0, 0.05).unwrap();
        assert!((est - 0.05).abs() < 1e-12);
    }

    #[test]
    fn inclusion_length_not_found_with_too_few_points() {
        let f = e_ix();
        assert_eq!(
            inclusion_length_estimate(&f, 0.05, 0.2, 0.04),
            Err(BohrError::NotFound)
        );
    }

    #[test]
    fn rank_examples() {
        assert_eq!(frequency_module_rank(&two_freqs()), 2);
        let basis = FrequencyBasis::unit();
        let f = Poly::new(
            Arc::clone(&basis),
            vec![
                (c(1.0, 0.0), Frequency::new(vec![q(1, 1)])),
                (c(1.0, 0.0), Frequency::new(vec![q(2, 1)])),
                (c(1.0, 0.0), Frequency::new(vec![q(3, 1)])),
            ],
        )
        .unwrap();
        assert_eq!(frequency_module_rank(&f), 1);
        assert_eq!(frequency_module_rank(&Poly::zero(basis)), 0);
    }

    #[test]
    fn rank_is_stable_under_character_multiplication() {
        let f = two_freqs();
        let one = Poly::constant(Arc::clone(f.basis()), c(1.0, 0.0));
        assert_eq!(
            frequency_module_rank(&f.multiply(&one).unwrap()),
            frequency_module_rank(&f)
        );
        let chi = Poly::character(
            Arc::clone(f.basis()),
            Frequency::new(vec![q(1, 3), q(0, 1)]),
            c(1.0, 0.0),
        )
        .unwrap();
        let shifted = f.multiply(&chi).unwrap();
        assert!(frequency_module_rank(&shifted) <= frequency_module_rank(&f) + 1);
    }

    #[test]
    fn net_for_single_character() {
        let f = e_ix();
        let net = epsilon_net_translates(&f, 0.5).unwrap();
        assert!(net.covering_bound < 0.5);
        assert_eq!(net.centers.len(), 16); // mesh pi/8 over one circle
    }

    #[test]
    fn net_for_constant_is_a_single_center() {
        let basis = FrequencyBasis::<f64>::unit();
        let f = Poly::constant(basis, c(2.0, 0.0));
        let net = epsilon_net_translates(&f, 0.25).unwrap();
        assert_eq!(net.centers, vec![0.0]);
        assert_eq!(net.covering_bound, 0.0);
    }

    #[test]
    fn net_centers_certify_against_random_translates() {
        let f = two_freqs();
        let net = epsilon_net_translates(&f, 0.5).unwrap();
        assert!(net.covering_bound < 0.5);
        // Every translate that actually occurs must be near some center,
        // with the closeness certified by the coefficient bound.
        let mut s = 0.05;
        for _ in 0..200 {
            let ok = net.centers.iter().any(|&center| {
                translate_upper_bound(&f, s, center) < net.epsilon
            });
            assert!(ok, "translate at s = {s} not covered");
            s += 2.613; // arbitrary deterministic stride
        }
    }

    #[test]
    fn bohr_approximate_drops_only_the_small_tail() {
        let basis = FrequencyBasis::one_sqrt2();
        let f = Poly::new(
            basis,
            vec![
                (c(1.0, 0.0), Frequency::unit(2, 0)),
                (c(0.5, 0.0), Frequency::unit(2, 1)),
                (c(0.05, 0.0), Frequency::new(vec![q(1, 1), q(1, 1)])),
            ],
        )
        .unwrap();
        let p = bohr_approximate(&f, 0.1);
        assert_eq!(p.terms().len(), 2);
        assert!((f.sup_norm_bound() - p.sup_norm_bound() - 0.05).abs() < 1e-15);
    }

    #[test]
    fn bohr_approximate_extremes() {
        let f = two_freqs();
        // epsilon above the sup-norm bound: the zero polynomial suffices.
        assert!(bohr_approximate(&f, 2.5).is_zero());
        // epsilon below every single coefficient: nothing is droppable.
        assert_eq!(bohr_approximate(&f, 0.5), f);
    }

    #[test]
    fn sampled_approximation_recovers_the_polynomial() {
        let basis = FrequencyBasis::unit();
        let f = Poly::character(basis, Frequency::unit(1, 0), c(2.0, 0.0)).unwrap();
        let n = 2000.0;
        let steps = default_quadrature_steps(n);
        let approx =
            bohr_approximate_sampled(|x| f.eval(x), &[0.0, 1.0, 3.0], 0.5, n, steps).unwrap();
        assert_eq!(approx.poly.terms().len(), 1);
        assert!(approx.residual <= 1e-2, "residual = {}", approx.residual);

        let silent =
            bohr_approximate_sampled(|_x: f64| c(0.0, 0.0), &[0.0, 1.0], 0.5, 100.0, 1000).unwrap();
        assert!(silent.poly.is_zero());

        let basis2 = FrequencyBasis::one_sqrt2();
        let g = Poly::new(
            basis2,
            vec![
                (c(3.0, 0.0), Frequency::zero(2)),
                (c(1.0, 0.0), Frequency::unit(2, 1)),
            ],
        )
        .unwrap();
        let grid = [0.0, std::f64::consts::SQRT_2];
        let approx2 = bohr_approximate_sampled(|x| g.eval(x), &grid, 0.5, n, steps).unwrap();
        assert_eq!(approx2.poly.terms().len(), 2);
        assert!(approx2.residual <= 1e-2, "residual = {}", approx2.residual);
    }

    #[test]
    fn certificate_json_field_names() {
        let cert = AlmostPeriodCertificate {
            tau: 1.0f64,
            upper_bound: 0.5,
            lower_bound: 0.25,
            epsilon: 0.6,
        };
        let v = cert.to_json();
        assert_eq!(v["tau"], 1.0);
        assert_eq!(v["upper_bound"], 0.5);
        assert_eq!(v["lower_bound"], 0.25);
        assert_eq!(v["epsilon"], 0.6);
        let net = NetWitness {
            epsilon: 0.5f64,
            centers: vec![0.0, 1.0],
            covering_bound: 0.4,
        };
        let w = net.to_json();
        assert_eq!(w["centers"].as_array().unwrap().len(), 2);
        assert_eq!(w["covering_bound"], 0.4);
    }
}
