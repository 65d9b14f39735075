//! Isotypic projections and exact Peter-Weyl reconstruction on finite
//! groups, Plancherel checks, the positive-central expansion, and
//! translate-span rank / minimal-almost-invariance probes.
//!
//! The projector onto the σ-isotypic component is convolution by
//! e_σ := d_σ·χ_σ. With the Haar measure normalized to mass 1 this degree
//! weighting is the unique scaling making Σ_σ e_σ∗f = f exact, which the
//! reconstruction tests pin down.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::chars::CharacterTable;
use crate::groupcore::{GroupError, GroupFunction};
use crate::linalg;
use crate::scalar::Real;
use crate::DEFAULT_SEED;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PeterWeylError {
    #[error("NotCentral: the function does not commute with the group algebra")]
    NotCentral,
    #[error("NegativeSpectrum: some inner product (f, chi) is not nonnegative real")]
    NegativeSpectrum,
    #[error("ZeroInput: the function is numerically zero")]
    ZeroInput,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Which one-sided translate family to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// All isotypic parts of a function plus the reconstruction residual
/// ‖f − Σ parts‖_∞ (exactly zero at finite order, up to rounding).
#[derive(Debug, Clone)]
pub struct Decomposition<T> {
    pub components: Vec<(usize, GroupFunction<T>)>,
    pub residual: T,
}

impl<T: Real> Decomposition<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "components": self.components.iter().map(|(sigma, part)| {
                json!({
                    "sigma": sigma,
                    "values": part.values().iter().map(|v| {
                        json!({
                            "re": v.re.to_f64().unwrap_or(f64::NAN),
                            "im": v.im.to_f64().unwrap_or(f64::NAN),
                        })
                    }).collect::<Vec<_>>(),
                    "l2_norm": part.l2_norm().to_f64().unwrap_or(f64::NAN),
                })
            }).collect::<Vec<_>>(),
            "residual": self.residual.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// e_σ = d_σ·χ_σ as a function on the group.
pub fn isotypic_idempotent<T: Real>(table: &CharacterTable<T>, sigma: usize) -> GroupFunction<T> {
    let d = T::of(table.degrees()[sigma] as f64);
    table
        .character_function(sigma)
        .scaled(Complex::new(d, T::zero()))
}

/// The σ-isotypic component e_σ∗f.
pub fn isotypic_project<T: Real>(
    f: &GroupFunction<T>,
    table: &CharacterTable<T>,
    sigma: usize,
) -> Result<GroupFunction<T>, PeterWeylError> {
    Ok(isotypic_idempotent(table, sigma).convolve(f)?)
}

/// Full Peter-Weyl decomposition f = Σ_σ e_σ∗f.
pub fn decompose<T: Real>(
    f: &GroupFunction<T>,
    table: &CharacterTable<T>,
) -> Result<Decomposition<T>, PeterWeylError> {
    let mut components = Vec::with_capacity(table.len());
    let mut sum = GroupFunction::zero(f.group());
    for sigma in 0..table.len() {
        let part = isotypic_project(f, table, sigma)?;
        sum = sum.add(&part)?;
        components.push((sigma, part));
    }
    let residual = f.sub(&sum)?.sup_norm();
    Ok(Decomposition {
        components,
        residual,
    })
}

/// Plancherel identity for central f: returns
/// (lhs, rhs) = ((f∗f̃)(e), Σ_σ |(f, χ_σ)|²), computed by independent code
/// paths (convolution versus inner products).
pub fn plancherel_check<T: Real>(
    f: &GroupFunction<T>,
    table: &CharacterTable<T>,
) -> Result<(T, T), PeterWeylError> {
    if !f.is_central(T::scaled_tol(1e-9)) {
        return Err(PeterWeylError::NotCentral);
    }
    let lhs = f
        .convolve(&f.involute())?
        .value(f.group().identity())
        .re;
    let mut rhs = T::zero();
    for sigma in 0..table.len() {
        let b = f.inner(&table.character_function(sigma))?;
        rhs = rhs + b.norm_sqr();
    }
    Ok((lhs, rhs))
}

/// Expansion of a central function with nonnegative spectrum.
///
/// Returns coefficients a_σ = d_σ·(f, χ_σ), which satisfy both
/// I(f) = f(e) = Σ_σ a_σ and f = Σ_σ a_σ·(χ_σ/d_σ) exactly at finite order.
/// The hypothesis check rejects any (f, χ_σ) with negative real part or a
/// nonreal component beyond tolerance.
pub fn positive_central_expansion<T: Real>(
    f: &GroupFunction<T>,
    table: &CharacterTable<T>,
) -> Result<Vec<(usize, Complex<T>)>, PeterWeylError> {
    let tol = T::scaled_tol(1e-9);
    if !f.is_central(tol) {
        return Err(PeterWeylError::NotCentral);
    }
    let mut coefficients = Vec::with_capacity(table.len());
    for sigma in 0..table.len() {
        let fhat = f.inner(&table.character_function(sigma))?;
        if fhat.re < -tol || fhat.im.abs() > tol {
            return Err(PeterWeylError::NegativeSpectrum);
        }
        let d = T::of(table.degrees()[sigma] as f64);
        coefficients.push((sigma, fhat * d));
    }
    Ok(coefficients)
}

fn translate_rows<T: Real>(f: &GroupFunction<T>, side: Side) -> Vec<Vec<Complex<T>>> {
    let n = f.group().order();
    (0..n)
        .map(|s| {
            let t = match side {
                Side::Left => f.left_translate(s),
                Side::Right => f.right_translate(s),
            };
            t.values().to_vec()
        })
        .collect()
}

fn rank_tolerance<T: Real>() -> T {
    T::scaled_tol(1e-8)
}

/// Dimension of span{T_s f : s ∈ G} (or the right-translate span), by
/// singular values of the translate matrix with a relative threshold.
pub fn translate_span_rank<T: Real>(f: &GroupFunction<T>, side: Side) -> usize {
    linalg::numerical_rank(&translate_rows(f, side), rank_tolerance())
}

/// Probabilistic minimal-almost-invariance check: the translate span A of f
/// is declared minimal if the translate span of every probed nonzero g ∈ A
/// equals A (same rank, and the stacked spans have no extra rank).
///
/// Probes are the supplied `candidates` first (so an explicit witness can be
/// seeded as trial 1), then `trials` random combinations of translates of f
/// drawn from a seeded generator.
pub fn minimality_check_with<T: Real>(
    f: &GroupFunction<T>,
    side: Side,
    candidates: &[GroupFunction<T>],
    trials: usize,
    seed: u64,
) -> bool {
    let rows_f = translate_rows(f, side);
    let rank_f = linalg::numerical_rank(&rows_f, rank_tolerance());
    if rank_f == 0 {
        return false;
    }
    let spans_all = |g: &GroupFunction<T>| -> bool {
        if g.l2_norm() <= T::scaled_tol(1e-9) {
            return true; // zero probes are vacuous
        }
        let rows_g = translate_rows(g, side);
        if linalg::numerical_rank(&rows_g, rank_tolerance()) != rank_f {
            return false;
        }
        let mut stacked = rows_f.clone();
        stacked.extend(rows_g);
        linalg::numerical_rank(&stacked, rank_tolerance()) == rank_f
    };
    for g in candidates {
        if !spans_all(g) {
            return false;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = f.group().order();
    for _ in 0..trials {
        let mut g = GroupFunction::zero(f.group());
        for s in 0..n {
            let coeff = Complex::new(
                T::of(rng.gen_range(-1.0..1.0)),
                T::of(rng.gen_range(-1.0..1.0)),
            );
            let t = match side {
                Side::Left => f.left_translate(s),
                Side::Right => f.right_translate(s),
            };
            g = g.add(&t.scaled(coeff)).expect("same group");
        }
        if !spans_all(&g) {
            return false;
        }
    }
    true
}

/// [`minimality_check_with`] without explicit candidate witnesses.
pub fn minimality_check<T: Real>(
    f: &GroupFunction<T>,
    side: Side,
    trials: usize,
    seed: u64,
) -> bool {
    minimality_check_with(f, side, &[], trials, seed)
}

/// A central element of the two-sided ideal generated by f: P_Z(f̃∗f).
pub fn central_element_of_ideal<T: Real>(
    f: &GroupFunction<T>,
) -> Result<GroupFunction<T>, PeterWeylError> {
    if f.l2_norm() <= T::scaled_tol(1e-9) {
        return Err(PeterWeylError::ZeroInput);
    }
    Ok(f.involute().convolve(f)?.center_project())
}

/// Default seed when callers do not thread their own.
pub fn default_seed() -> u64 {
    DEFAULT_SEED
}
