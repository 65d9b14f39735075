//! Constructive-flavored harmonic analysis at desk scale.
//!
//! Two halves, sharing one discipline — every approximation claim carries a
//! finitely checkable certificate:
//!
//! * [`trigpoly`] and [`bohr`]: trigonometric polynomials on ℝ with exact
//!   rational frequency modules; Bohr means, Fourier–Bohr coefficients,
//!   certified almost-periods and inclusion lengths, ε-nets of translates,
//!   frequency-module rank, and the Bohr approximation.
//! * [`groupcore`], [`chars`], [`peterweyl`]: finite groups as the
//!   desk-scale model of compact groups; the group algebra under normalized
//!   Haar convolution, character tables from class-sum diagonalization, dual
//!   groups of abelian groups, isotypic decomposition, Plancherel, and
//!   minimal-almost-invariance probes.
//!
//! Floating computations are generic over [`scalar::Real`] (`f32`/`f64`);
//! exact data (frequencies, class-algebra constants) uses
//! arbitrary-precision rationals throughout.

pub mod scalar;

pub mod ratlin;

pub mod linalg;

mod jsonio;

pub mod trigpoly;

pub mod bohr;

pub mod groupcore;

pub mod chars;

pub mod peterweyl;

/// Seed used by probabilistic routines when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x9E37_79B9_7F4A_7C15;

pub type FrequencyBasis64 = trigpoly::FrequencyBasis<f64>;
pub type FrequencyBasis32 = trigpoly::FrequencyBasis<f32>;
pub type TrigPoly64 = trigpoly::TrigPolynomial<f64>;
pub type TrigPoly32 = trigpoly::TrigPolynomial<f32>;
pub type GroupFunction64 = groupcore::GroupFunction<f64>;
pub type GroupFunction32 = groupcore::GroupFunction<f32>;
pub type CharacterTable64 = chars::CharacterTable<f64>;
pub type DualGroup64 = chars::DualGroup<f64>;
pub type Decomposition64 = peterweyl::Decomposition<f64>;
