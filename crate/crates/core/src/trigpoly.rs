//! Trigonometric polynomials Σ cₖ·e^{iλₖx} on the real line.
//!
//! Frequencies λ are exact rational coordinate vectors over a declared
//! [`FrequencyBasis`] of positive real symbols (e.g. 1 and √2), so frequency
//! equality, term merging and ℚ-module rank are decided exactly. Only the
//! complex coefficients are floating point. This is the one representation
//! choice everything else leans on: questions like "is this frequency a
//! rational combination of those" are undecidable on floats.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::jsonio;
use crate::scalar::Real;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrigPolyError {
    #[error("BasisMismatch: operands use different frequency bases")]
    BasisMismatch,
    #[error("FrequencyLength: frequency has {got} coordinates, basis has {expected}")]
    FrequencyLength { expected: usize, got: usize },
    #[error("InvalidBasis: {0}")]
    InvalidBasis(String),
    #[error("Json: {0}")]
    Json(String),
}

/// Ordered list of named, strictly positive real frequency symbols.
///
/// Names are pairwise distinct; negative frequencies are expressed through
/// negative rational coordinates, never through negative symbol values.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyBasis<T> {
    symbols: Vec<(String, T)>,
}

impl<T: Real> FrequencyBasis<T> {
    pub fn new<S: Into<String>>(symbols: Vec<(S, T)>) -> Result<Arc<Self>, TrigPolyError> {
        let symbols: Vec<(String, T)> = symbols.into_iter().map(|(n, v)| (n.into(), v)).collect();
        for (i, (name, value)) in symbols.iter().enumerate() {
            if !(*value > T::zero()) {
                return Err(TrigPolyError::InvalidBasis(format!(
                    "symbol `{name}` must have a strictly positive value"
                )));
            }
            if symbols[..i].iter().any(|(other, _)| other == name) {
                return Err(TrigPolyError::InvalidBasis(format!(
                    "duplicate symbol `{name}`"
                )));
            }
        }
        Ok(Arc::new(Self { symbols }))
    }

    /// The canonical single-symbol basis {("one", 1)}.
    pub fn unit() -> Arc<Self> {
        Self::new(vec![("one", T::one())]).expect("unit basis is valid")
    }

    /// The two-symbol basis {("one", 1), ("sqrt2", √2)} used all over the
    /// tests and the demo.
    pub fn one_sqrt2() -> Arc<Self> {
        Self::new(vec![
            ("one", T::one()),
            ("sqrt2", T::of(std::f64::consts::SQRT_2)),
        ])
        .expect("basis is valid")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[(String, T)] {
        &self.symbols
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|(n, _)| n == name)
    }

    /// Numeric value of a frequency over this basis: Σ coordᵢ · valueᵢ.
    pub fn frequency_value(&self, freq: &Frequency) -> T {
        freq.coords()
            .iter()
            .zip(&self.symbols)
            .fold(T::zero(), |acc, (coord, (_, value))| {
                acc + T::of(coord.to_f64().unwrap_or(f64::NAN)) * *value
            })
    }
}

/// Exact frequency: one rational coordinate per basis symbol.
///
/// Equality is exact coordinate-wise rational equality; the numeric value is
/// recomputable through [`FrequencyBasis::frequency_value`], never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Frequency {
    coords: Vec<BigRational>,
}

impl Frequency {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self { coords }
    }

    pub fn zero(len: usize) -> Self {
        Self {
            coords: vec![BigRational::zero(); len],
        }
    }

    /// Unit coordinate at `index`, zero elsewhere.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut coords = vec![BigRational::zero(); len];
        coords[index] = BigRational::from_integer(1.into());
        Self { coords }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

/// One term c·e^{iλx}.
#[derive(Debug, Clone, PartialEq)]
pub struct Term<T> {
    pub coeff: Complex<T>,
    pub freq: Frequency,
}

/// A trigonometric polynomial in canonical form: frequencies pairwise
/// distinct, no exact-zero coefficients, terms sorted lexicographically by
/// frequency coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial<T> {
    basis: Arc<FrequencyBasis<T>>,
    terms: Vec<Term<T>>,
}

impl<T: Real> TrigPolynomial<T> {
    /// Builds a polynomial, merging equal frequencies exactly and restoring
    /// canonical form.
    pub fn new(
        basis: Arc<FrequencyBasis<T>>,
        terms: Vec<(Complex<T>, Frequency)>,
    ) -> Result<Self, TrigPolyError> {
        let width = basis.len();
        let mut merged: BTreeMap<Frequency, Complex<T>> = BTreeMap::new();
        for (coeff, freq) in terms {
            if freq.len() != width {
                return Err(TrigPolyError::FrequencyLength {
                    expected: width,
                    got: freq.len(),
                });
            }
            let entry = merged
                .entry(freq)
                .or_insert_with(|| Complex::new(T::zero(), T::zero()));
            *entry = *entry + coeff;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, coeff)| !(coeff.re == T::zero() && coeff.im == T::zero()))
            .map(|(freq, coeff)| Term { coeff, freq })
            .collect();
        Ok(Self { basis, terms })
    }

    pub fn zero(basis: Arc<FrequencyBasis<T>>) -> Self {
        Self {
            basis,
            terms: Vec::new(),
        }
    }

    pub fn constant(basis: Arc<FrequencyBasis<T>>, value: Complex<T>) -> Self {
        let freq = Frequency::zero(basis.len());
        Self::new(basis, vec![(value, freq)]).expect("constant frequency fits any basis")
    }

    /// The single term c·e^{iλx}.
    pub fn character(
        basis: Arc<FrequencyBasis<T>>,
        freq: Frequency,
        coeff: Complex<T>,
    ) -> Result<Self, TrigPolyError> {
        Self::new(basis, vec![(coeff, freq)])
    }

    pub fn basis(&self) -> &Arc<FrequencyBasis<T>> {
        &self.basis
    }

    pub fn terms(&self) -> &[Term<T>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact coefficient of `freq`, zero if no such term exists.
    pub fn coefficient(&self, freq: &Frequency) -> Complex<T> {
        self.terms
            .iter()
            .find(|t| &t.freq == freq)
            .map_or(Complex::new(T::zero(), T::zero()), |t| t.coeff)
    }

    /// Σ cₖ·e^{i·value(λₖ)·x}.
    pub fn eval(&self, x: T) -> Complex<T> {
        self.terms
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, term| {
                acc + term.coeff * Complex::cis(self.basis.frequency_value(&term.freq) * x)
            })
    }

    pub fn add(&self, other: &Self) -> Result<Self, TrigPolyError> {
        if self.basis != other.basis {
            return Err(TrigPolyError::BasisMismatch);
        }
        let terms = self
            .terms
            .iter()
            .chain(&other.terms)
            .map(|t| (t.coeff, t.freq.clone()))
            .collect();
        Self::new(Arc::clone(&self.basis), terms)
    }

    /// Product; frequencies add as exact rational vectors, so a k-term by
    /// m-term product has at most k·m terms and merging never compares
    /// floats.
    pub fn multiply(&self, other: &Self) -> Result<Self, TrigPolyError> {
        if self.basis != other.basis {
            return Err(TrigPolyError::BasisMismatch);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push((a.coeff * b.coeff, a.freq.add(&b.freq)));
            }
        }
        Self::new(Arc::clone(&self.basis), terms)
    }

    pub fn scaled(&self, factor: Complex<T>) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| (t.coeff * factor, t.freq.clone()))
            .collect();
        Self::new(Arc::clone(&self.basis), terms).expect("scaling keeps frequencies valid")
    }

    /// Σ |cₖ|: a certified upper bound for sup_x |f(x)|.
    pub fn sup_norm_bound(&self) -> T {
        self.terms
            .iter()
            .fold(T::zero(), |acc, t| acc + t.coeff.norm())
    }

    pub fn to_json(&self) -> Value {
        let basis: Vec<Value> = self
            .basis
            .symbols()
            .iter()
            .map(|(name, value)| {
                json!({"name": name, "value": value.to_f64().unwrap_or(f64::NAN)})
            })
            .collect();
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|t| {
                let mut freq = Map::new();
                for ((name, _), coord) in self.basis.symbols().iter().zip(t.freq.coords()) {
                    freq.insert(
                        name.clone(),
                        Value::String(format!("{}/{}", coord.numer(), coord.denom())),
                    );
                }
                json!({
                    "re": t.coeff.re.to_f64().unwrap_or(f64::NAN),
                    "im": t.coeff.im.to_f64().unwrap_or(f64::NAN),
                    "freq": Value::Object(freq),
                })
            })
            .collect();
        json!({"basis": basis, "terms": terms})
    }

    pub fn from_json(value: &Value) -> Result<Self, TrigPolyError> {
        let err = TrigPolyError::Json;
        jsonio::get_object(value, "trig polynomial").map_err(err)?;
        let mut symbols = Vec::new();
        for entry in jsonio::get_array(value, "basis").map_err(err)? {
            let name = jsonio::get_str(entry, "name").map_err(err)?;
            let sym_value = jsonio::get_f64(entry, "value").map_err(err)?;
            symbols.push((name.to_string(), T::of(sym_value)));
        }
        let basis = FrequencyBasis::new(symbols)
            .map_err(|e| TrigPolyError::Json(format!("invalid basis: {e}")))?;
        let mut terms = Vec::new();
        for entry in jsonio::get_array(value, "terms").map_err(err)? {
            let coeff = jsonio::complex_from_json::<T>(entry).map_err(err)?;
            let freq_obj = entry
                .get("freq")
                .and_then(Value::as_object)
                .ok_or_else(|| TrigPolyError::Json("term missing `freq` object".into()))?;
            let mut coords = vec![BigRational::zero(); basis.len()];
            for (name, raw) in freq_obj {
                let idx = basis.index_of(name).ok_or_else(|| {
                    TrigPolyError::Json(format!("frequency names unknown symbol `{name}`"))
                })?;
                let text = raw
                    .as_str()
                    .ok_or_else(|| TrigPolyError::Json(format!("coordinate `{name}` must be a \"p/q\" string")))?;
                coords[idx] = BigRational::from_str(text).map_err(|e| {
                    TrigPolyError::Json(format!("bad rational `{text}` for `{name}`: {e}"))
                })?;
            }
            terms.push((coeff, Frequency::new(coords)));
        }
        Self::new(basis, terms)
    }

    /// Parses a `{"symbol": "p/q", ...}` object into a frequency over this
    /// polynomial's basis; absent symbols default to zero.
    pub fn parse_frequency(&self, value: &Value) -> Result<Frequency, TrigPolyError> {
        let obj = value
            .as_object()
            .ok_or_else(|| TrigPolyError::Json("frequency must be a JSON object".into()))?;
        let mut coords = vec![BigRational::zero(); self.basis.len()];
        for (name, raw) in obj {
            let idx = self.basis.index_of(name).ok_or_else(|| {
                TrigPolyError::Json(format!("frequency names unknown symbol `{name}`"))
            })?;
            let text = raw
                .as_str()
                .ok_or_else(|| TrigPolyError::Json(format!("coordinate `{name}` must be a \"p/q\" string")))?;
            coords[idx] = BigRational::from_str(text)
                .map_err(|e| TrigPolyError::Json(format!("bad rational `{text}`: {e}")))?;
        }
        Ok(Frequency::new(coords))
    }
}
