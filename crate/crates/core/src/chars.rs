//! Characters of finite groups, computed as the joint eigenvectors of the
//! commuting class-sum multiplication operators on the center of the group
//! algebra.
//!
//! The class-sum matrices are expressed in the orthonormal class basis,
//! where the adjoint of multiplication by a class sum is multiplication by
//! the inverse class sum. A random real combination of their Hermitian and
//! anti-Hermitian parts is therefore Hermitian, shares the joint
//! eigenvectors, and generically separates all of them; near-degenerate
//! clusters are split recursively with fresh random combinations.
//!
//! From a joint eigenvector, the morphism values ω_σ(C) (eigenvalues of the
//! class-sum operators) come out of Rayleigh quotients, the degree from
//! d_σ = sqrt(n / Σ_C |ω_σ(C)|²/|C|), and the trace character from
//! χ_σ(C) = d_σ·ω_σ(C)/|C|.

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::groupcore::{ConjugacyClasses, FiniteGroup, GroupFunction};
use crate::jsonio;
use crate::linalg;
use crate::scalar::Real;
use crate::DEFAULT_SEED;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CharsError {
    #[error("DegeneracySplitFailure: eigenspaces could not be separated within the retry budget")]
    DegeneracySplitFailure,
    #[error("NotAbelian: the dual group is defined for abelian groups only")]
    NotAbelian,
    #[error("DegreeRounding: character {sigma} has non-integral degree estimate {value}")]
    DegreeRounding { sigma: usize, value: f64 },
    #[error("DualClosure: a pointwise product of characters matched no character row")]
    DualClosure,
}

/// Structure constants of the class algebra: with κ_i the class sums of the
/// normalized group algebra (κ_i = n·1_{C_i}), the products expand as
/// κ_i κ_j = Σ_k c_{ijk} κ_k with nonnegative integer c_{ijk}, computed by
/// exhaustive counting.
pub struct ClassAlgebra {
    pub constants: Vec<Vec<Vec<BigRational>>>,
}

impl ClassAlgebra {
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.constants[i][j][k]
    }
}

pub fn class_algebra_structure(
    group: &Arc<FiniteGroup>,
    classes: &ConjugacyClasses,
) -> ClassAlgebra {
    let c = classes.len();
    let mut constants = vec![vec![vec![BigRational::from_integer(BigInt::from(0)); c]; c]; c];
    for i in 0..c {
        for j in 0..c {
            let mut tally = vec![0u64; c];
            for &x in &classes.classes[i] {
                for &y in &classes.classes[j] {
                    tally[classes.class_of[group.mul(x, y)]] += 1;
                }
            }
            for k in 0..c {
                // tally_k counts all products landing in C_k; each target
                // element is hit equally often, so this division is exact.
                constants[i][j][k] = BigRational::new(
                    BigInt::from(tally[k]),
                    BigInt::from(classes.classes[k].len() as u64),
                );
            }
        }
    }
    ClassAlgebra { constants }
}

/// Irreducible trace characters, degrees, and the morphism values on the
/// class-sum basis of the center.
#[derive(Debug, Clone)]
pub struct CharacterTable<T> {
    group: Arc<FiniteGroup>,
    classes: ConjugacyClasses,
    degrees: Vec<usize>,
    /// characters[sigma][class] — trace character values.
    characters: Vec<Vec<Complex<T>>>,
    /// morphisms[sigma][class] = |C|·χ_σ(C)/d_σ.
    morphisms: Vec<Vec<Complex<T>>>,
}

impl<T: Real> CharacterTable<T> {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn trace_values(&self, sigma: usize) -> &[Complex<T>] {
        &self.characters[sigma]
    }

    pub fn morphism_values(&self, sigma: usize) -> &[Complex<T>] {
        &self.morphisms[sigma]
    }

    /// The trace character lifted to a function on the group.
    pub fn character_function(&self, sigma: usize) -> GroupFunction<T> {
        let values = (0..self.group.order())
            .map(|x| self.characters[sigma][self.classes.class_of[x]])
            .collect();
        GroupFunction::new(&self.group, values).expect("one value per element")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "classes": self.classes.classes,
            "degrees": self.degrees,
            "characters": self.characters.iter().map(|row| {
                row.iter().map(|&z| jsonio::complex_to_json(z)).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "morphisms": self.morphisms.iter().map(|row| {
                row.iter().map(|&z| jsonio::complex_to_json(z)).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

// Random Hermitian element of the complexified class algebra in the
// orthonormal class basis.
fn random_combination<T: Real>(
    sym: &[Vec<Vec<T>>],
    skew: &[Vec<Vec<T>>],
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<Complex<T>>> {
    let c = sym[0].len();
    let mut h = vec![vec![Complex::new(T::zero(), T::zero()); c]; c];
    for i in 0..sym.len() {
        let r = T::of(rng.gen_range(-1.0..1.0));
        let s = T::of(rng.gen_range(-1.0..1.0));
        for (hr, (sr, kr)) in h.iter_mut().zip(sym[i].iter().zip(&skew[i])) {
            for (hv, (&sv, &kv)) in hr.iter_mut().zip(sr.iter().zip(kr)) {
                *hv = *hv + Complex::new(r * sv, s * kv);
            }
        }
    }
    h
}

// Splits a joint-eigenvector search space by a fresh random combination,
// recursing on eigenvalue clusters; tolerance halves with depth.
fn resolve_subspace<T: Real>(
    basis: Vec<Vec<Complex<T>>>,
    sym: &[Vec<Vec<T>>],
    skew: &[Vec<Vec<T>>],
    rng: &mut ChaCha8Rng,
    tol: T,
    budget: usize,
) -> Result<Vec<Vec<Complex<T>>>, CharsError> {
    let dim = basis.len();
    if dim == 1 {
        return Ok(basis);
    }
    if budget == 0 {
        return Err(CharsError::DegeneracySplitFailure);
    }
    let c = basis[0].len();
    let h = random_combination(sym, skew, rng);
    // Projected operator P[a][b] = basis_a† H basis_b (Hermitian since the
    // basis vectors are orthonormal).
    let mut projected = vec![vec![Complex::new(T::zero(), T::zero()); dim]; dim];
    for b in 0..dim {
        let mut hb = vec![Complex::new(T::zero(), T::zero()); c];
        for (row, out) in h.iter().zip(hb.iter_mut()) {
            *out = row
                .iter()
                .zip(&basis[b])
                .fold(Complex::new(T::zero(), T::zero()), |acc, (m, v)| acc + *m * *v);
        }
        for a in 0..dim {
            projected[a][b] = basis[a]
                .iter()
                .zip(&hb)
                .fold(Complex::new(T::zero(), T::zero()), |acc, (u, v)| {
                    acc + u.conj() * *v
                });
        }
    }
    let eig = linalg::hermitian_eigen(&projected);
    let scale = eig
        .values
        .iter()
        .fold(T::one(), |acc, v| acc.max(v.abs()));
    let gap = tol * scale;
    let mut resolved = Vec::with_capacity(dim);
    let mut start = 0;
    for t in 1..=dim {
        if t == dim || eig.values[t] - eig.values[t - 1] > gap {
            let lifted: Vec<Vec<Complex<T>>> = (start..t)
                .map(|idx| {
                    let w = &eig.vectors[idx];
                    (0..c)
                        .map(|row| {
                            w.iter()
                                .zip(&basis)
                                .fold(Complex::new(T::zero(), T::zero()), |acc, (wt, bt)| {
                                    acc + *wt * bt[row]
                                })
                        })
                        .collect()
                })
                .collect();
            let sub = if t - start == dim {
                // No progress with this combination; retry with a fresh one
                // and a halved tolerance.
                resolve_subspace(lifted, sym, skew, rng, tol / T::of(2.0), budget - 1)?
            } else {
                resolve_subspace(lifted, sym, skew, rng, tol / T::of(2.0), budget)?
            };
            resolved.extend(sub);
            start = t;
        }
    }
    Ok(resolved)
}

pub fn compute_characters<T: Real>(
    group: &Arc<FiniteGroup>,
) -> Result<CharacterTable<T>, CharsError> {
    compute_characters_seeded(group, DEFAULT_SEED)
}

pub fn compute_characters_seeded<T: Real>(
    group: &Arc<FiniteGroup>,
    seed: u64,
) -> Result<CharacterTable<T>, CharsError> {
    let classes = group.conjugacy_classes();
    let algebra = class_algebra_structure(group, &classes);
    let c = classes.len();
    let n = T::of(group.order() as f64);
    let sizes: Vec<T> = (0..c).map(|k| T::of(classes.size(k) as f64)).collect();

    // Class-sum multiplication matrices in the orthonormal class basis:
    // M_i[k][j] = c_{ijk}·sqrt(|C_k|/|C_j|).
    let matrices: Vec<Vec<Vec<T>>> = (0..c)
        .map(|i| {
            (0..c)
                .map(|k| {
                    (0..c)
                        .map(|j| {
                            let a = algebra.constants[i][j][k]
                                .to_f64()
                                .expect("small integer structure constant");
                            T::of(a) * (sizes[k] / sizes[j]).sqrt()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let sym: Vec<Vec<Vec<T>>> = matrices
        .iter()
        .map(|m| {
            (0..c)
                .map(|k| {
                    (0..c)
                        .map(|j| (m[k][j] + m[j][k]) / T::of(2.0))
                        .collect()
                })
                .collect()
        })
        .collect();
    let skew: Vec<Vec<Vec<T>>> = matrices
        .iter()
        .map(|m| {
            (0..c)
                .map(|k| {
                    (0..c)
                        .map(|j| (m[k][j] - m[j][k]) / T::of(2.0))
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let identity_basis: Vec<Vec<Complex<T>>> = (0..c)
        .map(|i| {
            (0..c)
                .map(|j| {
                    Complex::new(if i == j { T::one() } else { T::zero() }, T::zero())
                })
                .collect()
        })
        .collect();
    let vectors = resolve_subspace(
        identity_basis,
        &sym,
        &skew,
        &mut rng,
        T::scaled_tol(1e-8),
        8,
    )?;

    // Rayleigh quotients recover the morphism values; the i = 0 operator is
    // the identity so ω(C_0) = 1 exactly.
    let mut rows: Vec<(usize, Vec<Complex<T>>, Vec<Complex<T>>)> = Vec::with_capacity(c);
    let degree_tol = T::scaled_tol(1e-6);
    for (sigma, v) in vectors.iter().enumerate() {
        let norm_sqr = v
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr());
        let mut omega = Vec::with_capacity(c);
        for m in &matrices {
            let mut quad = Complex::new(T::zero(), T::zero());
            for k in 0..c {
                let mut mv = Complex::new(T::zero(), T::zero());
                for j in 0..c {
                    mv = mv + v[j] * m[k][j];
                }
                quad = quad + v[k].conj() * mv;
            }
            omega.push(quad / norm_sqr);
        }
        let weighted = omega
            .iter()
            .zip(&sizes)
            .fold(T::zero(), |acc, (w, size)| acc + w.norm_sqr() / *size);
        let degree_raw = (n / weighted).sqrt();
        let degree = degree_raw.round();
        if (degree_raw - degree).abs() >= degree_tol || degree < T::one() {
            return Err(CharsError::DegreeRounding {
                sigma,
                value: degree_raw.to_f64().unwrap_or(f64::NAN),
            });
        }
        let traces: Vec<Complex<T>> = omega
            .iter()
            .zip(&sizes)
            .map(|(w, size)| *w * (degree / *size))
            .collect();
        rows.push((degree.to_f64().unwrap_or(1.0) as usize, traces, omega));
    }

    // Canonical order: degree ascending, then trace values rounded to 1e-6
    // compared lexicographically with larger real (then imaginary) parts
    // first. This puts the trivial character in row 0.
    let round6 = |x: T| -> i64 {
        (x * T::of(1e6))
            .round()
            .to_f64()
            .map(|v| v as i64)
            .unwrap_or(0)
    };
    rows.sort_by(|a, b| {
        a.0.cmp(&b.0).then_with(|| {
            for (za, zb) in a.1.iter().zip(&b.1) {
                let key = round6(zb.re)
                    .cmp(&round6(za.re))
                    .then(round6(zb.im).cmp(&round6(za.im)));
                if key != std::cmp::Ordering::Equal {
                    return key;
                }
            }
            std::cmp::Ordering::Equal
        })
    });

    let degrees = rows.iter().map(|r| r.0).collect();
    let characters = rows.iter().map(|r| r.1.clone()).collect();
    let morphisms = rows.iter().map(|r| r.2.clone()).collect();
    Ok(CharacterTable {
        group: Arc::clone(group),
        classes,
        degrees,
        characters,
        morphisms,
    })
}

/// All characters of a finite abelian group as unit-modulus multiplicative
/// functions, with their multiplication table under pointwise product.
#[derive(Debug, Clone)]
pub struct DualGroup<T> {
    group: Arc<FiniteGroup>,
    /// characters[alpha][x] — value of the alpha-th character at element x.
    characters: Vec<Vec<Complex<T>>>,
    /// table[a][b] = index of the pointwise product character.
    table: Vec<Vec<usize>>,
}

impl<T: Real> DualGroup<T> {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn character(&self, alpha: usize) -> &[Complex<T>] {
        &self.characters[alpha]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn to_json(&self) -> Value {
        json!({
            "characters": self.characters.iter().map(|row| {
                row.iter().map(|&z| jsonio::complex_to_json(z)).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "table": self.table,
        })
    }
}

pub fn dual_group<T: Real>(group: &Arc<FiniteGroup>) -> Result<DualGroup<T>, CharsError> {
    dual_group_seeded(group, DEFAULT_SEED)
}

pub fn dual_group_seeded<T: Real>(
    group: &Arc<FiniteGroup>,
    seed: u64,
) -> Result<DualGroup<T>, CharsError> {
    if !group.is_abelian() {
        return Err(CharsError::NotAbelian);
    }
    let table = compute_characters_seeded::<T>(group, seed)?;
    let n = group.order();
    let characters: Vec<Vec<Complex<T>>> = (0..table.len())
        .map(|sigma| table.character_function(sigma).values().to_vec())
        .collect();
    let sup_dist = |a: &[Complex<T>], b: &[Complex<T>]| -> T {
        a.iter()
            .zip(b)
            .fold(T::zero(), |acc, (x, y)| acc.max((*x - *y).norm()))
    };
    let mut mult = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            let product: Vec<Complex<T>> = characters[a]
                .iter()
                .zip(&characters[b])
                .map(|(x, y)| *x * *y)
                .collect();
            // Distinct characters are sup-distance >= 1 apart, so a loose
            // match threshold is still unambiguous.
            let hit = (0..n)
                .map(|k| (k, sup_dist(&product, &characters[k])))
                .min_by(|(_, x), (_, y)| x.partial_cmp(y).expect("finite distances"))
                .filter(|(_, d)| *d < T::of(0.1))
                .map(|(k, _)| k)
                .ok_or(CharsError::DualClosure)?;
            mult[a][b] = hit;
        }
    }
    Ok(DualGroup {
        group: Arc::clone(group),
        characters,
        table: mult,
    })
}

/// Minimum pairwise sup-distance between distinct characters of the dual;
/// the discreteness theorem puts it at 1 or above.
pub fn verify_dual_discreteness<T: Real>(dual: &DualGroup<T>) -> T {
    let n = dual.len();
    let mut min = T::infinity();
    for a in 0..n {
        for b in a + 1..n {
            let d = dual.characters[a]
                .iter()
                .zip(&dual.characters[b])
                .fold(T::zero(), |acc, (x, y)| acc.max((*x - *y).norm()));
            if d < min {
                min = d;
            }
        }
    }
    min
}
