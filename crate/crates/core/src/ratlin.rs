//! Exact linear algebra over the rationals.
//!
//! Frequency modules are finitely generated ℚ-submodules of ℝ given by
//! exact rational coordinate vectors over a declared symbol basis. Rank
//! and basis questions are decided by exact Gaussian elimination; no
//! floating comparison is involved.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rank over ℚ of the span of `rows`.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    rref(rows).0.len()
}

/// Reduced row echelon form of the row space.
///
/// Returns the nonzero echelon rows together with their pivot columns.
/// Each returned row has entry 1 in its own pivot column and entry 0 in
/// every other pivot column.
pub fn rref(rows: &[Vec<BigRational>]) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut mat: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            let mut v = r.clone();
            v.resize(cols, BigRational::zero());
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..cols {
        let Some(pivot_row) = (next_row..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(next_row, pivot_row);
        let inv = mat[next_row][col].recip();
        for entry in mat[next_row].iter_mut() {
            *entry *= &inv;
        }
        for r in 0..mat.len() {
            if r != next_row && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                for c in 0..cols {
                    let delta = &factor * &mat[next_row][c];
                    mat[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == mat.len() {
            break;
        }
    }
    mat.truncate(next_row);
    (mat, pivots)
}

/// Rewrites every input row as an integer combination of a common basis.
///
/// Returns `(basis, coeffs)` with `rows[k] = Σ_j coeffs[k][j] · basis[j]`,
/// all coefficients integers, and `basis` spanning the same ℚ-module as
/// the input rows. Zero rows get all-zero coefficients.
pub fn integer_span(rows: &[Vec<BigRational>]) -> (Vec<Vec<BigRational>>, Vec<Vec<BigInt>>) {
    let (echelon, pivots) = rref(rows);
    if echelon.is_empty() {
        return (Vec::new(), rows.iter().map(|_| Vec::new()).collect());
    }
    // Row k expands over the echelon basis with coefficients read off at the
    // pivot columns; exact because each basis row is 1 on its own pivot and
    // 0 on the others.
    let expansions: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|row| {
            pivots
                .iter()
                .map(|&p| row.get(p).cloned().unwrap_or_else(BigRational::zero))
                .collect()
        })
        .collect();
    let mut denom_lcm = BigInt::one();
    for row in &expansions {
        for q in row {
            denom_lcm = denom_lcm.lcm(q.denom());
        }
    }
    let scale = BigRational::from_integer(denom_lcm.clone());
    let basis: Vec<Vec<BigRational>> = echelon
        .iter()
        .map(|b| b.iter().map(|e| e / &scale).collect())
        .collect();
    let coeffs: Vec<Vec<BigInt>> = expansions
        .iter()
        .map(|row| {
            row.iter()
                .map(|q| {
                    let scaled = q * &scale;
                    debug_assert!(scaled.is_integer());
                    scaled.to_integer()
                })
                .collect()
        })
        .collect();
    (basis, coeffs)
}
