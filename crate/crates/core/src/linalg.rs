//! Dense complex linear algebra sized for group orders up to a few dozen.
//!
//! Hermitian eigendecomposition by two-sided Jacobi rotations and singular
//! values by one-sided (Hestenes) Jacobi. Jacobi is chosen over faster
//! factorizations because the matrices here are tiny and the method keeps
//! high relative accuracy for small singular values, which the rank
//! thresholds depend on.

use num_complex::Complex;

use crate::scalar::Real;

/// Eigendecomposition of a Hermitian matrix; `vectors[k]` is the unit
/// eigenvector for `values[k]`, values ascending.
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: Vec<Vec<Complex<T>>>,
}

/// 2x2 Jacobi rotation parameters zeroing the off-diagonal entry `g` of the
/// Hermitian block [[a, g], [conj(g), b]]. Returns (c, s, phase) with the
/// unitary U = [[c, -s·phase], [s·conj(phase), c]].
fn rotation<T: Real>(a: T, b: T, g: Complex<T>) -> (T, T, Complex<T>) {
    let gn = g.norm();
    let phase = g / gn;
    let theta = (b - a) / (gn + gn);
    let root = (theta * theta + T::one()).sqrt();
    let t = if theta >= T::zero() {
        -T::one() / (theta + root)
    } else {
        T::one() / (root - theta)
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    (c, t * c, phase)
}

/// Jacobi eigendecomposition of a Hermitian matrix (upper triangle trusted,
/// lower rebuilt by conjugation). Panics if the matrix is not square.
pub fn hermitian_eigen<T: Real>(matrix: &[Vec<Complex<T>>]) -> HermitianEigen<T> {
    let n = matrix.len();
    for row in matrix {
        assert_eq!(row.len(), n, "hermitian_eigen needs a square matrix");
    }
    if n == 0 {
        return HermitianEigen {
            values: Vec::new(),
            vectors: Vec::new(),
        };
    }
    let mut a: Vec<Vec<Complex<T>>> = matrix.to_vec();
    for p in 0..n {
        a[p][p] = Complex::new(a[p][p].re, T::zero());
        for q in p + 1..n {
            a[q][p] = a[p][q].conj();
        }
    }
    let mut v: Vec<Vec<Complex<T>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Complex::new(T::one(), T::zero())
                    } else {
                        Complex::new(T::zero(), T::zero())
                    }
                })
                .collect()
        })
        .collect();

    let fro = a
        .iter()
        .flatten()
        .map(|z| z.norm_sqr())
        .fold(T::zero(), |acc, x| acc + x)
        .sqrt();
    if fro > T::zero() {
        let stop = fro * T::epsilon() * T::of(n as f64);
        for _sweep in 0..120 {
            let mut off = T::zero();
            for p in 0..n {
                for q in p + 1..n {
                    off = off + a[p][q].norm_sqr();
                }
            }
            if off.sqrt() <= stop {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let g = a[p][q];
                    if g.norm() <= stop * T::of(1e-3) {
                        continue;
                    }
                    let (c, s, phase) = rotation(a[p][p].re, a[q][q].re, g);
                    let pc = phase.conj();
                    // A <- U† A U, applied as column then row updates.
                    for k in 0..n {
                        let (akp, akq) = (a[k][p], a[k][q]);
                        a[k][p] = akp * c + akq * pc * s;
                        a[k][q] = akq * c - akp * phase * s;
                    }
                    for k in 0..n {
                        let (apk, aqk) = (a[p][k], a[q][k]);
                        a[p][k] = apk * c + aqk * phase * s;
                        a[q][k] = aqk * c - apk * pc * s;
                    }
                    a[p][q] = Complex::new(T::zero(), T::zero());
                    a[q][p] = Complex::new(T::zero(), T::zero());
                    a[p][p] = Complex::new(a[p][p].re, T::zero());
                    a[q][q] = Complex::new(a[q][q].re, T::zero());
                    for k in 0..n {
                        let (vkp, vkq) = (v[k][p], v[k][q]);
                        v[k][p] = vkp * c + vkq * pc * s;
                        v[k][q] = vkq * c - vkp * phase * s;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[i][i]
            .re
            .partial_cmp(&a[j][j].re)
            .expect("eigenvalues are finite")
    });
    let values = order.iter().map(|&i| a[i][i].re).collect();
    let vectors = order
        .iter()
        .map(|&col| (0..n).map(|row| v[row][col]).collect())
        .collect();
    HermitianEigen { values, vectors }
}

/// Singular values of a rectangular matrix given by rows, descending.
///
/// One-sided Jacobi: columns are rotated pairwise until mutually orthogonal;
/// the singular values are the final column norms.
pub fn singular_values<T: Real>(rows: &[Vec<Complex<T>>]) -> Vec<T> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if m == 0 || n == 0 {
        return Vec::new();
    }
    let mut cols: Vec<Vec<Complex<T>>> = (0..n)
        .map(|j| (0..m).map(|i| rows[i][j]).collect())
        .collect();
    let eps = T::epsilon() * T::of(8.0 * (m as f64).sqrt());
    for _sweep in 0..60 {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let mut a = T::zero();
                let mut b = T::zero();
                let mut g = Complex::new(T::zero(), T::zero());
                for k in 0..m {
                    a = a + cols[i][k].norm_sqr();
                    b = b + cols[j][k].norm_sqr();
                    g = g + cols[i][k].conj() * cols[j][k];
                }
                if g.norm_sqr() <= eps * eps * a * b || g.norm() == T::zero() {
                    continue;
                }
                rotated = true;
                let (c, s, phase) = rotation(a, b, g);
                let pc = phase.conj();
                for k in 0..m {
                    let (ci, cj) = (cols[i][k], cols[j][k]);
                    cols[i][k] = ci * c + cj * pc * s;
                    cols[j][k] = cj * c - ci * phase * s;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<T> = cols
        .iter()
        .map(|col| {
            col.iter()
                .map(|z| z.norm_sqr())
                .fold(T::zero(), |acc, x| acc + x)
                .sqrt()
        })
        .collect();
    sv.sort_by(|x, y| y.partial_cmp(x).expect("singular values are finite"));
    sv
}

/// Numerical rank: number of singular values above `rel_tol` times the
/// largest one.
pub fn numerical_rank<T: Real>(rows: &[Vec<Complex<T>>], rel_tol: T) -> usize {
    let sv = singular_values(rows);
    let Some(&max) = sv.first() else { return 0 };
    if max == T::zero() {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * max).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn eigen_of_real_symmetric_2x2() {
        let m = vec![vec![c(2.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(2.0, 0.0)]];
        let e = hermitian_eigen(&m);
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn eigen_of_complex_hermitian_2x2() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
        let m = vec![vec![c(1.0, 0.0), c(0.0, 1.0)], vec![c(0.0, -1.0), c(1.0, 0.0)]];
        let e = hermitian_eigen(&m);
        assert!(e.values[0].abs() < 1e-14);
        assert!((e.values[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn eigen_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 9;
        let mut m = vec![vec![c(0.0, 0.0); n]; n];
        for i in 0..n {
            m[i][i] = c(rng.gen_range(-1.0..1.0), 0.0);
            for j in i + 1..n {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[i][j] = z;
                m[j][i] = z.conj();
            }
        }
        let e = hermitian_eigen(&m);
        // Orthonormality.
        for a in 0..n {
            for b in 0..n {
                let dot: Complex<f64> = (0..n).map(|k| e.vectors[a][k].conj() * e.vectors[b][k]).sum();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((dot - c(expect, 0.0)).norm() < 1e-12);
            }
        }
        // A v = lambda v.
        for k in 0..n {
            for i in 0..n {
                let av: Complex<f64> = (0..n).map(|j| m[i][j] * e.vectors[k][j]).sum();
                assert!((av - e.vectors[k][i] * e.values[k]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn singular_values_of_diagonal() {
        let m = vec![
            vec![c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(-2.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ];
        let sv = singular_values(&m);
        assert!((sv[0] - 3.0).abs() < 1e-14);
        assert!((sv[1] - 2.0).abs() < 1e-14);
        assert!((sv[2] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rank_of_outer_product_is_one() {
        // rows r_i = u_i * v for fixed v.
        let u = [1.0, -2.0, 0.5, 3.0];
        let v = [c(1.0, 1.0), c(0.0, -2.0), c(3.0, 0.0)];
        let rows: Vec<Vec<Complex<f64>>> = u
            .iter()
            .map(|&ui| v.iter().map(|&vj| vj * ui).collect())
            .collect();
        assert_eq!(numerical_rank(&rows, 1e-8), 1);
    }

    #[test]
    fn rank_of_zero_and_identity() {
        let zero = vec![vec![c(0.0, 0.0); 3]; 3];
        assert_eq!(numerical_rank(&zero, 1e-8), 0);
        let id: Vec<Vec<Complex<f64>>> = (0..4)
            .map(|i| (0..4).map(|j| c(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
            .collect();
        assert_eq!(numerical_rank(&id, 1e-8), 4);
    }

    #[test]
    fn rectangular_stack_rank() {
        // Stacking a row space with itself keeps the rank.
        let base = vec![
            vec![c(1.0, 0.0), c(2.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)],
        ];
        let mut stacked = base.clone();
        stacked.push(vec![c(2.0, 0.0), c(5.0, 0.0), c(1.0, 2.0)]); // row0·2 + row1
        assert_eq!(numerical_rank(&stacked, 1e-8), 2);
    }
}
