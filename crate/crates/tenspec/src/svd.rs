//! Singular value decomposition by one-sided Jacobi rotations.
//!
//! The method orthogonalizes the columns of the working matrix with complex
//! Jacobi rotations; at convergence the column norms are the singular values,
//! the normalized columns are the left singular vectors, and the accumulated
//! rotations form `V`. One-sided Jacobi computes small singular values with
//! high relative accuracy, which is what the rank thresholds here rely on;
//! an `A^H A` eigenvalue approach would bottom out near `sqrt(eps)` and is
//! not usable at a 1e-10 rank cutoff.

use crate::matrix::{ComplexMatrix, LinalgError, Tolerance};
use num_complex::Complex64;

/// Factorization `A = U Σ V^H` with singular values sorted descending.
///
/// `u` is `rows x min_dim`, `v` is `cols x min_dim`; columns of `u` whose
/// singular value is numerically zero carry no information.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

const MAX_SWEEPS: usize = 60;
const JACOBI_TOL: f64 = 1e-15;

/// Computes the SVD of any rectangular matrix.
pub fn svd(a: &ComplexMatrix) -> Result<Svd, LinalgError> {
    if a.rows() >= a.cols() {
        svd_tall(a)
    } else {
        // A^H = V Σ U^H, so swap the factor roles.
        let f = svd_tall(&a.conj_transpose())?;
        Ok(Svd {
            u: f.v,
            singular_values: f.singular_values,
            v: f.u,
        })
    }
}

fn svd_tall(a: &ComplexMatrix) -> Result<Svd, LinalgError> {
    let m = a.rows();
    let n = a.cols();
    let mut w = a.clone();
    let mut v = ComplexMatrix::identity(n);

    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (app, aqq, apq) = column_gram(&w, p, q);
                let scale = (app * aqq).sqrt();
                if apq.norm() <= JACOBI_TOL * scale || scale == 0.0 {
                    continue;
                }
                rotated = true;
                // Phase-reduce the off-diagonal entry, then apply the real
                // Jacobi rotation that annihilates it.
                let phase = apq / apq.norm();
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let phc = phase.conj();
                for i in 0..m {
                    let wi = w[(i, p)];
                    let wj = w[(i, q)];
                    w[(i, p)] = wi * c - wj * phc * s;
                    w[(i, q)] = wi * s + wj * phc * c;
                }
                for i in 0..n {
                    let vi = v[(i, p)];
                    let vj = v[(i, q)];
                    v[(i, p)] = vi * c - vj * phc * s;
                    v[(i, q)] = vi * s + vj * phc * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = (0..n)
        .map(|j| {
            (0..m)
                .map(|i| w[(i, j)].norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));

    let mut u = ComplexMatrix::zeros(m, n);
    let mut vs = ComplexMatrix::zeros(n, n);
    let mut sigma = Vec::with_capacity(n);
    for (out_col, &j) in order.iter().enumerate() {
        let s = norms[j];
        sigma.push(s);
        for i in 0..m {
            u[(i, out_col)] = if s > 0.0 {
                w[(i, j)] / s
            } else {
                Complex64::new(0.0, 0.0)
            };
        }
        for i in 0..n {
            vs[(i, out_col)] = v[(i, j)];
        }
    }
    Ok(Svd {
        u,
        singular_values: sigma,
        v: vs,
    })
}

fn column_gram(w: &ComplexMatrix, p: usize, q: usize) -> (f64, f64, Complex64) {
    let m = w.rows();
    let mut app = 0.0;
    let mut aqq = 0.0;
    let mut apq = Complex64::new(0.0, 0.0);
    for i in 0..m {
        let wp = w[(i, p)];
        let wq = w[(i, q)];
        app += wp.norm_sqr();
        aqq += wq.norm_sqr();
        apq += wp.conj() * wq;
    }
    (app, aqq, apq)
}

/// Singular values only, sorted descending.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>, LinalgError> {
    Ok(svd(a)?.singular_values)
}

/// Number of singular values exceeding `rank_rel * sigma_max`; 0 for the
/// numerically zero matrix.
pub fn numerical_rank(a: &ComplexMatrix, tol: &Tolerance) -> usize {
    let sv = match singular_values(a) {
        Ok(sv) => sv,
        Err(_) => return 0,
    };
    rank_from_singular_values(&sv, tol)
}

/// Rank decision applied to a precomputed singular value list.
pub fn rank_from_singular_values(sv: &[f64], tol: &Tolerance) -> usize {
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol.rank_rel * smax).count()
}

/// Largest singular value (operator 2-norm).
pub fn operator_norm(a: &ComplexMatrix) -> Result<f64, LinalgError> {
    Ok(singular_values(a)?.first().copied().unwrap_or(0.0))
}

/// Condition number estimate `sigma_max / sigma_min` for a square matrix;
/// `f64::INFINITY` when the smallest singular value is zero.
pub fn condition_number(a: &ComplexMatrix) -> Result<f64, LinalgError> {
    let sv = singular_values(a)?;
    let smax = sv.first().copied().unwrap_or(0.0);
    let smin = sv.last().copied().unwrap_or(0.0);
    if smin == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(smax / smin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reconstruction_error(a: &ComplexMatrix, f: &Svd) -> f64 {
        let k = f.singular_values.len();
        let mut sigma = ComplexMatrix::zeros(k, k);
        for (i, &s) in f.singular_values.iter().enumerate() {
            sigma[(i, i)] = c(s, 0.0);
        }
        let rec = f.u.mul(&sigma).unwrap().mul(&f.v.conj_transpose()).unwrap();
        a.sub(&rec).unwrap().frobenius_norm()
    }

    #[test]
    fn diagonal_matrix_singular_values() {
        let a = ComplexMatrix::diagonal(&[c(3.0, 0.0), c(0.0, -4.0), c(1.0, 0.0)]);
        let sv = singular_values(&a).unwrap();
        assert!((sv[0] - 4.0).abs() < 1e-12);
        assert!((sv[1] - 3.0).abs() < 1e-12);
        assert!((sv[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rank_of_outer_product_is_one() {
        // data[i][j] = (i+1)*(j+1) as a complex rank-1 matrix.
        let rows: Vec<Vec<f64>> = (1..=4)
            .map(|i| (1..=4).map(|j| (i * j) as f64).collect())
            .collect();
        let a = ComplexMatrix::from_real_rows(&rows).unwrap();
        let tol = Tolerance::for_matrix(&a);
        assert_eq!(numerical_rank(&a, &tol), 1);
    }

    #[test]
    fn rank_of_zero_matrix_is_zero() {
        let a = ComplexMatrix::zeros(3, 2);
        let tol = Tolerance::for_shape(3, 2, 0.0);
        assert_eq!(numerical_rank(&a, &tol), 0);
    }

    #[test]
    fn svd_reconstructs_random_complex_matrix() {
        // Fixed pseudo-random entries; no RNG needed for a smoke reconstruction.
        let mut vals = Vec::new();
        let mut x = 0.37f64;
        for _ in 0..(5 * 3) {
            x = (x * 997.0 + 0.123).fract();
            let y = (x * 631.0 + 0.77).fract();
            vals.push(c(2.0 * x - 1.0, 2.0 * y - 1.0));
        }
        let a = ComplexMatrix::new(5, 3, vals).unwrap();
        let f = svd(&a).unwrap();
        assert!(reconstruction_error(&a, &f) < 1e-13);
        // U and V have orthonormal columns.
        let uhu = f.u.conj_transpose().mul(&f.u).unwrap();
        let vhv = f.v.conj_transpose().mul(&f.v).unwrap();
        let eye = ComplexMatrix::identity(3);
        assert!(uhu.sub(&eye).unwrap().frobenius_norm() < 1e-13);
        assert!(vhv.sub(&eye).unwrap().frobenius_norm() < 1e-13);
    }

    #[test]
    fn wide_matrix_svd_matches_transpose_route() {
        let a = ComplexMatrix::new(
            2,
            4,
            vec![
                c(1.0, 0.0),
                c(0.0, 1.0),
                c(2.0, -1.0),
                c(0.5, 0.0),
                c(0.0, 0.0),
                c(1.0, 1.0),
                c(-1.0, 0.0),
                c(0.0, 2.0),
            ],
        )
        .unwrap();
        let f = svd(&a).unwrap();
        assert!(reconstruction_error(&a, &f) < 1e-13);
        let tol = Tolerance::for_matrix(&a);
        assert_eq!(rank_from_singular_values(&f.singular_values, &tol), 2);
    }

    #[test]
    fn rank_detects_tiny_but_genuine_values() {
        // Diagonal with a 1e-6 entry: well above the relative cutoff.
        let a = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(1e-6, 0.0)]);
        let tol = Tolerance::for_matrix(&a);
        assert_eq!(numerical_rank(&a, &tol), 2);
        // 1e-12 relative: below the cutoff.
        let b = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(1e-12, 0.0)]);
        let tol_b = Tolerance::for_matrix(&b);
        assert_eq!(numerical_rank(&b, &tol_b), 1);
    }

    #[test]
    fn condition_number_of_scaled_identity() {
        let a = ComplexMatrix::diagonal(&[c(10.0, 0.0), c(0.1, 0.0)]);
        assert!((condition_number(&a).unwrap() - 100.0).abs() < 1e-9);
    }
}
