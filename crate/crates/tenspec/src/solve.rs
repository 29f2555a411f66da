//! Linear solves via LU with partial pivoting.

use crate::matrix::{ComplexMatrix, LinalgError, Tolerance};
use crate::svd::numerical_rank;
use num_complex::Complex64;

/// Solves `A X = B` for square `A`.
///
/// `A` must be numerically nonsingular: its `numerical_rank` at `tol` must be
/// full. Returns [`LinalgError::SingularSystem`] otherwise.
pub fn solve(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<ComplexMatrix, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            op: "solve",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() != b.rows() {
        return Err(LinalgError::DimensionMismatch {
            op: "solve",
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    if numerical_rank(a, tol) < a.rows() {
        return Err(LinalgError::SingularSystem);
    }
    lu_solve(a, b)
}

/// Inverse of a square, numerically nonsingular matrix.
pub fn inverse(a: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix, LinalgError> {
    solve(a, &ComplexMatrix::identity(a.rows()), tol)
}

/// LU solve without the rank pre-check; still errors on an exactly unusable
/// pivot. Used internally where the caller has already certified rank.
pub fn lu_solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let n = a.rows();
    let mut lu = a.clone();
    let mut x = b.clone();
    let zero = Complex64::new(0.0, 0.0);

    for k in 0..n {
        let mut piv = k;
        let mut best = lu[(k, k)].norm();
        for i in k + 1..n {
            let m = lu[(i, k)].norm();
            if m > best {
                best = m;
                piv = i;
            }
        }
        if best == 0.0 {
            return Err(LinalgError::SingularSystem);
        }
        if piv != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(piv, j)];
                lu[(piv, j)] = t;
            }
            for j in 0..x.cols() {
                let t = x[(k, j)];
                x[(k, j)] = x[(piv, j)];
                x[(piv, j)] = t;
            }
        }
        let d = lu[(k, k)];
        for i in k + 1..n {
            let f = lu[(i, k)] / d;
            if f == zero {
                continue;
            }
            lu[(i, k)] = f;
            for j in k + 1..n {
                let t = lu[(k, j)];
                lu[(i, j)] -= f * t;
            }
            for j in 0..x.cols() {
                let t = x[(k, j)];
                x[(i, j)] -= f * t;
            }
        }
    }

    for j in 0..x.cols() {
        for i in (0..n).rev() {
            let mut s = x[(i, j)];
            for k in i + 1..n {
                s -= lu[(i, k)] * x[(k, j)];
            }
            x[(i, j)] = s / lu[(i, i)];
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn solve_doubles_to_halves() {
        let a = ComplexMatrix::identity(3).scale(c(2.0, 0.0));
        let tol = Tolerance::for_matrix(&a);
        let x = solve(&a, &ComplexMatrix::identity(3), &tol).unwrap();
        for i in 0..3 {
            assert!((x[(i, i)] - c(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn solve_complex_system_residual() {
        let a = ComplexMatrix::new(
            2,
            2,
            vec![c(1.0, 1.0), c(2.0, -1.0), c(0.0, 3.0), c(-1.0, 0.5)],
        )
        .unwrap();
        let b = ComplexMatrix::new(2, 1, vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        let tol = Tolerance::for_matrix(&a);
        let x = solve(&a, &b, &tol).unwrap();
        let r = a.mul(&x).unwrap().sub(&b).unwrap();
        assert!(r.frobenius_norm() < 1e-13);
    }

    #[test]
    fn solve_rejects_singular() {
        let a = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        let tol = Tolerance::for_matrix(&a);
        assert!(matches!(
            solve(&a, &ComplexMatrix::identity(2), &tol),
            Err(LinalgError::SingularSystem)
        ));
    }

    #[test]
    fn inverse_times_original_is_identity() {
        let a = ComplexMatrix::new(
            3,
            3,
            vec![
                c(4.0, 0.0),
                c(1.0, 2.0),
                c(0.0, 0.0),
                c(-1.0, 0.0),
                c(3.0, 0.0),
                c(0.5, -0.5),
                c(0.0, 1.0),
                c(0.0, 0.0),
                c(2.0, 0.0),
            ],
        )
        .unwrap();
        let tol = Tolerance::for_matrix(&a);
        let inv = inverse(&a, &tol).unwrap();
        let prod = a.mul(&inv).unwrap();
        let err = prod.sub(&ComplexMatrix::identity(3)).unwrap().frobenius_norm();
        assert!(err < 1e-13, "residual {err}");
    }
}
