//! Elementary operators `A -> S·A·T` on matrix space.
//!
//! Under column-stacking vectorization the operator has matrix form
//! `kron(Tᵀ, S)`, its spectrum is the product set `σ(S)·σ(T)`, and the whole
//! product-spectrum calculus from [`crate::tensor`] applies with the factor
//! classifications of `S` and `T`. Transposing `T` does not change its
//! classification, so the transpose convention inside the matrix form is
//! invisible at the spectral level.

use crate::eig::{cluster_for_classification, eigenvalues};
use crate::matrix::{ComplexMatrix, LinalgError, Tolerance};
use crate::tensor::{tensor_classify, TensorError, TensorReport};
use crate::spectral::SpectralClassification;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum ElementaryError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("vec-identity probe residual {residual:.3e} exceeds {tolerance:.3e}; the matrix form is inconsistent")]
    ProbeFailed { residual: f64, tolerance: f64 },
}

/// The operator `A -> S·A·T` together with its matrix form on vectorized
/// inputs.
#[derive(Debug, Clone)]
pub struct ElementaryOperator {
    pub s: ComplexMatrix,
    pub t: ComplexMatrix,
    /// `kron(Tᵀ, S)`; satisfies `vec(S·A·T) = matrix_form · vec(A)`.
    pub matrix_form: ComplexMatrix,
    /// Relative residual of the vec identity on a fixed random probe.
    pub probe_residual: f64,
}

/// Fixed probe seed so construction is deterministic.
const PROBE_SEED: u64 = 0x656c656d;

/// Builds the matrix form and verifies the vec identity on a random probe.
pub fn build(
    s: &ComplexMatrix,
    t: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<ElementaryOperator, ElementaryError> {
    if !s.is_square() {
        return Err(LinalgError::NotSquare {
            op: "elementary_build",
            rows: s.rows(),
            cols: s.cols(),
        }
        .into());
    }
    if !t.is_square() {
        return Err(LinalgError::NotSquare {
            op: "elementary_build",
            rows: t.rows(),
            cols: t.cols(),
        }
        .into());
    }
    let matrix_form = t.transpose().kron(s);

    let n = s.rows();
    let m = t.rows();
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    let mut probe = ComplexMatrix::zeros(n, m);
    for i in 0..n {
        for j in 0..m {
            probe[(i, j)] = Complex64::new(
                rng.gen::<f64>() * 2.0 - 1.0,
                rng.gen::<f64>() * 2.0 - 1.0,
            );
        }
    }
    let direct = s.mul(&probe)?.mul(t)?.vec();
    let via_form = matrix_form.mul(&probe.vec())?;
    let scale = 1.0 + s.frobenius_norm() * probe.frobenius_norm() * t.frobenius_norm();
    let residual = direct.sub(&via_form)?.frobenius_norm() / scale;
    if residual > tol.residual_rel {
        return Err(ElementaryError::ProbeFailed {
            residual,
            tolerance: tol.residual_rel,
        });
    }
    Ok(ElementaryOperator {
        s: s.clone(),
        t: t.clone(),
        matrix_form,
        probe_residual: residual,
    })
}

impl ElementaryOperator {
    /// Applies the operator directly: `S·A·T`.
    pub fn apply(&self, a: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
        self.s.mul(a)?.mul(&self.t)
    }
}

/// Result of comparing the operator spectrum against the product law.
#[derive(Debug, Clone)]
pub struct SpectrumCheck {
    pub matched: bool,
    /// Largest distance between matched multiset members.
    pub max_distance: f64,
    /// Clustered spectrum of the matrix form: (value, multiplicity).
    pub operator_spectrum: Vec<(Complex64, usize)>,
    /// Clustered products of the factor spectra: (value, multiplicity).
    pub product_spectrum: Vec<(Complex64, usize)>,
}

fn expand(clusters: &[(Complex64, usize)]) -> Vec<Complex64> {
    let mut out = Vec::new();
    for &(z, count) in clusters {
        out.extend(std::iter::repeat(z).take(count));
    }
    out
}

/// Checks `σ(matrix_form) = σ(S)·σ(T)` as multisets of clustered
/// eigenvalues, matched within `match_tol`.
pub fn spectrum_check(
    e: &ElementaryOperator,
    match_tol: f64,
) -> Result<SpectrumCheck, LinalgError> {
    let tol_s = Tolerance::for_matrix(&e.s);
    let tol_t = Tolerance::for_matrix(&e.t);
    let tol_m = Tolerance::for_matrix(&e.matrix_form);

    let s_clusters =
        cluster_for_classification(&eigenvalues(&e.s)?, tol_s.eig_cluster, e.s.rows());
    let t_clusters =
        cluster_for_classification(&eigenvalues(&e.t)?, tol_t.eig_cluster, e.t.rows());
    let mut products: Vec<Complex64> = Vec::new();
    for &(ls, cs) in &s_clusters {
        for &(lt, ct) in &t_clusters {
            products.extend(std::iter::repeat(ls * lt).take(cs * ct));
        }
    }
    let product_spectrum =
        cluster_for_classification(&products, tol_m.eig_cluster, e.matrix_form.rows());

    let operator_spectrum = cluster_for_classification(
        &eigenvalues(&e.matrix_form)?,
        tol_m.eig_cluster,
        e.matrix_form.rows(),
    );

    // Greedy nearest-neighbor matching between the two multisets; exact
    // whenever distinct clusters are separated by much more than the
    // perturbations, which the generators guarantee.
    let lhs = expand(&operator_spectrum);
    let rhs = expand(&product_spectrum);
    let mut max_distance: f64 = 0.0;
    let mut matched = lhs.len() == rhs.len();
    if matched {
        let mut used = vec![false; rhs.len()];
        for &x in &lhs {
            let mut best = usize::MAX;
            let mut best_d = f64::INFINITY;
            for (j, &y) in rhs.iter().enumerate() {
                if !used[j] {
                    let d = (x - y).norm();
                    if d < best_d {
                        best_d = d;
                        best = j;
                    }
                }
            }
            used[best] = true;
            max_distance = max_distance.max(best_d);
        }
        matched = max_distance <= match_tol;
    }
    Ok(SpectrumCheck {
        matched,
        max_distance,
        operator_spectrum,
        product_spectrum,
    })
}

/// Product-spectrum classification for the elementary operator, from the
/// classifications of `S` and `T`. Same calculus as the tensor case; the
/// report is relabeled.
pub fn elementary_classify(
    s: &SpectralClassification,
    t: &SpectralClassification,
    merge_tol: f64,
) -> Result<TensorReport, TensorError> {
    let mut report = tensor_classify(s, t, merge_tol)?;
    report.kind = "elementary".to_string();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drazin::index_of;
    use crate::spectral::classify_matrix;
    use crate::svd::operator_norm;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol_for(a: &ComplexMatrix) -> Tolerance {
        Tolerance::for_matrix(a)
    }

    #[test]
    fn identity_factors_give_identity_form() {
        let s = ComplexMatrix::identity(2);
        let t = ComplexMatrix::identity(3);
        let e = build(&s, &t, &tol_for(&s)).unwrap();
        let diff = e.matrix_form.sub(&ComplexMatrix::identity(6)).unwrap();
        assert_eq!(diff.frobenius_norm(), 0.0);
        assert!(e.probe_residual < 1e-12);
    }

    #[test]
    fn diagonal_factors_spectrum() {
        // S = diag(1,2), T = diag(3): operator spectrum {3, 6}.
        let s = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let t = ComplexMatrix::diagonal(&[c(3.0, 0.0)]);
        let e = build(&s, &t, &tol_for(&s)).unwrap();
        let chk = spectrum_check(&e, 1e-7).unwrap();
        assert!(chk.matched, "max distance {}", chk.max_distance);
        let vals: Vec<Complex64> = chk.operator_spectrum.iter().map(|&(z, _)| z).collect();
        assert_eq!(vals.len(), 2);
        assert!((vals[0] - c(3.0, 0.0)).norm() < 1e-9);
        assert!((vals[1] - c(6.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn vec_identity_on_dense_factors() {
        let s = ComplexMatrix::new(
            2,
            2,
            vec![c(1.0, 2.0), c(0.0, -1.0), c(3.0, 0.0), c(1.0, 1.0)],
        )
        .unwrap();
        let t = ComplexMatrix::from_real_rows(&[
            vec![2.0, 1.0, 0.0],
            vec![0.0, 1.0, 4.0],
            vec![1.0, 0.0, 1.0],
        ])
        .unwrap();
        let e = build(&s, &t, &tol_for(&s)).unwrap();
        assert!(e.probe_residual <= 1e-10, "residual {}", e.probe_residual);
        // Independent probe, not the builder's.
        let a = ComplexMatrix::from_real_rows(&[vec![1.0, -2.0, 0.5], vec![0.0, 3.0, 1.0]])
            .unwrap();
        let direct = e.apply(&a).unwrap().vec();
        let via = e.matrix_form.mul(&a.vec()).unwrap();
        assert!(direct.sub(&via).unwrap().frobenius_norm() < 1e-12);
    }

    #[test]
    fn nilpotent_factor_collapses_spectrum() {
        let s = ComplexMatrix::jordan_block(c(0.0, 0.0), 2);
        let t = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![0.0, 3.0]]).unwrap();
        let e = build(&s, &t, &tol_for(&s)).unwrap();
        let chk = spectrum_check(&e, 1e-7).unwrap();
        assert!(chk.matched);
        assert!(chk
            .operator_spectrum
            .iter()
            .all(|&(z, _)| z.norm() < 1e-7));
        let cls = classify_matrix(&e.matrix_form, &tol_for(&e.matrix_form)).unwrap();
        assert!(cls.nilpotent());
    }

    #[test]
    fn norm_bound_of_two_sided_multiplication() {
        let s = ComplexMatrix::from_real_rows(&[vec![1.0, 5.0], vec![0.0, 2.0]]).unwrap();
        let t = ComplexMatrix::from_real_rows(&[vec![3.0, 0.0], vec![1.0, 1.0]]).unwrap();
        let a = ComplexMatrix::from_real_rows(&[vec![1.0, 1.0], vec![2.0, 0.0]]).unwrap();
        let e = build(&s, &t, &tol_for(&s)).unwrap();
        let lhs = e.apply(&a).unwrap().frobenius_norm();
        let bound = operator_norm(&s).unwrap() * a.frobenius_norm() * operator_norm(&t).unwrap();
        assert!(lhs <= bound * (1.0 + 1e-12));
    }

    #[test]
    fn invertibility_of_form_tracks_factors() {
        let inv_s = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let inv_t = ComplexMatrix::diagonal(&[c(3.0, 0.0), c(-1.0, 0.0)]);
        let sing_s = ComplexMatrix::diagonal(&[c(0.0, 0.0), c(2.0, 0.0)]);

        let e = build(&inv_s, &inv_t, &tol_for(&inv_s)).unwrap();
        assert_eq!(index_of(&e.matrix_form, &tol_for(&e.matrix_form)).unwrap(), 0);

        let e = build(&sing_s, &inv_t, &tol_for(&sing_s)).unwrap();
        assert!(index_of(&e.matrix_form, &tol_for(&e.matrix_form)).unwrap() > 0);
    }

    #[test]
    fn transposing_t_preserves_classification() {
        // The matrix forms kron(Tᵀ,S) and kron(T,S) differ, but their
        // spectral classifications agree because T and Tᵀ share Jordan
        // structure.
        let s = ComplexMatrix::jordan_block(c(2.0, 0.0), 2);
        let t = ComplexMatrix::block_diagonal(&[
            ComplexMatrix::jordan_block(c(1.0, 0.0), 2),
            ComplexMatrix::diagonal(&[c(3.0, 0.0)]),
        ]);
        let form_a = t.transpose().kron(&s);
        let form_b = t.kron(&s);
        let ca = classify_matrix(&form_a, &tol_for(&form_a)).unwrap();
        let cb = classify_matrix(&form_b, &tol_for(&form_b)).unwrap();
        assert_eq!(ca.points().len(), cb.points().len());
        for (p, q) in ca.points().iter().zip(cb.points()) {
            assert!((p.value - q.value).norm() < 1e-7);
            assert_eq!(p.tag, q.tag);
            assert_eq!(p.order, q.order);
        }
    }

    #[test]
    fn classify_report_is_relabeled() {
        let s = SpectralClassification::new(vec![crate::spectral::SpectralPoint::pole(
            c(1.0, 0.0),
            1,
        )]);
        let t = SpectralClassification::new(vec![
            crate::spectral::SpectralPoint::acc(c(0.0, 0.0)),
            crate::spectral::SpectralPoint::pole(c(1.0, 0.0), 1),
        ]);
        let r = elementary_classify(&s, &t, 0.0).unwrap();
        assert_eq!(r.kind, "elementary");
        assert!(r.equality_holds);
    }
}
