//! Matrix index, Drazin inverse, and pole orders.
//!
//! The index of `A` is the smallest `k >= 0` with `rank(A^k) = rank(A^(k+1))`
//! (`A^0 = I`); it is 0 exactly when `A` is invertible and never exceeds `n`.
//! Along `range(A^k) ⊕ null(A^k)` the matrix splits as `diag(C, N)` with `C`
//! invertible and `N` nilpotent, and the Drazin inverse is
//! `A^D = P diag(C^{-1}, 0) P^{-1}`.
//!
//! Rank stabilization works on explicit powers, with two guards that the
//! plain method needs in floating point: computed ranks are clamped monotone
//! non-increasing (true ranks are), and a running bound on multiplication
//! rounding declares a power numerically zero before its noise can masquerade
//! as rank. Without the guards, the powers of a similarity-transformed
//! nilpotent matrix bottom out in rounding noise of full numerical rank.

use crate::eig::{cluster_for_classification, eigenvalues};
use crate::matrix::{ComplexMatrix, LinalgError, Tolerance};
use crate::solve::{inverse, lu_solve};
use crate::svd::{condition_number, rank_from_singular_values, svd};
use num_complex::Complex64;
use thiserror::Error;

/// Errors from the Drazin layer.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum DrazinError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("value is {distance:.3e} away from the spectrum, beyond tolerance {tolerance:.3e}")]
    NotAnEigenvalue { distance: f64, tolerance: f64 },
    #[error("range/null splitting basis has condition estimate {condition:.3e}")]
    IllConditionedBasis { condition: f64 },
    #[error(
        "Drazin axiom residuals ({axiom_power:.3e}, {axiom_idempotent:.3e}, {axiom_commute:.3e}) exceed tolerance {tolerance:.3e}"
    )]
    ResidualsExceedTolerance {
        axiom_power: f64,
        axiom_idempotent: f64,
        axiom_commute: f64,
        tolerance: f64,
    },
}

/// Condition estimate beyond which the range/null basis is rejected.
const BASIS_CONDITION_CAP: f64 = 1e8;
/// Multiplier on the tracked rounding bound when declaring a power zero.
const NOISE_MARGIN: f64 = 10.0;

/// Smallest `k` with `rank(A^k) = rank(A^(k+1))`, taking `A^0 = I`.
pub fn index_of(a: &ComplexMatrix, tol: &Tolerance) -> Result<usize, DrazinError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            op: "index_of",
            rows: a.rows(),
            cols: a.cols(),
        }
        .into());
    }
    let n = a.rows();
    let a_norm = a.frobenius_norm();
    let mut power = a.clone();
    let mut noise = 0.0f64;
    let mut prev_rank = n;
    for k in 1..=n {
        let rank = guarded_rank(&power, noise, tol).min(prev_rank);
        if rank == prev_rank {
            return Ok(k - 1);
        }
        prev_rank = rank;
        if rank == 0 {
            // A^k is numerically zero; the sequence has stabilized at 0.
            return Ok(k);
        }
        noise = n as f64 * f64::EPSILON * power.frobenius_norm() * a_norm + noise * a_norm;
        power = power.mul(a)?;
    }
    Ok(n)
}

/// Rank with the running-noise guard: a matrix whose largest singular value
/// sits inside the accumulated multiplication rounding is rank 0.
fn guarded_rank(m: &ComplexMatrix, noise: f64, tol: &Tolerance) -> usize {
    let sv = match svd(m) {
        Ok(f) => f.singular_values,
        Err(_) => return 0,
    };
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax <= NOISE_MARGIN * noise {
        return 0;
    }
    rank_from_singular_values(&sv, tol)
}

/// Core-nilpotent decomposition together with the Drazin inverse.
///
/// `p` columns are an orthonormal basis of `range(A^k)` followed by an
/// orthonormal basis of `null(A^k)`; in that basis `A` is `diag(core, nil)`.
/// `core` is absent when `A` is nilpotent (rank 0 core), `nil` is absent when
/// `A` is invertible (index 0).
#[derive(Debug, Clone)]
pub struct DrazinDecomposition {
    pub index: usize,
    pub core_rank: usize,
    pub p: ComplexMatrix,
    pub core: Option<ComplexMatrix>,
    pub nil: Option<ComplexMatrix>,
    pub drazin: ComplexMatrix,
    /// Relative residuals of the three Drazin axioms:
    /// `A^k A^D A = A^k`, `A^D A A^D = A^D`, `A A^D = A^D A`.
    pub residual_power: f64,
    pub residual_idempotent: f64,
    pub residual_commute: f64,
    /// Condition estimate of the splitting basis `p`.
    pub basis_condition: f64,
}

impl DrazinDecomposition {
    pub fn max_residual(&self) -> f64 {
        self.residual_power
            .max(self.residual_idempotent)
            .max(self.residual_commute)
    }
}

/// Drazin inverse of a square matrix.
///
/// Fails when the range/null basis is too ill conditioned or the axiom
/// residuals exceed `tol.residual_rel`.
pub fn drazin_inverse(
    a: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<DrazinDecomposition, DrazinError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            op: "drazin_inverse",
            rows: a.rows(),
            cols: a.cols(),
        }
        .into());
    }
    let n = a.rows();
    let k = index_of(a, tol)?;

    let mut dec = if k == 0 {
        let ad = inverse(a, tol)?;
        DrazinDecomposition {
            index: 0,
            core_rank: n,
            p: ComplexMatrix::identity(n),
            core: Some(a.clone()),
            nil: None,
            drazin: ad,
            residual_power: 0.0,
            residual_idempotent: 0.0,
            residual_commute: 0.0,
            basis_condition: 1.0,
        }
    } else {
        let ak = a.pow(k)?;
        let f = svd(&ak)?;
        let r = rank_from_singular_values(&f.singular_values, tol);
        if r == 0 {
            // Nilpotent: empty core block, A^D = 0, unitary basis from the
            // right singular vectors.
            let p = f.v.clone();
            let nil = p.conj_transpose().mul(&a.mul(&p)?)?;
            DrazinDecomposition {
                index: k,
                core_rank: 0,
                p,
                core: None,
                nil: Some(nil),
                drazin: ComplexMatrix::zeros(n, n),
                residual_power: 0.0,
                residual_idempotent: 0.0,
                residual_commute: 0.0,
                basis_condition: 1.0,
            }
        } else {
            let range_basis = f.u.submatrix(0, 0, n, r);
            let null_basis = f.v.submatrix(0, r, n, n - r);
            let p = range_basis.hcat(&null_basis)?;
            let cond = condition_number(&p)?;
            if !cond.is_finite() || cond > BASIS_CONDITION_CAP {
                return Err(DrazinError::IllConditionedBasis { condition: cond });
            }
            let m = lu_solve(&p, &a.mul(&p)?)?;
            let core = m.submatrix(0, 0, r, r);
            let nil = m.submatrix(r, r, n - r, n - r);
            let core_inv = inverse(&core, tol)?;
            let mut b = ComplexMatrix::zeros(n, n);
            for i in 0..r {
                for j in 0..r {
                    b[(i, j)] = core_inv[(i, j)];
                }
            }
            let p_inv = lu_solve(&p, &ComplexMatrix::identity(n))?;
            let ad = p.mul(&b)?.mul(&p_inv)?;
            DrazinDecomposition {
                index: k,
                core_rank: r,
                p,
                core: Some(core),
                nil: Some(nil),
                drazin: ad,
                residual_power: 0.0,
                residual_idempotent: 0.0,
                residual_commute: 0.0,
                basis_condition: cond,
            }
        }
    };

    let (rp, ri, rc) = axiom_residuals(a, &dec.drazin, dec.index)?;
    dec.residual_power = rp;
    dec.residual_idempotent = ri;
    dec.residual_commute = rc;
    if dec.max_residual() > tol.residual_rel {
        return Err(DrazinError::ResidualsExceedTolerance {
            axiom_power: rp,
            axiom_idempotent: ri,
            axiom_commute: rc,
            tolerance: tol.residual_rel,
        });
    }
    Ok(dec)
}

/// Relative residuals of the three Drazin axioms at index `k`; denominators
/// fall back to absolute when the reference norm vanishes.
pub fn axiom_residuals(
    a: &ComplexMatrix,
    ad: &ComplexMatrix,
    k: usize,
) -> Result<(f64, f64, f64), LinalgError> {
    let ak = a.pow(k)?;
    let ak_norm = ak.frobenius_norm();
    let power = ak.mul(ad)?.mul(a)?.sub(&ak)?.frobenius_norm();
    let rp = if ak_norm > 0.0 { power / ak_norm } else { power };

    let ad_norm = ad.frobenius_norm();
    let idem = ad.mul(a)?.mul(ad)?.sub(ad)?.frobenius_norm();
    let ri = if ad_norm > 0.0 { idem / ad_norm } else { idem };

    let comm = a.mul(ad)?.sub(&ad.mul(a)?)?.frobenius_norm();
    let denom = a.frobenius_norm() * ad_norm;
    let rc = if denom > 0.0 { comm / denom } else { comm };
    Ok((rp, ri, rc))
}

/// Pole order of `lambda` in the spectrum of `A`: the index of `A - lambda I`.
///
/// `lambda` must lie within `tol.eig_cluster` of the spectrum (raw computed
/// eigenvalues or their classification-cluster means, whichever is closer).
pub fn pole_order(
    a: &ComplexMatrix,
    lambda: Complex64,
    tol: &Tolerance,
) -> Result<usize, DrazinError> {
    let raw = eigenvalues(a).map_err(DrazinError::from)?;
    let clusters = cluster_for_classification(&raw, tol.eig_cluster, a.rows());
    let mut dist = f64::INFINITY;
    for z in raw.iter().chain(clusters.iter().map(|(z, _)| z)) {
        dist = dist.min((z - lambda).norm());
    }
    if dist > tol.eig_cluster {
        return Err(DrazinError::NotAnEigenvalue {
            distance: dist,
            tolerance: tol.eig_cluster,
        });
    }
    let shifted = a.shift_diagonal(lambda)?;
    let order = index_of(&shifted, tol)?;
    if order == 0 {
        // Membership passed only marginally; the shifted matrix is invertible
        // to rank tolerance, so the value is not a spectral point after all.
        return Err(DrazinError::NotAnEigenvalue {
            distance: dist,
            tolerance: tol.eig_cluster,
        });
    }
    Ok(order)
}
