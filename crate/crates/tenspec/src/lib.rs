//! Drazin inverses, spectral structure, and product spectra for dense
//! complex matrices.
//!
//! The crate is layered:
//!
//! * dense complex linear algebra ([`matrix`], [`solve`], [`svd`], [`eig`]);
//! * the Drazin layer: matrix index, core-nilpotent splitting, pole orders
//!   ([`drazin`]);
//! * spectral classification of matrices and symbolic spectrum descriptors
//!   ([`spectral`], [`sets`]);
//! * the product-spectrum calculus for tensor products and elementary
//!   operators `A -> S·A·T` ([`tensor`], [`elementary`]);
//! * randomized verification suites and the command-line front end
//!   ([`verify`], [`cli`]).

pub mod cli;
pub mod drazin;
pub mod eig;
pub mod elementary;
pub mod matrix;
pub mod sets;
pub mod solve;
pub mod spectral;
pub mod svd;
pub mod tensor;
pub mod verify;

pub use drazin::{drazin_inverse, index_of, pole_order, DrazinDecomposition, DrazinError};
pub use elementary::{
    build as build_elementary, elementary_classify, spectrum_check, ElementaryError,
    ElementaryOperator, SpectrumCheck,
};
pub use matrix::{ComplexMatrix, LinalgError, Tolerance};
pub use sets::ComplexSet;
pub use spectral::{
    classify_matrix, SpectralClassification, SpectralPoint, SpectralTag, Violation,
};
pub use verify::{
    count_failures, gen_descriptor, gen_matrix, random_similarity, run_drazin_suite,
    run_elementary_suite, run_matrix_tensor_suite, run_suite, run_symbolic_suite,
    DescriptorProfile, EigenSpec, TolOverrides, VerificationReport, ZeroMode, SUITE_NAMES,
};
pub use tensor::{
    classify_zero, drazin_spectrum_tensor, equality_predicates, tensor_classify,
    EqualityPredicates, TensorError, TensorReport, ZeroDecision, ZeroStatus,
};
