//! Command-line interface.
//!
//! Exit codes: `0` on success, `1` when a verification or tolerance check
//! fails (residuals out of bounds, spectrum-law mismatch, failed trials,
//! disagreeing derivation paths), `2` on malformed input (unreadable files,
//! bad JSON, invalid descriptors, shape errors).

use crate::drazin::{drazin_inverse, index_of, DrazinError};
use crate::elementary;
use crate::matrix::{ComplexMatrix, LinalgError, Tolerance};
use crate::spectral::{classify_matrix, SpectralClassification};
use crate::tensor::{tensor_classify, TensorError};
use crate::verify::{self, TolOverrides, SUITE_NAMES};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::{Path, PathBuf};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(
    name = "tenspec",
    version,
    about = "Drazin inverses, spectral classification, and product-spectrum calculus for complex matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Absolute override for the eigenvalue clustering tolerance.
    #[arg(long = "tol-eig", global = true)]
    tol_eig: Option<f64>,
    /// Absolute override for the relative rank-decision tolerance.
    #[arg(long = "tol-rank", global = true)]
    tol_rank: Option<f64>,
    /// Absolute override for the relative residual tolerance.
    #[arg(long = "tol-res", global = true)]
    tol_res: Option<f64>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Drazin inverse and core-nilpotent decomposition of a square matrix.
    Drazin {
        /// JSON file: {"rows": n, "cols": n, "data": [[re, im], ...]} row-major.
        matrix: PathBuf,
    },
    /// Classify a matrix spectrally, or validate and normalize a descriptor.
    ///
    /// The input schema is detected from the JSON: an object with "rows" is
    /// a matrix, one with "points" is a descriptor.
    Classify { input: PathBuf },
    /// Product-spectrum calculus for a tensor product, from two descriptors.
    Tensor { a: PathBuf, b: PathBuf },
    /// Elementary operator S·A·T from two square matrices: matrix form,
    /// spectrum product law, and symbolic classification.
    Elementary { s: PathBuf, t: PathBuf },
    /// Run randomized verification suites.
    Verify {
        /// One of: drazin, matrix-tensor, elementary, symbolic, all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum CliError {
    /// Malformed or unreadable input.
    Input(String),
    /// A computation ran but violated a tolerance or consistency check.
    Verification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Verification(_) => EXIT_VERIFICATION,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Verification(m) => m,
        }
    }
}

/// Shape and validation problems are input errors; numerical breakdowns
/// during an otherwise well-posed computation are verification failures.
fn linalg_is_input(e: &LinalgError) -> bool {
    matches!(
        e,
        LinalgError::EmptyMatrix { .. }
            | LinalgError::NonFiniteEntry { .. }
            | LinalgError::DataLength { .. }
            | LinalgError::NotSquare { .. }
            | LinalgError::DimensionMismatch { .. }
            | LinalgError::InvalidTolerance { .. }
    )
}

fn from_linalg(e: LinalgError) -> CliError {
    if linalg_is_input(&e) {
        CliError::Input(e.to_string())
    } else {
        CliError::Verification(e.to_string())
    }
}

fn from_drazin(e: DrazinError) -> CliError {
    match e {
        DrazinError::Linalg(inner) => from_linalg(inner),
        DrazinError::NotAnEigenvalue { .. } => CliError::Input(e.to_string()),
        DrazinError::IllConditionedBasis { .. }
        | DrazinError::ResidualsExceedTolerance { .. } => {
            CliError::Verification(e.to_string())
        }
    }
}

fn from_tensor(e: TensorError) -> CliError {
    match e {
        TensorError::InvalidDescriptor { .. } => CliError::Input(e.to_string()),
        TensorError::PathDisagreement { .. } => CliError::Verification(e.to_string()),
    }
}

fn read_json(path: &Path) -> Result<serde_json::Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("invalid JSON in {}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    let value = read_json(path)?;
    serde_json::from_value(value)
        .map_err(|e| CliError::Input(format!("invalid matrix in {}: {e}", path.display())))
}

fn read_descriptor(path: &Path) -> Result<SpectralClassification, CliError> {
    let value = read_json(path)?;
    serde_json::from_value(value)
        .map_err(|e| CliError::Input(format!("invalid descriptor in {}: {e}", path.display())))
}

fn matrix_json(m: &ComplexMatrix) -> serde_json::Value {
    serde_json::to_value(m).expect("matrix serialization is infallible")
}

fn overrides(cli: &Cli) -> Result<TolOverrides, CliError> {
    for v in [cli.tol_eig, cli.tol_rank, cli.tol_res].into_iter().flatten() {
        if !(v.is_finite() && v >= 0.0) {
            return Err(CliError::Input(format!(
                "tolerance overrides must be finite and non-negative, got {v}"
            )));
        }
    }
    Ok(TolOverrides {
        eig: cli.tol_eig,
        rank: cli.tol_rank,
        res: cli.tol_res,
    })
}

fn cmd_drazin(path: &Path, ov: TolOverrides, format: Format) -> Result<(), CliError> {
    let a = read_matrix(path)?;
    let tol = ov.for_matrix(&a);
    let dec = drazin_inverse(&a, &tol).map_err(from_drazin)?;
    match format {
        Format::Json => {
            let out = json!({
                "kind": "drazin",
                "index": dec.index,
                "core_rank": dec.core_rank,
                "drazin": matrix_json(&dec.drazin),
                "core": dec.core.as_ref().map(matrix_json),
                "nil": dec.nil.as_ref().map(matrix_json),
                "basis": matrix_json(&dec.p),
                "basis_condition": dec.basis_condition,
                "residuals": {
                    "power": dec.residual_power,
                    "idempotent": dec.residual_idempotent,
                    "commute": dec.residual_commute,
                },
                "tolerances": {
                    "eig_cluster": tol.eig_cluster,
                    "rank_rel": tol.rank_rel,
                    "residual_rel": tol.residual_rel,
                },
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Text => {
            println!("index        : {}", dec.index);
            println!("core rank    : {}", dec.core_rank);
            println!("basis cond   : {:.6e}", dec.basis_condition);
            println!(
                "residuals    : power={:.3e} idempotent={:.3e} commute={:.3e}",
                dec.residual_power, dec.residual_idempotent, dec.residual_commute
            );
            println!("drazin inverse ({}x{}):", dec.drazin.rows(), dec.drazin.cols());
            print_matrix(&dec.drazin);
        }
    }
    Ok(())
}

fn print_matrix(m: &ComplexMatrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|j| {
                let z = m[(i, j)];
                format!("{:+.6}{:+.6}i", z.re, z.im)
            })
            .collect();
        println!("  [{}]", row.join(", "));
    }
}

fn cmd_classify(path: &Path, ov: TolOverrides, format: Format) -> Result<(), CliError> {
    let value = read_json(path)?;
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::Input("input must be a JSON object".to_string()))?;
    if obj.contains_key("rows") {
        let a: ComplexMatrix = serde_json::from_value(value.clone())
            .map_err(|e| CliError::Input(format!("invalid matrix: {e}")))?;
        let tol = ov.for_matrix(&a);
        let cls = classify_matrix(&a, &tol).map_err(from_drazin)?;
        emit_classification("matrix_classification", &cls, format);
        Ok(())
    } else if obj.contains_key("points") {
        let cls: SpectralClassification = serde_json::from_value(value)
            .map_err(|e| CliError::Input(format!("invalid descriptor: {e}")))?;
        let violations = cls.validate();
        if !violations.is_empty() {
            let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return Err(CliError::Input(format!(
                "descriptor is invalid: {}",
                msgs.join("; ")
            )));
        }
        emit_classification("descriptor", &cls, format);
        Ok(())
    } else {
        Err(CliError::Input(
            "unrecognized input schema: expected a matrix object with \"rows\" or a descriptor with \"points\"".to_string(),
        ))
    }
}

fn emit_classification(kind: &str, cls: &SpectralClassification, format: Format) {
    match format {
        Format::Json => {
            let out = json!({
                "kind": kind,
                "classification": cls,
                "invertible": cls.invertible(),
                "quasinilpotent": cls.quasinilpotent(),
                "nilpotent": cls.nilpotent(),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Text => {
            for p in cls.points() {
                match p.order {
                    Some(k) => println!("{:+.6}{:+.6}i  {}  order {}", p.value.re, p.value.im, p.tag, k),
                    None => println!("{:+.6}{:+.6}i  {}", p.value.re, p.value.im, p.tag),
                }
            }
        }
    }
}

fn cmd_tensor(a: &Path, b: &Path, ov: TolOverrides, format: Format) -> Result<(), CliError> {
    let da = read_descriptor(a)?;
    let db = read_descriptor(b)?;
    let merge_tol = ov.eig.unwrap_or(0.0);
    let report = tensor_classify(&da, &db, merge_tol).map_err(from_tensor)?;
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        }
        Format::Text => {
            println!("zero         : {} [{}]", report.zero.status, report.zero.justification);
            println!("result       :");
            for p in report.result.points() {
                match p.order {
                    Some(k) => println!("  {:+.6}{:+.6}i  {}  order {}", p.value.re, p.value.im, p.tag, k),
                    None => println!("  {:+.6}{:+.6}i  {}", p.value.re, p.value.im, p.tag),
                }
            }
            println!("equality     : {}", report.equality_holds);
        }
    }
    Ok(())
}

fn cmd_elementary(
    s_path: &Path,
    t_path: &Path,
    ov: TolOverrides,
    format: Format,
) -> Result<(), CliError> {
    let s = read_matrix(s_path)?;
    let t = read_matrix(t_path)?;
    let build_tol = ov.apply(Tolerance::for_matrix(&s));
    let op = elementary::build(&s, &t, &build_tol).map_err(|e| match e {
        elementary::ElementaryError::Linalg(inner) => from_linalg(inner),
        elementary::ElementaryError::ProbeFailed { .. } => {
            CliError::Verification(e.to_string())
        }
    })?;
    let chk = elementary::spectrum_check(&op, verify::ELEMENTARY_MATCH_TOL)
        .map_err(from_linalg)?;
    let form_tol = ov.for_matrix(&op.matrix_form);
    let form_index = index_of(&op.matrix_form, &form_tol).map_err(from_drazin)?;
    let cls_s = classify_matrix(&s, &ov.for_matrix(&s)).map_err(from_drazin)?;
    let cls_t = classify_matrix(&t, &ov.for_matrix(&t)).map_err(from_drazin)?;
    let prediction =
        elementary::elementary_classify(&cls_s, &cls_t, form_tol.eig_cluster)
            .map_err(from_tensor)?;

    let spectrum_json = |clusters: &[(num_complex::Complex64, usize)]| -> serde_json::Value {
        json!(clusters
            .iter()
            .map(|&(z, c)| json!({ "value": [z.re, z.im], "multiplicity": c }))
            .collect::<Vec<_>>())
    };
    match format {
        Format::Json => {
            let out = json!({
                "kind": "elementary",
                "form_dim": op.matrix_form.rows(),
                "probe_residual": op.probe_residual,
                "spectrum_matched": chk.matched,
                "max_distance": chk.max_distance,
                "operator_spectrum": spectrum_json(&chk.operator_spectrum),
                "product_spectrum": spectrum_json(&chk.product_spectrum),
                "form_index": form_index,
                "s_classification": cls_s,
                "t_classification": cls_t,
                "prediction": prediction,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Text => {
            println!("form dim     : {}", op.matrix_form.rows());
            println!("probe        : {:.3e}", op.probe_residual);
            println!("matched      : {} (max distance {:.3e})", chk.matched, chk.max_distance);
            println!("form index   : {form_index}");
            for &(z, c) in &chk.operator_spectrum {
                println!("  {:+.6}{:+.6}i  x{}", z.re, z.im, c);
            }
        }
    }
    if !chk.matched {
        return Err(CliError::Verification(format!(
            "operator spectrum does not match the product law (max distance {:.3e})",
            chk.max_distance
        )));
    }
    Ok(())
}

fn cmd_verify(
    suite: &str,
    trials: usize,
    seed: u64,
    ov: TolOverrides,
    format: Format,
) -> Result<(), CliError> {
    let names: Vec<&str> = if suite == "all" {
        SUITE_NAMES.to_vec()
    } else if SUITE_NAMES.contains(&suite) {
        vec![suite]
    } else {
        return Err(CliError::Input(format!(
            "unknown suite {suite:?}; expected one of drazin, matrix-tensor, elementary, symbolic, all"
        )));
    };
    if trials == 0 {
        return Err(CliError::Input("--trials must be positive".to_string()));
    }

    let mut total_failed = 0usize;
    for name in names {
        let reports = verify::run_suite(name, trials, seed, ov)
            .expect("suite names validated above");
        let failed = verify::count_failures(&reports);
        total_failed += failed;
        match format {
            Format::Json => {
                for r in &reports {
                    println!("{}", serde_json::to_string(r).unwrap());
                }
                let summary = json!({
                    "suite": name,
                    "trials": reports.len(),
                    "passed": reports.len() - failed,
                    "failed": failed,
                });
                println!("{}", serde_json::to_string(&summary).unwrap());
            }
            Format::Text => {
                println!("suite {name}: {}/{} passed", reports.len() - failed, reports.len());
                for r in reports.iter().filter(|r| !r.passed) {
                    println!(
                        "  trial {} FAILED: predicted {} observed {}",
                        r.trial_id, r.predicted, r.observed
                    );
                    if let Some(replay) = &r.replay {
                        println!("  replay: {replay}");
                    }
                }
            }
        }
    }
    if total_failed > 0 {
        return Err(CliError::Verification(format!(
            "{total_failed} verification trial(s) failed"
        )));
    }
    Ok(())
}

/// Parses arguments from the environment, runs the selected command, and
/// returns the process exit code.
pub fn run() -> u8 {
    let cli = Cli::parse();
    let ov = match overrides(&cli) {
        Ok(ov) => ov,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return e.code();
        }
    };
    let result = match &cli.command {
        Command::Drazin { matrix } => cmd_drazin(matrix, ov, cli.format),
        Command::Classify { input } => cmd_classify(input, ov, cli.format),
        Command::Tensor { a, b } => cmd_tensor(a, b, ov, cli.format),
        Command::Elementary { s, t } => cmd_elementary(s, t, ov, cli.format),
        Command::Verify {
            suite,
            trials,
            seed,
        } => cmd_verify(suite, *trials, *seed, ov, cli.format),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}
