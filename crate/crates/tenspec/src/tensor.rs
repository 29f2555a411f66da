//! Product-spectrum calculus on spectral classifications.
//!
//! The spectrum of a tensor product is the product of the spectra; the
//! calculus here refines that set-level fact into a full classification.
//! Four auxiliary sets drive everything (Π = poles, I = isolated non-poles,
//! acc = accumulation points, σ_DR = acc ∪ I):
//!
//! * `L` = (I(a)∖{0})(I(b)∖{0}) ∪ (I(a)∖{0})(Π(b)∖{0}) ∪ (Π(a)∖{0})(I(b)∖{0})
//! * `A` = σ(a)·acc σ(b) ∪ acc σ(a)·σ(b)
//! * `B` = I(a)I(b) ∪ I(a)Π(b) ∪ Π(a)I(b)
//! * `D` = σ(a)·σ_DR(b) ∪ σ_DR(a)·σ(b)
//!
//! Away from zero: accumulation points of the product are `A∖{0}`, isolated
//! non-poles are `L` (equivalently `B∖{0}`), and poles are
//! `(Π(a)∖{0})(Π(b)∖{0}) ∖ L`. The status of 0 itself is decided by a fixed
//! rule table ([`classify_zero`]) keyed on how 0 sits in each factor. The
//! Drazin spectrum of the product equals `D` off zero; whether 0 belongs is
//! governed by the equality conditions evaluated in [`equality_predicates`].
//! [`tensor_classify`] computes everything both ways and cross-checks.
//!
//! When a value lands in more than one product set (lattice collisions make
//! this common), accumulation status wins over isolated non-pole status,
//! which wins over pole status.

use crate::sets::ComplexSet;
use crate::spectral::{SpectralClassification, SpectralPoint, SpectralTag, Violation};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum TensorError {
    #[error("{side} descriptor is invalid: {}", format_violations(.violations))]
    InvalidDescriptor {
        side: &'static str,
        violations: Vec<Violation>,
    },
    #[error("Drazin-spectrum paths disagree (classification route {classification:?}, formula route {formula:?}); this signals a bug in the calculus")]
    PathDisagreement {
        classification: ComplexSet,
        formula: ComplexSet,
    },
}

fn require_valid(side: &'static str, c: &SpectralClassification) -> Result<(), TensorError> {
    let violations = c.validate();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(TensorError::InvalidDescriptor { side, violations })
    }
}

/// Status of 0 in the product spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZeroStatus {
    #[serde(rename = "NOT_IN_SPECTRUM")]
    NotInSpectrum,
    #[serde(rename = "POLE")]
    Pole,
    #[serde(rename = "ISO_NON_POLE")]
    IsolatedNonPole,
    #[serde(rename = "ACC")]
    Accumulation,
}

impl std::fmt::Display for ZeroStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ZeroStatus::NotInSpectrum => "NOT_IN_SPECTRUM",
            ZeroStatus::Pole => "POLE",
            ZeroStatus::IsolatedNonPole => "ISO_NON_POLE",
            ZeroStatus::Accumulation => "ACC",
        };
        f.write_str(s)
    }
}

/// The decided status of 0 together with the identifier of the rule that
/// produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroDecision {
    pub status: ZeroStatus,
    pub justification: String,
}

/// How 0 sits in one factor's spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FactorZero {
    NotIn,
    Pole,
    IsoNonPole,
    Acc,
}

fn factor_zero(c: &SpectralClassification) -> FactorZero {
    match c.zero_point().map(|p| p.tag) {
        None => FactorZero::NotIn,
        Some(SpectralTag::Pole) => FactorZero::Pole,
        Some(SpectralTag::IsolatedNonPole) => FactorZero::IsoNonPole,
        Some(SpectralTag::Accumulation) => FactorZero::Acc,
    }
}

/// Everything the zero rule table is allowed to look at.
struct ZeroFacts {
    a: FactorZero,
    b: FactorZero,
    a_nilpotent: bool,
    b_nilpotent: bool,
    a_quasinilpotent: bool,
    b_quasinilpotent: bool,
}

struct ZeroRule {
    id: &'static str,
    output: ZeroStatus,
    applies: fn(&ZeroFacts) -> bool,
}

/// The zero-status rule table. Rules are tried in order; the first match
/// decides. The table is total over valid descriptor pairs (checked
/// exhaustively in tests). Summary, writing the factor statuses as
/// (status in a, status in b):
///
/// 1. either factor nilpotent -> the product is nilpotent, 0 is a pole;
/// 2. (not-in, not-in) -> product invertible, 0 absent;
/// 3. (pole, not-in), (not-in, pole), (pole, pole) -> pole;
/// 4. (pole, iso-non-pole) and mirror -> isolated non-pole (the pole side is
///    not nilpotent here, rule 1 ran first);
/// 5. (iso-non-pole, not-in), mirror, and (iso-non-pole, iso-non-pole) ->
///    isolated non-pole;
/// 6. accumulation on one side against a quasinilpotent (spectrum exactly
///    {0}, not nilpotent) other side -> isolated non-pole;
/// 7. accumulation on either side otherwise -> accumulation.
const ZERO_RULES: &[ZeroRule] = &[
    ZeroRule {
        id: "thm-zero(i)",
        output: ZeroStatus::Pole,
        applies: |f| f.a_nilpotent || f.b_nilpotent,
    },
    ZeroRule {
        id: "not-in-spectrum",
        output: ZeroStatus::NotInSpectrum,
        applies: |f| f.a == FactorZero::NotIn && f.b == FactorZero::NotIn,
    },
    ZeroRule {
        id: "thm-zero(iii)",
        output: ZeroStatus::Pole,
        applies: |f| {
            matches!(
                (f.a, f.b),
                (FactorZero::Pole, FactorZero::NotIn)
                    | (FactorZero::NotIn, FactorZero::Pole)
                    | (FactorZero::Pole, FactorZero::Pole)
            )
        },
    },
    ZeroRule {
        id: "thm-zero(iv)",
        output: ZeroStatus::IsolatedNonPole,
        applies: |f| f.a == FactorZero::Pole && f.b == FactorZero::IsoNonPole,
    },
    ZeroRule {
        id: "thm-zero(iv)-sym",
        output: ZeroStatus::IsolatedNonPole,
        applies: |f| f.a == FactorZero::IsoNonPole && f.b == FactorZero::Pole,
    },
    ZeroRule {
        id: "thm-zero(v)",
        output: ZeroStatus::IsolatedNonPole,
        applies: |f| f.a == FactorZero::IsoNonPole && f.b == FactorZero::NotIn,
    },
    ZeroRule {
        id: "thm-zero(v)-sym",
        output: ZeroStatus::IsolatedNonPole,
        applies: |f| f.a == FactorZero::NotIn && f.b == FactorZero::IsoNonPole,
    },
    ZeroRule {
        id: "thm-zero(vi)",
        output: ZeroStatus::IsolatedNonPole,
        applies: |f| f.a == FactorZero::IsoNonPole && f.b == FactorZero::IsoNonPole,
    },
    ZeroRule {
        id: "thm-zero(ii)",
        output: ZeroStatus::IsolatedNonPole,
        applies: |f| f.a == FactorZero::Acc && f.b == FactorZero::IsoNonPole && f.b_quasinilpotent,
    },
    ZeroRule {
        id: "thm-zero(ii)-sym",
        output: ZeroStatus::IsolatedNonPole,
        applies: |f| f.a == FactorZero::IsoNonPole && f.a_quasinilpotent && f.b == FactorZero::Acc,
    },
    ZeroRule {
        id: "thm-zero(vii)",
        output: ZeroStatus::Accumulation,
        applies: |f| f.a == FactorZero::Acc,
    },
    ZeroRule {
        id: "thm-zero(vii)-sym",
        output: ZeroStatus::Accumulation,
        applies: |f| f.b == FactorZero::Acc,
    },
];

/// Identifiers of every rule in the zero table, in match order.
pub fn zero_rule_ids() -> Vec<&'static str> {
    ZERO_RULES.iter().map(|r| r.id).collect()
}

/// Decides the status of 0 in the product spectrum from the rule table.
///
/// A descriptor `{0: acc}` (spectrum listed as exactly `{0}` but tagged as an
/// accumulation point) is read as standing for an element whose spectrum
/// clusters at 0 with unlisted companions, so it falls through to the
/// accumulation rules rather than the quasinilpotent ones.
pub fn classify_zero(a: &SpectralClassification, b: &SpectralClassification) -> ZeroDecision {
    let facts = ZeroFacts {
        a: factor_zero(a),
        b: factor_zero(b),
        a_nilpotent: a.nilpotent(),
        b_nilpotent: b.nilpotent(),
        a_quasinilpotent: a.quasinilpotent(),
        b_quasinilpotent: b.quasinilpotent(),
    };
    for rule in ZERO_RULES {
        if (rule.applies)(&facts) {
            return ZeroDecision {
                status: rule.output,
                justification: rule.id.to_string(),
            };
        }
    }
    unreachable!("zero rule table is total over valid descriptors")
}

/// `{pq : p in P, q in Q}`, merged at `merge_tol`.
pub fn product_set(p: &ComplexSet, q: &ComplexSet, merge_tol: f64) -> ComplexSet {
    p.product(q, merge_tol)
}

/// The three-product union with zeros stripped from every factor first.
pub fn l_set(
    a: &SpectralClassification,
    b: &SpectralClassification,
    merge_tol: f64,
) -> ComplexSet {
    let ia = a.iso_non_poles().remove_zero(merge_tol);
    let pa = a.poles().remove_zero(merge_tol);
    let ib = b.iso_non_poles().remove_zero(merge_tol);
    let pb = b.poles().remove_zero(merge_tol);
    ia.product(&ib, merge_tol)
        .union(&ia.product(&pb, merge_tol), merge_tol)
        .union(&pa.product(&ib, merge_tol), merge_tol)
}

/// `A` = σ(a)·acc σ(b) ∪ acc σ(a)·σ(b); off zero these are exactly the
/// accumulation points of the product spectrum.
pub fn a_set(
    a: &SpectralClassification,
    b: &SpectralClassification,
    merge_tol: f64,
) -> ComplexSet {
    a.spectrum()
        .product(&b.accumulation_points(), merge_tol)
        .union(
            &a.accumulation_points().product(&b.spectrum(), merge_tol),
            merge_tol,
        )
}

/// `B` = I(a)I(b) ∪ I(a)Π(b) ∪ Π(a)I(b) with zeros kept in the factors;
/// `B∖{0}` coincides with [`l_set`].
pub fn b_set(
    a: &SpectralClassification,
    b: &SpectralClassification,
    merge_tol: f64,
) -> ComplexSet {
    let ia = a.iso_non_poles();
    let pa = a.poles();
    let ib = b.iso_non_poles();
    let pb = b.poles();
    ia.product(&ib, merge_tol)
        .union(&ia.product(&pb, merge_tol), merge_tol)
        .union(&pa.product(&ib, merge_tol), merge_tol)
}

/// `D` = σ(a)·σ_DR(b) ∪ σ_DR(a)·σ(b).
pub fn d_set(
    a: &SpectralClassification,
    b: &SpectralClassification,
    merge_tol: f64,
) -> ComplexSet {
    a.spectrum()
        .product(&b.drazin_spectrum(), merge_tol)
        .union(
            &a.drazin_spectrum().product(&b.spectrum(), merge_tol),
            merge_tol,
        )
}

/// Nonzero isolated non-poles and nonzero poles of the product:
/// `(L, (Π(a)∖{0})(Π(b)∖{0}) ∖ L)`. Membership in `L` takes precedence over
/// membership in the pole product.
pub fn iso_classify_nonzero(
    a: &SpectralClassification,
    b: &SpectralClassification,
    merge_tol: f64,
) -> Result<(ComplexSet, ComplexSet), TensorError> {
    require_valid("left", a)?;
    require_valid("right", b)?;
    let l = l_set(a, b, merge_tol);
    let pa0 = a.poles().remove_zero(merge_tol);
    let pb0 = b.poles().remove_zero(merge_tol);
    let pi = pa0.product(&pb0, merge_tol).difference(&l, merge_tol);
    Ok((l, pi))
}

/// Whether 0 in a pole position of one factor meets a Drazin-invertible 0 of
/// the other: true when `0 ∉ (Π(a)∩ρ_DR(b)) ∪ (ρ_DR(a)∩Π(b))` where `ρ_DR`
/// is the complement of `σ_DR`.
fn zero_crossing_clear(a: &SpectralClassification, b: &SpectralClassification) -> bool {
    let z = zero();
    let a_pole_b_resolvent = a.poles().contains(z, 0.0) && !b.drazin_spectrum().contains(z, 0.0);
    let b_pole_a_resolvent = b.poles().contains(z, 0.0) && !a.drazin_spectrum().contains(z, 0.0);
    !(a_pole_b_resolvent || b_pole_a_resolvent)
}

/// Case-split decision of whether `σ_DR(a⊗b) = D` holds, by which of the
/// three regimes applies (both σ_DR empty, one empty, neither empty).
fn case_split_equality(a: &SpectralClassification, b: &SpectralClassification) -> bool {
    let z = zero();
    let sdra = a.drazin_spectrum();
    let sdrb = b.drazin_spectrum();
    if sdra.is_empty() && sdrb.is_empty() {
        // D is a union of products with an empty factor, hence empty, and the
        // product of two all-pole spectra has empty Drazin spectrum.
        true
    } else if sdra.is_empty() {
        if a.nilpotent() {
            // The product is nilpotent, so its Drazin spectrum is empty,
            // while D = {0}·σ_DR(b) = {0} is not.
            false
        } else {
            !a.poles().contains(z, 0.0) || sdrb.contains(z, 0.0)
        }
    } else if sdrb.is_empty() {
        if b.nilpotent() {
            false
        } else {
            !b.poles().contains(z, 0.0) || sdra.contains(z, 0.0)
        }
    } else {
        (a.invertible() && b.invertible()) || zero_crossing_clear(a, b)
    }
}

/// The independent boolean conditions around `σ_DR(a⊗b) = D`, reported raw;
/// `equality_holds` applies the one that matches the regime of the inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualityPredicates {
    /// 0 lies in neither input spectrum.
    pub both_invertible: bool,
    /// `0 ∉ (Π(a)∩ρ_DR(b)) ∪ (ρ_DR(a)∩Π(b))`.
    pub zero_crossing_clear: bool,
    /// 0 lies in the Drazin spectrum of the product (status of 0 is
    /// accumulation or isolated non-pole).
    pub product_not_drazin_invertible: bool,
    /// `0 ∉ Π(a)` or `0 ∈ σ_DR(b)`.
    pub left_poles_criterion: bool,
    /// `0 ∉ Π(b)` or `0 ∈ σ_DR(a)`.
    pub right_poles_criterion: bool,
    /// The regime-appropriate equality decision.
    pub equality_holds: bool,
}

/// Evaluates every equality-related condition for the pair.
pub fn equality_predicates(
    a: &SpectralClassification,
    b: &SpectralClassification,
) -> Result<EqualityPredicates, TensorError> {
    require_valid("left", a)?;
    require_valid("right", b)?;
    let z = zero();
    let zd = classify_zero(a, b);
    Ok(EqualityPredicates {
        both_invertible: a.invertible() && b.invertible(),
        zero_crossing_clear: zero_crossing_clear(a, b),
        product_not_drazin_invertible: matches!(
            zd.status,
            ZeroStatus::IsolatedNonPole | ZeroStatus::Accumulation
        ),
        left_poles_criterion: !a.poles().contains(z, 0.0)
            || b.drazin_spectrum().contains(z, 0.0),
        right_poles_criterion: !b.poles().contains(z, 0.0)
            || a.drazin_spectrum().contains(z, 0.0),
        equality_holds: case_split_equality(a, b),
    })
}

/// Full product-classification report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorReport {
    /// `"tensor"` for a⊗b, `"elementary"` when relabeled for S·A·T operators.
    pub kind: String,
    pub input_a: SpectralClassification,
    pub input_b: SpectralClassification,
    /// Classification of the product spectrum. Pole orders are unset: the
    /// calculus establishes membership, not orders.
    pub result: SpectralClassification,
    pub zero: ZeroDecision,
    pub l_set: ComplexSet,
    pub a_set: ComplexSet,
    pub b_set: ComplexSet,
    pub d_set: ComplexSet,
    /// σ_DR of the product read off `result` (accumulation points and
    /// isolated non-poles).
    pub sigma_dr_classification: ComplexSet,
    /// σ_DR of the product from `D∖{0}` plus 0 when the regime condition
    /// puts it there. Always equals the classification route.
    pub sigma_dr_formula: ComplexSet,
    /// Extensional comparison `σ_DR(a⊗b) == D`.
    pub equality_holds: bool,
    pub predicates: EqualityPredicates,
    /// Set when either input has a nonzero accumulation point: the symbolic
    /// result stands, but no matrix instance can be built to cross-check it.
    pub warning_nonzero_acc: bool,
}

/// Classifies the spectrum of the product and cross-checks the Drazin
/// spectrum along two independent routes.
///
/// `merge_tol` is 0.0 for symbolic descriptors (exact lattice values) and
/// the eigenvalue-cluster tolerance for matrix-derived ones.
pub fn tensor_classify(
    a: &SpectralClassification,
    b: &SpectralClassification,
    merge_tol: f64,
) -> Result<TensorReport, TensorError> {
    require_valid("left", a)?;
    require_valid("right", b)?;

    let zero_decision = classify_zero(a, b);
    let l = l_set(a, b, merge_tol);
    let aa = a_set(a, b, merge_tol);
    let bb = b_set(a, b, merge_tol);
    let dd = d_set(a, b, merge_tol);

    let acc_nonzero = aa.remove_zero(merge_tol);
    let iso_nonzero = l.difference(&acc_nonzero, merge_tol);
    let pa0 = a.poles().remove_zero(merge_tol);
    let pb0 = b.poles().remove_zero(merge_tol);
    let pole_nonzero = pa0
        .product(&pb0, merge_tol)
        .difference(&l, merge_tol)
        .difference(&acc_nonzero, merge_tol);

    let mut points: Vec<SpectralPoint> = Vec::new();
    for &z in acc_nonzero.values() {
        points.push(SpectralPoint::acc(z));
    }
    for &z in iso_nonzero.values() {
        points.push(SpectralPoint::iso_non_pole(z));
    }
    for &z in pole_nonzero.values() {
        points.push(SpectralPoint::pole_unknown_order(z));
    }
    match zero_decision.status {
        ZeroStatus::NotInSpectrum => {}
        ZeroStatus::Pole => points.push(SpectralPoint::pole_unknown_order(zero())),
        ZeroStatus::IsolatedNonPole => points.push(SpectralPoint::iso_non_pole(zero())),
        ZeroStatus::Accumulation => points.push(SpectralPoint::acc(zero())),
    }
    let result = SpectralClassification::new(points);

    let path_classification = result.drazin_spectrum();
    let regime_equality = case_split_equality(a, b);
    let mut formula_vals: Vec<Complex64> = dd.remove_zero(merge_tol).values().to_vec();
    // sigma_dr ⊆ D with difference inside {0}: 0 belongs exactly when it is
    // in D and the regime says the two sets coincide.
    if dd.contains(zero(), merge_tol) && regime_equality {
        formula_vals.push(zero());
    }
    let path_formula = ComplexSet::from_values(&formula_vals, merge_tol);

    if !path_classification.eq_with_tol(&path_formula, merge_tol) {
        return Err(TensorError::PathDisagreement {
            classification: path_classification,
            formula: path_formula,
        });
    }

    let equality_holds = path_classification.eq_with_tol(&dd, merge_tol);
    let predicates = equality_predicates(a, b)?;
    let warning_nonzero_acc = a.has_nonzero_accumulation() || b.has_nonzero_accumulation();

    Ok(TensorReport {
        kind: "tensor".to_string(),
        input_a: a.clone(),
        input_b: b.clone(),
        result,
        zero: zero_decision,
        l_set: l,
        a_set: aa,
        b_set: bb,
        d_set: dd,
        sigma_dr_classification: path_classification,
        sigma_dr_formula: path_formula,
        equality_holds,
        predicates,
        warning_nonzero_acc,
    })
}

/// The Drazin spectrum of the product by both routes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrazinSpectrumTensor {
    pub sigma_dr: ComplexSet,
    pub via_classification: ComplexSet,
    pub via_formula: ComplexSet,
    pub d_set: ComplexSet,
    /// `σ_DR(a⊗b) == D`.
    pub equality_holds: bool,
}

/// Computes `σ_DR(a⊗b)` two ways (classification assembly vs the `D`
/// formula with the zero regime condition) and insists they agree.
pub fn drazin_spectrum_tensor(
    a: &SpectralClassification,
    b: &SpectralClassification,
    merge_tol: f64,
) -> Result<DrazinSpectrumTensor, TensorError> {
    let report = tensor_classify(a, b, merge_tol)?;
    Ok(DrazinSpectrumTensor {
        sigma_dr: report.sigma_dr_classification.clone(),
        via_classification: report.sigma_dr_classification,
        via_formula: report.sigma_dr_formula,
        d_set: report.d_set,
        equality_holds: report.equality_holds,
    })
}
