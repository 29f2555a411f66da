//! Spectral classification: the spectrum partitioned into accumulation
//! points, poles of the resolvent, and isolated points that are not poles.
//!
//! A classification is a finite list of marked points. For a matrix the
//! spectrum is finite and every point is a pole whose order is the index of
//! `A - lambda I`; [`classify_matrix`] computes exactly that. Descriptors
//! with accumulation points or isolated non-pole points describe operators
//! beyond the matrix case and feed the symbolic product calculus.

use crate::drazin::{index_of, DrazinError};
use crate::eig::{cluster_for_classification, eigenvalues};
use crate::matrix::{ComplexMatrix, Tolerance};
use crate::sets::ComplexSet;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

/// How a spectral point sits inside the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpectralTag {
    /// Accumulation point of the spectrum.
    #[serde(rename = "acc")]
    Accumulation,
    /// Isolated point that is a pole of the resolvent.
    #[serde(rename = "pole")]
    Pole,
    /// Isolated point of the spectrum that is not a pole.
    #[serde(rename = "iso_non_pole")]
    IsolatedNonPole,
}

impl fmt::Display for SpectralTag {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let s = match self {
            SpectralTag::Accumulation => "acc",
            SpectralTag::Pole => "pole",
            SpectralTag::IsolatedNonPole => "iso_non_pole",
        };
        f.write_str(s)
    }
}

/// One marked point of a spectrum. `order` is meaningful only for poles and
/// may be absent when the order is unknown (symbolic results).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub value: Complex64,
    pub tag: SpectralTag,
    pub order: Option<u32>,
}

impl SpectralPoint {
    pub fn new(value: Complex64, tag: SpectralTag, order: Option<u32>) -> Self {
        SpectralPoint {
            value: Complex64::new(value.re + 0.0, value.im + 0.0),
            tag,
            order,
        }
    }

    pub fn pole(value: Complex64, order: u32) -> Self {
        Self::new(value, SpectralTag::Pole, Some(order))
    }

    pub fn pole_unknown_order(value: Complex64) -> Self {
        Self::new(value, SpectralTag::Pole, None)
    }

    pub fn acc(value: Complex64) -> Self {
        Self::new(value, SpectralTag::Accumulation, None)
    }

    pub fn iso_non_pole(value: Complex64) -> Self {
        Self::new(value, SpectralTag::IsolatedNonPole, None)
    }
}

/// Structural problems in a descriptor, reported by [`SpectralClassification::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// The spectrum of a bounded operator is never empty.
    EmptySpectrum,
    NonFiniteValue { index: usize },
    DuplicateValue { value: Complex64 },
    /// Orders belong to poles only.
    OrderOnNonPole { value: Complex64 },
    /// Pole orders are at least 1.
    ZeroOrder { value: Complex64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Violation::EmptySpectrum => write!(f, "descriptor has no points; a spectrum is never empty"),
            Violation::NonFiniteValue { index } => {
                write!(f, "point {index} has a non-finite value")
            }
            Violation::DuplicateValue { value } => {
                write!(f, "value {}+{}i appears more than once", value.re, value.im)
            }
            Violation::OrderOnNonPole { value } => write!(
                f,
                "point {}+{}i carries an order but is not a pole",
                value.re, value.im
            ),
            Violation::ZeroOrder { value } => write!(
                f,
                "pole {}+{}i has order 0; pole orders start at 1",
                value.re, value.im
            ),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PointWire {
    value: [f64; 2],
    tag: SpectralTag,
    #[serde(default)]
    order: Option<u32>,
}

#[derive(Serialize, Deserialize)]
struct ClassificationWire {
    points: Vec<PointWire>,
}

/// A full spectral classification: marked points sorted by `(re, im)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "ClassificationWire", into = "ClassificationWire")]
pub struct SpectralClassification {
    points: Vec<SpectralPoint>,
}

impl From<ClassificationWire> for SpectralClassification {
    fn from(w: ClassificationWire) -> Self {
        let points = w
            .points
            .into_iter()
            .map(|p| {
                SpectralPoint::new(Complex64::new(p.value[0], p.value[1]), p.tag, p.order)
            })
            .collect();
        SpectralClassification::new(points)
    }
}

impl From<SpectralClassification> for ClassificationWire {
    fn from(c: SpectralClassification) -> Self {
        ClassificationWire {
            points: c
                .points
                .into_iter()
                .map(|p| PointWire {
                    value: [p.value.re, p.value.im],
                    tag: p.tag,
                    order: p.order,
                })
                .collect(),
        }
    }
}

impl SpectralClassification {
    /// Sorts by `(re, im)` and drops later points with bit-identical values.
    pub fn new(mut points: Vec<SpectralPoint>) -> Self {
        points.sort_by(|a, b| {
            a.value
                .re
                .total_cmp(&b.value.re)
                .then(a.value.im.total_cmp(&b.value.im))
        });
        points.dedup_by(|a, b| a.value.re.total_cmp(&b.value.re).is_eq() && a.value.im.total_cmp(&b.value.im).is_eq());
        SpectralClassification { points }
    }

    pub fn points(&self) -> &[SpectralPoint] {
        &self.points
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.points.is_empty() {
            out.push(Violation::EmptySpectrum);
        }
        for (i, p) in self.points.iter().enumerate() {
            if !p.value.re.is_finite() || !p.value.im.is_finite() {
                out.push(Violation::NonFiniteValue { index: i });
            }
            match (p.tag, p.order) {
                (SpectralTag::Pole, Some(0)) => out.push(Violation::ZeroOrder { value: p.value }),
                (SpectralTag::Pole, _) => {}
                (_, Some(_)) => out.push(Violation::OrderOnNonPole { value: p.value }),
                (_, None) => {}
            }
        }
        // Construction dedupes bit-identical values, so only near-duplicates
        // that differ in some bit can survive; flag exact ties defensively
        // for descriptors built by hand.
        for w in self.points.windows(2) {
            if w[0].value == w[1].value {
                out.push(Violation::DuplicateValue { value: w[0].value });
            }
        }
        out
    }

    /// The point at exactly `z`, if any.
    pub fn point_at(&self, z: Complex64) -> Option<&SpectralPoint> {
        let z = Complex64::new(z.re + 0.0, z.im + 0.0);
        self.points.iter().find(|p| p.value == z)
    }

    /// The point within Euclidean distance `tol` of `z`, if any.
    pub fn point_near(&self, z: Complex64, tol: f64) -> Option<&SpectralPoint> {
        self.points.iter().find(|p| (p.value - z).norm() <= tol)
    }

    pub fn zero_point(&self) -> Option<&SpectralPoint> {
        self.point_at(Complex64::new(0.0, 0.0))
    }

    fn select(&self, keep: impl Fn(&SpectralPoint) -> bool) -> ComplexSet {
        self.points
            .iter()
            .filter(|p| keep(p))
            .map(|p| p.value)
            .collect()
    }

    /// All spectral values.
    pub fn spectrum(&self) -> ComplexSet {
        self.select(|_| true)
    }

    /// Pole values.
    pub fn poles(&self) -> ComplexSet {
        self.select(|p| p.tag == SpectralTag::Pole)
    }

    /// Isolated non-pole values.
    pub fn iso_non_poles(&self) -> ComplexSet {
        self.select(|p| p.tag == SpectralTag::IsolatedNonPole)
    }

    /// Accumulation-point values.
    pub fn accumulation_points(&self) -> ComplexSet {
        self.select(|p| p.tag == SpectralTag::Accumulation)
    }

    /// Values where no Drazin inverse exists: accumulation points together
    /// with isolated non-poles (the spectrum minus the poles).
    pub fn drazin_spectrum(&self) -> ComplexSet {
        self.select(|p| p.tag != SpectralTag::Pole)
    }

    /// True when 0 is not in the spectrum.
    pub fn invertible(&self) -> bool {
        self.zero_point().is_none()
    }

    /// Spectrum is exactly `{0}`.
    pub fn quasinilpotent(&self) -> bool {
        self.points.len() == 1 && self.points[0].value == Complex64::new(0.0, 0.0)
    }

    /// Spectrum is `{0}` and 0 is a pole.
    pub fn nilpotent(&self) -> bool {
        self.quasinilpotent() && self.points[0].tag == SpectralTag::Pole
    }

    /// Accumulation points other than 0 cannot occur for matrices, so such
    /// descriptors cannot be cross-checked against matrix instances.
    pub fn has_nonzero_accumulation(&self) -> bool {
        self.points
            .iter()
            .any(|p| p.tag == SpectralTag::Accumulation && p.value != Complex64::new(0.0, 0.0))
    }
}

/// Classifies the spectrum of a matrix: eigenvalues are clustered (with the
/// defect-aware radius), means within `tol.eig_cluster` of 0 snap to exactly
/// 0, and each point becomes a pole whose order is the index of the shifted
/// matrix, clamped to `[1, multiplicity]`.
pub fn classify_matrix(
    a: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<SpectralClassification, DrazinError> {
    let raw = eigenvalues(a)?;
    let clusters = cluster_for_classification(&raw, tol.eig_cluster, a.rows());
    let mut points = Vec::with_capacity(clusters.len());
    for (mean, count) in clusters {
        let value = if mean.norm() <= tol.eig_cluster {
            Complex64::new(0.0, 0.0)
        } else {
            mean
        };
        let mut order = index_of(&a.shift_diagonal(value)?, tol)?;
        if order == 0 {
            // The cluster mean can sit just far enough from a very defective
            // eigenvalue that the shifted matrix looks invertible; retry at
            // the nearest raw eigenvalue, which carries only backward error.
            if let Some(nearest) = raw
                .iter()
                .copied()
                .min_by(|x, y| (x - value).norm().total_cmp(&(y - value).norm()))
            {
                order = index_of(&a.shift_diagonal(nearest)?, tol)?;
            }
        }
        let order = order.clamp(1, count) as u32;
        points.push(SpectralPoint::pole(value, order));
    }
    Ok(SpectralClassification::new(points))
}
