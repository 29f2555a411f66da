//! Finite sets of complex values with tolerance-aware membership.
//!
//! Values are kept sorted by `(re, im)` with negative zeros normalized, so
//! equal sets have equal representations and iteration order is
//! deterministic. A merge tolerance of zero means bit-exact deduplication,
//! which is the right notion for symbolic lattice values; a positive
//! tolerance collapses near-duplicates onto the first (smallest) member.

use num_complex::Complex64;
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

fn normalize(z: Complex64) -> Complex64 {
    // +0.0 maps -0.0 to +0.0 and leaves every other value untouched.
    Complex64::new(z.re + 0.0, z.im + 0.0)
}

fn key_cmp(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// A finite set of complex values in canonical sorted order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComplexSet {
    values: Vec<Complex64>,
}

impl ComplexSet {
    pub fn empty() -> Self {
        ComplexSet { values: Vec::new() }
    }

    /// Builds a set, merging members closer than `merge_tol` (Euclidean
    /// distance); `merge_tol == 0.0` deduplicates bit-exactly.
    pub fn from_values(values: &[Complex64], merge_tol: f64) -> Self {
        let mut sorted: Vec<Complex64> = values.iter().map(|&z| normalize(z)).collect();
        sorted.sort_by(key_cmp);
        let mut kept: Vec<Complex64> = Vec::with_capacity(sorted.len());
        for z in sorted {
            let dup = if merge_tol == 0.0 {
                kept.last().is_some_and(|w| key_cmp(w, &z) == Ordering::Equal)
            } else {
                kept.iter().any(|w| (w - z).norm() <= merge_tol)
            };
            if !dup {
                kept.push(z);
            }
        }
        ComplexSet { values: kept }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex64> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Membership within Euclidean distance `tol` (`0.0` means bit-exact).
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        let z = normalize(z);
        if tol == 0.0 {
            self.values
                .binary_search_by(|w| key_cmp(w, &z))
                .is_ok()
        } else {
            self.values.iter().any(|w| (w - z).norm() <= tol)
        }
    }

    pub fn union(&self, other: &ComplexSet, merge_tol: f64) -> ComplexSet {
        let mut all = self.values.clone();
        all.extend_from_slice(&other.values);
        ComplexSet::from_values(&all, merge_tol)
    }

    /// Members of `self` not within `tol` of any member of `other`.
    pub fn difference(&self, other: &ComplexSet, tol: f64) -> ComplexSet {
        let kept: Vec<Complex64> = self
            .values
            .iter()
            .copied()
            .filter(|&z| !other.contains(z, tol))
            .collect();
        ComplexSet { values: kept }
    }

    pub fn intersection(&self, other: &ComplexSet, tol: f64) -> ComplexSet {
        let kept: Vec<Complex64> = self
            .values
            .iter()
            .copied()
            .filter(|&z| other.contains(z, tol))
            .collect();
        ComplexSet { values: kept }
    }

    /// All pairwise products, merged at `merge_tol`.
    pub fn product(&self, other: &ComplexSet, merge_tol: f64) -> ComplexSet {
        let mut prods = Vec::with_capacity(self.len() * other.len());
        for &a in &self.values {
            for &b in &other.values {
                prods.push(a * b);
            }
        }
        ComplexSet::from_values(&prods, merge_tol)
    }

    pub fn remove_zero(&self, tol: f64) -> ComplexSet {
        self.difference(&ComplexSet::from_values(&[Complex64::new(0.0, 0.0)], 0.0), tol)
    }

    pub fn is_subset_of(&self, other: &ComplexSet, tol: f64) -> bool {
        self.values.iter().all(|&z| other.contains(z, tol))
    }

    /// Mutual containment at `tol`.
    pub fn eq_with_tol(&self, other: &ComplexSet, tol: f64) -> bool {
        self.is_subset_of(other, tol) && other.is_subset_of(self, tol)
    }
}

impl FromIterator<Complex64> for ComplexSet {
    fn from_iter<T: IntoIterator<Item = Complex64>>(iter: T) -> Self {
        let values: Vec<Complex64> = iter.into_iter().collect();
        ComplexSet::from_values(&values, 0.0)
    }
}

impl Serialize for ComplexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.values.len()))?;
        for z in &self.values {
            seq.serialize_element(&[z.re, z.im])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ComplexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct SetVisitor;
        impl<'de> Visitor<'de> for SetVisitor {
            type Value = ComplexSet;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a sequence of [re, im] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut values = Vec::new();
                while let Some([re, im]) = seq.next_element::<[f64; 2]>()? {
                    values.push(Complex64::new(re, im));
                }
                Ok(ComplexSet::from_values(&values, 0.0))
            }
        }
        deserializer.deserialize_seq(SetVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn set(vals: &[(f64, f64)]) -> ComplexSet {
        let v: Vec<Complex64> = vals.iter().map(|&(re, im)| c(re, im)).collect();
        ComplexSet::from_values(&v, 0.0)
    }

    #[test]
    fn construction_sorts_and_dedupes_bit_exactly() {
        let s = ComplexSet::from_values(
            &[c(2.0, 0.0), c(1.0, 0.0), c(1.0, -0.0), c(1.0, 1.0)],
            0.0,
        );
        assert_eq!(s.values(), &[c(1.0, 0.0), c(1.0, 1.0), c(2.0, 0.0)]);
    }

    #[test]
    fn positive_tolerance_merges_near_duplicates() {
        let s = ComplexSet::from_values(&[c(1.0, 0.0), c(1.0 + 1e-9, 0.0), c(2.0, 0.0)], 1e-7);
        assert_eq!(s.len(), 2);
        assert!(s.contains(c(1.0, 0.0), 0.0));
        assert!(s.contains(c(2.0, 0.0), 0.0));
    }

    #[test]
    fn product_of_small_sets() {
        // {1, 2} x {1, 3} = {1, 2, 3, 6}
        let p = set(&[(1.0, 0.0), (2.0, 0.0)]).product(&set(&[(1.0, 0.0), (3.0, 0.0)]), 0.0);
        assert_eq!(p, set(&[(1.0, 0.0), (2.0, 0.0), (3.0, 0.0), (6.0, 0.0)]));
    }

    #[test]
    fn product_collapses_coincidences() {
        // {1, 2} x {2, 4} has 2*2 = 4*1, so five distinct values remain.
        let p = set(&[(1.0, 0.0), (2.0, 0.0)]).product(&set(&[(2.0, 0.0), (4.0, 0.0)]), 0.0);
        assert_eq!(p.len(), 3);
        assert_eq!(p, set(&[(2.0, 0.0), (4.0, 0.0), (8.0, 0.0)]));
    }

    #[test]
    fn difference_and_remove_zero() {
        let s = set(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        assert_eq!(s.remove_zero(0.0), set(&[(1.0, 0.0), (2.0, 0.0)]));
        let d = s.difference(&set(&[(1.0, 0.0)]), 0.0);
        assert_eq!(d, set(&[(0.0, 0.0), (2.0, 0.0)]));
    }

    #[test]
    fn set_equality_is_mutual_containment() {
        let a = set(&[(1.0, 0.0)]);
        let b = set(&[(1.0, 0.0), (2.0, 0.0)]);
        assert!(!a.eq_with_tol(&b, 1e-9));
        assert!(a.is_subset_of(&b, 1e-9));
        assert!(a.eq_with_tol(&set(&[(1.0 + 1e-12, 0.0)]), 1e-9));
        assert!(!a.eq_with_tol(&set(&[(1.0 + 1e-12, 0.0)]), 0.0));
    }

    #[test]
    fn complex_products_stay_on_gaussian_lattice() {
        // (1+i)(1-i) = 2 exactly in floating point.
        let p = set(&[(1.0, 1.0)]).product(&set(&[(1.0, -1.0)]), 0.0);
        assert_eq!(p.values(), &[c(2.0, 0.0)]);
    }

    #[test]
    fn serde_round_trip() {
        let s = set(&[(0.0, 0.0), (1.5, -2.0)]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[[0.0,0.0],[1.5,-2.0]]");
        let back: ComplexSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
