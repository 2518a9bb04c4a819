//! Covers inside involution families, difference and covering indices, and
//! the candidate edge labels built from them.
//!
//! Covers are always found by brute force on the induced Bruhat order. The
//! second label coordinate for signed involutions is a candidate: either the
//! type A covering-index formula applied to the full line over `[±n]`, or the
//! covering value `τ(di)`. Neither is assumed correct; the shellability
//! checks decide.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::signed::{positions, FullPermutation, SignedPermutation};

/// A label `(i, j)` with `i < j` in `[±n]`, ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeLabel {
    pub i: i32,
    pub j: i32,
}

impl EdgeLabel {
    pub fn new(i: i32, j: i32) -> Self {
        EdgeLabel { i, j }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// How the second coordinate of a label is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum LabelVariant {
    /// `min{j > di : σ(j) ∈ [σ(di)+1, τ(di)]}`
    #[default]
    CiCandidate,
    /// `τ(di)`
    CvCandidate,
}

impl FromStr for LabelVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ci-candidate" => Ok(LabelVariant::CiCandidate),
            "cv-candidate" => Ok(LabelVariant::CvCandidate),
            _ => Err(Error::InvalidInput(format!("unknown labelling {s:?}"))),
        }
    }
}

fn same_size(a: &FullPermutation, b: &FullPermutation) -> Result<()> {
    if a.n() == b.n() {
        Ok(())
    } else {
        Err(Error::SizeMismatch {
            expected: a.n(),
            found: b.n(),
        })
    }
}

/// First position of `[±n]` where the two permutations differ.
pub fn difference_index(sigma: &FullPermutation, tau: &FullPermutation) -> Result<i32> {
    same_size(sigma, tau)?;
    positions(sigma.n())
        .find(|&i| sigma.value(i) != tau.value(i))
        .ok_or(Error::EqualInputs)
}

/// The covering-index formula on full lines; 0 is never a value, so the value
/// window `[σ(di)+1, τ(di)]` skips it automatically.
fn transplanted_index(sigma: &FullPermutation, tau: &FullPermutation) -> Result<i32> {
    let di = difference_index(sigma, tau)?;
    let (lo, hi) = (sigma.value(di) + 1, tau.value(di));
    positions(sigma.n())
        .filter(|&j| j > di)
        .find(|&j| {
            let v = sigma.value(j);
            lo <= v && v <= hi
        })
        .ok_or(Error::NoCandidate)
}

/// Covering index for involutions of `[±n]` (type A).
pub fn covering_index_a(sigma: &FullPermutation, tau: &FullPermutation) -> Result<i32> {
    if !sigma.is_involution() || !tau.is_involution() {
        return Err(Error::InvalidPermutation("covering index needs involutions".into()));
    }
    transplanted_index(sigma, tau)
}

/// Candidate covering index for signed involutions: the type A formula on the
/// full lines.
pub fn covering_index_b_candidate(sigma: &SignedPermutation, tau: &SignedPermutation) -> Result<i32> {
    if !sigma.as_full().is_involution() || !tau.as_full().is_involution() {
        return Err(Error::InvalidPermutation("covering index needs involutions".into()));
    }
    transplanted_index(sigma.as_full(), tau.as_full())
}

/// Label of the pair `sigma < tau` under `variant`.
pub fn candidate_label(sigma: &FullPermutation, tau: &FullPermutation, variant: LabelVariant) -> Result<EdgeLabel> {
    let i = difference_index(sigma, tau)?;
    let j = match variant {
        LabelVariant::CiCandidate => transplanted_index(sigma, tau)?,
        LabelVariant::CvCandidate => tau.value(i),
    };
    if j <= i {
        return Err(Error::NoCandidate);
    }
    Ok(EdgeLabel { i, j })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverRecord {
    pub lower: usize,
    pub upper: usize,
    pub label: Option<EdgeLabel>,
    /// `upper(di)`
    pub covering_value: i32,
}

/// Every cover of `poset`, which must be the Bruhat order on `elements`
/// (same indexing), labelled under `variant` where possible.
pub fn family_covers(elements: &[FullPermutation], poset: &Poset, variant: LabelVariant) -> Result<Vec<CoverRecord>> {
    if elements.len() != poset.len() {
        return Err(Error::SizeMismatch {
            expected: poset.len(),
            found: elements.len(),
        });
    }
    poset
        .covers()
        .into_iter()
        .map(|(lower, upper)| {
            let (s, t) = (&elements[lower], &elements[upper]);
            let di = difference_index(s, t)?;
            Ok(CoverRecord {
                lower,
                upper,
                label: candidate_label(s, t, variant).ok(),
                covering_value: t.value(di),
            })
        })
        .collect()
}

/// Outcome of checking the structural claims about labels on a cover list.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LabelValidation {
    pub covers: usize,
    /// Covers where no label could be formed.
    pub unlabelled: Vec<(usize, usize)>,
    /// Covers where `upper(i) > upper(j)` fails.
    pub value_order_failures: Vec<(usize, usize)>,
    /// `(lower, upper_a, upper_b)`: two covers of `lower` sharing a label.
    pub duplicate_labels: Vec<(usize, usize, usize)>,
}

impl LabelValidation {
    pub fn is_clean(&self) -> bool {
        self.unlabelled.is_empty() && self.value_order_failures.is_empty() && self.duplicate_labels.is_empty()
    }
}

pub fn validate_labels(elements: &[FullPermutation], records: &[CoverRecord]) -> LabelValidation {
    let mut out = LabelValidation {
        covers: records.len(),
        ..Default::default()
    };
    for r in records {
        match r.label {
            None => out.unlabelled.push((r.lower, r.upper)),
            Some(label) => {
                let upper = &elements[r.upper];
                if upper.value(label.i) <= upper.value(label.j) {
                    out.value_order_failures.push((r.lower, r.upper));
                }
            }
        }
    }
    for (a, ra) in records.iter().enumerate() {
        for rb in &records[a + 1..] {
            if ra.lower == rb.lower && ra.label.is_some() && ra.label == rb.label {
                out.duplicate_labels.push((ra.lower, ra.upper, rb.upper));
            }
        }
    }
    out
}

/// The cover `π` of `sigma` with `π <= tau` whose label is lex-minimal.
pub fn minimal_cover(poset: &Poset, records: &[CoverRecord], sigma: usize, tau: usize) -> Result<usize> {
    if !poset.lt(sigma, tau) {
        return Err(Error::NotComparable(sigma, tau));
    }
    records
        .iter()
        .filter(|r| r.lower == sigma && poset.leq(r.upper, tau))
        .min_by(|a, b| match (a.label, b.label) {
            (Some(x), Some(y)) => x.cmp(&y).then(a.upper.cmp(&b.upper)),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => a.upper.cmp(&b.upper),
        })
        .map(|r| r.upper)
        .ok_or(Error::NotComparable(sigma, tau))
}

/// Which of the six type A covering moves takes `sigma` to `tau`, read off
/// from the relative order of `i, j, σ(i), σ(j)` with `(i, j) = (di, ci)`.
/// Reporting only; `None` if the pair does not fit any pattern.
pub fn type_a_cover_type(sigma: &FullPermutation, tau: &FullPermutation) -> Option<u8> {
    let i = difference_index(sigma, tau).ok()?;
    let j = covering_index_a(sigma, tau).ok()?;
    let (si, sj) = (sigma.value(i), sigma.value(j));
    let kind = match (si == i, sj == j) {
        (true, true) => 1,
        (true, false) if j < sj => 2,
        (false, true) if i < si && si < j => 3,
        (false, false) if i < j && j < si && si < sj => 4,
        (false, false) if i < si && si < j && j < sj => 5,
        (false, false) if i < si && si < sj && sj < j => 6,
        _ => return None,
    };
    Some(kind)
}
