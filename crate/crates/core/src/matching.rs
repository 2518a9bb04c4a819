//! Special matchings, special partial matchings (SPMs), the lifting property,
//! and the pircon/zircon classification of finite posets.

use std::fmt;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;

/// A candidate matching `M: P -> P`, stored by images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatchingMap(pub Vec<usize>);

impl MatchingMap {
    pub fn identity(len: usize) -> Self {
        MatchingMap((0..len).collect())
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(i, &m)| *i == m).map(|(i, _)| i)
    }

    /// Pairs `[x, M(x)]` by element name, one per element.
    pub fn to_named_pairs(&self, poset: &Poset) -> Vec<[String; 2]> {
        self.0
            .iter()
            .enumerate()
            .map(|(x, &m)| [poset.name(x).to_string(), poset.name(m).to_string()])
            .collect()
    }

    /// Inverse of [`MatchingMap::to_named_pairs`]. Unlisted elements are fixed.
    pub fn from_named_pairs(poset: &Poset, pairs: &[[String; 2]]) -> Result<Self> {
        let mut image: Vec<usize> = (0..poset.len()).collect();
        for [a, b] in pairs {
            let lookup = |s: &String| {
                poset
                    .index_of(s)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown element {s:?}")))
            };
            image[lookup(a)?] = lookup(b)?;
        }
        Ok(MatchingMap(image))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    NotInvolution,
    TopNotMatchedDown,
    NotAdjacent,
    SpecialConditionFail,
    FixedPointPresent,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchingVerdict {
    pub valid: bool,
    pub violation: Option<Violation>,
    pub witness: Option<(usize, usize)>,
}

impl MatchingVerdict {
    const VALID: MatchingVerdict = MatchingVerdict {
        valid: true,
        violation: None,
        witness: None,
    };

    fn fail(violation: Violation, x: usize, y: usize) -> Self {
        MatchingVerdict {
            valid: false,
            violation: Some(violation),
            witness: Some((x, y)),
        }
    }

    pub fn to_json(&self, poset: &Poset) -> VerdictJson {
        VerdictJson {
            valid: self.valid,
            violation: self.violation.map(|v| v.to_string()).unwrap_or_default(),
            witness: self
                .witness
                .map(|(x, y)| vec![poset.name(x).to_string(), poset.name(y).to_string()])
                .unwrap_or_default(),
        }
    }
}

/// `{"valid": bool, "violation": string, "witness": [names]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub valid: bool,
    pub violation: String,
    pub witness: Vec<String>,
}

fn check_size(poset: &Poset, m: &MatchingMap) -> Result<()> {
    if m.len() != poset.len() {
        return Err(Error::SizeMismatch {
            expected: poset.len(),
            found: m.len(),
        });
    }
    if let Some(&bad) = m.0.iter().find(|&&x| x >= poset.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            len: poset.len(),
        });
    }
    Ok(())
}

/// Involution, adjacency and the special condition; `allow_fixed` decides
/// whether `M(x) = x` is admissible.
fn check_common(poset: &Poset, m: &MatchingMap, allow_fixed: bool) -> Option<MatchingVerdict> {
    for x in 0..poset.len() {
        if m.apply(m.apply(x)) != x {
            return Some(MatchingVerdict::fail(Violation::NotInvolution, x, m.apply(x)));
        }
    }
    if !allow_fixed {
        if let Some(x) = m.fixed_points().next() {
            return Some(MatchingVerdict::fail(Violation::FixedPointPresent, x, x));
        }
    }
    for x in 0..poset.len() {
        let mx = m.apply(x);
        if mx != x && !poset.is_cover(x, mx) && !poset.is_cover(mx, x) {
            return Some(MatchingVerdict::fail(Violation::NotAdjacent, x, mx));
        }
    }
    for (x, y) in poset.covers() {
        if m.apply(x) != y && !poset.lt(m.apply(x), m.apply(y)) {
            return Some(MatchingVerdict::fail(Violation::SpecialConditionFail, x, y));
        }
    }
    None
}

/// A special matching: a fixed-point-free involution along covers satisfying
/// `x ⋖ y, M(x) != y  =>  M(x) < M(y)`.
pub fn check_special_matching(poset: &Poset, m: &MatchingMap) -> Result<MatchingVerdict> {
    check_size(poset, m)?;
    Ok(check_common(poset, m, false).unwrap_or(MatchingVerdict::VALID))
}

/// A special partial matching on a poset with a top: like a special matching
/// but fixed points are allowed, and the top must be matched to a coatom.
pub fn check_spm(poset: &Poset, m: &MatchingMap) -> Result<MatchingVerdict> {
    let top = poset.top().ok_or(Error::MissingTop)?;
    check_size(poset, m)?;
    for x in 0..poset.len() {
        if m.apply(m.apply(x)) != x {
            return Ok(MatchingVerdict::fail(Violation::NotInvolution, x, m.apply(x)));
        }
    }
    if !poset.is_cover(m.apply(top), top) {
        return Ok(MatchingVerdict::fail(
            Violation::TopNotMatchedDown,
            top,
            m.apply(top),
        ));
    }
    Ok(check_common(poset, m, true).unwrap_or(MatchingVerdict::VALID))
}

/// Which implication of the lifting property failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LiftingPart {
    /// `M(x) <= y`
    BoundedByTop,
    /// `M(x) <= x  =>  M(x) < M(y)`
    DownStaysBelow,
    /// `M(x) >= x  =>  x <= M(y)`
    UpStaysBelow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingVerdict {
    pub holds: bool,
    pub failed: Option<LiftingPart>,
    pub witness: Option<(usize, usize)>,
    pub pairs_checked: usize,
}

/// Checks the lifting property over every pair `x < y` with `M(y) <= y`.
pub fn check_lifting(poset: &Poset, m: &MatchingMap) -> Result<LiftingVerdict> {
    let verdict = check_spm(poset, m)?;
    if !verdict.valid {
        return Err(Error::NotAnSpm(format!(
            "{:?} at {:?}",
            verdict.violation, verdict.witness
        )));
    }
    let mut pairs_checked = 0;
    for y in 0..poset.len() {
        let my = m.apply(y);
        if !poset.leq(my, y) {
            continue;
        }
        for x in poset.strictly_below(y).ones() {
            pairs_checked += 1;
            let mx = m.apply(x);
            let failed = if !poset.leq(mx, y) {
                Some(LiftingPart::BoundedByTop)
            } else if poset.leq(mx, x) && !poset.lt(mx, my) {
                Some(LiftingPart::DownStaysBelow)
            } else if poset.leq(x, mx) && !poset.leq(x, my) {
                Some(LiftingPart::UpStaysBelow)
            } else {
                None
            };
            if failed.is_some() {
                return Ok(LiftingVerdict {
                    holds: false,
                    failed,
                    witness: Some((x, y)),
                    pairs_checked,
                });
            }
        }
    }
    Ok(LiftingVerdict {
        holds: true,
        failed: None,
        witness: None,
        pairs_checked,
    })
}

const UNSET: usize = usize::MAX;

/// Depth-first SPM search. Elements are visited top-down by their distance
/// from the top (longest chain), so every upper cover of the current element
/// is already matched and the special condition can be checked on entry.
struct Searcher<'a> {
    poset: &'a Poset,
    order: Vec<usize>,
    mate: Vec<usize>,
    top: usize,
    allow_fixed: bool,
}

impl<'a> Searcher<'a> {
    fn new(poset: &'a Poset, top: usize, allow_fixed: bool) -> Self {
        let n = poset.len();
        let mut by_height: Vec<usize> = (0..n).collect();
        by_height.sort_by_key(|&x| poset.strictly_above(x).count_ones(..));
        let mut depth = vec![0usize; n];
        for &x in &by_height {
            depth[x] = poset
                .upper_covers(x)
                .iter()
                .map(|&y| depth[y] + 1)
                .max()
                .unwrap_or(0);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (depth[x], x));
        Searcher {
            poset,
            order,
            mate: vec![UNSET; n],
            top,
            allow_fixed,
        }
    }

    /// Special condition for every cover `x ⋖ y` given `M(x) = image`.
    fn upper_ok(&self, x: usize, image: usize) -> bool {
        self.poset
            .upper_covers(x)
            .iter()
            .all(|&y| image == y || self.poset.lt(image, self.mate[y]))
    }

    /// Early check for a lower cover `z` newly matched up to `x`.
    fn partner_ok(&self, z: usize, x: usize) -> bool {
        self.poset
            .upper_covers(z)
            .iter()
            .all(|&y| y == x || self.mate[y] == UNSET || self.poset.lt(x, self.mate[y]))
    }

    fn run<F>(&mut self, k: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&MatchingMap) -> ControlFlow<()>,
    {
        let Some(&x) = self.order.get(k) else {
            return visit(&MatchingMap(self.mate.clone()));
        };
        if self.mate[x] != UNSET {
            return if self.upper_ok(x, self.mate[x]) {
                self.run(k + 1, visit)
            } else {
                ControlFlow::Continue(())
            };
        }
        let fixable = self.allow_fixed && x != self.top;
        let lower: Vec<usize> = self
            .poset
            .lower_covers(x)
            .iter()
            .copied()
            .filter(|&z| self.mate[z] == UNSET)
            .collect();
        let mut candidates = lower;
        if fixable {
            candidates.push(x);
            candidates.sort_unstable();
        }
        for c in candidates {
            if !self.upper_ok(x, c) {
                continue;
            }
            self.mate[x] = c;
            self.mate[c] = x;
            let flow = if c == x || self.partner_ok(c, x) {
                self.run(k + 1, visit)
            } else {
                ControlFlow::Continue(())
            };
            self.mate[x] = UNSET;
            self.mate[c] = UNSET;
            if flow.is_break() {
                return flow;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` with every SPM (or, with `allow_fixed = false`, every
/// special matching) of `poset` in a deterministic order until it breaks.
pub fn for_each_spm<F>(poset: &Poset, allow_fixed: bool, mut visit: F) -> Result<()>
where
    F: FnMut(&MatchingMap) -> ControlFlow<()>,
{
    let top = poset.top().ok_or(Error::MissingTop)?;
    let mut searcher = Searcher::new(poset, top, allow_fixed);
    let _ = searcher.run(0, &mut visit);
    Ok(())
}

fn first_match(poset: &Poset, allow_fixed: bool) -> Result<Option<MatchingMap>> {
    let mut found = None;
    for_each_spm(poset, allow_fixed, |m| {
        found = Some(m.clone());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// First SPM in search order, if any exists.
pub fn search_spm(poset: &Poset) -> Result<Option<MatchingMap>> {
    first_match(poset, true)
}

/// First special matching (no fixed points) in search order, if any exists.
pub fn search_special_matching(poset: &Poset) -> Result<Option<MatchingMap>> {
    first_match(poset, false)
}

/// Every SPM of a (small) poset.
pub fn all_spms(poset: &Poset) -> Result<Vec<MatchingMap>> {
    let mut out = Vec::new();
    for_each_spm(poset, true, |m| {
        out.push(m.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Search results for one principal ideal. Matchings are indexed locally
/// to `poset.principal_ideal(ideal_top)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealCertificate {
    pub ideal_top: usize,
    pub ideal_size: usize,
    pub spm: Option<MatchingMap>,
    /// `None` when the special-matching search was skipped.
    pub special_matching: Option<Option<MatchingMap>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub pircon: bool,
    /// `None` when the special-matching search was skipped.
    pub zircon: Option<bool>,
    pub certificates: Vec<IdealCertificate>,
}

/// `{"ideal_top": name, "matching": [[x, M(x)], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub ideal_top: String,
    pub matching: Vec<[String; 2]>,
}

impl Classification {
    /// SPM certificates by element name; ideals without an SPM are omitted.
    pub fn certificates_json(&self, poset: &Poset) -> Result<Vec<CertificateJson>> {
        let mut out = Vec::new();
        for cert in &self.certificates {
            if let Some(m) = &cert.spm {
                let ideal = poset.principal_ideal(cert.ideal_top)?;
                out.push(CertificateJson {
                    ideal_top: poset.name(cert.ideal_top).to_string(),
                    matching: m.to_named_pairs(&ideal.poset),
                });
            }
        }
        Ok(out)
    }
}

/// Runs the SPM search (and, if `with_zircon`, the special matching search)
/// on every principal ideal of a non-minimal element.
pub fn classify_with(poset: &Poset, with_zircon: bool) -> Result<Classification> {
    let tops: Vec<usize> = (0..poset.len()).filter(|&p| !poset.is_minimal(p)).collect();
    let certificates = tops
        .par_iter()
        .map(|&p| -> Result<IdealCertificate> {
            let ideal = poset.principal_ideal(p)?;
            let spm = search_spm(&ideal.poset)?;
            let special_matching = if with_zircon {
                Some(search_special_matching(&ideal.poset)?)
            } else {
                None
            };
            Ok(IdealCertificate {
                ideal_top: p,
                ideal_size: ideal.poset.len(),
                spm,
                special_matching,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pircon = certificates.iter().all(|c| c.spm.is_some());
    let zircon = with_zircon.then(|| {
        certificates
            .iter()
            .all(|c| matches!(c.special_matching, Some(Some(_))))
    });
    Ok(Classification {
        pircon,
        zircon,
        certificates,
    })
}

pub fn classify(poset: &Poset) -> Result<Classification> {
    classify_with(poset, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(k: usize) -> Vec<String> {
        (0..k).map(|i| i.to_string()).collect()
    }

    /// {a, b, 1̂} with a, b both covered by 1̂.
    fn two_coatoms() -> Poset {
        Poset::new(names(3), &[(0, 2), (1, 2)]).unwrap()
    }

    /// B_2 = {∅, a, b, ab} as 0, 1, 2, 3.
    fn boolean_square() -> Poset {
        Poset::new(names(4), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn special_matchings() {
        let c2 = Poset::chain(2);
        let swap = MatchingMap(vec![1, 0]);
        assert!(check_special_matching(&c2, &swap).unwrap().valid);
        let id = check_special_matching(&c2, &MatchingMap::identity(2)).unwrap();
        assert_eq!(id.violation, Some(Violation::FixedPointPresent));

        let b2 = boolean_square();
        let m = MatchingMap(vec![1, 0, 3, 2]);
        assert!(check_special_matching(&b2, &m).unwrap().valid);
        assert_eq!(
            check_special_matching(&b2, &MatchingMap(vec![1, 0])),
            Err(Error::SizeMismatch {
                expected: 4,
                found: 2
            })
        );
    }

    #[test]
    fn spm_verdicts() {
        let c3 = Poset::chain(3);
        let m = MatchingMap(vec![0, 2, 1]);
        assert!(check_spm(&c3, &m).unwrap().valid);
        let id = check_spm(&c3, &MatchingMap::identity(3)).unwrap();
        assert_eq!(id.violation, Some(Violation::TopNotMatchedDown));

        let p = two_coatoms();
        let bad = check_spm(&p, &MatchingMap(vec![2, 1, 0])).unwrap();
        assert!(!bad.valid);
        assert_eq!(bad.violation, Some(Violation::SpecialConditionFail));
        assert_eq!(bad.witness, Some((1, 2)));

        let not_inv = check_spm(&c3, &MatchingMap(vec![1, 2, 1])).unwrap();
        assert_eq!(not_inv.violation, Some(Violation::NotInvolution));
        let far = check_spm(&c3, &MatchingMap(vec![2, 1, 0])).unwrap();
        assert_eq!(far.violation, Some(Violation::TopNotMatchedDown));
        assert_eq!(
            check_spm(&Poset::antichain(2), &MatchingMap(vec![0, 1])),
            Err(Error::MissingTop)
        );
    }

    #[test]
    fn not_adjacent_is_reported() {
        // 0 < 1 < 2 < 3; M swaps 2,3 and sends 0 <-> ... 0 and 1 fixed is fine,
        // pair 0 with 2 is not a cover.
        let c4 = Poset::chain(4);
        let v = check_spm(&c4, &MatchingMap(vec![0, 1, 3, 2])).unwrap();
        assert!(v.valid);
        let m = MatchingMap(vec![2, 1, 0, 3]);
        // top 3 is fixed, so the top check fires first
        assert_eq!(
            check_spm(&c4, &m).unwrap().violation,
            Some(Violation::TopNotMatchedDown)
        );
        let v = check_special_matching(&c4, &MatchingMap(vec![2, 3, 0, 1])).unwrap();
        assert_eq!(v.violation, Some(Violation::NotAdjacent));
    }

    #[test]
    fn lifting_holds_on_small_spms() {
        let c2 = Poset::chain(2);
        assert!(check_lifting(&c2, &MatchingMap(vec![1, 0])).unwrap().holds);
        let c3 = Poset::chain(3);
        let v = check_lifting(&c3, &MatchingMap(vec![0, 2, 1])).unwrap();
        assert!(v.holds);
        assert_eq!(v.pairs_checked, 2);
        assert!(matches!(
            check_lifting(&c3, &MatchingMap::identity(3)),
            Err(Error::NotAnSpm(_))
        ));
    }

    #[test]
    fn search_finds_or_refutes() {
        assert_eq!(
            search_spm(&Poset::chain(2)).unwrap(),
            Some(MatchingMap(vec![1, 0]))
        );
        assert_eq!(search_spm(&two_coatoms()).unwrap(), None);
        assert_eq!(search_spm(&Poset::chain(1)).unwrap(), None);
        let b2 = boolean_square();
        let m = search_special_matching(&b2).unwrap().unwrap();
        assert!(check_special_matching(&b2, &m).unwrap().valid);
    }

    /// Brute force over every self-map, used as an independent oracle.
    fn brute_force_spms(p: &Poset) -> Vec<MatchingMap> {
        let n = p.len();
        let mut out = Vec::new();
        let total = n.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let image: Vec<usize> = (0..n)
                .map(|_| {
                    let d = c % n;
                    c /= n;
                    d
                })
                .collect();
            let m = MatchingMap(image);
            if check_spm(p, &m).unwrap().valid {
                out.push(m);
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    #[test]
    fn enumeration_agrees_with_brute_force() {
        let fixtures = [
            Poset::chain(4),
            two_coatoms(),
            boolean_square(),
            Poset::new(names(5), &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (1, 4)]).unwrap(),
            Poset::new(names(5), &[(0, 2), (1, 2), (1, 3), (2, 4), (3, 4)]).unwrap(),
        ];
        for p in &fixtures {
            let mut found = all_spms(p).unwrap();
            found.sort_by(|a, b| a.0.cmp(&b.0));
            assert_eq!(found, brute_force_spms(p), "poset {:?}", p.covers());
        }
    }

    #[test]
    fn classification() {
        let c = classify(&Poset::chain(5)).unwrap();
        assert!(c.pircon);
        // the ideal {0 < 1 < 2} has odd size, so no fixed-point-free matching
        assert_eq!(c.zircon, Some(false));
        assert_eq!(c.certificates.len(), 4);
        assert_eq!(classify(&Poset::chain(2)).unwrap().zircon, Some(true));

        let c = classify(&two_coatoms()).unwrap();
        assert!(!c.pircon);
        assert_eq!(c.zircon, Some(false));

        let json = classify(&Poset::chain(2))
            .unwrap()
            .certificates_json(&Poset::chain(2))
            .unwrap();
        assert_eq!(
            serde_json::to_string(&json).unwrap(),
            r#"[{"ideal_top":"1","matching":[["0","1"],["1","0"]]}]"#
        );
    }

    #[test]
    fn verdict_json_uses_names() {
        let p = two_coatoms();
        let v = check_spm(&p, &MatchingMap(vec![2, 1, 0])).unwrap();
        assert_eq!(
            serde_json::to_string(&v.to_json(&p)).unwrap(),
            r#"{"valid":false,"violation":"SpecialConditionFail","witness":["1","2"]}"#
        );
        let pairs = MatchingMap(vec![2, 1, 0]).to_named_pairs(&p);
        assert_eq!(
            MatchingMap::from_named_pairs(&p, &pairs).unwrap(),
            MatchingMap(vec![2, 1, 0])
        );
    }
}
