//! Induced SPMs on fixed subposets.
//!
//! Given an SPM `M` on a finite poset with a top and an automorphism `τ` of
//! order `K`, the conjugates `M_i = τ^i ∘ M ∘ τ^{-i}` are SPMs as well. The
//! orbit `C(p)` of `p` under all `M_i` has a unique minimum and maximum, and
//! on the fixed elements of `τ` the map
//!
//! ```text
//! M°(p) = max C(p)   if p = min C(p)
//!         min C(p)   otherwise (then p = max C(p))
//! ```
//!
//! is an SPM of the fixed subposet.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::{check_spm, Classification, MatchingMap, MatchingVerdict};
use crate::poset::{Poset, PosetMap, Subposet};

/// `M_1, ..., M_K` with `M_K = M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugatedFamily {
    pub order: usize,
    pub matchings: Vec<MatchingMap>,
}

impl ConjugatedFamily {
    /// `M_i` for `1 <= i <= K`.
    pub fn get(&self, i: usize) -> &MatchingMap {
        &self.matchings[i - 1]
    }
}

fn require_spm(poset: &Poset, m: &MatchingMap) -> Result<()> {
    let verdict = check_spm(poset, m)?;
    if verdict.valid {
        Ok(())
    } else {
        Err(Error::NotAnSpm(format!(
            "{:?} at {:?}",
            verdict.violation, verdict.witness
        )))
    }
}

pub fn conjugated_spms(poset: &Poset, m: &MatchingMap, tau: &PosetMap) -> Result<ConjugatedFamily> {
    require_spm(poset, m)?;
    if !tau.is_automorphism(poset) {
        return Err(Error::NotAutomorphism);
    }
    let order = tau.order();
    let mut matchings = Vec::with_capacity(order);
    let mut power = tau.clone();
    for _ in 0..order {
        let inverse = power.inverse();
        let conjugate = MatchingMap(
            (0..poset.len())
                .map(|x| power.apply(m.apply(inverse.apply(x))))
                .collect(),
        );
        debug_assert!((0..poset.len())
            .all(|x| power.apply(m.apply(x)) == conjugate.apply(power.apply(x))));
        require_spm(poset, &conjugate)?;
        matchings.push(conjugate);
        power = tau.compose(&power);
    }
    Ok(ConjugatedFamily { order, matchings })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRecord {
    /// Sorted ascending.
    pub members: Vec<usize>,
    pub minimum: usize,
    pub maximum: usize,
}

impl OrbitRecord {
    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

/// Closure of `{p}` under the family, with its unique extremes.
pub fn orbit(poset: &Poset, family: &ConjugatedFamily, p: usize) -> Result<OrbitRecord> {
    poset.check_index(p)?;
    let mut seen = vec![false; poset.len()];
    let mut stack = vec![p];
    seen[p] = true;
    let mut members = Vec::new();
    while let Some(x) = stack.pop() {
        members.push(x);
        for m in &family.matchings {
            let y = m.apply(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    members.sort_unstable();
    let minimal: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&a| members.iter().all(|&b| !poset.lt(b, a)))
        .collect();
    let maximal: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&a| members.iter().all(|&b| !poset.lt(a, b)))
        .collect();
    let [minimum] = minimal[..] else {
        return Err(Error::ExtremeNotUnique(p, "minimum"));
    };
    let [maximum] = maximal[..] else {
        return Err(Error::ExtremeNotUnique(p, "maximum"));
    };
    Ok(OrbitRecord {
        members,
        minimum,
        maximum,
    })
}

/// The orbit partition of the whole poset, plus each element's orbit index.
pub fn orbit_partition(poset: &Poset, family: &ConjugatedFamily) -> Result<(Vec<OrbitRecord>, Vec<usize>)> {
    let mut orbit_of = vec![usize::MAX; poset.len()];
    let mut orbits = Vec::new();
    for p in 0..poset.len() {
        if orbit_of[p] != usize::MAX {
            continue;
        }
        let record = orbit(poset, family, p)?;
        for &x in &record.members {
            orbit_of[x] = orbits.len();
        }
        orbits.push(record);
    }
    Ok((orbits, orbit_of))
}

/// The induced SPM on the fixed subposet, with the verdict of `check_spm`
/// on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSpm {
    pub fixed: Subposet,
    pub matching: MatchingMap,
    pub verdict: MatchingVerdict,
    pub claims_checked: usize,
}

fn violation(claim: u8, detail: String) -> Error {
    Error::ClaimViolation { claim, detail }
}

/// Builds `M°` on the fixed elements of `tau`. Claim 1 (extremes of a fixed
/// orbit are fixed) and the min/max dichotomy are always checked since `M°`
/// is undefined without them; claims 2 and 3 only when `check_claims` is set.
pub fn induced_spm(poset: &Poset, m: &MatchingMap, tau: &PosetMap, check_claims: bool) -> Result<InducedSpm> {
    let family = conjugated_spms(poset, m, tau)?;
    let fixed = poset.fixed_subposet(tau)?;
    let (orbits, orbit_of) = orbit_partition(poset, &family)?;
    let mut claims_checked = 0;

    let mut image = Vec::with_capacity(fixed.embedding.len());
    for &p in &fixed.embedding {
        let record = &orbits[orbit_of[p]];
        let (alpha, beta) = (record.minimum, record.maximum);
        if tau.apply(alpha) != alpha || tau.apply(beta) != beta {
            return Err(violation(
                1,
                format!("orbit of fixed {} has an unfixed extreme", poset.name(p)),
            ));
        }
        if p != alpha && p != beta {
            return Err(violation(
                0,
                format!("fixed {} is neither end of its orbit", poset.name(p)),
            ));
        }
        claims_checked += 1;
        let target = if p == alpha { beta } else { alpha };
        image.push(fixed.local_index(target).expect("claim 1 keeps extremes fixed"));
    }

    if check_claims {
        for x in &orbits {
            for y in &orbits {
                if poset.leq(x.minimum, y.maximum)
                    && !(poset.leq(x.minimum, y.minimum) && poset.leq(x.maximum, y.maximum))
                {
                    return Err(violation(
                        2,
                        format!(
                            "orbits of {} and {} are not ordered by their extremes",
                            poset.name(x.minimum),
                            poset.name(y.minimum)
                        ),
                    ));
                }
                claims_checked += 1;
            }
        }
        for (local, &p) in fixed.embedding.iter().enumerate() {
            let other = image[local];
            let (lo, hi) = if fixed.poset.leq(local, other) {
                (local, other)
            } else {
                (other, local)
            };
            if lo != hi && !fixed.poset.is_cover(lo, hi) {
                return Err(violation(
                    3,
                    format!("orbit extremes of {} are not adjacent in the fixed subposet", poset.name(p)),
                ));
            }
            claims_checked += 1;
        }
    }

    let matching = MatchingMap(image);
    let verdict = check_spm(&fixed.poset, &matching)?;
    Ok(InducedSpm {
        fixed,
        matching,
        verdict,
        claims_checked,
    })
}

/// One row of the fixed-pircon report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedIdealReport {
    pub ideal_top: String,
    pub fixed_count: usize,
    pub spm_found: bool,
    pub claims_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPirconReport {
    pub pircon: bool,
    pub ideals: Vec<FixedIdealReport>,
}

/// For every non-minimal element `p` of the fixed subposet, restricts `tau`
/// to the ideal below `p` and builds the induced SPM there from the stored
/// certificate of `classification`.
pub fn fixed_pircon_verify(
    poset: &Poset,
    tau: &PosetMap,
    classification: &Classification,
    check_claims: bool,
) -> Result<FixedPirconReport> {
    if !classification.pircon {
        return Err(Error::InvalidInput("host poset is not a pircon".into()));
    }
    let fixed = poset.fixed_subposet(tau)?;
    let tops: Vec<usize> = (0..fixed.poset.len())
        .filter(|&q| !fixed.poset.is_minimal(q))
        .map(|q| fixed.embedding[q])
        .collect();
    let ideals = tops
        .par_iter()
        .map(|&p| -> Result<FixedIdealReport> {
            let cert = classification
                .certificates
                .iter()
                .find(|c| c.ideal_top == p)
                .ok_or_else(|| Error::InvalidInput(format!("no certificate for {}", poset.name(p))))?;
            let spm = cert.spm.as_ref().expect("pircon certificates carry an SPM");
            let ideal = poset.principal_ideal(p)?;
            let restricted = tau.restrict(&ideal).ok_or(Error::NotAutomorphism)?;
            let induced = induced_spm(&ideal.poset, spm, &restricted, check_claims)?;
            // The fixed part of the ideal is the ideal of the fixed part.
            let host_fixed: Vec<usize> = induced
                .fixed
                .embedding
                .iter()
                .map(|&x| ideal.embedding[x])
                .collect();
            let expected: Vec<usize> = fixed
                .embedding
                .iter()
                .copied()
                .filter(|&x| poset.leq(x, p))
                .collect();
            debug_assert_eq!(host_fixed, expected);
            Ok(FixedIdealReport {
                ideal_top: poset.name(p).to_string(),
                fixed_count: induced.fixed.poset.len(),
                spm_found: induced.verdict.valid && host_fixed == expected,
                claims_checked: induced.claims_checked,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FixedPirconReport {
        pircon: ideals.iter().all(|r| r.spm_found),
        ideals,
    })
}
