//! Edge labellings, increasing/decreasing chains and exhaustive EL checks.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labels::{family_covers, EdgeLabel, LabelVariant};
use crate::poset::Poset;
use crate::signed::{family_poset, stats, Family, OrderDirection, SignedPermutation};

/// Direction in which labels are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum LabelOrder {
    #[default]
    Lex,
    ReversedLex,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeLabelling {
    labels: BTreeMap<(usize, usize), EdgeLabel>,
    order: LabelOrder,
}

impl EdgeLabelling {
    pub fn new(order: LabelOrder) -> Self {
        EdgeLabelling {
            labels: BTreeMap::new(),
            order,
        }
    }

    pub fn from_pairs(order: LabelOrder, pairs: impl IntoIterator<Item = ((usize, usize), EdgeLabel)>) -> Self {
        EdgeLabelling {
            labels: pairs.into_iter().collect(),
            order,
        }
    }

    pub fn insert(&mut self, lower: usize, upper: usize, label: EdgeLabel) {
        self.labels.insert((lower, upper), label);
    }

    pub fn get(&self, lower: usize, upper: usize) -> Option<EdgeLabel> {
        self.labels.get(&(lower, upper)).copied()
    }

    pub fn order(&self) -> LabelOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn with_order(mut self, order: LabelOrder) -> Self {
        self.order = order;
        self
    }

    pub fn compare(&self, a: &EdgeLabel, b: &EdgeLabel) -> Ordering {
        match self.order {
            LabelOrder::Lex => a.cmp(b),
            LabelOrder::ReversedLex => b.cmp(a),
        }
    }

    /// Lexicographic comparison of label sequences; a proper prefix is smaller.
    pub fn compare_sequences(&self, a: &[EdgeLabel], b: &[EdgeLabel]) -> Ordering {
        for (x, y) in a.iter().zip(b) {
            match self.compare(x, y) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        a.len().cmp(&b.len())
    }

    pub fn sequence(&self, chain: &[usize]) -> Result<Vec<EdgeLabel>> {
        chain
            .windows(2)
            .map(|w| self.get(w[0], w[1]).ok_or(Error::MissingLabel(w[0], w[1])))
            .collect()
    }

    /// Every cover of `poset` carries a label.
    pub fn is_total_on(&self, poset: &Poset) -> bool {
        poset.covers().into_iter().all(|(a, b)| self.labels.contains_key(&(a, b)))
    }
}

/// Candidate labelling of the Bruhat-ordered family poset.
pub fn candidate_labelling(
    elements: &[crate::signed::FullPermutation],
    poset: &Poset,
    variant: LabelVariant,
    order: LabelOrder,
) -> Result<EdgeLabelling> {
    let records = family_covers(elements, poset, variant)?;
    let mut labelling = EdgeLabelling::new(order);
    for r in records {
        let label = r.label.ok_or(Error::MissingLabel(r.lower, r.upper))?;
        labelling.insert(r.lower, r.upper, label);
    }
    Ok(labelling)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainClass {
    /// Weakly increasing labels.
    pub increasing: bool,
    /// Strictly decreasing labels.
    pub decreasing: bool,
    pub weakly_decreasing: bool,
}

pub fn classify_chain(labelling: &EdgeLabelling, chain: &[usize]) -> Result<ChainClass> {
    let seq = labelling.sequence(chain)?;
    Ok(classify_sequence(labelling, &seq))
}

fn classify_sequence(labelling: &EdgeLabelling, seq: &[EdgeLabel]) -> ChainClass {
    let steps: Vec<Ordering> = seq.windows(2).map(|w| labelling.compare(&w[0], &w[1])).collect();
    ChainClass {
        increasing: steps.iter().all(|&o| o != Ordering::Greater),
        decreasing: steps.iter().all(|&o| o == Ordering::Greater),
        weakly_decreasing: steps.iter().all(|&o| o != Ordering::Less),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalReport {
    pub x: usize,
    pub y: usize,
    pub chain_count: usize,
    pub increasing_chain_count: usize,
    pub increasing_is_lex_minimal: bool,
    pub decreasing_chain_count: usize,
    pub graded: bool,
}

impl IntervalReport {
    pub fn el_pass(&self) -> bool {
        self.increasing_chain_count == 1 && self.increasing_is_lex_minimal
    }

    fn failure_reason(&self) -> Option<String> {
        if !self.graded {
            Some("interval is not graded".into())
        } else if self.increasing_chain_count != 1 {
            Some(format!("{} increasing chains", self.increasing_chain_count))
        } else if !self.increasing_is_lex_minimal {
            Some("increasing chain is not lex-minimal".into())
        } else {
            None
        }
    }
}

struct LabelledChains {
    chains: Vec<Vec<usize>>,
    sequences: Vec<Vec<EdgeLabel>>,
}

fn labelled_chains(poset: &Poset, labelling: &EdgeLabelling, x: usize, y: usize) -> Result<LabelledChains> {
    let chains = poset.chains_between(x, y)?;
    let sequences = chains
        .iter()
        .map(|c| labelling.sequence(c))
        .collect::<Result<Vec<_>>>()?;
    Ok(LabelledChains { chains, sequences })
}

fn interval_report(labelling: &EdgeLabelling, x: usize, y: usize, lc: &LabelledChains) -> IntervalReport {
    let classes: Vec<ChainClass> = lc
        .sequences
        .iter()
        .map(|s| classify_sequence(labelling, s))
        .collect();
    let increasing: Vec<usize> = (0..classes.len()).filter(|&k| classes[k].increasing).collect();
    let increasing_is_lex_minimal = match increasing[..] {
        [k] => lc
            .sequences
            .iter()
            .all(|s| labelling.compare_sequences(&lc.sequences[k], s) != Ordering::Greater),
        _ => false,
    };
    let lengths = lc.chains.iter().map(Vec::len);
    let graded = lengths.clone().min() == lengths.max();
    IntervalReport {
        x,
        y,
        chain_count: lc.chains.len(),
        increasing_chain_count: increasing.len(),
        increasing_is_lex_minimal,
        decreasing_chain_count: classes.iter().filter(|c| c.decreasing).count(),
        graded,
    }
}

pub fn verify_el_interval(poset: &Poset, labelling: &EdgeLabelling, x: usize, y: usize) -> Result<IntervalReport> {
    if !poset.lt(x, y) {
        return Err(Error::NotComparable(x, y));
    }
    let lc = labelled_chains(poset, labelling, x, y)?;
    Ok(interval_report(labelling, x, y, &lc))
}

/// One chain of a counterexample, by element names and labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCertificate {
    pub elements: Vec<String>,
    pub labels: Vec<[i32; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElFailure {
    pub x: String,
    pub y: String,
    pub reason: String,
    pub chains: Vec<ChainCertificate>,
}

/// `{intervals_checked, failures: [{x, y, reason, chains}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElReport {
    pub intervals_checked: usize,
    pub failures: Vec<ElFailure>,
}

impl ElReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The failing interval with the shortest chains (then fewest chains);
    /// ties keep the earliest in endpoint order.
    pub fn minimal_counterexample(&self) -> Option<&ElFailure> {
        self.failures.iter().min_by_key(|f| {
            let length = f.chains.iter().map(|c| c.elements.len()).max().unwrap_or(0);
            (length, f.chains.len())
        })
    }
}

fn certificate(poset: &Poset, lc: &LabelledChains) -> Vec<ChainCertificate> {
    lc.chains
        .iter()
        .zip(&lc.sequences)
        .map(|(c, s)| ChainCertificate {
            elements: c.iter().map(|&e| poset.name(e).to_string()).collect(),
            labels: s.iter().map(|l| [l.i, l.j]).collect(),
        })
        .collect()
}

/// Exhaustive EL check over every pair `x < y`; the poset must be bounded
/// and graded.
pub fn verify_el_poset(poset: &Poset, labelling: &EdgeLabelling) -> Result<ElReport> {
    if !poset.is_bounded() {
        return Err(Error::NotBounded);
    }
    if !poset.is_graded() {
        return Err(Error::NotGraded);
    }
    if let Some((a, b)) = poset
        .covers()
        .into_iter()
        .find(|&(a, b)| labelling.get(a, b).is_none())
    {
        return Err(Error::MissingLabel(a, b));
    }
    let pairs: Vec<(usize, usize)> = (0..poset.len())
        .flat_map(|x| poset.strictly_above(x).ones().map(move |y| (x, y)))
        .collect();
    let failures = pairs
        .par_iter()
        .map(|&(x, y)| -> Result<Option<ElFailure>> {
            let lc = labelled_chains(poset, labelling, x, y)?;
            let report = interval_report(labelling, x, y, &lc);
            Ok(report.failure_reason().map(|reason| ElFailure {
                x: poset.name(x).to_string(),
                y: poset.name(y).to_string(),
                reason,
                chains: certificate(poset, &lc),
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(ElReport {
        intervals_checked: pairs.len(),
        failures,
    })
}

/// The unique strictly decreasing chain from `x` to `y`.
pub fn decreasing_chain(poset: &Poset, labelling: &EdgeLabelling, x: usize, y: usize) -> Result<Vec<usize>> {
    let lc = labelled_chains(poset, labelling, x, y)?;
    let mut found: Vec<Vec<usize>> = lc
        .chains
        .into_iter()
        .zip(&lc.sequences)
        .filter(|(_, s)| classify_sequence(labelling, s).decreasing)
        .map(|(c, _)| c)
        .collect();
    if found.len() == 1 {
        Ok(found.pop().expect("one chain"))
    } else {
        Err(Error::NonUniqueDecreasing {
            x,
            y,
            count: found.len(),
        })
    }
}

/// Maximal chains of a bounded poset ordered lexicographically by label
/// sequence (ties by element indices).
pub fn lex_ordered_maximal_chains(poset: &Poset, labelling: &EdgeLabelling) -> Result<Vec<Vec<usize>>> {
    let mut chains: Vec<(Vec<EdgeLabel>, Vec<usize>)> = poset
        .maximal_chains()
        .into_iter()
        .map(|c| Ok((labelling.sequence(&c)?, c)))
        .collect::<Result<_>>()?;
    chains.sort_by(|a, b| labelling.compare_sequences(&a.0, &b.0).then_with(|| a.1.cmp(&b.1)));
    Ok(chains.into_iter().map(|(_, c)| c).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureFailure {
    pub lower: String,
    pub upper: String,
    pub reason: String,
    pub chain: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpfClosureReport {
    pub n: usize,
    pub variant: LabelVariant,
    pub pairs_checked: usize,
    pub failures: Vec<ClosureFailure>,
}

impl FpfClosureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every `σ < τ` among the fixed-point-free signed involutions, the
/// strictly decreasing chain of `[σ, τ]` computed inside all signed
/// involutions (labels compared lexicographically) must be unique and consist
/// of fixed-point-free elements only.
pub fn fpf_closure_check(n: usize, variant: LabelVariant) -> Result<FpfClosureReport> {
    let (elements, poset) = family_poset(Family::SignedInvolutions, n, OrderDirection::Bruhat)?;
    let labelling = candidate_labelling(&elements, &poset, variant, LabelOrder::Lex)?;
    let fpf: Vec<usize> = (0..elements.len())
        .filter(|&x| elements[x].is_fixed_point_free())
        .collect();
    let pairs: Vec<(usize, usize)> = fpf
        .iter()
        .flat_map(|&a| fpf.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| poset.lt(a, b))
        .collect();
    let failures = pairs
        .par_iter()
        .map(|&(a, b)| -> Result<Option<ClosureFailure>> {
            let name = |x: usize| poset.name(x).to_string();
            let fail = |reason: String, chain: &[usize]| ClosureFailure {
                lower: name(a),
                upper: name(b),
                reason,
                chain: chain.iter().map(|&x| name(x)).collect(),
            };
            match decreasing_chain(&poset, &labelling, a, b) {
                Ok(chain) => Ok(chain
                    .iter()
                    .find(|&&x| !elements[x].is_fixed_point_free())
                    .map(|&x| fail(format!("{} has a fixed point", name(x)), &chain))),
                Err(Error::NonUniqueDecreasing { count, .. }) => {
                    Ok(Some(fail(format!("{count} decreasing chains"), &[])))
                }
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(FpfClosureReport {
        n,
        variant,
        pairs_checked: pairs.len(),
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradednessFailure {
    pub lower: String,
    pub upper: String,
    pub chain: Vec<String>,
    pub expected_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradednessReport {
    pub family: Family,
    pub n: usize,
    pub intervals_checked: usize,
    pub failures: Vec<GradednessFailure>,
}

impl GradednessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every maximal chain of every interval `[x, y]` must have length
/// `ρ(y) - ρ(x)`. Checked by enumerating the chains, not through covers.
pub fn rank_gradedness(family: Family, n: usize) -> Result<GradednessReport> {
    if !family.is_signed() {
        return Err(Error::InvalidInput(format!("rank is defined on signed families, not {family}")));
    }
    let (elements, poset) = family_poset(family, n, OrderDirection::Bruhat)?;
    let rho = elements
        .iter()
        .map(|e| {
            let w = SignedPermutation::from_full(e.clone())?;
            stats(&w).rank.ok_or_else(|| Error::InvalidInput(format!("{w} is not an involution")))
        })
        .collect::<Result<Vec<usize>>>()?;
    let pairs: Vec<(usize, usize)> = (0..poset.len())
        .flat_map(|a| (0..poset.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| poset.lt(a, b))
        .collect();
    let failures = pairs
        .par_iter()
        .map(|&(a, b)| -> Result<Option<GradednessFailure>> {
            if rho[b] <= rho[a] {
                return Ok(Some(GradednessFailure {
                    lower: poset.name(a).to_string(),
                    upper: poset.name(b).to_string(),
                    chain: Vec::new(),
                    expected_length: 0,
                }));
            }
            let expected = rho[b] - rho[a];
            let bad = poset.chains_between(a, b)?.into_iter().find(|c| c.len() - 1 != expected);
            Ok(bad.map(|c| GradednessFailure {
                lower: poset.name(a).to_string(),
                upper: poset.name(b).to_string(),
                chain: c.iter().map(|&x| poset.name(x).to_string()).collect(),
                expected_length: expected,
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(GradednessReport {
        family,
        n,
        intervals_checked: pairs.len(),
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverClosureReport {
    pub n: usize,
    pub covers_checked: usize,
    /// Covers of F^B that are not covers of I^B.
    pub failures: Vec<[String; 2]>,
}

impl CoverClosureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Label-free consequence of the closure property: every cover of the
/// fixed-point-free signed involutions is already a cover in all signed
/// involutions, so saturated chains of F^B stay saturated in I^B.
pub fn fpf_cover_closure(n: usize) -> Result<CoverClosureReport> {
    let (all, big) = family_poset(Family::SignedInvolutions, n, OrderDirection::Bruhat)?;
    let (fpf, small) = family_poset(Family::FpfSignedInvolutions, n, OrderDirection::Bruhat)?;
    let host: Vec<usize> = fpf
        .iter()
        .map(|e| all.iter().position(|f| f == e).ok_or(Error::NoCandidate))
        .collect::<Result<Vec<usize>>>()?;
    let covers = small.covers();
    let failures = covers
        .iter()
        .filter(|&&(a, b)| !big.is_cover(host[a], host[b]))
        .map(|&(a, b)| [small.name(a).to_string(), small.name(b).to_string()])
        .collect();
    Ok(CoverClosureReport {
        n,
        covers_checked: covers.len(),
        failures,
    })
}
