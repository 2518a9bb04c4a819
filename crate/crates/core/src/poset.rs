//! Finite posets stored as a Hasse diagram plus a dense strict-order matrix.
//!
//! Elements are indexed `0..len()`. Every enumeration in this module walks
//! indices in ascending order so that downstream reports are reproducible.

use std::collections::VecDeque;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Outcome of comparing two elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `x < y` but `y` does not cover `x`.
    Less,
    /// `x > y` but `x` does not cover `y`.
    Greater,
    Equal,
    Incomparable,
    /// `x` covers `y`.
    Covers,
    /// `x` is covered by `y`.
    CoveredBy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    above: Vec<FixedBitSet>,
    below: Vec<FixedBitSet>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    top: Option<usize>,
    bottom: Option<usize>,
}

/// An induced subposet together with the map from its indices to the host's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subposet {
    pub poset: Poset,
    pub embedding: Vec<usize>,
}

impl Subposet {
    /// Index of a host element inside the subposet, if present.
    pub fn local_index(&self, host: usize) -> Option<usize> {
        self.embedding.binary_search(&host).ok()
    }
}

impl Poset {
    /// Builds a poset from an arbitrary (not necessarily reduced or
    /// transitive) relation. Pairs `(lo, hi)` mean `lo <= hi`; reflexive pairs
    /// are ignored.
    pub fn new(names: Vec<String>, relation: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut succ = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for &(lo, hi) in relation {
            for index in [lo, hi] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, len: n });
                }
            }
            if lo != hi {
                succ[lo].push(hi);
                indegree[hi] += 1;
            }
        }

        // Kahn's algorithm, smallest index first.
        let mut order = Vec::with_capacity(n);
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&x| indegree[x] == 0).collect();
        while let Some(x) = ready.pop_first() {
            order.push(x);
            for &y in &succ[x] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    ready.insert(y);
                }
            }
        }
        if order.len() < n {
            let culprit = (0..n).find(|&x| indegree[x] > 0).unwrap_or(0);
            return Err(Error::CycleDetected(culprit));
        }

        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for &x in order.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            for &y in &succ[x] {
                set.insert(y);
                set.union_with(&above[y]);
            }
            above[x] = set;
        }
        Ok(Self::from_strict_order(names, above))
    }

    /// Builds a poset from a relation given by element pairs of a single-element
    /// name list, e.g. `Poset::chain(3)`.
    pub fn chain(len: usize) -> Self {
        let names = (0..len).map(|i| i.to_string()).collect();
        let pairs: Vec<_> = (1..len).map(|i| (i - 1, i)).collect();
        Self::new(names, &pairs).expect("a chain is acyclic")
    }

    /// A poset on `size` elements whose last element is a top: each pair
    /// `i < j` of the others is related with probability `density` before
    /// taking the transitive closure.
    pub fn random_with_top<R: Rng>(size: usize, density: f64, rng: &mut R) -> Self {
        let mut relation = Vec::new();
        for j in 0..size.saturating_sub(1) {
            for i in 0..j {
                if rng.gen_bool(density) {
                    relation.push((i, j));
                }
            }
            relation.push((j, size - 1));
        }
        Poset::new((0..size).map(|i| i.to_string()).collect(), &relation).expect("relation follows index order")
    }

    pub fn antichain(len: usize) -> Self {
        let names = (0..len).map(|i| i.to_string()).collect();
        Self::new(names, &[]).expect("an antichain is acyclic")
    }

    /// `above[x]` must be the strict up-set of `x` of a partial order.
    pub(crate) fn from_strict_order(names: Vec<String>, above: Vec<FixedBitSet>) -> Self {
        let n = names.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (x, set) in above.iter().enumerate() {
            for y in set.ones() {
                below[y].insert(x);
            }
        }
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for x in 0..n {
            for y in above[x].ones() {
                if above[x].is_disjoint(&below[y]) {
                    up[x].push(y);
                    down[y].push(x);
                }
            }
        }
        for list in &mut down {
            list.sort_unstable();
        }
        let maximal: Vec<usize> = (0..n).filter(|&x| above[x].is_clear()).collect();
        let minimal: Vec<usize> = (0..n).filter(|&x| below[x].is_clear()).collect();
        let top = (maximal.len() == 1).then(|| maximal[0]);
        let bottom = (minimal.len() == 1).then(|| minimal[0]);
        Poset {
            names,
            above,
            below,
            up,
            down,
            top,
            bottom,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                len: self.len(),
            })
        }
    }

    /// Strict order `x < y`.
    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(y)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        x == y || self.above[x].contains(y)
    }

    #[inline]
    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.up[x].binary_search(&y).is_ok()
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    /// Strict up-set of `x`.
    pub fn strictly_above(&self, x: usize) -> &FixedBitSet {
        &self.above[x]
    }

    /// Strict down-set of `x`.
    pub fn strictly_below(&self, x: usize) -> &FixedBitSet {
        &self.below[x]
    }

    pub fn is_minimal(&self, x: usize) -> bool {
        self.below[x].is_clear()
    }

    pub fn is_maximal(&self, x: usize) -> bool {
        self.above[x].is_clear()
    }

    /// All cover pairs `(lo, hi)`, sorted lexicographically.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
            .collect()
    }

    pub fn cover_count(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    pub fn order_query(&self, x: usize, y: usize) -> Result<Comparison> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(if x == y {
            Comparison::Equal
        } else if self.lt(x, y) {
            if self.is_cover(x, y) {
                Comparison::CoveredBy
            } else {
                Comparison::Less
            }
        } else if self.lt(y, x) {
            if self.is_cover(y, x) {
                Comparison::Covers
            } else {
                Comparison::Greater
            }
        } else {
            Comparison::Incomparable
        })
    }

    /// Subposet induced on `keep`, which must be sorted ascending and
    /// duplicate-free.
    pub fn induced(&self, keep: &[usize]) -> Subposet {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        let m = keep.len();
        let names = keep.iter().map(|&x| self.names[x].clone()).collect();
        let above = keep
            .iter()
            .map(|&x| {
                let mut set = FixedBitSet::with_capacity(m);
                for (j, &y) in keep.iter().enumerate() {
                    if self.lt(x, y) {
                        set.insert(j);
                    }
                }
                set
            })
            .collect();
        Subposet {
            poset: Poset::from_strict_order(names, above),
            embedding: keep.to_vec(),
        }
    }

    /// The ideal `{x : x <= p}`; its top is `p`.
    pub fn principal_ideal(&self, p: usize) -> Result<Subposet> {
        self.check_index(p)?;
        let mut keep: Vec<usize> = self.below[p].ones().collect();
        keep.push(p);
        keep.sort_unstable();
        Ok(self.induced(&keep))
    }

    /// The filter `{x : x >= p}`.
    pub fn principal_filter(&self, p: usize) -> Result<Subposet> {
        self.check_index(p)?;
        let mut keep: Vec<usize> = self.above[p].ones().collect();
        keep.push(p);
        keep.sort_unstable();
        Ok(self.induced(&keep))
    }

    pub fn interval(&self, x: usize, y: usize, open: bool) -> Result<Subposet> {
        self.check_index(x)?;
        self.check_index(y)?;
        if !self.leq(x, y) {
            return Err(Error::NotComparable(x, y));
        }
        let keep: Vec<usize> = (0..self.len())
            .filter(|&z| self.leq(x, z) && self.leq(z, y))
            .filter(|&z| !open || (z != x && z != y))
            .collect();
        Ok(self.induced(&keep))
    }

    pub fn dual(&self) -> Poset {
        Poset {
            names: self.names.clone(),
            above: self.below.clone(),
            below: self.above.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            top: self.bottom,
            bottom: self.top,
        }
    }

    /// Removes the top and bottom elements.
    pub fn proper_part(&self) -> Result<Subposet> {
        let (top, bottom) = match (self.top, self.bottom) {
            (Some(t), Some(b)) => (t, b),
            _ => return Err(Error::MissingBound),
        };
        let keep: Vec<usize> = (0..self.len())
            .filter(|&z| z != top && z != bottom)
            .collect();
        Ok(self.induced(&keep))
    }

    /// Subposet induced by the fixed elements of the automorphism `tau`.
    pub fn fixed_subposet(&self, tau: &PosetMap) -> Result<Subposet> {
        if !tau.is_automorphism(self) {
            return Err(Error::NotAutomorphism);
        }
        let keep: Vec<usize> = (0..self.len()).filter(|&x| tau.apply(x) == x).collect();
        Ok(self.induced(&keep))
    }

    /// All saturated chains from `x` to `y`, in lexicographic order of their
    /// element indices.
    pub fn chains_between(&self, x: usize, y: usize) -> Result<Vec<Vec<usize>>> {
        self.check_index(x)?;
        self.check_index(y)?;
        if !self.leq(x, y) {
            return Err(Error::NotComparable(x, y));
        }
        let mut out = Vec::new();
        let mut stack = vec![x];
        self.extend_chains(y, &mut stack, &mut out);
        Ok(out)
    }

    fn extend_chains(&self, target: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *stack.last().expect("nonempty chain");
        if last == target {
            out.push(stack.clone());
            return;
        }
        for &next in &self.up[last] {
            if self.leq(next, target) {
                stack.push(next);
                self.extend_chains(target, stack, out);
                stack.pop();
            }
        }
    }

    /// Maximal chains of the poset, each listed bottom to top.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for start in (0..self.len()).filter(|&x| self.is_minimal(x)) {
            let mut stack = vec![start];
            self.extend_to_maximal(&mut stack, &mut out);
        }
        out
    }

    fn extend_to_maximal(&self, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *stack.last().expect("nonempty chain");
        if self.up[last].is_empty() {
            out.push(stack.clone());
            return;
        }
        for &next in &self.up[last] {
            stack.push(next);
            self.extend_to_maximal(stack, out);
            stack.pop();
        }
    }

    /// Rank function measured from the minimal elements, if every cover raises
    /// it by exactly one. For a bounded poset this is equivalent to every
    /// maximal chain having the same length.
    pub fn rank_function(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let mut rank: Vec<Option<usize>> = vec![None; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&x| self.is_minimal(x)).collect();
        for &x in &queue {
            rank[x] = Some(0);
        }
        while let Some(x) = queue.pop_front() {
            let r = rank[x].expect("queued elements are ranked");
            for &y in &self.up[x] {
                match rank[y] {
                    None => {
                        rank[y] = Some(r + 1);
                        queue.push_back(y);
                    }
                    Some(ry) if ry != r + 1 => return None,
                    Some(_) => {}
                }
            }
        }
        // Every element is reachable from some minimal element.
        let rank: Vec<usize> = rank.into_iter().map(|r| r.expect("ranked")).collect();
        let consistent = (0..n).all(|y| self.down[y].iter().all(|&x| rank[x] + 1 == rank[y]));
        consistent.then_some(rank)
    }

    pub fn is_bounded(&self) -> bool {
        self.top.is_some() && self.bottom.is_some()
    }

    pub fn is_graded(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        if self.is_bounded() {
            return self.rank_function().is_some();
        }
        let chains = self.maximal_chains();
        chains.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn to_json(&self, name: &str) -> PosetJson {
        PosetJson {
            name: name.to_string(),
            elements: self.names.clone(),
            covers: self.covers().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn from_json(doc: &PosetJson) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = doc.covers.iter().map(|c| (c[0], c[1])).collect();
        Poset::new(doc.elements.clone(), &pairs)
    }

    /// Graphviz rendering with covers drawn bottom to top.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
        let _ = writeln!(out, "  rankdir=BT;");
        for (i, n) in self.names.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(n));
        }
        for (lo, hi) in self.covers() {
            let _ = writeln!(out, "  n{lo} -> n{hi};");
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// JSON interchange form: `{"name", "elements", "covers": [[lo, hi], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<[usize; 2]>,
}

/// A self-map of a poset given by its images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PosetMap(pub Vec<usize>);

impl PosetMap {
    pub fn identity(len: usize) -> Self {
        PosetMap((0..len).collect())
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

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.len()];
        self.0.iter().all(|&x| x < seen.len() && !std::mem::replace(&mut seen[x], true))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PosetMap) -> PosetMap {
        PosetMap(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> PosetMap {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        PosetMap(inv)
    }

    /// Multiplicative order of a bijection.
    pub fn order(&self) -> usize {
        let mut power = self.clone();
        let mut k = 1;
        while !power.is_identity() {
            power = self.compose(&power);
            k += 1;
        }
        k
    }

    /// Bijective and cover-preserving in both directions.
    pub fn is_automorphism(&self, poset: &Poset) -> bool {
        if self.len() != poset.len() || !self.is_bijection() {
            return false;
        }
        // A bijection sending covers to covers is a bijection on the (finite)
        // cover set, hence reflects covers as well.
        poset
            .covers()
            .into_iter()
            .all(|(x, y)| poset.is_cover(self.apply(x), self.apply(y)))
    }

    /// Restriction to a subposet that the map sends into itself.
    pub fn restrict(&self, sub: &Subposet) -> Option<PosetMap> {
        sub.embedding
            .iter()
            .map(|&x| sub.local_index(self.apply(x)))
            .collect::<Option<Vec<_>>>()
            .map(PosetMap)
    }
}

/// Every automorphism of a (small) poset, in lexicographic order of images.
pub fn all_automorphisms(poset: &Poset) -> Vec<PosetMap> {
    fn extend(poset: &Poset, image: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<PosetMap>) {
        let x = image.len();
        if x == poset.len() {
            out.push(PosetMap(image.clone()));
            return;
        }
        for candidate in 0..poset.len() {
            if used[candidate]
                || poset.up[x].len() != poset.up[candidate].len()
                || poset.down[x].len() != poset.down[candidate].len()
            {
                continue;
            }
            let consistent = (0..x).all(|w| {
                poset.is_cover(w, x) == poset.is_cover(image[w], candidate)
                    && poset.is_cover(x, w) == poset.is_cover(candidate, image[w])
            });
            if consistent {
                used[candidate] = true;
                image.push(candidate);
                extend(poset, image, used, out);
                image.pop();
                used[candidate] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(poset, &mut Vec::new(), &mut vec![false; poset.len()], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(k: usize) -> Vec<String> {
        (0..k).map(|i| i.to_string()).collect()
    }

    fn diamond() -> Poset {
        // 0 < {1, 2} < 3
        Poset::new(names(4), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn redundant_pair_is_reduced_away() {
        let p = Poset::new(names(3), &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
        assert!(p.lt(0, 2));
        assert_eq!(p.top(), Some(2));
        assert_eq!(p.bottom(), Some(0));
    }

    #[test]
    fn singleton_is_its_own_top_and_bottom() {
        let p = Poset::new(names(1), &[]).unwrap();
        assert_eq!(p.top(), Some(0));
        assert_eq!(p.bottom(), Some(0));
    }

    #[test]
    fn cycles_and_bad_indices_are_rejected() {
        assert!(matches!(
            Poset::new(names(2), &[(0, 1), (1, 0)]),
            Err(Error::CycleDetected(_))
        ));
        assert_eq!(
            Poset::new(names(2), &[(0, 5)]),
            Err(Error::IndexOutOfRange { index: 5, len: 2 })
        );
    }

    #[test]
    fn order_queries() {
        let c = Poset::chain(3);
        assert_eq!(c.order_query(0, 2).unwrap(), Comparison::Less);
        assert_eq!(c.order_query(0, 1).unwrap(), Comparison::CoveredBy);
        assert_eq!(c.order_query(2, 1).unwrap(), Comparison::Covers);
        assert_eq!(c.order_query(2, 0).unwrap(), Comparison::Greater);
        assert_eq!(c.order_query(1, 1).unwrap(), Comparison::Equal);
        assert_eq!(diamond().order_query(1, 2).unwrap(), Comparison::Incomparable);
    }

    #[test]
    fn ideals_and_intervals() {
        let c = Poset::chain(3);
        let ideal = c.principal_ideal(1).unwrap();
        assert_eq!(ideal.poset.len(), 2);
        assert_eq!(ideal.poset.top(), Some(1));
        assert_eq!(c.principal_ideal(0).unwrap().poset.len(), 1);

        let closed = c.interval(0, 2, false).unwrap();
        assert_eq!(closed.poset.len(), 3);
        let open = c.interval(0, 2, true).unwrap();
        assert_eq!(open.embedding, vec![1]);
        assert_eq!(
            diamond().interval(1, 2, false),
            Err(Error::NotComparable(1, 2))
        );
    }

    #[test]
    fn dual_swaps_bounds() {
        let c = Poset::chain(2);
        let d = c.dual();
        assert_eq!(d.top(), Some(0));
        assert_eq!(d.bottom(), Some(1));
        assert_eq!(d.dual(), c);
        assert_eq!(Poset::chain(1).dual(), Poset::chain(1));
    }

    #[test]
    fn proper_parts() {
        assert_eq!(Poset::chain(3).proper_part().unwrap().poset.len(), 1);
        let empty = Poset::chain(2).proper_part().unwrap();
        assert!(empty.poset.is_empty());
        assert_eq!(empty.poset.top(), None);
        assert_eq!(
            Poset::antichain(2).proper_part(),
            Err(Error::MissingBound)
        );
    }

    #[test]
    fn fixed_subposet_of_boolean_square() {
        let b2 = diamond();
        let swap = PosetMap(vec![0, 2, 1, 3]);
        let fixed = b2.fixed_subposet(&swap).unwrap();
        assert_eq!(fixed.embedding, vec![0, 3]);
        assert_eq!(fixed.poset.covers(), vec![(0, 1)]);

        let id = PosetMap::identity(4);
        assert_eq!(b2.fixed_subposet(&id).unwrap().poset, b2);
        let bogus = PosetMap(vec![1, 0, 2, 3]);
        assert_eq!(b2.fixed_subposet(&bogus), Err(Error::NotAutomorphism));
    }

    #[test]
    fn saturated_chains() {
        assert_eq!(Poset::chain(3).chains_between(0, 2).unwrap(), vec![vec![0, 1, 2]]);
        assert_eq!(
            diamond().chains_between(0, 3).unwrap(),
            vec![vec![0, 1, 3], vec![0, 2, 3]]
        );
        assert_eq!(diamond().chains_between(2, 2).unwrap(), vec![vec![2]]);
    }

    #[test]
    fn automorphisms_of_diamond() {
        let autos = all_automorphisms(&diamond());
        assert_eq!(autos, vec![PosetMap::identity(4), PosetMap(vec![0, 2, 1, 3])]);
        assert_eq!(autos[1].order(), 2);
    }

    #[test]
    fn json_and_dot() {
        let d = diamond();
        let doc = d.to_json("diamond");
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(
            text,
            r#"{"name":"diamond","elements":["0","1","2","3"],"covers":[[0,1],[0,2],[1,3],[2,3]]}"#
        );
        let back = Poset::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, d);
        let dot = d.to_dot("diamond");
        assert!(dot.contains("rankdir=BT"));
        assert!(dot.contains("n0 -> n1;"));
    }

    #[test]
    fn gradedness() {
        assert!(diamond().is_graded());
        // 0 < 1 < 3 and 0 < 3 via 2? build 0<1<2<3 and 0<4<3: not graded
        let p = Poset::new(names(5), &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 3)]).unwrap();
        assert!(!p.is_graded());
        assert!(Poset::antichain(0).is_graded());
    }
}
