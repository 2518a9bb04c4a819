//! Permutations of `[±n] = {-n, ..., -1, 1, ..., n}`, signed permutations,
//! involution families and their Bruhat order via dominance counts.
//!
//! Positions of `[±n]` are ordered `-n < ... < -1 < 1 < ... < n`; there is
//! no zero. Internally a value `v` is stored by its slot `0..2n` in that
//! order, which keeps every comparison a plain integer comparison.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{Poset, PosetMap};

/// Slot of `v ∈ [±n]` in the order `-n, ..., -1, 1, ..., n`.
#[inline]
pub fn slot(n: usize, v: i32) -> usize {
    debug_assert!(v != 0 && v.unsigned_abs() as usize <= n);
    if v < 0 {
        (v + n as i32) as usize
    } else {
        (v + n as i32 - 1) as usize
    }
}

/// Inverse of [`slot`].
#[inline]
pub fn value_at(n: usize, s: usize) -> i32 {
    if s < n {
        s as i32 - n as i32
    } else {
        s as i32 - n as i32 + 1
    }
}

/// The positions `-n, ..., -1, 1, ..., n` in order.
pub fn positions(n: usize) -> impl Iterator<Item = i32> {
    (0..2 * n).map(move |s| value_at(n, s))
}

/// A permutation of `[±n]`, i.e. an element of `S_2n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FullPermutation {
    n: usize,
    /// `line[slot(i)] = slot(σ(i))`
    line: Vec<u8>,
}

impl FullPermutation {
    /// Builds from the images `σ(-n), ..., σ(-1), σ(1), ..., σ(n)`.
    pub fn from_line(n: usize, images: &[i32]) -> Result<Self> {
        if n == 0 || images.len() != 2 * n {
            return Err(Error::InvalidPermutation(format!(
                "expected {} images for n = {n}, got {}",
                2 * n,
                images.len()
            )));
        }
        let mut seen = vec![false; 2 * n];
        let mut line = Vec::with_capacity(2 * n);
        for &v in images {
            if v == 0 || v.unsigned_abs() as usize > n {
                return Err(Error::InvalidPermutation(format!("{v} is not in [±{n}]")));
            }
            let s = slot(n, v);
            if std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidPermutation(format!("{v} appears twice")));
            }
            line.push(s as u8);
        }
        Ok(FullPermutation { n, line })
    }

    pub fn identity(n: usize) -> Self {
        FullPermutation {
            n,
            line: (0..2 * n as u8).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `σ(i)` for `i ∈ [±n]`.
    #[inline]
    pub fn value(&self, i: i32) -> i32 {
        value_at(self.n, self.line[slot(self.n, i)] as usize)
    }

    /// Images of `-n, ..., n` in order.
    pub fn images(&self) -> Vec<i32> {
        self.line.iter().map(|&s| value_at(self.n, s as usize)).collect()
    }


    pub fn is_involution(&self) -> bool {
        self.line
            .iter()
            .enumerate()
            .all(|(s, &t)| self.line[t as usize] as usize == s)
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.line.iter().enumerate().all(|(s, &t)| s != t as usize)
    }

    /// `σ(-i) = -σ(i)` for all `i`.
    pub fn is_signed(&self) -> bool {
        let last = 2 * self.n - 1;
        self.line
            .iter()
            .enumerate()
            .all(|(s, &t)| self.line[last - s] as usize == last - t as usize)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &FullPermutation) -> FullPermutation {
        assert_eq!(self.n, other.n);
        FullPermutation {
            n: self.n,
            line: other.line.iter().map(|&s| self.line[s as usize]).collect(),
        }
    }

    /// `w0 σ w0` where `w0(i) = -i`.
    pub fn conjugate_by_w0(&self) -> FullPermutation {
        let last = 2 * self.n - 1;
        FullPermutation {
            n: self.n,
            line: (0..2 * self.n)
                .map(|s| (last - self.line[last - s] as usize) as u8)
                .collect(),
        }
    }

    /// `σ[i, j] = |{k ∈ [±n] : k <= i, σ(k) >= j}|`.
    pub fn dominance_count(&self, i: i32, j: i32) -> usize {
        let (si, sj) = (slot(self.n, i), slot(self.n, j));
        self.line[..=si].iter().filter(|&&t| t as usize >= sj).count()
    }

    /// Full `2n × 2n` dominance table, row-major by slot of `i`.
    pub fn dominance_table(&self) -> DominanceTable {
        let m = 2 * self.n;
        let mut counts = vec![0u8; m * m];
        let mut column = vec![0u8; m];
        for (si, &t) in self.line.iter().enumerate() {
            // column[sj] = |{k <= i : σ(k) >= j}|
            for c in column.iter_mut().take(t as usize + 1) {
                *c += 1;
            }
            counts[si * m..(si + 1) * m].copy_from_slice(&column);
        }
        DominanceTable { n: self.n, counts }
    }

    /// Bruhat order by dominance comparison over all `(i, j) ∈ [±n]²`.
    pub fn bruhat_leq(&self, other: &FullPermutation) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(self.dominance_table().leq(&other.dominance_table()))
    }

    /// Inversions over `[±n]²`, the length in `S_2n`.
    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for a in 0..self.line.len() {
            for b in a + 1..self.line.len() {
                if self.line[a] > self.line[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Comma-separated images of `-n, ..., n`.
    pub fn line_string(&self) -> String {
        join(&self.images())
    }
}

impl fmt::Display for FullPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.line_string())
    }
}

fn join(values: &[i32]) -> String {
    values
        .iter()
        .map(i32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_values(text: &str) -> Result<Vec<i32>> {
    let trimmed = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    trimmed
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i32>()
                .map_err(|e| Error::InvalidPermutation(format!("{t:?}: {e}")))
        })
        .collect()
}

/// Precomputed dominance counts of one permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceTable {
    n: usize,
    counts: Vec<u8>,
}

impl DominanceTable {
    pub fn get(&self, i: i32, j: i32) -> usize {
        let m = 2 * self.n;
        self.counts[slot(self.n, i) * m + slot(self.n, j)] as usize
    }

    pub fn leq(&self, other: &DominanceTable) -> bool {
        self.n == other.n && self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }
}

/// An element of the hyperoctahedral group `B_n`: a permutation of `[±n]`
/// with `σ(-i) = -σ(i)`, shown by its window `σ(1), ..., σ(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation(FullPermutation);

impl SignedPermutation {
    pub fn from_window(window: &[i32]) -> Result<Self> {
        let n = window.len();
        let mut line: Vec<i32> = window.iter().rev().map(|&v| -v).collect();
        line.extend_from_slice(window);
        let full = FullPermutation::from_line(n, &line)?;
        Ok(SignedPermutation(full))
    }

    pub fn from_full(full: FullPermutation) -> Result<Self> {
        if full.is_signed() {
            Ok(SignedPermutation(full))
        } else {
            Err(Error::InvalidPermutation(format!(
                "{full} does not commute with negation"
            )))
        }
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation(FullPermutation::identity(n))
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn value(&self, i: i32) -> i32 {
        self.0.value(i)
    }

    pub fn window(&self) -> Vec<i32> {
        (1..=self.n() as i32).map(|i| self.value(i)).collect()
    }

    pub fn as_full(&self) -> &FullPermutation {
        &self.0
    }

    pub fn into_full(self) -> FullPermutation {
        self.0
    }

    pub fn bruhat_leq(&self, other: &SignedPermutation) -> Result<bool> {
        self.0.bruhat_leq(&other.0)
    }

    pub fn dominance_count(&self, i: i32, j: i32) -> usize {
        self.0.dominance_count(i, j)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.window()))
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    /// Accepts a window `a,b,...` or a full line over `[±n]` of even length
    /// `2n` that is signed.
    fn from_str(s: &str) -> Result<Self> {
        let values = parse_values(s)?;
        let n = values.len();
        let max = values.iter().map(|v| v.unsigned_abs() as usize).max().unwrap_or(0);
        if n % 2 == 0 && max == n / 2 && max > 0 {
            return SignedPermutation::from_full(FullPermutation::from_line(n / 2, &values)?);
        }
        SignedPermutation::from_window(&values)
    }
}

/// `inv`, `neg`, `ℓ`, `dna` and the involution rank `ρ` of a signed permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermStats {
    pub inv: usize,
    pub neg: usize,
    pub length: usize,
    pub dna: usize,
    /// `(ℓ + dna) / 2`; only defined on involutions.
    pub rank: Option<usize>,
}

pub fn stats(sigma: &SignedPermutation) -> PermStats {
    let n = sigma.n() as i32;
    let inv = sigma.0.inversions();
    let neg = (1..=n).filter(|&i| sigma.value(i) < 0).count();
    assert!((inv + neg).is_multiple_of(2), "inv + neg is even on B_n");
    let length = (inv + neg) / 2;
    let dna = (1..=n)
        .filter(|&i| {
            let v = sigma.value(i);
            -i <= v && v < i
        })
        .count();
    let rank = if sigma.0.is_involution() {
        assert!((length + dna).is_multiple_of(2), "ℓ + dna is even on involutions");
        Some((length + dna) / 2)
    } else {
        None
    };
    PermStats {
        inv,
        neg,
        length,
        dna,
        rank,
    }
}

/// The involution families handled by the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Involutions of `[±n]` in `S_2n`.
    #[serde(rename = "sym-inv")]
    SymmetricInvolutions,
    /// Fixed-point-free involutions of `[±n]`: the conjugacy class of `w0`.
    #[serde(rename = "fpf-inv")]
    FpfInvolutions,
    /// Involutions in `B_n`.
    #[serde(rename = "signed-inv")]
    SignedInvolutions,
    /// Fixed-point-free involutions in `B_n`.
    #[serde(rename = "fpf-signed-inv")]
    FpfSignedInvolutions,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::SymmetricInvolutions,
        Family::FpfInvolutions,
        Family::SignedInvolutions,
        Family::FpfSignedInvolutions,
    ];

    pub fn is_signed(self) -> bool {
        matches!(
            self,
            Family::SignedInvolutions | Family::FpfSignedInvolutions
        )
    }

    pub fn is_fixed_point_free(self) -> bool {
        matches!(self, Family::FpfInvolutions | Family::FpfSignedInvolutions)
    }

    pub fn slug(self) -> &'static str {
        match self {
            Family::SymmetricInvolutions => "sym-inv",
            Family::FpfInvolutions => "fpf-inv",
            Family::SignedInvolutions => "signed-inv",
            Family::FpfSignedInvolutions => "fpf-signed-inv",
        }
    }

    /// Window for signed families, full line otherwise.
    pub fn label(self, perm: &FullPermutation) -> String {
        if self.is_signed() {
            let n = perm.n() as i32;
            join(&(1..=n).map(|i| perm.value(i)).collect::<Vec<_>>())
        } else {
            perm.line_string()
        }
    }

    fn sort_key(self, perm: &FullPermutation) -> Vec<i32> {
        if self.is_signed() {
            (1..=perm.n() as i32).map(|i| perm.value(i)).collect()
        } else {
            perm.images()
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.slug() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown family {s:?}")))
    }
}

/// Every member of `family` for the given `n`, sorted lexicographically by
/// window (signed families) or full line.
pub fn generate_family(family: Family, n: usize) -> Vec<FullPermutation> {
    if n == 0 {
        return Vec::new();
    }
    let allow_fixed = !family.is_fixed_point_free();
    let mut out = Vec::new();
    if family.is_signed() {
        let mut window = vec![0i32; n];
        signed_involutions(&mut window, allow_fixed, &mut out);
    } else {
        let mut line = vec![u8::MAX; 2 * n];
        involutions(&mut line, allow_fixed, n, &mut out);
    }
    out.sort_by_cached_key(|p| family.sort_key(p));
    out
}

fn involutions(line: &mut [u8], allow_fixed: bool, n: usize, out: &mut Vec<FullPermutation>) {
    let Some(p) = line.iter().position(|&s| s == u8::MAX) else {
        out.push(FullPermutation {
            n,
            line: line.to_vec(),
        });
        return;
    };
    if allow_fixed {
        line[p] = p as u8;
        involutions(line, allow_fixed, n, out);
        line[p] = u8::MAX;
    }
    for q in p + 1..line.len() {
        if line[q] == u8::MAX {
            line[p] = q as u8;
            line[q] = p as u8;
            involutions(line, allow_fixed, n, out);
            line[p] = u8::MAX;
            line[q] = u8::MAX;
        }
    }
}

fn signed_involutions(window: &mut [i32], allow_fixed: bool, out: &mut Vec<FullPermutation>) {
    let Some(p) = window.iter().position(|&v| v == 0) else {
        let sigma = SignedPermutation::from_window(window).expect("valid window");
        out.push(sigma.into_full());
        return;
    };
    let i = p as i32 + 1;
    let mut choices = vec![-i];
    if allow_fixed {
        choices.push(i);
    }
    for &v in &choices {
        window[p] = v;
        signed_involutions(window, allow_fixed, out);
    }
    window[p] = 0;
    for q in p + 1..window.len() {
        if window[q] != 0 {
            continue;
        }
        let j = q as i32 + 1;
        for sign in [1, -1] {
            window[p] = sign * j;
            window[q] = sign * i;
            signed_involutions(window, allow_fixed, out);
        }
        window[p] = 0;
        window[q] = 0;
    }
}

/// The reverse permutation `w0(i) = -i`, the top of the fixed-point-free
/// signed involutions.
pub fn w0(n: usize) -> SignedPermutation {
    let window: Vec<i32> = (1..=n as i32).map(|i| -i).collect();
    SignedPermutation::from_window(&window).expect("w0 is signed")
}

/// The product `(-n, -n+1)(-n+2, -n+3)⋯(n-1, n)` of adjacent transpositions,
/// the bottom of the fixed-point-free signed involutions.
pub fn hat0_fpf(n: usize) -> SignedPermutation {
    let mut line = vec![0i32; 2 * n];
    for k in 0..n {
        line[2 * k] = value_at(n, 2 * k + 1);
        line[2 * k + 1] = value_at(n, 2 * k);
    }
    let full = FullPermutation::from_line(n, &line).expect("product of transpositions");
    SignedPermutation::from_full(full).expect("adjacent pairs are symmetric")
}

/// Conjugation `σ ↦ w0 σ w0`, an automorphism of `S_2n` fixing exactly `B_n`.
pub fn phi(sigma: &FullPermutation) -> FullPermutation {
    sigma.conjugate_by_w0()
}

/// `phi` as a map on a list of elements closed under it.
pub fn phi_automorphism(elements: &[FullPermutation]) -> Result<PosetMap> {
    let index: HashMap<&FullPermutation, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    elements
        .iter()
        .map(|e| {
            index
                .get(&phi(e))
                .copied()
                .ok_or_else(|| Error::InvalidInput(format!("element list is not closed under phi at {e}")))
        })
        .collect::<Result<Vec<usize>>>()
        .map(PosetMap)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialElements {
    pub w0: SignedPermutation,
    pub hat0: SignedPermutation,
}

pub fn special_elements(n: usize) -> SpecialElements {
    SpecialElements {
        w0: w0(n),
        hat0: hat0_fpf(n),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OrderDirection {
    #[default]
    Bruhat,
    Dual,
}

impl FromStr for OrderDirection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bruhat" => Ok(OrderDirection::Bruhat),
            "dual" => Ok(OrderDirection::Dual),
            _ => Err(Error::InvalidInput(format!("unknown order {s:?}"))),
        }
    }
}

/// Poset on `elements` induced by Bruhat order (or its dual), with elements
/// named by `family.label`.
pub fn build_bruhat_poset(
    family: Family,
    elements: &[FullPermutation],
    direction: OrderDirection,
) -> Result<Poset> {
    if let Some(first) = elements.first() {
        if let Some(bad) = elements.iter().find(|e| e.n() != first.n()) {
            return Err(Error::SizeMismatch {
                expected: first.n(),
                found: bad.n(),
            });
        }
    }
    let tables: Vec<DominanceTable> = elements.iter().map(|e| e.dominance_table()).collect();
    let mut pairs = Vec::new();
    for (a, ta) in tables.iter().enumerate() {
        for (b, tb) in tables.iter().enumerate() {
            if a != b && ta.leq(tb) {
                pairs.push(match direction {
                    OrderDirection::Bruhat => (a, b),
                    OrderDirection::Dual => (b, a),
                });
            }
        }
    }
    let names = elements.iter().map(|e| family.label(e)).collect();
    Poset::new(names, &pairs)
}

/// Convenience: generate a family and build its (dual) Bruhat poset.
pub fn family_poset(family: Family, n: usize, direction: OrderDirection) -> Result<(Vec<FullPermutation>, Poset)> {
    let elements = generate_family(family, n);
    let poset = build_bruhat_poset(family, &elements, direction)?;
    Ok((elements, poset))
}
