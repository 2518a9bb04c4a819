//! Order complexes and their Z/2 homology.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::signed::{hat0_fpf, stats, w0};

/// A simplicial complex given by its facets. Facets are sorted vertex lists,
/// no facet contains another, and the facet list itself is sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub vertex_count: usize,
    pub facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn new(vertex_count: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut facets: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        if let Some(&v) = facets.iter().flatten().find(|&&v| v >= vertex_count) {
            return Err(Error::IndexOutOfRange {
                index: v,
                len: vertex_count,
            });
        }
        facets.sort();
        facets.dedup();
        let keep: Vec<bool> = facets
            .iter()
            .map(|f| !facets.iter().any(|g| g.len() > f.len() && is_subset(f, g)))
            .collect();
        let facets = facets
            .into_iter()
            .zip(keep)
            .filter(|(f, k)| *k && !f.is_empty())
            .map(|(f, _)| f)
            .collect();
        Ok(SimplicialComplex {
            vertex_count,
            facets,
        })
    }

    /// The complex whose only face is the empty one.
    pub fn empty() -> Self {
        SimplicialComplex {
            vertex_count: 0,
            facets: Vec::new(),
        }
    }

    /// `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Faces of dimension `d` in sorted order, for `d >= -1`.
    pub fn faces(&self, d: isize) -> Vec<Vec<usize>> {
        if d < -1 {
            return Vec::new();
        }
        if d == -1 {
            return vec![Vec::new()];
        }
        let size = (d + 1) as usize;
        let mut out: Vec<Vec<usize>> = Vec::new();
        for f in self.facets.iter().filter(|f| f.len() >= size) {
            subsets_of_size(f, size, &mut out);
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim()).map(|d| self.faces(d).len()).collect()
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|v| it.any(|w| w == v))
}

fn subsets_of_size(set: &[usize], size: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(set: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for k in start..set.len() {
            if set.len() - k < size - cur.len() {
                break;
            }
            cur.push(set[k]);
            rec(set, size, k + 1, cur, out);
            cur.pop();
        }
    }
    rec(set, size, 0, &mut Vec::with_capacity(size), out);
}

/// Chains of `P` as faces; the facets are the maximal chains.
pub fn order_complex(poset: &Poset) -> SimplicialComplex {
    let mut facets: Vec<Vec<usize>> = poset
        .maximal_chains()
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    facets.sort();
    SimplicialComplex {
        vertex_count: poset.len(),
        facets,
    }
}

/// Unreduced: `sum (-1)^d f_d` over `d >= 0`.
pub fn euler_characteristic(complex: &SimplicialComplex) -> i64 {
    complex
        .f_vector()
        .iter()
        .enumerate()
        .map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySignature {
    /// `betti[k]` is the reduced Betti number in degree `k - 1`.
    pub betti: Vec<usize>,
}

impl HomologySignature {
    pub fn reduced(&self, degree: isize) -> usize {
        if degree < -1 {
            return 0;
        }
        self.betti.get((degree + 1) as usize).copied().unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti.iter().all(|&b| b == 0)
    }

    /// `sum (-1)^k betti_k`, which equals the reduced Euler characteristic.
    pub fn alternating_sum(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// Rank over Z/2 of a matrix given by sparse sorted columns.
fn rank_z2(columns: Vec<Vec<u32>>) -> usize {
    let mut pivots: HashMap<u32, Vec<u32>> = HashMap::new();
    let mut rank = 0;
    for mut col in columns {
        while let Some(&low) = col.last() {
            match pivots.get(&low) {
                Some(p) => col = symmetric_difference(&col, p),
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            pivots.insert(low, col);
            rank += 1;
        }
    }
    rank
}

fn symmetric_difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Reduced Betti numbers over Z/2 in degrees `-1..=dim`, from the augmented
/// chain complex.
pub fn homology_z2(complex: &SimplicialComplex) -> HomologySignature {
    let dim = complex.dim();
    let faces: Vec<Vec<Vec<usize>>> = (-1..=dim).map(|d| complex.faces(d)).collect();
    // ranks[k] = rank of the boundary from degree k - 1 to degree k - 2.
    let mut ranks = vec![0usize; faces.len() + 1];
    for k in 1..faces.len() {
        let index: HashMap<&[usize], u32> = faces[k - 1]
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i as u32))
            .collect();
        let columns = faces[k]
            .iter()
            .map(|f| {
                let mut col: Vec<u32> = (0..f.len())
                    .map(|skip| {
                        let boundary: Vec<usize> = f
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != skip)
                            .map(|(_, &v)| v)
                            .collect();
                        index[boundary.as_slice()]
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        ranks[k] = rank_z2(columns);
    }
    let betti = (0..faces.len())
        .map(|k| faces[k].len() - ranks[k] - ranks[k + 1])
        .collect();
    HomologySignature { betti }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BallSphere {
    BallConsistent,
    SphereConsistent,
    Neither,
}

impl fmt::Display for BallSphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BallSphere::BallConsistent => "ball-consistent",
            BallSphere::SphereConsistent => "sphere-consistent",
            BallSphere::Neither => "neither",
        })
    }
}

/// Necessary conditions only: homology cannot certify a PL ball or sphere.
pub fn ball_sphere_signature(complex: &SimplicialComplex, homology: &HomologySignature, expected_dim: isize) -> BallSphere {
    if complex.dim() != expected_dim {
        return BallSphere::Neither;
    }
    if homology.is_acyclic() {
        return BallSphere::BallConsistent;
    }
    let top_only = homology
        .betti
        .iter()
        .enumerate()
        .all(|(k, &b)| if k as isize - 1 == expected_dim { b == 1 } else { b == 0 });
    if top_only {
        BallSphere::SphereConsistent
    } else {
        BallSphere::Neither
    }
}

/// Dimension of the order complex of the proper part of the fixed-point-free
/// signed involutions, from the closed formula and cross-checked against
/// `ρ(1̂) - ρ(0̂) - 2` computed on the actual elements.
pub fn expected_dimension(n: usize) -> Result<isize> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("expected_dimension needs n >= 2, got {n}")));
    }
    let sq = (n * n) as i64;
    let closed = if n.is_multiple_of(2) { sq / 2 - 2 } else { (sq - 1) / 2 - 2 };
    let rank = |w| stats(&w).rank.expect("involution") as i64;
    let ranked = rank(w0(n)) - rank(hat0_fpf(n)) - 2;
    if closed != ranked {
        return Err(Error::FormulaMismatch { n, closed, ranked });
    }
    Ok(closed as isize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingVerdict {
    pub shelling: bool,
    /// Position in the order of the first facet that breaks the condition.
    pub witness: Option<usize>,
}

/// Each facet after the first must meet the union of its predecessors in a
/// nonempty union of codimension-one faces of itself.
pub fn verify_shelling(complex: &SimplicialComplex, order: &[usize]) -> Result<ShellingVerdict> {
    if !complex.is_pure() {
        return Err(Error::NotPure);
    }
    let m = complex.facets.len();
    let mut seen = vec![false; m];
    for &k in order {
        if k >= m {
            return Err(Error::IndexOutOfRange { index: k, len: m });
        }
        if std::mem::replace(&mut seen[k], true) {
            return Err(Error::InvalidInput(format!("facet {k} repeated in shelling order")));
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::SizeMismatch {
            expected: m,
            found: order.len(),
        });
    }
    let facets: Vec<&Vec<usize>> = order.iter().map(|&k| &complex.facets[k]).collect();
    for j in 1..facets.len() {
        let fj = facets[j];
        let meets: Vec<Vec<usize>> = facets[..j].iter().map(|fi| intersection(fi, fj)).collect();
        let ridges: Vec<&Vec<usize>> = meets.iter().filter(|c| c.len() + 1 == fj.len()).collect();
        let ok = meets
            .iter()
            .all(|c| ridges.iter().any(|r| is_subset(c, r)));
        if !ok {
            return Ok(ShellingVerdict {
                shelling: false,
                witness: Some(j),
            });
        }
    }
    Ok(ShellingVerdict {
        shelling: true,
        witness: None,
    })
}

fn intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().filter(|v| b.binary_search(v).is_ok()).copied().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub dim: isize,
    pub facets: Vec<Vec<usize>>,
}

pub fn complex_json(complex: &SimplicialComplex, names: &[String]) -> ComplexJson {
    ComplexJson {
        vertices: names.to_vec(),
        dim: complex.dim(),
        facets: complex.facets.clone(),
    }
}
