#![allow(dead_code)]

use pircon::poset::Poset;
use proptest::prelude::*;

/// Poset on `size` elements from a choice of pairs `i < j` below the last
/// element, which is made the top.
pub fn poset_from_bits(size: usize, bits: &[bool]) -> Poset {
    let mut relation = Vec::new();
    let mut k = 0;
    for j in 0..size.saturating_sub(1) {
        for i in 0..j {
            if bits[k % bits.len().max(1)] {
                relation.push((i, j));
            }
            k += 1;
        }
        relation.push((j, size - 1));
    }
    Poset::new((0..size).map(|i| i.to_string()).collect(), &relation).unwrap()
}

pub fn poset_with_top(max: usize) -> impl Strategy<Value = Poset> {
    (1..=max, prop::collection::vec(any::<bool>(), 16)).prop_map(|(size, bits)| poset_from_bits(size, &bits))
}

/// Every strict order on `0..k` contained in the natural order and closed
/// under transitivity. Up to isomorphism these are all posets on `k` points.
pub fn natural_orders(k: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let chosen: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p).collect();
        let has = |a: usize, b: usize| chosen.contains(&(a, b));
        let closed = chosen
            .iter()
            .all(|&(a, b)| (b + 1..k).all(|c| !has(b, c) || has(a, c)));
        if closed {
            out.push(chosen);
        }
    }
    out
}

/// Every poset with a top on `k + 1` elements, up to isomorphism (with
/// repetitions).
pub fn posets_with_top(k: usize) -> Vec<Poset> {
    natural_orders(k)
        .into_iter()
        .map(|mut rel| {
            rel.extend((0..k).map(|i| (i, k)));
            Poset::new((0..=k).map(|i| i.to_string()).collect(), &rel).unwrap()
        })
        .collect()
}
