use std::collections::{HashMap, HashSet};

use pircon::signed::{family_poset, generate_family, stats, Family, FullPermutation, OrderDirection, SignedPermutation};

/// Signed permutations of rank n as windows.
fn windows(n: usize) -> Vec<Vec<i32>> {
    fn rec(n: usize, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n as i32 {
            if cur.iter().any(|c| c.abs() == v) {
                continue;
            }
            for s in [v, -v] {
                cur.push(s);
                rec(n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// Coxeter length in B_n: inversions of the window, plus pairs summing to a
/// negative value, plus negative entries.
fn length_b(w: &[i32]) -> usize {
    let n = w.len();
    let mut l = w.iter().filter(|&&v| v < 0).count();
    for i in 0..n {
        for j in i + 1..n {
            l += usize::from(w[i] > w[j]) + usize::from(w[i] + w[j] < 0);
        }
    }
    l
}

/// Right multiplication by every reflection of B_n, acting on positions.
fn reflections(w: &[i32]) -> Vec<Vec<i32>> {
    let n = w.len();
    let mut out = Vec::new();
    for i in 0..n {
        let mut v = w.to_vec();
        v[i] = -v[i];
        out.push(v);
        for j in i + 1..n {
            let mut a = w.to_vec();
            a.swap(i, j);
            out.push(a);
            let mut b = w.to_vec();
            b[i] = -w[j];
            b[j] = -w[i];
            out.push(b);
        }
    }
    out
}

/// Bruhat order as the transitive closure of length-increasing reflections.
fn reflection_order(elements: &[Vec<i32>]) -> HashSet<(usize, usize)> {
    let index: HashMap<&Vec<i32>, usize> = elements.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut by_length: Vec<usize> = (0..elements.len()).collect();
    by_length.sort_by_key(|&i| std::cmp::Reverse(length_b(&elements[i])));
    let mut above: Vec<HashSet<usize>> = vec![HashSet::new(); elements.len()];
    for &u in &by_length {
        let mut up = HashSet::new();
        for v in reflections(&elements[u]) {
            if length_b(&v) > length_b(&elements[u]) {
                let t = index[&v];
                up.insert(t);
                up.extend(above[t].iter().copied());
            }
        }
        above[u] = up;
    }
    (0..elements.len()).flat_map(|u| above[u].iter().map(move |&t| (u, t))).collect()
}

#[test]
fn bruhat_matches_reflection_order() {
    for n in 1..=3 {
        let elements = windows(n);
        let oracle = reflection_order(&elements);
        let perms: Vec<SignedPermutation> =
            elements.iter().map(|w| SignedPermutation::from_window(w).unwrap()).collect();
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                let fast = a != b && pa.bruhat_leq(pb).unwrap();
                assert_eq!(fast, oracle.contains(&(a, b)), "n={n} {pa} vs {pb}");
            }
        }
    }
}

#[test]
fn length_matches_oracle() {
    for n in 1..=4 {
        for w in windows(n) {
            let s = stats(&SignedPermutation::from_window(&w).unwrap());
            assert_eq!(s.length, length_b(&w), "{w:?}");
        }
    }
}

fn is_involution(w: &[i32]) -> bool {
    w.iter().enumerate().all(|(i, &v)| {
        let back = w[v.unsigned_abs() as usize - 1];
        back.signum() * v.signum() * back.abs() == i as i32 + 1
    })
}

fn fixed_point_free(w: &[i32]) -> bool {
    w.iter().enumerate().all(|(i, &v)| v != i as i32 + 1)
}

#[test]
fn family_sizes_match_filters() {
    for n in 1..=4 {
        let all = windows(n);
        let inv: Vec<&Vec<i32>> = all.iter().filter(|w| is_involution(w)).collect();
        let fpf = inv.iter().filter(|w| fixed_point_free(w)).count();
        assert_eq!(generate_family(Family::SignedInvolutions, n).len(), inv.len());
        assert_eq!(generate_family(Family::FpfSignedInvolutions, n).len(), fpf);
    }
    assert_eq!(generate_family(Family::FpfSignedInvolutions, 4).len(), 25);
}

#[test]
fn parity_invariants() {
    for n in 1..=5 {
        for e in generate_family(Family::SignedInvolutions, n) {
            let w = SignedPermutation::from_full(e).unwrap();
            let s = stats(&w);
            assert_eq!((s.inv + s.neg) % 2, 0);
            assert_eq!((s.length + s.dna) % 2, 0);
            assert_eq!(s.rank, Some((s.length + s.dna) / 2));
        }
    }
}

/// In a family poset, the dual order is the reverse of the Bruhat order.
#[test]
fn dual_direction_reverses_covers() {
    for family in Family::ALL {
        let (_, up) = family_poset(family, 2, OrderDirection::Bruhat).unwrap();
        let (_, down) = family_poset(family, 2, OrderDirection::Dual).unwrap();
        assert_eq!(up.dual(), down);
    }
}

/// Bruhat order of S_m restricted to involutions of [±n], against the
/// reflection oracle of S_2n acting on full lines.
#[test]
fn symmetric_families_use_type_a_bruhat() {
    let n = 2;
    let lines: Vec<Vec<i32>> = generate_family(Family::SymmetricInvolutions, n)
        .iter()
        .map(FullPermutation::images)
        .collect();
    let inversions = |w: &[i32]| (0..w.len()).flat_map(|i| (i + 1..w.len()).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count();
    let mut perms: Vec<Vec<i32>> = Vec::new();
    fn all(cur: &mut Vec<i32>, vals: &[i32], out: &mut Vec<Vec<i32>>) {
        if cur.len() == vals.len() {
            out.push(cur.clone());
            return;
        }
        for &v in vals {
            if !cur.contains(&v) {
                cur.push(v);
                all(cur, vals, out);
                cur.pop();
            }
        }
    }
    all(&mut Vec::new(), &[-2, -1, 1, 2], &mut perms);
    let index: HashMap<&Vec<i32>, usize> = perms.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut order: Vec<usize> = (0..perms.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(inversions(&perms[i])));
    let mut above: Vec<HashSet<usize>> = vec![HashSet::new(); perms.len()];
    for &u in &order {
        let mut up = HashSet::new();
        for i in 0..4 {
            for j in i + 1..4 {
                let mut v = perms[u].clone();
                v.swap(i, j);
                if inversions(&v) > inversions(&perms[u]) {
                    let t = index[&v];
                    up.insert(t);
                    up.extend(above[t].iter().copied());
                }
            }
        }
        above[u] = up;
    }
    let (_, poset) = family_poset(Family::SymmetricInvolutions, n, OrderDirection::Bruhat).unwrap();
    for (a, la) in lines.iter().enumerate() {
        for (b, lb) in lines.iter().enumerate() {
            assert_eq!(poset.lt(a, b), above[index[la]].contains(&index[lb]), "{la:?} {lb:?}");
        }
    }
}
