mod common;

use common::poset_with_top;
use pircon::labels::{EdgeLabel, LabelVariant};
use pircon::poset::Poset;
use pircon::shellability::{
    candidate_labelling, lex_ordered_maximal_chains, verify_el_interval, verify_el_poset, EdgeLabelling, LabelOrder,
};
use pircon::signed::{family_poset, Family, OrderDirection};
use pircon::topology::{euler_characteristic, homology_z2, order_complex, verify_shelling, SimplicialComplex};
use proptest::prelude::*;

fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::vec(0usize..7, 1..5), 0..8)
        .prop_map(|facets| SimplicialComplex::new(7, facets).unwrap())
}

/// Boolean lattice on `k` atoms with the standard labels: adding `i` gets `i`.
fn boolean_lattice(k: usize) -> (Poset, EdgeLabelling) {
    let size = 1usize << k;
    let mut relation = Vec::new();
    let mut labelling = EdgeLabelling::new(LabelOrder::Lex);
    for s in 0..size {
        for i in 0..k {
            if s & (1 << i) == 0 {
                relation.push((s, s | 1 << i));
                labelling.insert(s, s | 1 << i, EdgeLabel::new(i as i32, k as i32));
            }
        }
    }
    let poset = Poset::new((0..size).map(|s| format!("{s:b}")).collect(), &relation).unwrap();
    (poset, labelling)
}

fn shelling_of_lex_chains(poset: &Poset, labelling: &EdgeLabelling) -> bool {
    let complex = order_complex(poset);
    let order: Vec<usize> = lex_ordered_maximal_chains(poset, labelling)
        .unwrap()
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            complex.facets.iter().position(|f| *f == c).unwrap()
        })
        .collect();
    verify_shelling(&complex, &order).unwrap().shelling
}

#[test]
fn el_chain_orders_are_shellings() {
    for k in 1..=4 {
        let (poset, labelling) = boolean_lattice(k);
        assert!(verify_el_poset(&poset, &labelling).unwrap().passed());
        assert!(shelling_of_lex_chains(&poset, &labelling));
    }
    let (elements, poset) = family_poset(Family::FpfSignedInvolutions, 2, OrderDirection::Bruhat).unwrap();
    let labelling = candidate_labelling(&elements, &poset, LabelVariant::CiCandidate, LabelOrder::ReversedLex).unwrap();
    assert!(verify_el_poset(&poset, &labelling).unwrap().passed());
    assert!(shelling_of_lex_chains(&poset, &labelling));
}

#[test]
fn el_passes_on_subintervals() {
    let (poset, labelling) = boolean_lattice(3);
    for x in 0..poset.len() {
        for y in 0..poset.len() {
            if poset.lt(x, y) {
                assert!(verify_el_interval(&poset, &labelling, x, y).unwrap().el_pass());
            }
        }
    }
}

#[test]
fn boolean_proper_part_is_a_sphere() {
    // the proper part of the Boolean lattice on k atoms is a (k-2)-sphere
    for k in 2..=4 {
        let (poset, _) = boolean_lattice(k);
        let h = homology_z2(&order_complex(&poset.proper_part().unwrap().poset));
        let mut expected = vec![0; k];
        expected[k - 1] = 1;
        assert_eq!(h.betti, expected);
    }
}

proptest! {
    #[test]
    fn euler_matches_betti(k in complex_strategy()) {
        let h = homology_z2(&k);
        prop_assert_eq!(h.alternating_sum(), euler_characteristic(&k) - 1);
        prop_assert_eq!(h.betti.len() as isize, k.dim() + 2);
    }

    #[test]
    fn dual_has_the_same_order_complex(p in poset_with_top(7)) {
        prop_assert_eq!(order_complex(&p.dual()), order_complex(&p));
    }

    #[test]
    fn cone_is_acyclic(p in poset_with_top(7)) {
        // a top element makes the order complex a cone
        prop_assert!(homology_z2(&order_complex(&p)).is_acyclic());
    }

    #[test]
    fn facets_are_an_antichain(k in complex_strategy()) {
        for a in &k.facets {
            for b in &k.facets {
                prop_assert!(a == b || !a.iter().all(|v| b.contains(v)));
            }
        }
    }
}
