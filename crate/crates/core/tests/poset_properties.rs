mod common;

use common::{natural_orders, poset_with_top, posets_with_top};
use pircon::fixed_point::{conjugated_spms, induced_spm, orbit, orbit_partition};
use pircon::matching::{all_spms, check_lifting, check_spm};
use pircon::poset::{all_automorphisms, Poset, PosetMap};
use proptest::prelude::*;

#[test]
fn natural_order_counts() {
    // labelled posets whose labelling is a linear extension
    let counts: Vec<usize> = (1..=5).map(|k| natural_orders(k).len()).collect();
    assert_eq!(counts, vec![1, 2, 7, 40, 357]);
    assert_eq!(posets_with_top(3).len(), 7);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn dual_is_an_involution(p in poset_with_top(7)) {
        let d = p.dual();
        prop_assert_eq!(d.dual(), p.clone());
        prop_assert_eq!(d.bottom(), p.top());
        for (a, b) in p.covers() {
            prop_assert!(d.is_cover(b, a));
        }
    }

    #[test]
    fn proper_part_commutes_with_dual(p in poset_with_top(7)) {
        prop_assume!(p.bottom().is_some() && p.len() > 1);
        let a = p.dual().proper_part().unwrap();
        let b = p.proper_part().unwrap();
        prop_assert_eq!(&a.embedding, &b.embedding);
        prop_assert_eq!(a.poset, b.poset.dual());
    }

    #[test]
    fn reduction_is_idempotent(p in poset_with_top(7)) {
        let again = Poset::new(p.names().to_vec(), &p.covers()).unwrap();
        prop_assert_eq!(again.covers(), p.covers());
        let closed: Vec<(usize, usize)> = (0..p.len())
            .flat_map(|a| (0..p.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| p.lt(a, b))
            .collect();
        prop_assert_eq!(Poset::new(p.names().to_vec(), &closed).unwrap(), p);
    }

    #[test]
    fn json_round_trip(p in poset_with_top(7)) {
        prop_assert_eq!(Poset::from_json(&p.to_json("p")).unwrap(), p);
    }

    #[test]
    fn every_spm_is_valid_and_lifts(p in poset_with_top(7)) {
        for m in all_spms(&p).unwrap() {
            prop_assert!(check_spm(&p, &m).unwrap().valid);
            let lifting = check_lifting(&p, &m).unwrap();
            prop_assert!(lifting.holds, "{:?}", lifting);
        }
    }

    #[test]
    fn orbits_partition_and_commute_with_tau(p in poset_with_top(7)) {
        let spms = all_spms(&p).unwrap();
        for tau in all_automorphisms(&p) {
            for m in spms.iter().take(8) {
                let family = conjugated_spms(&p, m, &tau).unwrap();
                let (orbits, orbit_of) = orbit_partition(&p, &family).unwrap();
                let mut seen: Vec<usize> = orbits.iter().flat_map(|o| o.members.clone()).collect();
                seen.sort_unstable();
                prop_assert_eq!(seen, (0..p.len()).collect::<Vec<_>>());
                for x in 0..p.len() {
                    let o = orbit(&p, &family, x).unwrap();
                    prop_assert_eq!(&o, &orbits[orbit_of[x]]);
                    let mut image: Vec<usize> = o.members.iter().map(|&y| tau.apply(y)).collect();
                    image.sort_unstable();
                    prop_assert_eq!(image, orbit(&p, &family, tau.apply(x)).unwrap().members);
                    prop_assert!(o.members.iter().all(|&y| p.leq(o.minimum, y) && p.leq(y, o.maximum)));
                }
            }
        }
    }

    #[test]
    fn induced_spm_is_an_spm(p in poset_with_top(7)) {
        let spms = all_spms(&p).unwrap();
        for tau in all_automorphisms(&p) {
            for m in &spms {
                let induced = induced_spm(&p, m, &tau, true).unwrap();
                prop_assert!(induced.verdict.valid, "{:?}", induced.verdict);
                prop_assert!(check_lifting(&induced.fixed.poset, &induced.matching).unwrap().holds);
            }
        }
    }

    #[test]
    fn automorphisms_form_a_group(p in poset_with_top(6)) {
        let autos = all_automorphisms(&p);
        prop_assert!(autos.contains(&PosetMap::identity(p.len())));
        for a in &autos {
            prop_assert!(a.is_automorphism(&p));
            prop_assert!(autos.contains(&a.inverse()));
            for b in &autos {
                prop_assert!(autos.contains(&a.compose(b)));
            }
        }
    }
}
