mod common;

use common::laws::{self, arb_equiv_pair, arb_mset};
use common::*;
use membrane_grammar::dsl::parse;
use membrane_grammar::harness::{gen_instance, perturb, GenParams};
use membrane_grammar::threshold::{first_inequivalence, smallest_separating_threshold, Inequivalence};
use membrane_grammar::{config_equiv, Configuration, config_threshold, mset_threshold, RegionId, Threshold};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn capping_the_illustration_at_one() {
    let (c, capped) = threshold_example();
    assert_eq!(config_threshold(&c, Threshold(1)), capped);
    assert!(config_equiv(&c, &capped, Threshold(1)));
    assert!(!config_equiv(&c, &capped, Threshold(2)));
    // s, x2 and x3 all differ at level 2; the first in id order is the skin region
    assert_eq!(differing_regions(&c, &capped, 2), vec![RegionId(1), RegionId(3), RegionId(4)]);
    let x2 = RegionId(3);
    assert_eq!(c.contents(x2).threshold(2), m("o2 o2"));
    assert_eq!(capped.contents(x2).threshold(2), m("o2"));
    match first_inequivalence(&c, &capped, Threshold(2)) {
        Some(Inequivalence::Contents { region, object, left, right }) => {
            assert_eq!(region, RegionId(1));
            assert_eq!((object.as_str(), left, right), ("o1", 3, 1));
        }
        other => panic!("unexpected {other:?}"),
    }
    assert_eq!(smallest_separating_threshold(&c, &capped), Some(2));
}

fn differing_regions(a: &Configuration, b: &Configuration, t: u64) -> Vec<RegionId> {
    a.structure
        .regions()
        .filter(|&r| a.contents(r).threshold(t) != b.contents(r).threshold(t))
        .collect()
}

#[test]
fn corpus_file_matches_hand_built_illustration() {
    let text = std::fs::read_to_string(corpus_file("threshold_example.mg")).unwrap();
    assert_eq!(parse(&text).unwrap().config, threshold_example().0);
}

#[test]
fn single_multiset_examples() {
    let t = |w: &str, t: u64| mset_threshold(&m(w), Threshold(t));
    assert_eq!(t("o1 o1 o1", 1), m("o1"));
    assert_eq!(t("o1 o2 o2 o2", 2), m("o1 o2 o2"));
    assert_eq!(t("o1 o2", 0), m(""));
    assert_eq!(t("", 3), m(""));
}

#[test]
fn structure_differences_separate_at_zero() {
    let (c, _) = threshold_example();
    let other = example1_config();
    assert!(!config_equiv(&c, &other, Threshold(0)));
    assert_eq!(first_inequivalence(&c, &other, Threshold(0)), Some(Inequivalence::Structure));
    assert_eq!(smallest_separating_threshold(&c, &other), Some(0));
    assert_eq!(smallest_separating_threshold(&c, &c), None);
}

proptest! {
    #[test]
    fn idempotence(u in arb_mset(), t in 0u64..8) {
        laws::idempotence(&u, t)?;
    }

    #[test]
    fn monotone_composition(u in arb_mset(), t1 in 0u64..8, t2 in 0u64..8) {
        laws::monotone_composition(&u, t1, t2)?;
    }

    #[test]
    fn equivalence_relation((u, v, t) in arb_equiv_pair(), w in arb_mset()) {
        laws::equivalence_relation(&u, &v, &w, t)?;
        laws::equivalence_relation(&u, &w, &v, t)?;
    }

    #[test]
    fn additivity((u, v, t) in arb_equiv_pair(), x in arb_mset()) {
        laws::additivity(&u, &v, &x, t)?;
    }

    #[test]
    fn scaling(u in arb_mset(), t in 0u64..6, a in 0u64..4, b in 0u64..4) {
        laws::scaling(&u, t, a, b)?;
    }

    #[test]
    fn perturbation_stays_equivalent(seed in any::<u64>(), t in 1u64..5) {
        let (_, c) = gen_instance(&GenParams { seed, ..GenParams::default() });
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = perturb(&c, Threshold(t), &mut rng);
        prop_assert!(config_equiv(&c, &p, Threshold(t)));
        prop_assert!(config_equiv(&c, &config_threshold(&c, Threshold(t)), Threshold(t)));
        // the separating threshold is tight
        if let Some(s) = smallest_separating_threshold(&c, &p) {
            prop_assert!(s > t);
            prop_assert!(config_equiv(&c, &p, Threshold(s - 1)));
            prop_assert!(!config_equiv(&c, &p, Threshold(s)));
        }
    }
}
