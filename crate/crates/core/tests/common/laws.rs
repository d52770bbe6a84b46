//! Algebraic laws of capping and t-equivalence, shared by the property tests
//! and the acceptance suite.

use membrane_grammar::{mset_equiv, mset_scale, mset_sum, mset_threshold, Multiset, ObjectId, Threshold};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

type Law = Result<(), TestCaseError>;

pub fn arb_mset() -> impl Strategy<Value = Multiset> {
    proptest::collection::btree_map(0u8..4, 0u64..12, 0..5).prop_map(|mp| {
        mp.into_iter()
            .map(|(k, n)| (ObjectId::new(&format!("o{k}")), n))
            .collect()
    })
}

/// `u` together with a random `v` that is t-equivalent to it.
pub fn arb_equiv_pair() -> impl Strategy<Value = (Multiset, Multiset, u64)> {
    (arb_mset(), 0u64..6, proptest::collection::vec(0u64..6, 4)).prop_map(|(u, t, bumps)| {
        let v = u
            .iter()
            .zip(bumps.iter().cycle())
            .map(|((o, n), &b)| (o.clone(), if n >= t { t + b } else { n }))
            .collect();
        (u, v, t)
    })
}

pub fn idempotence(u: &Multiset, t: u64) -> Law {
    let once = mset_threshold(u, Threshold(t));
    prop_assert_eq!(mset_threshold(&once, Threshold(t)), once);
    Ok(())
}

pub fn monotone_composition(u: &Multiset, t1: u64, t2: u64) -> Law {
    let both = mset_threshold(&mset_threshold(u, Threshold(t1)), Threshold(t2));
    prop_assert_eq!(both, mset_threshold(u, Threshold(t1.min(t2))));
    // equivalence at a level implies equivalence at every lower level
    let (hi, lo) = (t1.max(t2), t1.min(t2));
    let capped = mset_threshold(u, Threshold(hi));
    prop_assert!(mset_equiv(u, &capped, Threshold(hi)));
    prop_assert!(mset_equiv(u, &capped, Threshold(lo)));
    Ok(())
}

pub fn equivalence_relation(u: &Multiset, v: &Multiset, w: &Multiset, t: u64) -> Law {
    let t = Threshold(t);
    prop_assert!(mset_equiv(u, u, t));
    prop_assert_eq!(mset_equiv(u, v, t), mset_equiv(v, u, t));
    if mset_equiv(u, v, t) && mset_equiv(v, w, t) {
        prop_assert!(mset_equiv(u, w, t));
    }
    Ok(())
}

/// `u ≈ v` at level `t` is preserved by adding the same `x` to both.
pub fn additivity(u: &Multiset, v: &Multiset, x: &Multiset, t: u64) -> Law {
    prop_assume!(mset_equiv(u, v, Threshold(t)));
    prop_assert!(mset_equiv(&mset_sum(u, x), &mset_sum(v, x), Threshold(t)));
    Ok(())
}

pub fn scaling(u: &Multiset, t: u64, t1: u64, t2: u64) -> Law {
    let (t1, t2) = (t + t1, t + t2);
    prop_assert!(mset_equiv(&mset_scale(t1, u), &mset_scale(t2, u), Threshold(t)));
    Ok(())
}
