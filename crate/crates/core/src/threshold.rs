//! Thresholds on multisets and configurations, and t-equivalence.

use crate::multiset::Multiset;
use crate::structure::{Configuration, RegionId};
use crate::ObjectId;

/// Cap applied to every object count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Threshold(pub u64);

impl Threshold {
    pub fn get(self) -> u64 {
        self.0
    }
}

impl From<u64> for Threshold {
    fn from(t: u64) -> Self {
        Threshold(t)
    }
}

/// `w|_t`: every count replaced by `min(count, t)`.
pub fn mset_threshold(w: &Multiset, t: Threshold) -> Multiset {
    w.threshold(t.0)
}

/// Same structure, each region's contents capped at `t`.
pub fn config_threshold(c: &Configuration, t: Threshold) -> Configuration {
    let mut out = c.clone();
    for (r, m) in c.all_contents() {
        out.set_contents(r, m.threshold(t.0));
    }
    out
}

/// `u ≈_t v`.
pub fn mset_equiv(u: &Multiset, v: &Multiset, t: Threshold) -> bool {
    u.threshold(t.0) == v.threshold(t.0)
}

/// `c1 ≈_t c2`: identical region trees and t-equivalent contents everywhere.
pub fn config_equiv(c1: &Configuration, c2: &Configuration, t: Threshold) -> bool {
    first_inequivalence(c1, c2, t).is_none()
}

/// Why two configurations are not t-equivalent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inequivalence {
    Structure,
    Contents { region: RegionId, object: ObjectId, left: u64, right: u64 },
}

/// The first structural or per-region difference at level `t`, by ascending region and object.
pub fn first_inequivalence(
    c1: &Configuration,
    c2: &Configuration,
    t: Threshold,
) -> Option<Inequivalence> {
    if c1.structure != c2.structure {
        return Some(Inequivalence::Structure);
    }
    for r in c1.structure.regions() {
        let (a, b) = (c1.contents(r).threshold(t.0), c2.contents(r).threshold(t.0));
        if a != b {
            let object = a
                .objects()
                .chain(b.objects())
                .filter(|o| a.count(o) != b.count(o))
                .min()
                .expect("multisets differ")
                .clone();
            return Some(Inequivalence::Contents {
                region: r,
                left: c1.contents(r).count(&object),
                right: c2.contents(r).count(&object),
                object,
            });
        }
    }
    None
}

/// The smallest `t` at which the configurations are not t-equivalent.
///
/// `None` when they are equal (t-equivalent for every `t`). Differing
/// structures give `Some(0)`, since even `≈_0` requires equal trees.
pub fn smallest_separating_threshold(c1: &Configuration, c2: &Configuration) -> Option<u64> {
    if c1.structure != c2.structure {
        return Some(0);
    }
    c1.structure
        .regions()
        .flat_map(|r| {
            let (a, b) = (c1.contents(r), c2.contents(r));
            a.objects()
                .chain(b.objects())
                .filter_map(|o| {
                    let (x, y) = (a.count(o), b.count(o));
                    // counts x < y are told apart exactly from t = x + 1 on
                    (x != y).then(|| x.min(y) + 1)
                })
                .collect::<Vec<_>>()
        })
        .min()
}
