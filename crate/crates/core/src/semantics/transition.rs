use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::multiset::ObjectId;
use crate::structure::RegionId;

/// Direction an object uses a membrane in: `Up` from the child region, `Down` from the parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn arrow(self) -> &'static str {
        match self {
            Direction::Up => "↑",
            Direction::Down => "↓",
        }
    }
}

/// The object attached to one membrane and the side it comes from.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mark {
    pub object: ObjectId,
    pub direction: Direction,
}

impl Mark {
    pub fn up(object: impl Into<ObjectId>) -> Self {
        Mark { object: object.into(), direction: Direction::Up }
    }

    pub fn down(object: impl Into<ObjectId>) -> Self {
        Mark { object: object.into(), direction: Direction::Down }
    }
}

/// Partial assignment of marks to membranes, keyed by the membrane's child region.
///
/// Transitions are ordered lexicographically over membranes by ascending child
/// id, an unmarked membrane sorting before any mark, and marks by object name
/// with `Up` before `Down`. The empty transition is the smallest.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ViableTransition {
    marks: BTreeMap<RegionId, Mark>,
}

impl ViableTransition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn with(mut self, child: RegionId, mark: Mark) -> Self {
        self.marks.insert(child, mark);
        self
    }

    pub fn insert(&mut self, child: RegionId, mark: Mark) {
        self.marks.insert(child, mark);
    }

    pub fn get(&self, child: RegionId) -> Option<&Mark> {
        self.marks.get(&child)
    }

    pub fn is_empty(&self) -> bool {
        self.marks.is_empty()
    }

    pub fn len(&self) -> usize {
        self.marks.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (RegionId, &Mark)> + '_ {
        self.marks.iter().map(|(&r, m)| (r, m))
    }
}

impl FromIterator<(RegionId, Mark)> for ViableTransition {
    fn from_iter<I: IntoIterator<Item = (RegionId, Mark)>>(iter: I) -> Self {
        ViableTransition { marks: iter.into_iter().collect() }
    }
}

impl Ord for ViableTransition {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.marks.iter().peekable();
        let mut b = other.marks.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                // the side that runs out leaves the next membrane unmarked
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ka, ma)), Some((kb, mb))) => {
                    match ka.cmp(kb) {
                        // `other` is unmarked at `ka`
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => match ma.cmp(mb) {
                            Ordering::Equal => {
                                a.next();
                                b.next();
                            }
                            ord => return ord,
                        },
                    }
                }
            }
        }
    }
}

impl PartialOrd for ViableTransition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ViableTransition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (r, m)) in self.marks.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}: ({}, {})", m.object, m.direction.arrow())?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(entries: &[(u32, &str, Direction)]) -> ViableTransition {
        entries
            .iter()
            .map(|&(r, o, d)| (RegionId(r), Mark { object: o.into(), direction: d }))
            .collect()
    }

    #[test]
    fn canonical_order() {
        use Direction::*;
        let empty = ViableTransition::empty();
        let a = t(&[(1, "a", Up)]);
        let a_down = t(&[(1, "a", Down)]);
        let b = t(&[(1, "b", Up)]);
        let later = t(&[(2, "a", Up)]);
        let both = t(&[(1, "a", Up), (2, "a", Up)]);
        // unmarked edge 1 sorts before marked edge 1
        assert!(later < a);
        assert!(empty < later);
        assert!(a < a_down && a_down < b);
        assert!(a < both);
        let mut v = vec![both.clone(), b.clone(), empty.clone(), a.clone(), later.clone()];
        v.sort();
        assert_eq!(v, vec![empty, later, a, both, b]);
    }
}
