//! Direct check of the four viability conditions.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::{classify_in_pair, classify_pair, Direction, PairKind, ViableTransition};
use crate::grammar::Grammar;
use crate::multiset::ObjectId;
use crate::structure::{Configuration, RegionId};

/// The four viability conditions, numbered 0 to 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// Every mark names an applicable non-evolution pair (up) or in-pair (down);
    /// division only on elementary membranes.
    RuleExists = 0,
    /// A region never gives away more copies than it holds.
    Availability = 1,
    /// An unused membrane leaves no object that could have used it from inside.
    OuterMaximality = 2,
    /// An unused inner membrane leaves no object that could have entered it.
    InnerMaximality = 3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    /// Child region of the witnessing membrane, or the region itself for condition 1.
    pub region: RegionId,
    pub object: ObjectId,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "condition {} violated at {} for object {}: {}",
            self.condition as u8, self.region, self.object, self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ViabilityError {
    #[error("transition marks {0}, which is not a membrane of the configuration")]
    UnknownEdge(RegionId),
    #[error("{0}")]
    Violated(Violation),
}

impl ViabilityError {
    pub fn violation(&self) -> Option<&Violation> {
        match self {
            ViabilityError::Violated(v) => Some(v),
            ViabilityError::UnknownEdge(_) => None,
        }
    }
}

fn violated(
    condition: Condition,
    region: RegionId,
    object: &ObjectId,
    detail: String,
) -> ViabilityError {
    ViabilityError::Violated(Violation { condition, region, object: object.clone(), detail })
}

/// Checks the conditions in order 0..=3 and reports the first violation found.
///
/// Within one condition, membranes and regions are visited by ascending id.
pub fn check_viable(
    g: &Grammar,
    c: &Configuration,
    f: &ViableTransition,
) -> Result<(), ViabilityError> {
    let s = &c.structure;
    for (child, _) in f.iter() {
        if s.outer(child).is_none() {
            return Err(ViabilityError::UnknownEdge(child));
        }
    }

    // condition 0
    for (child, mark) in f.iter() {
        let label = s.label(child).expect("checked above");
        match mark.direction {
            Direction::Up => {
                let kind = classify_pair(g, &mark.object, label);
                if !kind.is_up_action() {
                    return Err(violated(
                        Condition::RuleExists,
                        child,
                        &mark.object,
                        format!("no dissolution, division or out rule for [{}]{label}", mark.object),
                    ));
                }
                if kind == PairKind::DivisionPair && !s.is_leaf(child) {
                    return Err(violated(
                        Condition::RuleExists,
                        child,
                        &mark.object,
                        format!("division rule on non-elementary membrane {label}"),
                    ));
                }
            }
            Direction::Down => {
                if classify_in_pair(g, &mark.object, label) != PairKind::InPair {
                    return Err(violated(
                        Condition::RuleExists,
                        child,
                        &mark.object,
                        format!("no in rule for []{label} {}", mark.object),
                    ));
                }
            }
        }
    }

    // usage[x][o]: copies of o taken from region x (down marks into x's children
    // plus the up mark on x's own membrane)
    let mut downs: BTreeMap<RegionId, BTreeMap<ObjectId, u64>> = BTreeMap::new();
    let mut ups: BTreeMap<RegionId, &ObjectId> = BTreeMap::new();
    for (child, mark) in f.iter() {
        match mark.direction {
            Direction::Up => {
                ups.insert(child, &mark.object);
            }
            Direction::Down => {
                let parent = s.parent(child).expect("checked above");
                *downs.entry(parent).or_default().entry(mark.object.clone()).or_default() += 1;
            }
        }
    }
    let down_count = |x: RegionId, o: &ObjectId| -> u64 {
        downs.get(&x).and_then(|m| m.get(o)).copied().unwrap_or(0)
    };
    let up_count = |x: RegionId, o: &ObjectId| -> u64 { u64::from(ups.get(&x) == Some(&o)) };

    // condition 1
    for x in s.regions() {
        for o in g.objects() {
            let used = down_count(x, o) + up_count(x, o);
            let have = c.contents(x).count(o);
            if used > have {
                return Err(violated(
                    Condition::Availability,
                    x,
                    o,
                    format!("{used} copies used but only {have} present"),
                ));
            }
        }
    }

    // condition 2
    for (x, edge) in s.edges() {
        if f.get(x).is_some() {
            continue;
        }
        for (o, have) in c.contents(x).iter() {
            if classify_pair(g, o, &edge.label).is_up_action() && down_count(x, o) != have {
                return Err(violated(
                    Condition::OuterMaximality,
                    x,
                    o,
                    format!(
                        "membrane {} unused while {} of {have} copies could use it",
                        edge.label,
                        have - down_count(x, o)
                    ),
                ));
            }
        }
    }

    // condition 3
    for (y, edge) in s.edges() {
        if f.get(y).is_some() {
            continue;
        }
        let x = edge.parent;
        let outer_label = s.label(x);
        for (o, have) in c.contents(x).iter() {
            if classify_in_pair(g, o, &edge.label) != PairKind::InPair {
                continue;
            }
            let evolves = outer_label
                .map(|l| classify_pair(g, o, l) == PairKind::EvolutionPair)
                .unwrap_or(false);
            let used = down_count(x, o) + up_count(x, o);
            if !evolves && used != have {
                return Err(violated(
                    Condition::InnerMaximality,
                    y,
                    o,
                    format!(
                        "inner membrane {} unused while {} of {have} copies in the parent are idle",
                        edge.label,
                        have - used
                    ),
                ));
            }
        }
    }
    Ok(())
}
