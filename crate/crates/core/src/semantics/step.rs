//! The five sub-steps of a computation step.

use thiserror::Error;

use super::{check_viable, Direction, ViabilityError, ViableTransition};
use crate::grammar::{Grammar, Rule};
use crate::multiset::Multiset;
use crate::structure::{Configuration, RegionId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("transition is not viable: {0}")]
    NotViable(#[from] ViabilityError),
}

/// Sub-step 1: removes every object that is attached to a membrane.
///
/// Panics if `f` takes more copies than a region holds, which a viable `f` never does.
pub fn apply_attachment(c: &Configuration, f: &ViableTransition) -> Configuration {
    let mut out = c.clone();
    for (child, mark) in f.iter() {
        let region = match mark.direction {
            Direction::Up => child,
            Direction::Down => c.structure.parent(child).expect("marked membrane exists"),
        };
        out.contents_mut(region)
            .remove(&mark.object, 1)
            .unwrap_or_else(|e| panic!("attachment on a non-viable transition at {region}: {e}"));
    }
    out
}

/// Sub-step 2: every object with an evolution rule on its region's outer label
/// is rewritten, all copies at once.
pub fn apply_evolution(g: &Grammar, c: &Configuration) -> Configuration {
    let mut out = c.clone();
    for (r, edge) in c.structure.edges() {
        let before = c.contents(r);
        let mut after = Multiset::new();
        let mut changed = false;
        for (o, n) in before.iter() {
            match g.evolution(o, &edge.label) {
                Some(rhs) => {
                    changed = true;
                    for (p, k) in rhs.iter() {
                        let total = n.checked_mul(k).expect("object count overflow");
                        after.add(p.clone(), total);
                    }
                }
                None => after.add(o.clone(), n),
            }
        }
        if changed {
            out.set_contents(r, after);
        }
    }
    out
}

/// Sub-step 3: out rules deliver their right-hand object to the parent, in rules
/// deliver theirs to the child.
pub fn apply_movement(g: &Grammar, c: &Configuration, f: &ViableTransition) -> Configuration {
    let mut out = c.clone();
    for (child, mark) in f.iter() {
        let Some(edge) = c.structure.outer(child) else { continue };
        match mark.direction {
            Direction::Up => {
                if let Some(Rule::Out { rhs, .. }) = g.action(&mark.object, &edge.label) {
                    out.contents_mut(edge.parent).add(rhs.clone(), 1);
                }
            }
            Direction::Down => {
                if let Some(Rule::In { rhs, .. }) = g.in_rule(&edge.label, &mark.object) {
                    out.contents_mut(child).add(rhs.clone(), 1);
                }
            }
        }
    }
    out
}

/// Sub-step 4: dissolves every membrane marked with a dissolution pair, deepest first.
///
/// The parent receives the region's contents plus the rule's object and adopts
/// its children with their labels.
pub fn apply_dissolution(g: &Grammar, c: &Configuration, f: &ViableTransition) -> Configuration {
    let mut out = c.clone();
    let mut marked: Vec<(usize, RegionId, Multiset)> = f
        .iter()
        .filter(|(_, m)| m.direction == Direction::Up)
        .filter_map(|(child, mark)| {
            let edge = c.structure.outer(child)?;
            match g.action(&mark.object, &edge.label) {
                Some(Rule::Dissolution { rhs, .. }) => {
                    let depth = c.structure.depth(child)?;
                    Some((depth, child, Multiset::from_word([rhs.clone()])))
                }
                _ => None,
            }
        })
        .collect();
    marked.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

    for (_, x, released) in marked {
        let y = out.structure.parent(x).expect("dissolved region still attached");
        let mut inherited = out.take_contents(x);
        inherited.add_all(&released);
        out.contents_mut(y).add_all(&inherited);
        for z in out.structure.children(x) {
            out.structure.set_parent(z, y);
        }
        out.structure.remove_region(x);
    }
    out
}

/// Sub-step 5: divides every membrane marked with a division pair.
///
/// The original region keeps its id and receives the first right-hand object;
/// a fresh sibling gets a copy of the contents plus the second one. Fresh ids
/// are issued in ascending order of the divided regions.
pub fn apply_division(g: &Grammar, c: &Configuration, f: &ViableTransition) -> Configuration {
    let mut out = c.clone();
    for (x, mark) in f.iter() {
        if mark.direction != Direction::Up {
            continue;
        }
        let Some(edge) = out.structure.outer(x).cloned() else { continue };
        let Some(Rule::Division { first, second, .. }) = g.action(&mark.object, &edge.label) else {
            continue;
        };
        debug_assert!(out.structure.is_leaf(x), "division of a non-elementary membrane");
        let residual = out.contents(x).clone();
        let twin = out.structure.add_child(edge.parent, edge.label.clone());
        let mut copy = residual.clone();
        copy.add(second.clone(), 1);
        out.set_contents(twin, copy);
        out.contents_mut(x).add(first.clone(), 1);
    }
    out
}

/// One computation step `c ⊢ c'` along a viable transition `f`.
pub fn step(g: &Grammar, c: &Configuration, f: &ViableTransition) -> Result<Configuration, StepError> {
    check_viable(g, c, f)?;
    let c1 = apply_attachment(c, f);
    let c2 = apply_evolution(g, &c1);
    let c3 = apply_movement(g, &c2, f);
    let c4 = apply_dissolution(g, &c3, f);
    Ok(apply_division(g, &c4, f))
}
