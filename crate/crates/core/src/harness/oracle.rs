//! Brute-force reference for the set of viable transitions.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::grammar::Grammar;
use crate::semantics::{check_viable, Direction, Mark, ViableTransition};
use crate::structure::{Configuration, RegionId};

/// Largest number of candidate functions the oracle will enumerate.
pub const ORACLE_LIMIT: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{candidates} candidate transitions exceed the oracle limit of {ORACLE_LIMIT}")]
pub struct InstanceTooLarge {
    pub candidates: u128,
}

/// Every partial function from membranes to (object, direction) over the
/// grammar's alphabet, kept when `check_viable` accepts it.
pub fn oracle_viable(
    g: &Grammar,
    c: &Configuration,
) -> Result<BTreeSet<ViableTransition>, InstanceTooLarge> {
    let edges: Vec<RegionId> = c.structure.edges().map(|(r, _)| r).collect();
    let mut values: Vec<Option<Mark>> = vec![None];
    for o in g.objects() {
        values.push(Some(Mark { object: o.clone(), direction: Direction::Up }));
        values.push(Some(Mark { object: o.clone(), direction: Direction::Down }));
    }
    let base = values.len() as u128;
    let candidates = (0..edges.len()).fold(1u128, |acc, _| acc.saturating_mul(base));
    if candidates > ORACLE_LIMIT as u128 {
        return Err(InstanceTooLarge { candidates });
    }

    let mut out = BTreeSet::new();
    let mut digits = vec![0usize; edges.len()];
    loop {
        let f: ViableTransition = edges
            .iter()
            .zip(&digits)
            .filter_map(|(&r, &d)| values[d].clone().map(|m| (r, m)))
            .collect();
        if check_viable(g, c, &f).is_ok() {
            out.insert(f);
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(out);
            }
            digits[i] += 1;
            if digits[i] < values.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}
