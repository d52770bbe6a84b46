//! Viable transitions and the maximally parallel computation step.

mod run;
mod search;
mod step;
mod transition;
mod viable;

pub use run::{is_halting, run, run_bounded, HaltStatus, RunLimits, Trace};
pub use search::{choose_viable, enumerate_viable, Enumeration, Policy};
pub use step::{
    apply_attachment, apply_dissolution, apply_division, apply_evolution, apply_movement, step,
    StepError,
};
pub use transition::{Direction, Mark, ViableTransition};
pub use viable::{check_viable, Condition, ViabilityError, Violation};

use crate::grammar::{Grammar, Rule};
use crate::multiset::{LabelId, ObjectId};

/// Which kind of rule, if any, has left-hand side `[o]l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairKind {
    EvolutionPair,
    DissolutionPair,
    DivisionPair,
    OutPair,
    InPair,
    None,
}

impl PairKind {
    /// Pairs that occupy the membrane from the inside (up marks).
    pub fn is_up_action(self) -> bool {
        matches!(self, PairKind::DissolutionPair | PairKind::DivisionPair | PairKind::OutPair)
    }
}

/// Classifies `(o, l)` through the action index (`[o]l`).
pub fn classify_pair(g: &Grammar, o: &ObjectId, l: &LabelId) -> PairKind {
    match g.action(o, l) {
        Some(Rule::Evolution { .. }) => PairKind::EvolutionPair,
        Some(Rule::Dissolution { .. }) => PairKind::DissolutionPair,
        Some(Rule::Division { .. }) => PairKind::DivisionPair,
        Some(Rule::Out { .. }) => PairKind::OutPair,
        Some(Rule::In { .. }) | None => PairKind::None,
    }
}

/// `InPair` if the grammar holds `[]l o -> [b]l`, otherwise `None`.
pub fn classify_in_pair(g: &Grammar, o: &ObjectId, l: &LabelId) -> PairKind {
    match g.in_rule(l, o) {
        Some(_) => PairKind::InPair,
        None => PairKind::None,
    }
}
