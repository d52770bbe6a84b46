//! Simulation of polarizationless P systems with active membranes, written as
//! membrane grammars, together with executable checks of the threshold
//! property: a terminating computation of `t` configurations, started from
//! its first configuration capped at `t` copies per object and region, ends in
//! a configuration that agrees with the original on which objects are present.
//!
//! The crate is organised bottom-up:
//!
//! * [`multiset`], [`structure`], [`grammar`]: value types and validation.
//! * [`semantics`]: viable transitions, the five-phase step and runs.
//! * [`threshold`]: capping and t-equivalence.
//! * [`harness`]: instance generation, the brute-force viability oracle and
//!   the theorem checks used by the fuzz campaigns.
//! * [`dsl`]: the `.mg` text format, JSON traces and DOT export.
//! * [`cli`]: the command implementations behind the `mgram` binary.

pub mod cli;
pub mod dsl;
pub mod grammar;
pub mod harness;
pub mod multiset;
pub mod semantics;
pub mod structure;
pub mod threshold;

pub use grammar::{validate_grammar, Grammar, GrammarError, Rule};
pub use multiset::{mset_diff, mset_scale, mset_sum, LabelId, Multiset, ObjectId, UndefinedDifference};
pub use semantics::{
    check_viable, choose_viable, classify_in_pair, classify_pair, enumerate_viable, is_halting,
    run, step, Direction, HaltStatus, Mark, PairKind, Policy, Trace, ViableTransition,
};
pub use structure::{validate_structure, Configuration, MembraneStructure, RegionId, StructureError};
pub use threshold::{config_equiv, config_threshold, mset_equiv, mset_threshold, Threshold};
