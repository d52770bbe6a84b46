use serde::{Deserialize, Serialize};

use super::{choose_viable, enumerate_viable, step, Policy, ViableTransition};
use crate::grammar::Grammar;
use crate::structure::Configuration;

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HaltStatus {
    /// No rule is applicable any more.
    Halted,
    /// The step budget (or a resource bound of `run_bounded`) was exhausted.
    StepLimit,
    /// No viable transition exists.
    Stuck,
}

/// Alternating configurations and the transitions between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub configs: Vec<Configuration>,
    pub transitions: Vec<ViableTransition>,
    pub halt_status: HaltStatus,
}

impl Trace {
    pub fn initial(&self) -> &Configuration {
        &self.configs[0]
    }

    pub fn last(&self) -> &Configuration {
        self.configs.last().expect("trace holds at least one configuration")
    }

    /// Number of configurations.
    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }
}

/// A configuration is halting when the empty transition is its only viable
/// transition and no present object has an evolution rule, so a step would
/// leave it unchanged.
pub fn is_halting(g: &Grammar, c: &Configuration) -> bool {
    let evolution_applicable = c.structure.edges().any(|(r, edge)| {
        c.contents(r).objects().any(|o| g.evolution(o, &edge.label).is_some())
    });
    if evolution_applicable {
        return false;
    }
    let e = enumerate_viable(g, c, 1);
    !e.cap_exceeded && e.transitions.len() == 1 && e.transitions[0].is_empty()
}

/// Bounds on configuration growth for `run_bounded`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunLimits {
    pub max_steps: usize,
    pub max_regions: usize,
    pub max_count: u64,
}

impl RunLimits {
    pub fn steps(max_steps: usize) -> Self {
        RunLimits { max_steps, max_regions: usize::MAX, max_count: u64::MAX }
    }
}

/// Runs from `c0` until the configuration halts, gets stuck or `max_steps` steps were taken.
pub fn run(g: &Grammar, c0: &Configuration, policy: Policy, max_steps: usize) -> Trace {
    run_bounded(g, c0, policy, RunLimits::steps(max_steps))
}

/// As `run`, but also stops with `StepLimit` once a configuration exceeds the
/// region or object-count bound.
pub fn run_bounded(g: &Grammar, c0: &Configuration, policy: Policy, limits: RunLimits) -> Trace {
    let mut configs = vec![c0.clone()];
    let mut transitions = Vec::new();
    let halt_status = loop {
        let current = configs.last().expect("nonempty");
        if is_halting(g, current) {
            break HaltStatus::Halted;
        }
        if transitions.len() >= limits.max_steps
            || current.region_count() > limits.max_regions
            || current.max_count() > limits.max_count
        {
            break HaltStatus::StepLimit;
        }
        let step_policy = match policy {
            Policy::Canonical => Policy::Canonical,
            Policy::Seeded(seed) => Policy::Seeded(step_seed(seed, transitions.len())),
        };
        let Some(f) = choose_viable(g, current, step_policy) else {
            break HaltStatus::Stuck;
        };
        let next = step(g, current, &f).expect("chosen transitions are viable");
        transitions.push(f);
        configs.push(next);
    };
    Trace { configs, transitions, halt_status }
}

fn step_seed(seed: u64, step: usize) -> u64 {
    seed ^ (step as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}
