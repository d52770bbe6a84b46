//! Executable checks of the one-step threshold theorem and its corollary for
//! terminating computations.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::dsl::{print_instance, RegionNames};
use crate::grammar::Grammar;
use crate::semantics::{
    check_viable, choose_viable, is_halting, step, HaltStatus, Policy, Trace, ViabilityError,
    ViableTransition,
};
use crate::structure::{Configuration, RegionId};
use crate::threshold::{config_equiv, config_threshold, first_inequivalence, Inequivalence, Threshold};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("transition {index} is not viable: {report}")]
    ViabilityBroken { index: usize, report: ViabilityError },
}

/// Replays `fs` from `c0`, re-checking viability before every step.
///
/// The halt status of the result describes the last configuration: halted,
/// stuck, or neither (`StepLimit`).
pub fn replay(g: &Grammar, c0: &Configuration, fs: &[ViableTransition]) -> Result<Trace, HarnessError> {
    let mut configs = vec![c0.clone()];
    for (index, f) in fs.iter().enumerate() {
        let current = configs.last().expect("nonempty");
        check_viable(g, current, f)
            .map_err(|report| HarnessError::ViabilityBroken { index, report })?;
        let next = step(g, current, f).expect("viability checked");
        configs.push(next);
    }
    let last = configs.last().expect("nonempty");
    let halt_status = if is_halting(g, last) {
        HaltStatus::Halted
    } else if choose_viable(g, last, Policy::Canonical).is_none() {
        HaltStatus::Stuck
    } else {
        HaltStatus::StepLimit
    };
    Ok(Trace { configs, transitions: fs.to_vec(), halt_status })
}

/// Self-contained description of a failing case in `.mg` form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reproducer {
    /// Grammar with the original configuration.
    pub original: String,
    /// Grammar with the thresholded or perturbed configuration.
    pub alternate: String,
    pub transitions: Vec<String>,
}

impl Reproducer {
    pub fn new(g: &Grammar, c: &Configuration, c_alt: &Configuration, fs: &[ViableTransition]) -> Self {
        let names = RegionNames::new();
        Reproducer {
            original: print_instance(g, c, &names),
            alternate: print_instance(g, c_alt, &names),
            transitions: fs.iter().map(|f| f.to_string()).collect(),
        }
    }

    pub fn for_step(g: &Grammar, c: &Configuration, c_alt: &Configuration, f: &ViableTransition) -> Self {
        Reproducer::new(g, c, c_alt, std::slice::from_ref(f))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// Number of steps taken when the mismatch was seen.
    pub step_index: usize,
    pub region: Option<RegionId>,
    pub object: Option<String>,
    /// Equivalence level that should have held.
    pub expected_level: u64,
    pub observed: String,
    pub reproducer: Reproducer,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Pass,
    Fail(Box<Failure>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub grammar_digest: String,
    pub seed: Option<u64>,
    pub t: u64,
    pub outcome: Outcome,
    /// Set by the one-step check when the results are (t-1)- but not t-equivalent.
    pub degrades: bool,
    pub elapsed: Duration,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

fn describe(d: &Inequivalence) -> (Option<RegionId>, Option<String>, String) {
    match d {
        Inequivalence::Structure => (None, None, "membrane structures differ".into()),
        Inequivalence::Contents { region, object, left, right } => (
            Some(*region),
            Some(object.to_string()),
            format!("{left} copies vs {right} copies"),
        ),
    }
}

/// One-step check: `f` must stay viable on `c1p` and the two successors must
/// be (t-1)-equivalent.
pub fn check_theorem1(
    g: &Grammar,
    c1: &Configuration,
    c1p: &Configuration,
    t: Threshold,
    f: &ViableTransition,
) -> Result<TheoremReport, HarnessError> {
    if g.has_in_rules() {
        return Err(HarnessError::PreconditionViolated("the grammar has in rules".into()));
    }
    check_theorem1_unchecked(g, c1, c1p, t, f)
}

/// `check_theorem1` without the in-rule precondition, for probing grammars
/// outside the theorem's hypothesis.
pub fn check_theorem1_unchecked(
    g: &Grammar,
    c1: &Configuration,
    c1p: &Configuration,
    t: Threshold,
    f: &ViableTransition,
) -> Result<TheoremReport, HarnessError> {
    let start = Instant::now();
    if t.get() == 0 {
        return Err(HarnessError::PreconditionViolated("threshold must be positive".into()));
    }
    if !config_equiv(c1, c1p, t) {
        return Err(HarnessError::PreconditionViolated(format!(
            "configurations are not {}-equivalent",
            t.get()
        )));
    }
    check_viable(g, c1, f).map_err(|report| HarnessError::ViabilityBroken { index: 0, report })?;

    let fail = |region, object, observed: String| {
        Outcome::Fail(Box::new(Failure {
            step_index: 0,
            region,
            object,
            expected_level: t.get() - 1,
            observed,
            reproducer: Reproducer::for_step(g, c1, c1p, f),
        }))
    };
    let mut degrades = false;
    let outcome = match check_viable(g, c1p, f) {
        Err(report) => {
            let region = report.violation().map(|v| v.region);
            let object = report.violation().map(|v| v.object.to_string());
            fail(region, object, format!("transition not viable on the alternate: {report}"))
        }
        Ok(()) => {
            let c2 = step(g, c1, f).expect("viable");
            let c2p = step(g, c1p, f).expect("viable");
            match first_inequivalence(&c2, &c2p, Threshold(t.get() - 1)) {
                Some(d) => {
                    let (region, object, observed) = describe(&d);
                    fail(region, object, observed)
                }
                None => {
                    degrades = !config_equiv(&c2, &c2p, t);
                    Outcome::Pass
                }
            }
        }
    };
    Ok(TheoremReport {
        grammar_digest: g.digest(),
        seed: None,
        t: t.get(),
        outcome,
        degrades,
        elapsed: start.elapsed(),
    })
}

/// Replays a halting trace of `t` configurations from its first configuration
/// capped at `t`, checking `C_i ≈_{t-i+1} C'_i` at every position (1-based `i`).
pub fn check_corollary1(g: &Grammar, trace: &Trace) -> Result<TheoremReport, HarnessError> {
    if g.has_in_rules() {
        return Err(HarnessError::PreconditionViolated("the grammar has in rules".into()));
    }
    if trace.halt_status != HaltStatus::Halted {
        return Err(HarnessError::PreconditionViolated(format!(
            "trace is not terminating ({:?})",
            trace.halt_status
        )));
    }
    if trace.configs.is_empty() || trace.transitions.len() + 1 != trace.configs.len() {
        return Err(HarnessError::PreconditionViolated("malformed trace".into()));
    }
    let start = Instant::now();
    let t = trace.configs.len() as u64;
    let first_alt = config_threshold(&trace.configs[0], Threshold(t));
    let mut alt = first_alt.clone();
    let mut outcome = Outcome::Pass;
    for (i, original) in trace.configs.iter().enumerate() {
        let level = t - i as u64;
        if i > 0 {
            let f = &trace.transitions[i - 1];
            match check_viable(g, &alt, f) {
                Ok(()) => alt = step(g, &alt, f).expect("viable"),
                Err(report) => {
                    outcome = Outcome::Fail(Box::new(Failure {
                        step_index: i - 1,
                        region: report.violation().map(|v| v.region),
                        object: report.violation().map(|v| v.object.to_string()),
                        expected_level: level + 1,
                        observed: format!("transition not viable on the capped run: {report}"),
                        reproducer: Reproducer::new(g, &trace.configs[0], &first_alt, &trace.transitions),
                    }));
                    break;
                }
            }
        }
        if let Some(d) = first_inequivalence(original, &alt, Threshold(level)) {
            let (region, object, observed) = describe(&d);
            outcome = Outcome::Fail(Box::new(Failure {
                step_index: i,
                region,
                object,
                expected_level: level,
                observed,
                reproducer: Reproducer::new(g, &trace.configs[0], &first_alt, &trace.transitions),
            }));
            break;
        }
    }
    Ok(TheoremReport {
        grammar_digest: g.digest(),
        seed: None,
        t,
        outcome,
        degrades: false,
        elapsed: start.elapsed(),
    })
}
