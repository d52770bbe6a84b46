//! Fuzz campaigns over generated instances.
//!
//! Trials are independent and run on a rayon pool; results are merged in
//! trial order, so a summary depends only on the options, never on `jobs`.

use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::gen::{gen_halting_run, gen_instance, mix_seed, perturb, GenParams};
use super::oracle::oracle_viable;
use super::theorem::{
    check_corollary1, check_theorem1, check_theorem1_unchecked, Failure, HarnessError, Outcome,
    Reproducer,
};
use crate::semantics::enumerate_viable;
use crate::threshold::{config_threshold, Threshold};

#[derive(Debug, Clone)]
pub struct CampaignOptions {
    pub seed: u64,
    pub trials: u64,
    pub jobs: usize,
    pub params: GenParams,
    /// Directory for witness and reproducer files; nothing is written when unset.
    pub out_dir: Option<PathBuf>,
}

impl CampaignOptions {
    pub fn new(seed: u64, trials: u64, params: GenParams) -> Self {
        CampaignOptions { seed, trials, jobs: 1, params, out_dir: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub trial: u64,
    pub seed: u64,
    pub t: u64,
    pub failure: Failure,
}

/// Merged campaign result, serialised as the JSON summary.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CampaignSummary {
    pub campaign: String,
    pub seed: u64,
    pub trials: u64,
    pub allow_in_rules: bool,
    /// Individual property checks performed.
    pub checks: u64,
    pub pass: u64,
    pub fail: u64,
    /// Instances without any viable transition, or rejected runs that got stuck.
    pub stuck: u64,
    /// Trials that produced no checkable instance.
    pub skipped: u64,
    /// One-step checks whose results were (t-1)- but not t-equivalent.
    pub sharpness_witnesses: u64,
    pub witness_paths: Vec<String>,
    /// The first few failures, in trial order.
    pub failures: Vec<FailureRecord>,
}

impl CampaignSummary {
    pub fn all_pass(&self) -> bool {
        self.fail == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }

    fn absorb(&mut self, t: TrialResult) {
        self.checks += t.checks;
        self.pass += t.pass;
        self.fail += t.fail;
        self.stuck += t.stuck;
        self.skipped += t.skipped;
        self.sharpness_witnesses += t.sharp;
        for f in t.failures {
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(f);
            }
        }
    }
}

const MAX_RECORDED_FAILURES: usize = 5;

/// Transitions checked per (instance, t).
const TRANSITIONS_PER_INSTANCE: usize = 16;

#[derive(Default)]
struct TrialResult {
    checks: u64,
    pass: u64,
    fail: u64,
    stuck: u64,
    skipped: u64,
    sharp: u64,
    sharp_witness: Option<Reproducer>,
    failures: Vec<FailureRecord>,
}

fn run_trials(opts: &CampaignOptions, trial: impl Fn(u64) -> TrialResult + Sync) -> Vec<TrialResult> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| (0..opts.trials).into_par_iter().map(&trial).collect())
}

fn write_reproducer(dir: &Path, stem: &str, rep: &Reproducer) -> std::io::Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let mut header = String::new();
    for (i, f) in rep.transitions.iter().enumerate() {
        header.push_str(&format!("# transition {}: {f}\n", i + 1));
    }
    let original = dir.join(format!("{stem}.mg"));
    let alternate = dir.join(format!("{stem}.alt.mg"));
    std::fs::write(&original, format!("{header}{}", rep.original))?;
    std::fs::write(&alternate, format!("{header}{}", rep.alternate))?;
    Ok(vec![original.display().to_string(), alternate.display().to_string()])
}

fn finish(
    mut summary: CampaignSummary,
    results: Vec<TrialResult>,
    opts: &CampaignOptions,
) -> std::io::Result<CampaignSummary> {
    let mut sharp = None;
    for r in results {
        if sharp.is_none() {
            sharp = r.sharp_witness.clone();
        }
        summary.absorb(r);
    }
    if let Some(dir) = &opts.out_dir {
        if let Some(rep) = &sharp {
            summary.witness_paths.extend(write_reproducer(dir, "sharpness", rep)?);
        }
        for (i, f) in summary.failures.clone().iter().enumerate() {
            let stem = format!("failure-{}-{}", summary.campaign, i);
            summary.witness_paths.extend(write_reproducer(dir, &stem, &f.failure.reproducer)?);
        }
    }
    Ok(summary)
}

/// One-step theorem on random instances: for every t in 1..=4, both the capped
/// configuration and a random t-perturbation are checked against up to 16
/// viable transitions of the original.
///
/// With `params.allow_in_rules` the in-rule hypothesis is dropped and failures
/// are counterexamples showing that it is needed.
pub fn theorem1_campaign(opts: &CampaignOptions) -> std::io::Result<CampaignSummary> {
    let allow_in = opts.params.allow_in_rules;
    let results = run_trials(opts, |trial| {
        let seed = mix_seed(opts.seed, trial);
        let (g, c1) = gen_instance(&opts.params.with_seed(seed));
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, u64::MAX));
        let mut out = TrialResult::default();
        let fs = enumerate_viable(&g, &c1, TRANSITIONS_PER_INSTANCE).transitions;
        if fs.is_empty() {
            out.stuck += 1;
            return out;
        }
        for t in 1..=4u64 {
            let t = Threshold(t);
            let alternates = [config_threshold(&c1, t), perturb(&c1, t, &mut rng)];
            for c1p in &alternates {
                for f in &fs {
                    let report = if allow_in {
                        check_theorem1_unchecked(&g, &c1, c1p, t, f)
                    } else {
                        check_theorem1(&g, &c1, c1p, t, f)
                    };
                    let report = match report {
                        Ok(r) => r,
                        Err(HarnessError::PreconditionViolated(_)) => {
                            out.skipped += 1;
                            continue;
                        }
                        Err(e) => panic!("enumerated transition rejected: {e}"),
                    };
                    out.checks += 1;
                    match report.outcome {
                        Outcome::Pass => {
                            out.pass += 1;
                            if report.degrades {
                                out.sharp += 1;
                                if out.sharp_witness.is_none() {
                                    out.sharp_witness = Some(Reproducer::for_step(&g, &c1, c1p, f));
                                }
                            }
                        }
                        Outcome::Fail(failure) => {
                            out.fail += 1;
                            if out.failures.is_empty() {
                                out.failures.push(FailureRecord { trial, seed, t: t.get(), failure: *failure });
                            }
                        }
                    }
                }
            }
        }
        out
    });
    let summary = CampaignSummary {
        campaign: "theorem1".into(),
        seed: opts.seed,
        trials: opts.trials,
        allow_in_rules: allow_in,
        ..Default::default()
    };
    finish(summary, results, opts)
}

/// Corollary on random halting runs of at most `max_steps` steps.
pub fn corollary1_campaign(opts: &CampaignOptions, max_steps: usize) -> std::io::Result<CampaignSummary> {
    let params = GenParams { allow_in_rules: false, ..opts.params.clone() };
    let results = run_trials(opts, |trial| {
        let seed = mix_seed(opts.seed, trial);
        let mut out = TrialResult::default();
        let Some(run) = gen_halting_run(&params.with_seed(seed), max_steps, 1, 1000) else {
            out.skipped += 1;
            return out;
        };
        out.stuck += run.stuck as u64;
        let report = check_corollary1(&run.grammar, &run.trace).expect("preconditions hold");
        out.checks += 1;
        match report.outcome {
            Outcome::Pass => out.pass += 1,
            Outcome::Fail(failure) => {
                out.fail += 1;
                out.failures.push(FailureRecord { trial, seed: run.seed, t: report.t, failure: *failure });
            }
        }
        out
    });
    let summary = CampaignSummary {
        campaign: "corollary1".into(),
        seed: opts.seed,
        trials: opts.trials,
        ..Default::default()
    };
    finish(summary, results, opts)
}

/// Differential test of the search against the brute-force oracle.
pub fn oracle_campaign(opts: &CampaignOptions) -> std::io::Result<CampaignSummary> {
    let results = run_trials(opts, |trial| {
        let seed = mix_seed(opts.seed, trial);
        let (g, c) = gen_instance(&opts.params.with_seed(seed));
        let mut out = TrialResult::default();
        let Ok(expected) = oracle_viable(&g, &c) else {
            out.skipped += 1;
            return out;
        };
        let found = enumerate_viable(&g, &c, usize::MAX);
        out.checks += 1;
        if expected.is_empty() {
            out.stuck += 1;
        }
        let same = found.is_exhaustive()
            && found.transitions.len() == expected.len()
            && found.transitions.iter().eq(expected.iter());
        if same {
            out.pass += 1;
        } else {
            out.fail += 1;
            let observed = format!(
                "search found {} transitions, oracle {}",
                found.transitions.len(),
                expected.len()
            );
            out.failures.push(FailureRecord {
                trial,
                seed,
                t: 0,
                failure: Failure {
                    step_index: 0,
                    region: None,
                    object: None,
                    expected_level: 0,
                    observed,
                    reproducer: Reproducer::for_step(&g, &c, &c, &crate::semantics::ViableTransition::empty()),
                },
            });
        }
        out
    });
    let summary = CampaignSummary {
        campaign: "oracle".into(),
        seed: opts.seed,
        trials: opts.trials,
        allow_in_rules: opts.params.allow_in_rules,
        ..Default::default()
    };
    finish(summary, results, opts)
}
