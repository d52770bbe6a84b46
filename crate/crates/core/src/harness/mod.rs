//! Instance generation, the brute-force viability oracle and executable
//! checks of the threshold theorem and its corollary.

mod campaign;
mod gen;
mod oracle;
mod theorem;

pub use campaign::{
    corollary1_campaign, oracle_campaign, theorem1_campaign, CampaignOptions, CampaignSummary,
    FailureRecord,
};
pub use gen::{gen_halting_run, gen_instance, mix_seed, perturb, GenParams, HaltingRun, RuleDensity};
pub use oracle::{oracle_viable, InstanceTooLarge, ORACLE_LIMIT};
pub use theorem::{
    check_corollary1, check_theorem1, check_theorem1_unchecked, replay, Failure, HarnessError,
    Outcome, Reproducer, TheoremReport,
};
