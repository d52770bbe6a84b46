//! Checks the one-step threshold property and the terminating-run corollary on
//! random grammars, then shows that in rules break the one-step property.
//!
//!     cargo run --release --example theorem_campaign [trials] [jobs]

use membrane_grammar::harness::{
    corollary1_campaign, theorem1_campaign, CampaignOptions, GenParams,
};

fn main() {
    let mut args = std::env::args().skip(1);
    let trials = args.next().map_or(500, |s| s.parse().expect("numeric trials"));
    let jobs = args.next().map_or(4, |s| s.parse().expect("numeric jobs"));

    let opts = CampaignOptions { jobs, ..CampaignOptions::new(0, trials, GenParams::default()) };
    let one_step = theorem1_campaign(&opts).expect("no output dir");
    println!(
        "one-step: {} checks, {} failures, {} results exactly one level apart",
        one_step.checks, one_step.fail, one_step.sharpness_witnesses
    );
    let runs = corollary1_campaign(&opts, 30).expect("no output dir");
    println!("terminating runs: {} checked, {} failures", runs.checks, runs.fail);

    let with_in = CampaignOptions {
        params: GenParams { allow_in_rules: true, ..GenParams::default() },
        ..opts
    };
    let broken = theorem1_campaign(&with_in).expect("no output dir");
    println!("with in rules: {} of {} checks fail", broken.fail, broken.checks);
    if let Some(first) = broken.failures.first() {
        println!("first counterexample (trial {}, t = {}): {}", first.trial, first.t, first.failure.observed);
        println!("{}", first.failure.reproducer.original);
        println!("transitions: {:?}", first.failure.reproducer.transitions);
    }
}
