//! Caps a configuration at t and shows how far the copy stays equivalent.
//!
//!     cargo run --example threshold_capping [file.mg]

use membrane_grammar::dsl::{parse, region_name};
use membrane_grammar::threshold::{first_inequivalence, smallest_separating_threshold};
use membrane_grammar::{config_equiv, config_threshold, Threshold};

fn main() {
    let text = match std::env::args().nth(1) {
        Some(p) => std::fs::read_to_string(p).expect("readable file"),
        None => include_str!("../corpus/threshold_example.mg").to_string(),
    };
    let inst = parse(&text).unwrap_or_else(|d| panic!("{d}"));
    let c = &inst.config;

    for t in 1..=3 {
        let capped = config_threshold(c, Threshold(t));
        println!("t = {t}");
        for r in c.structure.regions() {
            if !c.contents(r).is_empty() {
                println!("  {:<4} {:<16} -> {}", region_name(&inst.names, r), c.contents(r), capped.contents(r));
            }
        }
        for level in 1..=t + 1 {
            println!("  equivalent at {level}: {}", config_equiv(c, &capped, Threshold(level)));
        }
        if let Some(d) = first_inequivalence(c, &capped, Threshold(t + 1)) {
            println!("  first difference at {}: {d:?}", t + 1);
        }
        println!("  smallest separating t: {:?}", smallest_separating_threshold(c, &capped));
    }
}
