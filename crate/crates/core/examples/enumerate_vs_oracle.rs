//! Lists the viable transitions of a configuration with the pruned search and
//! checks them against brute-force enumeration.
//!
//!     cargo run --example enumerate_vs_oracle [file.mg]

use membrane_grammar::dsl::parse;
use membrane_grammar::harness::oracle_viable;
use membrane_grammar::semantics::{choose_viable, enumerate_viable, Policy};

fn main() {
    let text = match std::env::args().nth(1) {
        Some(p) => std::fs::read_to_string(p).expect("readable file"),
        None => include_str!("../corpus/example1.mg").to_string(),
    };
    let inst = parse(&text).unwrap_or_else(|d| panic!("{d}"));
    let (g, c) = (&inst.grammar, &inst.config);

    let found = enumerate_viable(g, c, 10_000);
    for f in &found.transitions {
        println!("{f}");
    }
    println!("search: {} transitions (exhaustive: {})", found.transitions.len(), found.is_exhaustive());
    println!("canonical choice: {:?}", choose_viable(g, c, Policy::Canonical).map(|f| f.to_string()));
    println!("seeded choice:    {:?}", choose_viable(g, c, Policy::Seeded(7)).map(|f| f.to_string()));

    match oracle_viable(g, c) {
        Ok(expected) => {
            let same = found.transitions.iter().eq(expected.iter());
            println!("oracle: {} transitions, identical: {same}", expected.len());
        }
        Err(e) => println!("oracle skipped: {e}"),
    }
}
