//! Renders a configuration as Graphviz DOT with the canonical transition
//! marked on its membranes.
//!
//!     cargo run --example dot_export | dot -Tsvg > example.svg

use membrane_grammar::dsl::{export_dot_named, parse};
use membrane_grammar::semantics::{choose_viable, Policy};

fn main() {
    let text = match std::env::args().nth(1) {
        Some(p) => std::fs::read_to_string(p).expect("readable file"),
        None => include_str!("../corpus/example1.mg").to_string(),
    };
    let inst = parse(&text).unwrap_or_else(|d| panic!("{d}"));
    let f = choose_viable(&inst.grammar, &inst.config, Policy::Canonical);
    let dot = export_dot_named(&inst.config, f.as_ref(), &inst.names).expect("edges exist");
    print!("{dot}");
}
