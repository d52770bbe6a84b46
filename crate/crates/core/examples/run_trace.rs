//! Runs a computation, writes the JSON trace and reads it back.
//!
//!     cargo run --example run_trace [file.mg] [seed]

use membrane_grammar::dsl::{load_trace, parse, serialize_trace};
use membrane_grammar::semantics::{run, Policy};

fn main() {
    let mut args = std::env::args().skip(1);
    let text = match args.next() {
        Some(p) => std::fs::read_to_string(p).expect("readable file"),
        None => include_str!("../corpus/divide_leaf.mg").to_string(),
    };
    let policy = match args.next() {
        Some(s) => Policy::Seeded(s.parse().expect("numeric seed")),
        None => Policy::Canonical,
    };
    let inst = parse(&text).unwrap_or_else(|d| panic!("{d}"));
    let trace = run(&inst.grammar, &inst.config, policy, 6);

    for (i, c) in trace.configs.iter().enumerate() {
        let regions: Vec<String> = c.all_contents().map(|(r, m)| format!("{r}={m}")).collect();
        println!("C{}: {}", i + 1, regions.join(" "));
        if let Some(f) = trace.transitions.get(i) {
            println!("    {f}");
        }
    }
    println!("halt status: {:?}", trace.halt_status);

    let json = serialize_trace(&trace);
    let back = load_trace(&json).expect("round trip");
    assert_eq!(back, trace);
    println!("trace JSON: {} bytes, reloads identically", json.len());
}
