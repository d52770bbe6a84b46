//! Builds a grammar and configuration in code, prints it as a `.mg` file and
//! runs it to completion.
//!
//!     cargo run --example build_grammar

use std::collections::BTreeMap;

use membrane_grammar::dsl::{parse, print_instance, RegionNames};
use membrane_grammar::semantics::{run, Policy};
use membrane_grammar::{Configuration, Grammar, LabelId, MembraneStructure, Multiset, Rule};

fn main() {
    let cell = LabelId::new("cell");
    let rules = vec![
        // a grows until it divides the cell
        Rule::Evolution { lhs: "seed".into(), label: cell.clone(), rhs: Multiset::parse_word("a") },
        Rule::Division { lhs: "a".into(), label: cell.clone(), first: "b".into(), second: "b".into() },
        Rule::Out { lhs: "b".into(), label: cell.clone(), rhs: "done".into() },
        Rule::Out { lhs: "done".into(), label: LabelId::skin(), rhs: "done".into() },
    ];
    let g = Grammar::new(rules, ["seed", "a", "b", "done"].map(Into::into), [cell.clone()])
        .expect("valid grammar");

    let (mut s, skin) = MembraneStructure::with_skin();
    let x = s.add_child(skin, cell);
    let c = Configuration::new(s, BTreeMap::from([(x, Multiset::parse_word("seed"))]));

    let source = print_instance(&g, &c, &RegionNames::new());
    print!("{source}");
    assert_eq!(parse(&source).expect("printed form parses").config, c);

    let trace = run(&g, &c, Policy::Canonical, 20);
    println!("# {:?} after {} steps", trace.halt_status, trace.transitions.len());
    for (r, m) in trace.last().all_contents() {
        println!("#   {r}: {m}");
    }
}
