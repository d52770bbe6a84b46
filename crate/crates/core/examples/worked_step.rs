//! Applies one transition to the bundled worked example and prints the
//! configuration after each of the five sub-steps.
//!
//!     cargo run --example worked_step

use membrane_grammar::dsl::{parse, region_name, Instance};
use membrane_grammar::semantics::{
    apply_attachment, apply_dissolution, apply_division, apply_evolution, apply_movement,
    enumerate_viable, Mark, ViableTransition,
};
use membrane_grammar::{Configuration, RegionId};

fn show(title: &str, inst: &Instance, c: &Configuration) {
    println!("{title}");
    for r in c.structure.regions() {
        let label = c.structure.label(r).map_or("-".to_string(), |l| l.to_string());
        let parent = c.structure.parent(r).map_or("-".to_string(), |p| region_name(&inst.names, p));
        println!(
            "  {:<6} label {:<5} parent {:<4} {}",
            region_name(&inst.names, r),
            label,
            parent,
            c.contents(r)
        );
    }
}

fn main() {
    let inst = parse(include_str!("../corpus/example1.mg")).expect("bundled file parses");
    let (g, c) = (&inst.grammar, &inst.config);

    let id = |name: &str| -> RegionId {
        *inst.names.iter().find(|(_, n)| n.as_str() == name).expect("named region").0
    };
    let f = ViableTransition::empty()
        .with(id("x1"), Mark::up("o1"))
        .with(id("x2"), Mark::up("o2"))
        .with(id("x3"), Mark::down("o1"))
        .with(id("x5"), Mark::up("o1"));

    let all = enumerate_viable(g, c, 100).transitions;
    println!("{} viable transitions; using {f}", all.len());
    assert!(all.contains(&f));

    show("initial", &inst, c);
    let c = apply_attachment(c, &f);
    show("after attachment", &inst, &c);
    let c = apply_evolution(g, &c);
    show("after evolution", &inst, &c);
    let c = apply_movement(g, &c, &f);
    show("after movement", &inst, &c);
    let c = apply_dissolution(g, &c, &f);
    show("after dissolution", &inst, &c);
    let c = apply_division(g, &c, &f);
    show("after division", &inst, &c);
}
