mod common;

use common::*;
use membrane_grammar::dsl::parse;
use membrane_grammar::harness::{gen_instance, GenParams};
use membrane_grammar::semantics::{
    apply_attachment, apply_dissolution, apply_division, apply_evolution, apply_movement,
    check_viable, choose_viable, classify_in_pair, classify_pair, enumerate_viable, is_halting,
    run, step, Condition, HaltStatus, Mark, PairKind, Policy, StepError, ViabilityError,
    ViableTransition,
};
use membrane_grammar::{
    validate_structure, Configuration, Grammar, LabelId, MembraneStructure, RegionId, Rule,
};
use proptest::prelude::*;

#[test]
fn parsed_worked_example_matches_hand_built() {
    let text = std::fs::read_to_string(corpus_file("example1.mg")).unwrap();
    let inst = parse(&text).unwrap();
    assert_eq!(inst.grammar, example1_grammar());
    assert_eq!(inst.config, example1_config());
    assert_eq!(inst.grammar.action_index().len(), 6);
    assert_eq!(inst.grammar.in_index().len(), 2);
}

#[test]
fn pair_classification() {
    let g = example1_grammar();
    let l = LabelId::new;
    assert_eq!(classify_pair(&g, &"o1".into(), &l("l1")), PairKind::OutPair);
    assert_eq!(classify_pair(&g, &"o2".into(), &l("l1")), PairKind::DissolutionPair);
    assert_eq!(classify_pair(&g, &"o1".into(), &l("l5")), PairKind::DivisionPair);
    assert_eq!(classify_pair(&g, &"o2".into(), &l("l6")), PairKind::EvolutionPair);
    assert_eq!(classify_pair(&g, &"o2".into(), &l("l5")), PairKind::None);
    assert_eq!(classify_in_pair(&g, &"o1".into(), &l("l3")), PairKind::InPair);
    assert_eq!(classify_in_pair(&g, &"o2".into(), &l("l3")), PairKind::None);
    assert_eq!(classify_pair(&g, &"o1".into(), &l("l3")), PairKind::None);
}

#[test]
fn drawn_transition_is_viable_and_enumerated() {
    let (g, c, f) = (example1_grammar(), example1_config(), example1_transition());
    check_viable(&g, &c, &f).unwrap();
    let all = enumerate_viable(&g, &c, 1000);
    assert!(all.is_exhaustive());
    assert!(all.transitions.contains(&f));
    for t in &all.transitions {
        check_viable(&g, &c, t).unwrap();
    }
    let mut sorted = all.transitions.clone();
    sorted.sort();
    assert_eq!(sorted, all.transitions);
}

#[test]
fn lone_up_mark_fails_outer_maximality_at_x2() {
    let (g, c) = (example1_grammar(), example1_config());
    let f = ViableTransition::empty().with(X1, Mark::up("o1"));
    let err = check_viable(&g, &c, &f).unwrap_err();
    let v = err.violation().expect("a violation");
    assert_eq!(v.condition, Condition::OuterMaximality);
    assert_eq!(v.region, X2);
}

#[test]
fn viability_conditions_each_fire() {
    let (g, c) = (example1_grammar(), example1_config());
    let base = example1_transition();
    let cond = |f: &ViableTransition| check_viable(&g, &c, f).unwrap_err().violation().unwrap().condition;

    // no rule for (o2, l5)
    assert_eq!(cond(&base.clone().with(X5, Mark::up("o2"))), Condition::RuleExists);
    // division on a membrane that is not elementary
    let g2 = Grammar::new(
        vec![Rule::Division { lhs: "a".into(), label: LabelId::new("m"), first: "a".into(), second: "a".into() }],
        ["a".into()],
        [LabelId::new("m")],
    )
    .unwrap();
    let text = "objects: a\nlabels: m\nstructure: e { skin s { m x { m y } } }\ncontents:\n x = a\n";
    let c2 = parse(text).unwrap().config;
    let err = check_viable(&g2, &c2, &ViableTransition::empty().with(X1, Mark::up("a"))).unwrap_err();
    assert_eq!(err.violation().unwrap().condition, Condition::RuleExists);
    // x1 holds two o1, already taken by l1 and l3
    let greedy = base.clone().with(X4, Mark::down("o1"));
    assert_eq!(cond(&greedy), Condition::Availability);
    // leaving x4 unmarked while x1 still holds an o1 that could enter it
    let lazy = ViableTransition::empty()
        .with(X2, Mark::up("o2"))
        .with(X3, Mark::down("o1"))
        .with(X5, Mark::up("o1"));
    assert_eq!(cond(&lazy), Condition::OuterMaximality);
    let err = check_viable(&g, &c, &ViableTransition::empty().with(RegionId(99), Mark::up("o1")));
    assert!(matches!(err, Err(ViabilityError::UnknownEdge(_))));
}

#[test]
fn inner_maximality_fires_when_an_in_object_idles() {
    let text = "objects: a\nlabels: m\nrules:\n []m a -> [a]m\nstructure: e { skin s { m x } }\ncontents:\n s = a\n";
    let inst = parse(text).unwrap();
    let err = check_viable(&inst.grammar, &inst.config, &ViableTransition::empty()).unwrap_err();
    assert_eq!(err.violation().unwrap().condition, Condition::InnerMaximality);
    let ok = ViableTransition::empty().with(RegionId(2), Mark::down("a"));
    check_viable(&inst.grammar, &inst.config, &ok).unwrap();
}

#[test]
fn worked_step_sub_step_by_sub_step() {
    let (g, c, f) = (example1_grammar(), example1_config(), example1_transition());
    let c1 = apply_attachment(&c, &f);
    expect_contents(&c1, AFTER_ATTACHMENT).unwrap();
    assert_eq!(edges_of(&c1), edges_of(&c));
    let c2 = apply_evolution(&g, &c1);
    expect_contents(&c2, AFTER_EVOLUTION).unwrap();
    let c3 = apply_movement(&g, &c2, &f);
    expect_contents(&c3, AFTER_MOVEMENT).unwrap();
    assert_eq!(sorted(edges_of(&c3)), sorted(example1_edges()));
    let c4 = apply_dissolution(&g, &c3, &f);
    expect_contents(&c4, AFTER_DISSOLUTION).unwrap();
    assert_eq!(sorted(edges_of(&c4)), edges_after_dissolution());
    let c5 = apply_division(&g, &c4, &f);
    expect_contents(&c5, AFTER_DIVISION).unwrap();
    assert_eq!(sorted(edges_of(&c5)), edges_after_division());
    assert_eq!(step(&g, &c, &f).unwrap(), c5);
    validate_structure(&c5.structure).unwrap();
}

#[test]
fn step_rejects_non_viable() {
    let (g, c) = (example1_grammar(), example1_config());
    let f = ViableTransition::empty().with(X1, Mark::up("o1"));
    assert!(matches!(step(&g, &c, &f), Err(StepError::NotViable(_))));
}

#[test]
fn empty_transition_on_inert_configuration_is_identity() {
    let text = "objects: a\nlabels: m\nstructure: e { skin s { m x } }\ncontents:\n x = a a\n s = a\n";
    let inst = parse(text).unwrap();
    let next = step(&inst.grammar, &inst.config, &ViableTransition::empty()).unwrap();
    assert_eq!(next, inst.config);
    assert!(is_halting(&inst.grammar, &inst.config));
}

#[test]
fn halting_examples() {
    let (g, c) = (example1_grammar(), example1_config());
    assert!(!is_halting(&g, &c));
    let empty = Configuration::empty(MembraneStructure::with_skin().0);
    assert!(is_halting(&g, &empty));
    let text = "objects: a\nlabels: l\nrules:\n [a]l -> [a]l\nstructure: e { skin s { l x } }\ncontents:\n x = a\n";
    let inst = parse(text).unwrap();
    assert!(!is_halting(&inst.grammar, &inst.config));
}

#[test]
fn run_examples() {
    let (g, c) = (example1_grammar(), example1_config());
    let t = run(&g, &c, Policy::Canonical, 1);
    assert_eq!(t.configs.len(), 2);
    assert_eq!(t.transitions.len(), 1);
    assert_ne!(t.halt_status, HaltStatus::Halted);

    let empty = Configuration::empty(MembraneStructure::with_skin().0);
    let t = run(&g, &empty, Policy::Canonical, 10);
    assert_eq!((t.configs.len(), t.halt_status), (1, HaltStatus::Halted));

    let text = "objects: a\nlabels: l\nrules:\n [a]l -> [a]l\nstructure: e { skin s { l x } }\ncontents:\n x = a\n";
    let inst = parse(text).unwrap();
    let t = run(&inst.grammar, &inst.config, Policy::Canonical, 5);
    assert_eq!(t.configs.len(), 6);
    assert_eq!(t.halt_status, HaltStatus::StepLimit);
    assert!(t.configs.iter().all(|k| k == &inst.config));

    let text = std::fs::read_to_string(corpus_file("stuck_division.mg")).unwrap();
    let inst = parse(&text).unwrap();
    let t = run(&inst.grammar, &inst.config, Policy::Canonical, 5);
    assert_eq!((t.configs.len(), t.halt_status), (1, HaltStatus::Stuck));
}

#[test]
fn dissolution_cascades_deepest_first() {
    let text = std::fs::read_to_string(corpus_file("dissolve_chain.mg")).unwrap();
    let inst = parse(&text).unwrap();
    let f = choose_viable(&inst.grammar, &inst.config, Policy::Canonical).unwrap();
    assert_eq!(f.len(), 3);
    let next = step(&inst.grammar, &inst.config, &f).unwrap();
    assert_eq!(next.structure.region_count(), 2);
    expect_contents(&next, &[(S, "b b b")]).unwrap();
}

#[test]
fn canonical_choice_is_first_enumerated() {
    let (g, c) = (example1_grammar(), example1_config());
    let first = enumerate_viable(&g, &c, 1).transitions;
    assert_eq!(choose_viable(&g, &c, Policy::Canonical), first.first().cloned());
}

fn small_params(seed: u64, allow_in_rules: bool) -> GenParams {
    GenParams { allow_in_rules, seed, ..GenParams::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn found_transitions_are_viable(seed in any::<u64>(), in_rules in any::<bool>(), pick in any::<u64>()) {
        let (g, c) = gen_instance(&small_params(seed, in_rules));
        let all = enumerate_viable(&g, &c, 64);
        for f in &all.transitions {
            prop_assert!(check_viable(&g, &c, f).is_ok());
        }
        if let Some(f) = choose_viable(&g, &c, Policy::Seeded(pick)) {
            prop_assert!(check_viable(&g, &c, &f).is_ok());
        } else {
            prop_assert!(all.transitions.is_empty());
        }
    }

    #[test]
    fn step_keeps_the_tree_valid_and_counts_sound(seed in any::<u64>(), in_rules in any::<bool>()) {
        let (g, c) = gen_instance(&small_params(seed, in_rules));
        for f in enumerate_viable(&g, &c, 8).transitions {
            let after = apply_attachment(&c, &f);
            // attachment only ever removes objects
            for (r, m) in after.all_contents() {
                for (o, n) in m.iter() {
                    prop_assert!(n <= c.contents(r).count(o));
                }
            }
            let next = step(&g, &c, &f).unwrap();
            prop_assert!(validate_structure(&next.structure).is_ok());
            prop_assert!(next.validate().is_ok());
        }
    }

    #[test]
    fn inert_objects_survive(seed in any::<u64>()) {
        // an object no rule mentions is never lost, only merged upwards
        let (g, mut c) = gen_instance(&small_params(seed, false));
        let skin = c.structure.children(c.structure.root())[0];
        let regions: Vec<_> = c.structure.regions().filter(|&r| r != c.structure.root()).collect();
        for &r in &regions {
            c.contents_mut(r).add("inert".into(), 1);
        }
        if let Some(f) = choose_viable(&g, &c, Policy::Canonical) {
            let next = step(&g, &c, &f).unwrap();
            let total: u64 = next.all_contents().map(|(_, m)| m.count(&"inert".into())).sum();
            prop_assert_eq!(total, regions.len() as u64 + division_copies(&c, &next));
            prop_assert!(next.contents(skin).count(&"inert".into()) >= 1);
        }
    }
}

/// Number of inert objects duplicated by divisions: each new region copies its
/// sibling's inert objects.
fn division_copies(before: &Configuration, after: &Configuration) -> u64 {
    after
        .structure
        .regions()
        .filter(|r| !before.structure.contains(*r))
        .map(|r| after.contents(r).count(&"inert".into()))
        .sum()
}
