#![allow(dead_code)]

pub mod laws;

use std::collections::BTreeMap;
use std::path::PathBuf;

use membrane_grammar::semantics::{Mark, ViableTransition};
use membrane_grammar::{
    Configuration, Grammar, LabelId, MembraneStructure, Multiset, RegionId, Rule,
};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn corpus_file(name: &str) -> PathBuf {
    corpus_dir().join(name)
}

pub fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus dir")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "mg"))
        .collect();
    files.sort();
    files
}

pub fn m(word: &str) -> Multiset {
    Multiset::parse_word(word)
}

// Region ids of the worked example, in file (pre-)order.
pub const ENV: RegionId = RegionId(0);
pub const S: RegionId = RegionId(1);
pub const X1: RegionId = RegionId(2);
pub const X3: RegionId = RegionId(3);
pub const X4: RegionId = RegionId(4);
pub const X2: RegionId = RegionId(5);
pub const X5: RegionId = RegionId(6);
pub const X6: RegionId = RegionId(7);
/// Id handed to the copy created by the first division.
pub const X5_COPY: RegionId = RegionId(8);

pub fn example1_grammar() -> Grammar {
    let l = |s: &str| LabelId::new(s);
    let o = |s: &str| s.into();
    let rules = vec![
        Rule::Out { lhs: o("o1"), label: l("l1"), rhs: o("o2") },
        Rule::Dissolution { lhs: o("o2"), label: l("l1"), rhs: o("o1") },
        Rule::Out { lhs: o("o1"), label: l("l2"), rhs: o("o1") },
        Rule::Dissolution { lhs: o("o2"), label: l("l2"), rhs: o("o1") },
        Rule::In { label: l("l3"), lhs: o("o1"), rhs: o("o1") },
        Rule::In { label: l("l4"), lhs: o("o1"), rhs: o("o2") },
        Rule::Division { lhs: o("o1"), label: l("l5"), first: o("o2"), second: o("o1") },
        Rule::Evolution { lhs: o("o2"), label: l("l6"), rhs: m("o1 o1") },
    ];
    Grammar::new(
        rules,
        ["o1", "o2"].map(Into::into),
        ["l1", "l2", "l3", "l4", "l5", "l6"].map(LabelId::new),
    )
    .expect("valid grammar")
}

fn example1_structure() -> MembraneStructure {
    let (mut s, skin) = MembraneStructure::with_skin();
    let x1 = s.add_child(skin, LabelId::new("l1"));
    s.add_child(x1, LabelId::new("l3"));
    s.add_child(x1, LabelId::new("l4"));
    let x2 = s.add_child(skin, LabelId::new("l2"));
    s.add_child(x2, LabelId::new("l5"));
    s.add_child(x2, LabelId::new("l6"));
    s
}

pub fn config(structure: MembraneStructure, contents: &[(RegionId, &str)]) -> Configuration {
    let map: BTreeMap<RegionId, Multiset> = contents.iter().map(|&(r, w)| (r, m(w))).collect();
    Configuration::new(structure, map)
}

/// The initial configuration of the worked example.
pub fn example1_config() -> Configuration {
    config(
        example1_structure(),
        &[
            (X1, "o1 o1 o2"),
            (X2, "o1 o2 o2"),
            (X3, "o1 o2"),
            (X4, "o1 o2"),
            (X5, "o1 o1"),
            (X6, "o1 o2"),
        ],
    )
}

/// The transition drawn for the worked example.
pub fn example1_transition() -> ViableTransition {
    ViableTransition::empty()
        .with(X1, Mark::up("o1"))
        .with(X2, Mark::up("o2"))
        .with(X3, Mark::down("o1"))
        .with(X5, Mark::up("o1"))
}

/// Contents of every region, by id; empty regions are omitted.
pub fn contents_of(c: &Configuration) -> BTreeMap<RegionId, String> {
    c.all_contents()
        .filter(|(_, m)| !m.is_empty())
        .map(|(r, m)| (r, m.to_string()))
        .collect()
}

pub fn expect_contents(c: &Configuration, expected: &[(RegionId, &str)]) -> Result<(), String> {
    let want: BTreeMap<RegionId, String> = expected
        .iter()
        .filter(|(_, w)| !w.is_empty())
        .map(|&(r, w)| (r, m(w).to_string()))
        .collect();
    let got = contents_of(c);
    if got == want {
        Ok(())
    } else {
        Err(format!("contents differ: got {got:?}, want {want:?}"))
    }
}

/// (child, parent, label) for every membrane.
pub fn edges_of(c: &Configuration) -> Vec<(RegionId, RegionId, String)> {
    c.structure
        .edges()
        .map(|(r, e)| (r, e.parent, e.label.to_string()))
        .collect()
}

pub fn example1_edges() -> Vec<(RegionId, RegionId, String)> {
    vec![
        (S, ENV, "skin".into()),
        (X1, S, "l1".into()),
        (X3, X1, "l3".into()),
        (X4, X1, "l4".into()),
        (X2, S, "l2".into()),
        (X5, X2, "l5".into()),
        (X6, X2, "l6".into()),
    ]
}

pub fn sorted(mut v: Vec<(RegionId, RegionId, String)>) -> Vec<(RegionId, RegionId, String)> {
    v.sort();
    v
}

// Expected states after each sub-step of the worked step.
pub const AFTER_ATTACHMENT: &[(RegionId, &str)] = &[
    (X1, "o2"),
    (X2, "o1 o2"),
    (X3, "o1 o2"),
    (X4, "o1 o2"),
    (X5, "o1"),
    (X6, "o1 o2"),
];
pub const AFTER_EVOLUTION: &[(RegionId, &str)] = &[
    (X1, "o2"),
    (X2, "o1 o2"),
    (X3, "o1 o2"),
    (X4, "o1 o2"),
    (X5, "o1"),
    (X6, "o1 o1 o1"),
];
pub const AFTER_MOVEMENT: &[(RegionId, &str)] = &[
    (S, "o2"),
    (X1, "o2"),
    (X2, "o1 o2"),
    (X3, "o1 o1 o2"),
    (X4, "o1 o2"),
    (X5, "o1"),
    (X6, "o1 o1 o1"),
];
pub const AFTER_DISSOLUTION: &[(RegionId, &str)] = &[
    (S, "o1 o1 o2 o2"),
    (X1, "o2"),
    (X3, "o1 o1 o2"),
    (X4, "o1 o2"),
    (X5, "o1"),
    (X6, "o1 o1 o1"),
];
pub const AFTER_DIVISION: &[(RegionId, &str)] = &[
    (S, "o1 o1 o2 o2"),
    (X1, "o2"),
    (X3, "o1 o1 o2"),
    (X4, "o1 o2"),
    (X5, "o1 o2"),
    (X5_COPY, "o1 o1"),
    (X6, "o1 o1 o1"),
];

pub fn edges_after_dissolution() -> Vec<(RegionId, RegionId, String)> {
    sorted(vec![
        (S, ENV, "skin".into()),
        (X1, S, "l1".into()),
        (X3, X1, "l3".into()),
        (X4, X1, "l4".into()),
        (X5, S, "l5".into()),
        (X6, S, "l6".into()),
    ])
}

pub fn edges_after_division() -> Vec<(RegionId, RegionId, String)> {
    let mut e = edges_after_dissolution();
    e.push((X5_COPY, S, "l5".into()));
    sorted(e)
}

/// The configuration drawn for the threshold illustration, and its cap at 1.
pub fn threshold_example() -> (Configuration, Configuration) {
    let build = |contents: &[(RegionId, &str)]| {
        let (mut s, skin) = MembraneStructure::with_skin();
        let x1 = s.add_child(skin, LabelId::new("l1"));
        s.add_child(x1, LabelId::new("l2"));
        s.add_child(x1, LabelId::new("l3"));
        config(s, contents)
    };
    let c = build(&[
        (RegionId(1), "o1 o1 o1"),
        (RegionId(2), "o1 o2"),
        (RegionId(3), "o2 o2"),
        (RegionId(4), "o1 o1 o2"),
    ]);
    let c1 = build(&[
        (RegionId(1), "o1"),
        (RegionId(2), "o1 o2"),
        (RegionId(3), "o2"),
        (RegionId(4), "o1 o2"),
    ]);
    (c, c1)
}
