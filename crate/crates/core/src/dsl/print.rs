use std::collections::BTreeSet;
use std::fmt::Write;

use super::RegionNames;
use crate::grammar::Grammar;
use crate::structure::{Configuration, RegionId};

/// Name of `r` in `names`, or `r<id>` for unnamed regions (e.g. created by division).
pub fn region_name(names: &RegionNames, r: RegionId) -> String {
    match names.get(&r) {
        Some(n) => n.clone(),
        None => {
            let taken: BTreeSet<&str> = names.values().map(String::as_str).collect();
            let mut n = format!("r{}", r.0);
            while taken.contains(n.as_str()) {
                n.push('_');
            }
            n
        }
    }
}

/// Canonical `.mg` text: fixed section order, regions in pre-order with
/// children by ascending id, contents only for nonempty regions.
pub fn print_instance(g: &Grammar, c: &Configuration, names: &RegionNames) -> String {
    let mut out = String::new();
    let objects: Vec<&str> = g.objects().iter().map(|o| o.as_str()).collect();
    let labels: Vec<&str> = g.labels().iter().filter(|l| !l.is_skin()).map(|l| l.as_str()).collect();
    writeln!(out, "objects: {}", objects.join(" ")).unwrap();
    writeln!(out, "labels: {}", labels.join(" ")).unwrap();
    out.push_str("rules:\n");
    for r in g.rules() {
        writeln!(out, "  {r}").unwrap();
    }

    let s = &c.structure;
    let children = s.children_map();
    let mut tree = String::new();
    fn emit(
        tree: &mut String,
        r: RegionId,
        children: &std::collections::BTreeMap<RegionId, Vec<RegionId>>,
        c: &Configuration,
        names: &RegionNames,
    ) {
        let kids = &children[&r];
        if kids.is_empty() {
            return;
        }
        tree.push_str(" {");
        for &k in kids {
            let label = c.structure.label(k).expect("child has a membrane");
            write!(tree, " {label} {}", region_name(names, k)).unwrap();
            emit(tree, k, children, c, names);
        }
        tree.push_str(" }");
    }
    tree.push_str(&region_name(names, s.root()));
    emit(&mut tree, s.root(), &children, c, names);
    writeln!(out, "structure:\n  {tree}").unwrap();

    out.push_str("contents:\n");
    for r in preorder(c) {
        let m = c.contents(r);
        if !m.is_empty() {
            writeln!(out, "  {} = {m}", region_name(names, r)).unwrap();
        }
    }
    out
}

fn preorder(c: &Configuration) -> Vec<RegionId> {
    let children = c.structure.children_map();
    let mut order = Vec::new();
    let mut stack = vec![c.structure.root()];
    while let Some(r) = stack.pop() {
        order.push(r);
        stack.extend(children[&r].iter().rev());
    }
    order
}
