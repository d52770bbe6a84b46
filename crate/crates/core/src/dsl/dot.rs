use std::fmt::Write;

use thiserror::Error;

use super::{region_name, RegionNames};
use crate::semantics::ViableTransition;
use crate::structure::{Configuration, RegionId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DotError {
    #[error("transition marks {0}, which is not a membrane of the configuration")]
    UnknownEdge(RegionId),
}

/// Graphviz rendering with regions named by id.
pub fn export_dot(c: &Configuration, f: Option<&ViableTransition>) -> Result<String, DotError> {
    export_dot_named(c, f, &RegionNames::new())
}

/// One node per region labelled with its name and contents, one edge per
/// membrane pointing to the parent, labelled `l` or `l, o, ↑` when marked.
pub fn export_dot_named(
    c: &Configuration,
    f: Option<&ViableTransition>,
    names: &RegionNames,
) -> Result<String, DotError> {
    let s = &c.structure;
    if let Some(f) = f {
        if let Some((r, _)) = f.iter().find(|(r, _)| s.outer(*r).is_none()) {
            return Err(DotError::UnknownEdge(r));
        }
    }
    let mut out = String::from("digraph configuration {\n  rankdir=BT;\n  node [shape=circle];\n");
    for r in s.regions() {
        let name = if names.is_empty() { r.to_string() } else { region_name(names, r) };
        writeln!(out, "  n{} [label=\"{}\\n{}\"];", r.0, name, c.contents(r)).unwrap();
    }
    for (child, edge) in s.edges() {
        let label = match f.and_then(|f| f.get(child)) {
            Some(m) => format!("{}, {}, {}", edge.label, m.object, m.direction.arrow()),
            None => edge.label.to_string(),
        };
        writeln!(out, "  n{} -> n{} [label=\"{}\"];", child.0, edge.parent.0, label).unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}
