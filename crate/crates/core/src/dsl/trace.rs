//! JSON encoding of traces.
//!
//! ```json
//! { "configs": [ { "nodes": [ {"id": 0, "parent": null, "label": null, "contents": {}}, ... ],
//!                  "next_id": 8 } ],
//!   "transitions": [ [ {"child": 2, "object": "o1", "direction": "up"} ] ],
//!   "halt_status": "halted" }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::multiset::{LabelId, Multiset, ObjectId};
use crate::semantics::{Direction, HaltStatus, Mark, Trace, ViableTransition};
use crate::structure::{Configuration, Edge, MembraneStructure, RegionId};

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("malformed trace JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid trace: {0}")]
    Invalid(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TraceDoc {
    configs: Vec<ConfigDoc>,
    transitions: Vec<Vec<MarkDoc>>,
    halt_status: HaltStatus,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDoc {
    nodes: Vec<NodeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    next_id: Option<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    id: u32,
    parent: Option<u32>,
    label: Option<String>,
    contents: BTreeMap<String, u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MarkDoc {
    child: u32,
    object: String,
    direction: Direction,
}

fn config_doc(c: &Configuration) -> ConfigDoc {
    let s = &c.structure;
    let nodes = s
        .regions()
        .map(|r| NodeDoc {
            id: r.0,
            parent: s.parent(r).map(|p| p.0),
            label: s.label(r).map(|l| l.to_string()),
            contents: c.contents(r).iter().map(|(o, n)| (o.to_string(), n)).collect(),
        })
        .collect();
    ConfigDoc { nodes, next_id: Some(s.next_id()) }
}

fn config_from_doc(doc: ConfigDoc, index: usize) -> Result<Configuration, SchemaError> {
    let invalid = |msg: String| SchemaError::Invalid(format!("configuration {index}: {msg}"));
    let roots: Vec<&NodeDoc> = doc.nodes.iter().filter(|n| n.parent.is_none()).collect();
    let [root] = roots.as_slice() else {
        return Err(invalid(format!("expected one root node, found {}", roots.len())));
    };
    if root.label.is_some() {
        return Err(invalid("the root node carries no label".into()));
    }
    let root = RegionId(root.id);
    let mut edges = BTreeMap::new();
    let mut contents = BTreeMap::new();
    for n in &doc.nodes {
        let id = RegionId(n.id);
        if contents.contains_key(&id) {
            return Err(invalid(format!("duplicate node id {}", n.id)));
        }
        if let Some(p) = n.parent {
            let Some(label) = &n.label else {
                return Err(invalid(format!("node {} has a parent but no label", n.id)));
            };
            edges.insert(id, Edge { parent: RegionId(p), label: LabelId::new(label) });
        }
        let m: Multiset = n.contents.iter().map(|(o, &k)| (ObjectId::new(o), k)).collect();
        contents.insert(id, m);
    }
    let max_id = doc.nodes.iter().map(|n| n.id).max().unwrap_or(0);
    let next_id = doc.next_id.unwrap_or(max_id + 1);
    if next_id <= max_id {
        return Err(invalid(format!("next_id {next_id} does not exceed node id {max_id}")));
    }
    let structure = MembraneStructure::from_parts(root, edges, next_id);
    structure.validate().map_err(|e| invalid(e.to_string()))?;
    Ok(Configuration::new(structure, contents))
}

/// Pretty-printed JSON; byte-identical for equal traces.
pub fn serialize_trace(t: &Trace) -> String {
    let doc = TraceDoc {
        configs: t.configs.iter().map(config_doc).collect(),
        transitions: t
            .transitions
            .iter()
            .map(|f| {
                f.iter()
                    .map(|(child, m)| MarkDoc {
                        child: child.0,
                        object: m.object.to_string(),
                        direction: m.direction,
                    })
                    .collect()
            })
            .collect(),
        halt_status: t.halt_status,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("trace serializes");
    s.push('\n');
    s
}

pub fn load_trace(text: &str) -> Result<Trace, SchemaError> {
    let doc: TraceDoc = serde_json::from_str(text)?;
    if doc.configs.is_empty() {
        return Err(SchemaError::Invalid("a trace holds at least one configuration".into()));
    }
    if doc.transitions.len() + 1 != doc.configs.len() {
        return Err(SchemaError::Invalid(format!(
            "{} configurations need {} transitions, found {}",
            doc.configs.len(),
            doc.configs.len() - 1,
            doc.transitions.len()
        )));
    }
    let configs = doc
        .configs
        .into_iter()
        .enumerate()
        .map(|(i, c)| config_from_doc(c, i))
        .collect::<Result<Vec<_>, _>>()?;
    let mut transitions = Vec::new();
    for (i, marks) in doc.transitions.into_iter().enumerate() {
        let mut f = ViableTransition::empty();
        for m in marks {
            let child = RegionId(m.child);
            if f.get(child).is_some() {
                return Err(SchemaError::Invalid(format!(
                    "transition {i} marks membrane {child} twice"
                )));
            }
            f.insert(child, Mark { object: ObjectId::new(&m.object), direction: m.direction });
        }
        transitions.push(f);
    }
    Ok(Trace { configs, transitions, halt_status: doc.halt_status })
}
