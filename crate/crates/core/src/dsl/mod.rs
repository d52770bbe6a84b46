//! Text formats: `.mg` instances, JSON traces and Graphviz export.

mod dot;
mod parse;
mod print;
mod trace;

use std::collections::BTreeMap;

pub use dot::{export_dot, export_dot_named, DotError};
pub use parse::{parse, Diagnostic, DiagnosticKind, Pos};
pub use print::{print_instance, region_name};
pub use trace::{load_trace, serialize_trace, SchemaError};

use crate::grammar::Grammar;
use crate::structure::{Configuration, RegionId};

/// Human-readable region names, as written in a `.mg` file.
pub type RegionNames = BTreeMap<RegionId, String>;

/// A grammar with a configuration, as stored in one `.mg` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub grammar: Grammar,
    pub config: Configuration,
    pub names: RegionNames,
}

impl Instance {
    /// Prints the instance in canonical `.mg` form.
    pub fn to_source(&self) -> String {
        print_instance(&self.grammar, &self.config, &self.names)
    }
}
