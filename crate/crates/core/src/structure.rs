//! Membrane structures (edge-labelled rooted trees) and configurations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::multiset::{LabelId, Multiset};

/// Opaque region identifier, unique within one configuration.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RegionId(pub u32);

impl fmt::Debug for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}", self.0)
    }
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("parent map does not form a rooted tree: {0}")]
    NotATree(String),
    #[error("expected exactly one skin membrane below the environment, found {0}")]
    SkinEdgeCount(usize),
    #[error("membrane of region {0} is labelled skin but is not the depth-one membrane")]
    SkinLabelMisuse(RegionId),
}

/// Parent pointer and outer-membrane label of a non-root region.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub parent: RegionId,
    pub label: LabelId,
}

/// Rooted tree of regions; every non-root region owns the membrane to its parent.
///
/// Fresh identifiers come from a per-structure counter so that replaying the
/// same transitions yields the same identifiers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MembraneStructure {
    root: RegionId,
    edges: BTreeMap<RegionId, Edge>,
    next_id: u32,
}

impl MembraneStructure {
    /// A structure with only the environment and the skin region.
    pub fn with_skin() -> (Self, RegionId) {
        let mut s = MembraneStructure::root_only();
        let skin = s.add_child(s.root, LabelId::skin());
        (s, skin)
    }

    /// A single environment node; not valid on its own until a skin is attached.
    pub fn root_only() -> Self {
        MembraneStructure {
            root: RegionId(0),
            edges: BTreeMap::new(),
            next_id: 1,
        }
    }

    /// Assembles a structure from raw parts. No validation is done here.
    pub fn from_parts(root: RegionId, edges: BTreeMap<RegionId, Edge>, next_id: u32) -> Self {
        MembraneStructure { root, edges, next_id }
    }

    pub fn add_child(&mut self, parent: RegionId, label: LabelId) -> RegionId {
        let id = self.fresh_id();
        self.edges.insert(id, Edge { parent, label });
        id
    }

    pub fn fresh_id(&mut self) -> RegionId {
        let id = RegionId(self.next_id);
        self.next_id += 1;
        id
    }

    pub fn next_id(&self) -> u32 {
        self.next_id
    }

    pub fn root(&self) -> RegionId {
        self.root
    }

    /// All regions in ascending id order.
    pub fn regions(&self) -> impl Iterator<Item = RegionId> + '_ {
        let root = self.root;
        let mut ids: Vec<RegionId> = std::iter::once(root).chain(self.edges.keys().copied()).collect();
        ids.sort();
        ids.into_iter()
    }

    pub fn region_count(&self) -> usize {
        self.edges.len() + 1
    }

    pub fn contains(&self, r: RegionId) -> bool {
        r == self.root || self.edges.contains_key(&r)
    }

    /// Membranes keyed by their child region, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (RegionId, &Edge)> + '_ {
        self.edges.iter().map(|(&c, e)| (c, e))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn outer(&self, r: RegionId) -> Option<&Edge> {
        self.edges.get(&r)
    }

    pub fn parent(&self, r: RegionId) -> Option<RegionId> {
        self.edges.get(&r).map(|e| e.parent)
    }

    pub fn label(&self, r: RegionId) -> Option<&LabelId> {
        self.edges.get(&r).map(|e| &e.label)
    }

    /// Children of `r`, ascending.
    pub fn children(&self, r: RegionId) -> Vec<RegionId> {
        self.edges
            .iter()
            .filter(|(_, e)| e.parent == r)
            .map(|(&c, _)| c)
            .collect()
    }

    /// Children lists for every region in one pass.
    pub fn children_map(&self) -> BTreeMap<RegionId, Vec<RegionId>> {
        let mut out: BTreeMap<RegionId, Vec<RegionId>> = BTreeMap::new();
        for r in self.regions() {
            out.insert(r, Vec::new());
        }
        for (&c, e) in &self.edges {
            out.entry(e.parent).or_default().push(c);
        }
        out
    }

    pub fn is_leaf(&self, r: RegionId) -> bool {
        !self.edges.values().any(|e| e.parent == r)
    }

    /// Distance from the root; `None` if `r` is unknown or the parent chain is broken.
    pub fn depth(&self, r: RegionId) -> Option<usize> {
        let mut d = 0;
        let mut cur = r;
        while cur != self.root {
            cur = self.edges.get(&cur)?.parent;
            d += 1;
            if d > self.edges.len() {
                return None;
            }
        }
        Some(d)
    }

    pub(crate) fn set_parent(&mut self, child: RegionId, parent: RegionId) {
        if let Some(e) = self.edges.get_mut(&child) {
            e.parent = parent;
        }
    }

    pub(crate) fn remove_region(&mut self, r: RegionId) {
        self.edges.remove(&r);
    }

    /// Checks the tree shape and the unique skin membrane.
    pub fn validate(&self) -> Result<(), StructureError> {
        if self.edges.contains_key(&self.root) {
            return Err(StructureError::NotATree(format!("root {} has a parent", self.root)));
        }
        for (&c, e) in &self.edges {
            if !self.contains(e.parent) {
                return Err(StructureError::NotATree(format!(
                    "region {c} points to unknown parent {}",
                    e.parent
                )));
            }
            if c.0 >= self.next_id || self.root.0 >= self.next_id {
                return Err(StructureError::NotATree(format!(
                    "region {c} is not below the id counter {}",
                    self.next_id
                )));
            }
        }
        for &c in self.edges.keys() {
            if self.depth(c).is_none() {
                return Err(StructureError::NotATree(format!("region {c} lies on a cycle")));
            }
        }
        let depth_one: Vec<RegionId> = self
            .edges
            .iter()
            .filter(|(_, e)| e.parent == self.root)
            .map(|(&c, _)| c)
            .collect();
        if depth_one.len() != 1 {
            return Err(StructureError::SkinEdgeCount(depth_one.len()));
        }
        for (&c, e) in &self.edges {
            let top = e.parent == self.root;
            if top != e.label.is_skin() {
                return Err(if top {
                    StructureError::SkinEdgeCount(0)
                } else {
                    StructureError::SkinLabelMisuse(c)
                });
            }
        }
        Ok(())
    }
}

pub fn validate_structure(s: &MembraneStructure) -> Result<(), StructureError> {
    s.validate()
}

/// A membrane structure together with the contents of every region.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub structure: MembraneStructure,
    contents: BTreeMap<RegionId, Multiset>,
}

impl Configuration {
    /// Empty contents everywhere.
    pub fn empty(structure: MembraneStructure) -> Self {
        let contents = structure.regions().map(|r| (r, Multiset::new())).collect();
        Configuration { structure, contents }
    }

    /// Missing regions default to empty; entries for unknown regions are dropped.
    pub fn new(structure: MembraneStructure, contents: BTreeMap<RegionId, Multiset>) -> Self {
        let mut c = Configuration::empty(structure);
        for (r, m) in contents {
            if c.contents.contains_key(&r) {
                c.contents.insert(r, m);
            }
        }
        c
    }

    pub fn contents(&self, r: RegionId) -> &Multiset {
        static EMPTY: std::sync::OnceLock<Multiset> = std::sync::OnceLock::new();
        self.contents
            .get(&r)
            .unwrap_or_else(|| EMPTY.get_or_init(Multiset::new))
    }

    pub fn contents_mut(&mut self, r: RegionId) -> &mut Multiset {
        self.contents.entry(r).or_default()
    }

    pub fn set_contents(&mut self, r: RegionId, m: Multiset) {
        self.contents.insert(r, m);
    }

    pub(crate) fn take_contents(&mut self, r: RegionId) -> Multiset {
        self.contents.remove(&r).unwrap_or_default()
    }

    pub fn all_contents(&self) -> impl Iterator<Item = (RegionId, &Multiset)> + '_ {
        self.contents.iter().map(|(&r, m)| (r, m))
    }

    pub fn region_count(&self) -> usize {
        self.structure.region_count()
    }

    /// Largest single object count in any region.
    pub fn max_count(&self) -> u64 {
        self.contents
            .values()
            .flat_map(|m| m.iter().map(|(_, n)| n))
            .max()
            .unwrap_or(0)
    }

    /// Structure invariants plus contents defined exactly on the regions.
    pub fn validate(&self) -> Result<(), StructureError> {
        self.structure.validate()?;
        let regions: BTreeSet<RegionId> = self.structure.regions().collect();
        let keys: BTreeSet<RegionId> = self.contents.keys().copied().collect();
        if regions != keys {
            return Err(StructureError::NotATree(
                "contents are not defined exactly on the regions".into(),
            ));
        }
        Ok(())
    }
}
