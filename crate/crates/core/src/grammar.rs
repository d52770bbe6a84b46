//! Rules and membrane grammars.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::multiset::{LabelId, Multiset, ObjectId};

/// One rule of a membrane grammar.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `[a]l -> [u]l`
    Evolution { lhs: ObjectId, label: LabelId, rhs: Multiset },
    /// `[a]l -> b`
    Dissolution { lhs: ObjectId, label: LabelId, rhs: ObjectId },
    /// `[a]l -> [b]l [c]l`
    Division { lhs: ObjectId, label: LabelId, first: ObjectId, second: ObjectId },
    /// `[a]l -> []l b`
    Out { lhs: ObjectId, label: LabelId, rhs: ObjectId },
    /// `[]l a -> [b]l`
    In { label: LabelId, lhs: ObjectId, rhs: ObjectId },
}

impl Rule {
    pub fn label(&self) -> &LabelId {
        match self {
            Rule::Evolution { label, .. }
            | Rule::Dissolution { label, .. }
            | Rule::Division { label, .. }
            | Rule::Out { label, .. }
            | Rule::In { label, .. } => label,
        }
    }

    pub fn lhs(&self) -> &ObjectId {
        match self {
            Rule::Evolution { lhs, .. }
            | Rule::Dissolution { lhs, .. }
            | Rule::Division { lhs, .. }
            | Rule::Out { lhs, .. }
            | Rule::In { lhs, .. } => lhs,
        }
    }

    pub fn is_in(&self) -> bool {
        matches!(self, Rule::In { .. })
    }

    /// Every object mentioned by the rule.
    pub fn objects(&self) -> Vec<&ObjectId> {
        match self {
            Rule::Evolution { lhs, rhs, .. } => std::iter::once(lhs).chain(rhs.objects()).collect(),
            Rule::Dissolution { lhs, rhs, .. } | Rule::Out { lhs, rhs, .. } | Rule::In { lhs, rhs, .. } => {
                vec![lhs, rhs]
            }
            Rule::Division { lhs, first, second, .. } => vec![lhs, first, second],
        }
    }

    fn forbids_skin(&self) -> bool {
        matches!(self, Rule::Dissolution { .. } | Rule::Division { .. } | Rule::In { .. })
    }
}

/// Prints the rule in the ASCII text syntax, e.g. `[o1]l1 -> []l1 o2`.
impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Evolution { lhs, label, rhs } => {
                let word: Vec<String> = rhs.to_word().iter().map(|o| o.to_string()).collect();
                write!(f, "[{lhs}]{label} -> [{}]{label}", word.join(" "))
            }
            Rule::Dissolution { lhs, label, rhs } => write!(f, "[{lhs}]{label} -> {rhs}"),
            Rule::Division { lhs, label, first, second } => {
                write!(f, "[{lhs}]{label} -> [{first}]{label} [{second}]{label}")
            }
            Rule::Out { lhs, label, rhs } => write!(f, "[{lhs}]{label} -> []{label} {rhs}"),
            Rule::In { label, lhs, rhs } => write!(f, "[]{label} {lhs} -> [{rhs}]{label}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    /// Index of the offending rule and the clashing left-hand side.
    #[error("rule #{index}: a rule with left-hand side {key} already exists")]
    DuplicateLeftHandSide { index: usize, key: String },
    #[error("rule #{index}: `{rule}` may not use the skin label")]
    SkinViolation { index: usize, rule: String },
    #[error("rule #{index}: unknown symbol `{token}`")]
    UnknownSymbol { index: usize, token: String },
}

impl GrammarError {
    pub fn rule_index(&self) -> usize {
        match self {
            GrammarError::DuplicateLeftHandSide { index, .. }
            | GrammarError::SkinViolation { index, .. }
            | GrammarError::UnknownSymbol { index, .. } => *index,
        }
    }
}

/// A validated rule set with at most one rule per left-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    objects: BTreeSet<ObjectId>,
    labels: BTreeSet<LabelId>,
    rules: Vec<Rule>,
    action_index: BTreeMap<(ObjectId, LabelId), Rule>,
    in_index: BTreeMap<(LabelId, ObjectId), Rule>,
}

impl Grammar {
    /// Indexes `rules`, checking determinism, symbol closure and the skin restrictions.
    ///
    /// The skin label is always part of the label set.
    pub fn new(
        rules: Vec<Rule>,
        objects: impl IntoIterator<Item = ObjectId>,
        labels: impl IntoIterator<Item = LabelId>,
    ) -> Result<Grammar, GrammarError> {
        let objects: BTreeSet<ObjectId> = objects.into_iter().collect();
        let mut labels: BTreeSet<LabelId> = labels.into_iter().collect();
        labels.insert(LabelId::skin());

        let mut action_index = BTreeMap::new();
        let mut in_index = BTreeMap::new();
        for (index, rule) in rules.iter().enumerate() {
            if !labels.contains(rule.label()) {
                return Err(GrammarError::UnknownSymbol { index, token: rule.label().to_string() });
            }
            if let Some(o) = rule.objects().into_iter().find(|o| !objects.contains(*o)) {
                return Err(GrammarError::UnknownSymbol { index, token: o.to_string() });
            }
            if rule.forbids_skin() && rule.label().is_skin() {
                return Err(GrammarError::SkinViolation { index, rule: rule.to_string() });
            }
            let clash = if rule.is_in() {
                let key = (rule.label().clone(), rule.lhs().clone());
                in_index
                    .insert(key, rule.clone())
                    .map(|_| format!("[]{} {}", rule.label(), rule.lhs()))
            } else {
                let key = (rule.lhs().clone(), rule.label().clone());
                action_index
                    .insert(key, rule.clone())
                    .map(|_| format!("[{}]{}", rule.lhs(), rule.label()))
            };
            if let Some(key) = clash {
                return Err(GrammarError::DuplicateLeftHandSide { index, key });
            }
        }
        Ok(Grammar { objects, labels, rules, action_index, in_index })
    }

    pub fn objects(&self) -> &BTreeSet<ObjectId> {
        &self.objects
    }

    pub fn labels(&self) -> &BTreeSet<LabelId> {
        &self.labels
    }

    /// Rules in their original order.
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// The rule with left-hand side `[o]l`, if any.
    pub fn action(&self, o: &ObjectId, l: &LabelId) -> Option<&Rule> {
        // BTreeMap lookups on tuple keys need owned keys; clones are Arc bumps.
        self.action_index.get(&(o.clone(), l.clone()))
    }

    /// The rule with left-hand side `[]l o`, if any.
    pub fn in_rule(&self, l: &LabelId, o: &ObjectId) -> Option<&Rule> {
        self.in_index.get(&(l.clone(), o.clone()))
    }

    pub fn action_index(&self) -> &BTreeMap<(ObjectId, LabelId), Rule> {
        &self.action_index
    }

    pub fn in_index(&self) -> &BTreeMap<(LabelId, ObjectId), Rule> {
        &self.in_index
    }

    pub fn has_in_rules(&self) -> bool {
        !self.in_index.is_empty()
    }

    /// Evolution right-hand side for `[o]l`, if `(o, l)` is an evolution pair.
    pub fn evolution(&self, o: &ObjectId, l: &LabelId) -> Option<&Multiset> {
        match self.action(o, l) {
            Some(Rule::Evolution { rhs, .. }) => Some(rhs),
            _ => None,
        }
    }

    /// Stable FNV-1a digest of the printed rules and alphabets.
    pub fn digest(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |s: &str| {
            for b in s.bytes().chain(std::iter::once(b'\n')) {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        for o in &self.objects {
            feed(o.as_str());
        }
        for l in &self.labels {
            feed(l.as_str());
        }
        for r in &self.rules {
            feed(&r.to_string());
        }
        format!("{h:016x}")
    }
}

pub fn validate_grammar(
    rules: Vec<Rule>,
    objects: impl IntoIterator<Item = ObjectId>,
    labels: impl IntoIterator<Item = LabelId>,
) -> Result<Grammar, GrammarError> {
    Grammar::new(rules, objects, labels)
}
