//! Objects, labels and counted multisets of objects.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Name of an object in the alphabet.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(Arc<str>);

impl ObjectId {
    pub fn new(name: &str) -> Self {
        ObjectId(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ObjectId {
    fn from(s: &str) -> Self {
        ObjectId::new(s)
    }
}

/// Name of a membrane label. The label named `skin` is reserved.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelId(Arc<str>);

impl LabelId {
    pub const SKIN: &'static str = "skin";

    pub fn new(name: &str) -> Self {
        LabelId(Arc::from(name))
    }

    pub fn skin() -> Self {
        LabelId::new(Self::SKIN)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_skin(&self) -> bool {
        &*self.0 == Self::SKIN
    }
}

impl fmt::Debug for LabelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for LabelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for LabelId {
    fn from(s: &str) -> Self {
        LabelId::new(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("undefined difference: {object} has {have} copies but {need} are subtracted")]
pub struct UndefinedDifference {
    pub object: ObjectId,
    pub have: u64,
    pub need: u64,
}

/// A finite multiset of objects, stored as a count map without zero entries.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiset {
    counts: BTreeMap<ObjectId, u64>,
}

impl Multiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a multiset from a word; repeated objects are counted.
    pub fn from_word<I, O>(word: I) -> Self
    where
        I: IntoIterator<Item = O>,
        O: Into<ObjectId>,
    {
        let mut m = Multiset::new();
        for o in word {
            m.add(o.into(), 1);
        }
        m
    }

    /// Parses a space separated word such as `"o1 o1 o2"`.
    pub fn parse_word(word: &str) -> Self {
        Multiset::from_word(word.split_whitespace())
    }

    pub fn count(&self, o: &ObjectId) -> u64 {
        self.counts.get(o).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Total number of objects, counted with multiplicity.
    pub fn size(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Number of distinct objects.
    pub fn support_len(&self) -> usize {
        self.counts.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ObjectId, u64)> + '_ {
        self.counts.iter().map(|(o, &n)| (o, n))
    }

    pub fn objects(&self) -> impl Iterator<Item = &ObjectId> + '_ {
        self.counts.keys()
    }

    pub fn set(&mut self, o: ObjectId, n: u64) {
        if n == 0 {
            self.counts.remove(&o);
        } else {
            self.counts.insert(o, n);
        }
    }

    pub fn add(&mut self, o: ObjectId, n: u64) {
        if n == 0 {
            return;
        }
        *self.counts.entry(o).or_insert(0) += n;
    }

    /// Removes `n` copies of `o`; fails without modifying `self` if fewer are present.
    pub fn remove(&mut self, o: &ObjectId, n: u64) -> Result<(), UndefinedDifference> {
        let have = self.count(o);
        if have < n {
            return Err(UndefinedDifference {
                object: o.clone(),
                have,
                need: n,
            });
        }
        self.set(o.clone(), have - n);
        Ok(())
    }

    pub fn sum(&self, other: &Multiset) -> Multiset {
        let mut out = self.clone();
        out.add_all(other);
        out
    }

    pub fn add_all(&mut self, other: &Multiset) {
        for (o, n) in other.iter() {
            self.add(o.clone(), n);
        }
    }

    /// `self - other`, defined only when `other` is contained in `self`.
    pub fn diff(&self, other: &Multiset) -> Result<Multiset, UndefinedDifference> {
        let mut out = self.clone();
        for (o, n) in other.iter() {
            out.remove(o, n)?;
        }
        Ok(out)
    }

    pub fn scale(&self, t: u64) -> Multiset {
        if t == 0 {
            return Multiset::new();
        }
        Multiset {
            counts: self.counts.iter().map(|(o, &n)| (o.clone(), n * t)).collect(),
        }
    }

    /// Caps every count at `t`.
    pub fn threshold(&self, t: u64) -> Multiset {
        Multiset {
            counts: self
                .counts
                .iter()
                .filter(|_| t > 0)
                .map(|(o, &n)| (o.clone(), n.min(t)))
                .collect(),
        }
    }

    /// Expands the multiset into a sorted word.
    pub fn to_word(&self) -> Vec<ObjectId> {
        self.counts
            .iter()
            .flat_map(|(o, &n)| std::iter::repeat_n(o.clone(), n as usize))
            .collect()
    }
}

impl fmt::Debug for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.counts.iter()).finish()
    }
}

/// Prints the multiset as a word, `ε` when empty.
impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        let mut first = true;
        for (o, n) in self.iter() {
            for _ in 0..n {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{o}")?;
            }
        }
        Ok(())
    }
}

impl<O: Into<ObjectId>> FromIterator<(O, u64)> for Multiset {
    fn from_iter<I: IntoIterator<Item = (O, u64)>>(iter: I) -> Self {
        let mut m = Multiset::new();
        for (o, n) in iter {
            m.add(o.into(), n);
        }
        m
    }
}

pub fn mset_sum(u: &Multiset, v: &Multiset) -> Multiset {
    u.sum(v)
}

pub fn mset_diff(u: &Multiset, v: &Multiset) -> Result<Multiset, UndefinedDifference> {
    u.diff(v)
}

pub fn mset_scale(t: u64, u: &Multiset) -> Multiset {
    u.scale(t)
}
