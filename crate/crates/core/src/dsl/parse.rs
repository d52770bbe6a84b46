//! Parser for `.mg` files.
//!
//! ```text
//! objects: o1 o2
//! labels: l1 l2
//! rules:
//!   [o1]l1 -> []l1 o2
//!   [o2]l2 -> o1
//! structure:
//!   env { skin s { l1 x1 l2 x2 } }
//! contents:
//!   x1 = o1 o1 o2
//! ```
//!
//! Sections may come in any order, each at most once. `#` starts a comment.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::{Instance, RegionNames};
use crate::grammar::{Grammar, GrammarError, Rule};
use crate::multiset::{LabelId, Multiset, ObjectId};
use crate::structure::{Configuration, MembraneStructure, RegionId, StructureError};

/// 1-based line and column (in characters).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagnosticKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("section `{0}` appears more than once")]
    DuplicateSection(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("region `{0}` is declared more than once")]
    DuplicateRegion(String),
    #[error("region `{0}` is not declared in the structure")]
    UnknownRegion(String),
    #[error(transparent)]
    Grammar(GrammarError),
    #[error(transparent)]
    Structure(StructureError),
}

/// A parse or validation error with the position it refers to.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {kind}")]
pub struct Diagnostic {
    pub pos: Pos,
    pub kind: DiagnosticKind,
}

impl Diagnostic {
    fn new(pos: Pos, kind: DiagnosticKind) -> Self {
        Diagnostic { pos, kind }
    }

    fn syntax(pos: Pos, msg: impl Into<String>) -> Self {
        Diagnostic::new(pos, DiagnosticKind::Syntax(msg.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Arrow,
    Colon,
    Equals,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: Pos,
}

fn lex(src: &str) -> Result<Vec<Vec<Token>>, Diagnostic> {
    let mut lines = Vec::new();
    for (li, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let pos = Pos { line: li + 1, col: i + 1 };
            let ch = chars[i];
            let single = match ch {
                '[' => Some(Tok::LBracket),
                ']' => Some(Tok::RBracket),
                '{' => Some(Tok::LBrace),
                '}' => Some(Tok::RBrace),
                ':' => Some(Tok::Colon),
                '=' => Some(Tok::Equals),
                _ => None,
            };
            if let Some(tok) = single {
                toks.push(Token { tok, pos });
                i += 1;
            } else if ch == '#' {
                break;
            } else if ch.is_whitespace() {
                i += 1;
            } else if ch == '-' && chars.get(i + 1) == Some(&'>') {
                toks.push(Token { tok: Tok::Arrow, pos });
                i += 2;
            } else if ch.is_ascii_alphanumeric() || ch == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), pos });
            } else {
                return Err(Diagnostic::syntax(pos, format!("unexpected character `{ch}`")));
            }
        }
        lines.push(toks);
    }
    Ok(lines)
}

const SECTIONS: [&str; 5] = ["objects", "labels", "rules", "structure", "contents"];

struct Section {
    header: Pos,
    /// Token lines of the body; the first may be the remainder of the header line.
    lines: Vec<Vec<Token>>,
}

fn split_sections(lines: Vec<Vec<Token>>) -> Result<BTreeMap<&'static str, Section>, Diagnostic> {
    let mut sections: BTreeMap<&'static str, Section> = BTreeMap::new();
    let mut current: Option<&'static str> = None;
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let header = match (&line[0].tok, line.get(1).map(|t| &t.tok)) {
            (Tok::Ident(name), Some(Tok::Colon)) => Some(name.clone()),
            _ => None,
        };
        if let Some(name) = header {
            let Some(&key) = SECTIONS.iter().find(|s| **s == name) else {
                return Err(Diagnostic::syntax(line[0].pos, format!("unknown section `{name}`")));
            };
            if sections.contains_key(key) {
                return Err(Diagnostic::new(line[0].pos, DiagnosticKind::DuplicateSection(name)));
            }
            let rest: Vec<Token> = line[2..].to_vec();
            let mut lines = Vec::new();
            if !rest.is_empty() {
                lines.push(rest);
            }
            sections.insert(key, Section { header: line[0].pos, lines });
            current = Some(key);
            continue;
        }
        match current {
            Some(key) => sections.get_mut(key).expect("current section").lines.push(line),
            None => {
                return Err(Diagnostic::syntax(line[0].pos, "expected a section header such as `rules:`"))
            }
        }
    }
    Ok(sections)
}

struct Cursor<'a> {
    toks: &'a [Token],
    i: usize,
    end: Pos,
}

impl<'a> Cursor<'a> {
    fn new(toks: &'a [Token], end: Pos) -> Self {
        Cursor { toks, i: 0, end }
    }

    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.i)
    }

    fn pos(&self) -> Pos {
        self.peek().map(|t| t.pos).unwrap_or(self.end)
    }

    fn at_end(&self) -> bool {
        self.i >= self.toks.len()
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|t| &t.tok) == Some(tok) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Pos, Diagnostic> {
        let pos = self.pos();
        if self.eat(&tok) {
            Ok(pos)
        } else {
            Err(Diagnostic::syntax(pos, format!("expected {what}")))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), Diagnostic> {
        match self.peek() {
            Some(Token { tok: Tok::Ident(s), pos }) => {
                self.i += 1;
                Ok((s.clone(), *pos))
            }
            _ => Err(Diagnostic::syntax(self.pos(), format!("expected {what}"))),
        }
    }

    fn peek_ident(&self) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Ident(_), .. }))
    }

    fn peek_is(&self, tok: &Tok) -> bool {
        self.peek().map(|t| &t.tok) == Some(tok)
    }
}

/// Position used for errors at the end of a line: the last token.
fn end_of_line(line: &[Token]) -> Pos {
    line.last().map(|t| t.pos).unwrap_or(Pos { line: 1, col: 1 })
}

fn same_label(expected: &str, found: (String, Pos)) -> Result<(), Diagnostic> {
    if found.0 == expected {
        Ok(())
    } else {
        Err(Diagnostic::syntax(
            found.1,
            format!("label `{}` does not match left-hand side label `{expected}`", found.0),
        ))
    }
}

fn parse_rule(line: &[Token]) -> Result<Rule, Diagnostic> {
    let mut c = Cursor::new(line, end_of_line(line));
    c.expect(Tok::LBracket, "`[`")?;
    let rule = if c.eat(&Tok::RBracket) {
        // []l a -> [b]l
        let (label, _) = c.ident("a label")?;
        let (lhs, _) = c.ident("an object")?;
        c.expect(Tok::Arrow, "`->`")?;
        c.expect(Tok::LBracket, "`[`")?;
        let (rhs, _) = c.ident("an object")?;
        c.expect(Tok::RBracket, "`]`")?;
        let l2 = c.ident("a label")?;
        same_label(&label, l2)?;
        Rule::In { label: LabelId::new(&label), lhs: ObjectId::new(&lhs), rhs: ObjectId::new(&rhs) }
    } else {
        let (lhs, _) = c.ident("an object")?;
        c.expect(Tok::RBracket, "`]`")?;
        let (label, _) = c.ident("a label")?;
        c.expect(Tok::Arrow, "`->`")?;
        let (lhs, l) = (ObjectId::new(&lhs), LabelId::new(&label));
        if c.eat(&Tok::LBracket) {
            let mut word = Vec::new();
            while c.peek_ident() {
                word.push(c.ident("an object")?);
            }
            c.expect(Tok::RBracket, "`]`")?;
            let l2 = c.ident("a label")?;
            same_label(&label, l2)?;
            if word.is_empty() && c.peek_ident() {
                let (rhs, _) = c.ident("an object")?;
                Rule::Out { lhs, label: l, rhs: ObjectId::new(&rhs) }
            } else if c.peek_is(&Tok::LBracket) {
                if word.len() != 1 {
                    return Err(Diagnostic::syntax(
                        c.pos(),
                        "division rules take exactly one object per copy",
                    ));
                }
                c.expect(Tok::LBracket, "`[`")?;
                let (second, _) = c.ident("an object")?;
                c.expect(Tok::RBracket, "`]`")?;
                let l3 = c.ident("a label")?;
                same_label(&label, l3)?;
                Rule::Division {
                    lhs,
                    label: l,
                    first: ObjectId::new(&word[0].0),
                    second: ObjectId::new(&second),
                }
            } else {
                let rhs = Multiset::from_word(word.iter().map(|(w, _)| ObjectId::new(w)));
                Rule::Evolution { lhs, label: l, rhs }
            }
        } else {
            let (rhs, _) = c.ident("`[` or an object")?;
            Rule::Dissolution { lhs, label: l, rhs: ObjectId::new(&rhs) }
        }
    };
    if !c.at_end() {
        return Err(Diagnostic::syntax(c.pos(), "unexpected trailing input after rule"));
    }
    Ok(rule)
}

struct StructureBuilder {
    structure: MembraneStructure,
    names: RegionNames,
    positions: BTreeMap<RegionId, Pos>,
    by_name: BTreeMap<String, RegionId>,
}

impl StructureBuilder {
    fn region(&mut self, name: String, pos: Pos, id: RegionId) -> Result<(), Diagnostic> {
        if self.by_name.insert(name.clone(), id).is_some() {
            return Err(Diagnostic::new(pos, DiagnosticKind::DuplicateRegion(name)));
        }
        self.names.insert(id, name);
        self.positions.insert(id, pos);
        Ok(())
    }

    /// Parses `label name { ... }` entries until the closing brace.
    fn children(
        &mut self,
        c: &mut Cursor,
        parent: RegionId,
        labels: &BTreeSet<LabelId>,
    ) -> Result<(), Diagnostic> {
        while !c.peek_is(&Tok::RBrace) {
            let (label, lpos) = c.ident("a membrane label or `}`")?;
            let label = LabelId::new(&label);
            if !labels.contains(&label) {
                return Err(Diagnostic::new(lpos, DiagnosticKind::UnknownSymbol(label.to_string())));
            }
            let (name, npos) = c.ident("a region name")?;
            let id = self.structure.add_child(parent, label);
            self.region(name, npos, id)?;
            if c.eat(&Tok::LBrace) {
                self.children(c, id, labels)?;
            }
        }
        c.expect(Tok::RBrace, "`}`")?;
        Ok(())
    }
}

fn flatten(section: &Section) -> Vec<Token> {
    section.lines.iter().flatten().cloned().collect()
}

fn ident_list(section: &Section, what: &str) -> Result<Vec<(String, Pos)>, Diagnostic> {
    let toks = flatten(section);
    let mut c = Cursor::new(&toks, section.header);
    let mut out = Vec::new();
    while !c.at_end() {
        out.push(c.ident(what)?);
    }
    Ok(out)
}

/// Parses and validates a `.mg` source.
pub fn parse(source: &str) -> Result<Instance, Diagnostic> {
    let lines = lex(source)?;
    let eof = Pos { line: lines.len().max(1), col: 1 };
    let sections = split_sections(lines)?;

    let mut objects = BTreeSet::new();
    if let Some(s) = sections.get("objects") {
        for (name, _) in ident_list(s, "an object name")? {
            objects.insert(ObjectId::new(&name));
        }
    }
    let mut labels = BTreeSet::new();
    labels.insert(LabelId::skin());
    if let Some(s) = sections.get("labels") {
        for (name, _) in ident_list(s, "a label name")? {
            labels.insert(LabelId::new(&name));
        }
    }

    let mut rules = Vec::new();
    let mut rule_pos = Vec::new();
    if let Some(s) = sections.get("rules") {
        for line in &s.lines {
            rules.push(parse_rule(line)?);
            rule_pos.push(line[0].pos);
        }
    }
    let grammar = Grammar::new(rules, objects.iter().cloned(), labels.iter().cloned())
        .map_err(|e| Diagnostic::new(rule_pos[e.rule_index()], DiagnosticKind::Grammar(e)))?;

    let Some(structure_section) = sections.get("structure") else {
        return Err(Diagnostic::syntax(eof, "missing `structure:` section"));
    };
    let toks = flatten(structure_section);
    let mut c = Cursor::new(&toks, structure_section.header);
    let (root_name, root_pos) = c.ident("the environment region name")?;
    let mut b = StructureBuilder {
        structure: MembraneStructure::root_only(),
        names: RegionNames::new(),
        positions: BTreeMap::new(),
        by_name: BTreeMap::new(),
    };
    let root = b.structure.root();
    b.region(root_name, root_pos, root)?;
    if c.eat(&Tok::LBrace) {
        b.children(&mut c, root, &labels)?;
    }
    if !c.at_end() {
        return Err(Diagnostic::syntax(c.pos(), "unexpected input after the structure tree"));
    }
    b.structure.validate().map_err(|e| {
        let pos = match &e {
            StructureError::SkinLabelMisuse(r) => b.positions[r],
            _ => root_pos,
        };
        Diagnostic::new(pos, DiagnosticKind::Structure(e))
    })?;

    let mut config = Configuration::empty(b.structure);
    if let Some(s) = sections.get("contents") {
        let mut seen = BTreeSet::new();
        for line in &s.lines {
            let mut c = Cursor::new(line, end_of_line(line));
            let (name, npos) = c.ident("a region name")?;
            let Some(&id) = b.by_name.get(&name) else {
                return Err(Diagnostic::new(npos, DiagnosticKind::UnknownRegion(name)));
            };
            if !seen.insert(id) {
                return Err(Diagnostic::new(npos, DiagnosticKind::DuplicateRegion(name)));
            }
            c.expect(Tok::Equals, "`=`")?;
            let mut m = Multiset::new();
            while !c.at_end() {
                let (o, opos) = c.ident("an object")?;
                let o = ObjectId::new(&o);
                if !objects.contains(&o) {
                    return Err(Diagnostic::new(opos, DiagnosticKind::UnknownSymbol(o.to_string())));
                }
                m.add(o, 1);
            }
            config.set_contents(id, m);
        }
    }
    Ok(Instance { grammar, config, names: b.names })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_forms() {
        let parse_line = |s: &str| parse_rule(&lex(s).unwrap()[0]);
        assert!(matches!(parse_line("[a]l -> [b c]l"), Ok(Rule::Evolution { .. })));
        assert!(matches!(parse_line("[a]l -> []l"), Ok(Rule::Evolution { rhs, .. }) if rhs.is_empty()));
        assert!(matches!(parse_line("[a]l -> b"), Ok(Rule::Dissolution { .. })));
        assert!(matches!(parse_line("[a]l -> [b]l [c]l"), Ok(Rule::Division { .. })));
        assert!(matches!(parse_line("[a]l -> []l b"), Ok(Rule::Out { .. })));
        assert!(matches!(parse_line("[]l a -> [b]l"), Ok(Rule::In { .. })));
        let err = parse_line("[a]l -> [b]k").unwrap_err();
        assert_eq!(err.pos, Pos { line: 1, col: 12 });
        let err = parse_line("[a]l -> [b c]l [d]l").unwrap_err();
        assert!(matches!(err.kind, DiagnosticKind::Syntax(_)));
        let err = parse_line("[a]l -> b c").unwrap_err();
        assert_eq!(err.pos, Pos { line: 1, col: 11 });
        let err = parse_line("[a]l ->").unwrap_err();
        assert_eq!(err.pos, Pos { line: 1, col: 6 });
    }

    #[test]
    fn lexer_rejects_stray_characters() {
        let err = lex("rules:\n  [a]l => b").unwrap_err();
        assert_eq!(err.pos, Pos { line: 2, col: 9 });
    }

    #[test]
    fn sections_any_order_and_defaults() {
        let src = "structure: env { skin s { l x } }\nlabels: l\ncontents:\n x = a\nobjects: a\n";
        let inst = parse(src).unwrap();
        assert!(inst.grammar.rules().is_empty());
        assert_eq!(inst.config.contents(RegionId(2)).count(&"a".into()), 1);
        assert!(inst.config.contents(RegionId(1)).is_empty());
    }

    #[test]
    fn duplicate_section_and_region() {
        let err = parse("objects: a\nobjects: b\n").unwrap_err();
        assert_eq!(err.pos, Pos { line: 2, col: 1 });
        assert!(matches!(err.kind, DiagnosticKind::DuplicateSection(_)));

        let err = parse("labels: l\nstructure: e { skin s { l s } }").unwrap_err();
        assert_eq!(err.pos, Pos { line: 2, col: 27 });
        assert!(matches!(err.kind, DiagnosticKind::DuplicateRegion(_)));
    }

    #[test]
    fn structure_errors_have_positions() {
        let err = parse("labels: l\nstructure: e { l s }").unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::Structure(StructureError::SkinEdgeCount(0)));
        assert_eq!(err.pos, Pos { line: 2, col: 12 });

        let err = parse("structure: e { skin s { skin t } }").unwrap_err();
        assert!(matches!(err.kind, DiagnosticKind::Structure(StructureError::SkinLabelMisuse(_))));
        assert_eq!(err.pos, Pos { line: 1, col: 30 });

        let err = parse("structure: e { skin s { q t } }").unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::UnknownSymbol("q".into()));
    }

    #[test]
    fn contents_errors() {
        let base = "objects: a\nstructure: e { skin s }\ncontents:\n";
        let err = parse(&format!("{base}  s = a b\n")).unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::UnknownSymbol("b".into()));
        assert_eq!(err.pos, Pos { line: 4, col: 9 });
        let err = parse(&format!("{base}  t = a\n")).unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::UnknownRegion("t".into()));
    }
}
