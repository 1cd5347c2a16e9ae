//! Derivation trees shared by the three calculi, and their text format:
//!
//! ```text
//! (rule "<conclusion>" :cut-formula "<f>" :split "<G0 |- D0>"
//!   <premise>
//!   <premise>)
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::sequent::{parse_sequent, Sequent};
use crate::syntax::ParseError;

/// Declares a closed rule enumeration with its text names.
macro_rules! rules {
    ($(#[$m:meta])* $name:ident { $($variant:ident => $text:literal),* $(,)? }) => {
        $(#[$m])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name {
            $($variant),*
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),*];

            pub fn name(self) -> &'static str {
                match self {
                    $($name::$variant => $text),*
                }
            }
        }

        impl std::fmt::Display for $name {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str(self.name())
            }
        }

        impl std::str::FromStr for $name {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, String> {
                match s {
                    $($text => Ok($name::$variant),)*
                    _ => Err(s.to_string()),
                }
            }
        }
    };
}
pub(crate) use rules;

pub trait Calculus: Sized {
    const NAME: &'static str;
    type Rule: Copy + Eq + fmt::Debug + fmt::Display + FromStr<Err = String>;
    type Sequent: Clone + Eq + fmt::Debug + fmt::Display;
    type CutFormula: Clone + Eq + fmt::Debug + fmt::Display;

    fn parse_sequent(text: &str) -> Result<Self::Sequent, ParseError>;
    fn parse_cut_formula(text: &str) -> Result<Self::CutFormula, ParseError>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation<C: Calculus> {
    pub rule: C::Rule,
    pub conclusion: C::Sequent,
    pub cut_formula: Option<C::CutFormula>,
    /// The `G0 |- D0` split of an unnest instance, when given.
    pub split: Option<Sequent>,
    pub premises: Vec<Derivation<C>>,
}

impl<C: Calculus> Derivation<C> {
    pub fn new(rule: C::Rule, conclusion: C::Sequent, premises: Vec<Derivation<C>>) -> Self {
        Derivation {
            rule,
            conclusion,
            cut_formula: None,
            split: None,
            premises,
        }
    }

    pub fn leaf(rule: C::Rule, conclusion: C::Sequent) -> Self {
        Derivation::new(rule, conclusion, Vec::new())
    }

    pub fn with_cut(mut self, f: C::CutFormula) -> Self {
        self.cut_formula = Some(f);
        self
    }

    pub fn with_split(mut self, split: Sequent) -> Self {
        self.split = Some(split);
        self
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Derivation::height).max().unwrap_or(0)
    }

    /// Every node with its path, root first.
    pub fn nodes(&self) -> Vec<(String, &Derivation<C>)> {
        let mut out = Vec::new();
        self.collect_nodes("root".to_string(), &mut out);
        out
    }

    fn collect_nodes<'a>(&'a self, path: String, out: &mut Vec<(String, &'a Derivation<C>)>) {
        out.push((path.clone(), self));
        for (i, p) in self.premises.iter().enumerate() {
            p.collect_nodes(format!("{path}.{i}"), out);
        }
    }

    pub fn rules(&self) -> Vec<C::Rule> {
        self.nodes().into_iter().map(|(_, d)| d.rule).collect()
    }

    pub fn count_rule(&self, rule: C::Rule) -> usize {
        self.rules().into_iter().filter(|r| *r == rule).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(0, &mut out);
        out.push('\n');
        out
    }

    fn write_text(&self, indent: usize, out: &mut String) {
        out.push_str(&" ".repeat(indent));
        out.push('(');
        out.push_str(&self.rule.to_string());
        out.push_str(&format!(" \"{}\"", self.conclusion));
        if let Some(c) = &self.cut_formula {
            out.push_str(&format!(" :cut-formula \"{c}\""));
        }
        if let Some(s) = &self.split {
            out.push_str(&format!(" :split \"{s}\""));
        }
        for p in &self.premises {
            out.push('\n');
            p.write_text(indent + 2, out);
        }
        out.push(')');
    }

    pub fn parse(text: &str) -> Result<Self, DerivationParseError> {
        let mut r = Reader { text, pos: 0 };
        let d = r.node::<C>()?;
        r.skip_ws();
        if r.pos < text.len() {
            return Err(DerivationParseError::Syntax {
                pos: r.pos,
                msg: "trailing input after derivation".into(),
            });
        }
        Ok(d)
    }
}

impl<C: Calculus> fmt::Display for Derivation<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DerivationParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown {calculus} rule `{rule}` at position {pos}")]
    UnknownRule {
        calculus: &'static str,
        rule: String,
        pos: usize,
    },
    #[error("bad sequent `{text}` at position {pos}: {source}")]
    Sequent {
        text: String,
        pos: usize,
        source: ParseError,
    },
}

struct Reader<'a> {
    text: &'a str,
    pos: usize,
}

impl Reader<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else if c == ';' {
                // comment to end of line
                self.pos = self.text[self.pos..]
                    .find('\n')
                    .map_or(self.text.len(), |i| self.pos + i);
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, DerivationParseError> {
        Err(DerivationParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn word(&mut self) -> &str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_whitespace() || c == '(' || c == ')' || c == '"' {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.text[start..self.pos]
    }

    fn string(&mut self) -> Result<(usize, String), DerivationParseError> {
        self.skip_ws();
        if self.peek() != Some('"') {
            return self.err("expected a quoted string");
        }
        self.pos += 1;
        let start = self.pos;
        match self.text[start..].find('"') {
            Some(len) => {
                self.pos = start + len + 1;
                Ok((start, self.text[start..start + len].to_string()))
            }
            None => self.err("unterminated string"),
        }
    }

    fn node<C: Calculus>(&mut self) -> Result<Derivation<C>, DerivationParseError> {
        self.skip_ws();
        if self.peek() != Some('(') {
            return self.err("expected `(`");
        }
        self.pos += 1;
        self.skip_ws();
        let rule_pos = self.pos;
        let name = self.word().to_string();
        if name.is_empty() {
            return self.err("expected a rule name");
        }
        let rule = name
            .parse::<C::Rule>()
            .map_err(|rule| DerivationParseError::UnknownRule {
                calculus: C::NAME,
                rule,
                pos: rule_pos,
            })?;
        let (pos, text) = self.string()?;
        let conclusion = C::parse_sequent(&text).map_err(|source| DerivationParseError::Sequent {
            text: text.clone(),
            pos,
            source,
        })?;
        let mut d = Derivation::new(rule, conclusion, Vec::new());
        loop {
            self.skip_ws();
            match self.peek() {
                Some(')') => {
                    self.pos += 1;
                    return Ok(d);
                }
                Some('(') => d.premises.push(self.node::<C>()?),
                Some(':') => {
                    let key_pos = self.pos;
                    let key = self.word().to_string();
                    let (pos, text) = self.string()?;
                    let bad = |source| DerivationParseError::Sequent {
                        text: text.clone(),
                        pos,
                        source,
                    };
                    match key.as_str() {
                        ":cut-formula" if d.cut_formula.is_none() => {
                            d.cut_formula = Some(C::parse_cut_formula(&text).map_err(bad)?);
                        }
                        ":split" if d.split.is_none() => {
                            d.split = Some(parse_sequent(&text).map_err(bad)?);
                        }
                        _ => {
                            self.pos = key_pos;
                            return self.err(format!("unexpected annotation `{key}`"));
                        }
                    }
                }
                Some(_) => return self.err("expected `(`, `)` or an annotation"),
                None => return self.err("unexpected end of input"),
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum CutPolicy {
    NoCut,
    #[default]
    FullCut,
    UnnestCutOnly,
}

impl FromStr for CutPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "none" | "no-cut" => Ok(CutPolicy::NoCut),
            "full" | "full-cut" => Ok(CutPolicy::FullCut),
            "unnest" | "unnest-only" | "unnest-cut-only" => Ok(CutPolicy::UnnestCutOnly),
            _ => Err(format!("unknown cut policy `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CheckErrorKind {
    #[error("wrong premise count (expected {expected}, found {found})")]
    Arity { expected: usize, found: usize },
    #[error("forbidden cut")]
    ForbiddenCut,
    #[error("context mismatch: {0}")]
    Context(String),
    #[error("principal formula mismatch: {0}")]
    Principal(String),
    #[error("missing {0} annotation")]
    MissingAnnotation(&'static str),
    #[error("freshness violation: {0}")]
    Freshness(String),
    #[error("proviso violated: {0}")]
    Proviso(String),
    #[error("tree invariant broken: {0}")]
    Tree(String),
    #[error("malformed node: {0}")]
    Malformed(String),
}

/// A rejected node: where it is, which rule it claims, and what is wrong.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at {path}")]
pub struct CheckError {
    pub path: String,
    pub rule: String,
    pub kind: CheckErrorKind,
}

/// Runs `node` on every node, root first, and attaches paths to failures.
pub(crate) fn check_tree<C: Calculus>(
    d: &Derivation<C>,
    mut node: impl FnMut(&Derivation<C>) -> Result<(), CheckErrorKind>,
) -> Result<(), CheckError> {
    for (path, n) in d.nodes() {
        node(n).map_err(|kind| CheckError {
            path,
            rule: n.rule.to_string(),
            kind,
        })?;
    }
    Ok(())
}

pub(crate) fn arity<C: Calculus>(d: &Derivation<C>, expected: usize) -> Result<(), CheckErrorKind> {
    if d.premises.len() == expected {
        Ok(())
    } else {
        Err(CheckErrorKind::Arity {
            expected,
            found: d.premises.len(),
        })
    }
}

/// A stack of one-premise steps built from the conclusion upwards.
pub(crate) struct Chain<C: Calculus> {
    steps: Vec<(C::Rule, C::Sequent)>,
    pub(crate) cur: C::Sequent,
}

impl<C: Calculus> Chain<C> {
    pub(crate) fn new(start: C::Sequent) -> Self {
        Chain {
            steps: Vec::new(),
            cur: start,
        }
    }

    /// Applies `rule` to the current sequent, whose premise is `next`.
    pub(crate) fn step(&mut self, rule: C::Rule, next: C::Sequent) {
        let concl = std::mem::replace(&mut self.cur, next);
        self.steps.push((rule, concl));
    }

    /// Closes the chain with a derivation of the current sequent.
    pub(crate) fn finish(self, top: Derivation<C>) -> Derivation<C> {
        self.steps
            .into_iter()
            .rev()
            .fold(top, |d, (rule, concl)| Derivation::new(rule, concl, vec![d]))
    }
}
