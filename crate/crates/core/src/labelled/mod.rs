//! Labelled sequents over label trees.

mod check;
mod search;

pub use check::{
    check_llbii, derivation_labels, merge_into, nodemerge_d_conclusion, nodemerge_u_conclusion,
    nodesplit_d_premise, nodesplit_u_premise, rename_derivation, Llbii, LlbiiDerivation, LlbiiRule,
};
pub use search::search_llbii_cutfree;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::multiset::{write_list, Multiset};
use crate::sequent::{Elem, Seq};
use crate::syntax::lexer::Tok;
use crate::syntax::{Formula, ParseError, TokenStream};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Label(pub String);

impl Label {
    pub fn new(name: impl Into<String>) -> Self {
        Label(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label(s.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("label tree has no nodes")]
    Empty,
    #[error("arc {0}>{1} is a loop")]
    Loop(Label, Label),
    #[error("label tree is not an undirected tree")]
    NotATree,
    #[error("label `{0}` is not a node of the tree")]
    UnknownLabel(Label),
    #[error("renaming is not injective on the nodes")]
    NotInjective,
}

/// A directed graph whose undirected form is a tree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LabelTree {
    nodes: BTreeSet<Label>,
    arcs: BTreeSet<(Label, Label)>,
}

impl LabelTree {
    pub fn singleton(x: Label) -> Self {
        LabelTree {
            nodes: BTreeSet::from([x]),
            arcs: BTreeSet::new(),
        }
    }

    pub fn new(
        nodes: impl IntoIterator<Item = Label>,
        arcs: impl IntoIterator<Item = (Label, Label)>,
    ) -> Result<Self, TreeError> {
        let t = LabelTree::unchecked(nodes, arcs);
        t.validate()?;
        Ok(t)
    }

    /// Builds a graph without checking the tree condition; arc endpoints
    /// are added as nodes.
    pub fn unchecked(
        nodes: impl IntoIterator<Item = Label>,
        arcs: impl IntoIterator<Item = (Label, Label)>,
    ) -> Self {
        let mut nodes: BTreeSet<Label> = nodes.into_iter().collect();
        let arcs: BTreeSet<(Label, Label)> = arcs.into_iter().collect();
        for (a, b) in &arcs {
            nodes.insert(a.clone());
            nodes.insert(b.clone());
        }
        LabelTree { nodes, arcs }
    }

    pub fn validate(&self) -> Result<(), TreeError> {
        let Some(first) = self.nodes.iter().next() else {
            return Err(TreeError::Empty);
        };
        for (a, b) in &self.arcs {
            if a == b {
                return Err(TreeError::Loop(a.clone(), b.clone()));
            }
            for x in [a, b] {
                if !self.nodes.contains(x) {
                    return Err(TreeError::UnknownLabel(x.clone()));
                }
            }
        }
        if self.arcs.len() + 1 != self.nodes.len() {
            return Err(TreeError::NotATree);
        }
        let reach = self.component(first, None);
        if reach.len() != self.nodes.len() {
            return Err(TreeError::NotATree);
        }
        Ok(())
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Label> + '_ {
        self.nodes.iter()
    }

    pub fn node_set(&self) -> &BTreeSet<Label> {
        &self.nodes
    }

    pub fn arcs(&self) -> impl Iterator<Item = (&Label, &Label)> + '_ {
        self.arcs.iter().map(|(a, b)| (a, b))
    }

    pub fn arc_set(&self) -> &BTreeSet<(Label, Label)> {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, x: &Label) -> bool {
        self.nodes.contains(x)
    }

    pub fn has_arc(&self, x: &Label, y: &Label) -> bool {
        self.arcs.contains(&(x.clone(), y.clone()))
    }

    /// Labels `y` with an arc `x > y`.
    pub fn above(&self, x: &Label) -> Vec<Label> {
        self.arcs
            .iter()
            .filter(|(a, _)| a == x)
            .map(|(_, b)| b.clone())
            .collect()
    }

    /// Labels `y` with an arc `y > x`.
    pub fn below(&self, x: &Label) -> Vec<Label> {
        self.arcs
            .iter()
            .filter(|(_, b)| b == x)
            .map(|(a, _)| a.clone())
            .collect()
    }

    pub fn neighbours(&self, x: &Label) -> Vec<Label> {
        let mut out = self.above(x);
        out.extend(self.below(x));
        out
    }

    /// Nodes reachable from `start` along arcs in either direction,
    /// never stepping onto `blocked`.
    pub fn component(&self, start: &Label, blocked: Option<&Label>) -> BTreeSet<Label> {
        let mut seen = BTreeSet::from([start.clone()]);
        let mut stack = vec![start.clone()];
        while let Some(x) = stack.pop() {
            for y in self.neighbours(&x) {
                if Some(&y) != blocked && seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// The subgraph induced by `keep`.
    pub fn restrict(&self, keep: &BTreeSet<Label>) -> LabelTree {
        LabelTree {
            nodes: self.nodes.intersection(keep).cloned().collect(),
            arcs: self
                .arcs
                .iter()
                .filter(|(a, b)| keep.contains(a) && keep.contains(b))
                .cloned()
                .collect(),
        }
    }

    /// The unique path from `from` to `to`, both ends included.
    pub fn path(&self, from: &Label, to: &Label) -> Option<Vec<Label>> {
        let mut prev: BTreeMap<Label, Label> = BTreeMap::new();
        let mut stack = vec![from.clone()];
        let mut seen = BTreeSet::from([from.clone()]);
        while let Some(x) = stack.pop() {
            if &x == to {
                let mut path = vec![x.clone()];
                let mut cur = x;
                while let Some(p) = prev.get(&cur) {
                    path.push(p.clone());
                    cur = p.clone();
                }
                path.reverse();
                return Some(path);
            }
            for y in self.neighbours(&x) {
                if seen.insert(y.clone()) {
                    prev.insert(y.clone(), x.clone());
                    stack.push(y);
                }
            }
        }
        None
    }

    pub fn with_arc(&self, x: Label, y: Label) -> LabelTree {
        let mut t = self.clone();
        t.nodes.insert(x.clone());
        t.nodes.insert(y.clone());
        t.arcs.insert((x, y));
        t
    }

    pub fn without_node(&self, x: &Label) -> LabelTree {
        LabelTree {
            nodes: self.nodes.iter().filter(|n| *n != x).cloned().collect(),
            arcs: self
                .arcs
                .iter()
                .filter(|(a, b)| a != x && b != x)
                .cloned()
                .collect(),
        }
    }

    /// Applies `f` to every label (not required to be injective).
    pub fn map_labels(&self, f: impl Fn(&Label) -> Label) -> LabelTree {
        LabelTree {
            nodes: self.nodes.iter().map(&f).collect(),
            arcs: self
                .arcs
                .iter()
                .map(|(a, b)| (f(a), f(b)))
                .filter(|(a, b)| a != b)
                .collect(),
        }
    }

    /// A label `{stem}{i}` for the least `i` not among `used`.
    pub fn fresh(stem: &str, used: &BTreeSet<Label>) -> Label {
        (0..)
            .map(|i| Label(format!("{stem}{i}")))
            .find(|l| !used.contains(l))
            .expect("unbounded supply")
    }
}

impl fmt::Display for LabelTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if !std::mem::take(&mut first) {
                f.write_str(", ")
            } else {
                Ok(())
            }
        };
        for (a, b) in &self.arcs {
            sep(f)?;
            write!(f, "{a}>{b}")?;
        }
        for x in &self.nodes {
            if !self.arcs.iter().any(|(a, b)| a == x || b == x) {
                sep(f)?;
                write!(f, "{x}")?;
            }
        }
        f.write_str("]")
    }
}

/// A formula tagged with the label of the world it speaks about.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LFormula {
    pub label: Label,
    pub formula: Formula,
}

impl LFormula {
    pub fn new(label: Label, formula: Formula) -> Self {
        LFormula { label, formula }
    }
}

impl fmt::Display for LFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.formula.is_simple() {
            write!(f, "{}:{}", self.label, self.formula)
        } else {
            write!(f, "{}:({})", self.label, self.formula)
        }
    }
}

impl Elem for LFormula {
    type Site = Label;

    fn formula(&self) -> Option<&Formula> {
        Some(&self.formula)
    }

    fn site(&self) -> Label {
        self.label.clone()
    }

    fn at(site: &Label, f: Formula) -> Self {
        LFormula::new(site.clone(), f)
    }
}

impl FromStr for LFormula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut ts = TokenStream::new(s)?;
        let lf = lformula(&mut ts)?;
        ts.finish()?;
        Ok(lf)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LabelledSequent {
    pub tree: LabelTree,
    pub ante: Multiset<LFormula>,
    pub succ: Multiset<LFormula>,
}

impl LabelledSequent {
    pub fn new(tree: LabelTree, ante: Multiset<LFormula>, succ: Multiset<LFormula>) -> Self {
        LabelledSequent { tree, ante, succ }
    }

    pub fn from_seq(tree: LabelTree, seq: Seq<LFormula>) -> Self {
        LabelledSequent::new(tree, seq.ante, seq.succ)
    }

    pub fn seq(&self) -> Seq<LFormula> {
        Seq::new(self.ante.clone(), self.succ.clone())
    }

    /// Labels every formula of a plain sequent with `x` on the singleton
    /// tree.
    pub fn at_label(s: &crate::sequent::Sequent, x: &Label) -> Self {
        LabelledSequent::new(
            LabelTree::singleton(x.clone()),
            s.ante.map(|f| LFormula::new(x.clone(), f.clone())),
            s.succ.map(|f| LFormula::new(x.clone(), f.clone())),
        )
    }

    pub fn validate(&self) -> Result<(), TreeError> {
        self.tree.validate()?;
        for lf in self.ante.iter().chain(self.succ.iter()) {
            if !self.tree.contains(&lf.label) {
                return Err(TreeError::UnknownLabel(lf.label.clone()));
            }
        }
        Ok(())
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for lf in self.ante.iter().chain(self.succ.iter()) {
            lf.formula.collect_atoms(&mut out);
        }
        out
    }

    /// Labels occurring in the tree or on a formula.
    pub fn labels(&self) -> BTreeSet<Label> {
        let mut out: BTreeSet<Label> = self.tree.nodes().cloned().collect();
        for lf in self.ante.iter().chain(self.succ.iter()) {
            out.insert(lf.label.clone());
        }
        out
    }

    /// Formulas at `x`, left and right.
    pub fn at(&self, x: &Label) -> (Multiset<Formula>, Multiset<Formula>) {
        let pick = |m: &Multiset<LFormula>| {
            m.iter()
                .filter(|lf| &lf.label == x)
                .map(|lf| lf.formula.clone())
                .collect()
        };
        (pick(&self.ante), pick(&self.succ))
    }

    /// Restriction to the labels in `keep`, tree included.
    pub fn restrict(&self, keep: &BTreeSet<Label>) -> LabelledSequent {
        LabelledSequent::new(
            self.tree.restrict(keep),
            self.ante.filter(|lf| keep.contains(&lf.label)),
            self.succ.filter(|lf| keep.contains(&lf.label)),
        )
    }

    /// Substitutes labels through `f` everywhere (not necessarily
    /// injective, so it also serves for merging nodes).
    pub fn map_labels(&self, f: impl Fn(&Label) -> Label) -> LabelledSequent {
        let g = |lf: &LFormula| LFormula::new(f(&lf.label), lf.formula.clone());
        LabelledSequent::new(self.tree.map_labels(&f), self.ante.map(g), self.succ.map(g))
    }

    /// Injective relabelling; labels outside the map are kept.
    pub fn rename_labels(&self, renaming: &BTreeMap<Label, Label>) -> Result<Self, TreeError> {
        check_injective(&self.labels(), renaming)?;
        Ok(self.map_labels(|l| renaming.get(l).cloned().unwrap_or_else(|| l.clone())))
    }

    /// Key identifying the sequent up to renaming with `root` fixed.
    pub fn rooted_key(&self, root: &Label) -> String {
        self.key_from(root, None)
    }

    /// Key identifying the sequent up to renaming.
    pub fn iso_key(&self) -> String {
        self.tree
            .nodes()
            .map(|r| self.key_from(r, None))
            .min()
            .unwrap_or_default()
    }

    fn key_from(&self, x: &Label, from: Option<&Label>) -> String {
        let (l, r) = self.at(x);
        let mut kids: Vec<String> = Vec::new();
        for y in self.tree.above(x) {
            if Some(&y) != from {
                kids.push(format!("u{}", self.key_from(&y, Some(x))));
            }
        }
        for y in self.tree.below(x) {
            if Some(&y) != from {
                kids.push(format!("d{}", self.key_from(&y, Some(x))));
            }
        }
        kids.sort();
        let show = |m: Multiset<Formula>| {
            m.iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>()
                .join(";")
        };
        format!("({}|{}{})", show(l), show(r), kids.concat())
    }
}

pub(crate) fn check_injective(
    labels: &BTreeSet<Label>,
    renaming: &BTreeMap<Label, Label>,
) -> Result<(), TreeError> {
    let mut image = BTreeSet::new();
    for l in labels {
        if !image.insert(renaming.get(l).unwrap_or(l)) {
            return Err(TreeError::NotInjective);
        }
    }
    Ok(())
}

impl fmt::Display for LabelledSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.tree)?;
        write_list(f, &self.ante)?;
        if !self.ante.is_empty() {
            f.write_str(" ")?;
        }
        f.write_str("|-")?;
        if !self.succ.is_empty() {
            f.write_str(" ")?;
        }
        write_list(f, &self.succ)
    }
}

fn lformula(ts: &mut TokenStream) -> Result<LFormula, ParseError> {
    let label = ts.ident("a label")?;
    ts.expect(&Tok::Colon, "`:`")?;
    Ok(LFormula::new(Label(label), ts.formula()?))
}

fn tree_item(ts: &mut TokenStream) -> Result<(Label, Option<Label>), ParseError> {
    let a = Label(ts.ident("a label")?);
    if ts.eat(&Tok::Gt) {
        Ok((a, Some(Label(ts.ident("a label")?))))
    } else {
        Ok((a, None))
    }
}

pub fn parse_labelled_sequent(text: &str) -> Result<LabelledSequent, ParseError> {
    let mut ts = TokenStream::new(text)?;
    ts.expect(&Tok::LBracket, "`[`")?;
    let items = ts.comma_list(&[Tok::RBracket], tree_item)?;
    ts.expect(&Tok::RBracket, "`]`")?;
    let ante = ts.comma_list(&[Tok::Turnstile], lformula)?;
    ts.expect(&Tok::Turnstile, "`|-`")?;
    let succ = ts.comma_list(&[], lformula)?;
    ts.finish()?;
    let mut nodes = Vec::new();
    let mut arcs = Vec::new();
    for (a, b) in items {
        match b {
            Some(b) => arcs.push((a, b)),
            None => nodes.push(a),
        }
    }
    let ls = LabelledSequent::new(
        LabelTree::unchecked(nodes, arcs),
        Multiset::from_vec(ante),
        Multiset::from_vec(succ),
    );
    ls.validate()
        .map_err(|e| ParseError::Invalid(e.to_string()))?;
    Ok(ls)
}

impl FromStr for LabelledSequent {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_labelled_sequent(s)
    }
}
