//! Two-sided sequents over multisets.

use std::fmt;
use std::str::FromStr;

use crate::multiset::{write_list, Multiset};
use crate::syntax::lexer::Tok;
use crate::syntax::{Formula, ParseError, TokenStream};

/// A context member that may carry a formula. The site records where the
/// formula lives (nothing for plain formulas, a label for labelled ones),
/// so that the subformulas produced by a logical rule land at the same site.
pub trait Elem: Clone + Ord + fmt::Debug + fmt::Display {
    type Site: Clone + Eq + fmt::Debug;

    fn formula(&self) -> Option<&Formula>;
    fn site(&self) -> Self::Site;
    fn at(site: &Self::Site, f: Formula) -> Self;
}

impl Elem for Formula {
    type Site = ();

    fn formula(&self) -> Option<&Formula> {
        Some(self)
    }

    fn site(&self) {}

    fn at(_: &(), f: Formula) -> Self {
        f
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Seq<E: Ord> {
    pub ante: Multiset<E>,
    pub succ: Multiset<E>,
}

pub type Sequent = Seq<Formula>;

impl<E: Ord + Clone> Seq<E> {
    pub fn new(ante: Multiset<E>, succ: Multiset<E>) -> Self {
        Seq { ante, succ }
    }

    pub fn from_vecs(ante: Vec<E>, succ: Vec<E>) -> Self {
        Seq {
            ante: Multiset::from_vec(ante),
            succ: Multiset::from_vec(succ),
        }
    }

    pub fn with_ante(&self, e: E) -> Self {
        Seq::new(self.ante.clone().with(e), self.succ.clone())
    }

    pub fn with_succ(&self, e: E) -> Self {
        Seq::new(self.ante.clone(), self.succ.clone().with(e))
    }

    pub fn sum(&self, other: &Self) -> Self {
        Seq::new(self.ante.sum(&other.ante), self.succ.sum(&other.succ))
    }

    pub fn minus(&self, other: &Self) -> Option<Self> {
        Some(Seq::new(
            self.ante.minus(&other.ante)?,
            self.succ.minus(&other.succ)?,
        ))
    }
}

impl<E: Ord + fmt::Display> fmt::Display for Seq<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
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

impl Sequent {
    pub fn atoms(&self) -> std::collections::BTreeSet<String> {
        let mut out = std::collections::BTreeSet::new();
        for a in self.ante.iter().chain(self.succ.iter()) {
            a.collect_atoms(&mut out);
        }
        out
    }
}

impl FromStr for Sequent {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequent(s)
    }
}

pub(crate) fn sequent_body(ts: &mut TokenStream) -> Result<Sequent, ParseError> {
    let ante = ts.comma_list(&[Tok::Turnstile], |ts| ts.formula())?;
    ts.expect(&Tok::Turnstile, "`|-`")?;
    let succ = ts.comma_list(&[Tok::RBracket], |ts| ts.formula())?;
    Ok(Seq::from_vecs(ante, succ))
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut ts = TokenStream::new(text)?;
    let s = sequent_body(&mut ts)?;
    ts.finish()?;
    Ok(s)
}
