//! Formulas of bi-intuitionistic propositional logic and their concrete
//! text syntax.
//!
//! Operators, tightest first: `&`, `|`, `-<` (left associative) and `->`
//! (right associative). `&` and `|` associate to the left as well. `T` and
//! `F` are truth and falsity, atoms match `[a-z][a-zA-Z0-9_]*`. The prefix
//! forms `!A` (for `A -> F`) and `~A` (for `T -< A`) are accepted on input
//! and never printed.

pub(crate) mod lexer;
pub(crate) mod parser;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub(crate) use parser::TokenStream;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid character `{ch}` at position {pos}")]
    InvalidChar { pos: usize, ch: char },
    #[error("unexpected {found} at position {pos}, expected {expected}")]
    Unexpected {
        pos: usize,
        found: String,
        expected: &'static str,
    },
    #[error("unexpected end of input at position {pos}, expected {expected}")]
    UnexpectedEnd { pos: usize, expected: &'static str },
    #[error("unbalanced parenthesis at position {pos}")]
    Unbalanced { pos: usize },
    #[error("operator `{op}` at position {pos} is missing an operand")]
    MissingOperand { pos: usize, op: &'static str },
    #[error("{0}")]
    Invalid(String),
}

/// A bi-intuitionistic formula. The derived ordering is the total order
/// used to keep multisets canonical.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    Top,
    Bot,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
    /// `Excl(a, b)` is `a -< b`, the exclusion of `b` from `a`.
    Excl(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Impl(Box::new(a), Box::new(b))
    }

    pub fn excl(a: Formula, b: Formula) -> Self {
        Formula::Excl(Box::new(a), Box::new(b))
    }

    /// Strong negation `A -> F`.
    pub fn negation(a: Formula) -> Self {
        Formula::imp(a, Formula::Bot)
    }

    /// Weak negation `T -< A`.
    pub fn weak_neg(a: Formula) -> Self {
        Formula::excl(Formula::Top, a)
    }

    pub fn children(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Impl(a, b) | Formula::Excl(a, b) => {
                Some((a, b))
            }
            _ => None,
        }
    }

    pub fn depth(&self) -> usize {
        self.children()
            .map_or(0, |(a, b)| 1 + a.depth().max(b.depth()))
    }

    pub fn size(&self) -> usize {
        self.children().map_or(1, |(a, b)| 1 + a.size() + b.size())
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(p) => {
                out.insert(p.clone());
            }
            Formula::Top | Formula::Bot => {}
            _ => {
                let (a, b) = self.children().expect("binary");
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    /// The order-reversing dual: swaps `T`/`F`, `&`/`|`, and sends
    /// `A -> B` to `B' -< A'` and `A -< B` to `B' -> A'`.
    pub fn dual(&self) -> Formula {
        match self {
            Formula::Atom(_) => self.clone(),
            Formula::Top => Formula::Bot,
            Formula::Bot => Formula::Top,
            Formula::And(a, b) => Formula::or(a.dual(), b.dual()),
            Formula::Or(a, b) => Formula::and(a.dual(), b.dual()),
            Formula::Impl(a, b) => Formula::excl(b.dual(), a.dual()),
            Formula::Excl(a, b) => Formula::imp(b.dual(), a.dual()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Impl(..) => 1,
            Formula::Excl(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            _ => 5,
        }
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        let prec = self.precedence();
        let parens = prec < ctx;
        if parens {
            f.write_str("(")?;
        }
        match self {
            Formula::Atom(p) => f.write_str(p)?,
            Formula::Top => f.write_str("T")?,
            Formula::Bot => f.write_str("F")?,
            Formula::Impl(a, b) => {
                a.write_prec(f, prec + 1)?;
                f.write_str(" -> ")?;
                b.write_prec(f, prec)?;
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Excl(a, b) => {
                let op = match self {
                    Formula::And(..) => " & ",
                    Formula::Or(..) => " | ",
                    _ => " -< ",
                };
                a.write_prec(f, prec)?;
                f.write_str(op)?;
                b.write_prec(f, prec + 1)?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }

    /// Whether the printed form is a single token.
    pub fn is_simple(&self) -> bool {
        self.children().is_none()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut ts = TokenStream::new(text)?;
    if ts.at_end() {
        return Err(ts.unexpected("a formula"));
    }
    let f = ts.formula()?;
    ts.finish()?;
    Ok(f)
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

/// Right fold of `items` with `&`, closed by `T`.
pub fn big_and<'a>(items: impl DoubleEndedIterator<Item = &'a Formula>) -> Formula {
    items
        .rev()
        .fold(Formula::Top, |acc, a| Formula::and(a.clone(), acc))
}

/// Right fold of `items` with `|`, closed by `F`.
pub fn big_or<'a>(items: impl DoubleEndedIterator<Item = &'a Formula>) -> Formula {
    items
        .rev()
        .fold(Formula::Bot, |acc, a| Formula::or(a.clone(), acc))
}

/// All ways of reading `f` as a right-nested conjunction (`unit = T`) or
/// disjunction (`unit = F`) of a list of members. The spine `a & (b & T)`
/// yields `[a, b]`; a spine without the closing unit is also accepted, so
/// `a & b` yields `[a, b]` and `[a & b]`.
pub fn spine_readings(f: &Formula, conjunctive: bool) -> Vec<Vec<Formula>> {
    let unit = if conjunctive { Formula::Top } else { Formula::Bot };
    let split = |g: &Formula| -> Option<(Formula, Formula)> {
        match (g, conjunctive) {
            (Formula::And(a, b), true) | (Formula::Or(a, b), false) => {
                Some(((**a).clone(), (**b).clone()))
            }
            _ => None,
        }
    };
    let mut out = Vec::new();
    let mut prefix: Vec<Formula> = Vec::new();
    let mut rest = f.clone();
    loop {
        if rest == unit {
            out.push(prefix.clone());
            break;
        }
        let mut whole = prefix.clone();
        whole.push(rest.clone());
        out.push(whole);
        match split(&rest) {
            Some((head, tail)) => {
                prefix.push(head);
                rest = tail;
            }
            None => break,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn parses_counterexample_succedent() {
        let f = p("p -> ((p -< q) & r)");
        let expected = Formula::imp(
            Formula::atom("p"),
            Formula::and(
                Formula::excl(Formula::atom("p"), Formula::atom("q")),
                Formula::atom("r"),
            ),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn constants() {
        assert_eq!(p("T"), Formula::Top);
        assert_eq!(p("F"), Formula::Bot);
    }

    #[test]
    fn implication_is_right_associative() {
        let expected = Formula::imp(
            Formula::atom("p"),
            Formula::imp(Formula::atom("q"), Formula::atom("r")),
        );
        assert_eq!(p("p -> q -> r"), expected);
        assert_eq!(expected.to_string(), "p -> q -> r");
        assert_eq!(p("(p -> q) -> r").to_string(), "(p -> q) -> r");
    }

    #[test]
    fn exclusion_is_left_associative() {
        let f = p("p -< q -< r");
        assert_eq!(
            f,
            Formula::excl(
                Formula::excl(Formula::atom("p"), Formula::atom("q")),
                Formula::atom("r")
            )
        );
        assert_eq!(f.to_string(), "p -< q -< r");
        assert_eq!(p("p -< (q -< r)").to_string(), "p -< (q -< r)");
    }

    #[test]
    fn precedence_table() {
        assert_eq!(p("p & q | r -< s -> t"), p("(((p & q) | r) -< s) -> t"));
        assert_eq!(p("p & q | r -< s -> t").to_string(), "p & q | r -< s -> t");
    }

    #[test]
    fn prints_minimal_parentheses() {
        assert_eq!(Formula::weak_neg(Formula::atom("p")).to_string(), "T -< p");
        let f = Formula::and(
            Formula::excl(Formula::atom("p"), Formula::atom("q")),
            Formula::atom("r"),
        );
        assert_eq!(f.to_string(), "(p -< q) & r");
        let g = Formula::and(
            Formula::atom("p"),
            Formula::and(Formula::atom("r"), Formula::Top),
        );
        assert_eq!(g.to_string(), "p & (r & T)");
    }

    #[test]
    fn negation_sugar() {
        assert_eq!(p("!p"), p("p -> F"));
        assert_eq!(p("~p"), p("T -< p"));
        assert_eq!(p("!p & q"), p("(p -> F) & q"));
        assert_eq!(p("!p").to_string(), "p -> F");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(
            parse_formula("p & ").unwrap_err(),
            ParseError::MissingOperand { pos: 2, op: "&" }
        );
        assert_eq!(
            parse_formula("(p & q").unwrap_err(),
            ParseError::Unbalanced { pos: 0 }
        );
        assert_eq!(
            parse_formula("p & q)").unwrap_err(),
            ParseError::Unbalanced { pos: 5 }
        );
        assert_eq!(
            parse_formula("-> q").unwrap_err(),
            ParseError::MissingOperand { pos: 0, op: "->" }
        );
        assert!(matches!(
            parse_formula("p $ q"),
            Err(ParseError::InvalidChar { pos: 2, ch: '$' })
        ));
        assert!(matches!(
            parse_formula("p q"),
            Err(ParseError::Unexpected { pos: 2, .. })
        ));
        assert!(matches!(
            parse_formula(""),
            Err(ParseError::UnexpectedEnd { .. })
        ));
    }

    #[test]
    fn big_operators_fold_right_with_units() {
        let items = [Formula::atom("p"), Formula::atom("r")];
        assert_eq!(big_and(items.iter()).to_string(), "p & (r & T)");
        assert_eq!(big_or(items.iter()).to_string(), "p | (r | F)");
        assert_eq!(big_and([].iter()), Formula::Top);
        assert_eq!(big_or([].iter()), Formula::Bot);
    }

    #[test]
    fn spine_readings_cover_unit_and_unitless_folds() {
        let f = p("p & (r & T)");
        let readings = spine_readings(&f, true);
        assert!(readings.contains(&vec![p("p"), p("r")]));
        assert!(readings.contains(&vec![f.clone()]));
        let g = p("p");
        assert_eq!(spine_readings(&g, true), vec![vec![g.clone()]]);
        assert_eq!(spine_readings(&Formula::Top, true), vec![Vec::<Formula>::new()]);
        assert!(spine_readings(&p("q | F"), false).contains(&vec![p("q")]));
    }

    #[test]
    fn dual_is_an_involution() {
        let f = p("p -> ((p -< q) & r) | T");
        assert_eq!(f.dual().dual(), f);
        assert_eq!(p("p -> q").dual(), p("q -< p"));
    }
}
