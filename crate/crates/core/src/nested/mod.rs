//! Nested sequents: contexts whose members are formulas or whole
//! sequents, with the rules that introduce and eliminate nesting.

mod search;

pub use search::search_nlbii_cutfree;

use std::fmt;
use std::str::FromStr;

use crate::derivation::{arity, check_tree, rules, Calculus, CheckError, CheckErrorKind, CutPolicy, Derivation};
use crate::multiset::Multiset;
use crate::rules::{self as local, Local};
use crate::sequent::{Elem, Seq, Sequent};
use crate::syntax::lexer::Tok;
use crate::syntax::{parse_formula, Formula, ParseError, TokenStream};

/// A context member. Formulas order before nested sequents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Member {
    Formula(Formula),
    Nested(NestedSequent),
}

pub type NestedSequent = Seq<Member>;

impl Member {
    pub fn nested(&self) -> Option<&NestedSequent> {
        match self {
            Member::Nested(s) => Some(s),
            Member::Formula(_) => None,
        }
    }
}

impl fmt::Display for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Member::Formula(a) => write!(f, "{a}"),
            Member::Nested(s) => write!(f, "[{s}]"),
        }
    }
}

impl Elem for Member {
    type Site = ();

    fn formula(&self) -> Option<&Formula> {
        match self {
            Member::Formula(a) => Some(a),
            Member::Nested(_) => None,
        }
    }

    fn site(&self) {}

    fn at(_: &(), f: Formula) -> Self {
        Member::Formula(f)
    }
}

/// A standard sequent seen as a nested one without nesting.
pub fn lift(s: &Sequent) -> NestedSequent {
    Seq::new(
        s.ante.map(|a| Member::Formula(a.clone())),
        s.succ.map(|a| Member::Formula(a.clone())),
    )
}

/// The standard sequent, when there is no nesting.
pub fn lower(s: &NestedSequent) -> Option<Sequent> {
    let side = |m: &Multiset<Member>| -> Option<Multiset<Formula>> {
        m.iter().map(|x| x.formula().cloned()).collect()
    };
    Some(Seq::new(side(&s.ante)?, side(&s.succ)?))
}

/// Top-level formulas of a context, in order.
pub fn formulas(m: &Multiset<Member>) -> Vec<Formula> {
    m.iter().filter_map(|x| x.formula().cloned()).collect()
}

/// Maximum nesting depth; a sequent without nested members has depth 0.
pub fn nesting_depth(s: &NestedSequent) -> usize {
    s.ante
        .iter()
        .chain(s.succ.iter())
        .filter_map(Member::nested)
        .map(|n| 1 + nesting_depth(n))
        .max()
        .unwrap_or(0)
}

/// Collapses repeated members at every level.
pub fn normalize(s: &NestedSequent) -> NestedSequent {
    let side = |m: &Multiset<Member>| {
        m.map(|x| match x {
            Member::Formula(a) => Member::Formula(a.clone()),
            Member::Nested(n) => Member::Nested(normalize(n)),
        })
        .dedup()
    };
    Seq::new(side(&s.ante), side(&s.succ))
}

fn member(ts: &mut TokenStream) -> Result<Member, ParseError> {
    if ts.eat(&Tok::LBracket) {
        let s = nested_body(ts)?;
        ts.expect(&Tok::RBracket, "`]`")?;
        Ok(Member::Nested(s))
    } else {
        Ok(Member::Formula(ts.formula()?))
    }
}

fn nested_body(ts: &mut TokenStream) -> Result<NestedSequent, ParseError> {
    let ante = ts.comma_list(&[Tok::Turnstile], member)?;
    ts.expect(&Tok::Turnstile, "`|-`")?;
    let succ = ts.comma_list(&[Tok::RBracket], member)?;
    Ok(Seq::from_vecs(ante, succ))
}

pub fn parse_nested_sequent(text: &str) -> Result<NestedSequent, ParseError> {
    let mut ts = TokenStream::new(text)?;
    let s = nested_body(&mut ts)?;
    ts.finish()?;
    Ok(s)
}

impl FromStr for Member {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut ts = TokenStream::new(s)?;
        let m = member(&mut ts)?;
        ts.finish()?;
        Ok(m)
    }
}

rules! {
    NlbiiRule {
        Hyp => "hyp",
        Cut => "cut",
        WeakL => "weakL",
        WeakR => "weakR",
        ContrL => "contrL",
        ContrR => "contrR",
        TopL => "topL",
        TopR => "topR",
        BotL => "botL",
        BotR => "botR",
        AndL => "andL",
        AndR => "andR",
        OrL => "orL",
        OrR => "orR",
        ImplL => "implL",
        ImplR => "implR",
        ExclL => "exclL",
        ExclR => "exclR",
        NestL => "nestL",
        NestR => "nestR",
        UnnestL => "unnestL",
        UnnestR => "unnestR",
    }
}

impl NlbiiRule {
    pub(crate) fn local(self) -> Option<Local> {
        crate::standard::LbiiRule::from_str(self.name())
            .ok()
            .and_then(|r| r.local())
    }

    pub(crate) fn from_local(l: Local) -> Self {
        NlbiiRule::from_str(crate::standard::LbiiRule::from_local(l).name()).expect("shared name")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Nlbii;

impl Calculus for Nlbii {
    const NAME: &'static str = "nlbii";
    type Rule = NlbiiRule;
    type Sequent = NestedSequent;
    type CutFormula = Formula;

    fn parse_sequent(text: &str) -> Result<NestedSequent, ParseError> {
        parse_nested_sequent(text)
    }

    fn parse_cut_formula(text: &str) -> Result<Formula, ParseError> {
        parse_formula(text)
    }
}

pub type NlbiiDerivation = Derivation<Nlbii>;

/// Premise of nestL on the antecedent member `m` of `concl`.
pub fn nest_l_premise(concl: &NestedSequent, m: &NestedSequent) -> NestedSequent {
    Seq::new(m.ante.clone(), m.succ.sum(&concl.succ))
}

/// Premise of nestR on the succedent member `m` of `concl`.
pub fn nest_r_premise(concl: &NestedSequent, m: &NestedSequent) -> NestedSequent {
    Seq::new(concl.ante.sum(&m.ante), m.succ.clone())
}

/// Conclusion of unnestL from `premise`, unpacking its antecedent member `m`.
pub fn unnest_l_conclusion(premise: &NestedSequent, m: &Member) -> Option<NestedSequent> {
    let inner = m.nested()?;
    let rest = premise.ante.without(m)?;
    Some(Seq::new(rest.sum(&inner.ante), inner.succ.sum(&premise.succ)))
}

/// Conclusion of unnestR from `premise`, unpacking its succedent member `m`.
pub fn unnest_r_conclusion(premise: &NestedSequent, m: &Member) -> Option<NestedSequent> {
    let inner = m.nested()?;
    let rest = premise.succ.without(m)?;
    Some(Seq::new(premise.ante.sum(&inner.ante), inner.succ.sum(&rest)))
}

pub fn check_nlbii(d: &NlbiiDerivation, policy: CutPolicy) -> Result<(), CheckError> {
    check_tree(d, |n| check_node(n, policy))
}

fn check_node(d: &NlbiiDerivation, policy: CutPolicy) -> Result<(), CheckErrorKind> {
    let concl = &d.conclusion;
    let prem: Vec<&NestedSequent> = d.premises.iter().map(|p| &p.conclusion).collect();
    if let Some(l) = d.rule.local() {
        return local::check(l, concl, &prem);
    }
    let none_nested = |side: &str| {
        CheckErrorKind::Principal(format!("no nested sequent in the {side} of `{concl}`"))
    };
    let mismatch = || CheckErrorKind::Context("no nested member yields the given premise".into());
    match d.rule {
        NlbiiRule::Cut => {
            arity(d, 2)?;
            if policy == CutPolicy::NoCut {
                return Err(CheckErrorKind::ForbiddenCut);
            }
            let a = d
                .cut_formula
                .as_ref()
                .ok_or(CheckErrorKind::MissingAnnotation("cut-formula"))?;
            let a = Member::Formula(a.clone());
            if *prem[0] != concl.with_succ(a.clone()) || *prem[1] != concl.with_ante(a) {
                return Err(CheckErrorKind::Context("premises are not the two sides of the cut".into()));
            }
            Ok(())
        }
        NlbiiRule::NestL | NlbiiRule::NestR => {
            arity(d, 1)?;
            let left = d.rule == NlbiiRule::NestL;
            let side = if left { &concl.ante } else { &concl.succ };
            let members: Vec<&NestedSequent> = side.distinct().filter_map(Member::nested).collect();
            if members.is_empty() {
                return Err(none_nested(if left { "antecedent" } else { "succedent" }));
            }
            let ok = members.iter().any(|m| {
                let expected = if left {
                    nest_l_premise(concl, m)
                } else {
                    nest_r_premise(concl, m)
                };
                &expected == prem[0]
            });
            ok.then_some(()).ok_or_else(mismatch)
        }
        NlbiiRule::UnnestL | NlbiiRule::UnnestR => {
            arity(d, 1)?;
            let left = d.rule == NlbiiRule::UnnestL;
            let p = prem[0];
            let side = if left { &p.ante } else { &p.succ };
            let members: Vec<&Member> = side.distinct().filter(|m| m.nested().is_some()).collect();
            if members.is_empty() {
                return Err(CheckErrorKind::Principal(format!(
                    "premise `{p}` has no nested sequent in the {}",
                    if left { "antecedent" } else { "succedent" }
                )));
            }
            let ok = members.iter().any(|m| {
                let c = if left {
                    unnest_l_conclusion(p, m)
                } else {
                    unnest_r_conclusion(p, m)
                };
                c.as_ref() == Some(concl)
            });
            ok.then_some(()).ok_or_else(mismatch)
        }
        _ => unreachable!("local rules handled above"),
    }
}
