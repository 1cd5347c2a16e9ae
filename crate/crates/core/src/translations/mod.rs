//! Translations between the standard, nested and labelled calculi, at the
//! level of sequents and of derivations.

mod flat;
mod to_labelled;
mod to_nested;

pub use flat::{embed_lbii_to_nlbii, translate_nlbii_to_lbii};
pub use to_labelled::{translate_lbii_to_llbii, translate_lbii_to_llbii_at, translate_nlbii_to_llbii};
pub use to_nested::{readdress, translate_llbii_to_nlbii};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::derivation::CheckError;
use crate::labelled::{LFormula, Label, LabelTree, LabelledSequent, LlbiiDerivation};
use crate::multiset::Multiset;
use crate::nested::{Member, NestedSequent};
use crate::sequent::{Seq, Sequent};
use crate::standard::LbiiDerivation;
use crate::syntax::{big_and, big_or, Formula};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("input derivation does not check: {0}")]
    NotChecked(#[from] CheckError),
    #[error("label `{0}` is not a node of the tree")]
    UnknownLabel(Label),
    #[error("derivation ends in `{found}`, expected `{expected}`")]
    EndSequent { expected: String, found: String },
}

/// Antecedent members as formulas: a nested `G0 |- D0` becomes an
/// exclusion.
pub fn flatten_left(m: &Multiset<Member>) -> Multiset<Formula> {
    m.map(|e| match e {
        Member::Formula(a) => a.clone(),
        Member::Nested(s) => Formula::excl(conj_of(&s.ante), disj_of(&s.succ)),
    })
}

/// Succedent members as formulas: a nested `G0 |- D0` becomes an
/// implication.
pub fn flatten_right(m: &Multiset<Member>) -> Multiset<Formula> {
    m.map(|e| match e {
        Member::Formula(a) => a.clone(),
        Member::Nested(s) => Formula::imp(conj_of(&s.ante), disj_of(&s.succ)),
    })
}

pub(crate) fn conj_of(m: &Multiset<Member>) -> Formula {
    big_and(flatten_left(m).iter())
}

pub(crate) fn disj_of(m: &Multiset<Member>) -> Formula {
    big_or(flatten_right(m).iter())
}

/// The standard sequent a nested sequent stands for.
pub fn flatten_sequent(s: &NestedSequent) -> Sequent {
    Seq::new(flatten_left(&s.ante), flatten_right(&s.succ))
}

/// Reads a labelled sequent as a nested one rooted at `root`: below
/// neighbours become antecedent members, above neighbours succedent
/// members.
pub fn lton(s: &LabelledSequent, root: &Label) -> Result<NestedSequent, TranslateError> {
    if !s.tree.contains(root) {
        return Err(TranslateError::UnknownLabel(root.clone()));
    }
    Ok(lton_at(s, root, None))
}

/// The nested sequent of the part of the tree seen from `x` when the
/// neighbour `from` is cut off.
pub(crate) fn lton_at(s: &LabelledSequent, x: &Label, from: Option<&Label>) -> NestedSequent {
    let (ante, succ) = s.at(x);
    let mut ante: Multiset<Member> = ante.map(|a| Member::Formula(a.clone()));
    let mut succ: Multiset<Member> = succ.map(|a| Member::Formula(a.clone()));
    for y in s.tree.below(x) {
        if Some(&y) != from {
            ante.insert(Member::Nested(lton_at(s, &y, Some(x))));
        }
    }
    for y in s.tree.above(x) {
        if Some(&y) != from {
            succ.insert(Member::Nested(lton_at(s, &y, Some(x))));
        }
    }
    Seq::new(ante, succ)
}

/// Reads a nested sequent as a labelled one with its top level at `root`.
/// Every nested member gets the least unused label `{root}{i}`.
pub fn ntol(s: &NestedSequent, root: &Label) -> LabelledSequent {
    let mut out = LabelledSequent::new(LabelTree::singleton(root.clone()), Multiset::new(), Multiset::new());
    let mut used = BTreeSet::from([root.clone()]);
    place(s, root, root.as_str(), &mut out, &mut used);
    out
}

fn place(s: &NestedSequent, x: &Label, stem: &str, out: &mut LabelledSequent, used: &mut BTreeSet<Label>) {
    for (left, side) in [(true, &s.ante), (false, &s.succ)] {
        for m in side.iter() {
            match m {
                Member::Formula(a) => {
                    let lf = LFormula::new(x.clone(), a.clone());
                    if left {
                        out.ante.insert(lf);
                    } else {
                        out.succ.insert(lf);
                    }
                }
                Member::Nested(inner) => {
                    let y = LabelTree::fresh(stem, used);
                    used.insert(y.clone());
                    out.tree = if left {
                        out.tree.with_arc(y.clone(), x.clone())
                    } else {
                        out.tree.with_arc(x.clone(), y.clone())
                    };
                    place(inner, &y, stem, out, used);
                }
            }
        }
    }
}

/// Labelled to standard, through the nested calculus.
pub fn translate_llbii_to_lbii(d: &LlbiiDerivation, root: &Label) -> Result<LbiiDerivation, TranslateError> {
    translate_nlbii_to_lbii(&translate_llbii_to_nlbii(d, root)?)
}
