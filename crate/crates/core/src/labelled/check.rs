//! Labelled rules and the derivation checker.

use std::collections::{BTreeMap, BTreeSet};

use super::{check_injective, parse_labelled_sequent, LFormula, Label, LabelledSequent, TreeError};
use crate::derivation::{arity, check_tree, rules, Calculus, CheckError, CheckErrorKind, CutPolicy, Derivation};
use crate::rules::{self as local, Local};
use crate::syntax::{Formula, ParseError};

rules! {
    LlbiiRule {
        Hyp => "hyp",
        Cut => "cut",
        WeakL => "weakL",
        WeakR => "weakR",
        ContrL => "contrL",
        ContrR => "contrR",
        NodesplitU => "nodesplitU",
        NodesplitD => "nodesplitD",
        NodemergeD => "nodemergeD",
        NodemergeU => "nodemergeU",
        MonotL => "monotL",
        MonotR => "monotR",
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
    }
}

impl LlbiiRule {
    /// Rules acting on one labelled formula with the tree unchanged.
    pub(crate) fn local(self) -> Option<Local> {
        use LlbiiRule::*;
        Some(match self {
            Hyp => Local::Hyp,
            WeakL => Local::WeakL,
            WeakR => Local::WeakR,
            ContrL => Local::ContrL,
            ContrR => Local::ContrR,
            TopL => Local::TopL,
            TopR => Local::TopR,
            BotL => Local::BotL,
            BotR => Local::BotR,
            AndL => Local::AndL,
            AndR => Local::AndR,
            OrL => Local::OrL,
            OrR => Local::OrR,
            ImplL => Local::ImplL,
            ExclR => Local::ExclR,
            _ => return None,
        })
    }

    pub(crate) fn from_local(l: Local) -> Self {
        use LlbiiRule::*;
        match l {
            Local::Hyp => Hyp,
            Local::WeakL => WeakL,
            Local::WeakR => WeakR,
            Local::ContrL => ContrL,
            Local::ContrR => ContrR,
            Local::TopL => TopL,
            Local::TopR => TopR,
            Local::BotL => BotL,
            Local::BotR => BotR,
            Local::AndL => AndL,
            Local::AndR => AndR,
            Local::OrL => OrL,
            Local::OrR => OrR,
            Local::ImplL => ImplL,
            Local::ImplR => ImplR,
            Local::ExclL => ExclL,
            Local::ExclR => ExclR,
        }
    }

    pub fn is_tree_surgery(self) -> bool {
        matches!(
            self,
            LlbiiRule::NodesplitU | LlbiiRule::NodesplitD | LlbiiRule::NodemergeD | LlbiiRule::NodemergeU
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Llbii;

impl Calculus for Llbii {
    const NAME: &'static str = "llbii";
    type Rule = LlbiiRule;
    type Sequent = LabelledSequent;
    type CutFormula = LFormula;

    fn parse_sequent(text: &str) -> Result<LabelledSequent, ParseError> {
        parse_labelled_sequent(text)
    }

    fn parse_cut_formula(text: &str) -> Result<LFormula, ParseError> {
        text.parse()
    }
}

pub type LlbiiDerivation = Derivation<Llbii>;

/// Contracts the arc between `x` and `y` by renaming `x` to `y`.
pub fn merge_into(s: &LabelledSequent, x: &Label, y: &Label) -> LabelledSequent {
    s.map_labels(|l| if l == x { y.clone() } else { l.clone() })
}

/// Premise of nodesplitD for the arc `x > y` of `concl`, if the provisos
/// hold: `x` has no other arc upwards and carries no formula.
pub fn nodesplit_d_premise(concl: &LabelledSequent, x: &Label, y: &Label) -> Option<LabelledSequent> {
    nodesplit_premise(concl, x, y, true)
}

/// Premise of nodesplitU for the arc `y > x` of `concl`.
pub fn nodesplit_u_premise(concl: &LabelledSequent, x: &Label, y: &Label) -> Option<LabelledSequent> {
    nodesplit_premise(concl, x, y, false)
}

fn nodesplit_premise(concl: &LabelledSequent, x: &Label, y: &Label, down: bool) -> Option<LabelledSequent> {
    let t = &concl.tree;
    let (arc, others) = if down {
        (t.has_arc(x, y), t.above(x).len())
    } else {
        (t.has_arc(y, x), t.below(x).len())
    };
    let unused = concl.ante.iter().chain(concl.succ.iter()).all(|lf| &lf.label != x);
    (arc && others == 1 && unused).then(|| merge_into(concl, x, y))
}

/// Conclusion of nodemergeD from `premise`, merging `y` into `x` along
/// the arc `y > x`.
pub fn nodemerge_d_conclusion(premise: &LabelledSequent, y: &Label, x: &Label) -> Option<LabelledSequent> {
    premise.tree.has_arc(y, x).then(|| merge_into(premise, y, x))
}

/// Conclusion of nodemergeU from `premise`, merging `y` into `x` along
/// the arc `x > y`.
pub fn nodemerge_u_conclusion(premise: &LabelledSequent, y: &Label, x: &Label) -> Option<LabelledSequent> {
    premise.tree.has_arc(x, y).then(|| merge_into(premise, y, x))
}

/// Every label used anywhere in a derivation.
pub fn derivation_labels(d: &LlbiiDerivation) -> BTreeSet<Label> {
    let mut out = BTreeSet::new();
    for (_, n) in d.nodes() {
        out.extend(n.conclusion.labels());
        if let Some(c) = &n.cut_formula {
            out.insert(c.label.clone());
        }
    }
    out
}

/// Injective relabelling of a whole derivation.
pub fn rename_derivation(
    d: &LlbiiDerivation,
    renaming: &BTreeMap<Label, Label>,
) -> Result<LlbiiDerivation, TreeError> {
    check_injective(&derivation_labels(d), renaming)?;
    Ok(rename_unchecked(d, renaming))
}

fn rename_unchecked(d: &LlbiiDerivation, r: &BTreeMap<Label, Label>) -> LlbiiDerivation {
    let f = |l: &Label| r.get(l).cloned().unwrap_or_else(|| l.clone());
    let mut out = Derivation::new(
        d.rule,
        d.conclusion.map_labels(f),
        d.premises.iter().map(|p| rename_unchecked(p, r)).collect(),
    );
    out.cut_formula = d
        .cut_formula
        .as_ref()
        .map(|c| LFormula::new(f(&c.label), c.formula.clone()));
    out.split = d.split.clone();
    out
}

pub fn check_llbii(d: &LlbiiDerivation, policy: CutPolicy) -> Result<(), CheckError> {
    check_tree(d, |n| check_node(n, policy))
}

fn same_tree(concl: &LabelledSequent, prem: &[&LabelledSequent]) -> Result<(), CheckErrorKind> {
    if prem.iter().all(|p| p.tree == concl.tree) {
        Ok(())
    } else {
        Err(CheckErrorKind::Tree("premise tree differs from the conclusion tree".into()))
    }
}

fn check_node(d: &LlbiiDerivation, policy: CutPolicy) -> Result<(), CheckErrorKind> {
    let concl = &d.conclusion;
    concl
        .validate()
        .map_err(|e| CheckErrorKind::Malformed(e.to_string()))?;
    let prem: Vec<&LabelledSequent> = d.premises.iter().map(|p| &p.conclusion).collect();
    if let Some(l) = d.rule.local() {
        arity(d, l.arity())?;
        same_tree(concl, &prem)?;
        let seqs: Vec<_> = prem.iter().map(|p| p.seq()).collect();
        let refs: Vec<_> = seqs.iter().collect();
        return local::check(l, &concl.seq(), &refs);
    }
    use LlbiiRule::*;
    match d.rule {
        Cut => {
            arity(d, 2)?;
            if policy == CutPolicy::NoCut {
                return Err(CheckErrorKind::ForbiddenCut);
            }
            let a = d
                .cut_formula
                .as_ref()
                .ok_or(CheckErrorKind::MissingAnnotation("cut-formula"))?;
            if !concl.tree.contains(&a.label) {
                return Err(CheckErrorKind::Tree(format!("cut label `{}` is not in the tree", a.label)));
            }
            same_tree(concl, &prem)?;
            let l = concl.seq().with_succ(a.clone());
            let r = concl.seq().with_ante(a.clone());
            if prem[0].seq() != l || prem[1].seq() != r {
                return Err(CheckErrorKind::Context("premises are not the two sides of the cut".into()));
            }
            Ok(())
        }
        MonotL | MonotR => {
            arity(d, 1)?;
            same_tree(concl, &prem)?;
            let left = d.rule == MonotL;
            let (c, p, other_c, other_p) = if left {
                (&concl.ante, &prem[0].ante, &concl.succ, &prem[0].succ)
            } else {
                (&concl.succ, &prem[0].succ, &concl.ante, &prem[0].ante)
            };
            let added = match p.minus(c) {
                Some(m) if m.len() == 1 && other_c == other_p => m.into_vec().remove(0),
                _ => {
                    return Err(CheckErrorKind::Context(
                        "premise must add exactly one labelled formula on the same side".into(),
                    ))
                }
            };
            let sources = if left {
                concl.tree.below(&added.label)
            } else {
                concl.tree.above(&added.label)
            };
            let found = sources
                .iter()
                .any(|x| c.contains(&LFormula::new(x.clone(), added.formula.clone())));
            if found {
                Ok(())
            } else {
                Err(CheckErrorKind::Principal(format!(
                    "no adjacent label carries `{}` on the {} side",
                    added.formula,
                    if left { "left" } else { "right" }
                )))
            }
        }
        ImplR | ExclL => {
            arity(d, 1)?;
            let right = d.rule == ImplR;
            let p = prem[0];
            let principals: Vec<&LFormula> = if right {
                concl
                    .succ
                    .distinct()
                    .filter(|lf| matches!(lf.formula, Formula::Impl(..)))
                    .collect()
            } else {
                concl
                    .ante
                    .distinct()
                    .filter(|lf| matches!(lf.formula, Formula::Excl(..)))
                    .collect()
            };
            if principals.is_empty() {
                return Err(CheckErrorKind::Principal(format!(
                    "expected {} in `{concl}`",
                    if right {
                        "an implication in the succedent"
                    } else {
                        "an exclusion in the antecedent"
                    }
                )));
            }
            let new: Vec<&Label> = p.tree.nodes().filter(|l| !concl.tree.contains(l)).collect();
            if new.is_empty() {
                return Err(CheckErrorKind::Freshness(format!(
                    "premise of {} introduces no new label",
                    d.rule
                )));
            }
            if new.len() > 1 || p.tree.len() != concl.tree.len() + 1 {
                return Err(CheckErrorKind::Tree("premise tree must add exactly one label".into()));
            }
            let y = new[0];
            for lf in principals {
                let x = &lf.label;
                let (a, b) = match &lf.formula {
                    Formula::Impl(a, b) | Formula::Excl(a, b) => (a, b),
                    _ => unreachable!(),
                };
                let tree = if right {
                    concl.tree.with_arc(x.clone(), y.clone())
                } else {
                    concl.tree.with_arc(y.clone(), x.clone())
                };
                let ya = LFormula::new(y.clone(), (**a).clone());
                let yb = LFormula::new(y.clone(), (**b).clone());
                let (ante, succ) = if right {
                    (concl.ante.clone().with(ya), concl.succ.without(lf).expect("member").with(yb))
                } else {
                    (concl.ante.without(lf).expect("member").with(ya), concl.succ.clone().with(yb))
                };
                if *p == LabelledSequent::new(tree, ante, succ) {
                    return Ok(());
                }
            }
            Err(CheckErrorKind::Context(format!(
                "premise does not match {} with fresh label `{y}`",
                d.rule
            )))
        }
        NodesplitD | NodesplitU => {
            arity(d, 1)?;
            let down = d.rule == NodesplitD;
            let mut proviso = false;
            for (a, b) in concl.tree.arcs() {
                let (x, y) = if down { (a, b) } else { (b, a) };
                let cand = if down {
                    nodesplit_d_premise(concl, x, y)
                } else {
                    nodesplit_u_premise(concl, x, y)
                };
                match cand {
                    Some(c) if &c == prem[0] => return Ok(()),
                    Some(_) => proviso = true,
                    None => {}
                }
            }
            if proviso {
                Err(CheckErrorKind::Context("no arc contraction yields the premise".into()))
            } else {
                Err(CheckErrorKind::Proviso(
                    "no arc whose outer end has no other arc that way and carries no formula".into(),
                ))
            }
        }
        NodemergeD | NodemergeU => {
            arity(d, 1)?;
            let p = prem[0];
            for (a, b) in p.tree.arcs() {
                // nodemergeD contracts y > x into x, nodemergeU contracts x > y
                let c = if d.rule == NodemergeD {
                    nodemerge_d_conclusion(p, a, b)
                } else {
                    nodemerge_u_conclusion(p, b, a)
                };
                if c.as_ref() == Some(concl) {
                    return Ok(());
                }
            }
            Err(CheckErrorKind::Tree("no arc of the premise merges into the conclusion".into()))
        }
        _ => unreachable!("local rules handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ls(t: &str) -> LabelledSequent {
        parse_labelled_sequent(t).unwrap()
    }

    fn leaf(r: LlbiiRule, t: &str) -> LlbiiDerivation {
        Derivation::leaf(r, ls(t))
    }

    fn node(r: LlbiiRule, t: &str, ps: Vec<LlbiiDerivation>) -> LlbiiDerivation {
        Derivation::new(r, ls(t), ps)
    }

    #[test]
    fn hyp_needs_same_label() {
        check_llbii(&leaf(LlbiiRule::Hyp, "[x] x:p |- x:p"), CutPolicy::NoCut).unwrap();
        assert!(check_llbii(&leaf(LlbiiRule::Hyp, "[x>y] x:p |- y:p"), CutPolicy::NoCut).is_err());
    }

    #[test]
    fn impl_right_freshness() {
        let ok = node(
            LlbiiRule::ImplR,
            "[x] |- x:p -> p",
            vec![leaf(LlbiiRule::Hyp, "[x>y] y:p |- y:p")],
        );
        check_llbii(&ok, CutPolicy::NoCut).unwrap();
        let stale = node(
            LlbiiRule::ImplR,
            "[x>y] |- x:p -> p",
            vec![leaf(LlbiiRule::Hyp, "[x>y] y:p |- y:p")],
        );
        let err = check_llbii(&stale, CutPolicy::NoCut).unwrap_err();
        assert!(matches!(err.kind, CheckErrorKind::Freshness(_)));
        assert!(err.to_string().contains("freshness"));
    }

    #[test]
    fn monotonicity_follows_arcs() {
        let ok = node(
            LlbiiRule::MonotL,
            "[x>y] x:p |- y:p",
            vec![leaf(LlbiiRule::Hyp, "[x>y] x:p, y:p |- y:p")],
        );
        check_llbii(&ok, CutPolicy::NoCut).unwrap();
        let wrong_way = node(
            LlbiiRule::MonotL,
            "[y>x] x:p |- y:p",
            vec![leaf(LlbiiRule::Hyp, "[y>x] x:p, y:p |- y:p")],
        );
        assert!(check_llbii(&wrong_way, CutPolicy::NoCut).is_err());
        let r = node(
            LlbiiRule::MonotR,
            "[x>y] x:p |- y:p",
            vec![leaf(LlbiiRule::Hyp, "[x>y] x:p |- x:p, y:p")],
        );
        check_llbii(&r, CutPolicy::NoCut).unwrap();
    }

    #[test]
    fn split_and_merge() {
        let s = ls("[z>x, x>y] y:p |- z:q");
        let p = nodesplit_d_premise(&s, &Label::from("x"), &Label::from("y")).unwrap();
        assert_eq!(p, ls("[z>y] y:p |- z:q"));
        let back = nodemerge_u_conclusion(&s, &Label::from("y"), &Label::from("x")).unwrap();
        assert_eq!(back.iso_key(), p.iso_key());
        assert!(nodesplit_d_premise(&ls("[x>y] x:p |-"), &Label::from("x"), &Label::from("y")).is_none());
        let d = node(LlbiiRule::NodesplitD, "[z>x, x>y] y:p |- y:p", vec![leaf(LlbiiRule::Hyp, "[z>y] y:p |- y:p")]);
        check_llbii(&d, CutPolicy::NoCut).unwrap();
        let m = node(LlbiiRule::NodemergeD, "[x] x:p |- x:p", vec![leaf(LlbiiRule::Hyp, "[y>x] y:p |- y:p")]);
        check_llbii(&m, CutPolicy::NoCut).unwrap();
    }

    #[test]
    fn renaming_keeps_verdict() {
        let d = node(
            LlbiiRule::ImplR,
            "[x] |- x:p -> p",
            vec![leaf(LlbiiRule::Hyp, "[x>y] y:p |- y:p")],
        );
        let swap = BTreeMap::from([(Label::from("x"), Label::from("y")), (Label::from("y"), Label::from("x"))]);
        let r = rename_derivation(&d, &swap).unwrap();
        check_llbii(&r, CutPolicy::NoCut).unwrap();
        assert_eq!(r.conclusion, ls("[y] |- y:p -> p"));
    }

    #[test]
    fn cut_policy() {
        let d = node(
            LlbiiRule::Cut,
            "[x] x:p |- x:p",
            vec![leaf(LlbiiRule::Hyp, "[x] x:p |- x:p, x:p"), leaf(LlbiiRule::Hyp, "[x] x:p, x:p |- x:p")],
        )
        .with_cut("x:p".parse().unwrap());
        check_llbii(&d, CutPolicy::FullCut).unwrap();
        assert_eq!(check_llbii(&d, CutPolicy::NoCut).unwrap_err().to_string(), "forbidden cut at root");
    }
}
