//! Nested and standard derivations as labelled ones.
//!
//! Moving into a neighbouring world is done by clearing everything that
//! would not survive the move (weakening, then folding away the unused
//! branches of the tree leaf by leaf), copying the antecedent (or
//! succedent) of the current label to the neighbour with monotonicity,
//! and finally collapsing the arc with nodesplit.

use std::collections::BTreeSet;

use super::{lton_at, ntol, TranslateError};
use crate::derivation::{Chain, CutPolicy, Derivation};
use crate::labelled::{
    nodesplit_d_premise, nodesplit_u_premise, LFormula, Label, LabelTree, LabelledSequent, Llbii, LlbiiDerivation,
    LlbiiRule,
};
use crate::nested::{
    check_nlbii, nest_l_premise, nest_r_premise, unnest_l_conclusion, unnest_r_conclusion, Member, NestedSequent,
    NlbiiDerivation, NlbiiRule,
};
use crate::rules::{self, instances, Local};
use crate::sequent::{Elem, Seq, Sequent};
use crate::standard::{check_lbii, expand_unnest, LbiiDerivation, LbiiRule};
use crate::syntax::Formula;

/// Maps a nested derivation to a labelled derivation of its end sequent
/// placed at `root`.
pub fn translate_nlbii_to_llbii(d: &NlbiiDerivation, root: &Label) -> Result<LlbiiDerivation, TranslateError> {
    check_nlbii(d, CutPolicy::FullCut)?;
    let target = ntol(&d.conclusion, root);
    Ok(from_nested(d, &target, root, root.as_str()))
}

/// [`translate_lbii_to_llbii_at`] with the root label `x`.
pub fn translate_lbii_to_llbii(d: &LbiiDerivation) -> Result<LlbiiDerivation, TranslateError> {
    translate_lbii_to_llbii_at(d, &Label::new("x"))
}

/// Maps a standard derivation to a labelled one on the singleton tree
/// `root`. Unnest steps are expanded into cuts first.
pub fn translate_lbii_to_llbii_at(d: &LbiiDerivation, root: &Label) -> Result<LlbiiDerivation, TranslateError> {
    check_lbii(d, CutPolicy::FullCut)?;
    Ok(from_standard(&expand_unnest(d), root, root.as_str()))
}

type LChain = Chain<Llbii>;

fn lf(x: &Label, a: &Formula) -> LFormula {
    LFormula::new(x.clone(), a.clone())
}

fn drop_one(ch: &mut LChain, left: bool, f: &LFormula) {
    let mut next = ch.cur.clone();
    if left {
        next.ante.remove_one(f);
        ch.step(LlbiiRule::WeakL, next);
    } else {
        next.succ.remove_one(f);
        ch.step(LlbiiRule::WeakR, next);
    }
}

/// Clears the way from `x` to a neighbour on side `up` (above when true):
/// weakens away the formulas at `x` on the far side, except one `keep`,
/// and every formula in the other branches on that side, then folds those
/// branches away. `target` is the neighbour that stays.
fn isolate(ch: &mut LChain, x: &Label, target: Option<&Label>, up: bool, keep: Option<&LFormula>) {
    let s = ch.cur.clone();
    let side = if up { s.tree.above(x) } else { s.tree.below(x) };
    let mut gone = BTreeSet::new();
    for u in side.iter().filter(|u| Some(*u) != target) {
        gone.extend(s.tree.component(u, Some(x)));
    }
    let mut skip = keep.cloned();
    for (left, side) in [(true, &s.ante), (false, &s.succ)] {
        for f in side.iter().filter(|f| gone.contains(&f.label) || (left != up && &f.label == x)) {
            if skip.as_ref() == Some(f) {
                skip = None;
                continue;
            }
            drop_one(ch, left, f);
        }
    }
    prune(ch, gone);
}

/// Folds away the formula-free nodes `gone`, leaves first.
fn prune(ch: &mut LChain, mut gone: BTreeSet<Label>) {
    while let Some(u) = gone
        .iter()
        .find(|u| ch.cur.tree.neighbours(u).len() == 1)
        .cloned()
    {
        let v = ch.cur.tree.neighbours(&u).remove(0);
        let (rule, next) = if ch.cur.tree.has_arc(&v, &u) {
            (LlbiiRule::NodesplitU, nodesplit_u_premise(&ch.cur, &u, &v))
        } else {
            (LlbiiRule::NodesplitD, nodesplit_d_premise(&ch.cur, &u, &v))
        };
        ch.step(rule, next.expect("isolated leaf"));
        gone.remove(&u);
    }
}

/// Copies the near side of `x` to `y`, drops it at `x`, and merges `x`
/// into `y`. `x` must have no other neighbour on the side of `y`.
fn collapse(ch: &mut LChain, x: &Label, y: &Label, up: bool) {
    let here: Vec<LFormula> = {
        let side = if up { &ch.cur.ante } else { &ch.cur.succ };
        side.iter().filter(|f| &f.label == x).cloned().collect()
    };
    for f in &here {
        let mut next = ch.cur.clone();
        if up {
            next.ante.insert(lf(y, &f.formula));
            ch.step(LlbiiRule::MonotL, next);
        } else {
            next.succ.insert(lf(y, &f.formula));
            ch.step(LlbiiRule::MonotR, next);
        }
    }
    for f in &here {
        drop_one(ch, up, f);
    }
    let (rule, next) = if up {
        (LlbiiRule::NodesplitD, nodesplit_d_premise(&ch.cur, x, y))
    } else {
        (LlbiiRule::NodesplitU, nodesplit_u_premise(&ch.cur, x, y))
    };
    ch.step(rule, next.expect("collapsible arc"));
}

/// implR (when `up`) or exclL on `principal` at `x`, into a fresh label.
fn new_world(ch: &mut LChain, principal: &LFormula, up: bool, stem: &str) -> Label {
    let x = &principal.label;
    let y = LabelTree::fresh(stem, ch.cur.tree.node_set());
    let (a, b) = match &principal.formula {
        Formula::Impl(a, b) | Formula::Excl(a, b) => (a, b),
        _ => unreachable!("implication or exclusion"),
    };
    let mut next = ch.cur.clone();
    if up {
        next.tree = next.tree.with_arc(x.clone(), y.clone());
        next.succ.remove_one(principal);
        next.ante.insert(lf(&y, a));
        next.succ.insert(lf(&y, b));
        ch.step(LlbiiRule::ImplR, next);
    } else {
        next.tree = next.tree.with_arc(y.clone(), x.clone());
        next.ante.remove_one(principal);
        next.ante.insert(lf(&y, a));
        next.succ.insert(lf(&y, b));
        ch.step(LlbiiRule::ExclL, next);
    }
    y
}

fn matching_principal<E: Elem>(l: Local, concl: &Seq<E>, ps: &[Seq<E>]) -> E {
    instances(l, concl)
        .into_iter()
        .find(|(_, q)| q == ps)
        .map(|(p, _)| p)
        .expect("checked local rule")
}

/// A derivation of `p`, whose reading at `x` is the end sequent of `d`.
fn from_nested(d: &NlbiiDerivation, p: &LabelledSequent, x: &Label, stem: &str) -> LlbiiDerivation {
    let concl = &d.conclusion;
    let prems: Vec<NestedSequent> = d.premises.iter().map(|q| q.conclusion.clone()).collect();
    let local = d.rule.local().filter(|l| !matches!(l, Local::ImplR | Local::ExclL));
    if let Some(l) = local {
        let a = matching_principal(l, concl, &prems);
        let a = lf(x, a.formula().expect("formula principal"));
        let qs = rules::premises(l, &p.seq(), &a).expect("same instance");
        let subs = d
            .premises
            .iter()
            .zip(qs)
            .map(|(sub, q)| from_nested(sub, &LabelledSequent::from_seq(p.tree.clone(), q), x, stem))
            .collect();
        return Derivation::new(LlbiiRule::from_local(l), p.clone(), subs);
    }
    let mut ch = LChain::new(p.clone());
    let (next_label, sub) = match d.rule {
        NlbiiRule::Cut => {
            let a = d.cut_formula.clone().expect("checked cut");
            let c = lf(x, &a);
            let left = LabelledSequent::new(p.tree.clone(), p.ante.clone(), p.succ.clone().with(c.clone()));
            let right = LabelledSequent::new(p.tree.clone(), p.ante.clone().with(c.clone()), p.succ.clone());
            let subs = vec![
                from_nested(&d.premises[0], &left, x, stem),
                from_nested(&d.premises[1], &right, x, stem),
            ];
            return Derivation::new(LlbiiRule::Cut, p.clone(), subs).with_cut(c);
        }
        NlbiiRule::NestR | NlbiiRule::NestL => {
            let up = d.rule == NlbiiRule::NestR;
            let (side, nbrs) = if up {
                (&concl.succ, p.tree.above(x))
            } else {
                (&concl.ante, p.tree.below(x))
            };
            let y = side
                .distinct()
                .filter_map(Member::nested)
                .filter(|m| {
                    let q = if up { nest_r_premise(concl, m) } else { nest_l_premise(concl, m) };
                    q == prems[0]
                })
                .find_map(|m| nbrs.iter().find(|y| lton_at(p, y, Some(x)) == *m).cloned())
                .expect("member has a node");
            isolate(&mut ch, x, Some(&y), up, None);
            collapse(&mut ch, x, &y, up);
            (y, &d.premises[0])
        }
        NlbiiRule::ImplR | NlbiiRule::ExclL => {
            let up = d.rule == NlbiiRule::ImplR;
            let l = if up { Local::ImplR } else { Local::ExclL };
            let a = matching_principal(l, concl, &prems);
            let a = lf(x, a.formula().expect("formula principal"));
            isolate(&mut ch, x, None, up, Some(&a));
            let y = new_world(&mut ch, &a, up, stem);
            collapse(&mut ch, x, &y, up);
            (y, &d.premises[0])
        }
        NlbiiRule::UnnestL | NlbiiRule::UnnestR => {
            let left = d.rule == NlbiiRule::UnnestL;
            let prem = &prems[0];
            let side = if left { &prem.ante } else { &prem.succ };
            let inner = side
                .distinct()
                .find(|m| {
                    let c = if left {
                        unnest_l_conclusion(prem, m)
                    } else {
                        unnest_r_conclusion(prem, m)
                    };
                    c.as_ref() == Some(concl)
                })
                .and_then(Member::nested)
                .expect("checked unnest");
            let split = split_off(p, x, inner, left, stem);
            let rule = if left { LlbiiRule::NodemergeD } else { LlbiiRule::NodemergeU };
            let sub = from_nested(&d.premises[0], &split, x, stem);
            return Derivation::new(rule, p.clone(), vec![sub]);
        }
        _ => unreachable!("every other rule is local"),
    };
    let top = from_nested(sub, &ch.cur.clone(), &next_label, stem);
    ch.finish(top)
}

/// The premise of a nodemerge step that gathers the part of `p` at `x`
/// matching `inner` into a fresh node below `x` (`left`) or above it.
fn split_off(p: &LabelledSequent, x: &Label, inner: &NestedSequent, left: bool, stem: &str) -> LabelledSequent {
    let y = LabelTree::fresh(stem, p.tree.node_set());
    let mut out = p.clone();
    let mut arcs: BTreeSet<(Label, Label)> = p.tree.arc_set().clone();
    let mut moved: BTreeSet<Label> = BTreeSet::new();
    for (ante, members) in [(true, &inner.ante), (false, &inner.succ)] {
        for m in members.iter() {
            match m {
                Member::Formula(a) => {
                    let side = if ante { &mut out.ante } else { &mut out.succ };
                    let removed = side.remove_one(&lf(x, a));
                    debug_assert!(removed);
                    side.insert(lf(&y, a));
                }
                Member::Nested(k) => {
                    let nbrs = if ante { p.tree.below(x) } else { p.tree.above(x) };
                    let u = nbrs
                        .into_iter()
                        .find(|u| !moved.contains(u) && lton_at(p, u, Some(x)) == *k)
                        .expect("member has a node");
                    moved.insert(u.clone());
                    if ante {
                        arcs.remove(&(u.clone(), x.clone()));
                        arcs.insert((u, y.clone()));
                    } else {
                        arcs.remove(&(x.clone(), u.clone()));
                        arcs.insert((y.clone(), u));
                    }
                }
            }
        }
    }
    arcs.insert(if left { (y.clone(), x.clone()) } else { (x.clone(), y.clone()) });
    out.tree = LabelTree::unchecked(p.tree.nodes().cloned().chain([y]), arcs);
    out
}

/// A labelled derivation of the standard end sequent of `d` at `x`.
fn from_standard(d: &LbiiDerivation, x: &Label, stem: &str) -> LlbiiDerivation {
    let concl = LabelledSequent::at_label(&d.conclusion, x);
    match d.rule {
        LbiiRule::ImplR | LbiiRule::ExclL => {
            let up = d.rule == LbiiRule::ImplR;
            let l = d.rule.local().expect("logical rule");
            let ps: Vec<Sequent> = d.premises.iter().map(|q| q.conclusion.clone()).collect();
            let a = lf(x, &matching_principal(l, &d.conclusion, &ps));
            let mut ch = LChain::new(concl);
            isolate(&mut ch, x, None, up, Some(&a));
            let y = new_world(&mut ch, &a, up, stem);
            collapse(&mut ch, x, &y, up);
            let top = from_standard(&d.premises[0], &y, stem);
            debug_assert_eq!(top.conclusion, ch.cur);
            ch.finish(top)
        }
        LbiiRule::Cut => {
            let a = d.cut_formula.clone().expect("checked cut");
            let subs = d.premises.iter().map(|q| from_standard(q, x, stem)).collect();
            Derivation::new(LlbiiRule::Cut, concl, subs).with_cut(lf(x, &a))
        }
        r => {
            let l = r.local().expect("unnest steps are expanded");
            let subs = d.premises.iter().map(|q| from_standard(q, x, stem)).collect();
            Derivation::new(LlbiiRule::from_local(l), concl, subs)
        }
    }
}
