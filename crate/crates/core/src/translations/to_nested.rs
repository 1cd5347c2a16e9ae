//! Labelled to nested: derive the sequent read at the label where the
//! last rule acts, then move the reading to the requested root.

use super::{lton, lton_at, TranslateError};
use crate::derivation::{CutPolicy, Derivation};
use crate::labelled::{
    check_llbii, nodemerge_d_conclusion, nodemerge_u_conclusion, nodesplit_d_premise, nodesplit_u_premise,
    LFormula, Label, LabelledSequent, LlbiiDerivation, LlbiiRule,
};
use crate::multiset::Multiset;
use crate::nested::{Member, NlbiiDerivation, NlbiiRule};
use crate::rules::instances;
use crate::sequent::Seq;
use crate::syntax::Formula;

/// Maps a labelled derivation to a nested derivation of its end sequent
/// read at `root`.
pub fn translate_llbii_to_nlbii(d: &LlbiiDerivation, root: &Label) -> Result<NlbiiDerivation, TranslateError> {
    check_llbii(d, CutPolicy::FullCut)?;
    if !d.conclusion.tree.contains(root) {
        return Err(TranslateError::UnknownLabel(root.clone()));
    }
    Ok(tr(d, root))
}

/// Given a derivation of `s` read at `z`, derives `s` read at `x` by
/// walking the path from `z` to `x` with nesting and unnesting steps.
pub fn readdress(
    d: &NlbiiDerivation,
    s: &LabelledSequent,
    z: &Label,
    x: &Label,
) -> Result<NlbiiDerivation, TranslateError> {
    let expected = lton(s, z)?;
    lton(s, x)?;
    if d.conclusion != expected {
        return Err(TranslateError::EndSequent {
            expected: expected.to_string(),
            found: d.conclusion.to_string(),
        });
    }
    Ok(walk(d.clone(), s, z, x))
}

fn walk(mut d: NlbiiDerivation, s: &LabelledSequent, z: &Label, x: &Label) -> NlbiiDerivation {
    let path = s.tree.path(x, z).expect("labels of one tree");
    for w in path.windows(2).rev() {
        let (c, n) = (&w[0], &w[1]);
        let here = lton_at(s, c, Some(n));
        let there = lton_at(s, n, Some(c));
        let concl = lton_at(s, c, None);
        d = if s.tree.has_arc(c, n) {
            let mid = Seq::new(one(Member::Nested(here)), one(Member::Nested(there)));
            Derivation::new(
                NlbiiRule::UnnestL,
                concl,
                vec![Derivation::new(NlbiiRule::NestR, mid, vec![d])],
            )
        } else {
            let mid = Seq::new(one(Member::Nested(there)), one(Member::Nested(here)));
            Derivation::new(
                NlbiiRule::UnnestR,
                concl,
                vec![Derivation::new(NlbiiRule::NestL, mid, vec![d])],
            )
        };
    }
    d
}

fn one(m: Member) -> Multiset<Member> {
    Multiset::from_vec(vec![m])
}

fn fm(a: &Formula) -> Member {
    Member::Formula(a.clone())
}

fn tr(d: &LlbiiDerivation, root: &Label) -> NlbiiDerivation {
    let (focus, out) = at_focus(d);
    walk(out, &d.conclusion, &focus, root)
}

/// The formula `ps` adds to `concl` on one side, with its label.
fn added(bigger: &Multiset<LFormula>, smaller: &Multiset<LFormula>) -> LFormula {
    bigger
        .minus(smaller)
        .and_then(|m| m.into_vec().into_iter().next())
        .expect("checked monotonicity step")
}

/// The label the last rule acts at, and a derivation of the end sequent
/// read there.
fn at_focus(d: &LlbiiDerivation) -> (Label, NlbiiDerivation) {
    let s = &d.conclusion;
    let prem = |i: usize| &d.premises[i].conclusion;
    let read = |x: &Label| lton_at(s, x, None);
    if let Some(l) = d.rule.local() {
        let ps: Vec<Seq<LFormula>> = d.premises.iter().map(|p| p.conclusion.seq()).collect();
        let (p, _) = instances(l, &s.seq())
            .into_iter()
            .find(|(_, q)| *q == ps)
            .expect("checked local rule");
        let x = p.label;
        let subs = d.premises.iter().map(|q| tr(q, &x)).collect();
        return (x.clone(), Derivation::new(NlbiiRule::from_local(l), read(&x), subs));
    }
    match d.rule {
        LlbiiRule::Cut => {
            let c = d.cut_formula.clone().expect("checked cut");
            let subs = d.premises.iter().map(|q| tr(q, &c.label)).collect();
            let out = Derivation::new(NlbiiRule::Cut, read(&c.label), subs).with_cut(c.formula);
            (c.label, out)
        }
        LlbiiRule::MonotL => {
            let moved = added(&prem(0).ante, &s.ante);
            let y = moved.label.clone();
            let x = s
                .tree
                .below(&y)
                .into_iter()
                .find(|x| s.ante.contains(&LFormula::new(x.clone(), moved.formula.clone())))
                .expect("checked monotL");
            let a = &moved.formula;
            let concl = read(&x);
            let copied = concl.with_ante(fm(a));
            let home = one(Member::Nested(lton_at(s, &x, Some(&y)))).with(fm(a));
            let mid = Seq::new(home, one(Member::Nested(lton_at(s, &y, Some(&x)))));
            let nest = Derivation::new(NlbiiRule::NestR, mid, vec![tr(&d.premises[0], &y)]);
            let unnest = Derivation::new(NlbiiRule::UnnestL, copied, vec![nest]);
            (x, Derivation::new(NlbiiRule::ContrL, concl, vec![unnest]))
        }
        LlbiiRule::MonotR => {
            let moved = added(&prem(0).succ, &s.succ);
            let y = moved.label.clone();
            let x = s
                .tree
                .above(&y)
                .into_iter()
                .find(|x| s.succ.contains(&LFormula::new(x.clone(), moved.formula.clone())))
                .expect("checked monotR");
            let a = &moved.formula;
            let concl = read(&x);
            let copied = concl.with_succ(fm(a));
            let home = one(Member::Nested(lton_at(s, &x, Some(&y)))).with(fm(a));
            let mid = Seq::new(one(Member::Nested(lton_at(s, &y, Some(&x)))), home);
            let nest = Derivation::new(NlbiiRule::NestL, mid, vec![tr(&d.premises[0], &y)]);
            let unnest = Derivation::new(NlbiiRule::UnnestR, copied, vec![nest]);
            (x, Derivation::new(NlbiiRule::ContrR, concl, vec![unnest]))
        }
        LlbiiRule::ImplR | LlbiiRule::ExclL => {
            let p = prem(0);
            let y = p
                .tree
                .nodes()
                .find(|l| !s.tree.contains(l))
                .cloned()
                .expect("checked fresh label");
            let x = p.tree.neighbours(&y).into_iter().next().expect("checked new arc");
            let right = d.rule == LlbiiRule::ImplR;
            let side = if right { &s.succ } else { &s.ante };
            let principal = side
                .distinct()
                .find(|lf| {
                    lf.label == x
                        && match (&lf.formula, right) {
                            (Formula::Impl(a, b), true) => {
                                p.ante == s.ante.clone().with(LFormula::new(y.clone(), (**a).clone()))
                                    && s.succ.without(lf).map(|r| r.with(LFormula::new(y.clone(), (**b).clone())))
                                        == Some(p.succ.clone())
                            }
                            (Formula::Excl(a, b), false) => {
                                p.succ == s.succ.clone().with(LFormula::new(y.clone(), (**b).clone()))
                                    && s.ante.without(lf).map(|r| r.with(LFormula::new(y.clone(), (**a).clone())))
                                        == Some(p.ante.clone())
                            }
                            _ => false,
                        }
                })
                .cloned()
                .expect("checked principal");
            let mut rest = s.clone();
            if right {
                rest.succ.remove_one(&principal);
            } else {
                rest.ante.remove_one(&principal);
            }
            let packed = Member::Nested(lton_at(&rest, &x, None));
            let top = tr(&d.premises[0], &y);
            let out = if right {
                let mid = Seq::new(one(packed), one(fm(&principal.formula)));
                let step = Derivation::new(NlbiiRule::ImplR, mid, vec![top]);
                Derivation::new(NlbiiRule::UnnestL, read(&x), vec![step])
            } else {
                let mid = Seq::new(one(fm(&principal.formula)), one(packed));
                let step = Derivation::new(NlbiiRule::ExclL, mid, vec![top]);
                Derivation::new(NlbiiRule::UnnestR, read(&x), vec![step])
            };
            (x, out)
        }
        LlbiiRule::NodesplitD | LlbiiRule::NodesplitU => {
            let down = d.rule == LlbiiRule::NodesplitD;
            let (x, y) = s
                .tree
                .arcs()
                .flat_map(|(a, b)| [(a.clone(), b.clone()), (b.clone(), a.clone())])
                .find(|(x, y)| {
                    let q = if down {
                        nodesplit_d_premise(s, x, y)
                    } else {
                        nodesplit_u_premise(s, x, y)
                    };
                    q.as_ref() == Some(prem(0))
                })
                .expect("checked nodesplit");
            let rule = if down { NlbiiRule::NestR } else { NlbiiRule::NestL };
            let out = Derivation::new(rule, read(&x), vec![tr(&d.premises[0], &y)]);
            (x, out)
        }
        LlbiiRule::NodemergeD | LlbiiRule::NodemergeU => {
            let down = d.rule == LlbiiRule::NodemergeD;
            let p = prem(0);
            let (_, x) = p
                .tree
                .arcs()
                .flat_map(|(a, b)| [(a.clone(), b.clone()), (b.clone(), a.clone())])
                .find(|(y, x)| {
                    let c = if down {
                        nodemerge_d_conclusion(p, y, x)
                    } else {
                        nodemerge_u_conclusion(p, y, x)
                    };
                    c.as_ref() == Some(s)
                })
                .expect("checked nodemerge");
            let rule = if down { NlbiiRule::UnnestL } else { NlbiiRule::UnnestR };
            let out = Derivation::new(rule, read(&x), vec![tr(&d.premises[0], &x)]);
            (x, out)
        }
        _ => unreachable!("every other rule is local"),
    }
}
