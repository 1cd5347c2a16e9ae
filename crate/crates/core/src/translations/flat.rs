//! Nested to standard by flattening, and the embedding back.

use std::str::FromStr;

use super::{conj_of, disj_of, flatten_left, flatten_right, flatten_sequent, TranslateError};
use crate::derivation::{CutPolicy, Derivation};
use crate::multiset::Multiset;
use crate::nested::{
    check_nlbii, lift, nest_l_premise, nest_r_premise, unnest_l_conclusion, unnest_r_conclusion, Member,
    NestedSequent, NlbiiDerivation, NlbiiRule,
};
use crate::sequent::Seq;
use crate::standard::{
    and_left_chain, check_lbii, expand_unnest, node, or_right_chain, unnest_block, weaken, LbiiDerivation,
    LbiiRule, Side,
};
use crate::syntax::Formula;

/// Maps a nested derivation to a standard one of the flattened end
/// sequent. Nesting steps become implR/exclL blocks and unnesting steps
/// become unnest cuts.
pub fn translate_nlbii_to_lbii(d: &NlbiiDerivation) -> Result<LbiiDerivation, TranslateError> {
    check_nlbii(d, CutPolicy::FullCut)?;
    Ok(flatten(d))
}

fn members(m: &Multiset<Member>) -> impl Iterator<Item = &NestedSequent> {
    m.distinct().filter_map(Member::nested)
}

fn flatten(d: &NlbiiDerivation) -> LbiiDerivation {
    let concl = &d.conclusion;
    let flat = flatten_sequent(concl);
    let ps: Vec<LbiiDerivation> = d.premises.iter().map(flatten).collect();
    if let Some(l) = d.rule.local() {
        return node(LbiiRule::from_local(l), flat, ps);
    }
    let mut ps = ps.into_iter();
    let ih = ps.next().expect("checked arity");
    let prem = &d.premises[0].conclusion;
    match d.rule {
        NlbiiRule::Cut => {
            let a = d.cut_formula.clone().expect("checked cut");
            node(LbiiRule::Cut, flat, vec![ih, ps.next().expect("checked arity")]).with_cut(a)
        }
        NlbiiRule::NestR => {
            let m = members(&concl.succ)
                .find(|m| nest_r_premise(concl, m) == *prem)
                .expect("checked nestR");
            let l0: Vec<Formula> = flatten_left(&m.ante).into_vec();
            let r0: Vec<Formula> = flatten_right(&m.succ).into_vec();
            let g = flatten_left(&concl.ante);
            let inner = or_right_chain(&Seq::new(g.sum(&Multiset::from_vec(l0.clone())), Multiset::new()), &r0, ih);
            let body = and_left_chain(&Seq::new(g.clone(), Multiset::from_vec(vec![disj_of(&m.succ)])), &l0, inner);
            node(LbiiRule::ImplR, flat, vec![body])
        }
        NlbiiRule::NestL => {
            let m = members(&concl.ante)
                .find(|m| nest_l_premise(concl, m) == *prem)
                .expect("checked nestL");
            let l0: Vec<Formula> = flatten_left(&m.ante).into_vec();
            let r0: Vec<Formula> = flatten_right(&m.succ).into_vec();
            let delta = flatten_right(&concl.succ);
            let inner = or_right_chain(&Seq::new(Multiset::from_vec(l0.clone()), delta.clone()), &r0, ih);
            let body = and_left_chain(&Seq::new(Multiset::new(), delta.with(disj_of(&m.succ))), &l0, inner);
            node(LbiiRule::ExclL, flat, vec![body])
        }
        NlbiiRule::UnnestL | NlbiiRule::UnnestR => {
            let left = d.rule == NlbiiRule::UnnestL;
            let side = if left { &prem.ante } else { &prem.succ };
            let m = side
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
            let (a, b) = (conj_of(&m.ante), disj_of(&m.succ));
            let extra = Seq::new(flatten_left(&m.ante), flatten_right(&m.succ));
            let base = ih.conclusion.clone();
            let widened = weaken(&base, &extra, ih);
            if left {
                unnest_block(Side::L, &flat, &Formula::excl(a, b), widened)
            } else {
                unnest_block(Side::R, &flat, &Formula::imp(a, b), widened)
            }
        }
        _ => unreachable!("every other rule is local"),
    }
}

/// Reads a standard derivation as a nested one. Derived unnest rules and
/// unnest cuts are first replaced by plain cuts.
pub fn embed_lbii_to_nlbii(d: &LbiiDerivation) -> Result<NlbiiDerivation, TranslateError> {
    check_lbii(d, CutPolicy::FullCut)?;
    Ok(embed(&expand_unnest(d)))
}

fn embed(d: &LbiiDerivation) -> NlbiiDerivation {
    let rule = NlbiiRule::from_str(d.rule.name()).expect("basic rules are shared");
    let mut out = Derivation::new(rule, lift(&d.conclusion), d.premises.iter().map(embed).collect());
    out.cut_formula = d.cut_formula.clone();
    out
}
