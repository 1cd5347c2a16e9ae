//! Moving a cut above the implication-right or exclusion-left inference
//! that blocks its elimination, using the derived unnest rules, and the
//! order-reversing duality on derivations.

use thiserror::Error;

use super::{and_left_chain, node, or_right_chain, unnest_formula, LbiiDerivation, LbiiRule, Side};
use crate::multiset::Multiset;
use crate::rules::{instances, Local};
use crate::sequent::Sequent;
use crate::syntax::Formula;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PermuteError {
    #[error("root is not a cut whose right premise ends in implR or whose left premise ends in exclL")]
    NoMatch,
    #[error("cut at the root has no cut formula")]
    MissingCutFormula,
}

/// The principal formula of the one-premise rule at the root of `d`.
fn principal(rule: Local, d: &LbiiDerivation) -> Option<Formula> {
    let prem = &d.premises.first()?.conclusion;
    instances(rule, &d.conclusion)
        .into_iter()
        .find(|(_, ps)| ps.len() == 1 && &ps[0] == prem)
        .map(|(p, _)| p)
}

pub fn permute_cut(d: &LbiiDerivation) -> Result<LbiiDerivation, PermuteError> {
    if d.rule != LbiiRule::Cut || d.premises.len() != 2 {
        return Err(PermuteError::NoMatch);
    }
    let a = d.cut_formula.clone().ok_or(PermuteError::MissingCutFormula)?;
    let (pi1, pi2) = (&d.premises[0], &d.premises[1]);
    if pi2.rule == LbiiRule::ImplR {
        if let Some(Formula::Impl(c, dd)) = principal(Local::ImplR, pi2) {
            return Ok(through_impl_right(d, a, *c, *dd));
        }
    }
    if pi1.rule == LbiiRule::ExclL {
        if let Some(Formula::Excl(c, dd)) = principal(Local::ExclL, pi1) {
            return Ok(through_excl_left(d, a, *c, *dd));
        }
    }
    Err(PermuteError::NoMatch)
}

fn seq(ante: Vec<Formula>, succ: Vec<Formula>) -> Sequent {
    Sequent::from_vecs(ante, succ)
}

fn through_impl_right(d: &LbiiDerivation, a: Formula, c: Formula, dd: Formula) -> LbiiDerivation {
    let concl = &d.conclusion;
    let cd = Formula::imp(c.clone(), dd.clone());
    let gamma = concl.ante.clone();
    let mut delta_cd = concl.succ.clone();
    // Delta together with C -> D is the whole succedent
    let split = Sequent::new(gamma.clone(), delta_cd.clone());
    let e = unnest_formula(Side::L, &split);
    delta_cd.remove_one(&cd);
    let delta = delta_cd;

    let pi1 = d.premises[0].clone();
    let pi2_top = d.premises[1].premises[0].clone();

    // left branch: exclL on E over the (andL, orR)* block
    let weakened = node(
        LbiiRule::WeakR,
        pi1.conclusion.with_succ(dd.clone()),
        vec![pi1],
    );
    let items_or: Vec<Formula> = split.succ.iter().cloned().collect();
    let items_and: Vec<Formula> = gamma.iter().cloned().collect();
    let mut or_items_with_ad = items_or.clone();
    or_items_with_ad.push(a.clone());
    or_items_with_ad.push(dd.clone());
    let inner = and_left_chain(&seq(vec![], or_items_with_ad), &items_and, weakened);
    let conj = crate::syntax::big_and(gamma.iter());
    let block = or_right_chain(&seq(vec![conj], vec![a.clone(), dd.clone()]), &items_or, inner);
    let ctx = Sequent::new(gamma.clone().with(e.clone()).with(c.clone()), Multiset::new());
    let left = node(
        LbiiRule::ExclL,
        ctx.with_succ(a.clone()).with_succ(dd.clone()),
        vec![block],
    );
    // right branch: weaken E into the implR premise
    let right = node(
        LbiiRule::WeakL,
        ctx.with_ante(a.clone()).with_succ(dd.clone()),
        vec![pi2_top],
    );
    let cut = node(LbiiRule::Cut, ctx.with_succ(dd.clone()), vec![left, right]).with_cut(a);
    let impl_r = node(
        LbiiRule::ImplR,
        Sequent::new(gamma.clone().with(e), delta.clone().with(cd)),
        vec![cut],
    );
    node(LbiiRule::UnnestL, concl.clone(), vec![impl_r]).with_split(split)
}

fn through_excl_left(d: &LbiiDerivation, a: Formula, c: Formula, dd: Formula) -> LbiiDerivation {
    let concl = &d.conclusion;
    let split = concl.clone();
    let f = unnest_formula(Side::R, &split);
    let delta = concl.succ.clone();

    let pi1_top = d.premises[0].premises[0].clone();
    let pi2 = d.premises[1].clone();

    // right branch: implR on F over the (andL, orR)* block
    let weakened = node(LbiiRule::WeakL, pi2.conclusion.with_ante(c.clone()), vec![pi2]);
    let items_and: Vec<Formula> = split.ante.iter().cloned().collect();
    let items_or: Vec<Formula> = delta.iter().cloned().collect();
    let mut base_ante = items_and.clone();
    base_ante.push(c.clone());
    base_ante.push(a.clone());
    let inner = or_right_chain(&seq(base_ante, vec![]), &items_or, weakened);
    let disj = crate::syntax::big_or(delta.iter());
    let block = and_left_chain(&seq(vec![c.clone(), a.clone()], vec![disj]), &items_and, inner);
    let ctx = Sequent::new(Multiset::new(), delta.clone().with(f.clone()).with(dd.clone()));
    let right = node(
        LbiiRule::ImplR,
        ctx.with_ante(c.clone()).with_ante(a.clone()),
        vec![block],
    );
    // left branch: weaken F into the exclL premise
    let left = node(
        LbiiRule::WeakR,
        ctx.with_ante(c.clone()).with_succ(a.clone()),
        vec![pi1_top],
    );
    let cut = node(LbiiRule::Cut, ctx.with_ante(c.clone()), vec![left, right]).with_cut(a);
    let excl_l = node(
        LbiiRule::ExclL,
        Sequent::new(concl.ante.clone(), delta.with(f)),
        vec![cut],
    );
    node(LbiiRule::UnnestR, concl.clone(), vec![excl_l]).with_split(split)
}

/// `G |- D` becomes `D' |- G'` with every formula dualised.
pub fn dual_sequent(s: &Sequent) -> Sequent {
    Sequent::new(s.succ.map(Formula::dual), s.ante.map(Formula::dual))
}

/// Dualises a derivation: sides swap, each rule becomes its mirror, and
/// the premises of two-premise rules whose premises play different roles
/// swap places.
pub fn dual_derivation(d: &LbiiDerivation) -> LbiiDerivation {
    use LbiiRule::*;
    let (rule, swap) = match d.rule {
        Hyp => (Hyp, false),
        Cut => (Cut, true),
        WeakL => (WeakR, false),
        WeakR => (WeakL, false),
        ContrL => (ContrR, false),
        ContrR => (ContrL, false),
        TopL => (BotR, false),
        TopR => (BotL, false),
        BotL => (TopR, false),
        BotR => (TopL, false),
        AndL => (OrR, false),
        AndR => (OrL, false),
        OrL => (AndR, false),
        OrR => (AndL, false),
        ImplL => (ExclR, true),
        ImplR => (ExclL, false),
        ExclL => (ImplR, false),
        ExclR => (ImplL, true),
        UnnestcutL => (UnnestcutR, true),
        UnnestcutR => (UnnestcutL, true),
        UnnestL => (UnnestR, false),
        UnnestR => (UnnestL, false),
    };
    let mut premises: Vec<LbiiDerivation> = d.premises.iter().map(dual_derivation).collect();
    if swap {
        premises.reverse();
    }
    let mut out = node(rule, dual_sequent(&d.conclusion), premises);
    out.cut_formula = d.cut_formula.as_ref().map(Formula::dual);
    out.split = d.split.as_ref().map(dual_sequent);
    out
}
