//! Replacing derived unnest rules and unnest cuts by plain cuts.

use super::{
    conj_right, disj_left, fitting_splits, node, single_extra, unnest_readings, LbiiDerivation, LbiiRule, Side,
};
use crate::sequent::Sequent;
use crate::syntax::Formula;

/// The unnest cut that stands for a derived unnest step: from `premise`,
/// a derivation of `concl` with `e` added on side `which`, derives
/// `concl`. The other cut premise is closed by hyps.
pub fn unnest_block(which: Side, concl: &Sequent, e: &Formula, premise: LbiiDerivation) -> LbiiDerivation {
    let (a, b) = match e {
        Formula::Excl(a, b) | Formula::Impl(a, b) => (&**a, &**b),
        _ => unreachable!("unnest formulas are exclusions or implications"),
    };
    match which {
        Side::L => {
            let left = node(
                LbiiRule::ExclR,
                concl.with_succ(e.clone()),
                vec![conj_right(concl, a), disj_left(&concl.with_succ(e.clone()), b)],
            );
            let right = premise;
            node(LbiiRule::Cut, concl.clone(), vec![left, right]).with_cut(e.clone())
        }
        Side::R => {
            let left = premise;
            let right = node(
                LbiiRule::ImplL,
                concl.with_ante(e.clone()),
                vec![conj_right(&concl.with_ante(e.clone()), a), disj_left(concl, b)],
            );
            node(LbiiRule::Cut, concl.clone(), vec![left, right]).with_cut(e.clone())
        }
    }
}

/// The split an unnest node uses: its annotation, else the first that
/// fits.
fn split_of(which: Side, e: &Formula, d: &LbiiDerivation) -> Option<Sequent> {
    d.split
        .clone()
        .filter(|s| unnest_readings(which, e).contains(s))
        .or_else(|| fitting_splits(which, e, &d.conclusion).into_iter().next())
}

/// Rewrites derived unnestL/unnestR into cuts with their side proofs, and
/// unnestcutL/unnestcutR into plain cuts, leaving only the basic rules.
/// Nodes that do not check are kept as they are.
pub fn expand_unnest(d: &LbiiDerivation) -> LbiiDerivation {
    let premises: Vec<LbiiDerivation> = d.premises.iter().map(expand_unnest).collect();
    let concl = &d.conclusion;
    match d.rule {
        LbiiRule::UnnestcutL | LbiiRule::UnnestcutR if premises.len() == 2 => {
            let a = d
                .cut_formula
                .clone()
                .or_else(|| single_extra(&premises[1].conclusion.ante, &concl.ante));
            let mut out = node(LbiiRule::Cut, concl.clone(), premises);
            out.cut_formula = a;
            out
        }
        LbiiRule::UnnestL | LbiiRule::UnnestR if premises.len() == 1 => {
            let which = if d.rule == LbiiRule::UnnestL { Side::L } else { Side::R };
            let p = &premises[0].conclusion;
            let e = match which {
                Side::L => single_extra(&p.ante, &concl.ante),
                Side::R => single_extra(&p.succ, &concl.succ),
            };
            match e.filter(|e| split_of(which, e, d).is_some()) {
                Some(e) => {
                    let prem = premises.into_iter().next().expect("one premise");
                    unnest_block(which, concl, &e, prem)
                }
                None => {
                    let mut out = d.clone();
                    out.premises = premises;
                    out
                }
            }
        }
        _ => {
            let mut out = d.clone();
            out.premises = premises;
            out
        }
    }
}
