//! The standard multiple-conclusion calculus, with its unnest-cut and
//! derived unnest extensions.

mod expand;
mod permute;
mod search;

pub use expand::{expand_unnest, unnest_block};
pub use permute::{dual_derivation, dual_sequent, permute_cut, PermuteError};
pub use search::search_lbii_cutfree;

use thiserror::Error;

use crate::derivation::{arity, check_tree, rules, Calculus, CheckError, CheckErrorKind, CutPolicy, Derivation};
use crate::multiset::Multiset;
use crate::rules::{self as local, Local};
use crate::sequent::{parse_sequent, Sequent};
use crate::syntax::{big_and, big_or, parse_formula, spine_readings, Formula, ParseError};

rules! {
    LbiiRule {
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
        UnnestcutL => "unnestcutL",
        UnnestcutR => "unnestcutR",
        UnnestL => "unnestL",
        UnnestR => "unnestR",
    }
}

impl LbiiRule {
    pub(crate) fn local(self) -> Option<Local> {
        Some(match self {
            LbiiRule::Hyp => Local::Hyp,
            LbiiRule::WeakL => Local::WeakL,
            LbiiRule::WeakR => Local::WeakR,
            LbiiRule::ContrL => Local::ContrL,
            LbiiRule::ContrR => Local::ContrR,
            LbiiRule::TopL => Local::TopL,
            LbiiRule::TopR => Local::TopR,
            LbiiRule::BotL => Local::BotL,
            LbiiRule::BotR => Local::BotR,
            LbiiRule::AndL => Local::AndL,
            LbiiRule::AndR => Local::AndR,
            LbiiRule::OrL => Local::OrL,
            LbiiRule::OrR => Local::OrR,
            LbiiRule::ImplL => Local::ImplL,
            LbiiRule::ImplR => Local::ImplR,
            LbiiRule::ExclL => Local::ExclL,
            LbiiRule::ExclR => Local::ExclR,
            _ => return None,
        })
    }

    pub(crate) fn from_local(l: Local) -> Self {
        match l {
            Local::Hyp => LbiiRule::Hyp,
            Local::WeakL => LbiiRule::WeakL,
            Local::WeakR => LbiiRule::WeakR,
            Local::ContrL => LbiiRule::ContrL,
            Local::ContrR => LbiiRule::ContrR,
            Local::TopL => LbiiRule::TopL,
            Local::TopR => LbiiRule::TopR,
            Local::BotL => LbiiRule::BotL,
            Local::BotR => LbiiRule::BotR,
            Local::AndL => LbiiRule::AndL,
            Local::AndR => LbiiRule::AndR,
            Local::OrL => LbiiRule::OrL,
            Local::OrR => LbiiRule::OrR,
            Local::ImplL => LbiiRule::ImplL,
            Local::ImplR => LbiiRule::ImplR,
            Local::ExclL => LbiiRule::ExclL,
            Local::ExclR => LbiiRule::ExclR,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lbii;

impl Calculus for Lbii {
    const NAME: &'static str = "lbii";
    type Rule = LbiiRule;
    type Sequent = Sequent;
    type CutFormula = Formula;

    fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
        parse_sequent(text)
    }

    fn parse_cut_formula(text: &str) -> Result<Formula, ParseError> {
        parse_formula(text)
    }
}

pub type LbiiDerivation = Derivation<Lbii>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    L,
    R,
}

/// The formula an unnest instance adds: `/\G0 -< \/D0` on the left and
/// `/\G0 -> \/D0` on the right.
pub fn unnest_formula(which: Side, split: &Sequent) -> Formula {
    let a = big_and(split.ante.iter());
    let b = big_or(split.succ.iter());
    match which {
        Side::L => Formula::excl(a, b),
        Side::R => Formula::imp(a, b),
    }
}

/// Every split `G0 |- D0` that `e` can be read as, for the given side.
/// Both the unit-closed fold and the fold without the final unit are
/// accepted.
pub fn unnest_readings(which: Side, e: &Formula) -> Vec<Sequent> {
    let (a, b) = match (which, e) {
        (Side::L, Formula::Excl(a, b)) | (Side::R, Formula::Impl(a, b)) => (a, b),
        _ => return Vec::new(),
    };
    let mut out = Vec::new();
    for g in spine_readings(a, true) {
        for d in spine_readings(b, false) {
            let s = Sequent::from_vecs(g.clone(), d);
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

/// Splits of `e` whose parts sit inside the conclusion.
pub(crate) fn fitting_splits(which: Side, e: &Formula, concl: &Sequent) -> Vec<Sequent> {
    unnest_readings(which, e)
        .into_iter()
        .filter(|s| s.ante.is_submultiset(&concl.ante) && s.succ.is_submultiset(&concl.succ))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum UnnestError {
    #[error("premise `{premise}` has no {side} unnest formula for the split `{split}`")]
    NoUnnestFormula {
        premise: String,
        side: &'static str,
        split: String,
    },
    #[error("split `{split}` is not contained in the conclusion `{conclusion}`")]
    SplitOutside { split: String, conclusion: String },
}

/// Conclusion of the derived unnest rule on `which` side from `premise`.
pub fn apply_unnest_rules(premise: &Sequent, which: Side, split: &Sequent) -> Result<Sequent, UnnestError> {
    let side = match which {
        Side::L => &premise.ante,
        Side::R => &premise.succ,
    };
    let e = side
        .distinct()
        .find(|e| unnest_readings(which, e).contains(split))
        .ok_or_else(|| UnnestError::NoUnnestFormula {
            premise: premise.to_string(),
            side: if which == Side::L { "left" } else { "right" },
            split: split.to_string(),
        })?;
    let mut concl = premise.clone();
    match which {
        Side::L => concl.ante.remove_one(e),
        Side::R => concl.succ.remove_one(e),
    };
    if !(split.ante.is_submultiset(&concl.ante) && split.succ.is_submultiset(&concl.succ)) {
        return Err(UnnestError::SplitOutside {
            split: split.to_string(),
            conclusion: concl.to_string(),
        });
    }
    Ok(concl)
}

pub fn check_lbii(d: &LbiiDerivation, policy: CutPolicy) -> Result<(), CheckError> {
    check_tree(d, |n| check_node(n, policy))
}

fn check_node(d: &LbiiDerivation, policy: CutPolicy) -> Result<(), CheckErrorKind> {
    let concl = &d.conclusion;
    let prem: Vec<&Sequent> = d.premises.iter().map(|p| &p.conclusion).collect();
    if let Some(l) = d.rule.local() {
        return local::check(l, concl, &prem);
    }
    match d.rule {
        LbiiRule::Cut => {
            arity(d, 2)?;
            if policy == CutPolicy::NoCut {
                return Err(CheckErrorKind::ForbiddenCut);
            }
            let a = d
                .cut_formula
                .as_ref()
                .ok_or(CheckErrorKind::MissingAnnotation("cut-formula"))?;
            check_cut_shape(concl, a, &prem)?;
            if policy == CutPolicy::UnnestCutOnly && unnest_cut_side(concl, a).is_none() {
                return Err(CheckErrorKind::ForbiddenCut);
            }
            Ok(())
        }
        LbiiRule::UnnestcutL | LbiiRule::UnnestcutR => {
            arity(d, 2)?;
            if policy == CutPolicy::NoCut {
                return Err(CheckErrorKind::ForbiddenCut);
            }
            let which = if d.rule == LbiiRule::UnnestcutL { Side::L } else { Side::R };
            let a = match &d.cut_formula {
                Some(a) => a.clone(),
                None => single_extra(&prem[1].ante, &concl.ante)
                    .ok_or(CheckErrorKind::MissingAnnotation("cut-formula"))?,
            };
            check_cut_shape(concl, &a, &prem)?;
            check_split(which, &a, concl, d.split.as_ref())
        }
        LbiiRule::UnnestL | LbiiRule::UnnestR => {
            arity(d, 1)?;
            let p = prem[0];
            let (which, e) = if d.rule == LbiiRule::UnnestL {
                if p.succ != concl.succ {
                    return Err(CheckErrorKind::Context("succedents differ".into()));
                }
                (Side::L, single_extra(&p.ante, &concl.ante))
            } else {
                if p.ante != concl.ante {
                    return Err(CheckErrorKind::Context("antecedents differ".into()));
                }
                (Side::R, single_extra(&p.succ, &concl.succ))
            };
            let e = e.ok_or_else(|| {
                CheckErrorKind::Context("premise must add exactly one formula to the conclusion".into())
            })?;
            check_split(which, &e, concl, d.split.as_ref())
        }
        _ => unreachable!("local rules handled above"),
    }
}

fn check_cut_shape(concl: &Sequent, a: &Formula, prem: &[&Sequent]) -> Result<(), CheckErrorKind> {
    if *prem[0] != concl.with_succ(a.clone()) {
        return Err(CheckErrorKind::Context(format!(
            "left premise should be `{}`",
            concl.with_succ(a.clone())
        )));
    }
    if *prem[1] != concl.with_ante(a.clone()) {
        return Err(CheckErrorKind::Context(format!(
            "right premise should be `{}`",
            concl.with_ante(a.clone())
        )));
    }
    Ok(())
}

fn check_split(which: Side, e: &Formula, concl: &Sequent, split: Option<&Sequent>) -> Result<(), CheckErrorKind> {
    let fits = fitting_splits(which, e, concl);
    let ok = match split {
        Some(s) => fits.contains(s),
        None => !fits.is_empty(),
    };
    if ok {
        Ok(())
    } else {
        Err(CheckErrorKind::Principal(format!(
            "`{e}` is not an unnest formula over the conclusion{}",
            split.map(|s| format!(" for the split `{s}`")).unwrap_or_default()
        )))
    }
}

/// The single element of `bigger - smaller`, if that is what it is.
pub(crate) fn single_extra(bigger: &Multiset<Formula>, smaller: &Multiset<Formula>) -> Option<Formula> {
    let d = bigger.minus(smaller)?;
    (d.len() == 1).then(|| d.as_slice()[0].clone())
}

/// Whether a cut on `a` with conclusion `concl` is an unnest cut, and of
/// which kind.
pub fn unnest_cut_side(concl: &Sequent, a: &Formula) -> Option<Side> {
    [Side::L, Side::R]
        .into_iter()
        .find(|&w| !fitting_splits(w, a, concl).is_empty())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutProfile {
    None,
    UnnestOnly,
    General,
}

impl std::fmt::Display for CutProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CutProfile::None => "none",
            CutProfile::UnnestOnly => "unnest-only",
            CutProfile::General => "general",
        })
    }
}

/// Classifies the cuts of a derivation. Derived unnest rules are not cuts.
pub fn cut_profile(d: &LbiiDerivation) -> CutProfile {
    let mut profile = CutProfile::None;
    for (_, n) in d.nodes() {
        let unnest = match (n.rule, &n.cut_formula) {
            (LbiiRule::Cut, Some(a)) => unnest_cut_side(&n.conclusion, a).is_some(),
            (LbiiRule::Cut, None) => false,
            (LbiiRule::UnnestcutL | LbiiRule::UnnestcutR, _) => true,
            _ => continue,
        };
        if !unnest {
            return CutProfile::General;
        }
        profile = CutProfile::UnnestOnly;
    }
    profile
}

// Builders for the starred blocks used by the translations and rewrites.

pub(crate) fn node(rule: LbiiRule, concl: Sequent, premises: Vec<LbiiDerivation>) -> LbiiDerivation {
    Derivation::new(rule, concl, premises)
}

/// From a derivation of `G, items |- D`, derives `G, /\items |- D` by
/// conjunction-left steps closed by truth-left.
pub(crate) fn and_left_chain(base: &Sequent, items: &[Formula], top: LbiiDerivation) -> LbiiDerivation {
    // base holds G |- D without the items
    let mut d = top;
    let n = items.len();
    // build upward stages: stage k has items[..k] folded away
    let rest = |k: usize| big_and(items[k..].iter());
    let stage = |k: usize| {
        let mut s = base.clone();
        for it in &items[..k] {
            s.ante.insert(it.clone());
        }
        s.ante.insert(rest(k));
        s
    };
    // top premise has all items and T removed; first add T
    d = node(LbiiRule::TopL, stage(n), vec![d]);
    for k in (0..n).rev() {
        d = node(LbiiRule::AndL, stage(k), vec![d]);
    }
    d
}

/// Disjunction-right steps closed by falsity-right, the mirror of
/// [`and_left_chain`].
pub(crate) fn or_right_chain(base: &Sequent, items: &[Formula], top: LbiiDerivation) -> LbiiDerivation {
    let n = items.len();
    let rest = |k: usize| big_or(items[k..].iter());
    let stage = |k: usize| {
        let mut s = base.clone();
        for it in &items[..k] {
            s.succ.insert(it.clone());
        }
        s.succ.insert(rest(k));
        s
    };
    let mut d = node(LbiiRule::BotR, stage(n), vec![top]);
    for k in (0..n).rev() {
        d = node(LbiiRule::OrR, stage(k), vec![d]);
    }
    d
}

/// Derives `ctx |- a, D` where every conjunct of `a` (down to `T`) occurs
/// in the antecedent of `ctx`.
pub(crate) fn conj_right(ctx: &Sequent, a: &Formula) -> LbiiDerivation {
    let goal = ctx.with_succ(a.clone());
    if ctx.ante.contains(a) {
        return node(LbiiRule::Hyp, goal, vec![]);
    }
    match a {
        Formula::Top => node(LbiiRule::TopR, goal, vec![]),
        Formula::And(x, y) => node(LbiiRule::AndR, goal, vec![conj_right(ctx, x), conj_right(ctx, y)]),
        // not a conjunct of the context; leave an open hyp for the checker to reject
        _ => node(LbiiRule::Hyp, goal, vec![]),
    }
}

/// Derives `ctx, b |- D` where every disjunct of `b` (down to `F`) occurs
/// in the succedent of `ctx`.
pub(crate) fn disj_left(ctx: &Sequent, b: &Formula) -> LbiiDerivation {
    let goal = ctx.with_ante(b.clone());
    if ctx.succ.contains(b) {
        return node(LbiiRule::Hyp, goal, vec![]);
    }
    match b {
        Formula::Bot => node(LbiiRule::BotL, goal, vec![]),
        Formula::Or(x, y) => node(LbiiRule::OrL, goal, vec![disj_left(ctx, x), disj_left(ctx, y)]),
        _ => node(LbiiRule::Hyp, goal, vec![]),
    }
}

/// Weakens `top` (proving `base`) down to `base + extra`, one formula at a
/// time in canonical order.
pub(crate) fn weaken(base: &Sequent, extra: &Sequent, top: LbiiDerivation) -> LbiiDerivation {
    let mut d = top;
    let mut cur = base.clone();
    for a in extra.ante.iter() {
        cur.ante.insert(a.clone());
        d = node(LbiiRule::WeakL, cur.clone(), vec![d]);
    }
    for a in extra.succ.iter() {
        cur.succ.insert(a.clone());
        d = node(LbiiRule::WeakR, cur.clone(), vec![d]);
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Sequent {
        parse_sequent(t).unwrap()
    }

    fn f(t: &str) -> Formula {
        parse_formula(t).unwrap()
    }

    #[test]
    fn unnest_rule_examples() {
        let split = s("p |- q");
        let c = apply_unnest_rules(&s("g, p, p -< q |- q, d"), Side::L, &split).unwrap();
        assert_eq!(c, s("g, p |- q, d"));
        let c = apply_unnest_rules(&s("g, p, (p & T) -< (q | F) |- q, d"), Side::L, &split).unwrap();
        assert_eq!(c, s("g, p |- q, d"));
        assert_eq!(unnest_formula(Side::L, &s("|-")), f("T -< F"));
        let e = unnest_formula(Side::R, &s("p, r |- s"));
        assert_eq!(e, f("(p & (r & T)) -> (s | F)"));
        assert!(apply_unnest_rules(&s("p |- q"), Side::L, &split).is_err());
        assert!(matches!(
            apply_unnest_rules(&s("p -< q |- q"), Side::L, &split),
            Err(UnnestError::SplitOutside { .. })
        ));
    }

    #[test]
    fn hyp_node_checks() {
        let d = node(LbiiRule::Hyp, s("p, a |- a, q"), vec![]);
        assert!(check_lbii(&d, CutPolicy::NoCut).is_ok());
    }

    #[test]
    fn chains_check() {
        let base = s("g |- d");
        let items = [f("p"), f("q")];
        let top = node(LbiiRule::Hyp, s("g, p, q |- d, g"), vec![]);
        let top_base = s("g |- d, g");
        let d = and_left_chain(&top_base, &items, top);
        assert_eq!(d.conclusion, s("g, p & (q & T) |- d, g"));
        check_lbii(&d, CutPolicy::NoCut).unwrap();
        let d = conj_right(&s("p, q |- d"), &big_and(items.iter()));
        assert_eq!(d.conclusion, s("p, q |- p & (q & T), d"));
        check_lbii(&d, CutPolicy::NoCut).unwrap();
        let d = disj_left(&s("x |- p, q"), &big_or(items.iter()));
        assert_eq!(d.conclusion, s("x, p | (q | F) |- p, q"));
        check_lbii(&d, CutPolicy::NoCut).unwrap();
        let top = node(LbiiRule::Hyp, s("g |- g, p, q"), vec![]);
        let d = or_right_chain(&s("g |- g"), &items, top);
        assert_eq!(d.conclusion, s("g |- g, p | (q | F)"));
        check_lbii(&d, CutPolicy::NoCut).unwrap();
        let _ = base;
    }

    #[test]
    fn cut_profiles() {
        let hyp = node(LbiiRule::Hyp, s("p |- p"), vec![]);
        assert_eq!(cut_profile(&hyp), CutProfile::None);
        let general = node(
            LbiiRule::Cut,
            s("p |- p"),
            vec![
                node(LbiiRule::Hyp, s("p |- p, q"), vec![]),
                node(LbiiRule::Hyp, s("p, q |- p"), vec![]),
            ],
        )
        .with_cut(f("q"));
        check_lbii(&general, CutPolicy::FullCut).unwrap();
        assert_eq!(cut_profile(&general), CutProfile::General);
        let err = check_lbii(&general, CutPolicy::UnnestCutOnly).unwrap_err();
        assert_eq!(err.to_string(), "forbidden cut at root");
    }
}
