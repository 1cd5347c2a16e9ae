//! The logical, axiom and structural rules that act on a single context
//! member and leave everything else in place. They are shared by the
//! three calculi: for labelled sequents the subformulas stay at the label
//! of the principal formula.

use crate::derivation::CheckErrorKind;
use crate::sequent::{Elem, Seq};
use crate::syntax::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Local {
    Hyp,
    WeakL,
    WeakR,
    ContrL,
    ContrR,
    TopL,
    TopR,
    BotL,
    BotR,
    AndL,
    AndR,
    OrL,
    OrR,
    ImplL,
    /// Standard form: the premise keeps the antecedent and drops the rest
    /// of the succedent.
    ImplR,
    /// Standard form: the premise drops the rest of the antecedent.
    ExclL,
    ExclR,
}

impl Local {
    pub(crate) fn on_left(self) -> bool {
        matches!(
            self,
            Local::Hyp
                | Local::WeakL
                | Local::ContrL
                | Local::TopL
                | Local::BotL
                | Local::AndL
                | Local::OrL
                | Local::ImplL
                | Local::ExclL
        )
    }

    pub(crate) fn arity(self) -> usize {
        match self {
            Local::Hyp | Local::TopR | Local::BotL => 0,
            Local::AndR | Local::OrL | Local::ImplL | Local::ExclR => 2,
            _ => 1,
        }
    }

    fn shape(self) -> &'static str {
        match self {
            Local::Hyp => "a formula on both sides",
            Local::WeakL | Local::ContrL => "an antecedent formula",
            Local::WeakR | Local::ContrR => "a succedent formula",
            Local::TopL => "`T` in the antecedent",
            Local::TopR => "`T` in the succedent",
            Local::BotL => "`F` in the antecedent",
            Local::BotR => "`F` in the succedent",
            Local::AndL => "a conjunction in the antecedent",
            Local::AndR => "a conjunction in the succedent",
            Local::OrL => "a disjunction in the antecedent",
            Local::OrR => "a disjunction in the succedent",
            Local::ImplL => "an implication in the antecedent",
            Local::ImplR => "an implication in the succedent",
            Local::ExclL => "an exclusion in the antecedent",
            Local::ExclR => "an exclusion in the succedent",
        }
    }
}

/// Premises of `rule` applied to `principal` in `concl`, if the principal
/// has the right shape and occurs on the right side.
pub(crate) fn premises<E: Elem>(rule: Local, concl: &Seq<E>, principal: &E) -> Option<Vec<Seq<E>>> {
    let side = if rule.on_left() { &concl.ante } else { &concl.succ };
    let rest = side.without(principal)?;
    let f = principal.formula()?;
    let x = principal.site();
    let at = |g: &Formula| E::at(&x, g.clone());
    let left = |m| Seq::new(m, concl.succ.clone());
    let right = |m| Seq::new(concl.ante.clone(), m);
    let out = match (rule, f) {
        (Local::Hyp, _) => concl.succ.contains(principal).then(Vec::new)?,
        (Local::WeakL, _) => vec![left(rest)],
        (Local::WeakR, _) => vec![right(rest)],
        (Local::ContrL, _) => vec![left(concl.ante.clone().with(principal.clone()))],
        (Local::ContrR, _) => vec![right(concl.succ.clone().with(principal.clone()))],
        (Local::TopL, Formula::Top) => vec![left(rest)],
        (Local::TopR, Formula::Top) => vec![],
        (Local::BotL, Formula::Bot) => vec![],
        (Local::BotR, Formula::Bot) => vec![right(rest)],
        (Local::AndL, Formula::And(a, b)) => vec![left(rest.with(at(a)).with(at(b)))],
        (Local::AndR, Formula::And(a, b)) => {
            vec![right(rest.clone().with(at(a))), right(rest.with(at(b)))]
        }
        (Local::OrL, Formula::Or(a, b)) => {
            vec![left(rest.clone().with(at(a))), left(rest.with(at(b)))]
        }
        (Local::OrR, Formula::Or(a, b)) => vec![right(rest.with(at(a)).with(at(b)))],
        (Local::ImplL, Formula::Impl(a, b)) => vec![
            right(concl.succ.clone().with(at(a))),
            left(rest.with(at(b))),
        ],
        (Local::ImplR, Formula::Impl(a, b)) => vec![Seq::new(
            concl.ante.clone().with(at(a)),
            crate::Multiset::from_vec(vec![at(b)]),
        )],
        (Local::ExclL, Formula::Excl(a, b)) => vec![Seq::new(
            crate::Multiset::from_vec(vec![at(a)]),
            concl.succ.clone().with(at(b)),
        )],
        (Local::ExclR, Formula::Excl(a, b)) => vec![
            right(rest.with(at(a))),
            left(concl.ante.clone().with(at(b))),
        ],
        _ => return None,
    };
    Some(out)
}

/// Every instance of `rule` with conclusion `concl`, one per distinct
/// principal.
pub(crate) fn instances<E: Elem>(rule: Local, concl: &Seq<E>) -> Vec<(E, Vec<Seq<E>>)> {
    let side = if rule.on_left() { &concl.ante } else { &concl.succ };
    side.distinct()
        .filter_map(|p| premises(rule, concl, p).map(|ps| (p.clone(), ps)))
        .collect()
}

/// Checks that `actual` are the premises of some instance of `rule`.
pub(crate) fn check<E: Elem>(rule: Local, concl: &Seq<E>, actual: &[&Seq<E>]) -> Result<(), CheckErrorKind> {
    if actual.len() != rule.arity() {
        return Err(CheckErrorKind::Arity {
            expected: rule.arity(),
            found: actual.len(),
        });
    }
    let found = instances(rule, concl);
    if found.is_empty() {
        return Err(CheckErrorKind::Principal(format!(
            "expected {} in `{}`",
            rule.shape(),
            concl
        )));
    }
    if found
        .iter()
        .any(|(_, ps)| ps.len() == actual.len() && ps.iter().zip(actual).all(|(p, a)| p == *a))
    {
        return Ok(());
    }
    let (p, ps) = &found[0];
    let shown: Vec<String> = ps.iter().map(|s| format!("`{s}`")).collect();
    Err(CheckErrorKind::Context(format!(
        "no principal formula yields the given premises (for `{p}` they would be {})",
        if shown.is_empty() { "none".to_string() } else { shown.join(" and ") }
    )))
}
