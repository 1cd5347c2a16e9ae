//! Bounded cut-free search for nested derivations.
//!
//! Rules that move to another world (implR, exclL, nestR, nestL) come in
//! two forms: the plain one, which drops the side context, and one that
//! first packs the current world into a nested member with contraction and
//! unnesting, so that nothing is lost.

use super::{
    formulas, nest_l_premise, nest_r_premise, normalize, Member, NestedSequent, NlbiiDerivation, NlbiiRule,
};
use crate::derivation::Derivation;
use crate::multiset::Multiset;
use crate::rules::{instances, Local};
use crate::sequent::{Elem, Seq};
use crate::syntax::Formula;

const EAGER: [Local; 6] = [
    Local::TopL,
    Local::BotR,
    Local::AndL,
    Local::OrR,
    Local::AndR,
    Local::OrL,
];

/// Searches for a cut-free derivation of height at most `depth`.
pub fn search_nlbii_cutfree(s: &NestedSequent, depth: usize) -> Option<NlbiiDerivation> {
    (1..=depth).find_map(|d| prove(s, d, &mut Vec::new()))
}

fn f(a: &Formula) -> Member {
    Member::Formula(a.clone())
}

fn axiom(s: &NestedSequent) -> Option<NlbiiDerivation> {
    let rule = if s.ante.iter().any(|a| a.formula().is_some() && s.succ.contains(a)) {
        NlbiiRule::Hyp
    } else if s.succ.contains(&f(&Formula::Top)) {
        NlbiiRule::TopR
    } else if s.ante.contains(&f(&Formula::Bot)) {
        NlbiiRule::BotL
    } else {
        return None;
    };
    Some(Derivation::leaf(rule, s.clone()))
}

fn prove(s: &NestedSequent, budget: usize, branch: &mut Vec<NestedSequent>) -> Option<NlbiiDerivation> {
    if budget == 0 {
        return None;
    }
    if let Some(d) = axiom(s) {
        return Some(d);
    }
    let key = normalize(s);
    if branch.contains(&key) {
        return None;
    }
    branch.push(key);
    let out = step(s, budget, branch);
    branch.pop();
    out
}

/// A partial derivation: a chain of one-premise steps ending in the
/// premises still to be proved.
struct Plan {
    /// Outermost first; each entry is a rule and its conclusion.
    chain: Vec<(NlbiiRule, NestedSequent)>,
    last: NlbiiRule,
    last_concl: NestedSequent,
    open: Vec<NestedSequent>,
}

impl Plan {
    fn single(rule: NlbiiRule, concl: &NestedSequent, open: Vec<NestedSequent>) -> Self {
        Plan {
            chain: Vec::new(),
            last: rule,
            last_concl: concl.clone(),
            open,
        }
    }

    fn cost(&self) -> usize {
        self.chain.len() + 1
    }
}

fn step(s: &NestedSequent, budget: usize, branch: &mut Vec<NestedSequent>) -> Option<NlbiiDerivation> {
    for rule in EAGER {
        if let Some((_, ps)) = instances(rule, s).into_iter().next() {
            return run(Plan::single(NlbiiRule::from_local(rule), s, ps), budget, branch);
        }
    }
    for plan in plans(s) {
        if plan.cost() >= budget {
            continue;
        }
        if let Some(d) = run(plan, budget, branch) {
            return Some(d);
        }
    }
    None
}

fn run(plan: Plan, budget: usize, branch: &mut Vec<NestedSequent>) -> Option<NlbiiDerivation> {
    let left = budget.checked_sub(plan.cost())?;
    let mut subs = Vec::with_capacity(plan.open.len());
    for p in &plan.open {
        subs.push(prove(p, left, branch)?);
    }
    let mut d = Derivation::new(plan.last, plan.last_concl, subs);
    for (rule, concl) in plan.chain.into_iter().rev() {
        d = Derivation::new(rule, concl, vec![d]);
    }
    Some(d)
}

/// Branching choices, in the order they are tried.
fn plans(s: &NestedSequent) -> Vec<Plan> {
    let mut out = Vec::new();
    for rule in [Local::ImplL, Local::ExclR] {
        for (_, ps) in instances(rule, s) {
            out.push(Plan::single(NlbiiRule::from_local(rule), s, ps));
        }
    }
    for m in s.succ.distinct() {
        let rest = s.succ.without(m).expect("member");
        match m {
            Member::Formula(Formula::Impl(a, b)) => {
                let open = |c: &NestedSequent| vec![Seq::new(c.ante.clone().with(f(a)), Multiset::from_vec(vec![f(b)]))];
                out.push(Plan::single(NlbiiRule::ImplR, s, open(s)));
                if !rest.is_empty() {
                    out.push(pack_left(s, m, NlbiiRule::ImplR, open));
                }
            }
            Member::Nested(n) => {
                let n = n.clone();
                let open = move |c: &NestedSequent| vec![nest_r_premise(c, &n)];
                out.push(Plan::single(NlbiiRule::NestR, s, open(s)));
                if !rest.is_empty() {
                    out.push(pack_left(s, m, NlbiiRule::NestR, open));
                }
            }
            _ => {}
        }
    }
    for m in s.ante.distinct() {
        let rest = s.ante.without(m).expect("member");
        match m {
            Member::Formula(Formula::Excl(a, b)) => {
                let open = |c: &NestedSequent| vec![Seq::new(Multiset::from_vec(vec![f(a)]), c.succ.clone().with(f(b)))];
                out.push(Plan::single(NlbiiRule::ExclL, s, open(s)));
                if !rest.is_empty() {
                    out.push(pack_right(s, m, NlbiiRule::ExclL, open));
                }
            }
            Member::Nested(n) => {
                let n = n.clone();
                let open = move |c: &NestedSequent| vec![nest_l_premise(c, &n)];
                out.push(Plan::single(NlbiiRule::NestL, s, open(s)));
                if !rest.is_empty() {
                    out.push(pack_right(s, m, NlbiiRule::NestL, open));
                }
            }
            _ => {}
        }
    }
    out
}

/// `G |- M, D` with `D` non-empty: contract every top-level formula of
/// `G`, unnest `G |- D` as an antecedent member, then apply `last` to `M`.
fn pack_left(
    s: &NestedSequent,
    m: &Member,
    last: NlbiiRule,
    open: impl Fn(&NestedSequent) -> Vec<NestedSequent>,
) -> Plan {
    let copies = formulas(&s.ante);
    let mut chain = Vec::new();
    let mut cur = s.clone();
    for a in &copies {
        chain.push((NlbiiRule::ContrL, cur.clone()));
        cur = cur.with_ante(f(a));
    }
    chain.push((NlbiiRule::UnnestL, cur));
    let rest = s.succ.without(m).expect("member");
    let packed = Member::Nested(Seq::new(s.ante.clone(), rest));
    let top = Seq::new(
        copies.iter().map(f).collect::<Multiset<_>>().with(packed),
        Multiset::from_vec(vec![m.clone()]),
    );
    Plan {
        chain,
        last,
        open: open(&top),
        last_concl: top,
    }
}

/// The mirror of [`pack_left`].
fn pack_right(
    s: &NestedSequent,
    m: &Member,
    last: NlbiiRule,
    open: impl Fn(&NestedSequent) -> Vec<NestedSequent>,
) -> Plan {
    let copies = formulas(&s.succ);
    let mut chain = Vec::new();
    let mut cur = s.clone();
    for a in &copies {
        chain.push((NlbiiRule::ContrR, cur.clone()));
        cur = cur.with_succ(f(a));
    }
    chain.push((NlbiiRule::UnnestR, cur));
    let rest = s.ante.without(m).expect("member");
    let packed = Member::Nested(Seq::new(rest, s.succ.clone()));
    let top = Seq::new(
        Multiset::from_vec(vec![m.clone()]),
        copies.iter().map(f).collect::<Multiset<_>>().with(packed),
    );
    Plan {
        chain,
        last,
        open: open(&top),
        last_concl: top,
    }
}
