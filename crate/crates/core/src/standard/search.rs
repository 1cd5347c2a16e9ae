//! Bounded cut-free proof search by iterative deepening.

use super::{node, LbiiDerivation, LbiiRule};
use crate::rules::{instances, Local};
use crate::sequent::Sequent;
use crate::syntax::Formula;

/// Applied eagerly to the first principal found, without backtracking.
const EAGER: [Local; 6] = [
    Local::TopL,
    Local::BotR,
    Local::AndL,
    Local::OrR,
    Local::AndR,
    Local::OrL,
];

const CHOICES: [Local; 4] = [Local::ImplL, Local::ExclR, Local::ImplR, Local::ExclL];

/// Searches for a cut-free derivation of height at most `depth`.
pub fn search_lbii_cutfree(s: &Sequent, depth: usize) -> Option<LbiiDerivation> {
    (1..=depth).find_map(|d| prove(s, d, &mut Vec::new()))
}

fn normal(s: &Sequent) -> Sequent {
    Sequent::new(s.ante.dedup(), s.succ.dedup())
}

fn axiom(s: &Sequent) -> Option<LbiiDerivation> {
    if s.ante.iter().any(|a| s.succ.contains(a)) {
        Some(node(LbiiRule::Hyp, s.clone(), vec![]))
    } else if s.succ.contains(&Formula::Top) {
        Some(node(LbiiRule::TopR, s.clone(), vec![]))
    } else if s.ante.contains(&Formula::Bot) {
        Some(node(LbiiRule::BotL, s.clone(), vec![]))
    } else {
        None
    }
}

fn prove(s: &Sequent, budget: usize, branch: &mut Vec<Sequent>) -> Option<LbiiDerivation> {
    if budget == 0 {
        return None;
    }
    if let Some(d) = axiom(s) {
        return Some(d);
    }
    let key = normal(s);
    if branch.contains(&key) {
        return None;
    }
    branch.push(key);
    let out = step(s, budget, branch);
    branch.pop();
    out
}

fn step(s: &Sequent, budget: usize, branch: &mut Vec<Sequent>) -> Option<LbiiDerivation> {
    for rule in EAGER {
        if let Some((_, ps)) = instances(rule, s).into_iter().next() {
            return close(rule, s, &ps, budget, branch);
        }
    }
    for rule in CHOICES {
        for (_, ps) in instances(rule, s) {
            if let Some(d) = close(rule, s, &ps, budget, branch) {
                return Some(d);
            }
        }
    }
    None
}

fn close(
    rule: Local,
    s: &Sequent,
    ps: &[Sequent],
    budget: usize,
    branch: &mut Vec<Sequent>,
) -> Option<LbiiDerivation> {
    let mut subs = Vec::with_capacity(ps.len());
    for p in ps {
        subs.push(prove(p, budget - 1, branch)?);
    }
    Some(node(LbiiRule::from_local(rule), s.clone(), subs))
}
