//! Bounded cut-free search for labelled derivations.
//!
//! Before every step the sequent is saturated under monotL/monotR along
//! the existing arcs; those steps do not count towards the depth.

use super::check::{LlbiiDerivation, LlbiiRule};
use super::{LFormula, LabelTree, LabelledSequent};
use crate::derivation::Derivation;
use crate::rules::{instances, Local};
use crate::sequent::Seq;
use crate::syntax::Formula;

const EAGER: [Local; 4] = [Local::AndL, Local::OrR, Local::TopL, Local::BotR];
const SPLITTING: [Local; 2] = [Local::AndR, Local::OrL];
const CHOICES: [Local; 2] = [Local::ImplL, Local::ExclR];

/// Searches for a cut-free derivation using at most `depth` logical
/// steps along any branch.
pub fn search_llbii_cutfree(s: &LabelledSequent, depth: usize) -> Option<LlbiiDerivation> {
    if s.validate().is_err() {
        return None;
    }
    (1..=depth).find_map(|d| prove(s, d, &mut Branch::default()))
}

fn axiom(s: &LabelledSequent) -> Option<LlbiiDerivation> {
    let rule = if s.ante.iter().any(|a| s.succ.contains(a)) {
        LlbiiRule::Hyp
    } else if s.succ.iter().any(|a| a.formula == Formula::Top) {
        LlbiiRule::TopR
    } else if s.ante.iter().any(|a| a.formula == Formula::Bot) {
        LlbiiRule::BotL
    } else {
        return None;
    };
    Some(Derivation::leaf(rule, s.clone()))
}

/// Search state along the current branch.
#[derive(Default)]
struct Branch {
    seen: Vec<String>,
    /// Principals removed by a rule below; saturation does not bring them
    /// back. `true` marks the antecedent.
    spent: Vec<(bool, LFormula)>,
}

/// One monotonicity step, if any applies.
fn monot_step(s: &LabelledSequent, b: &Branch) -> Option<(LlbiiRule, LabelledSequent)> {
    for lf in s.ante.distinct() {
        for y in s.tree.above(&lf.label) {
            let moved = LFormula::new(y, lf.formula.clone());
            if !s.ante.contains(&moved) && !b.spent.contains(&(true, moved.clone())) {
                let mut next = s.clone();
                next.ante.insert(moved);
                return Some((LlbiiRule::MonotL, next));
            }
        }
    }
    for lf in s.succ.distinct() {
        for y in s.tree.below(&lf.label) {
            let moved = LFormula::new(y, lf.formula.clone());
            if !s.succ.contains(&moved) && !b.spent.contains(&(false, moved.clone())) {
                let mut next = s.clone();
                next.succ.insert(moved);
                return Some((LlbiiRule::MonotR, next));
            }
        }
    }
    None
}

fn dedup(s: &LabelledSequent) -> LabelledSequent {
    LabelledSequent::new(s.tree.clone(), s.ante.dedup(), s.succ.dedup())
}

fn prove(s: &LabelledSequent, budget: usize, b: &mut Branch) -> Option<LlbiiDerivation> {
    if budget == 0 {
        return None;
    }
    if let Some(d) = axiom(s) {
        return Some(d);
    }
    let mut chain = Vec::new();
    let mut cur = s.clone();
    while let Some((rule, next)) = monot_step(&cur, b) {
        chain.push((rule, cur));
        cur = next;
    }
    let top = match axiom(&cur) {
        Some(d) => d,
        None => {
            let key = dedup(&cur).iso_key();
            if b.seen.contains(&key) {
                return None;
            }
            b.seen.push(key);
            let out = step(&cur, budget, b);
            b.seen.pop();
            out?
        }
    };
    Some(
        chain
            .into_iter()
            .rev()
            .fold(top, |d, (rule, concl)| Derivation::new(rule, concl, vec![d])),
    )
}

fn step(s: &LabelledSequent, budget: usize, b: &mut Branch) -> Option<LlbiiDerivation> {
    let seq = s.seq();
    for rule in EAGER {
        if let Some((p, ps)) = instances(rule, &seq).into_iter().next() {
            return close(rule, s, Some(p), ps, budget, b);
        }
    }
    if let Some((rule, principal, p)) = new_world(s) {
        b.spent.push(principal);
        let out = prove(&p, budget - 1, b);
        b.spent.pop();
        return out.map(|d| Derivation::new(rule, s.clone(), vec![d]));
    }
    for rule in SPLITTING {
        if let Some((p, ps)) = instances(rule, &seq).into_iter().next() {
            return close(rule, s, Some(p), ps, budget, b);
        }
    }
    for rule in CHOICES {
        for (_, ps) in instances(rule, &seq) {
            if let Some(d) = close(rule, s, None, ps, budget, b) {
                return Some(d);
            }
        }
    }
    None
}

/// implR or exclL on the first candidate, with the first unused `x{i}`.
fn new_world(s: &LabelledSequent) -> Option<(LlbiiRule, (bool, LFormula), LabelledSequent)> {
    let y = LabelTree::fresh("x", &s.labels());
    for lf in s.succ.distinct() {
        if let Formula::Impl(a, b) = &lf.formula {
            let tree = s.tree.with_arc(lf.label.clone(), y.clone());
            let ante = s.ante.clone().with(LFormula::new(y.clone(), (**a).clone()));
            let succ = s.succ.without(lf)?.with(LFormula::new(y.clone(), (**b).clone()));
            let p = LabelledSequent::new(tree, ante, succ);
            return Some((LlbiiRule::ImplR, (false, lf.clone()), p));
        }
    }
    for lf in s.ante.distinct() {
        if let Formula::Excl(a, b) = &lf.formula {
            let tree = s.tree.with_arc(y.clone(), lf.label.clone());
            let ante = s.ante.without(lf)?.with(LFormula::new(y.clone(), (**a).clone()));
            let succ = s.succ.clone().with(LFormula::new(y.clone(), (**b).clone()));
            let p = LabelledSequent::new(tree, ante, succ);
            return Some((LlbiiRule::ExclL, (true, lf.clone()), p));
        }
    }
    None
}

/// Proves the premises of a tree-preserving rule; `spent` is the principal
/// when the rule removes it.
fn close(
    rule: Local,
    s: &LabelledSequent,
    spent: Option<LFormula>,
    ps: Vec<Seq<LFormula>>,
    budget: usize,
    b: &mut Branch,
) -> Option<LlbiiDerivation> {
    let marked = spent.is_some();
    if let Some(p) = spent {
        b.spent.push((rule.on_left(), p));
    }
    let mut subs = Vec::with_capacity(ps.len());
    for p in ps {
        let p = LabelledSequent::new(s.tree.clone(), p.ante, p.succ);
        match prove(&p, budget - 1, b) {
            Some(d) => subs.push(d),
            None => break,
        }
    }
    if marked {
        b.spent.pop();
    }
    (subs.len() == rule.arity()).then(|| Derivation::new(LlbiiRule::from_local(rule), s.clone(), subs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::CutPolicy;
    use crate::labelled::{check_llbii, parse_labelled_sequent};

    fn ls(t: &str) -> LabelledSequent {
        parse_labelled_sequent(t).unwrap()
    }

    #[test]
    fn proves_the_cut_example() {
        let goal = ls("[x] x:p |- x:q, x:(r -> ((p -< q) & r))");
        let d = search_llbii_cutfree(&goal, 12).expect("derivable");
        check_llbii(&d, CutPolicy::NoCut).unwrap();
        assert!(d.rules().iter().all(|r| !r.is_tree_surgery()));
    }

    #[test]
    fn excluded_middle_fails() {
        assert!(search_llbii_cutfree(&ls("[x] |- x:(p | (p -> F))"), 12).is_none());
    }

    #[test]
    fn truth() {
        let d = search_llbii_cutfree(&ls("[x] |- x:T"), 1).unwrap();
        assert_eq!(d.rule, LlbiiRule::TopR);
        assert_eq!(d.size(), 1);
    }

    #[test]
    fn fresh_labels_are_counted() {
        let d = search_llbii_cutfree(&ls("[x] |- x:(p -> p)"), 3).unwrap();
        assert_eq!(d.premises[0].conclusion, ls("[x>x0] x0:p |- x0:p"));
    }
}
