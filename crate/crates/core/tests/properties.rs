use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use biint::kripke::{find_countermodel, models, KripkeTree};
use biint::labelled::{check_llbii, search_llbii_cutfree, LFormula, Label, LabelTree, LabelledSequent};
use biint::nested::{check_nlbii, lift, search_nlbii_cutfree, Member, NestedSequent};
use biint::standard::{check_lbii, search_lbii_cutfree};
use biint::translations::*;
use biint::{parse_formula, CutPolicy, Formula, Multiset, Seq, Sequent};

fn atom() -> impl Strategy<Value = Formula> {
    prop_oneof![
        4 => prop::sample::select(vec!["p", "q", "r", "s1", "long_name"]).prop_map(Formula::atom),
        1 => Just(Formula::Top),
        1 => Just(Formula::Bot),
    ]
}

fn formula(depth: u32, atoms: &'static [&'static str]) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => prop::sample::select(atoms.to_vec()).prop_map(Formula::atom),
        1 => Just(Formula::Top),
        1 => Just(Formula::Bot),
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        (0..4u8, inner.clone(), inner).prop_map(|(k, a, b)| match k {
            0 => Formula::and(a, b),
            1 => Formula::or(a, b),
            2 => Formula::imp(a, b),
            _ => Formula::excl(a, b),
        })
    })
}

fn any_formula(depth: u32) -> impl Strategy<Value = Formula> {
    atom().prop_recursive(depth, 128, 2, |inner| {
        (0..4u8, inner.clone(), inner).prop_map(|(k, a, b)| match k {
            0 => Formula::and(a, b),
            1 => Formula::or(a, b),
            2 => Formula::imp(a, b),
            _ => Formula::excl(a, b),
        })
    })
}

fn nested(depth: u32) -> BoxedStrategy<NestedSequent> {
    let members = |d: u32| -> BoxedStrategy<Vec<Member>> {
        let f = formula(2, &["p", "q"]).prop_map(Member::Formula);
        if d == 0 {
            prop::collection::vec(f, 0..3).boxed()
        } else {
            prop::collection::vec(prop_oneof![3 => f, 1 => nested(d - 1).prop_map(Member::Nested)], 0..3).boxed()
        }
    };
    (members(depth), members(depth))
        .prop_map(|(a, s)| Seq::from_vecs(a, s))
        .boxed()
}

/// A labelled sequent on at most four nodes `n0..`.
fn labelled() -> impl Strategy<Value = LabelledSequent> {
    (1..=4usize)
        .prop_flat_map(|n| {
            let parents = (1..n).map(|i| 0..i).collect::<Vec<_>>();
            let dirs = prop::collection::vec(any::<bool>(), n - 1);
            let fs = prop::collection::vec((0..n, any::<bool>(), formula(2, &["p", "q"])), 0..5);
            (Just(n), parents, dirs, fs)
        })
        .prop_map(|(n, parents, dirs, fs)| {
            let l = |i: usize| Label::new(format!("n{i}"));
            let arcs = parents
                .iter()
                .zip(&dirs)
                .enumerate()
                .map(|(i, (&p, &up))| if up { (l(p), l(i + 1)) } else { (l(i + 1), l(p)) });
            let tree = LabelTree::new((0..n).map(l), arcs).unwrap();
            let mut s = LabelledSequent::new(tree, Multiset::new(), Multiset::new());
            for (i, left, f) in fs {
                let lf = LFormula::new(l(i), f);
                if left {
                    s.ante.insert(lf);
                } else {
                    s.succ.insert(lf);
                }
            }
            s
        })
}

fn permutations(items: &[Label]) -> Vec<Vec<Label>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head.clone());
            out.push(p);
        }
    }
    out
}

/// Brute force over bijections fixing `root`.
fn equal_up_to_renaming(a: &LabelledSequent, b: &LabelledSequent, root: &Label) -> bool {
    let xs: Vec<Label> = a.tree.nodes().filter(|l| *l != root).cloned().collect();
    let ys: Vec<Label> = b.tree.nodes().filter(|l| *l != root).cloned().collect();
    if xs.len() != ys.len() {
        return false;
    }
    permutations(&ys).into_iter().any(|perm| {
        let map: BTreeMap<Label, Label> = xs.iter().cloned().zip(perm).collect();
        a.map_labels(|l| map.get(l).cloned().unwrap_or_else(|| l.clone())) == *b
    })
}

/// A Kripke tree from a parent array, directions and per-world atoms,
/// closed upwards to make it monotone.
fn kripke() -> impl Strategy<Value = KripkeTree> {
    (1..=4usize)
        .prop_flat_map(|n| {
            let parents = (1..n).map(|i| 0..i).collect::<Vec<_>>();
            let dirs = prop::collection::vec(any::<bool>(), n - 1);
            let seeds = prop::collection::vec(prop::collection::btree_set(prop::sample::select(vec!["p", "q", "r"]), 0..3), n);
            (Just(n), parents, dirs, seeds)
        })
        .prop_map(|(n, parents, dirs, seeds)| {
            let arcs: Vec<(usize, usize)> = parents
                .iter()
                .zip(&dirs)
                .enumerate()
                .map(|(i, (&p, &up))| if up { (p, i + 1) } else { (i + 1, p) })
                .collect();
            let mut reach = vec![vec![false; n]; n];
            for (w, row) in reach.iter_mut().enumerate() {
                row[w] = true;
            }
            for _ in 0..n {
                for &(a, b) in &arcs {
                    for row in reach.iter_mut() {
                        if row[a] {
                            row[b] = true;
                        }
                    }
                }
            }
            let interp: Vec<BTreeSet<String>> = (0..n)
                .map(|v| {
                    (0..n)
                        .filter(|&w| reach[w][v])
                        .flat_map(|w| seeds[w].iter().map(|s| s.to_string()))
                        .collect()
                })
                .collect();
            KripkeTree::indexed(n, arcs, interp).unwrap()
        })
}

fn small_sequent() -> impl Strategy<Value = Sequent> {
    (
        prop::collection::vec(formula(2, &["p", "q"]), 0..3),
        prop::collection::vec(formula(2, &["p", "q"]), 1..3),
    )
        .prop_map(|(a, s)| Seq::from_vecs(a, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse(f in any_formula(8)) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn multiset_laws(a in prop::collection::vec(0..5u8, 0..8), b in prop::collection::vec(0..5u8, 0..8)) {
        let (ma, mb) = (Multiset::from_vec(a.clone()), Multiset::from_vec(b.clone()));
        prop_assert_eq!(ma.sum(&mb), mb.sum(&ma));
        prop_assert_eq!(ma.sum(&mb).minus(&mb), Some(ma.clone()));
        prop_assert_eq!(ma.len() + mb.len(), ma.sum(&mb).len());
        let mut rev = a.clone();
        rev.reverse();
        prop_assert_eq!(Multiset::from_vec(rev), ma.clone());
        for x in 0..5u8 {
            let naive = a.iter().filter(|y| **y == x).count();
            prop_assert_eq!(ma.count(&x), naive);
        }
    }

    #[test]
    fn persistence(k in kripke(), f in formula(5, &["p", "q", "r"])) {
        let truth = k.truth(&f);
        for w in 0..k.len() {
            for v in 0..k.len() {
                if k.leq(w, v) && truth[w] {
                    prop_assert!(truth[v], "{} at {} but not {}", f, w, v);
                }
            }
        }
    }

    #[test]
    fn nested_round_trip(s in nested(3)) {
        let x = Label::new("x");
        let l = ntol(&s, &x);
        prop_assert!(l.validate().is_ok());
        prop_assert_eq!(lton(&l, &x).unwrap(), s);
    }

    #[test]
    fn labelled_round_trip(s in labelled()) {
        let root = Label::new("n0");
        let back = ntol(&lton(&s, &root).unwrap(), &root);
        prop_assert!(equal_up_to_renaming(&s, &back, &root), "{} vs {}", s, back);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn searched_derivations_are_sound_and_translate(s in small_sequent()) {
        let x = Label::new("x");
        if let Some(d) = search_lbii_cutfree(&s, 6) {
            prop_assert!(check_lbii(&d, CutPolicy::NoCut).is_ok());
            prop_assert!(find_countermodel(&s, 3).is_none());
            let l = translate_lbii_to_llbii(&d).unwrap();
            prop_assert!(check_llbii(&l, CutPolicy::NoCut).is_ok());
            let n = embed_lbii_to_nlbii(&d).unwrap();
            prop_assert!(check_nlbii(&n, CutPolicy::NoCut).is_ok());
        }
        let n_goal = lift(&s);
        if let Some(d) = search_nlbii_cutfree(&n_goal, 6) {
            prop_assert!(check_nlbii(&d, CutPolicy::NoCut).is_ok());
            prop_assert!(find_countermodel(&s, 3).is_none());
            let flat = translate_nlbii_to_lbii(&d).unwrap();
            prop_assert!(check_lbii(&flat, CutPolicy::UnnestCutOnly).is_ok());
            prop_assert_eq!(&flat.conclusion, &s);
            let l = translate_nlbii_to_llbii(&d, &x).unwrap();
            prop_assert!(check_llbii(&l, CutPolicy::NoCut).is_ok());
            prop_assert_eq!(&l.conclusion, &ntol(&n_goal, &x));
        }
        let l_goal = LabelledSequent::at_label(&s, &x);
        if let Some(d) = search_llbii_cutfree(&l_goal, 6) {
            prop_assert!(check_llbii(&d, CutPolicy::NoCut).is_ok());
            prop_assert!(find_countermodel(&s, 3).is_none());
            let n = translate_llbii_to_nlbii(&d, &x).unwrap();
            prop_assert!(check_nlbii(&n, CutPolicy::NoCut).is_ok());
            prop_assert_eq!(&n.conclusion, &n_goal);
            let back = translate_nlbii_to_llbii(&n, &x).unwrap();
            prop_assert!(check_llbii(&back, CutPolicy::NoCut).is_ok());
            let st = translate_llbii_to_lbii(&d, &x).unwrap();
            prop_assert!(check_lbii(&st, CutPolicy::UnnestCutOnly).is_ok());
        }
    }
}

#[test]
fn model_counts_match_hand_counts() {
    let p = vec!["p".to_string()];
    // one world: p false or true
    assert_eq!(models(1, &p).len(), 2);
    // a two-world chain has three up-sets
    assert_eq!(models(2, &p).len(), 3);
    // chain 4, fork upwards 5, fork downwards 5
    assert_eq!(models(3, &p).len(), 14);
    // no atoms: one model per oriented tree shape (1, 1, 3, 8, 27)
    let counts: Vec<usize> = (1..=5).map(|n| models(n, &[]).len()).collect();
    assert_eq!(counts, vec![1, 1, 3, 8, 27]);
}
