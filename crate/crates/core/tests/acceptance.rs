//! One PASS/FAIL line per acceptance criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use biint::kripke::{find_countermodel, KripkeTree};
use biint::labelled::{
    check_llbii, search_llbii_cutfree, LFormula, Label, LabelTree, LabelledSequent, LlbiiDerivation,
};
use biint::nested::{check_nlbii, search_nlbii_cutfree, Member, NestedSequent, NlbiiDerivation};
use biint::standard::{check_lbii, cut_profile, permute_cut, search_lbii_cutfree, CutProfile, LbiiDerivation};
use biint::translations::*;
use biint::{parse_formula, parse_sequent, CutPolicy, Derivation, Formula, Multiset, Seq, Sequent};

type Outcome = Result<String, String>;

const GOAL: &str = "p |- q, r -> ((p -< q) & r)";

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/derivations")
}

fn read(name: &str) -> String {
    fs::read_to_string(corpus_dir().join(name)).unwrap()
}

struct Corpus {
    lbii: Vec<(String, LbiiDerivation)>,
    nlbii: Vec<(String, NlbiiDerivation)>,
    llbii: Vec<(String, LlbiiDerivation)>,
}

fn load_corpus() -> Corpus {
    let mut c = Corpus {
        lbii: vec![],
        nlbii: vec![],
        llbii: vec![],
    };
    let mut files: Vec<PathBuf> = fs::read_dir(corpus_dir()).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    for f in files {
        let name = f.file_name().unwrap().to_string_lossy().into_owned();
        let text = fs::read_to_string(&f).unwrap();
        match f.extension().and_then(|e| e.to_str()) {
            Some("lbii") => c.lbii.push((name, Derivation::parse(&text).unwrap())),
            Some("nlbii") => c.nlbii.push((name, Derivation::parse(&text).unwrap())),
            Some("llbii") => c.llbii.push((name, Derivation::parse(&text).unwrap())),
            _ => {}
        }
    }
    c
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let goal = parse_sequent(GOAL).unwrap();
    ensure(search_lbii_cutfree(&goal, 12).is_none(), || "cut-free standard search found a proof".into())?;
    let cut: LbiiDerivation = Derivation::parse(&read("cut_counterexample.lbii")).unwrap();
    let nested: NlbiiDerivation = Derivation::parse(&read("nested_counterexample.nlbii")).unwrap();
    let labelled: LlbiiDerivation = Derivation::parse(&read("labelled_counterexample.llbii")).unwrap();
    check_lbii(&cut, CutPolicy::FullCut).map_err(|e| format!("cut derivation: {e}"))?;
    check_nlbii(&nested, CutPolicy::NoCut).map_err(|e| format!("nested derivation: {e}"))?;
    check_llbii(&labelled, CutPolicy::NoCut).map_err(|e| format!("labelled derivation: {e}"))?;
    let n = search_nlbii_cutfree(&biint::nested::lift(&goal), 12).ok_or("nested search exhausted")?;
    check_nlbii(&n, CutPolicy::NoCut).map_err(|e| e.to_string())?;
    let x = Label::new("x");
    let l = search_llbii_cutfree(&LabelledSequent::at_label(&goal, &x), 12).ok_or("labelled search exhausted")?;
    check_llbii(&l, CutPolicy::NoCut).map_err(|e| e.to_string())?;
    Ok(format!(
        "standard exhausted at 12; three derivations check; nested proof height {}, labelled proof height {}",
        n.height(),
        l.height()
    ))
}

/// Standard readings of a labelled end sequent, one per label.
fn readings(s: &LabelledSequent) -> Vec<Sequent> {
    s.tree.nodes().map(|x| flatten_sequent(&lton(s, x).unwrap())).collect()
}

fn criterion_2(c: &Corpus) -> Outcome {
    let mut ends: Vec<(String, Sequent)> = Vec::new();
    for (n, d) in &c.lbii {
        if check_lbii(d, CutPolicy::FullCut).is_ok() {
            ends.push((n.clone(), d.conclusion.clone()));
        }
    }
    for (n, d) in &c.nlbii {
        if check_nlbii(d, CutPolicy::FullCut).is_ok() {
            ends.push((n.clone(), flatten_sequent(&d.conclusion)));
        }
    }
    for (n, d) in &c.llbii {
        if check_llbii(d, CutPolicy::FullCut).is_ok() {
            ends.extend(readings(&d.conclusion).into_iter().map(|s| (n.clone(), s)));
        }
    }
    let names: BTreeSet<&String> = ends.iter().map(|(n, _)| n).collect();
    ensure(names.len() >= 20, || format!("only {} checker-ok derivations", names.len()))?;
    for worked in ["cut_counterexample.lbii", "nested_counterexample.nlbii", "labelled_counterexample.llbii"] {
        ensure(names.contains(&worked.to_string()), || format!("{worked} missing or rejected"))?;
    }
    for (n, s) in &ends {
        if let Some((k, w)) = find_countermodel(s, 3) {
            return Err(format!("{n}: `{s}` fails at {} in\n{k}", k.name(w)));
        }
    }
    Ok(format!("{} derivations, no countermodel up to 3 worlds", names.len()))
}

fn criterion_3() -> Outcome {
    let em = parse_sequent("|- p | (p -> F)").unwrap();
    let (k, w) = find_countermodel(&em, 2).ok_or("no countermodel to excluded middle")?;
    ensure(!k.sequent_valid_in(w, &em).unwrap(), || "returned model does not falsify".into())?;
    let lost = parse_sequent("p, r |- (p -< q) & r").unwrap();
    let (k2, w2) = find_countermodel(&lost, 2).ok_or("no countermodel to the lost-premise sequent")?;
    ensure(!k2.sequent_valid_in(w2, &lost).unwrap() && k2.len() <= 2, || "bad model".into())?;
    Ok(format!("excluded middle fails in {} worlds; lost premise fails in {}", k.len(), k2.len()))
}

fn criterion_4(c: &Corpus) -> Outcome {
    let mut count = 0;
    for (n, d) in &c.nlbii {
        if check_nlbii(d, CutPolicy::NoCut).is_err() {
            continue;
        }
        let s = translate_nlbii_to_lbii(d).map_err(|e| format!("{n}: {e}"))?;
        check_lbii(&s, CutPolicy::FullCut).map_err(|e| format!("{n}: {e}"))?;
        check_lbii(&s, CutPolicy::UnnestCutOnly).map_err(|e| format!("{n}: {e}"))?;
        let profile = cut_profile(&s);
        ensure(profile != CutProfile::General, || format!("{n}: cut profile {profile}"))?;
        ensure(s.conclusion == flatten_sequent(&d.conclusion), || format!("{n}: end sequent"))?;
        if n == "nested_counterexample.nlbii" {
            ensure(profile == CutProfile::UnnestOnly, || format!("{n}: cut profile {profile}"))?;
        }
        count += 1;
    }
    Ok(format!("{count} cut-free nested derivations flatten with unnest cuts only"))
}

/// Oriented trees on `n0 n1 n2`.
fn three_node_trees() -> Vec<LabelTree> {
    let l = |i: usize| Label::new(format!("n{i}"));
    let mut out = Vec::new();
    for parent2 in [0, 1] {
        for dirs in 0..4u8 {
            let a1 = if dirs & 1 == 0 { (l(0), l(1)) } else { (l(1), l(0)) };
            let a2 = if dirs & 2 == 0 { (l(parent2), l(2)) } else { (l(2), l(parent2)) };
            out.push(LabelTree::new((0..3).map(l), [a1, a2]).unwrap());
        }
    }
    out
}

fn reachable(t: &LabelTree, from: &Label) -> BTreeSet<Label> {
    let mut seen = BTreeSet::from([from.clone()]);
    let mut stack = vec![from.clone()];
    while let Some(x) = stack.pop() {
        for y in t.above(&x) {
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen
}

fn criterion_5(c: &Corpus) -> Outcome {
    let mut translated = 0;
    for (n, d) in &c.llbii {
        if check_llbii(d, CutPolicy::FullCut).is_err() {
            continue;
        }
        for root in d.conclusion.tree.nodes() {
            let out = translate_llbii_to_nlbii(d, root).map_err(|e| format!("{n}: {e}"))?;
            check_nlbii(&out, CutPolicy::FullCut).map_err(|e| format!("{n} at {root}: {e}"))?;
            ensure(out.conclusion == lton(&d.conclusion, root).unwrap(), || format!("{n}: end sequent"))?;
            translated += 1;
        }
    }
    for (n, d) in &c.nlbii {
        if check_nlbii(d, CutPolicy::FullCut).is_err() {
            continue;
        }
        let x = Label::new("x");
        let out = translate_nlbii_to_llbii(d, &x).map_err(|e| format!("{n}: {e}"))?;
        check_llbii(&out, CutPolicy::FullCut).map_err(|e| format!("{n}: {e}"))?;
        ensure(out.conclusion == ntol(&d.conclusion, &x), || format!("{n}: end sequent"))?;
        translated += 1;
    }
    // readdressing on every 3-node tree, for every provable `u:p |- v:p`
    let mut moves = 0;
    for t in three_node_trees() {
        for u in t.nodes() {
            for v in reachable(&t, u) {
                let s = LabelledSequent::new(
                    t.clone(),
                    Multiset::from_vec(vec![LFormula::new(u.clone(), Formula::atom("p"))]),
                    Multiset::from_vec(vec![
                        LFormula::new(v.clone(), Formula::atom("p")),
                        LFormula::new(u.clone(), Formula::atom("q")),
                    ]),
                );
                let d = search_llbii_cutfree(&s, 4).ok_or_else(|| format!("no proof of {s}"))?;
                for z in t.nodes() {
                    let at_z = translate_llbii_to_nlbii(&d, z).map_err(|e| e.to_string())?;
                    for x in t.nodes() {
                        let moved = readdress(&at_z, &s, z, x).map_err(|e| e.to_string())?;
                        check_nlbii(&moved, CutPolicy::NoCut).map_err(|e| format!("{s} {z}->{x}: {e}"))?;
                        ensure(moved.conclusion == lton(&s, x).unwrap(), || format!("{s} {z}->{x}: end"))?;
                        moves += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{translated} corpus translations, {moves} readdressings"))
}

fn random_formula(rng: &mut StdRng, depth: u32, atoms: &[&str]) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..6) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::atom(atoms[rng.gen_range(0..atoms.len())]),
        };
    }
    let a = random_formula(rng, depth - 1, atoms);
    let b = random_formula(rng, depth - 1, atoms);
    match rng.gen_range(0..4) {
        0 => Formula::and(a, b),
        1 => Formula::or(a, b),
        2 => Formula::imp(a, b),
        _ => Formula::excl(a, b),
    }
}

fn random_nested(rng: &mut StdRng, depth: u32) -> NestedSequent {
    let side = |rng: &mut StdRng| -> Vec<Member> {
        (0..rng.gen_range(0..3))
            .map(|_| {
                if depth > 0 && rng.gen_bool(0.35) {
                    Member::Nested(random_nested(rng, depth - 1))
                } else {
                    Member::Formula(random_formula(rng, 2, &["p", "q", "r"]))
                }
            })
            .collect()
    };
    let ante = side(rng);
    let succ = side(rng);
    Seq::from_vecs(ante, succ)
}

fn random_tree(rng: &mut StdRng, n: usize) -> Vec<(usize, usize)> {
    (1..n)
        .map(|i| {
            let p = rng.gen_range(0..i);
            if rng.gen_bool(0.5) {
                (p, i)
            } else {
                (i, p)
            }
        })
        .collect()
}

fn random_labelled(rng: &mut StdRng) -> LabelledSequent {
    let n = rng.gen_range(1..=4);
    let l = |i: usize| Label::new(format!("w{i}"));
    let arcs = random_tree(rng, n).into_iter().map(|(a, b)| (l(a), l(b)));
    let tree = LabelTree::new((0..n).map(l), arcs).unwrap();
    let mut s = LabelledSequent::new(tree, Multiset::new(), Multiset::new());
    for _ in 0..rng.gen_range(0..6) {
        let lf = LFormula::new(l(rng.gen_range(0..n)), random_formula(rng, 2, &["p", "q"]));
        if rng.gen_bool(0.5) {
            s.ante.insert(lf);
        } else {
            s.succ.insert(lf);
        }
    }
    s
}

/// Brute force over label bijections that fix `root`.
fn same_up_to_renaming(a: &LabelledSequent, b: &LabelledSequent, root: &Label) -> bool {
    fn perms(v: Vec<Label>) -> Vec<Vec<Label>> {
        if v.is_empty() {
            return vec![vec![]];
        }
        (0..v.len())
            .flat_map(|i| {
                let mut rest = v.clone();
                let h = rest.remove(i);
                perms(rest).into_iter().map(move |mut p| {
                    p.insert(0, h.clone());
                    p
                })
            })
            .collect()
    }
    let xs: Vec<Label> = a.tree.nodes().filter(|l| *l != root).cloned().collect();
    let ys: Vec<Label> = b.tree.nodes().filter(|l| *l != root).cloned().collect();
    xs.len() == ys.len()
        && perms(ys).into_iter().any(|p| {
            let m: BTreeMap<Label, Label> = xs.iter().cloned().zip(p).collect();
            a.map_labels(|l| m.get(l).cloned().unwrap_or_else(|| l.clone())) == *b
        })
}

fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let x = Label::new("x");
    for i in 0..100 {
        let s = random_nested(&mut rng, 3);
        let back = lton(&ntol(&s, &x), &x).unwrap();
        ensure(back == s, || format!("nested #{i}: {s} came back as {back}"))?;
    }
    for i in 0..100 {
        let s = random_labelled(&mut rng);
        let root = s.tree.nodes().next().unwrap().clone();
        let back = ntol(&lton(&s, &root).unwrap(), &root);
        ensure(same_up_to_renaming(&s, &back, &root), || format!("labelled #{i}: {s} came back as {back}"))?;
    }
    Ok("100 nested and 100 labelled sequents round trip".into())
}

fn criterion_7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let atoms = ["p", "q", "r"];
    let mut violations = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=4);
        let arcs = random_tree(&mut rng, n);
        // upward closure of random seeds keeps the valuation monotone
        let mut le = vec![vec![false; n]; n];
        for (w, row) in le.iter_mut().enumerate() {
            row[w] = true;
        }
        for _ in 0..n {
            for &(a, b) in &arcs {
                for row in le.iter_mut() {
                    if row[a] {
                        row[b] = true;
                    }
                }
            }
        }
        let seeds: Vec<Vec<&str>> = (0..n)
            .map(|_| atoms.iter().copied().filter(|_| rng.gen_bool(0.3)).collect())
            .collect();
        let interp: Vec<BTreeSet<String>> = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&w| le[w][v])
                    .flat_map(|w| seeds[w].iter().map(|a| a.to_string()))
                    .collect()
            })
            .collect();
        let k = KripkeTree::indexed(n, arcs, interp).map_err(|e| e.to_string())?;
        let f = random_formula(&mut rng, 5, &atoms);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|w| (0..n).map(move |v| (w, v))).filter(|&(w, v)| le[w][v]).collect();
        let (w, v) = pairs[rng.gen_range(0..pairs.len())];
        if k.eval(w, &f).unwrap() && !k.eval(v, &f).unwrap() {
            violations += 1;
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok("500 instances, 0 violations".into())
}

fn criterion_8() -> Outcome {
    let cut: LbiiDerivation = Derivation::parse(&read("cut_counterexample.lbii")).unwrap();
    let out = permute_cut(&cut).map_err(|e| e.to_string())?;
    check_lbii(&out, CutPolicy::FullCut).map_err(|e| e.to_string())?;
    ensure(out.conclusion == cut.conclusion, || "end sequent changed".into())?;
    let rules: BTreeSet<String> = out.rules().iter().map(|r| r.to_string()).collect();
    Ok(format!("permuted derivation checks, {} nodes, rules {:?}", out.size(), rules))
}

fn criterion_9() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let atoms = ["p", "q", "r", "a_1", "longer"];
    for i in 0..1000 {
        let f = random_formula(&mut rng, 8, &atoms);
        let text = f.to_string();
        let back = parse_formula(&text).map_err(|e| format!("#{i} `{text}`: {e}"))?;
        ensure(back == f, || format!("#{i}: `{text}` parses differently"))?;
    }
    Ok("1000 formulas".into())
}

fn main() {
    let start = Instant::now();
    let corpus = load_corpus();
    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "counterexample suite", criterion_1()),
        (2, "semantic soundness of the corpus", criterion_2(&corpus)),
        (3, "countermodel oracle", criterion_3()),
        (4, "flattening yields unnest cuts only", criterion_4(&corpus)),
        (5, "labelled/nested translations and readdressing", criterion_5(&corpus)),
        (6, "sequent round trips", criterion_6()),
        (7, "monotonicity", criterion_7()),
        (8, "cut permutation", criterion_8()),
        (9, "parser round trip", criterion_9()),
    ];
    let mut failed = 0;
    for (i, name, r) in &results {
        match r {
            Ok(msg) => println!("PASS {i} {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {i} {name}: {msg}");
            }
        }
    }
    println!("{} of {} criteria pass ({:.1}s)", results.len() - failed, results.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
