//! Finite Kripke trees, the truth relation, and exhaustive countermodel
//! search over small trees.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::labelled::{Label, LabelledSequent};
use crate::sequent::Sequent;
use crate::syntax::Formula;

pub type World = usize;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("a Kripke tree needs at least one world")]
    Empty,
    #[error("arc {0}>{1} mentions an unknown world")]
    UnknownArcEnd(World, World),
    #[error("the arcs do not form an undirected tree")]
    NotATree,
    #[error("interpretation is not monotone: `{atom}` holds at {from} but not at {to}")]
    NotMonotone {
        atom: String,
        from: String,
        to: String,
    },
    #[error("unknown world {0}")]
    UnknownWorld(World),
    #[error("label `{0}` has no world assigned")]
    UnassignedLabel(Label),
    #[error("assignment does not respect the arc {0}>{1}")]
    NotArcRespecting(Label, Label),
}

/// A finite Kripke structure whose adjacency forms an undirected tree.
/// Accessibility is the reflexive-transitive closure of the arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeTree {
    names: Vec<String>,
    arcs: Vec<(World, World)>,
    interp: Vec<BTreeSet<String>>,
    le: Vec<Vec<bool>>,
}

impl KripkeTree {
    pub fn new(
        names: Vec<String>,
        arcs: Vec<(World, World)>,
        interp: Vec<BTreeSet<String>>,
    ) -> Result<Self, KripkeError> {
        let n = names.len();
        if n == 0 {
            return Err(KripkeError::Empty);
        }
        for &(a, b) in &arcs {
            if a >= n || b >= n {
                return Err(KripkeError::UnknownArcEnd(a, b));
            }
        }
        if !is_undirected_tree(n, &arcs) {
            return Err(KripkeError::NotATree);
        }
        let mut interp = interp;
        interp.resize(n, BTreeSet::new());
        let le = closure(n, &arcs);
        for w in 0..n {
            for v in 0..n {
                if le[w][v] {
                    if let Some(p) = interp[w].difference(&interp[v]).next() {
                        return Err(KripkeError::NotMonotone {
                            atom: p.clone(),
                            from: names[w].clone(),
                            to: names[v].clone(),
                        });
                    }
                }
            }
        }
        Ok(KripkeTree {
            names,
            arcs,
            interp,
            le,
        })
    }

    /// Worlds named `w0`, `w1`, ...
    pub fn indexed(
        n: usize,
        arcs: Vec<(World, World)>,
        interp: Vec<BTreeSet<String>>,
    ) -> Result<Self, KripkeError> {
        KripkeTree::new((0..n).map(|i| format!("w{i}")).collect(), arcs, interp)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, w: World) -> &str {
        &self.names[w]
    }

    pub fn world(&self, name: &str) -> Option<World> {
        self.names.iter().position(|n| n == name)
    }

    pub fn arcs(&self) -> &[(World, World)] {
        &self.arcs
    }

    pub fn interp(&self, w: World) -> &BTreeSet<String> {
        &self.interp[w]
    }

    pub fn leq(&self, w: World, v: World) -> bool {
        self.le[w][v]
    }

    /// All pairs `(w, v)` with `w <= v`.
    pub fn accessibility(&self) -> BTreeSet<(World, World)> {
        let n = self.len();
        (0..n)
            .flat_map(|w| (0..n).map(move |v| (w, v)))
            .filter(|&(w, v)| self.le[w][v])
            .collect()
    }

    /// Truth values of `f` at every world.
    pub fn truth(&self, f: &Formula) -> Vec<bool> {
        let n = self.len();
        match f {
            Formula::Atom(p) => self.interp.iter().map(|s| s.contains(p)).collect(),
            Formula::Top => vec![true; n],
            Formula::Bot => vec![false; n],
            Formula::And(a, b) => zip(self.truth(a), self.truth(b), |x, y| x && y),
            Formula::Or(a, b) => zip(self.truth(a), self.truth(b), |x, y| x || y),
            Formula::Impl(a, b) => {
                let (ta, tb) = (self.truth(a), self.truth(b));
                (0..n)
                    .map(|w| (0..n).all(|v| !self.le[w][v] || !ta[v] || tb[v]))
                    .collect()
            }
            Formula::Excl(a, b) => {
                let (ta, tb) = (self.truth(a), self.truth(b));
                (0..n)
                    .map(|w| (0..n).any(|v| self.le[v][w] && ta[v] && !tb[v]))
                    .collect()
            }
        }
    }

    pub fn eval(&self, w: World, f: &Formula) -> Result<bool, KripkeError> {
        if w >= self.len() {
            return Err(KripkeError::UnknownWorld(w));
        }
        Ok(self.truth(f)[w])
    }

    pub fn sequent_valid_in(&self, w: World, s: &Sequent) -> Result<bool, KripkeError> {
        if w >= self.len() {
            return Err(KripkeError::UnknownWorld(w));
        }
        Ok(self.sequent_truth(s)[w])
    }

    fn sequent_truth(&self, s: &Sequent) -> Vec<bool> {
        let mut out = vec![true; self.len()];
        let ante: Vec<_> = s.ante.distinct().map(|f| self.truth(f)).collect();
        let succ: Vec<_> = s.succ.distinct().map(|f| self.truth(f)).collect();
        for (w, slot) in out.iter_mut().enumerate() {
            *slot = !ante.iter().all(|t| t[w]) || succ.iter().any(|t| t[w]);
        }
        out
    }

    /// Checks that `v` maps every node of the label tree and sends arcs
    /// into accessibility.
    pub fn check_assignment(
        &self,
        v: &BTreeMap<Label, World>,
        ls: &LabelledSequent,
    ) -> Result<(), KripkeError> {
        for x in ls.tree.nodes() {
            match v.get(x) {
                Some(&w) if w < self.len() => {}
                Some(&w) => return Err(KripkeError::UnknownWorld(w)),
                None => return Err(KripkeError::UnassignedLabel(x.clone())),
            }
        }
        for (x, y) in ls.tree.arcs() {
            if !self.le[v[x]][v[y]] {
                return Err(KripkeError::NotArcRespecting(x.clone(), y.clone()));
            }
        }
        Ok(())
    }

    pub fn labelled_sequent_valid_in(
        &self,
        v: &BTreeMap<Label, World>,
        ls: &LabelledSequent,
    ) -> Result<bool, KripkeError> {
        self.check_assignment(v, ls)?;
        let holds = |lf: &crate::labelled::LFormula| self.truth(&lf.formula)[v[&lf.label]];
        Ok(!ls.ante.iter().all(holds) || ls.succ.iter().any(holds))
    }
}

fn zip(a: Vec<bool>, b: Vec<bool>, f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

fn is_undirected_tree(n: usize, arcs: &[(World, World)]) -> bool {
    if arcs.len() + 1 != n {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(w) = stack.pop() {
        for &(a, b) in arcs {
            for (from, to) in [(a, b), (b, a)] {
                if from == w && !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn closure(n: usize, arcs: &[(World, World)]) -> Vec<Vec<bool>> {
    let mut le = vec![vec![false; n]; n];
    for (w, row) in le.iter_mut().enumerate() {
        row[w] = true;
    }
    for &(a, b) in arcs {
        le[a][b] = true;
    }
    for k in 0..n {
        let via = le[k].clone();
        for row in le.iter_mut() {
            if row[k] {
                for (j, &up) in via.iter().enumerate() {
                    if up {
                        row[j] = true;
                    }
                }
            }
        }
    }
    le
}

impl fmt::Display for KripkeTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "worlds: {}", self.names.join(" "))?;
        let arcs: Vec<String> = self
            .arcs
            .iter()
            .map(|&(a, b)| format!("{}>{}", self.names[a], self.names[b]))
            .collect();
        writeln!(f, "{}", join_after("arcs:", &arcs))?;
        for (w, atoms) in self.interp.iter().enumerate() {
            let atoms: Vec<String> = atoms.iter().cloned().collect();
            writeln!(f, "{}", join_after(&format!("{}:", self.names[w]), &atoms))?;
        }
        Ok(())
    }
}

fn join_after(head: &str, items: &[String]) -> String {
    if items.is_empty() {
        head.to_string()
    } else {
        format!("{head} {}", items.join(" "))
    }
}

/// Text form of a countermodel: the model followed by the falsifying world.
pub fn render_countermodel(k: &KripkeTree, w: World) -> String {
    format!("{k}at: {}\n", k.name(w))
}

/// Canonical form of a directed tree up to isomorphism.
pub fn shape_key(n: usize, arcs: &[(World, World)]) -> String {
    fn enc(w: World, from: Option<World>, arcs: &[(World, World)]) -> String {
        let mut kids: Vec<String> = Vec::new();
        for &(a, b) in arcs {
            if a == w && Some(b) != from {
                kids.push(format!("u{}", enc(b, Some(w), arcs)));
            } else if b == w && Some(a) != from {
                kids.push(format!("d{}", enc(a, Some(w), arcs)));
            }
        }
        kids.sort();
        format!("({})", kids.concat())
    }
    (0..n)
        .map(|r| enc(r, None, arcs))
        .min()
        .unwrap_or_default()
}

/// Directed tree shapes on `n` worlds, one per isomorphism class, in a
/// fixed order.
pub fn tree_shapes(n: usize) -> Vec<Vec<(World, World)>> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    if n == 0 {
        return out;
    }
    let mut parents = vec![0usize; n];
    loop {
        for bits in 0..(1u32 << (n - 1)) {
            let arcs: Vec<(World, World)> = (1..n)
                .map(|i| {
                    if bits >> (i - 1) & 1 == 0 {
                        (parents[i], i)
                    } else {
                        (i, parents[i])
                    }
                })
                .collect();
            if seen.insert(shape_key(n, &arcs)) {
                out.push(arcs);
            }
        }
        // next parent array with parents[i] < i
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            if parents[i] + 1 < i {
                parents[i] += 1;
                for p in parents.iter_mut().skip(i + 1) {
                    *p = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Up-closed sets of worlds, as bitmasks in increasing order.
fn up_sets(n: usize, le: &[Vec<bool>]) -> Vec<u32> {
    (0..(1u32 << n))
        .filter(|m| {
            (0..n).all(|w| m >> w & 1 == 0 || (0..n).all(|v| !le[w][v] || m >> v & 1 == 1))
        })
        .collect()
}

/// Every Kripke tree with exactly `n` worlds over `atoms`, one per tree
/// shape and monotone interpretation, in the search order.
pub fn models(n: usize, atoms: &[String]) -> Vec<KripkeTree> {
    let mut out = Vec::new();
    for arcs in tree_shapes(n) {
        let le = closure(n, &arcs);
        let ups = up_sets(n, &le);
        let total = ups.len().pow(atoms.len() as u32);
        for code in 0..total {
            let mut interp = vec![BTreeSet::new(); n];
            let mut rest = code;
            for a in (0..atoms.len()).rev() {
                let mask = ups[rest % ups.len()];
                rest /= ups.len();
                for (w, set) in interp.iter_mut().enumerate() {
                    if mask >> w & 1 == 1 {
                        set.insert(atoms[a].clone());
                    }
                }
            }
            out.push(KripkeTree::indexed(n, arcs.clone(), interp).expect("monotone by construction"));
        }
    }
    out
}

/// First Kripke tree with at most `max_worlds` worlds and a world falsifying
/// `s`, if any.
pub fn find_countermodel(s: &Sequent, max_worlds: usize) -> Option<(KripkeTree, World)> {
    let atoms: Vec<String> = s.atoms().into_iter().collect();
    for n in 1..=max_worlds {
        for k in models(n, &atoms) {
            if let Some(w) = k.sequent_truth(s).iter().position(|ok| !ok) {
                return Some((k, w));
            }
        }
    }
    None
}

/// Arc-respecting assignments of the nodes of `ls` into `k`.
pub fn assignments(k: &KripkeTree, ls: &LabelledSequent) -> Vec<BTreeMap<Label, World>> {
    let nodes: Vec<Label> = ls.tree.nodes().cloned().collect();
    let n = k.len();
    let mut out = Vec::new();
    let mut idx = vec![0usize; nodes.len()];
    loop {
        let v: BTreeMap<Label, World> = nodes.iter().cloned().zip(idx.iter().copied()).collect();
        if ls.tree.arcs().all(|(x, y)| k.leq(v[x], v[y])) {
            out.push(v);
        }
        let mut i = nodes.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < n {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// First model and arc-respecting assignment with at most `max_worlds`
/// worlds falsifying the labelled sequent, if any.
pub fn find_labelled_countermodel(
    ls: &LabelledSequent,
    max_worlds: usize,
) -> Option<(KripkeTree, BTreeMap<Label, World>)> {
    let atoms: Vec<String> = ls.atoms().into_iter().collect();
    for n in 1..=max_worlds {
        for k in models(n, &atoms) {
            for v in assignments(&k, ls) {
                if !k.labelled_sequent_valid_in(&v, ls).expect("assignment checked") {
                    return Some((k, v));
                }
            }
        }
    }
    None
}
