//! Batch runner over a manifest of derivations and goals.

use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use biint::labelled::Label;
use biint::CutPolicy;
use serde::Deserialize;

use crate::commands::{self, AnyDerivation, Calculus, Searcher};
use crate::read_input;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expected {
    Proves,
    Exhausts,
    Checks,
    Fails,
    Countermodel,
    None,
}

impl Expected {
    fn name(self) -> &'static str {
        match self {
            Expected::Proves => "proves",
            Expected::Exhausts => "exhausts",
            Expected::Checks => "checks",
            Expected::Fails => "fails",
            Expected::Countermodel => "countermodel",
            Expected::None => "none",
        }
    }
}

#[derive(Debug, Deserialize)]
pub struct Manifest {
    #[serde(rename = "entry")]
    pub entries: Vec<Entry>,
}

/// One corpus item. `calculus` is `lbii`, `nlbii` or `llbii` for a
/// derivation file, a search name (`lbii-cutfree`, `nlbii`, `llbii`) for a
/// goal, or `kripke` for a countermodel query.
#[derive(Debug, Deserialize)]
pub struct Entry {
    pub name: String,
    pub calculus: String,
    #[serde(default)]
    pub derivation: Option<String>,
    #[serde(default)]
    pub sequent: Option<String>,
    pub expected: Expected,
    #[serde(default)]
    pub cuts: Option<String>,
    #[serde(default)]
    pub depth: Option<usize>,
    #[serde(default)]
    pub max_worlds: Option<usize>,
    #[serde(default)]
    pub root: Option<String>,
}

pub struct Row {
    pub name: String,
    pub verdict: Expected,
    pub expected: Expected,
    pub detail: String,
    pub millis: u128,
}

impl Row {
    pub fn matches(&self) -> bool {
        self.verdict == self.expected
    }
}

pub fn load(path: &Path) -> Result<Manifest> {
    let text = read_input(path)?;
    toml::from_str(&text).with_context(|| format!("reading manifest {}", path.display()))
}

/// Runs every entry, resolving derivation paths against `base`.
pub fn run(manifest: &Manifest, base: &Path) -> Result<Vec<Row>> {
    manifest.entries.iter().map(|e| run_entry(e, base)).collect()
}

fn run_entry(e: &Entry, base: &Path) -> Result<Row> {
    let start = Instant::now();
    let (verdict, detail) = if let Some(file) = &e.derivation {
        let calculus: Calculus = e.calculus.parse()?;
        let text = read_input(&base.join(file))?;
        let d = AnyDerivation::parse(calculus, &text).with_context(|| format!("entry {}", e.name))?;
        let policy: CutPolicy = match &e.cuts {
            Some(c) => c.parse().map_err(anyhow::Error::msg)?,
            None => CutPolicy::FullCut,
        };
        match d.check(policy) {
            Ok(()) => (Expected::Checks, format!("{} nodes", d.size())),
            Err(err) => (Expected::Fails, err.to_string()),
        }
    } else if let Some(goal) = &e.sequent {
        if e.calculus == "kripke" {
            let n = e.max_worlds.unwrap_or(3);
            match commands::countermodel(goal, n)? {
                Some(model) => {
                    let worlds = model.lines().next().map_or(0, |l| l.split_whitespace().count() - 1);
                    (Expected::Countermodel, format!("{worlds} world{}", if worlds == 1 { "" } else { "s" }))
                }
                None => (Expected::None, format!("none up to {n}")),
            }
        } else {
            let searcher = match e.calculus.as_str() {
                "lbii-cutfree" => Searcher::LbiiCutfree,
                "nlbii" => Searcher::Nlbii,
                "llbii" => Searcher::Llbii,
                other => bail!("entry {}: unknown calculus `{other}`", e.name),
            };
            let depth = e.depth.unwrap_or(12);
            let root = Label::new(e.root.clone().unwrap_or_else(|| "x".into()));
            match commands::prove(searcher, goal, depth, &root)? {
                Some(d) => (Expected::Proves, format!("{} nodes", d.size())),
                None => (Expected::Exhausts, format!("depth {depth}")),
            }
        }
    } else {
        bail!("entry {} has neither a derivation nor a sequent", e.name);
    };
    Ok(Row {
        name: e.name.clone(),
        verdict,
        expected: e.expected,
        detail,
        millis: start.elapsed().as_millis(),
    })
}

/// The report table. Without `timing` it depends only on the inputs.
pub fn report(rows: &[Row], timing: bool) -> String {
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
    let mut out = format!("{:<width$}  {:<12}  {:<12}  {:<8}  detail", "name", "verdict", "expected", "status");
    if timing {
        out.push_str("  time");
    }
    out.push('\n');
    for r in rows {
        let status = if r.matches() { "ok" } else { "MISMATCH" };
        out.push_str(&format!(
            "{:<width$}  {:<12}  {:<12}  {:<8}  {}",
            r.name,
            r.verdict.name(),
            r.expected.name(),
            status,
            r.detail
        ));
        if timing {
            out.push_str(&format!("  {}ms", r.millis));
        }
        out.push('\n');
    }
    let bad = rows.iter().filter(|r| !r.matches()).count();
    out.push_str(&format!("{} entries, {} mismatches\n", rows.len(), bad));
    out
}
