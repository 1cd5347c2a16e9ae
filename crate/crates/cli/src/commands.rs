use std::fmt::Write as _;
use std::str::FromStr;

use anyhow::{anyhow, bail, Result};

use biint::kripke::{find_countermodel, render_countermodel};
use biint::labelled::{check_llbii, parse_labelled_sequent, search_llbii_cutfree, Label, LabelledSequent, LlbiiDerivation};
use biint::nested::{check_nlbii, parse_nested_sequent, search_nlbii_cutfree, NlbiiDerivation};
use biint::standard::{check_lbii, cut_profile, search_lbii_cutfree, CutProfile, LbiiDerivation};
use biint::translations::*;
use biint::{parse_formula, parse_sequent, CutPolicy, Derivation};

use crate::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Calculus {
    Lbii,
    Nlbii,
    Llbii,
}

impl Calculus {
    pub fn name(self) -> &'static str {
        match self {
            Calculus::Lbii => "lbii",
            Calculus::Nlbii => "nlbii",
            Calculus::Llbii => "llbii",
        }
    }
}

impl FromStr for Calculus {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lbii" => Ok(Calculus::Lbii),
            "nlbii" => Ok(Calculus::Nlbii),
            "llbii" => Ok(Calculus::Llbii),
            _ => bail!("unknown calculus `{s}`"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Searcher {
    #[value(name = "lbii-cutfree")]
    LbiiCutfree,
    Nlbii,
    Llbii,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    Formula,
    Sequent,
    Nested,
    Labelled,
}

/// A parsed derivation of one of the calculi.
pub enum AnyDerivation {
    Lbii(LbiiDerivation),
    Nlbii(NlbiiDerivation),
    Llbii(LlbiiDerivation),
}

impl AnyDerivation {
    pub fn parse(calculus: Calculus, text: &str) -> Result<Self> {
        Ok(match calculus {
            Calculus::Lbii => AnyDerivation::Lbii(Derivation::parse(text)?),
            Calculus::Nlbii => AnyDerivation::Nlbii(Derivation::parse(text)?),
            Calculus::Llbii => AnyDerivation::Llbii(Derivation::parse(text)?),
        })
    }

    pub fn check(&self, policy: CutPolicy) -> Result<(), biint::CheckError> {
        match self {
            AnyDerivation::Lbii(d) => check_lbii(d, policy),
            AnyDerivation::Nlbii(d) => check_nlbii(d, policy),
            AnyDerivation::Llbii(d) => check_llbii(d, policy),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            AnyDerivation::Lbii(d) => d.to_text(),
            AnyDerivation::Nlbii(d) => d.to_text(),
            AnyDerivation::Llbii(d) => d.to_text(),
        }
    }

    pub fn conclusion(&self) -> String {
        match self {
            AnyDerivation::Lbii(d) => d.conclusion.to_string(),
            AnyDerivation::Nlbii(d) => d.conclusion.to_string(),
            AnyDerivation::Llbii(d) => d.conclusion.to_string(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            AnyDerivation::Lbii(d) => d.size(),
            AnyDerivation::Nlbii(d) => d.size(),
            AnyDerivation::Llbii(d) => d.size(),
        }
    }

    /// The standard cut profile; cuts in the other calculi count as
    /// general.
    pub fn cut_profile(&self) -> CutProfile {
        fn plain<C: biint::derivation::Calculus>(d: &Derivation<C>) -> CutProfile {
            if d.nodes().iter().any(|(_, n)| n.rule.to_string() == "cut") {
                CutProfile::General
            } else {
                CutProfile::None
            }
        }
        match self {
            AnyDerivation::Lbii(d) => cut_profile(d),
            AnyDerivation::Nlbii(d) => plain(d),
            AnyDerivation::Llbii(d) => plain(d),
        }
    }
}

/// Canonical text of `text` read as `kind`.
pub fn parse(kind: Kind, text: &str) -> Result<String> {
    let text = text.trim();
    Ok(match kind {
        Kind::Formula => parse_formula(text)?.to_string(),
        Kind::Sequent => parse_sequent(text)?.to_string(),
        Kind::Nested => parse_nested_sequent(text)?.to_string(),
        Kind::Labelled => parse_labelled_sequent(text)?.to_string(),
    })
}

/// Checks a derivation; the message is `ok` or the first rejected node.
pub fn check(calculus: Calculus, text: &str, policy: CutPolicy) -> Result<(Verdict, String)> {
    let d = AnyDerivation::parse(calculus, text)?;
    Ok(match d.check(policy) {
        Ok(()) => (Verdict::Yes, format!("ok: {}", d.conclusion())),
        Err(e) => (Verdict::No, format!("rejected: {e} (rule {})", e.rule)),
    })
}

/// A labelled goal: labelled syntax, or a plain sequent placed at `root`.
pub fn labelled_goal(text: &str, root: &Label) -> Result<LabelledSequent> {
    match parse_labelled_sequent(text) {
        Ok(s) => Ok(s),
        Err(e) => match parse_sequent(text) {
            Ok(s) => Ok(LabelledSequent::at_label(&s, root)),
            Err(_) => Err(e.into()),
        },
    }
}

/// Runs a bounded search; the derivation text, or `None` when exhausted.
pub fn prove(searcher: Searcher, goal: &str, depth: usize, root: &Label) -> Result<Option<AnyDerivation>> {
    let goal = goal.trim();
    Ok(match searcher {
        Searcher::LbiiCutfree => search_lbii_cutfree(&parse_sequent(goal)?, depth).map(AnyDerivation::Lbii),
        Searcher::Nlbii => search_nlbii_cutfree(&parse_nested_sequent(goal)?, depth).map(AnyDerivation::Nlbii),
        Searcher::Llbii => search_llbii_cutfree(&labelled_goal(goal, root)?, depth).map(AnyDerivation::Llbii),
    })
}

/// Translates a derivation between calculi. The root is needed whenever
/// a labelled calculus is involved.
pub fn translate(from: Calculus, to: Calculus, root: Option<&Label>, text: &str) -> Result<AnyDerivation> {
    let need_root = || root.ok_or_else(|| anyhow!("--root is required for labelled derivations"));
    let d = AnyDerivation::parse(from, text)?;
    Ok(match (d, to) {
        (AnyDerivation::Lbii(d), Calculus::Nlbii) => AnyDerivation::Nlbii(embed_lbii_to_nlbii(&d)?),
        (AnyDerivation::Lbii(d), Calculus::Llbii) => AnyDerivation::Llbii(translate_lbii_to_llbii_at(&d, need_root()?)?),
        (AnyDerivation::Nlbii(d), Calculus::Lbii) => AnyDerivation::Lbii(translate_nlbii_to_lbii(&d)?),
        (AnyDerivation::Nlbii(d), Calculus::Llbii) => AnyDerivation::Llbii(translate_nlbii_to_llbii(&d, need_root()?)?),
        (AnyDerivation::Llbii(d), Calculus::Lbii) => AnyDerivation::Lbii(translate_llbii_to_lbii(&d, need_root()?)?),
        (AnyDerivation::Llbii(d), Calculus::Nlbii) => AnyDerivation::Nlbii(translate_llbii_to_nlbii(&d, need_root()?)?),
        _ => bail!("source and target calculus are both {}", from.name()),
    })
}

/// The translated derivation followed by comment lines with its check
/// result and cut profile.
pub fn translation_report(d: &AnyDerivation) -> String {
    let mut out = d.to_text();
    let status = match d.check(CutPolicy::FullCut) {
        Ok(()) => "ok".to_string(),
        Err(e) => format!("rejected: {e}"),
    };
    let _ = writeln!(out, "; check: {status}");
    let _ = writeln!(out, "; cut profile: {}", d.cut_profile());
    out
}

/// A countermodel in text form, or `None` when none exists up to the
/// bound.
pub fn countermodel(sequent: &str, max_worlds: usize) -> Result<Option<String>> {
    let s = parse_sequent(sequent.trim())?;
    Ok(find_countermodel(&s, max_worlds).map(|(k, w)| render_countermodel(&k, w)))
}
