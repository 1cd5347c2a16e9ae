use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use biint::labelled::Label;
use biint::CutPolicy;
use biint_cli::commands::{self, Calculus, Kind, Searcher};
use biint_cli::{corpus, read_input, Verdict};

/// Sequent calculi for bi-intuitionistic logic.
#[derive(Parser)]
#[command(name = "biint", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula or sequent and print its canonical form.
    Parse {
        #[arg(long, value_enum, default_value = "formula")]
        kind: Kind,
        text: String,
    },
    /// Check a derivation file (`-` for standard input).
    Check {
        #[arg(long, value_enum)]
        calculus: Calculus,
        #[arg(long, default_value = "full", value_parser = parse_policy)]
        cuts: CutPolicy,
        file: PathBuf,
    },
    /// Bounded cut-free proof search.
    Prove {
        #[arg(long, value_enum)]
        calculus: Searcher,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Label for a plain sequent given to the labelled search.
        #[arg(long, default_value = "x")]
        root: String,
        sequent: String,
    },
    /// Translate a derivation between calculi.
    Translate {
        #[arg(long, value_enum)]
        from: Calculus,
        #[arg(long, value_enum)]
        to: Calculus,
        #[arg(long)]
        root: Option<String>,
        file: PathBuf,
    },
    /// Search for a Kripke countermodel.
    Countermodel {
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        sequent: String,
    },
    /// Run a corpus manifest and print a report.
    Corpus {
        #[arg(default_value = "corpus/manifest.toml")]
        manifest: PathBuf,
        /// Add wall time per entry; the report is then not reproducible.
        #[arg(long)]
        timing: bool,
    },
}

fn parse_policy(s: &str) -> Result<CutPolicy, String> {
    s.parse()
}

fn run(cli: Cli) -> Result<Verdict> {
    match cli.command {
        Command::Parse { kind, text } => {
            println!("{}", commands::parse(kind, &text)?);
            Ok(Verdict::Yes)
        }
        Command::Check { calculus, cuts, file } => {
            let (v, msg) = commands::check(calculus, &read_input(&file)?, cuts)?;
            match v {
                Verdict::Yes => println!("{msg}"),
                Verdict::No => eprintln!("{msg}"),
            }
            Ok(v)
        }
        Command::Prove {
            calculus,
            depth,
            root,
            sequent,
        } => match commands::prove(calculus, &sequent, depth, &Label::new(root))? {
            Some(d) => {
                print!("{}", d.to_text());
                Ok(Verdict::Yes)
            }
            None => {
                println!("exhausted");
                Ok(Verdict::No)
            }
        },
        Command::Translate { from, to, root, file } => {
            let root = root.map(Label::new);
            let d = commands::translate(from, to, root.as_ref(), &read_input(&file)?)?;
            print!("{}", commands::translation_report(&d));
            Ok(Verdict::Yes)
        }
        Command::Countermodel { max_worlds, sequent } => match commands::countermodel(&sequent, max_worlds)? {
            Some(m) => {
                print!("{m}");
                Ok(Verdict::Yes)
            }
            None => {
                println!("none up to {max_worlds}");
                Ok(Verdict::No)
            }
        },
        Command::Corpus { manifest, timing } => {
            let m = corpus::load(&manifest)?;
            let base = manifest.parent().map(PathBuf::from).unwrap_or_default();
            let rows = corpus::run(&m, &base)?;
            print!("{}", corpus::report(&rows, timing));
            Ok(if rows.iter().all(corpus::Row::matches) {
                Verdict::Yes
            } else {
                Verdict::No
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(v) => ExitCode::from(v.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
