//! Command implementations for the `biint` binary.

pub mod commands;
pub mod corpus;

use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};

/// Exit status of a command: a positive or negative verdict. Usage and
/// parse errors are reported as `Err` and exit with 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
}

impl Verdict {
    pub fn code(self) -> u8 {
        match self {
            Verdict::Yes => 0,
            Verdict::No => 1,
        }
    }
}

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}
