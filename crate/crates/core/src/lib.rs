//! Sequent calculi for bi-intuitionistic propositional logic.

pub mod derivation;
pub mod kripke;
pub mod labelled;
pub mod multiset;
pub mod nested;
pub(crate) mod rules;
pub mod sequent;
pub mod standard;
pub mod syntax;
pub mod translations;

pub use derivation::{CheckError, CheckErrorKind, CutPolicy, Derivation};
pub use multiset::Multiset;
pub use sequent::{parse_sequent, Elem, Seq, Sequent};
pub use syntax::{parse_formula, Formula, ParseError};
