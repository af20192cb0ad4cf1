//! Terms, formulas, sequents, inductive definition sets and proof scripts,
//! with an s-expression reader and printer.

mod formula;
mod parse;
pub mod proof;
mod sequent;
pub mod sexp;
mod system;

use thiserror::Error;

pub use formula::{fresh_name, Formula, Subst, Term};
pub use parse::{parse_formula, parse_formula_with, parse_term, print_formula, FormulaReader};
pub use proof::{parse_proof, Decl, ProofError, ProofNode, ProofScript, Rule};
pub use sequent::Sequent;
pub use sexp::Pos;
pub use system::{InductiveSystem, PredDecl, Production, Signature};

/// A parse error with its source position.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{pos}: {message}")]
pub struct SyntaxError {
    pub pos: Pos,
    pub message: String,
}

impl SyntaxError {
    pub fn at(pos: Pos, message: impl Into<String>) -> SyntaxError {
        SyntaxError {
            pos,
            message: message.into(),
        }
    }
}
