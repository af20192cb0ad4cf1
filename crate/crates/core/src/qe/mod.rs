//! Quantifier elimination over partial bijections, and through it a
//! decision procedure for the model 𝕄.

mod decide;
mod eliminate;
mod env;
mod translate;

use thiserror::Error;

pub use decide::{
    check_induction_schema, decide_batch, decide_sentence, decide_traced, definable_set,
    diagonal_set, qe_formula, Decision, SchemaReport,
};
pub use eliminate::{
    and_s, conj_s, disj_s, dnf, eliminate_constants, eliminate_constants_literal, eliminate_one,
    eliminate_quantifiers, eliminate_quantifiers_traced, eval_ground, not_s, or_s, Elimination,
    Literal, Step,
};
pub use env::RelEnv;
pub use translate::translate;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QeError {
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("predicate `{0}` has no interpretation in the model")]
    Uninterpreted(String),
    #[error("expected a quantifier-free formula")]
    NotQuantifierFree,
    #[error("free variables remain: {}", .0.join(", "))]
    NotClosed(Vec<String>),
    #[error("expected exactly the free variable `{0}`")]
    FreeVariable(String),
}
