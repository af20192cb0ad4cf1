//! The separation pipeline: H has a cyclic proof yet fails in 𝕄.

use serde::Serialize;
use std::fmt;
use thiserror::Error;

use crate::corpus::{hydra_proof, lemma_le_proof, lemma_le_without_major};
use crate::cyclic::check_cyclic_script;
use crate::hydra::{hydra_axioms, hydra_formula};
use crate::lkid::check_lkid_script;
use crate::model::{eval_ground, EvalError, MElement};
use crate::qe::{decide_sentence, QeError};
use crate::syntax::{Formula, Term};
use crate::verdict::Verdict;

#[derive(Debug, Error)]
pub enum DemoError {
    #[error(transparent)]
    Qe(#[from] QeError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparationReport {
    pub cyclic: Verdict,
    pub axioms: Vec<(String, bool)>,
    pub hydra_in_model: bool,
    /// ¬p(0_𝕄, 0_ℤ) by ground evaluation.
    pub witness_refutes: bool,
    pub le_proof: Verdict,
    pub le_without_major: Verdict,
}

impl SeparationReport {
    pub fn cyclic_provable(&self) -> bool {
        self.cyclic.is_accept()
    }

    pub fn model_refuted(&self) -> bool {
        self.axioms.iter().all(|(_, v)| *v) && !self.hydra_in_model && self.witness_refutes
    }

    pub fn le_machinery(&self) -> bool {
        self.le_proof.is_accept() && !self.le_without_major.is_accept()
    }

    pub fn holds(&self) -> bool {
        self.cyclic_provable() && self.model_refuted() && self.le_machinery()
    }
}

pub fn separation() -> Result<SeparationReport, DemoError> {
    let axioms = hydra_axioms()
        .into_iter()
        .map(|(name, f)| Ok((name, decide_sentence(&f)?)))
        .collect::<Result<Vec<_>, QeError>>()?;
    let witness = Formula::p(
        Term::Elem(MElement::nat(0)),
        Term::Elem(MElement::zeta(0)),
    );
    Ok(SeparationReport {
        cyclic: check_cyclic_script(&hydra_proof()),
        axioms,
        hydra_in_model: decide_sentence(&hydra_formula())?,
        witness_refutes: !eval_ground(&witness)?,
        le_proof: check_lkid_script(&lemma_le_proof()),
        le_without_major: check_lkid_script(&lemma_le_without_major()),
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for SeparationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cyclic proof of H (CLKID^omega): {}", self.cyclic)?;
        for (name, v) in &self.axioms {
            writeln!(f, "M |= {name}: {v}")?;
        }
        writeln!(f, "M |= H: {}", self.hydra_in_model)?;
        writeln!(f, "M |= not p(0_M, 0_Z): {}", self.witness_refutes)?;
        writeln!(f, "LKID proof of 0-axiom, N x, N y, le x y |- y = 0 -> x = 0: {}", self.le_proof)?;
        writeln!(f, "  same proof without the major premise: {}", self.le_without_major)?;
        writeln!(f, "cyclic-provable: {}", yes(self.cyclic_provable()))?;
        writeln!(f, "refuted in M (so not LKID-provable from N alone): {}", yes(self.model_refuted()))?;
        writeln!(
            f,
            "le-induction available once le is added (extension not conservative): {}",
            yes(self.le_machinery())
        )?;
        write!(f, "separation: {}", yes(self.holds()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separation_holds() {
        let r = separation().unwrap();
        assert!(r.holds(), "{r}");
    }
}
