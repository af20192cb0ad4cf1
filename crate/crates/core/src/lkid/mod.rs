//! Rule-by-rule checking of finite LKID proofs, induction obligations and
//! induction-schema instances.

mod check;
pub mod rules;

use std::collections::BTreeMap;

pub use check::{check_step, Calculus, Ctx, Link};
pub use rules::{
    case_distinctions, induction_obligations, induction_schema_instance, intro_instance,
    mutual_dependency, mutually_dependent, CaseBranch,
};
pub use crate::syntax::proof::{Hypothesis, InductionAnnotation};

use crate::syntax::{Formula, InductiveSystem, ProofScript, Sequent, Term};
use crate::verdict::Verdict;

/// Induction obligations with fresh variables chosen automatically: the
/// minor premises and the major premise of `(Ind P_j)` on `Γ, P_j u⃗ ⊢ Δ`.
pub fn gen_induction_obligations(
    sys: &InductiveSystem,
    ann: &InductionAnnotation,
    gamma: &[Formula],
    delta: &[Formula],
    u: &[Term],
) -> Result<(Vec<Sequent>, Sequent), String> {
    let gamma = gamma.iter().cloned().collect();
    let delta = delta.iter().cloned().collect();
    let concl = Sequent {
        ante: gamma,
        succ: delta,
    }
    .with_ante(Formula::Pred(ann.target.clone(), u.to_vec()));
    let avoid = rules::induction_avoid(ann, &concl);
    let fresh = rules::default_induction_fresh(sys, ann, u, &avoid);
    let gamma = concl
        .ante
        .iter()
        .filter(|f| **f != Formula::Pred(ann.target.clone(), u.to_vec()))
        .cloned()
        .collect();
    induction_obligations(sys, ann, &gamma, &concl.succ, u, &fresh)
}

/// Trace links of every internal node, keyed by node id.
pub type StepLinks = BTreeMap<String, Vec<Vec<Link>>>;

/// Checks every node in pre-order; the first failure becomes a rejection
/// at that node. In the cyclic calculus a bud must carry the same sequent
/// as its companion.
pub fn check_local(ctx: &Ctx<'_>, script: &ProofScript) -> Result<StepLinks, Verdict> {
    let mut out = BTreeMap::new();
    for id in script.preorder() {
        let node = script.node(id);
        if let Some(comp) = script.buds.get(id) {
            if ctx.calculus == Calculus::Lkid {
                return Err(Verdict::reject(id, "LKID proofs have no buds"));
            }
            if script.node(comp).sequent != node.sequent {
                return Err(Verdict::reject(
                    id,
                    format!("bud sequent differs from its companion `{comp}`"),
                ));
            }
            continue;
        }
        let Some(rule) = &node.rule else {
            return Err(Verdict::reject(id, "node has no rule"));
        };
        let children: Vec<&Sequent> = node
            .children
            .iter()
            .map(|c| &script.node(c).sequent)
            .collect();
        match check_step(ctx, &node.sequent, rule, &children) {
            Ok(links) => {
                out.insert(id.to_string(), links);
            }
            Err(reason) => return Err(Verdict::reject(id, reason)),
        }
    }
    Ok(out)
}

/// Accepts iff every node is a correct LKID inference, extra axioms
/// being allowed as `use` leaves.
pub fn check_lkid_proof(
    sys: &InductiveSystem,
    script: &ProofScript,
    axioms: &[(String, Formula)],
) -> Verdict {
    let ctx = Ctx {
        sys,
        axioms,
        calculus: Calculus::Lkid,
    };
    match check_local(&ctx, script) {
        Ok(_) => Verdict::accept(),
        Err(v) => v,
    }
}

/// [`check_lkid_proof`] against the script's own system and axioms.
pub fn check_lkid_script(script: &ProofScript) -> Verdict {
    check_lkid_proof(&script.system, script, &script.axioms)
}
