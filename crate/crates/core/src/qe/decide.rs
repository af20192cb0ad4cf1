use num_rational::BigRational;
use serde::Serialize;

use super::eliminate::{eliminate_constants, eliminate_quantifiers_traced, eval_ground, Step};
use super::{translate, QeError, RelEnv};
use crate::bijections::{is_dyadic, RaySet};
use crate::par::{self, Mode};
use crate::syntax::{Formula, Term};

/// Translation, quantifier elimination and constant elimination.
pub fn qe_formula(f: &Formula) -> Result<Formula, QeError> {
    let mut env = RelEnv::new();
    let g = translate(f)?;
    let g = eliminate_quantifiers_traced(&mut env, &g, &mut Vec::new())?;
    eliminate_constants(&mut env, &g)
}

#[derive(Clone, Debug, Serialize)]
pub struct Decision {
    pub value: bool,
    pub steps: Vec<Step>,
}

pub fn decide_traced(f: &Formula) -> Result<Decision, QeError> {
    let fv = f.free_vars();
    if !fv.is_empty() {
        return Err(QeError::NotClosed(fv.into_iter().collect()));
    }
    let mut env = RelEnv::new();
    let mut steps = Vec::new();
    let g = translate(f)?;
    let g = eliminate_quantifiers_traced(&mut env, &g, &mut steps)?;
    let value = eval_ground(&mut env, &g)?;
    Ok(Decision { value, steps })
}

/// Truth of a closed formula in 𝕄.
pub fn decide_sentence(f: &Formula) -> Result<bool, QeError> {
    decide_traced(f).map(|d| d.value)
}

pub fn decide_batch(fs: &[Formula], mode: Mode) -> Vec<Result<bool, QeError>> {
    par::map_with(mode, fs, decide_sentence)
}

/// The set defined by a quantifier-free formula whose atoms all relate
/// `x` to itself.
pub fn diagonal_set(env: &mut RelEnv, f: &Formula, x: &str) -> Result<RaySet, QeError> {
    let bad = || QeError::FreeVariable(x.to_string());
    let is_x = |t: &Term| matches!(t, Term::Var(v) if v == x);
    Ok(match f {
        Formula::True => RaySet::universe(),
        Formula::False => RaySet::empty(),
        Formula::Rel(r, a, b) if is_x(a) && is_x(b) => env.get(r)?.diagonal(),
        Formula::Rel(..) | Formula::Eq(..) | Formula::Pred(..) => return Err(bad()),
        Formula::Not(g) => diagonal_set(env, g, x)?.complement(),
        Formula::And(a, b) => diagonal_set(env, a, x)?.intersect(&diagonal_set(env, b, x)?),
        Formula::Or(a, b) => diagonal_set(env, a, x)?.union(&diagonal_set(env, b, x)?),
        Formula::Imp(a, b) => diagonal_set(env, a, x)?
            .complement()
            .union(&diagonal_set(env, b, x)?),
        Formula::Exists(..) | Formula::Forall(..) => return Err(QeError::NotQuantifierFree),
    })
}

/// `{e ∈ 𝕄 | 𝕄 ⊨ f[e/x]}` for `f` with no free variable but `x`.
pub fn definable_set(f: &Formula, x: &str) -> Result<RaySet, QeError> {
    if f.free_vars().iter().any(|v| v != x) {
        return Err(QeError::FreeVariable(x.to_string()));
    }
    let mut env = RelEnv::new();
    let g = translate(f)?;
    let g = eliminate_quantifiers_traced(&mut env, &g, &mut Vec::new())?;
    let g = eliminate_constants(&mut env, &g)?;
    diagonal_set(&mut env, &g, x)
}

#[derive(Clone, Debug, Serialize)]
pub struct SchemaReport {
    pub set: RaySet,
    pub measure: BigRational,
    pub dyadic: bool,
    /// `F(0) ∧ ∀x (N x → F(x) → F(s x)) → ∀x (N x → F(x))` holds in 𝕄.
    pub schema_holds: bool,
}

impl SchemaReport {
    /// A dyadic measure forces the schema instance to hold.
    pub fn is_consistent(&self) -> bool {
        !self.dyadic || self.schema_holds
    }
}

pub fn check_induction_schema(f: &Formula, x: &str) -> Result<SchemaReport, QeError> {
    let set = definable_set(f, x)?;
    let measure = set.measure();
    let xv = Term::var(x);
    let step = Formula::forall(
        x,
        Formula::imp(
            Formula::n(xv.clone()),
            Formula::imp(f.clone(), f.subst1(x, &Term::succ(xv.clone()))),
        ),
    );
    let schema = Formula::imp(
        Formula::and(f.subst1(x, &Term::Zero), step),
        Formula::forall(x, Formula::imp(Formula::n(xv), f.clone())),
    );
    Ok(SchemaReport {
        dyadic: is_dyadic(&measure),
        measure,
        schema_holds: decide_sentence(&schema)?,
        set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hydra::{hydra_axioms, hydra_formula};
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn hydra_hypotheses_hold_but_hydra_fails() {
        for (name, h) in hydra_axioms() {
            assert!(decide_sentence(&h).unwrap(), "{name}");
        }
        assert!(!decide_sentence(&hydra_formula()).unwrap());
    }

    #[test]
    fn ground_facts() {
        assert!(decide_sentence(&f("(p (s 0) (s (s (s (s 0)))))")).unwrap());
        assert!(!decide_sentence(&f("(p (elemN 0) (elemZ 0))")).unwrap());
        assert!(decide_sentence(&f("(ex x (= x x))")).unwrap());
        assert!(decide_sentence(&f("(all x (ex y (= y (s x))))")).unwrap());
        assert!(!decide_sentence(&f("(all x (ex y (= x (s y))))")).unwrap());
    }

    #[test]
    fn definable_sets() {
        assert_eq!(definable_set(&f("(N x)"), "x").unwrap(), RaySet::universe());
        assert_eq!(definable_set(&f("(p x x)"), "x").unwrap(), RaySet::universe());
        assert_eq!(
            definable_set(&f("(or (= x 0) (ex y (= x (s y))))"), "x").unwrap(),
            RaySet::universe()
        );
        let r = check_induction_schema(&f("(p x x)"), "x").unwrap();
        assert!(r.dyadic && r.schema_holds);
    }
}
