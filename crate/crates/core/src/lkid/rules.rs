//! Premise generators shared by the checkers and the proof builder.

use std::collections::BTreeSet;

use crate::syntax::proof::InductionAnnotation;
use crate::syntax::{fresh_name, Formula, InductiveSystem, Production, Sequent, Subst, Term};

/// Strongly connected components of the premise relation, each sorted,
/// listed in order of their least member.
pub fn mutual_dependency(sys: &InductiveSystem) -> Vec<BTreeSet<String>> {
    let preds: Vec<String> = sys
        .signature
        .inductive_preds()
        .map(str::to_string)
        .collect();
    let mut comps: Vec<BTreeSet<String>> = Vec::new();
    for p in &preds {
        if comps.iter().any(|c| c.contains(p)) {
            continue;
        }
        let comp: BTreeSet<String> = preds
            .iter()
            .filter(|q| *q == p || (reaches(sys, p, q) && reaches(sys, q, p)))
            .cloned()
            .collect();
        comps.push(comp);
    }
    comps
}

/// Whether a non-empty chain of the premise relation leads from `from`
/// to `to`.
fn reaches(sys: &InductiveSystem, from: &str, to: &str) -> bool {
    let mut seen = BTreeSet::new();
    let mut stack = vec![from.to_string()];
    while let Some(p) = stack.pop() {
        for prod in sys.productions_for(&p) {
            for (q, _) in &prod.inductive {
                if q == to {
                    return true;
                }
                if seen.insert(q.clone()) {
                    stack.push(q.clone());
                }
            }
        }
    }
    false
}

pub fn mutually_dependent(sys: &InductiveSystem, a: &str, b: &str) -> bool {
    a == b || (reaches(sys, a, b) && reaches(sys, b, a))
}

/// Renaming of production variables to the given fresh names.
fn renaming(prod: &Production, fresh: &[String]) -> Result<Subst, String> {
    let vars = prod.vars();
    if vars.len() != fresh.len() {
        return Err(format!(
            "production for `{}` has {} variables but {} fresh names were given",
            prod.pred(),
            vars.len(),
            fresh.len()
        ));
    }
    Ok(vars
        .into_iter()
        .zip(fresh.iter().map(|y| Term::var(y)))
        .collect())
}

fn atom(name: &str, args: &[Term], s: &Subst) -> Formula {
    Formula::Pred(name.to_string(), args.iter().map(|t| t.subst(s)).collect())
}

/// `F[t⃗/z⃗]`.
fn instantiate(vars: &[String], f: &Formula, args: &[Term]) -> Result<Formula, String> {
    if vars.len() != args.len() {
        return Err(format!(
            "hypothesis over {} variables applied to {} terms",
            vars.len(),
            args.len()
        ));
    }
    let s: Subst = vars.iter().cloned().zip(args.iter().cloned()).collect();
    Ok(f.subst(&s))
}

/// Default fresh names for a production matched against the principal
/// arguments `u`: a variable in conclusion position `k` borrows the name
/// of `u_k` when that is a variable, and is then primed until fresh.
pub fn default_fresh(prod: &Production, u: &[Term], avoid: &BTreeSet<String>) -> Vec<String> {
    let mut avoid = avoid.clone();
    let mut out = Vec::new();
    for v in prod.vars() {
        let base = prod
            .conclusion
            .1
            .iter()
            .zip(u)
            .find(|(t, uk)| t.vars().contains(&v) && uk.is_var())
            .and_then(|(_, uk)| match uk {
                Term::Var(w) => Some(w.clone()),
                _ => None,
            })
            .unwrap_or_else(|| v.clone());
        let y = fresh_name(&base, &avoid);
        avoid.insert(y.clone());
        out.push(y);
    }
    out
}

/// Productions covered by the minor premises of an induction on `target`.
pub fn minor_productions<'a>(sys: &'a InductiveSystem, target: &str) -> Vec<&'a Production> {
    sys.productions
        .iter()
        .filter(|p| mutually_dependent(sys, p.pred(), target))
        .collect()
}

/// Variables an induction's fresh names must avoid.
pub fn induction_avoid(ann: &InductionAnnotation, concl: &Sequent) -> BTreeSet<String> {
    let mut avoid = concl.free_vars();
    for h in &ann.hyps {
        avoid.extend(h.formula.free_vars());
        avoid.extend(h.vars.iter().cloned());
    }
    avoid
}

pub fn default_induction_fresh(
    sys: &InductiveSystem,
    ann: &InductionAnnotation,
    u: &[Term],
    avoid: &BTreeSet<String>,
) -> Vec<Vec<String>> {
    minor_productions(sys, &ann.target)
        .into_iter()
        .map(|p| {
            let uk: &[Term] = if p.pred() == ann.target { u } else { &[] };
            default_fresh(p, uk, avoid)
        })
        .collect()
}

/// Minor premises and major premise of `(Ind P_j)` on `Γ, P_j u⃗ ⊢ Δ`.
pub fn induction_obligations(
    sys: &InductiveSystem,
    ann: &InductionAnnotation,
    gamma: &BTreeSet<Formula>,
    delta: &BTreeSet<Formula>,
    u: &[Term],
    fresh: &[Vec<String>],
) -> Result<(Vec<Sequent>, Sequent), String> {
    let target = &ann.target;
    let decl = sys
        .signature
        .get(target)
        .filter(|d| d.inductive)
        .ok_or_else(|| format!("`{target}` is not an inductive predicate"))?;
    if decl.arity != u.len() {
        return Err(format!(
            "`{target}` has arity {} but is applied to {} terms",
            decl.arity,
            u.len()
        ));
    }
    for h in &ann.hyps {
        let distinct: BTreeSet<&String> = h.vars.iter().collect();
        if distinct.len() != h.vars.len() {
            return Err(format!("induction variables for `{}` are not distinct", h.pred));
        }
    }
    let hyp = |p: &str| {
        ann.hyp(p)
            .ok_or_else(|| format!("no induction hypothesis for `{p}`"))
    };
    let prods = minor_productions(sys, target);
    if prods.len() != fresh.len() {
        return Err(format!(
            "induction on `{target}` has {} minor premises but {} fresh lists were given",
            prods.len(),
            fresh.len()
        ));
    }
    let mut minors = Vec::new();
    for (prod, ys) in prods.into_iter().zip(fresh) {
        let s = renaming(prod, ys)?;
        let mut ante = gamma.clone();
        for (q, args) in &prod.ordinary {
            ante.insert(atom(q, args, &s));
        }
        for (q, args) in &prod.inductive {
            let args: Vec<Term> = args.iter().map(|t| t.subst(&s)).collect();
            if mutually_dependent(sys, q, target) {
                let h = hyp(q)?;
                ante.insert(instantiate(&h.vars, &h.formula, &args)?);
            } else {
                ante.insert(Formula::Pred(q.clone(), args));
            }
        }
        let h = hyp(prod.pred())?;
        let concl: Vec<Term> = prod.conclusion.1.iter().map(|t| t.subst(&s)).collect();
        let mut succ = delta.clone();
        succ.insert(instantiate(&h.vars, &h.formula, &concl)?);
        minors.push(Sequent { ante, succ });
    }
    let h = hyp(target)?;
    let mut major_ante = gamma.clone();
    major_ante.insert(instantiate(&h.vars, &h.formula, u)?);
    Ok((
        minors,
        Sequent {
            ante: major_ante,
            succ: delta.clone(),
        },
    ))
}

/// One case distinction: the formulas added to `Γ` and which of them are
/// case-descendants of the principal formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseBranch {
    pub extra: Vec<Formula>,
    pub descendants: Vec<Formula>,
}

/// Case distinctions of `(Case P)` on principal arguments `u⃗`, one per
/// production of `P`.
pub fn case_distinctions(
    sys: &InductiveSystem,
    pred: &str,
    u: &[Term],
    fresh: &[Vec<String>],
) -> Result<Vec<CaseBranch>, String> {
    let prods: Vec<&Production> = sys.productions_for(pred).collect();
    if prods.len() != fresh.len() {
        return Err(format!(
            "`{pred}` has {} productions but {} fresh lists were given",
            prods.len(),
            fresh.len()
        ));
    }
    let mut out = Vec::new();
    for (prod, ys) in prods.into_iter().zip(fresh) {
        let s = renaming(prod, ys)?;
        if prod.conclusion.1.len() != u.len() {
            return Err(format!("`{pred}` applied to {} terms", u.len()));
        }
        let mut extra: Vec<Formula> = prod
            .conclusion
            .1
            .iter()
            .zip(u)
            .map(|(t, uk)| Formula::Eq(uk.clone(), t.subst(&s)))
            .collect();
        for (q, args) in &prod.ordinary {
            extra.push(atom(q, args, &s));
        }
        let descendants: Vec<Formula> = prod
            .inductive
            .iter()
            .map(|(q, args)| atom(q, args, &s))
            .collect();
        extra.extend(descendants.iter().cloned());
        out.push(CaseBranch { extra, descendants });
    }
    Ok(out)
}

pub fn default_case_fresh(
    sys: &InductiveSystem,
    pred: &str,
    u: &[Term],
    avoid: &BTreeSet<String>,
) -> Vec<Vec<String>> {
    sys.productions_for(pred)
        .map(|p| default_fresh(p, u, avoid))
        .collect()
}

/// Conclusion atom and premise atoms of the right-introduction rule for
/// the `index`-th production of `pred`, with its variables set to `args`.
pub fn intro_instance(
    sys: &InductiveSystem,
    pred: &str,
    index: usize,
    args: &[Term],
) -> Result<(Formula, Vec<Formula>), String> {
    let prod = sys
        .productions_for(pred)
        .nth(index)
        .ok_or_else(|| format!("`{pred}` has no production number {index}"))?;
    let vars = prod.vars();
    if vars.len() != args.len() {
        return Err(format!(
            "production {index} of `{pred}` has {} variables but {} terms were given",
            vars.len(),
            args.len()
        ));
    }
    let s: Subst = vars.into_iter().zip(args.iter().cloned()).collect();
    let concl = atom(pred, &prod.conclusion.1, &s);
    let prems = prod
        .ordinary
        .iter()
        .chain(&prod.inductive)
        .map(|(q, a)| atom(q, a, &s))
        .collect();
    Ok((concl, prems))
}

/// The induction-schema axiom for `ann`: the universal closures of the
/// minor premises imply `∀z⃗. (P_j z⃗ → F_j z⃗)`.
pub fn induction_schema_instance(
    sys: &InductiveSystem,
    ann: &InductionAnnotation,
) -> Result<Formula, String> {
    let h = ann
        .hyp(&ann.target)
        .ok_or_else(|| format!("no induction hypothesis for `{}`", ann.target))?;
    let mut avoid = BTreeSet::new();
    for h in &ann.hyps {
        let zs: BTreeSet<String> = h.vars.iter().cloned().collect();
        avoid.extend(h.formula.free_vars().difference(&zs).cloned());
    }
    let fresh: Vec<Vec<String>> = minor_productions(sys, &ann.target)
        .into_iter()
        .map(|p| {
            let mut local = avoid.clone();
            p.vars()
                .into_iter()
                .map(|v| {
                    let y = fresh_name(&v, &local);
                    local.insert(y.clone());
                    y
                })
                .collect()
        })
        .collect();
    let zs: Vec<Term> = h.vars.iter().map(|z| Term::var(z)).collect();
    let (minors, _) =
        induction_obligations(sys, ann, &BTreeSet::new(), &BTreeSet::new(), &zs, &fresh)?;
    let closures = minors.iter().zip(&fresh).map(|(m, ys)| {
        let body = if m.ante.is_empty() {
            Formula::disj(m.succ.iter().cloned())
        } else {
            Formula::imp(
                Formula::conj(m.ante.iter().cloned()),
                Formula::disj(m.succ.iter().cloned()),
            )
        };
        ys.iter()
            .rev()
            .fold(body, |acc, y| Formula::forall(y, acc))
    });
    let target = Formula::Pred(ann.target.clone(), zs);
    let conclusion = h.vars.iter().rev().fold(
        Formula::imp(target, h.formula.clone()),
        |acc, z| Formula::forall(z, acc),
    );
    Ok(Formula::imp(Formula::conj(closures), conclusion))
}

/// All ways to read `f` as an instance of `P(u⃗)` among `atoms`.
pub fn atoms_of<'a>(atoms: &'a BTreeSet<Formula>, pred: &str) -> Vec<(&'a Formula, &'a [Term])> {
    atoms
        .iter()
        .filter_map(|f| match f {
            Formula::Pred(p, args) if p == pred => Some((f, args.as_slice())),
            _ => None,
        })
        .collect()
}
