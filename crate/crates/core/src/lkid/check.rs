//! Local correctness of a single inference.
//!
//! Sequents are sets, so a premise may either drop or retain the principal
//! formula; children are matched against the expected premises as a
//! multiset, which makes the check independent of sibling order.

use std::collections::BTreeSet;

use super::rules::{
    atoms_of, case_distinctions, default_case_fresh, default_induction_fresh, induction_avoid,
    induction_obligations, intro_instance,
};
use crate::syntax::{Formula, InductiveSystem, Rule, Sequent, Subst, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Calculus {
    /// Finite proofs with induction rules.
    Lkid,
    /// Cyclic pre-proofs with case-split rules.
    Cyclic,
}

/// A trace step from an antecedent atom of the conclusion to one of a
/// premise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    pub from: Formula,
    pub to: Formula,
    pub progress: bool,
}

pub struct Ctx<'a> {
    pub sys: &'a InductiveSystem,
    pub axioms: &'a [(String, Formula)],
    pub calculus: Calculus,
}

type Links = Vec<Vec<Link>>;

/// Assigns each child to a distinct expected premise; `expected[i]` lists
/// the acceptable forms of premise `i`.
fn assign(expected: &[Vec<Sequent>], children: &[&Sequent]) -> Option<Vec<usize>> {
    fn go(
        k: usize,
        expected: &[Vec<Sequent>],
        children: &[&Sequent],
        used: &mut Vec<bool>,
        out: &mut Vec<usize>,
    ) -> bool {
        if k == children.len() {
            return true;
        }
        for (i, alts) in expected.iter().enumerate() {
            if !used[i] && alts.iter().any(|s| s == children[k]) {
                used[i] = true;
                out.push(i);
                if go(k + 1, expected, children, used, out) {
                    return true;
                }
                out.pop();
                used[i] = false;
            }
        }
        false
    }
    if expected.len() != children.len() {
        return None;
    }
    let mut used = vec![false; expected.len()];
    let mut out = Vec::new();
    go(0, expected, children, &mut used, &mut out).then_some(out)
}

/// `Γ ∪ ante ⊢ Δ ∪ succ`, optionally also retaining the principal formula.
fn premise(
    gamma: &BTreeSet<Formula>,
    delta: &BTreeSet<Formula>,
    ante: &[Formula],
    succ: &[Formula],
    principal: Option<(&Formula, bool)>,
) -> Vec<Sequent> {
    let base = Sequent {
        ante: gamma.iter().chain(ante).cloned().collect(),
        succ: delta.iter().chain(succ).cloned().collect(),
    };
    let mut out = vec![base.clone()];
    if let Some((p, left)) = principal {
        let mut keep = base;
        if left {
            keep.ante.insert(p.clone());
        } else {
            keep.succ.insert(p.clone());
        }
        if keep != out[0] {
            out.push(keep);
        }
    }
    out
}

fn inductive_atoms<'a>(sys: &'a InductiveSystem, s: &'a Sequent) -> impl Iterator<Item = &'a Formula> {
    s.ante.iter().filter(|f| sys.is_inductive_atom(f))
}

/// Stay links between identical antecedent atoms.
fn identity_links(sys: &InductiveSystem, concl: &Sequent, children: &[&Sequent]) -> Links {
    children
        .iter()
        .map(|c| {
            inductive_atoms(sys, concl)
                .filter(|a| c.ante.contains(*a))
                .map(|a| Link {
                    from: a.clone(),
                    to: a.clone(),
                    progress: false,
                })
                .collect()
        })
        .collect()
}

fn count_error(rule: &Rule, want: usize, got: usize) -> String {
    format!("rule `{}` expects {want} premises, found {got}", rule.name())
}

fn without(set: &BTreeSet<Formula>, f: &Formula) -> BTreeSet<Formula> {
    let mut s = set.clone();
    s.remove(f);
    s
}

fn check_fresh(ys: &[Vec<String>], avoid: &BTreeSet<String>) -> Result<(), String> {
    for vs in ys {
        let mut seen = BTreeSet::new();
        for y in vs {
            if avoid.contains(y) {
                return Err(format!("fresh variable `{y}` occurs free in the conclusion"));
            }
            if !seen.insert(y) {
                return Err(format!("fresh variable `{y}` is used twice"));
            }
        }
    }
    Ok(())
}

/// Checks one inference and returns, per child, the trace links it induces.
pub fn check_step(
    ctx: &Ctx<'_>,
    concl: &Sequent,
    rule: &Rule,
    children: &[&Sequent],
) -> Result<Links, String> {
    let sys = ctx.sys;
    let ante = &concl.ante;
    let succ = &concl.succ;
    let n = children.len();
    let want = |k: usize| -> Result<(), String> {
        if n == k {
            Ok(())
        } else {
            Err(count_error(rule, k, n))
        }
    };
    let mismatch = || format!("premises do not match rule `{}`", rule.name());

    // Rules decomposing one principal formula: try every candidate.
    let principal_rule = |left: bool,
                          shape: &dyn Fn(&Formula) -> Option<Vec<(Vec<Formula>, Vec<Formula>)>>|
     -> Result<Links, String> {
        let side = if left { ante } else { succ };
        let mut found = false;
        for p in side {
            let Some(prems) = shape(p) else { continue };
            found = true;
            if prems.len() != n {
                return Err(count_error(rule, prems.len(), n));
            }
            let (g, d) = if left {
                (without(ante, p), succ.clone())
            } else {
                (ante.clone(), without(succ, p))
            };
            let expected: Vec<Vec<Sequent>> = prems
                .iter()
                .map(|(a, s)| premise(&g, &d, a, s, Some((p, left))))
                .collect();
            if assign(&expected, children).is_some() {
                return Ok(identity_links(sys, concl, children));
            }
        }
        if found {
            Err(mismatch())
        } else {
            Err(format!(
                "no principal formula for rule `{}` in the {}",
                rule.name(),
                if left { "antecedent" } else { "succedent" }
            ))
        }
    };

    match rule {
        Rule::Axiom => {
            want(0)?;
            if ante.intersection(succ).next().is_none() {
                return Err("Axiom requires Γ ∩ Δ ≠ ∅".into());
            }
            Ok(vec![])
        }
        Rule::Wk => {
            want(1)?;
            if !children[0].is_weakening_of(concl) {
                return Err("premise is not a weakening of the conclusion".into());
            }
            Ok(identity_links(sys, concl, children))
        }
        Rule::Cut(f) => {
            want(2)?;
            let expected = vec![
                premise(ante, succ, &[], std::slice::from_ref(f), None),
                premise(ante, succ, std::slice::from_ref(f), &[], None),
            ];
            assign(&expected, children).ok_or_else(mismatch)?;
            Ok(identity_links(sys, concl, children))
        }
        Rule::Subst(theta) => {
            want(1)?;
            let child = children[0];
            if child.subst(theta) != *concl {
                return Err("conclusion is not the premise under the substitution".into());
            }
            Ok(vec![inductive_atoms(sys, child)
                .map(|b| Link {
                    from: b.subst(theta),
                    to: b.clone(),
                    progress: false,
                })
                .collect()])
        }
        Rule::NotL => principal_rule(true, &|p| match p {
            Formula::Not(f) => Some(vec![(vec![], vec![(**f).clone()])]),
            _ => None,
        }),
        Rule::NotR => principal_rule(false, &|p| match p {
            Formula::Not(f) => Some(vec![(vec![(**f).clone()], vec![])]),
            _ => None,
        }),
        Rule::OrL => principal_rule(true, &|p| match p {
            Formula::Or(f, g) => Some(vec![
                (vec![(**f).clone()], vec![]),
                (vec![(**g).clone()], vec![]),
            ]),
            _ => None,
        }),
        Rule::OrR => principal_rule(false, &|p| match p {
            Formula::Or(f, g) => Some(vec![(vec![], vec![(**f).clone(), (**g).clone()])]),
            _ => None,
        }),
        Rule::AndL => principal_rule(true, &|p| match p {
            Formula::And(f, g) => Some(vec![(vec![(**f).clone(), (**g).clone()], vec![])]),
            _ => None,
        }),
        Rule::AndR => principal_rule(false, &|p| match p {
            Formula::And(f, g) => Some(vec![
                (vec![], vec![(**f).clone()]),
                (vec![], vec![(**g).clone()]),
            ]),
            _ => None,
        }),
        Rule::ImpL => principal_rule(true, &|p| match p {
            Formula::Imp(f, g) => Some(vec![
                (vec![], vec![(**f).clone()]),
                (vec![(**g).clone()], vec![]),
            ]),
            _ => None,
        }),
        Rule::ImpR => principal_rule(false, &|p| match p {
            Formula::Imp(f, g) => Some(vec![(vec![(**f).clone()], vec![(**g).clone()])]),
            _ => None,
        }),
        Rule::ExR(t) => principal_rule(false, &|p| match p {
            Formula::Exists(x, f) => Some(vec![(vec![], vec![f.subst1(x, t)])]),
            _ => None,
        }),
        Rule::AllL(t) => principal_rule(true, &|p| match p {
            Formula::Forall(x, f) => Some(vec![(vec![f.subst1(x, t)], vec![])]),
            _ => None,
        }),
        Rule::ExL(eigen) | Rule::AllR(eigen) => {
            want(1)?;
            let left = matches!(rule, Rule::ExL(_));
            let fv = concl.free_vars();
            let side = if left { ante } else { succ };
            let mut found = false;
            for p in side {
                let (x, f) = match (left, p) {
                    (true, Formula::Exists(x, f)) | (false, Formula::Forall(x, f)) => (x, f),
                    _ => continue,
                };
                found = true;
                let y = eigen.clone().unwrap_or_else(|| x.clone());
                let body = f.subst1(x, &Term::var(&y));
                let expected = vec![if left {
                    premise(&without(ante, p), succ, &[body], &[], Some((p, true)))
                } else {
                    premise(ante, &without(succ, p), &[], &[body], Some((p, false)))
                }];
                if assign(&expected, children).is_some() {
                    if fv.contains(&y) {
                        return Err(format!("eigenvariable `{y}` occurs free in the conclusion"));
                    }
                    return Ok(identity_links(sys, concl, children));
                }
            }
            Err(if found {
                mismatch()
            } else {
                format!("no principal formula for rule `{}`", rule.name())
            })
        }
        Rule::EqL { x, y, template } => {
            want(1)?;
            if x == y {
                return Err("rule `eq-l` needs two distinct template variables".into());
            }
            let mut found = false;
            for eq in ante {
                let Formula::Eq(t, u) = eq else { continue };
                found = true;
                let theta_c: Subst = [(x.clone(), t.clone()), (y.clone(), u.clone())].into();
                let theta_p: Subst = [(x.clone(), u.clone()), (y.clone(), t.clone())].into();
                let expect_c = template.subst(&theta_c).with_ante(eq.clone());
                if expect_c != *concl || template.subst(&theta_p) != *children[0] {
                    continue;
                }
                return Ok(vec![inductive_atoms(sys, template)
                    .map(|a| Link {
                        from: a.subst(&theta_c),
                        to: a.subst(&theta_p),
                        progress: false,
                    })
                    .collect()]);
            }
            Err(if found {
                "conclusion and premise are not instances of the template".into()
            } else {
                "no equality in the antecedent".into()
            })
        }
        Rule::EqR => {
            want(0)?;
            if succ.iter().any(|f| matches!(f, Formula::Eq(a, b) if a == b)) {
                Ok(vec![])
            } else {
                Err("no formula t = t in the succedent".into())
            }
        }
        Rule::Intro { pred, index, args } => {
            let (atom, prems) = intro_instance(sys, pred, *index, args)?;
            want(prems.len())?;
            if !succ.contains(&atom) {
                return Err(format!("succedent does not contain {atom}"));
            }
            let d = without(succ, &atom);
            let expected: Vec<Vec<Sequent>> = prems
                .iter()
                .map(|q| premise(ante, &d, &[], std::slice::from_ref(q), Some((&atom, false))))
                .collect();
            assign(&expected, children).ok_or_else(mismatch)?;
            Ok(identity_links(sys, concl, children))
        }
        Rule::Ind { ann, fresh } => {
            if ctx.calculus == Calculus::Cyclic {
                return Err("induction rule is not part of CLKID^ω".into());
            }
            let candidates = atoms_of(ante, &ann.target);
            if candidates.is_empty() {
                return Err(format!("no `{}` atom in the antecedent", ann.target));
            }
            let avoid = induction_avoid(ann, concl);
            let mut last = mismatch();
            for (p, u) in candidates {
                let ys = fresh
                    .clone()
                    .unwrap_or_else(|| default_induction_fresh(sys, ann, u, &avoid));
                check_fresh(&ys, &avoid)?;
                for gamma in [without(ante, p), ante.clone()] {
                    let (minors, major) = induction_obligations(sys, ann, &gamma, succ, u, &ys)?;
                    if minors.len() + 1 != n {
                        return Err(count_error(rule, minors.len() + 1, n));
                    }
                    let expected: Vec<Vec<Sequent>> =
                        minors.into_iter().chain([major]).map(|s| vec![s]).collect();
                    if assign(&expected, children).is_some() {
                        return Ok(identity_links(sys, concl, children));
                    }
                    last = mismatch();
                }
            }
            Err(last)
        }
        Rule::Case { pred, fresh } => {
            if ctx.calculus == Calculus::Lkid {
                return Err("case-split rule is not part of LKID".into());
            }
            if !sys.is_inductive(pred) {
                return Err(format!("`{pred}` is not an inductive predicate"));
            }
            let candidates = atoms_of(ante, pred);
            if candidates.is_empty() {
                return Err(format!("no `{pred}` atom in the antecedent"));
            }
            let avoid = concl.free_vars();
            for (p, u) in candidates {
                let ys = fresh
                    .clone()
                    .unwrap_or_else(|| default_case_fresh(sys, pred, u, &avoid));
                check_fresh(&ys, &avoid)?;
                let branches = case_distinctions(sys, pred, u, &ys)?;
                if branches.len() != n {
                    return Err(format!(
                        "expected {} case premises, found {n}",
                        branches.len()
                    ));
                }
                let gamma = without(ante, p);
                let expected: Vec<Vec<Sequent>> = branches
                    .iter()
                    .map(|b| premise(&gamma, succ, &b.extra, &[], Some((p, true))))
                    .collect();
                if let Some(which) = assign(&expected, children) {
                    let mut links = identity_links(sys, concl, children);
                    for (k, b) in which.into_iter().enumerate() {
                        for d in &branches[b].descendants {
                            links[k].push(Link {
                                from: p.clone(),
                                to: d.clone(),
                                progress: true,
                            });
                        }
                    }
                    return Ok(links);
                }
            }
            Err(mismatch())
        }
        Rule::Use(name) => {
            want(0)?;
            let ax = ctx
                .axioms
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, f)| f)
                .ok_or_else(|| format!("unknown axiom `{name}`"))?;
            if succ.contains(ax) {
                Ok(vec![])
            } else {
                Err(format!("succedent does not contain axiom `{name}`"))
            }
        }
    }
}
