use serde::Serialize;

use super::{QeError, RelEnv};
use crate::bijections::RaySet;
use crate::model::MElement;
use crate::syntax::{Formula, Term};

/// A possibly negated relation atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Literal {
    pub positive: bool,
    pub rel: String,
    pub a: Term,
    pub b: Term,
}

impl Literal {
    pub fn new(positive: bool, rel: &str, a: Term, b: Term) -> Literal {
        Literal {
            positive,
            rel: rel.to_string(),
            a,
            b,
        }
    }

    pub fn to_formula(&self) -> Formula {
        let atom = Formula::rel(&self.rel, self.a.clone(), self.b.clone());
        if self.positive {
            atom
        } else {
            Formula::not(atom)
        }
    }

    fn mentions(&self, x: &str) -> bool {
        is_var(&self.a, x) || is_var(&self.b, x)
    }

    fn negated(&self) -> Literal {
        Literal {
            positive: !self.positive,
            ..self.clone()
        }
    }
}

fn is_var(t: &Term, x: &str) -> bool {
    matches!(t, Term::Var(v) if v == x)
}

pub fn and_s(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (Formula::False, _) | (_, Formula::False) => Formula::False,
        (Formula::True, f) | (f, Formula::True) => f,
        (a, b) => Formula::and(a, b),
    }
}

pub fn or_s(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (Formula::True, _) | (_, Formula::True) => Formula::True,
        (Formula::False, f) | (f, Formula::False) => f,
        (a, b) => Formula::or(a, b),
    }
}

pub fn not_s(a: Formula) -> Formula {
    match a {
        Formula::True => Formula::False,
        Formula::False => Formula::True,
        Formula::Not(f) => *f,
        f => Formula::not(f),
    }
}

/// Right-nested conjunction with truth constants folded.
pub fn conj_s(fs: impl IntoIterator<Item = Formula>) -> Formula {
    let v: Vec<Formula> = fs.into_iter().collect();
    v.into_iter().rev().fold(None, |acc, f| match acc {
        None => Some(and_s(f, Formula::True)),
        Some(acc) => Some(and_s(f, acc)),
    })
    .unwrap_or(Formula::True)
}

pub fn disj_s(fs: impl IntoIterator<Item = Formula>) -> Formula {
    let v: Vec<Formula> = fs.into_iter().collect();
    v.into_iter().rev().fold(None, |acc, f| match acc {
        None => Some(or_s(f, Formula::False)),
        Some(acc) => Some(or_s(f, acc)),
    })
    .unwrap_or(Formula::False)
}

fn literals_formula(lits: &[Literal]) -> Formula {
    conj_s(lits.iter().map(Literal::to_formula))
}

fn push_unique(out: &mut Vec<Literal>, l: Literal) {
    if !out.contains(&l) {
        out.push(l);
    }
}

/// Disjunctive normal form of a quantifier-free formula (of its negation
/// when `!pos`). Literal order follows the formula; duplicate literals are
/// merged and contradictory conjunctions dropped.
pub fn dnf(f: &Formula, pos: bool) -> Result<Vec<Vec<Literal>>, QeError> {
    let product = |a: Vec<Vec<Literal>>, b: Vec<Vec<Literal>>| {
        let mut out = Vec::new();
        for x in &a {
            'pair: for y in &b {
                let mut c = x.clone();
                for l in y {
                    if c.contains(&l.negated()) {
                        continue 'pair;
                    }
                    push_unique(&mut c, l.clone());
                }
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
        out
    };
    let union = |mut a: Vec<Vec<Literal>>, b: Vec<Vec<Literal>>| {
        for c in b {
            if !a.contains(&c) {
                a.push(c);
            }
        }
        a
    };
    Ok(match f {
        Formula::True => {
            if pos {
                vec![vec![]]
            } else {
                vec![]
            }
        }
        Formula::False => {
            if pos {
                vec![]
            } else {
                vec![vec![]]
            }
        }
        Formula::Rel(r, a, b) => vec![vec![Literal::new(pos, r, a.clone(), b.clone())]],
        Formula::Eq(a, b) => vec![vec![Literal::new(pos, "id", a.clone(), b.clone())]],
        Formula::Not(g) => dnf(g, !pos)?,
        Formula::And(a, b) if pos => product(dnf(a, true)?, dnf(b, true)?),
        Formula::And(a, b) => union(dnf(a, false)?, dnf(b, false)?),
        Formula::Or(a, b) if pos => union(dnf(a, true)?, dnf(b, true)?),
        Formula::Or(a, b) => product(dnf(a, false)?, dnf(b, false)?),
        Formula::Imp(a, b) if pos => union(dnf(a, false)?, dnf(b, true)?),
        Formula::Imp(a, b) => product(dnf(a, true)?, dnf(b, false)?),
        Formula::Pred(n, _) => return Err(QeError::Uninterpreted(n.clone())),
        Formula::Exists(..) | Formula::Forall(..) => return Err(QeError::NotQuantifierFree),
    })
}

fn element(t: &Term) -> Option<&MElement> {
    match t {
        Term::Elem(e) => Some(e),
        _ => None,
    }
}

/// Removes model constants from one literal: ground atoms are evaluated,
/// and `R(u, x)` becomes `id_{R(u)}(x, x)` (false when `R(u)` is
/// undefined), symmetrically for `R(x, u)`. `id(x, x)` is true.
pub fn eliminate_constants_literal(env: &mut RelEnv, l: &Literal) -> Result<Formula, QeError> {
    let sign = |f: Formula| if l.positive { f } else { not_s(f) };
    let truth = |b: bool| if b { Formula::True } else { Formula::False };
    match (element(&l.a), element(&l.b)) {
        (Some(u), Some(v)) => Ok(sign(truth(env.holds(&l.rel, u, v)?))),
        (Some(u), None) | (None, Some(u)) => {
            let x = if element(&l.a).is_some() { &l.b } else { &l.a };
            let r = env.get(&l.rel)?;
            let image = if element(&l.a).is_some() {
                r.apply(u)
            } else {
                r.inverse().apply(u)
            };
            Ok(sign(match image {
                Some(w) => Formula::rel(&RelEnv::id_of(&w), x.clone(), x.clone()),
                None => Formula::False,
            }))
        }
        (None, None) if l.rel == "id" && l.a == l.b => Ok(sign(Formula::True)),
        (None, None) => Ok(l.to_formula()),
    }
}

pub fn eliminate_constants(env: &mut RelEnv, f: &Formula) -> Result<Formula, QeError> {
    Ok(match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Rel(r, a, b) => {
            eliminate_constants_literal(env, &Literal::new(true, r, a.clone(), b.clone()))?
        }
        Formula::Eq(a, b) => {
            eliminate_constants_literal(env, &Literal::new(true, "id", a.clone(), b.clone()))?
        }
        Formula::Not(g) => not_s(eliminate_constants(env, g)?),
        Formula::And(a, b) => and_s(eliminate_constants(env, a)?, eliminate_constants(env, b)?),
        Formula::Or(a, b) => or_s(eliminate_constants(env, a)?, eliminate_constants(env, b)?),
        Formula::Imp(a, b) => or_s(
            not_s(eliminate_constants(env, a)?),
            eliminate_constants(env, b)?,
        ),
        Formula::Pred(n, _) => return Err(QeError::Uninterpreted(n.clone())),
        Formula::Exists(..) | Formula::Forall(..) => return Err(QeError::NotQuantifierFree),
    })
}

/// How one conjunction lost its quantifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum Elimination {
    /// The variable does not occur.
    Vacuous,
    /// A positive `R₁(xᵢ, x)` determines `x`; other literals are rewritten
    /// through `R₁`.
    Relational { via: String },
    /// The admissible values form the finite set of `values` elements.
    Finite { values: usize },
    /// Infinitely many admissible values; the literals on `x` are dropped.
    Cofinite,
}

/// `∃x (lits)` for a conjunction of literals, as a quantifier-free formula.
/// Literals not mentioning `x` are kept first, in order.
pub fn eliminate_one(
    env: &mut RelEnv,
    x: &str,
    lits: &[Literal],
) -> Result<(Formula, Elimination), QeError> {
    let xv = Term::var(x);
    // Constants out, then orient so that `x` is the second argument.
    let mut rest = Vec::new();
    let mut on_x = Vec::new();
    for l in lits {
        let l = if l.mentions(x) && (element(&l.a).is_some() || element(&l.b).is_some()) {
            match eliminate_constants_literal(env, l)? {
                Formula::True => continue,
                Formula::False => return Ok((Formula::False, Elimination::Vacuous)),
                Formula::Rel(r, a, b) => Literal::new(true, &r, a, b),
                Formula::Not(g) => match *g {
                    Formula::Rel(r, a, b) => Literal::new(false, &r, a, b),
                    _ => unreachable!("constant elimination yields literals"),
                },
                _ => unreachable!("constant elimination yields literals"),
            }
        } else {
            l.clone()
        };
        if !l.mentions(x) {
            push_unique(&mut rest, l);
        } else if is_var(&l.a, x) && !is_var(&l.b, x) {
            push_unique(
                &mut on_x,
                Literal::new(l.positive, &RelEnv::inverse_name(&l.rel), l.b, l.a),
            );
        } else {
            push_unique(&mut on_x, l);
        }
    }
    for l in &on_x {
        assert!(is_var(&l.b, x), "literal {} is not oriented", l.to_formula());
    }
    let kept = literals_formula(&rest);
    if on_x.is_empty() {
        return Ok((kept, Elimination::Vacuous));
    }

    // Case 1: some positive R₁(xᵢ, x) with xᵢ ≠ x.
    if let Some(k) = on_x.iter().position(|l| l.positive && !is_var(&l.a, x)) {
        let r1 = on_x[k].rel.clone();
        let xi = on_x[k].a.clone();
        let r1_inv = RelEnv::inverse_name(&r1);
        let mut out = vec![Literal::new(
            true,
            &RelEnv::compose_name(&r1_inv, &r1),
            xi.clone(),
            xi.clone(),
        )];
        for (j, l) in on_x.iter().enumerate() {
            if j == k {
                continue;
            }
            let lit = if is_var(&l.a, x) {
                let w = RelEnv::compose_name(&RelEnv::compose_name(&r1_inv, &l.rel), &r1);
                Literal::new(l.positive, &w, xi.clone(), xi.clone())
            } else {
                let w = RelEnv::compose_name(&r1_inv, &l.rel);
                Literal::new(l.positive, &w, l.a.clone(), xi.clone())
            };
            push_unique(&mut out, lit);
        }
        let mut all = rest;
        for l in out {
            push_unique(&mut all, l);
        }
        return Ok((literals_formula(&all), Elimination::Relational { via: r1 }));
    }

    // Case 2: only diagonal positives.
    let mut values = RaySet::universe();
    for l in on_x.iter().filter(|l| is_var(&l.a, x)) {
        let d = env.get(&l.rel)?.diagonal();
        values = if l.positive {
            values.intersect(&d)
        } else {
            values.difference(&d)
        };
    }
    if !values.is_finite() {
        return Ok((kept, Elimination::Cofinite));
    }
    let elems = values.elements().expect("finite sets list their elements");
    let mut cases = Vec::new();
    for u in &elems {
        let mut inst = Vec::new();
        for l in &on_x {
            let sub = |t: &Term| if *t == xv { Term::Elem(u.clone()) } else { t.clone() };
            let g = Literal::new(l.positive, &l.rel, sub(&l.a), sub(&l.b));
            inst.push(eliminate_constants_literal(env, &g)?);
        }
        cases.push(conj_s(inst));
    }
    Ok((
        and_s(kept, disj_s(cases)),
        Elimination::Finite {
            values: elems.len(),
        },
    ))
}

/// One record per eliminated quantifier.
#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub var: String,
    pub universal: bool,
    pub disjuncts: Vec<Elimination>,
    pub result: String,
}

fn exists_step(
    env: &mut RelEnv,
    x: &str,
    body: &Formula,
    universal: bool,
    trace: &mut Vec<Step>,
) -> Result<Formula, QeError> {
    let mut out = Vec::new();
    let mut cases = Vec::new();
    for conj in dnf(body, true)? {
        let (f, e) = eliminate_one(env, x, &conj)?;
        cases.push(e);
        out.push(f);
    }
    let f = eliminate_constants(env, &disj_s(out))?;
    let f = if universal { not_s(f) } else { f };
    trace.push(Step {
        var: x.to_string(),
        universal,
        disjuncts: cases,
        result: f.to_string(),
    });
    Ok(f)
}

/// Innermost-first quantifier elimination, recording each step.
pub fn eliminate_quantifiers_traced(
    env: &mut RelEnv,
    f: &Formula,
    trace: &mut Vec<Step>,
) -> Result<Formula, QeError> {
    Ok(match f {
        Formula::True | Formula::False | Formula::Rel(..) => f.clone(),
        Formula::Eq(a, b) => Formula::rel("id", a.clone(), b.clone()),
        Formula::Pred(n, _) => return Err(QeError::Uninterpreted(n.clone())),
        Formula::Not(g) => not_s(eliminate_quantifiers_traced(env, g, trace)?),
        Formula::And(a, b) => and_s(
            eliminate_quantifiers_traced(env, a, trace)?,
            eliminate_quantifiers_traced(env, b, trace)?,
        ),
        Formula::Or(a, b) => or_s(
            eliminate_quantifiers_traced(env, a, trace)?,
            eliminate_quantifiers_traced(env, b, trace)?,
        ),
        Formula::Imp(a, b) => or_s(
            not_s(eliminate_quantifiers_traced(env, a, trace)?),
            eliminate_quantifiers_traced(env, b, trace)?,
        ),
        Formula::Exists(x, g) => {
            let body = eliminate_quantifiers_traced(env, g, trace)?;
            exists_step(env, x, &body, false, trace)?
        }
        Formula::Forall(x, g) => {
            let body = not_s(eliminate_quantifiers_traced(env, g, trace)?);
            exists_step(env, x, &body, true, trace)?
        }
    })
}

pub fn eliminate_quantifiers(env: &mut RelEnv, f: &Formula) -> Result<Formula, QeError> {
    eliminate_quantifiers_traced(env, f, &mut Vec::new())
}

/// Truth of a variable-free formula.
pub fn eval_ground(env: &mut RelEnv, f: &Formula) -> Result<bool, QeError> {
    match eliminate_constants(env, f)? {
        Formula::True => Ok(true),
        Formula::False => Ok(false),
        g => Err(QeError::NotClosed(g.free_vars().into_iter().collect())),
    }
}
