use std::collections::{BTreeMap, BTreeSet};

use crate::model::MElement;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Zero,
    Succ(Box<Term>),
    /// A model constant; only produced while eliminating quantifiers.
    Elem(MElement),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    /// `s^n(t)`.
    pub fn succ_n(mut t: Term, n: usize) -> Term {
        for _ in 0..n {
            t = Term::succ(t);
        }
        t
    }

    /// `s^n(0)`.
    pub fn numeral(n: usize) -> Term {
        Term::succ_n(Term::Zero, n)
    }

    /// Splits `s^n(base)` into `(base, n)`.
    pub fn peel(&self) -> (&Term, usize) {
        let mut n = 0;
        let mut cur = self;
        while let Term::Succ(inner) = cur {
            n += 1;
            cur = inner;
        }
        (cur, n)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Succ(t) => t.vars_into(out),
            Term::Zero | Term::Elem(_) => {}
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.vars_into(&mut out);
        out
    }

    pub fn has_elem(&self) -> bool {
        match self {
            Term::Elem(_) => true,
            Term::Succ(t) => t.has_elem(),
            _ => false,
        }
    }

    pub fn subst(&self, s: &Subst) -> Term {
        match self {
            Term::Var(v) => s.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Succ(t) => Term::succ(t.subst(s)),
            Term::Zero | Term::Elem(_) => self.clone(),
        }
    }
}

/// Simultaneous substitution of terms for variables.
pub type Subst = BTreeMap<String, Term>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    /// Predicate application such as `N(t)`, `p(t, u)` or `le(t, u)`.
    Pred(String, Vec<Term>),
    Eq(Term, Term),
    /// A named partial-bijection atom, used while eliminating quantifiers.
    Rel(String, Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn pred(name: &str, args: Vec<Term>) -> Formula {
        Formula::Pred(name.to_string(), args)
    }
    pub fn n(t: Term) -> Formula {
        Formula::pred("N", vec![t])
    }
    pub fn p(a: Term, b: Term) -> Formula {
        Formula::pred("p", vec![a, b])
    }
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }
    pub fn rel(name: &str, a: Term, b: Term) -> Formula {
        Formula::Rel(name.to_string(), a, b)
    }
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }
    pub fn exists(v: &str, f: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(f))
    }
    pub fn forall(v: &str, f: Formula) -> Formula {
        Formula::Forall(v.to_string(), Box::new(f))
    }

    /// Right-nested conjunction; `true` when empty.
    pub fn conj(fs: impl IntoIterator<Item = Formula>) -> Formula {
        let mut v: Vec<Formula> = fs.into_iter().collect();
        let Some(mut acc) = v.pop() else {
            return Formula::True;
        };
        while let Some(f) = v.pop() {
            acc = Formula::and(f, acc);
        }
        acc
    }

    /// Right-nested disjunction; `false` when empty.
    pub fn disj(fs: impl IntoIterator<Item = Formula>) -> Formula {
        let mut v: Vec<Formula> = fs.into_iter().collect();
        let Some(mut acc) = v.pop() else {
            return Formula::False;
        };
        while let Some(f) = v.pop() {
            acc = Formula::or(f, acc);
        }
        acc
    }

    /// `∀x₁…xₙ ∈ N. body`, i.e. `∀x₁…∀xₙ.(N x₁ ∧ … ∧ N xₙ → body)`.
    pub fn forall_in_n(vars: &[&str], body: Formula) -> Formula {
        let guard = Formula::conj(vars.iter().map(|v| Formula::n(Term::var(v))));
        let mut f = Formula::imp(guard, body);
        for v in vars.iter().rev() {
            f = Formula::forall(v, f);
        }
        f
    }

    pub fn is_atom(&self) -> bool {
        matches!(
            self,
            Formula::Pred(..) | Formula::Eq(..) | Formula::Rel(..)
        )
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut BTreeSet::new(), &mut out);
        out
    }

    fn free_vars_into(&self, bound: &mut BTreeSet<String>, out: &mut BTreeSet<String>) {
        let add = |t: &Term, out: &mut BTreeSet<String>| {
            for v in t.vars() {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Pred(_, args) => args.iter().for_each(|t| add(t, out)),
            Formula::Eq(a, b) | Formula::Rel(_, a, b) => {
                add(a, out);
                add(b, out);
            }
            Formula::Not(f) => f.free_vars_into(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.free_vars_into(bound, out);
                b.free_vars_into(bound, out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                let fresh = bound.insert(v.clone());
                f.free_vars_into(bound, out);
                if fresh {
                    bound.remove(v);
                }
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.all_vars_into(&mut out);
        out
    }

    fn all_vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Pred(_, args) => args.iter().for_each(|t| t.vars_into(out)),
            Formula::Eq(a, b) | Formula::Rel(_, a, b) => {
                a.vars_into(out);
                b.vars_into(out);
            }
            Formula::Not(f) => f.all_vars_into(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.all_vars_into(out);
                b.all_vars_into(out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                out.insert(v.clone());
                f.all_vars_into(out);
            }
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Exists(..) | Formula::Forall(..) => false,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            _ => true,
        }
    }

    /// Capture-avoiding simultaneous substitution. Bound variables that
    /// would capture a variable of the substituted terms are renamed by
    /// priming (`y`, `y'`, `y''`, …) until fresh.
    pub fn subst(&self, s: &Subst) -> Formula {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Pred(n, args) => Formula::Pred(n.clone(), args.iter().map(|t| t.subst(s)).collect()),
            Formula::Eq(a, b) => Formula::Eq(a.subst(s), b.subst(s)),
            Formula::Rel(n, a, b) => Formula::Rel(n.clone(), a.subst(s), b.subst(s)),
            Formula::Not(f) => Formula::not(f.subst(s)),
            Formula::And(a, b) => Formula::and(a.subst(s), b.subst(s)),
            Formula::Or(a, b) => Formula::or(a.subst(s), b.subst(s)),
            Formula::Imp(a, b) => Formula::imp(a.subst(s), b.subst(s)),
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                let is_ex = matches!(self, Formula::Exists(..));
                let body_fv = f.free_vars();
                let mut inner: Subst = s
                    .iter()
                    .filter(|(k, _)| *k != v && body_fv.contains(*k))
                    .map(|(k, t)| (k.clone(), t.clone()))
                    .collect();
                let incoming: BTreeSet<String> =
                    inner.values().flat_map(|t| t.vars()).collect();
                let (name, body) = if incoming.contains(v) {
                    let mut avoid = incoming;
                    avoid.extend(body_fv);
                    avoid.extend(inner.keys().cloned());
                    let fresh = fresh_name(v, &avoid);
                    inner.insert(v.clone(), Term::Var(fresh.clone()));
                    (fresh, f.subst(&inner))
                } else {
                    (v.clone(), f.subst(&inner))
                };
                if is_ex {
                    Formula::exists(&name, body)
                } else {
                    Formula::forall(&name, body)
                }
            }
        }
    }

    /// `self[t/x]`.
    pub fn subst1(&self, x: &str, t: &Term) -> Formula {
        let mut s = Subst::new();
        s.insert(x.to_string(), t.clone());
        self.subst(&s)
    }

    /// Number of connective and quantifier nodes on the longest branch.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                1 + a.depth().max(b.depth())
            }
            _ => 0,
        }
    }
}

/// `base`, `base'`, `base''`, … — the first name not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut name = base.to_string();
    while avoid.contains(&name) {
        name.push('\'');
    }
    name
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("x")
    }
    fn y() -> Term {
        Term::var("y")
    }

    #[test]
    fn substitution_examples() {
        let f = Formula::p(x(), y());
        assert_eq!(f.subst1("x", &Term::succ(x())), Formula::p(Term::succ(x()), y()));

        let g = Formula::exists("y", Formula::eq(x(), y()));
        assert_eq!(
            g.subst1("x", &y()),
            Formula::exists("y'", Formula::eq(y(), Term::var("y'")))
        );

        assert_eq!(Formula::n(x()).subst1("x", &Term::Zero), Formula::n(Term::Zero));
    }

    #[test]
    fn substitution_is_simultaneous() {
        let f = Formula::p(x(), y());
        let mut s = Subst::new();
        s.insert("x".into(), y());
        s.insert("y".into(), x());
        assert_eq!(f.subst(&s), Formula::p(y(), x()));
    }

    #[test]
    fn bound_variables_are_not_substituted() {
        let f = Formula::forall("x", Formula::n(x()));
        assert_eq!(f.subst1("x", &Term::Zero), f);
    }

    #[test]
    fn free_variables() {
        let f = Formula::exists("y", Formula::eq(x(), Term::succ(y())));
        assert_eq!(f.free_vars(), ["x".to_string()].into_iter().collect());
        assert_eq!(f.all_vars().len(), 2);
    }

    #[test]
    fn peel_counts_successors() {
        let t = Term::succ_n(x(), 3);
        assert_eq!(t.peel(), (&x(), 3));
        assert_eq!(Term::numeral(0).peel(), (&Term::Zero, 0));
    }
}
