use std::collections::{BTreeMap, BTreeSet};

use super::{Formula, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PredDecl {
    pub arity: usize,
    pub inductive: bool,
}

/// Predicate symbols with their arities. `=` and `rel` atoms are built in
/// and never declared here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    preds: BTreeMap<String, PredDecl>,
}

impl Default for Signature {
    /// `Σ_N`: inductive `N/1` and ordinary `p/2`.
    fn default() -> Self {
        let mut s = Signature::empty();
        s.declare("N", 1, true);
        s.declare("p", 2, false);
        s
    }
}

impl Signature {
    pub fn empty() -> Signature {
        Signature {
            preds: BTreeMap::new(),
        }
    }

    /// Declares (or redeclares) a predicate.
    pub fn declare(&mut self, name: &str, arity: usize, inductive: bool) {
        self.preds
            .insert(name.to_string(), PredDecl { arity, inductive });
    }

    pub fn get(&self, name: &str) -> Option<PredDecl> {
        self.preds.get(name).copied()
    }

    pub fn is_inductive(&self, name: &str) -> bool {
        self.get(name).is_some_and(|d| d.inductive)
    }

    pub fn inductive_preds(&self) -> impl Iterator<Item = &str> {
        self.preds
            .iter()
            .filter(|(_, d)| d.inductive)
            .map(|(n, _)| n.as_str())
    }

    pub fn preds(&self) -> impl Iterator<Item = (&str, PredDecl)> {
        self.preds.iter().map(|(n, d)| (n.as_str(), *d))
    }
}

/// `Q₁(u₁) … Q_h(u_h)  P_{j₁}(t₁) … P_{j_m}(t_m)  ⟹  P_i(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Production {
    pub conclusion: (String, Vec<Term>),
    pub ordinary: Vec<(String, Vec<Term>)>,
    pub inductive: Vec<(String, Vec<Term>)>,
}

impl Production {
    pub fn pred(&self) -> &str {
        &self.conclusion.0
    }

    /// Production variables in order of first occurrence: conclusion,
    /// then ordinary premises, then inductive premises.
    pub fn vars(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let all = std::iter::once(&self.conclusion)
            .chain(&self.ordinary)
            .chain(&self.inductive);
        for (_, args) in all {
            for t in args {
                let mut vs = Vec::new();
                collect_in_order(t, &mut vs);
                for v in vs {
                    if seen.insert(v.clone()) {
                        out.push(v);
                    }
                }
            }
        }
        out
    }

    pub fn conclusion_atom(&self) -> Formula {
        Formula::Pred(self.conclusion.0.clone(), self.conclusion.1.clone())
    }

    pub fn premise_atoms(&self) -> Vec<Formula> {
        self.ordinary
            .iter()
            .chain(&self.inductive)
            .map(|(p, args)| Formula::Pred(p.clone(), args.clone()))
            .collect()
    }
}

fn collect_in_order(t: &Term, out: &mut Vec<String>) {
    match t {
        Term::Var(v) => out.push(v.clone()),
        Term::Succ(inner) => collect_in_order(inner, out),
        Term::Zero | Term::Elem(_) => {}
    }
}

/// A signature together with its productions `Φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductiveSystem {
    pub signature: Signature,
    pub productions: Vec<Production>,
}

impl Default for InductiveSystem {
    /// `(Σ_N, Φ_N)`.
    fn default() -> Self {
        let mut sys = InductiveSystem {
            signature: Signature::default(),
            productions: Vec::new(),
        };
        sys.add_builtin("N").expect("N is built in");
        sys
    }
}

impl InductiveSystem {
    pub fn empty() -> InductiveSystem {
        InductiveSystem {
            signature: Signature::empty(),
            productions: Vec::new(),
        }
    }

    /// `Φ_N + Φ_≤`.
    pub fn with_le() -> InductiveSystem {
        let mut sys = InductiveSystem::default();
        sys.add_builtin("le").expect("le is built in");
        sys
    }

    /// Adds a built-in production set: `N` (`N 0`, `N x ⟹ N (s x)`) or
    /// `le` (`x ≤ x`, `x ≤ y ⟹ x ≤ s y`). `None` for unknown names.
    pub fn add_builtin(&mut self, name: &str) -> Option<()> {
        let x = || Term::var("x");
        let y = || Term::var("y");
        match name {
            "N" => {
                self.signature.declare("N", 1, true);
                self.signature.declare("p", 2, false);
                self.push_once(Production {
                    conclusion: ("N".into(), vec![Term::Zero]),
                    ordinary: vec![],
                    inductive: vec![],
                });
                self.push_once(Production {
                    conclusion: ("N".into(), vec![Term::succ(x())]),
                    ordinary: vec![],
                    inductive: vec![("N".into(), vec![x()])],
                });
            }
            "le" => {
                self.signature.declare("le", 2, true);
                self.push_once(Production {
                    conclusion: ("le".into(), vec![x(), x()]),
                    ordinary: vec![],
                    inductive: vec![],
                });
                self.push_once(Production {
                    conclusion: ("le".into(), vec![x(), Term::succ(y())]),
                    ordinary: vec![],
                    inductive: vec![("le".into(), vec![x(), y()])],
                });
            }
            _ => return None,
        }
        Some(())
    }

    fn push_once(&mut self, p: Production) {
        if !self.productions.contains(&p) {
            self.productions.push(p);
        }
    }

    pub fn is_inductive(&self, pred: &str) -> bool {
        self.signature.is_inductive(pred)
    }

    /// Productions concluding `pred`, in declaration order.
    pub fn productions_for<'a>(&'a self, pred: &'a str) -> impl Iterator<Item = &'a Production> + 'a {
        self.productions.iter().filter(move |p| p.pred() == pred)
    }

    /// Whether a formula is an atom of an inductive predicate.
    pub fn is_inductive_atom(&self, f: &Formula) -> bool {
        matches!(f, Formula::Pred(name, _) if self.is_inductive(name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn production_variables_in_first_occurrence_order() {
        let sys = InductiveSystem::with_le();
        let le: Vec<_> = sys.productions_for("le").collect();
        assert_eq!(le.len(), 2);
        assert_eq!(le[0].vars(), vec!["x".to_string()]);
        assert_eq!(le[1].vars(), vec!["x".to_string(), "y".to_string()]);
        assert!(sys.is_inductive("le") && sys.is_inductive("N") && !sys.is_inductive("p"));
    }

    #[test]
    fn builtins_are_idempotent() {
        let mut sys = InductiveSystem::default();
        sys.add_builtin("N");
        assert_eq!(sys.productions.len(), 2);
        assert!(sys.add_builtin("nope").is_none());
    }
}
