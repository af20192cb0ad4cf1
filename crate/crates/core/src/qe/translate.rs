use std::collections::BTreeSet;

use super::QeError;
use crate::model::MElement;
use crate::syntax::{fresh_name, Formula, Term};

/// A term as `s^n(v)` or a model element.
enum Flat {
    Shifted(String, u64),
    Const(MElement),
}

fn flat(t: &Term) -> Flat {
    let (base, n) = t.peel();
    let n = n as u64;
    match base {
        Term::Var(v) => Flat::Shifted(v.clone(), n),
        Term::Zero => Flat::Const(MElement::nat(n)),
        Term::Elem(e) => Flat::Const(e.offset(n).expect("successors stay in the line")),
        Term::Succ(_) => unreachable!("peel strips successors"),
    }
}

fn shift_name(n: u64) -> String {
    if n == 0 {
        "id".into()
    } else {
        format!("s+{n}")
    }
}

/// `s^n(a) = s^m(b)` as a relation atom, or a truth value.
fn equation(a: Flat, b: Flat) -> Formula {
    match (a, b) {
        (Flat::Const(c), Flat::Const(d)) => {
            if c == d {
                Formula::True
            } else {
                Formula::False
            }
        }
        (Flat::Shifted(v, n), Flat::Const(c)) | (Flat::Const(c), Flat::Shifted(v, n)) => {
            match c.offset(-(n as i64)) {
                Some(u) => Formula::rel(&super::RelEnv::id_of(&u), Term::var(&v), Term::var(&v)),
                None => Formula::False,
            }
        }
        (Flat::Shifted(v, n), Flat::Shifted(w, m)) => {
            // s^n v = s^m w: the side with fewer successors is the larger.
            if n == m {
                Formula::rel("id", Term::var(&v), Term::var(&w))
            } else if n < m {
                Formula::rel(&shift_name(m - n), Term::var(&w), Term::var(&v))
            } else {
                Formula::rel(&shift_name(n - m), Term::var(&v), Term::var(&w))
            }
        }
    }
}

struct Translator {
    avoid: BTreeSet<String>,
}

impl Translator {
    /// A variable or constant standing for `t`, with the definitions of
    /// any fresh variables introduced for it.
    fn argument(&mut self, t: &Term, defs: &mut Vec<(String, Formula)>) -> Term {
        match flat(t) {
            Flat::Const(c) => Term::Elem(c),
            Flat::Shifted(v, 0) => Term::var(&v),
            Flat::Shifted(v, n) => {
                let z = fresh_name("z", &self.avoid);
                self.avoid.insert(z.clone());
                defs.push((z.clone(), Formula::rel(&shift_name(n), Term::var(&v), Term::var(&z))));
                Term::var(&z)
            }
        }
    }

    /// `∃z⃗ (defs ∧ atom)` with arguments flattened left to right.
    fn binary(&mut self, name: &str, a: &Term, b: &Term, negate: bool) -> Formula {
        let mut defs = Vec::new();
        let a = self.argument(a, &mut defs);
        let b = self.argument(b, &mut defs);
        let mut atom = Formula::rel(name, a, b);
        if negate {
            atom = Formula::not(atom);
        }
        let mut f = Formula::conj(defs.iter().map(|(_, d)| d.clone()).chain([atom]));
        for (z, _) in defs.iter().rev() {
            f = Formula::exists(z, f);
        }
        f
    }

    fn go(&mut self, f: &Formula) -> Result<Formula, QeError> {
        Ok(match f {
            Formula::True | Formula::False => f.clone(),
            Formula::Pred(name, args) => match (name.as_str(), args.as_slice()) {
                ("N", [_]) => Formula::True,
                ("p", [a, b]) => self.binary("r0", a, b, true),
                _ => return Err(QeError::Uninterpreted(name.clone())),
            },
            Formula::Eq(a, b) => equation(flat(a), flat(b)),
            Formula::Rel(name, a, b) => self.binary(name, a, b, false),
            Formula::Not(g) => Formula::not(self.go(g)?),
            Formula::And(a, b) => Formula::and(self.go(a)?, self.go(b)?),
            Formula::Or(a, b) => Formula::or(self.go(a)?, self.go(b)?),
            Formula::Imp(a, b) => Formula::imp(self.go(a)?, self.go(b)?),
            Formula::Exists(v, g) => Formula::exists(v, self.go(g)?),
            Formula::Forall(v, g) => Formula::forall(v, self.go(g)?),
        })
    }
}

/// Rewrites a formula over `{0, s, N, p, =}` and model constants into one
/// whose atoms are partial-bijection relations between variables and
/// constants: `N t` becomes true, equations become shifts or point
/// identities, and `p(a, b)` becomes `¬r0(a, b)`.
pub fn translate(f: &Formula) -> Result<Formula, QeError> {
    Translator {
        avoid: f.all_vars(),
    }
    .go(f)
}
