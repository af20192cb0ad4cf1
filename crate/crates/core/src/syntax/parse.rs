use std::fmt;

use num_bigint::BigInt;

use super::sexp::{self, Sexp};
use super::{Formula, Signature, SyntaxError, Term};
use crate::model::MElement;

const RESERVED: &[&str] = &[
    "s", "true", "false", "not", "and", "or", "imp", "ex", "all", "rel", "elemN", "elemZ", "=",
];

pub(crate) fn is_ident(a: &str) -> bool {
    let mut chars = a.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    (first.is_alphabetic() || first == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
        && !RESERVED.contains(&a)
}

/// Converts s-expressions into terms and formulas, checking predicate
/// symbols against a signature.
pub struct FormulaReader<'a> {
    pub signature: &'a Signature,
}

impl FormulaReader<'_> {
    pub fn term(&self, s: &Sexp) -> Result<Term, SyntaxError> {
        match s {
            Sexp::Atom(a, pos) => {
                if a == "0" {
                    Ok(Term::Zero)
                } else if is_ident(a) {
                    Ok(Term::Var(a.clone()))
                } else {
                    Err(SyntaxError::at(*pos, format!("`{a}` is not a term")))
                }
            }
            Sexp::List(items, pos) => match (s.head(), items.len()) {
                (Some("s"), 2) => Ok(Term::succ(self.term(&items[1])?)),
                (Some("elemN"), 2) => {
                    let k = self.integer(&items[1])?;
                    if k < BigInt::from(0) {
                        return Err(SyntaxError::at(items[1].pos(), "elemN index must be nonnegative"));
                    }
                    Ok(Term::Elem(MElement::nat(k)))
                }
                (Some("elemZ"), 2) => Ok(Term::Elem(MElement::zeta(self.integer(&items[1])?))),
                (Some(h @ ("s" | "elemN" | "elemZ")), n) => Err(SyntaxError::at(
                    *pos,
                    format!("`{h}` takes 1 argument, got {}", n - 1),
                )),
                _ => Err(SyntaxError::at(*pos, format!("`{s}` is not a term"))),
            },
        }
    }

    fn integer(&self, s: &Sexp) -> Result<BigInt, SyntaxError> {
        s.as_atom()
            .and_then(|a| a.parse::<BigInt>().ok())
            .ok_or_else(|| SyntaxError::at(s.pos(), format!("expected an integer, got `{s}`")))
    }

    fn ident(&self, s: &Sexp) -> Result<String, SyntaxError> {
        match s.as_atom() {
            Some(a) if is_ident(a) => Ok(a.to_string()),
            _ => Err(SyntaxError::at(s.pos(), format!("expected a variable, got `{s}`"))),
        }
    }

    pub fn formula(&self, s: &Sexp) -> Result<Formula, SyntaxError> {
        let (items, pos) = match s {
            Sexp::Atom(a, pos) => {
                return match a.as_str() {
                    "true" => Ok(Formula::True),
                    "false" => Ok(Formula::False),
                    _ => Err(SyntaxError::at(*pos, format!("`{a}` is not a formula"))),
                }
            }
            Sexp::List(items, pos) => (items, *pos),
        };
        let Some(head) = s.head() else {
            return Err(SyntaxError::at(pos, "expected a formula"));
        };
        let args = &items[1..];
        let want = |n: usize| -> Result<(), SyntaxError> {
            if args.len() == n {
                Ok(())
            } else {
                Err(SyntaxError::at(
                    pos,
                    format!("`{head}` takes {n} arguments, got {}", args.len()),
                ))
            }
        };
        Ok(match head {
            "not" => {
                want(1)?;
                Formula::not(self.formula(&args[0])?)
            }
            "and" | "or" | "imp" => {
                want(2)?;
                let a = self.formula(&args[0])?;
                let b = self.formula(&args[1])?;
                match head {
                    "and" => Formula::and(a, b),
                    "or" => Formula::or(a, b),
                    _ => Formula::imp(a, b),
                }
            }
            "ex" | "all" => {
                want(2)?;
                let v = self.ident(&args[0])?;
                let body = self.formula(&args[1])?;
                if head == "ex" {
                    Formula::exists(&v, body)
                } else {
                    Formula::forall(&v, body)
                }
            }
            "=" => {
                want(2)?;
                Formula::Eq(self.term(&args[0])?, self.term(&args[1])?)
            }
            "rel" => {
                want(3)?;
                let name = args[0]
                    .as_atom()
                    .ok_or_else(|| SyntaxError::at(args[0].pos(), "relation name must be an atom"))?;
                Formula::Rel(name.to_string(), self.term(&args[1])?, self.term(&args[2])?)
            }
            name => {
                let decl = self
                    .signature
                    .get(name)
                    .ok_or_else(|| SyntaxError::at(pos, format!("unknown predicate symbol `{name}`")))?;
                if decl.arity != args.len() {
                    return Err(SyntaxError::at(
                        pos,
                        format!(
                            "arity mismatch: `{name}` takes {} arguments, got {}",
                            decl.arity,
                            args.len()
                        ),
                    ));
                }
                let terms = args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?;
                Formula::Pred(name.to_string(), terms)
            }
        })
    }
}

/// Parses a formula over `Σ_N`.
pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    parse_formula_with(text, &Signature::default())
}

pub fn parse_formula_with(text: &str, signature: &Signature) -> Result<Formula, SyntaxError> {
    FormulaReader { signature }.formula(&sexp::read_one(text)?)
}

pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    FormulaReader {
        signature: &Signature::default(),
    }
    .term(&sexp::read_one(text)?)
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Zero => f.write_str("0"),
            Term::Succ(t) => write!(f, "(s {t})"),
            Term::Elem(e) => write!(f, "{e}"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Pred(name, args) => {
                write!(f, "({name}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
            Formula::Eq(a, b) => write!(f, "(= {a} {b})"),
            Formula::Rel(name, a, b) => write!(f, "(rel {name} {a} {b})"),
            Formula::Not(g) => write!(f, "(not {g})"),
            Formula::And(a, b) => write!(f, "(and {a} {b})"),
            Formula::Or(a, b) => write!(f, "(or {a} {b})"),
            Formula::Imp(a, b) => write!(f, "(imp {a} {b})"),
            Formula::Exists(v, g) => write!(f, "(ex {v} {g})"),
            Formula::Forall(v, g) => write!(f, "(all {v} {g})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        assert_eq!(parse_formula("(N 0)").unwrap(), Formula::n(Term::Zero));
        let hb = parse_formula("(imp (p x y) (p (s x) (s (s y))))").unwrap();
        assert_eq!(
            hb,
            Formula::imp(
                Formula::p(Term::var("x"), Term::var("y")),
                Formula::p(Term::succ(Term::var("x")), Term::succ_n(Term::var("y"), 2))
            )
        );
        let ex = parse_formula("(ex y (= x (s y)))").unwrap();
        assert_eq!(ex.free_vars().into_iter().collect::<Vec<_>>(), vec!["x".to_string()]);
    }

    #[test]
    fn prints_examples() {
        assert_eq!(print_formula(&Formula::n(Term::Zero)), "(N 0)");
        assert_eq!(print_formula(&Formula::True), "true");
        let f = Formula::rel("r0~.s+1", Term::Elem(MElement::zeta(-2)), Term::var("x'"));
        assert_eq!(f.to_string(), "(rel r0~.s+1 (elemZ -2) x')");
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn reports_errors_with_positions() {
        let e = parse_formula("(and (N 0)\n  (q x))").unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (2, 3));
        assert!(e.message.contains("unknown predicate"));
        let e = parse_formula("(p x)").unwrap_err();
        assert!(e.message.contains("arity mismatch"));
        assert!(parse_formula("(N (s))").is_err());
        assert!(parse_formula("(ex 0 true)").is_err());
        assert!(parse_formula("(elemN -1)").is_err());
    }

    #[test]
    fn signature_extends_predicates() {
        let mut sig = Signature::default();
        sig.declare("le", 2, true);
        assert!(parse_formula_with("(le x (s y))", &sig).is_ok());
        assert!(parse_formula("(le x (s y))").is_err());
    }
}
