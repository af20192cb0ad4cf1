//! The counter-model: universe `ℕ + ℤ`, with `N` interpreted as the whole
//! universe and `p` as the complement of three affine paths.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{Formula, Term};

/// The two components of the disjoint union `ℕ + ℤ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Line {
    Nat,
    Zeta,
}

/// The three rays partitioning the universe: the `ℕ` copy, the negative
/// half of `ℤ`, and the nonnegative half of `ℤ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Ray {
    Nat,
    ZNeg,
    ZPos,
}

impl Ray {
    pub const ALL: [Ray; 3] = [Ray::Nat, Ray::ZNeg, Ray::ZPos];

    pub fn slot(self) -> usize {
        match self {
            Ray::Nat => 0,
            Ray::ZNeg => 1,
            Ray::ZPos => 2,
        }
    }

    pub fn line(self) -> Line {
        match self {
            Ray::Nat => Line::Nat,
            Ray::ZNeg | Ray::ZPos => Line::Zeta,
        }
    }

    /// Whether an index lies on this ray.
    pub fn admits(self, index: &BigInt) -> bool {
        match self {
            Ray::Nat | Ray::ZPos => !index.is_negative(),
            Ray::ZNeg => index.is_negative(),
        }
    }

    /// The ray of the given line that holds `index`, if any.
    pub fn of(line: Line, index: &BigInt) -> Option<Ray> {
        match line {
            Line::Nat if index.is_negative() => None,
            Line::Nat => Some(Ray::Nat),
            Line::Zeta if index.is_negative() => Some(Ray::ZNeg),
            Line::Zeta => Some(Ray::ZPos),
        }
    }

    pub fn element(self, index: BigInt) -> MElement {
        debug_assert!(self.admits(&index));
        MElement {
            line: self.line(),
            index,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Ray::Nat => "N",
            Ray::ZNeg => "Z-",
            Ray::ZPos => "Z+",
        }
    }
}

/// An element of the universe: `(1, n)` with `n ≥ 0`, or `(2, z)` with
/// `z ∈ ℤ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MElement {
    pub line: Line,
    pub index: BigInt,
}

impl MElement {
    pub fn nat(n: impl Into<BigInt>) -> MElement {
        let index = n.into();
        assert!(!index.is_negative(), "NatRay index must be nonnegative");
        MElement {
            line: Line::Nat,
            index,
        }
    }

    pub fn zeta(z: impl Into<BigInt>) -> MElement {
        MElement {
            line: Line::Zeta,
            index: z.into(),
        }
    }

    /// `0_𝕄`.
    pub fn zero() -> MElement {
        MElement::nat(0)
    }

    pub fn ray(&self) -> Ray {
        Ray::of(self.line, &self.index).expect("MElement invariant: NatRay index nonnegative")
    }

    pub fn offset(&self, by: impl Into<BigInt>) -> Option<MElement> {
        let index = &self.index + by.into();
        match self.line {
            Line::Nat if index.is_negative() => None,
            line => Some(MElement { line, index }),
        }
    }

    /// Predecessor within the line; `None` only for `0_𝕄`.
    pub fn pred(&self) -> Option<MElement> {
        self.offset(-1)
    }
}

impl fmt::Display for MElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Line::Nat => write!(f, "(elemN {})", self.index),
            Line::Zeta => write!(f, "(elemZ {})", self.index),
        }
    }
}

/// `s_𝕄(x, y) = (x, y + 1)`.
pub fn succ(e: &MElement) -> MElement {
    MElement {
        line: e.line,
        index: &e.index + 1,
    }
}

/// Membership in `π₁ ∪ π₂ ∪ π₃`, solved per path:
/// `π₁ = (0_𝕄, 0_ℤ) + r`, `π₂ = (0_ℤ, 0_𝕄) + r`, `π₃ = (0_ℤ − 1, 0_ℤ − 2) − r`
/// with `r = {(n, 2n) | n ∈ ℕ}`.
pub fn in_pi(a: &MElement, b: &MElement) -> bool {
    let doubled = &a.index * 2;
    match (a.line, b.line) {
        (Line::Nat, Line::Zeta) => b.index == doubled,
        (Line::Zeta, Line::Nat) => !a.index.is_negative() && b.index == doubled,
        (Line::Zeta, Line::Zeta) => a.index.is_negative() && b.index == doubled,
        (Line::Nat, Line::Nat) => false,
    }
}

/// `p_𝕄(a, b)`.
pub fn p_holds(a: &MElement, b: &MElement) -> bool {
    !in_pi(a, b)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("ground evaluation met a quantifier")]
    Quantifier,
    #[error("ground evaluation met free variable `{0}`")]
    FreeVariable(String),
    #[error("predicate `{0}` has no interpretation in the model")]
    UnknownPredicate(String),
    #[error("relation atom `{0}` needs a relation environment")]
    RelationAtom(String),
}

/// Value of a variable-free term.
pub fn eval_term(t: &Term) -> Result<MElement, EvalError> {
    let mut depth = 0u64;
    let mut cur = t;
    loop {
        match cur {
            Term::Succ(inner) => {
                depth += 1;
                cur = inner;
            }
            Term::Zero => return Ok(MElement::nat(depth)),
            Term::Elem(e) => {
                return Ok(MElement {
                    line: e.line,
                    index: &e.index + depth,
                })
            }
            Term::Var(v) => return Err(EvalError::FreeVariable(v.clone())),
        }
    }
}

/// Truth of a quantifier-free, variable-free formula over `{0, s, N, p, =}`.
pub fn eval_ground(f: &Formula) -> Result<bool, EvalError> {
    Ok(match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Pred(name, args) => match (name.as_str(), args.as_slice()) {
            ("N", [t]) => {
                eval_term(t)?;
                true
            }
            ("p", [a, b]) => p_holds(&eval_term(a)?, &eval_term(b)?),
            _ => return Err(EvalError::UnknownPredicate(name.clone())),
        },
        Formula::Eq(a, b) => eval_term(a)? == eval_term(b)?,
        Formula::Rel(name, _, _) => return Err(EvalError::RelationAtom(name.clone())),
        Formula::Not(g) => !eval_ground(g)?,
        Formula::And(a, b) => eval_ground(a)? & eval_ground(b)?,
        Formula::Or(a, b) => eval_ground(a)? | eval_ground(b)?,
        Formula::Imp(a, b) => !eval_ground(a)? | eval_ground(b)?,
        Formula::Exists(..) | Formula::Forall(..) => return Err(EvalError::Quantifier),
    })
}

/// `R₀ = |𝕄|² ∖ p_𝕄` as a partial map; `None` never happens since `R₀` is
/// total.
pub fn r0_apply(e: &MElement) -> MElement {
    let doubled = &e.index * 2;
    match e.ray() {
        Ray::Nat => MElement::zeta(doubled),
        Ray::ZNeg => MElement::zeta(doubled),
        Ray::ZPos => MElement::nat(doubled),
    }
}

/// All elements with `|index| ≤ radius`, in a fixed order.
pub fn window(radius: u64) -> Vec<MElement> {
    let r = radius as i64;
    let mut out = Vec::with_capacity(3 * radius as usize + 2);
    for n in 0..=r {
        out.push(MElement::nat(n));
    }
    for z in -r..=r {
        out.push(MElement::zeta(z));
    }
    out
}

/// `2^k` as a `BigInt`.
pub fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// Mathematical residue of `n` modulo `2^k`, in `[0, 2^k)`.
pub fn residue(n: &BigInt, k: u32) -> u64 {
    if k == 0 {
        return 0;
    }
    let m = pow2(k as u64);
    let r = n.mod_floor(&m);
    u64::try_from(r).expect("residue fits in u64")
}
