//! The 2-Hydra statement and the head-cutting game it describes.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::model::{in_pi, MElement};
use crate::syntax::{Formula, Sequent, Term};

fn v(name: &str) -> Term {
    Term::var(name)
}

fn s(t: Term) -> Term {
    Term::succ(t)
}

/// `H_a … H_d`, with their names.
pub fn hydra_axioms() -> Vec<(String, Formula)> {
    let zero = Term::Zero;
    let one = Term::numeral(1);
    let h_a = Formula::forall_in_n(
        &["x"],
        Formula::conj([
            Formula::p(zero.clone(), zero.clone()),
            Formula::p(one.clone(), zero.clone()),
            Formula::p(v("x"), one),
        ]),
    );
    let h_b = Formula::forall_in_n(
        &["x", "y"],
        Formula::imp(
            Formula::p(v("x"), v("y")),
            Formula::p(s(v("x")), s(s(v("y")))),
        ),
    );
    let h_c = Formula::forall_in_n(
        &["y"],
        Formula::imp(
            Formula::p(s(v("y")), v("y")),
            Formula::p(zero.clone(), s(s(v("y")))),
        ),
    );
    let h_d = Formula::forall_in_n(
        &["x"],
        Formula::imp(Formula::p(s(v("x")), v("x")), Formula::p(s(s(v("x"))), zero)),
    );
    [("H_a", h_a), ("H_b", h_b), ("H_c", h_c), ("H_d", h_d)]
        .into_iter()
        .map(|(n, f)| (n.to_string(), f))
        .collect()
}

/// `∀x, y ∈ N. p(x, y)`.
pub fn hydra_goal() -> Formula {
    Formula::forall_in_n(&["x", "y"], Formula::p(v("x"), v("y")))
}

/// `H = (H_a ∧ H_b ∧ H_c ∧ H_d → ∀x, y ∈ N. p(x, y))`.
pub fn hydra_formula() -> Formula {
    Formula::imp(
        Formula::conj(hydra_axioms().into_iter().map(|(_, f)| f)),
        hydra_goal(),
    )
}

/// `Ĥ, N x, N y ⊢ p x y`, the root of the cyclic proof.
pub fn hydra_sequent() -> Sequent {
    Sequent::new(
        hydra_axioms()
            .into_iter()
            .map(|(_, f)| f)
            .chain([Formula::n(v("x")), Formula::n(v("y"))]),
        [Formula::p(v("x"), v("y"))],
    )
}

/// A head length: a natural number, or an element of 𝕄.
pub trait Head: Clone {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    /// `self − k`; only called when the result exists.
    fn minus(&self, k: u32) -> Self;
}

impl Head for u64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn minus(&self, k: u32) -> u64 {
        self - u64::from(k)
    }
}

impl Head for MElement {
    fn is_zero(&self) -> bool {
        *self == MElement::zero()
    }
    fn is_one(&self) -> bool {
        *self == MElement::nat(1)
    }
    fn minus(&self, k: u32) -> MElement {
        self.offset(-BigInt::from(k)).expect("head long enough to shrink")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GameState<H = u64> {
    pub heads: (H, H),
}

impl<H> GameState<H> {
    pub fn new(a: H, b: H) -> GameState<H> {
        GameState { heads: (a, b) }
    }
}

impl<H: fmt::Display> fmt::Display for GameState<H> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.heads.0, self.heads.1)
    }
}

/// Which of the four disjoint cases applies, named after the hypothesis
/// of `H` that covers it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Move {
    /// `(0,0)`, `(1,0)` or `(x,1)`: `H_a`.
    Win,
    /// Both heads cut: `(n,m) ↦ (n−1,m−2)`, `H_b`.
    CutBoth,
    /// Only the second head is positive: `(0,m) ↦ (m−1,m−2)`, `H_c`.
    CutSecond,
    /// Only the first head is positive: `(n,0) ↦ (n−1,n−2)`, `H_d`.
    CutFirst,
}

impl Move {
    pub fn axiom(self) -> &'static str {
        match self {
            Move::Win => "H_a",
            Move::CutBoth => "H_b",
            Move::CutSecond => "H_c",
            Move::CutFirst => "H_d",
        }
    }
}

pub fn classify<H: Head>(s: &GameState<H>) -> Move {
    let (a, b) = &s.heads;
    if b.is_one() || (b.is_zero() && (a.is_zero() || a.is_one())) {
        Move::Win
    } else if b.is_zero() {
        Move::CutFirst
    } else if a.is_zero() {
        Move::CutSecond
    } else {
        Move::CutBoth
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step<H = u64> {
    Win,
    Next(GameState<H>),
}

pub fn game_step<H: Head>(s: &GameState<H>) -> Step<H> {
    let (a, b) = &s.heads;
    match classify(s) {
        Move::Win => Step::Win,
        Move::CutBoth => Step::Next(GameState::new(a.minus(1), b.minus(2))),
        Move::CutSecond => Step::Next(GameState::new(b.minus(1), b.minus(2))),
        Move::CutFirst => Step::Next(GameState::new(a.minus(1), a.minus(2))),
    }
}

/// Plays from `(n, m)` until the game is won; the last state is winning.
pub fn game_play(n: u64, m: u64) -> Vec<GameState> {
    let mut out = vec![GameState::new(n, m)];
    while let Step::Next(next) = game_step(out.last().expect("nonempty")) {
        out.push(next);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelRun {
    pub states: Vec<GameState<MElement>>,
    pub won: bool,
}

/// Up to `steps` moves over 𝕄 starting from `(a, b)`.
pub fn model_game_run(a: MElement, b: MElement, steps: usize) -> ModelRun {
    let mut states = vec![GameState::new(a, b)];
    for _ in 0..steps {
        match game_step(states.last().expect("nonempty")) {
            Step::Win => return ModelRun { states, won: true },
            Step::Next(next) => states.push(next),
        }
    }
    let won = classify(states.last().expect("nonempty")) == Move::Win;
    ModelRun { states, won }
}

/// Whether a state lies on `π₁ ∪ π₂ ∪ π₃`.
pub fn on_pi(s: &GameState<MElement>) -> bool {
    in_pi(&s.heads.0, &s.heads.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, print_formula};

    #[test]
    fn worked_example() {
        let t = game_play(1, 4);
        assert_eq!(
            t,
            vec![GameState::new(1, 4), GameState::new(0, 2), GameState::new(1, 0)]
        );
        assert_eq!(game_step(&GameState::new(7u64, 1)), Step::Win);
        assert_eq!(game_play(0, 0).len(), 1);
    }

    #[test]
    fn exactly_one_case_applies() {
        for n in 0..=100u64 {
            for m in 0..=100u64 {
                let win = (n, m) == (0, 0) || (n, m) == (1, 0) || m == 1;
                let t2 = n >= 1 && m >= 2;
                let t3 = n == 0 && m >= 2;
                let t4 = m == 0 && n >= 2;
                assert_eq!([win, t2, t3, t4].iter().filter(|b| **b).count(), 1);
                let want = if win {
                    Move::Win
                } else if t2 {
                    Move::CutBoth
                } else if t3 {
                    Move::CutSecond
                } else {
                    Move::CutFirst
                };
                assert_eq!(classify(&GameState::new(n, m)), want);
            }
        }
    }

    #[test]
    fn every_small_game_terminates() {
        for n in 0..=30 {
            for m in 0..=30 {
                let t = game_play(n, m);
                for w in t.windows(2) {
                    let (a, b) = (w[0].heads, w[1].heads);
                    assert!(a.0.max(a.1) > b.0.max(b.1));
                }
            }
        }
    }

    #[test]
    fn formula_contains_hypotheses_and_round_trips() {
        let h = hydra_formula();
        let text = print_formula(&h);
        assert_eq!(parse_formula(&text).unwrap(), h);
        let h_c = parse_formula("(all y (imp (N y) (imp (p (s y) y) (p 0 (s (s y))))))").unwrap();
        assert_eq!(hydra_axioms()[2].1, h_c);
        assert!(text.contains("(and (p 0 0) (and (p (s 0) 0) (p x (s 0))))"));
    }

    #[test]
    fn head_duplication_in_the_model() {
        let run = model_game_run(MElement::nat(2), MElement::zeta(4), 3);
        assert!(!run.won);
        assert_eq!(
            run.states.last().unwrap(),
            &GameState::new(MElement::zeta(-1), MElement::zeta(-2))
        );
        assert!(run.states.iter().all(on_pi));
        assert!(model_game_run(MElement::nat(1), MElement::nat(0), 5).won);
        let run = model_game_run(MElement::zeta(0), MElement::zero(), 50);
        assert!(!run.won && run.states.len() == 51);
        assert!(run.states.iter().all(on_pi));
    }
}
