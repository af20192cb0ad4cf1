mod common;

use common::*;
use indkit::bijections::{PartialBijection, PhiMap, Piece, RaySet};
use indkit::model::{eval_ground, MElement, Ray};
use indkit::qe::*;
use indkit::syntax::{parse_formula, Formula, Term};
use num_rational::BigRational;
use proptest::prelude::*;

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn v(x: &str) -> Term {
    Term::var(x)
}

fn lit(pos: bool, r: &str, a: &str, b: &str) -> Literal {
    Literal::new(pos, r, v(a), v(b))
}

#[test]
fn first_worked_example() {
    let mut env = RelEnv::new();
    for r in ["R1", "R2", "R3"] {
        env.insert(r, PartialBijection::shift(1));
    }
    let lits = [
        lit(true, "R1", "x1", "x4"),
        lit(true, "R2", "x2", "x4"),
        lit(false, "R3", "x3", "x4"),
    ];
    let (out, case) = eliminate_one(&mut env, "x4", &lits).unwrap();
    assert_eq!(
        out.to_string(),
        "(and (rel R1~.R1 x1 x1) (and (rel R1~.R2 x2 x1) (not (rel R1~.R3 x3 x1))))"
    );
    assert_eq!(case, Elimination::Relational { via: "R1".into() });
}

fn second_example_env(r2: PartialBijection) -> RelEnv {
    RelEnv::new()
        .with("R1", PartialBijection::r0())
        .with("R2", r2)
        .with("R3", PartialBijection::shift(1))
}

fn second_example_literals() -> [Literal; 3] {
    [
        lit(true, "R1", "x1", "x3"),
        lit(true, "R2", "x4", "x4"),
        lit(false, "R3", "x3", "x4"),
    ]
}

#[test]
fn second_worked_example_finite_diagonal() {
    // 2x − 1 on ℕ fixes 1; 2x − 3 on the nonnegative ℤ ray fixes 3.
    let half = |r: i64| PhiMap::new(1, BigRational::from_integer(r.into()));
    let r2 = PartialBijection::from_pieces([
        Piece::new(Ray::Nat, Ray::Nat, RaySet::ray(Ray::Nat), half(-1)),
        Piece::new(Ray::ZPos, Ray::ZPos, RaySet::ray(Ray::ZPos), half(-3)),
    ]);
    assert_eq!(
        r2.diagonal().elements().unwrap(),
        vec![MElement::nat(1), MElement::zeta(3)]
    );
    let mut env = second_example_env(r2);
    let (out, case) = eliminate_one(&mut env, "x4", &second_example_literals()).unwrap();
    assert_eq!(
        out.to_string(),
        "(and (rel R1 x1 x3) (or (not (rel idN:0 x3 x3)) (not (rel idZ:2 x3 x3))))"
    );
    assert_eq!(case, Elimination::Finite { values: 2 });
}

#[test]
fn second_worked_example_infinite_diagonal() {
    let mut env = second_example_env(PartialBijection::identity());
    let (out, case) = eliminate_one(&mut env, "x4", &second_example_literals()).unwrap();
    assert_eq!(out.to_string(), "(rel R1 x1 x3)");
    assert_eq!(case, Elimination::Cofinite);
}

#[test]
fn whole_formula_elimination() {
    let mut env = RelEnv::new();
    assert_eq!(
        eliminate_quantifiers(&mut env, &f("(ex x (rel id x x))")).unwrap(),
        Formula::True
    );
    assert_eq!(
        eliminate_quantifiers(&mut env, &f("(ex y (rel r0 x y))"))
            .unwrap()
            .to_string(),
        "(rel r0~.r0 x x)"
    );
    let h = f("(all x (all y (imp (and (N x) (N y)) (p x y))))");
    assert!(!decide_sentence(&h).unwrap());
    assert!(!eval_ground(&f("(p (elemN 0) (elemZ 0))")).unwrap());
}

#[test]
fn constant_elimination_examples() {
    let mut env = RelEnv::new();
    let mut ce = |s: &str| eliminate_constants(&mut env, &f(s)).unwrap().to_string();
    assert_eq!(ce("(rel r0 (elemN 0) (elemZ 0))"), "true");
    assert_eq!(ce("(rel r0 (elemZ 0) x)"), "(rel idN:0 x x)");
    assert_eq!(ce("(rel r0 (elemN 1) (elemN 1))"), "false");
    assert_eq!(ce("(rel r0 x (elemN 3))"), "false");
}

#[test]
fn decisions() {
    for (name, h) in indkit::hydra::hydra_axioms() {
        assert!(decide_sentence(&h).unwrap(), "{name}");
    }
    assert!(!decide_sentence(&indkit::hydra::hydra_formula()).unwrap());
    assert!(decide_sentence(&f("(p (s 0) (s (s (s (s 0)))))")).unwrap());
    let d = decide_traced(&f("(all x (ex y (= y (s x))))")).unwrap();
    assert!(d.value);
    assert_eq!(d.steps.len(), 2);
    assert!(decide_sentence(&f("(p x x)")).is_err());
}

#[test]
fn measures_and_schema() {
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    assert_eq!(RaySet::ray(Ray::Nat).measure(), q(1, 3));
    assert_eq!(RaySet::uniform(1, [0]).measure(), q(1, 2));
    assert_eq!(RaySet::uniform(2, [0]).measure(), q(1, 4));
    assert!(!indkit::bijections::is_dyadic(&RaySet::ray(Ray::Nat).measure()));
    for s in ["(N x)", "(p x x)"] {
        let r = check_induction_schema(&f(s), "x").unwrap();
        assert_eq!(r.measure, q(1, 1));
        assert!(r.dyadic && r.schema_holds);
    }
    let even = definable_set(&f("(ex y (= x (s (s y))))"), "x").unwrap();
    assert_eq!(even.complement().elements().unwrap(), vec![MElement::nat(0), MElement::nat(1)]);
}

#[test]
fn standard_pairs_are_true() {
    for n in 0..=30usize {
        for m in 0..=30usize {
            let t = indkit::hydra::game_play(n as u64, m as u64);
            assert_eq!(
                indkit::hydra::classify(t.last().unwrap()),
                indkit::hydra::Move::Win
            );
            let atom = Formula::p(Term::numeral(n), Term::numeral(m));
            assert!(decide_sentence(&atom).unwrap(), "p({n},{m})");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn one_step_preserves_truth(lits in arb_literals()) {
        prop_assert!(one_step_agrees(&lits).is_ok(), "{:?}", one_step_agrees(&lits));
    }

    #[test]
    fn composition_rewrite_is_valid(
        w1 in proptest::sample::select(WORDS),
        w2 in proptest::sample::select(WORDS),
    ) {
        let comp = RelEnv::compose_name(w2, w1);
        for a in elements(5) {
            for b in elements(5) {
                for c in elements(10) {
                    let env = [("x1".into(), a.clone()), ("x2".into(), b.clone()), ("x3".into(), c.clone())];
                    let r1 = Formula::rel(w1, v("x1"), v("x2"));
                    let lhs = Formula::and(r1.clone(), Formula::rel(w2, v("x2"), v("x3")));
                    let rhs = Formula::and(r1, Formula::rel(&comp, v("x1"), v("x3")));
                    prop_assert_eq!(eval_rel_formula(&lhs, &env), eval_rel_formula(&rhs, &env));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn decisions_are_boolean(
        a in arb_formula(vec!["x".into()], 3),
        b in arb_formula(vec!["x".into()], 3),
    ) {
        let r = boolean_coherent(&Formula::exists("x", a), &Formula::forall("x", b));
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn witnesses_are_found_exactly_when_decided(m in arb_qf(vec!["x".into()], 3)) {
        prop_assert!(witness_sound(&m).is_ok(), "{:?}", witness_sound(&m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn definable_sets_are_uniform_and_dyadic(g in arb_formula(vec!["x".into()], 4)) {
        prop_assert!(schema_holds(&g).is_ok(), "{:?}", schema_holds(&g));
    }
}
