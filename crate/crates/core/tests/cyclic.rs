mod common;

use common::*;
use indkit::corpus::{
    buds_in_order, hydra_graph_without_middle_progress, hydra_proof, hydra_rewired_bud,
    self_loop_proof,
};
use indkit::cyclic::{
    build_trace_graph, check_case_rule, check_cyclic_script, check_gtc, check_gtc_with, Label,
    TraceGraph, TraceRelation,
};
use indkit::par::Mode;
use indkit::syntax::{parse_proof, Formula, InductiveSystem, Rule, Sequent, Term};
use proptest::prelude::*;

fn graph(p: &indkit::syntax::ProofScript) -> TraceGraph {
    build_trace_graph(&p.system, p, &p.axioms).unwrap()
}

fn occurrence(g: &TraceGraph, node: usize, atom: &str) -> u32 {
    g.nodes[node].atoms.iter().position(|a| a == atom).unwrap() as u32
}

#[test]
fn hydra_cycles_carry_the_expected_traces() {
    let p = hydra_proof();
    let g = graph(&p);
    let (x, y) = (occurrence(&g, 0, "(N x)"), occurrence(&g, 0, "(N y)"));
    let want = [
        vec![(x, x), (x, y)],
        vec![(y, x), (y, y)],
        vec![(x, x), (y, y)],
    ];
    for (bud, pairs) in buds_in_order(&p).iter().zip(want) {
        let mut walk: Vec<usize> = p
            .path_from_root(bud)
            .iter()
            .map(|id| g.index_of(id).unwrap())
            .collect();
        walk.push(0);
        let rel = walk_relation(&g, &walk).unwrap();
        for (a, b) in pairs {
            assert!(rel.contains(&(a, b, true)), "bud {bud}: {a}->{b} in {rel:?}");
        }
    }
    assert!(check_gtc(&g).is_accept());
}

#[test]
fn hydra_proof_is_accepted_quickly() {
    let t = std::time::Instant::now();
    let v = check_cyclic_script(&hydra_proof());
    assert!(v.is_accept(), "{v}");
    assert!(t.elapsed().as_secs_f64() < 1.0);
}

#[test]
fn self_loop_is_rejected_with_its_loop() {
    let p = self_loop_proof();
    let g = graph(&p);
    let v = check_gtc(&g);
    assert!(!v.is_accept());
    let lasso = v.lasso.unwrap();
    assert!(lasso_is_genuine(&g, &lasso));
    assert!(brute_force_gtc(&g).is_some());
}

#[test]
fn middle_cycle_without_progress_is_rejected() {
    let g = hydra_graph_without_middle_progress();
    let v = check_gtc(&g);
    assert!(!v.is_accept());
    assert!(lasso_is_genuine(&g, v.lasso.as_ref().unwrap()), "{v}");
    // The three bud cycles are the simple cycles; the middle one fails.
    let p = hydra_proof();
    let failing: Vec<String> = buds_in_order(&p)
        .into_iter()
        .filter(|bud| {
            let cycle: Vec<usize> = p
                .path_from_root(bud)
                .iter()
                .map(|id| g.index_of(id).unwrap())
                .collect();
            !cycle_has_progressing_trace(&g, &cycle)
        })
        .collect();
    assert_eq!(failing, vec![buds_in_order(&p)[1].clone()]);
}

#[test]
fn rewired_bud_is_rejected_locally() {
    let v = check_cyclic_script(&hydra_rewired_bud());
    assert_eq!(v.failing_node.as_deref(), Some(buds_in_order(&hydra_proof())[0].as_str()));
    assert!(v.reason.unwrap().contains("differs from its companion"));
}

#[test]
fn induction_is_not_a_cyclic_rule() {
    let text = indkit::corpus::lemma_le_proof().to_string();
    let v = check_cyclic_script(&parse_proof(&text).unwrap());
    assert!(v.reason.unwrap().contains("induction rule is not part"));
}

fn n(t: Term) -> Formula {
    Formula::n(t)
}

#[test]
fn case_rule_examples() {
    let sys = InductiveSystem::default();
    let (t, x) = (Term::var("t"), Term::var("x"));
    let goal = Formula::p(t.clone(), t.clone());
    let concl = Sequent::new([n(t.clone())], [goal.clone()]);
    let zero = Sequent::new([Formula::eq(t.clone(), Term::Zero)], [goal.clone()]);
    let succ = Sequent::new(
        [Formula::eq(t.clone(), Term::succ(x.clone())), n(x.clone())],
        [goal.clone()],
    );
    let case = |fresh: &str| Rule::Case {
        pred: "N".into(),
        fresh: Some(vec![vec![], vec![fresh.into()]]),
    };
    assert!(check_case_rule(&sys, &concl, &case("x"), &[&zero, &succ]).is_accept());
    assert!(!check_case_rule(&sys, &concl, &case("x"), &[&zero]).is_accept());

    // x already free in Γ
    let concl_x = Sequent::new([n(t.clone()), n(x.clone())], [goal.clone()]);
    let zero_x = zero.clone().with_ante(n(x.clone()));
    let succ_x = succ.clone().with_ante(n(x.clone()));
    let v = check_case_rule(&sys, &concl_x, &case("x"), &[&zero_x, &succ_x]);
    assert!(v.reason.unwrap().contains("fresh variable `x`"));

    // one progress edge N t -> N x, no trace into the t = 0 branch
    let text = format!(
        "(system N)\n(root 0)\n(node 0 {concl} {} (children 1 2))\n\
         (node 1 {zero} (rule axiom) (children))\n(node 2 {succ} (rule axiom) (children))",
        case("x"),
    );
    let p = parse_proof(&text).unwrap();
    let ctx = indkit::lkid::Ctx {
        sys: &sys,
        axioms: &[],
        calculus: indkit::lkid::Calculus::Cyclic,
    };
    let links = indkit::lkid::check_step(
        &ctx,
        &p.node("0").sequent,
        p.node("0").rule.as_ref().unwrap(),
        &[&p.node("1").sequent, &p.node("2").sequent],
    )
    .unwrap();
    let g = indkit::cyclic::trace_graph_from_links(&sys, &p, &[("0".to_string(), links)].into());
    let to_succ = g.edges.iter().find(|e| e.to == 2).unwrap();
    assert_eq!(to_succ.relation, TraceRelation::from_triples([(0, 0, Label::Progress)]));
    assert!(g.edges.iter().find(|e| e.to == 1).unwrap().relation.is_empty());
}

#[test]
fn weakening_relates_surviving_atoms_by_stays() {
    let sys = InductiveSystem::default();
    let (x, y) = (Term::var("x"), Term::var("y"));
    let text = format!(
        "(system N)\n(root 0)\n(node 0 {} (rule wk) (children 1))\n(node 1 {} (rule axiom) (children))",
        Sequent::new([n(x.clone()), n(y.clone()), Formula::p(x.clone(), y.clone())], [Formula::p(x.clone(), y.clone())]),
        Sequent::new([n(y.clone()), Formula::p(x.clone(), y.clone())], [Formula::p(x, y)]),
    );
    let p = parse_proof(&text).unwrap();
    let g = build_trace_graph(&sys, &p, &[]).unwrap();
    assert_eq!(
        g.edges[0].relation,
        TraceRelation::from_triples([(1, 0, Label::Stay)])
    );
}

fn arb_relation() -> impl Strategy<Value = TraceRelation> {
    proptest::collection::vec((0u32..3, 0u32..3, any::<bool>()), 0..6).prop_map(|v| {
        TraceRelation::from_triples(v.into_iter().map(|(a, b, p)| {
            (a, b, if p { Label::Progress } else { Label::Stay })
        }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn composition_is_associative(a in arb_relation(), b in arb_relation(), c in arb_relation()) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
    }

    #[test]
    fn closure_agrees_with_walk_enumeration(g in arb_trace_graph(6)) {
        let v = check_gtc(&g);
        let brute = brute_force_gtc(&g);
        prop_assert_eq!(v.is_accept(), brute.is_none(), "closure {} brute {:?}", v, brute);
        if let Some(l) = &v.lasso {
            prop_assert!(lasso_is_genuine(&g, l));
        }
        prop_assert_eq!(check_gtc_with(&g, Mode::Sequential), v);
    }

    #[test]
    fn removing_progress_never_helps(g in arb_trace_graph(8), pick in any::<prop::sample::Index>()) {
        let tree: Vec<_> = g.edges.iter().filter(|e| !e.back).collect();
        let e = tree[pick.index(tree.len())];
        let weaker = g.strip_progress(&g.nodes[e.from].id, &g.nodes[e.to].id);
        if !check_gtc(&g).is_accept() {
            prop_assert!(!check_gtc(&weaker).is_accept());
        }
    }
}
