//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use indkit::cyclic::{Label, TraceGraph, TraceRelation};
use indkit::model::{eval_ground, r0_apply, window, MElement};
use indkit::qe::{
    check_induction_schema, decide_sentence, definable_set, eliminate_one, Literal, RelEnv,
};
use indkit::syntax::{Formula, Term};
use indkit::verdict::Lasso;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use proptest::prelude::*;

// ---------------------------------------------------------------------
// Global trace condition by path enumeration.

/// Occurrence pairs reachable along `walk` (node indices, closed or not),
/// with whether some trace between them passes a progress point.
/// Computed edge by edge without the library's composition.
pub fn walk_relation(g: &TraceGraph, walk: &[usize]) -> Option<BTreeSet<(u32, u32, bool)>> {
    let n0 = g.nodes[walk[0]].atoms.len() as u32;
    let mut cur: BTreeSet<(u32, u32, bool)> = (0..n0).map(|o| (o, o, false)).collect();
    for w in walk.windows(2) {
        let e = g.edges.iter().find(|e| e.from == w[0] && e.to == w[1])?;
        let mut next = BTreeSet::new();
        for &(a, b, p) in &cur {
            for &(c, d, l) in e.relation.triples() {
                if c == b {
                    next.insert((a, d, p || l == Label::Progress));
                }
            }
        }
        cur = next;
    }
    Some(cur)
}

/// Whether going round the closed walk `cycle` repeatedly carries a trace
/// that progresses infinitely often: some occurrence returns to itself
/// with progress within `k ≤ occurrences + 1` rounds.
pub fn cycle_has_progressing_trace(g: &TraceGraph, cycle: &[usize]) -> bool {
    let mut closed = cycle.to_vec();
    closed.push(cycle[0]);
    let Some(once) = walk_relation(g, &closed) else {
        return false;
    };
    let occ = g.nodes[cycle[0]].atoms.len() as u32;
    // reach[k] = pairs reachable in k rounds.
    let mut reach = once.clone();
    for _ in 0..=occ {
        if reach.iter().any(|&(a, b, p)| a == b && p) {
            return true;
        }
        let mut next = BTreeSet::new();
        for &(a, b, p) in &reach {
            for &(c, d, q) in &once {
                if c == b {
                    next.insert((a, d, p || q));
                }
            }
        }
        reach = next;
    }
    false
}

/// All closed walks of at most `max_len` edges, each reported once from
/// its first node.
pub fn closed_walks(g: &TraceGraph, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for start in 0..g.nodes.len() {
        let mut stack = vec![vec![start]];
        while let Some(path) = stack.pop() {
            let last = *path.last().unwrap();
            for e in g.edges.iter().filter(|e| e.from == last) {
                if e.to == start {
                    out.push(path.clone());
                }
                if path.len() < max_len {
                    let mut p = path.clone();
                    p.push(e.to);
                    stack.push(p);
                }
            }
        }
    }
    out
}

/// Rejects iff some closed walk of at most `3·|nodes|` edges has no
/// infinitely progressing trace.
pub fn brute_force_gtc(g: &TraceGraph) -> Option<Vec<usize>> {
    closed_walks(g, 3 * g.nodes.len())
        .into_iter()
        .find(|w| !cycle_has_progressing_trace(g, w))
}

/// A certificate is genuine when its prefix is the tree path to the cycle
/// and the cycle is a closed walk with no infinitely progressing trace.
pub fn lasso_is_genuine(g: &TraceGraph, lasso: &Lasso) -> bool {
    let idx = |id: &String| g.index_of(id);
    let Some(cycle) = lasso.cycle.iter().map(idx).collect::<Option<Vec<_>>>() else {
        return false;
    };
    if cycle.is_empty() {
        return false;
    }
    let mut path = g.root_path(cycle[0]);
    path.pop();
    if path != lasso.prefix {
        return false;
    }
    let mut closed = cycle.clone();
    closed.push(cycle[0]);
    walk_relation(g, &closed).is_some() && !cycle_has_progressing_trace(g, &cycle)
}

/// Random trace graphs shaped like pre-proofs: a tree plus back edges from
/// leaves to ancestors with equal occurrence counts.
pub fn arb_trace_graph(max_nodes: usize) -> impl Strategy<Value = TraceGraph> {
    (2..=max_nodes)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(any::<u64>(), n),
                proptest::collection::vec(0u32..=2, n),
                proptest::collection::vec(any::<u64>(), 4 * n),
            )
        })
        .prop_map(|(n, parent_seeds, occ, label_seeds)| {
            use indkit::cyclic::{GraphEdge, GraphNode};
            let parent: Vec<Option<usize>> = (0..n)
                .map(|i| (i > 0).then(|| (parent_seeds[i] % i as u64) as usize))
                .collect();
            let mut occ = occ;
            let is_leaf = |i: usize| !parent.contains(&Some(i));
            let mut back = Vec::new();
            for i in 0..n {
                if is_leaf(i) && parent_seeds[i] % 3 != 0 {
                    let mut anc = vec![];
                    let mut cur = parent[i];
                    while let Some(p) = cur {
                        anc.push(p);
                        cur = parent[p];
                    }
                    if !anc.is_empty() {
                        let target = anc[(parent_seeds[i] / 3) as usize % anc.len()];
                        occ[i] = occ[target];
                        back.push((i, target));
                    }
                }
            }
            let mut seed = label_seeds.into_iter().cycle();
            let mut edges = Vec::new();
            for (i, p) in parent.iter().enumerate() {
                if let Some(p) = *p {
                    let mut triples = Vec::new();
                    for a in 0..occ[p] {
                        for b in 0..occ[i] {
                            match seed.next().unwrap() % 4 {
                                0 => triples.push((a, b, Label::Stay)),
                                1 => triples.push((a, b, Label::Progress)),
                                _ => {}
                            }
                        }
                    }
                    edges.push(GraphEdge {
                        from: p,
                        to: i,
                        back: false,
                        relation: TraceRelation::from_triples(triples),
                    });
                }
            }
            for (i, t) in back {
                edges.push(GraphEdge {
                    from: i,
                    to: t,
                    back: true,
                    relation: TraceRelation::identity(occ[i]),
                });
            }
            let nodes = (0..n)
                .map(|i| GraphNode {
                    id: i.to_string(),
                    atoms: (0..occ[i]).map(|o| format!("a{o}")).collect(),
                    parent: parent[i],
                })
                .collect();
            TraceGraph { nodes, edges }
        })
}

// ---------------------------------------------------------------------
// Element-level semantics of relation words.

fn half(n: &BigInt) -> Option<BigInt> {
    n.is_even().then(|| n / 2)
}

/// `r0⁻¹`, read off the definition of `r0` ray by ray.
fn r0_inverse(e: &MElement) -> Option<MElement> {
    match e.line {
        indkit::model::Line::Nat => half(&e.index).map(MElement::zeta),
        indkit::model::Line::Zeta => {
            let h = half(&e.index)?;
            if e.index.is_negative() {
                Some(MElement::zeta(h))
            } else {
                Some(MElement::nat(h))
            }
        }
    }
}

fn apply_letter(letter: &str, e: &MElement) -> Option<MElement> {
    let (base, inv) = match letter.strip_suffix('~') {
        Some(b) => (b, true),
        None => (letter, false),
    };
    match base {
        "id" => Some(e.clone()),
        "r0" if inv => r0_inverse(e),
        "r0" => Some(r0_apply(e)),
        _ => {
            if let Some(n) = base.strip_prefix("s+") {
                let n: i64 = n.parse().unwrap();
                e.offset(if inv { -n } else { n })
            } else if let Some(k) = base.strip_prefix("idN:") {
                (*e == MElement::nat(k.parse::<i64>().unwrap())).then(|| e.clone())
            } else if let Some(k) = base.strip_prefix("idZ:") {
                (*e == MElement::zeta(k.parse::<i64>().unwrap())).then(|| e.clone())
            } else {
                panic!("no oracle semantics for `{letter}`")
            }
        }
    }
}

/// `w(e)` for a word `A.B.C`, applying `C` first.
pub fn apply_word(word: &str, e: &MElement) -> Option<MElement> {
    word.split('.')
        .rev()
        .try_fold(e.clone(), |acc, l| apply_letter(l, &acc))
}

fn term_value(t: &Term, env: &[(String, MElement)]) -> MElement {
    match t {
        Term::Elem(e) => e.clone(),
        Term::Var(v) => env
            .iter()
            .rev()
            .find(|(n, _)| n == v)
            .unwrap_or_else(|| panic!("unbound {v}"))
            .1
            .clone(),
        other => indkit::model::eval_term(other).expect("ground term"),
    }
}

/// Truth of a quantifier-free formula over relation words under `env`.
pub fn eval_rel_formula(f: &Formula, env: &[(String, MElement)]) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Rel(w, a, b) => {
            apply_word(w, &term_value(a, env)).as_ref() == Some(&term_value(b, env))
        }
        Formula::Eq(a, b) => term_value(a, env) == term_value(b, env),
        Formula::Not(g) => !eval_rel_formula(g, env),
        Formula::And(a, b) => eval_rel_formula(a, env) && eval_rel_formula(b, env),
        Formula::Or(a, b) => eval_rel_formula(a, env) || eval_rel_formula(b, env),
        Formula::Imp(a, b) => !eval_rel_formula(a, env) || eval_rel_formula(b, env),
        _ => panic!("not quantifier-free: {f}"),
    }
}

/// Window radius `3·2^a + e`, scaled by `INDKIT_WINDOW` (default 1).
pub fn oracle_radius(log2_modulus: u32, exceptions: u64) -> u64 {
    let scale: u64 = std::env::var("INDKIT_WINDOW")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    scale * (3 * (1u64 << log2_modulus) + exceptions)
}

pub fn elements(radius: u64) -> Vec<MElement> {
    window(radius)
}

// ---------------------------------------------------------------------
// Random formulas over {0, s, N, p, =}.

pub fn arb_term(vars: Vec<String>) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::Zero),
        proptest::sample::select(vars).prop_map(|v| Term::var(&v)),
    ];
    (leaf, 0usize..=2).prop_map(|(t, k)| Term::succ_n(t, k))
}

fn arb_atom(vars: Vec<String>) -> impl Strategy<Value = Formula> {
    prop_oneof![
        1 => arb_term(vars.clone()).prop_map(Formula::n),
        3 => (arb_term(vars.clone()), arb_term(vars.clone())).prop_map(|(a, b)| Formula::p(a, b)),
        3 => (arb_term(vars.clone()), arb_term(vars)).prop_map(|(a, b)| Formula::eq(a, b)),
    ]
}

/// Quantifier-free formulas over `vars`, connective depth at most `depth`.
pub fn arb_qf(vars: Vec<String>, depth: u32) -> BoxedStrategy<Formula> {
    let atom = arb_atom(vars.clone()).boxed();
    if depth == 0 {
        return atom;
    }
    let sub = arb_qf(vars, depth - 1);
    prop_oneof![
        2 => atom,
        1 => sub.clone().prop_map(Formula::not),
        1 => (sub.clone(), sub.clone()).prop_map(|(a, b)| Formula::and(a, b)),
        1 => (sub.clone(), sub.clone()).prop_map(|(a, b)| Formula::or(a, b)),
        1 => (sub.clone(), sub).prop_map(|(a, b)| Formula::imp(a, b)),
    ]
    .boxed()
}

/// Formulas whose free variables lie in `vars`, with quantifiers binding
/// `y` and `z`; depth counts connectives and quantifiers.
pub fn arb_formula(vars: Vec<String>, depth: u32) -> BoxedStrategy<Formula> {
    let atom = arb_atom(vars.clone()).boxed();
    if depth == 0 {
        return atom;
    }
    let sub = arb_formula(vars.clone(), depth - 1);
    let bound: Vec<&str> = ["y", "z"]
        .into_iter()
        .filter(|b| !vars.iter().any(|v| v == b))
        .collect();
    let mut choices: Vec<(u32, BoxedStrategy<Formula>)> = vec![
        (2, atom),
        (1, sub.clone().prop_map(Formula::not).boxed()),
        (1, (sub.clone(), sub.clone()).prop_map(|(a, b)| Formula::and(a, b)).boxed()),
        (1, (sub.clone(), sub).prop_map(|(a, b)| Formula::or(a, b)).boxed()),
    ];
    if let Some(b) = bound.first() {
        let mut inner = vars.clone();
        inner.push(b.to_string());
        let b = b.to_string();
        let body = arb_formula(inner, depth - 1);
        let b2 = b.clone();
        choices.push((1, body.clone().prop_map(move |f| Formula::exists(&b, f)).boxed()));
        choices.push((1, body.prop_map(move |f| Formula::forall(&b2, f)).boxed()));
    }
    proptest::strategy::Union::new_weighted(choices).boxed()
}

// ---------------------------------------------------------------------
// One elimination step against brute-force search for the witness.

pub const WORDS: &[&str] = &[
    "id", "r0", "r0~", "s+1", "s+2", "s+1~", "r0.s+1", "s+1.r0~", "idN:1", "idZ:-1",
];

/// Inverse word: letters reversed, each inverted.
pub fn inverse_word(w: &str) -> String {
    w.split('.')
        .rev()
        .map(|l| match l.strip_suffix('~') {
            Some(b) => b.to_string(),
            None => format!("{l}~"),
        })
        .collect::<Vec<_>>()
        .join(".")
}

fn arb_arg() -> impl Strategy<Value = Term> {
    prop_oneof![
        4 => proptest::sample::select(vec!["x1", "x2", "x"]).prop_map(Term::var),
        1 => proptest::sample::select(vec![
            MElement::nat(0), MElement::nat(2), MElement::zeta(-1), MElement::zeta(3)
        ]).prop_map(Term::Elem),
    ]
}

/// Conjunctions of 1 to 4 relation literals over `x1`, `x2`, `x` and constants.
pub fn arb_literals() -> impl Strategy<Value = Vec<Literal>> {
    proptest::collection::vec(
        (any::<bool>(), proptest::sample::select(WORDS), arb_arg(), arb_arg()),
        1..5,
    )
    .prop_map(|v| {
        v.into_iter()
            .map(|(p, w, a, b)| Literal::new(p, w, a, b))
            .collect()
    })
}

fn lookup(t: &Term, asg: &[(String, MElement)]) -> Option<MElement> {
    match t {
        Term::Elem(e) => Some(e.clone()),
        Term::Var(x) => asg.iter().find(|(n, _)| n == x).map(|(_, e)| e.clone()),
        _ => None,
    }
}

/// Compares `∃x ⋀lits` with one elimination step for all `x1, x2` in a small
/// window. Witnesses are searched in a window wide enough for every diagonal
/// plus every value forced by a positive literal.
pub fn one_step_agrees(lits: &[Literal]) -> Result<(), String> {
    let mut env = RelEnv::new();
    let (post, _) = eliminate_one(&mut env, "x", lits).map_err(|e| e.to_string())?;
    let (mut a, mut e) = (0, 0);
    for l in lits {
        let d = env.get(&l.rel).map_err(|e| e.to_string())?.diagonal();
        a = a.max(d.log2_modulus());
        e = e.max(d.exception_bound());
    }
    let base = elements(oracle_radius(a, e + 6));
    let small = elements(4);
    for e1 in &small {
        for e2 in &small {
            let asg = vec![("x1".to_string(), e1.clone()), ("x2".to_string(), e2.clone())];
            let mut candidates = base.clone();
            for l in lits.iter().filter(|l| l.positive) {
                let x = Term::var("x");
                if l.b == x {
                    if let Some(src) = lookup(&l.a, &asg) {
                        candidates.extend(apply_word(&l.rel, &src));
                    }
                }
                if l.a == x {
                    if let Some(dst) = lookup(&l.b, &asg) {
                        candidates.extend(apply_word(&inverse_word(&l.rel), &dst));
                    }
                }
            }
            let pre = candidates.iter().any(|c| {
                let mut full = asg.clone();
                full.push(("x".to_string(), c.clone()));
                lits.iter().all(|l| eval_rel_formula(&l.to_formula(), &full))
            });
            if pre != eval_rel_formula(&post, &asg) {
                return Err(format!("x1={e1} x2={e2}: pre {pre}, post {post}"));
            }
        }
    }
    Ok(())
}

/// Decisions of closed `A`, `B` commute with ¬, ∧, ∨.
pub fn boolean_coherent(a: &Formula, b: &Formula) -> Result<(), String> {
    let d = |f: &Formula| decide_sentence(f).map_err(|e| format!("{f}: {e}"));
    let (da, db) = (d(a)?, d(b)?);
    let checks = [
        (Formula::not(a.clone()), !da),
        (Formula::and(a.clone(), b.clone()), da && db),
        (Formula::or(a.clone(), b.clone()), da || db),
        (Formula::imp(a.clone(), b.clone()), !da || db),
    ];
    for (f, want) in checks {
        if d(&f)? != want {
            return Err(format!("{f} should be {want}"));
        }
    }
    Ok(())
}

/// For quantifier-free `m(x)`: the definable set matches ground evaluation on
/// a window covering its period and exceptions, and `∃x m` is decided true
/// exactly when that window holds a witness.
pub fn witness_sound(m: &Formula) -> Result<(), String> {
    let set = definable_set(m, "x").map_err(|e| e.to_string())?;
    let radius = oracle_radius(set.log2_modulus(), set.exception_bound());
    let mut found = false;
    for e in elements(radius) {
        let t = eval_ground(&m.subst1("x", &Term::Elem(e.clone()))).map_err(|e| e.to_string())?;
        if set.contains(&e) != t {
            return Err(format!("{m} at {e}: set says {}", !t));
        }
        found |= t;
    }
    let decided = decide_sentence(&Formula::exists("x", m.clone())).map_err(|e| e.to_string())?;
    if decided != found {
        return Err(format!("ex x {m}: decided {decided}, witness search {found}"));
    }
    Ok(())
}

/// The definable set of `g(x)` is uniform with dyadic measure and the
/// induction schema holds for it.
pub fn schema_holds(g: &Formula) -> Result<(), String> {
    let r = check_induction_schema(g, "x").map_err(|e| format!("{g}: {e}"))?;
    if !r.set.is_uniform() {
        return Err(format!("{g}: not uniform: {}", r.set));
    }
    if !r.dyadic {
        return Err(format!("{g}: measure {} not dyadic", r.measure));
    }
    if !r.schema_holds {
        return Err(format!("{g}: schema fails"));
    }
    Ok(())
}
