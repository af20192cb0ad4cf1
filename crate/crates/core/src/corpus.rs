//! Built-in proofs, assembled goal-first by small tactics.

use std::collections::BTreeSet;

use crate::hydra::hydra_sequent;
use crate::lkid::{gen_induction_obligations, Hypothesis, InductionAnnotation};
use crate::lkid::{case_distinctions, rules::default_case_fresh};
use crate::syntax::{
    fresh_name, Decl, Formula, InductiveSystem, ProofNode, ProofScript, Rule, Sequent, Subst, Term,
};

struct Draft {
    sequent: Sequent,
    rule: Option<Rule>,
    children: Vec<usize>,
    companion: Option<usize>,
}

/// Grows a proof from its root. Every tactic closes one open goal and
/// returns the new open goals; [`ProofBuilder::finish`] numbers the nodes
/// in pre-order.
pub struct ProofBuilder {
    system: InductiveSystem,
    decls: Vec<Decl>,
    nodes: Vec<Draft>,
}

fn var(name: &str) -> Term {
    Term::var(name)
}

impl ProofBuilder {
    pub fn new(decls: Vec<Decl>, system: InductiveSystem, root: Sequent) -> ProofBuilder {
        let mut b = ProofBuilder {
            system,
            decls,
            nodes: Vec::new(),
        };
        b.open(root);
        b
    }

    fn open(&mut self, sequent: Sequent) -> usize {
        self.nodes.push(Draft {
            sequent,
            rule: None,
            children: Vec::new(),
            companion: None,
        });
        self.nodes.len() - 1
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn sequent(&self, id: usize) -> &Sequent {
        &self.nodes[id].sequent
    }

    /// Closes `id` by `rule` with the given premises.
    pub fn apply(&mut self, id: usize, rule: Rule, premises: Vec<Sequent>) -> Vec<usize> {
        assert!(self.nodes[id].rule.is_none(), "goal {id} is already closed");
        let kids: Vec<usize> = premises.into_iter().map(|s| self.open(s)).collect();
        self.nodes[id].rule = Some(rule);
        self.nodes[id].children = kids.clone();
        kids
    }

    fn one(&mut self, id: usize, rule: Rule, premise: Sequent) -> usize {
        self.apply(id, rule, vec![premise])[0]
    }

    pub fn axiom(&mut self, id: usize) {
        self.apply(id, Rule::Axiom, vec![]);
    }

    pub fn bud(&mut self, id: usize, companion: usize) {
        self.nodes[id].companion = Some(companion);
    }

    pub fn wk(&mut self, id: usize, target: Sequent) -> usize {
        self.one(id, Rule::Wk, target)
    }

    /// `(Subst θ)` down to `premise`, whose instance under θ is the goal.
    pub fn subst(&mut self, id: usize, theta: Subst, premise: Sequent) -> usize {
        self.one(id, Rule::Subst(theta), premise)
    }

    pub fn imp_r(&mut self, id: usize, f: &Formula) -> usize {
        let Formula::Imp(a, b) = f else { panic!("not an implication: {f}") };
        let s = self.sequent(id).clone().without_succ(f);
        self.one(id, Rule::ImpR, s.with_ante((**a).clone()).with_succ((**b).clone()))
    }

    /// Returns the goals `Γ ⊢ A, Δ` and `Γ, B ⊢ Δ`.
    pub fn imp_l(&mut self, id: usize, f: &Formula) -> (usize, usize) {
        let Formula::Imp(a, b) = f else { panic!("not an implication: {f}") };
        let s = self.sequent(id).clone().without_ante(f);
        let k = self.apply(
            id,
            Rule::ImpL,
            vec![
                s.clone().with_succ((**a).clone()),
                s.with_ante((**b).clone()),
            ],
        );
        (k[0], k[1])
    }

    pub fn and_l(&mut self, id: usize, f: &Formula) -> usize {
        let Formula::And(a, b) = f else { panic!("not a conjunction: {f}") };
        let s = self.sequent(id).clone().without_ante(f);
        self.one(id, Rule::AndL, s.with_ante((**a).clone()).with_ante((**b).clone()))
    }

    pub fn and_r(&mut self, id: usize, f: &Formula) -> (usize, usize) {
        let Formula::And(a, b) = f else { panic!("not a conjunction: {f}") };
        let s = self.sequent(id).clone().without_succ(f);
        let k = self.apply(
            id,
            Rule::AndR,
            vec![
                s.clone().with_succ((**a).clone()),
                s.with_succ((**b).clone()),
            ],
        );
        (k[0], k[1])
    }

    pub fn not_l(&mut self, id: usize, f: &Formula) -> usize {
        let Formula::Not(a) = f else { panic!("not a negation: {f}") };
        let s = self.sequent(id).clone().without_ante(f);
        self.one(id, Rule::NotL, s.with_succ((**a).clone()))
    }

    /// `(∀L t)`; `keep` retains the quantified formula.
    pub fn all_l(&mut self, id: usize, f: &Formula, t: &Term, keep: bool) -> (usize, Formula) {
        let Formula::Forall(x, body) = f else { panic!("not universal: {f}") };
        let inst = body.subst1(x, t);
        let mut s = self.sequent(id).clone();
        if !keep {
            s = s.without_ante(f);
        }
        (self.one(id, Rule::AllL(t.clone()), s.with_ante(inst.clone())), inst)
    }

    pub fn intro(&mut self, id: usize, pred: &str, index: usize, args: Vec<Term>) -> Vec<usize> {
        let (atom, prems) =
            crate::lkid::intro_instance(&self.system, pred, index, &args).expect("valid intro");
        let s = self.sequent(id).clone().without_succ(&atom);
        let premises = prems.into_iter().map(|q| s.clone().with_succ(q)).collect();
        self.apply(
            id,
            Rule::Intro {
                pred: pred.to_string(),
                index,
                args,
            },
            premises,
        )
    }

    /// `(Case P)` on `atom` with default fresh names; `keep[k]` retains the
    /// principal formula in branch `k`.
    pub fn case(&mut self, id: usize, atom: &Formula, keep: &[bool]) -> Vec<usize> {
        let Formula::Pred(pred, u) = atom else { panic!("not an atom: {atom}") };
        let concl = self.sequent(id).clone();
        let fresh = default_case_fresh(&self.system, pred, u, &concl.free_vars());
        let branches = case_distinctions(&self.system, pred, u, &fresh).expect("case split");
        assert_eq!(branches.len(), keep.len());
        let base = concl.without_ante(atom);
        let premises = branches
            .iter()
            .zip(keep)
            .map(|(b, &k)| {
                let mut s = base.clone();
                s.ante.extend(b.extra.iter().cloned());
                if k {
                    s.ante.insert(atom.clone());
                }
                s
            })
            .collect();
        self.apply(
            id,
            Rule::Case {
                pred: pred.clone(),
                fresh: None,
            },
            premises,
        )
    }

    /// `(=L)` on `x = t` in the antecedent, replacing the variable `x` by
    /// `t` everywhere else in the goal.
    pub fn eq_l(&mut self, id: usize, x: &str, t: &Term) -> usize {
        let eq = Formula::eq(var(x), t.clone());
        let concl = self.sequent(id).clone();
        assert!(concl.ante.contains(&eq), "no {eq} in goal {id}");
        let mut avoid = concl.free_vars();
        let a = fresh_name("a", &avoid);
        avoid.insert(a.clone());
        let b = fresh_name("b", &avoid);
        let to_a: Subst = [(x.to_string(), var(&a))].into();
        let template = concl.without_ante(&eq).subst(&to_a);
        let premise = template.subst(&[(a.clone(), t.clone())].into());
        self.one(
            id,
            Rule::EqL {
                x: a,
                y: b,
                template,
            },
            premise,
        )
    }

    /// Closes `Γ ⊢ A, Δ` where `A` is a conjunction of antecedent formulas.
    pub fn close_conj(&mut self, id: usize, goal: &Formula) {
        match goal {
            Formula::And(_, _) if !self.sequent(id).ante.contains(goal) => {
                let (l, r) = self.and_r(id, goal);
                let Formula::And(a, b) = goal else { unreachable!() };
                self.close_conj(l, a);
                self.close_conj(r, b);
            }
            _ => self.axiom(id),
        }
    }

    /// Splits antecedent conjunctions until the succedent meets the
    /// antecedent.
    pub fn close_by_and_l(&mut self, id: usize) {
        let s = self.sequent(id);
        if s.ante.intersection(&s.succ).next().is_some() {
            return self.axiom(id);
        }
        let f = s
            .ante
            .iter()
            .find(|f| matches!(f, Formula::And(_, _)))
            .expect("a conjunction to split")
            .clone();
        let next = self.and_l(id, &f);
        self.close_by_and_l(next);
    }

    /// Applies the hypothesis `∀x⃗ (G → body)` from the antecedent at the
    /// terms `ts`, discharging the guard `G` by axioms. A body `A → B` with
    /// `B` in the succedent leaves the goal `… ⊢ A, Δ`, which is returned;
    /// a conjunctive body must close the goal outright.
    pub fn use_hyp(&mut self, id: usize, hyp: &Formula, ts: &[Term]) -> Option<usize> {
        let mut cur = id;
        let mut f = hyp.clone();
        for (i, t) in ts.iter().enumerate() {
            let (next, inst) = self.all_l(cur, &f, t, i == 0);
            cur = next;
            f = inst;
        }
        let Formula::Imp(guard, body) = f.clone() else { panic!("unguarded hypothesis {f}") };
        let (g, rest) = self.imp_l(cur, &f);
        self.close_conj(g, &guard);
        match *body {
            Formula::Imp(..) => {
                let (cont, done) = self.imp_l(rest, &body);
                self.axiom(done);
                Some(cont)
            }
            _ => {
                self.close_by_and_l(rest);
                None
            }
        }
    }

    pub fn finish(self) -> ProofScript {
        let mut order = Vec::new();
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            order.push(i);
            stack.extend(self.nodes[i].children.iter().rev());
        }
        assert_eq!(order.len(), self.nodes.len(), "every node hangs off the root");
        let mut ids = vec![String::new(); self.nodes.len()];
        for (k, &i) in order.iter().enumerate() {
            ids[i] = k.to_string();
        }
        let mut script = ProofScript::new(self.decls, self.system);
        script.root = ids[0].clone();
        for (i, d) in self.nodes.into_iter().enumerate() {
            if let Some(c) = d.companion {
                script.buds.insert(ids[i].clone(), ids[c].clone());
            } else {
                assert!(d.rule.is_some(), "goal {i} left open:\n{}", d.sequent);
            }
            script.nodes.insert(
                ids[i].clone(),
                ProofNode {
                    sequent: d.sequent,
                    rule: d.rule,
                    children: d.children.iter().map(|c| ids[*c].clone()).collect(),
                },
            );
        }
        script.validate().expect("built proofs are well formed");
        script
    }
}

fn hat() -> Vec<Formula> {
    crate::hydra::hydra_axioms()
        .into_iter()
        .map(|(_, f)| f)
        .collect()
}

fn hyd(extra: Vec<Formula>, goal: Formula) -> Sequent {
    Sequent::new(hat().into_iter().chain(extra), [goal])
}

fn n(t: Term) -> Formula {
    Formula::n(t)
}

fn s(t: Term) -> Term {
    Term::succ(t)
}

/// The cyclic proof of `Ĥ, N x, N y ⊢ p x y`: three buds, all with the
/// root as companion.
pub fn hydra_proof() -> ProofScript {
    let h = hat();
    let (h_a, h_b, h_c, h_d) = (&h[0], &h[1], &h[2], &h[3]);
    let (x, y) = (var("x"), var("y"));
    let (x1, x2, y1, y2) = (var("x'"), var("x''"), var("y'"), var("y''"));
    let zero = Term::Zero;
    let root_seq = hydra_sequent();
    let mut b = ProofBuilder::new(
        vec![Decl::System(vec!["N".into()])],
        InductiveSystem::default(),
        root_seq.clone(),
    );
    let root = b.root();
    let close_bud = |b: &mut ProofBuilder, id: usize, target: Sequent, theta: Subst| {
        let w = b.wk(id, target.clone());
        let bud = b.subst(w, theta, root_seq.clone());
        debug_assert_eq!(root_seq.subst(&[].into()), root_seq);
        b.bud(bud, 0);
    };

    let top = b.case(root, &n(y.clone()), &[false, false]);

    // y = 0
    let l = b.eq_l(top[0], "y", &zero);
    let l = b.case(l, &n(x.clone()), &[true, false]);
    let l00 = b.eq_l(l[0], "x", &zero);
    b.use_hyp(l00, h_a, std::slice::from_ref(&zero));
    let l1 = b.eq_l(l[1], "x", &s(x1.clone()));
    let l1 = b.case(l1, &n(x1.clone()), &[true, true]);
    let l10 = b.eq_l(l1[0], "x'", &zero);
    b.use_hyp(l10, h_a, std::slice::from_ref(&zero));
    let l11 = b.eq_l(l1[1], "x'", &s(x2.clone()));
    let cont = b.use_hyp(l11, h_d, std::slice::from_ref(&x2)).expect("H_d leaves a goal");
    close_bud(
        &mut b,
        cont,
        hyd(vec![n(s(x2.clone())), n(x2.clone())], Formula::p(s(x2.clone()), x2.clone())),
        [("x".into(), s(x2.clone())), ("y".into(), x2.clone())].into(),
    );

    // y = s y'
    let r = b.eq_l(top[1], "y", &s(y1.clone()));
    let r = b.case(r, &n(y1.clone()), &[true, true]);
    let r0 = b.eq_l(r[0], "y'", &zero);
    b.use_hyp(r0, h_a, std::slice::from_ref(&x));
    let r1 = b.eq_l(r[1], "y'", &s(y2.clone()));
    let r1 = b.case(r1, &n(x.clone()), &[false, false]);
    let r10 = b.eq_l(r1[0], "x", &zero);
    let cont = b.use_hyp(r10, h_c, std::slice::from_ref(&y2)).expect("H_c leaves a goal");
    close_bud(
        &mut b,
        cont,
        hyd(vec![n(s(y2.clone())), n(y2.clone())], Formula::p(s(y2.clone()), y2.clone())),
        [("x".into(), s(y2.clone())), ("y".into(), y2.clone())].into(),
    );
    let r11 = b.eq_l(r1[1], "x", &s(x1.clone()));
    let cont = b
        .use_hyp(r11, h_b, &[x1.clone(), y2.clone()])
        .expect("H_b leaves a goal");
    close_bud(
        &mut b,
        cont,
        hyd(vec![n(x1.clone()), n(y2.clone())], Formula::p(x1.clone(), y2.clone())),
        [("x".into(), x1.clone()), ("y".into(), y2.clone())].into(),
    );
    b.finish()
}

/// The 0-axiom `∀x ∈ N. ¬(s x = 0)`.
pub fn zero_axiom() -> Formula {
    Formula::forall_in_n(&["x"], Formula::not(Formula::eq(s(var("x")), Term::Zero)))
}

/// Induction hypothesis `N z1 → (N z2 ∧ (z2 = 0 → z1 = 0))` for `le z1 z2`.
pub fn lemma_le_hypothesis() -> Hypothesis {
    let (z1, z2) = (var("z1"), var("z2"));
    Hypothesis {
        pred: "le".into(),
        vars: vec!["z1".into(), "z2".into()],
        formula: Formula::imp(
            n(z1.clone()),
            Formula::and(
                n(z2.clone()),
                Formula::imp(Formula::eq(z2, Term::Zero), Formula::eq(z1, Term::Zero)),
            ),
        ),
    }
}

pub fn lemma_le_sequent() -> Sequent {
    let (x, y) = (var("x"), var("y"));
    Sequent::new(
        [
            zero_axiom(),
            n(x.clone()),
            n(y.clone()),
            Formula::pred("le", vec![x.clone(), y.clone()]),
        ],
        [Formula::imp(
            Formula::eq(y, Term::Zero),
            Formula::eq(x, Term::Zero),
        )],
    )
}

fn split_hyp(f: &Formula) -> (Formula, Formula, Formula) {
    // N a → (N b ∧ E)
    let Formula::Imp(na, rest) = f else { panic!("hypothesis shape") };
    let Formula::And(nb, e) = &**rest else { panic!("hypothesis shape") };
    ((**na).clone(), (**nb).clone(), (**e).clone())
}

/// LKID proof of `0-axiom, N x, N y, x ≤ y ⊢ y = 0 → x = 0` by induction
/// on `x ≤ y`.
pub fn lemma_le_proof() -> ProofScript {
    let sys = InductiveSystem::with_le();
    let concl = lemma_le_sequent();
    let mut b = ProofBuilder::new(
        vec![Decl::System(vec!["N".into(), "le".into()])],
        sys.clone(),
        concl.clone(),
    );
    let ann = InductionAnnotation {
        target: "le".into(),
        hyps: vec![lemma_le_hypothesis()],
    };
    let (x, y) = (var("x"), var("y"));
    let le = Formula::pred("le", vec![x.clone(), y.clone()]);
    let gamma: Vec<Formula> = concl.ante.iter().filter(|f| **f != le).cloned().collect();
    let delta: Vec<Formula> = concl.succ.iter().cloned().collect();
    let (minors, major) =
        gen_induction_obligations(&sys, &ann, &gamma, &delta, &[x, y]).expect("obligations");
    let goals = b.apply(
        b.root(),
        Rule::Ind {
            ann: ann.clone(),
            fresh: None,
        },
        minors.iter().cloned().chain([major.clone()]).collect(),
    );
    let hyp_in = |s: &Sequent, known: &BTreeSet<Formula>| {
        s.ante
            .iter()
            .find(|f| !known.contains(*f) && matches!(f, Formula::Imp(..)))
            .cloned()
    };
    let base: BTreeSet<Formula> = concl.ante.clone();
    let new_succ = |s: &Sequent| {
        s.succ
            .iter()
            .find(|f| !concl.succ.contains(*f))
            .cloned()
            .expect("instantiated hypothesis in succedent")
    };

    // x ≤ x: ⊢ N z → (N z ∧ (z = 0 → z = 0))
    let g = goals[0];
    let f = new_succ(b.sequent(g));
    let g = b.imp_r(g, &f);
    let Formula::Imp(_, conj) = &f else { unreachable!() };
    let (l, r) = b.and_r(g, conj);
    b.axiom(l);
    let Formula::And(_, e) = &**conj else { unreachable!() };
    let r = b.imp_r(r, e);
    b.axiom(r);

    // x ≤ y ⟹ x ≤ s y
    let g = goals[1];
    let ih = hyp_in(b.sequent(g), &base).expect("hypothesis instance");
    let f = new_succ(b.sequent(g));
    let g = b.imp_r(g, &f);
    let (_, nb, _) = split_hyp(&ih);
    let Formula::Pred(_, nb_args) = &nb else { unreachable!() };
    let z2 = nb_args[0].clone();
    let (guard, g) = b.imp_l(g, &ih);
    b.axiom(guard);
    let Formula::Imp(_, ih_body) = &ih else { unreachable!() };
    let g = b.and_l(g, ih_body);
    let Formula::Imp(_, goal) = &f else { unreachable!() };
    let (l, r) = b.and_r(g, goal);
    let l = b.intro(l, "N", 1, vec![z2.clone()]);
    b.axiom(l[0]);
    let Formula::And(_, e) = &**goal else { unreachable!() };
    let r = b.imp_r(r, e);
    let (next, inst) = b.all_l(r, &zero_axiom(), &z2, true);
    let Formula::Imp(_, neg) = &inst else { unreachable!() };
    let (guard, g) = b.imp_l(next, &inst);
    b.axiom(guard);
    let g = b.not_l(g, neg);
    b.axiom(g);

    // major: N x → (N y ∧ (y = 0 → x = 0)) ⊢ y = 0 → x = 0
    let g = goals[2];
    let ih = hyp_in(b.sequent(g), &base).expect("hypothesis instance");
    let (guard, g) = b.imp_l(g, &ih);
    b.axiom(guard);
    let Formula::Imp(_, body) = &ih else { unreachable!() };
    let g = b.and_l(g, body);
    b.axiom(g);
    b.finish()
}

/// The Lemma proof without its major premise: the induction node keeps
/// only its minor premises.
pub fn lemma_le_without_major() -> ProofScript {
    let mut script = lemma_le_proof();
    let root = script.root.clone();
    let major = script.nodes[&root].children.last().cloned().expect("major");
    let mut drop = vec![major];
    while let Some(id) = drop.pop() {
        if let Some(n) = script.nodes.remove(&id) {
            drop.extend(n.children);
        }
        script.buds.remove(&id);
    }
    script.nodes.get_mut(&root).expect("root").children.pop();
    script
}

/// Shipped corpus files, relative to the corpus directory.
pub fn corpus_files() -> Vec<(&'static str, ProofScript)> {
    vec![
        ("clkid/hydra.proof", hydra_proof()),
        ("lkid/lemma_le_zero.proof", lemma_le_proof()),
    ]
}

/// Buds of a script in pre-order.
pub fn buds_in_order(script: &ProofScript) -> Vec<String> {
    script
        .preorder()
        .into_iter()
        .filter(|id| script.is_bud(id))
        .map(str::to_string)
        .collect()
}

/// Root `N x ⊢ p x x` closed by an identity substitution onto a bud whose
/// companion is the root: a cycle with no progress.
pub fn self_loop_proof() -> ProofScript {
    let x = var("x");
    let root = Sequent::new([n(x.clone())], [Formula::p(x.clone(), x)]);
    let mut b = ProofBuilder::new(
        vec![Decl::System(vec!["N".into()])],
        InductiveSystem::default(),
        root.clone(),
    );
    let bud = b.subst(b.root(), Subst::new(), root);
    b.bud(bud, 0);
    b.finish()
}

/// The Hydra proof with its first bud pointing at the root's first
/// premise, whose sequent differs.
pub fn hydra_rewired_bud() -> ProofScript {
    let mut p = hydra_proof();
    let bud = buds_in_order(&p)[0].clone();
    let target = p.nodes[&p.root].children[0].clone();
    p.buds.insert(bud, target);
    p
}

/// The Hydra trace graph with progress removed from every tree edge on
/// the way to the middle bud.
pub fn hydra_graph_without_middle_progress() -> crate::cyclic::TraceGraph {
    let p = hydra_proof();
    let mut g = crate::cyclic::build_trace_graph(&p.system, &p, &p.axioms)
        .expect("hydra proof checks locally");
    let middle = buds_in_order(&p)[1].clone();
    for w in p.path_from_root(&middle).windows(2) {
        g = g.strip_progress(&w[0], &w[1]);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::check_cyclic_script;
    use crate::lkid::check_lkid_script;

    #[test]
    fn hydra_proof_is_accepted() {
        let p = hydra_proof();
        assert_eq!(p.buds.len(), 3);
        assert!(p.buds.values().all(|c| *c == p.root));
        let v = check_cyclic_script(&p);
        assert!(v.is_accept(), "{v}");
    }

    #[test]
    fn lemma_proof_is_accepted() {
        let v = check_lkid_script(&lemma_le_proof());
        assert!(v.is_accept(), "{v}");
        assert!(!check_lkid_script(&lemma_le_without_major()).is_accept());
    }

    #[test]
    fn mutants_are_rejected() {
        let v = check_cyclic_script(&self_loop_proof());
        assert!(!v.is_accept());
        assert_eq!(v.lasso.as_ref().unwrap().cycle.len(), 2);
        let v = crate::cyclic::check_gtc(&hydra_graph_without_middle_progress());
        assert!(!v.is_accept(), "{v}");
        let v = check_cyclic_script(&hydra_rewired_bud());
        assert!(v.reason.unwrap().contains("differs from its companion"));
    }

    #[test]
    fn scripts_round_trip_through_text() {
        for (_, p) in corpus_files() {
            let text = p.to_string();
            assert_eq!(crate::syntax::parse_proof(&text).unwrap(), p);
        }
    }
}
