//! Cyclic proofs: trace graphs and the global trace condition.

mod gtc;
pub mod trace;

use std::collections::BTreeMap;

use serde::Serialize;

pub use gtc::{check_gtc, check_gtc_with, closure, PathSummary};
pub use trace::{Label, TraceRelation};

use crate::lkid::{check_local, check_step, Calculus, Ctx, StepLinks};
use crate::syntax::{Formula, InductiveSystem, ProofScript, Rule, Sequent};
use crate::verdict::Verdict;

#[derive(Clone, Debug, Serialize)]
pub struct GraphNode {
    pub id: String,
    /// Inductive antecedent atoms in sequent order; a trace occurrence is an
    /// index into this list.
    pub atoms: Vec<String>,
    pub parent: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    /// Bud to companion.
    pub back: bool,
    pub relation: TraceRelation,
}

/// Nodes in pre-order (the root is node 0) with tree edges from each
/// conclusion to its premises and back edges from buds to companions.
#[derive(Clone, Debug, Serialize)]
pub struct TraceGraph {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

impl TraceGraph {
    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    /// Node ids from the root down to `i`, both included.
    pub fn root_path(&self, i: usize) -> Vec<String> {
        let mut out = vec![self.nodes[i].id.clone()];
        let mut cur = i;
        while let Some(p) = self.nodes[cur].parent {
            out.push(self.nodes[p].id.clone());
            cur = p;
        }
        out.reverse();
        out
    }

    /// The graph with progress removed from the tree edge `from -> to`.
    pub fn strip_progress(&self, from: &str, to: &str) -> TraceGraph {
        let (f, t) = (self.index_of(from), self.index_of(to));
        let mut g = self.clone();
        for e in &mut g.edges {
            if Some(e.from) == f && Some(e.to) == t {
                e.relation = e.relation.without_progress();
            }
        }
        g
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace graphs serialize")
    }
}

fn inductive_atoms<'a>(sys: &InductiveSystem, s: &'a Sequent) -> Vec<&'a Formula> {
    s.ante.iter().filter(|f| sys.is_inductive_atom(f)).collect()
}

/// Assembles the trace graph from the links produced by the local check.
pub fn trace_graph_from_links(
    sys: &InductiveSystem,
    script: &ProofScript,
    links: &StepLinks,
) -> TraceGraph {
    let order = script.preorder();
    let index: BTreeMap<&str, usize> = order.iter().enumerate().map(|(i, id)| (*id, i)).collect();
    let parents = script.parents();
    let atoms: Vec<Vec<&Formula>> = order
        .iter()
        .map(|id| inductive_atoms(sys, &script.node(id).sequent))
        .collect();
    let nodes = order
        .iter()
        .enumerate()
        .map(|(i, id)| GraphNode {
            id: id.to_string(),
            atoms: atoms[i].iter().map(|f| f.to_string()).collect(),
            parent: parents.get(id).map(|p| index[p]),
        })
        .collect();
    let mut edges = Vec::new();
    for (i, id) in order.iter().enumerate() {
        if let Some(comp) = script.buds.get(*id) {
            let n = atoms[i].len() as u32;
            edges.push(GraphEdge {
                from: i,
                to: index[comp.as_str()],
                back: true,
                relation: TraceRelation::identity(n),
            });
            continue;
        }
        let node = script.node(id);
        let Some(step) = links.get(*id) else { continue };
        for (k, child) in node.children.iter().enumerate() {
            let j = index[child.as_str()];
            let pos = |list: &[&Formula], f: &Formula| list.iter().position(|g| *g == f);
            let triples = step.get(k).into_iter().flatten().filter_map(|l| {
                let a = pos(&atoms[i], &l.from)?;
                let b = pos(&atoms[j], &l.to)?;
                let label = if l.progress { Label::Progress } else { Label::Stay };
                Some((a as u32, b as u32, label))
            });
            edges.push(GraphEdge {
                from: i,
                to: j,
                back: false,
                relation: TraceRelation::from_triples(triples),
            });
        }
    }
    TraceGraph { nodes, edges }
}

/// Locally checks a cyclic script and builds its trace graph.
pub fn build_trace_graph(
    sys: &InductiveSystem,
    script: &ProofScript,
    axioms: &[(String, Formula)],
) -> Result<TraceGraph, Verdict> {
    let ctx = Ctx {
        sys,
        axioms,
        calculus: Calculus::Cyclic,
    };
    let links = check_local(&ctx, script)?;
    Ok(trace_graph_from_links(sys, script, &links))
}

/// Checks a single `(Case P)` inference.
pub fn check_case_rule(
    sys: &InductiveSystem,
    concl: &Sequent,
    rule: &Rule,
    children: &[&Sequent],
) -> Verdict {
    if !matches!(rule, Rule::Case { .. }) {
        return Verdict::rejected(format!("expected a case rule, found `{}`", rule.name()));
    }
    let ctx = Ctx {
        sys,
        axioms: &[],
        calculus: Calculus::Cyclic,
    };
    match check_step(&ctx, concl, rule, children) {
        Ok(_) => Verdict::accept(),
        Err(r) => Verdict::rejected(r),
    }
}

/// Local soundness of every inference, then the global trace condition.
pub fn check_cyclic_proof(
    sys: &InductiveSystem,
    script: &ProofScript,
    axioms: &[(String, Formula)],
) -> Verdict {
    match build_trace_graph(sys, script, axioms) {
        Ok(g) => check_gtc(&g),
        Err(v) => v,
    }
}

/// [`check_cyclic_proof`] against the script's own system and axioms.
pub fn check_cyclic_script(script: &ProofScript) -> Verdict {
    check_cyclic_proof(&script.system, script, &script.axioms)
}

/// Checks many scripts, one per task.
pub fn check_batch(scripts: &[ProofScript], mode: crate::par::Mode) -> Vec<Verdict> {
    crate::par::map_with(mode, scripts, check_cyclic_script)
}
