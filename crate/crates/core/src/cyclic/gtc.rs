use std::collections::HashSet;

use super::trace::TraceRelation;
use super::TraceGraph;
use crate::par::{self, Mode};
use crate::verdict::{Lasso, Verdict};

/// One closure entry: a path from `from` to `to` (node indices, both ends
/// included) whose composed trace relation is `rel`.
#[derive(Clone, Debug)]
pub struct PathSummary {
    pub from: usize,
    pub to: usize,
    pub rel: TraceRelation,
    pub path: Vec<usize>,
}

/// Every distinct `(from, to, relation)` realised by some finite path, each
/// with the first witness path found. Paths are extended one edge per
/// round; extensions are computed in parallel and merged in a fixed order.
pub fn closure(g: &TraceGraph, mode: Mode) -> Vec<PathSummary> {
    let n = g.nodes.len();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in g.edges.iter().enumerate() {
        out_edges[e.from].push(i);
    }
    let mut seen: HashSet<(usize, usize, TraceRelation)> = HashSet::new();
    let mut entries: Vec<PathSummary> = Vec::new();
    let mut frontier: Vec<usize> = Vec::new();
    for e in &g.edges {
        if seen.insert((e.from, e.to, e.relation.clone())) {
            frontier.push(entries.len());
            entries.push(PathSummary {
                from: e.from,
                to: e.to,
                rel: e.relation.clone(),
                path: vec![e.from, e.to],
            });
        }
    }
    while !frontier.is_empty() {
        let current: Vec<&PathSummary> = frontier.iter().map(|&i| &entries[i]).collect();
        let extended = par::map_with(mode, &current, |s| {
            out_edges[s.to]
                .iter()
                .map(|&ei| {
                    let e = &g.edges[ei];
                    (s.from, e.to, s.rel.then(&e.relation), s.path.clone(), e.to)
                })
                .collect::<Vec<_>>()
        });
        let mut next = Vec::new();
        for (from, to, rel, mut path, last) in extended.into_iter().flatten() {
            if seen.contains(&(from, to, rel.clone())) {
                continue;
            }
            seen.insert((from, to, rel.clone()));
            path.push(last);
            next.push(entries.len());
            entries.push(PathSummary {
                from,
                to,
                rel,
                path,
            });
        }
        frontier = next;
    }
    entries
}

/// Global trace condition: every idempotent loop summary must have a
/// progressing trace from some occurrence back to itself. Otherwise the
/// offending loop is returned as a lasso.
pub fn check_gtc_with(g: &TraceGraph, mode: Mode) -> Verdict {
    for s in closure(g, mode) {
        if s.from == s.to && s.rel.is_idempotent() && !s.rel.has_progressing_diagonal() {
            let node = &g.nodes[s.from].id;
            let mut prefix = g.root_path(s.from);
            prefix.pop();
            let cycle = s.path[..s.path.len() - 1]
                .iter()
                .map(|&i| g.nodes[i].id.clone())
                .collect();
            return Verdict::reject(
                node.clone(),
                "global trace condition fails: a cycle has no infinitely progressing trace",
            )
            .with_lasso(Lasso { prefix, cycle });
        }
    }
    Verdict::accept()
}

pub fn check_gtc(g: &TraceGraph) -> Verdict {
    check_gtc_with(g, Mode::default())
}
