use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Stay,
    Progress,
}

/// Which trace occurrences at one node can reach which at another, and
/// whether some way of getting there passes a progress point.
///
/// Triples are sorted with one entry per occurrence pair; parallel routes
/// merge to the stronger label.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TraceRelation {
    triples: Vec<(u32, u32, Label)>,
}

impl TraceRelation {
    pub fn from_triples(triples: impl IntoIterator<Item = (u32, u32, Label)>) -> TraceRelation {
        let mut v: Vec<(u32, u32, Label)> = triples.into_iter().collect();
        v.sort();
        // After sorting, the strongest label for a pair comes last.
        let mut out: Vec<(u32, u32, Label)> = Vec::with_capacity(v.len());
        for t in v {
            match out.last_mut() {
                Some(last) if (last.0, last.1) == (t.0, t.1) => last.2 = last.2.max(t.2),
                _ => out.push(t),
            }
        }
        TraceRelation { triples: out }
    }

    pub fn identity(n: u32) -> TraceRelation {
        TraceRelation::from_triples((0..n).map(|o| (o, o, Label::Stay)))
    }

    pub fn triples(&self) -> &[(u32, u32, Label)] {
        &self.triples
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &TraceRelation) -> TraceRelation {
        let mut out = Vec::new();
        for &(a, b, l1) in &self.triples {
            let start = next.triples.partition_point(|t| t.0 < b);
            for &(_, c, l2) in next.triples[start..].iter().take_while(|t| t.0 == b) {
                out.push((a, c, l1.max(l2)));
            }
        }
        TraceRelation::from_triples(out)
    }

    pub fn is_idempotent(&self) -> bool {
        self.then(self) == *self
    }

    pub fn has_progressing_diagonal(&self) -> bool {
        self.triples
            .iter()
            .any(|&(a, b, l)| a == b && l == Label::Progress)
    }

    /// The same relation with every progress label weakened to stay.
    pub fn without_progress(&self) -> TraceRelation {
        TraceRelation::from_triples(self.triples.iter().map(|&(a, b, _)| (a, b, Label::Stay)))
    }
}

impl fmt::Display for TraceRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, b, l)) in self.triples.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let arrow = if *l == Label::Progress { "=>" } else { "->" };
            write!(f, "{a}{arrow}{b}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Label::*;

    #[test]
    fn composition_merges_to_progress() {
        let a = TraceRelation::from_triples([(0, 0, Stay), (0, 1, Progress)]);
        let b = TraceRelation::from_triples([(0, 0, Progress), (1, 0, Stay)]);
        assert_eq!(a.then(&b), TraceRelation::from_triples([(0, 0, Progress)]));
        let id = TraceRelation::identity(2);
        assert_eq!(id.then(&a), a);
        assert_eq!(a.then(&id), a);
    }

    #[test]
    fn empty_relation_is_idempotent_without_progress() {
        let e = TraceRelation::default();
        assert!(e.is_idempotent());
        assert!(!e.has_progressing_diagonal());
    }
}
