use std::collections::BTreeSet;
use std::fmt;

use super::{Formula, Subst};

/// `Γ ⊢ Δ` with both sides as sets: duplicates collapse and order is
/// irrelevant, so equality is syntactic.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub ante: BTreeSet<Formula>,
    pub succ: BTreeSet<Formula>,
}

impl Sequent {
    pub fn new(
        ante: impl IntoIterator<Item = Formula>,
        succ: impl IntoIterator<Item = Formula>,
    ) -> Sequent {
        Sequent {
            ante: ante.into_iter().collect(),
            succ: succ.into_iter().collect(),
        }
    }

    pub fn subst(&self, s: &Subst) -> Sequent {
        Sequent {
            ante: self.ante.iter().map(|f| f.subst(s)).collect(),
            succ: self.succ.iter().map(|f| f.subst(s)).collect(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        self.ante
            .iter()
            .chain(&self.succ)
            .flat_map(|f| f.free_vars())
            .collect()
    }

    pub fn with_ante(mut self, f: Formula) -> Sequent {
        self.ante.insert(f);
        self
    }

    pub fn with_succ(mut self, f: Formula) -> Sequent {
        self.succ.insert(f);
        self
    }

    pub fn without_ante(mut self, f: &Formula) -> Sequent {
        self.ante.remove(f);
        self
    }

    pub fn without_succ(mut self, f: &Formula) -> Sequent {
        self.succ.remove(f);
        self
    }

    /// `Γ ⊆ Γ'` and `Δ ⊆ Δ'`.
    pub fn is_weakening_of(&self, other: &Sequent) -> bool {
        self.ante.is_subset(&other.ante) && self.succ.is_subset(&other.succ)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(seq (ante")?;
        for a in &self.ante {
            write!(f, " {a}")?;
        }
        f.write_str(") (succ")?;
        for s in &self.succ {
            write!(f, " {s}")?;
        }
        f.write_str("))")
    }
}
