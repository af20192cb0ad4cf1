use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::model::{residue, MElement, Ray};

/// An eventually periodic subset of the universe.
///
/// Ray `ρ` contributes the elements whose index is congruent modulo `2^a`
/// to some member of `residues[ρ]`; `added` and `removed` patch finitely
/// many points. The representation is kept canonical so that structural
/// equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RaySet {
    log2_modulus: u32,
    residues: [BTreeSet<u64>; 3],
    added: BTreeSet<MElement>,
    removed: BTreeSet<MElement>,
}

fn all_residues(a: u32) -> BTreeSet<u64> {
    (0..1u64 << a).collect()
}

/// Residues modulo `2^from` re-expressed modulo `2^to` (`to ≥ from`).
fn refine(res: &BTreeSet<u64>, from: u32, to: u32) -> BTreeSet<u64> {
    let step = 1u64 << from;
    let copies = 1u64 << (to - from);
    res.iter()
        .flat_map(|&r| (0..copies).map(move |k| r + k * step))
        .collect()
}

impl RaySet {
    pub fn empty() -> RaySet {
        RaySet {
            log2_modulus: 0,
            residues: Default::default(),
            added: BTreeSet::new(),
            removed: BTreeSet::new(),
        }
    }

    pub fn universe() -> RaySet {
        RaySet::uniform(0, [0])
    }

    /// One whole ray.
    pub fn ray(ray: Ray) -> RaySet {
        let mut residues: [BTreeSet<u64>; 3] = Default::default();
        residues[ray.slot()].insert(0);
        RaySet::from_parts(0, residues, [], [])
    }

    /// The same residues modulo `2^a` on every ray.
    pub fn uniform(a: u32, residues: impl IntoIterator<Item = u64>) -> RaySet {
        let m = 1u64 << a;
        let res: BTreeSet<u64> = residues.into_iter().map(|r| r % m).collect();
        RaySet::from_parts(a, [res.clone(), res.clone(), res], [], [])
    }

    /// `M(2^a, b)`: every element whose index is `≡ b (mod 2^a)`.
    pub fn progression(a: u32, b: i64) -> RaySet {
        RaySet::uniform(a, [residue(&BigInt::from(b), a)])
    }

    pub fn finite(elems: impl IntoIterator<Item = MElement>) -> RaySet {
        RaySet::from_parts(0, Default::default(), elems, [])
    }

    pub fn singleton(e: MElement) -> RaySet {
        RaySet::finite([e])
    }

    /// Builds and canonicalizes. Points in both `added` and `removed`
    /// count as members.
    pub fn from_parts(
        log2_modulus: u32,
        residues: [BTreeSet<u64>; 3],
        added: impl IntoIterator<Item = MElement>,
        removed: impl IntoIterator<Item = MElement>,
    ) -> RaySet {
        let mut s = RaySet {
            log2_modulus,
            residues,
            added: added.into_iter().collect(),
            removed: removed.into_iter().collect(),
        };
        s.canonicalize();
        s
    }

    fn canonicalize(&mut self) {
        while self.log2_modulus > 0 {
            let half = 1u64 << (self.log2_modulus - 1);
            let coarse = self
                .residues
                .iter()
                .all(|res| res.iter().all(|&r| res.contains(&(r ^ half))));
            if !coarse {
                break;
            }
            for res in self.residues.iter_mut() {
                *res = res.iter().filter(|&&r| r < half).copied().collect();
            }
            self.log2_modulus -= 1;
        }
        let added = std::mem::take(&mut self.added);
        let removed = std::mem::take(&mut self.removed);
        self.removed = removed
            .into_iter()
            .filter(|e| self.periodic_contains(e) && !added.contains(e))
            .collect();
        self.added = added
            .into_iter()
            .filter(|e| !self.periodic_contains(e))
            .collect();
    }

    pub fn log2_modulus(&self) -> u32 {
        self.log2_modulus
    }

    pub fn residues(&self, ray: Ray) -> &BTreeSet<u64> {
        &self.residues[ray.slot()]
    }

    pub fn added(&self) -> &BTreeSet<MElement> {
        &self.added
    }

    pub fn removed(&self) -> &BTreeSet<MElement> {
        &self.removed
    }

    fn periodic_contains(&self, e: &MElement) -> bool {
        self.residues[e.ray().slot()].contains(&residue(&e.index, self.log2_modulus))
    }

    pub fn contains(&self, e: &MElement) -> bool {
        self.added.contains(e) || (self.periodic_contains(e) && !self.removed.contains(e))
    }

    /// Largest `|index|` among the exception points, 0 if there are none.
    pub fn exception_bound(&self) -> u64 {
        self.added
            .iter()
            .chain(&self.removed)
            .map(|e| u64::try_from(e.index.abs()).unwrap_or(u64::MAX))
            .max()
            .unwrap_or(0)
    }

    pub fn is_finite(&self) -> bool {
        self.residues.iter().all(BTreeSet::is_empty)
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && self.added.is_empty()
    }

    /// Members of a finite set, ascending; `None` for infinite sets.
    pub fn elements(&self) -> Option<Vec<MElement>> {
        self.is_finite().then(|| self.added.iter().cloned().collect())
    }

    /// Whether the periodic part is the same on all three rays, i.e. the
    /// set is uniform up to finitely many exceptions.
    pub fn is_uniform(&self) -> bool {
        self.residues[0] == self.residues[1] && self.residues[1] == self.residues[2]
    }

    /// `Σ|R_ρ| / (3·2^a)`; exceptions do not affect the limit.
    pub fn measure(&self) -> BigRational {
        let count: usize = self.residues.iter().map(BTreeSet::len).sum();
        BigRational::new(
            BigInt::from(count),
            BigInt::from(3u64 << self.log2_modulus),
        )
    }

    pub fn complement(&self) -> RaySet {
        let all = all_residues(self.log2_modulus);
        let residues = self
            .residues
            .clone()
            .map(|res| all.difference(&res).copied().collect());
        RaySet::from_parts(
            self.log2_modulus,
            residues,
            self.removed.iter().cloned(),
            self.added.iter().cloned(),
        )
    }

    fn combine(&self, other: &RaySet, op: impl Fn(bool, bool) -> bool) -> RaySet {
        let a = self.log2_modulus.max(other.log2_modulus);
        let mut residues: [BTreeSet<u64>; 3] = Default::default();
        for slot in 0..3 {
            let left = refine(&self.residues[slot], self.log2_modulus, a);
            let right = refine(&other.residues[slot], other.log2_modulus, a);
            residues[slot] = (0..1u64 << a)
                .filter(|r| op(left.contains(r), right.contains(r)))
                .collect();
        }
        let mut out = RaySet {
            log2_modulus: a,
            residues,
            added: BTreeSet::new(),
            removed: BTreeSet::new(),
        };
        let candidates: BTreeSet<&MElement> = self
            .added
            .iter()
            .chain(&self.removed)
            .chain(&other.added)
            .chain(&other.removed)
            .collect();
        for e in candidates {
            let want = op(self.contains(e), other.contains(e));
            let have = out.periodic_contains(e);
            if want && !have {
                out.added.insert(e.clone());
            } else if !want && have {
                out.removed.insert(e.clone());
            }
        }
        out.canonicalize();
        out
    }

    pub fn union(&self, other: &RaySet) -> RaySet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &RaySet) -> RaySet {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &RaySet) -> RaySet {
        self.combine(other, |a, b| a && !b)
    }

    pub fn is_subset(&self, other: &RaySet) -> bool {
        self.difference(other).is_empty()
    }

    /// Members with `|index| ≤ radius`, in window order.
    pub fn members_within(&self, radius: u64) -> Vec<MElement> {
        crate::model::window(radius)
            .into_iter()
            .filter(|e| self.contains(e))
            .collect()
    }
}

impl fmt::Display for RaySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<u64>| {
            s.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        };
        write!(f, "mod {}:", 1u64 << self.log2_modulus)?;
        for ray in Ray::ALL {
            write!(f, " {}{{{}}}", ray.short_name(), list(&self.residues[ray.slot()]))?;
        }
        let elems = |s: &BTreeSet<MElement>| {
            s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
        };
        if !self.added.is_empty() {
            write!(f, " +[{}]", elems(&self.added))?;
        }
        if !self.removed.is_empty() {
            write!(f, " -[{}]", elems(&self.removed))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::window;

    fn same_members(a: &RaySet, b: &RaySet, radius: u64) -> bool {
        window(radius).iter().all(|e| a.contains(e) == b.contains(e))
    }

    #[test]
    fn complement_of_universe_is_empty() {
        assert_eq!(RaySet::universe().complement(), RaySet::empty());
        assert!(RaySet::empty().is_empty());
    }

    #[test]
    fn union_of_parity_classes_is_universe() {
        let u = RaySet::progression(1, 0).union(&RaySet::progression(1, 1));
        assert_eq!(u, RaySet::universe());
        assert!(same_members(&u, &RaySet::universe(), 20));
    }

    #[test]
    fn intersect_refines_modulus() {
        let i = RaySet::progression(1, 0).intersect(&RaySet::progression(2, 2));
        assert_eq!(i, RaySet::progression(2, 2));
        for e in window(20) {
            let n = &e.index;
            let expect = residue(n, 1) == 0 && residue(n, 2) == 2;
            assert_eq!(i.contains(&e), expect, "{e}");
        }
    }

    #[test]
    fn measures() {
        assert_eq!(RaySet::ray(Ray::Nat).measure(), BigRational::new(1.into(), 3.into()));
        assert_eq!(RaySet::progression(1, 0).measure(), BigRational::new(1.into(), 2.into()));
        assert_eq!(RaySet::progression(2, 0).measure(), BigRational::new(1.into(), 4.into()));
    }

    #[test]
    fn exceptions_are_canonical() {
        let z = MElement::zero();
        let a = RaySet::universe().difference(&RaySet::singleton(z.clone()));
        assert!(!a.contains(&z));
        assert_eq!(a.removed().len(), 1);
        let back = a.union(&RaySet::singleton(z));
        assert_eq!(back, RaySet::universe());
        assert_eq!(
            RaySet::from_parts(1, [[0, 1].into(), [0, 1].into(), [0, 1].into()], [], []),
            RaySet::universe()
        );
    }

    #[test]
    fn negative_indices_use_mathematical_mod() {
        let odd = RaySet::progression(1, 1);
        assert!(odd.contains(&MElement::zeta(-1)));
        assert!(!odd.contains(&MElement::zeta(-2)));
    }
}
