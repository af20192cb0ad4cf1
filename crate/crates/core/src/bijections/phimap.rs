use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::RaySet;
use crate::model::{residue, MElement, Ray};

/// `2^z` as an exact rational.
pub fn pow2q(z: i64) -> BigRational {
    let p = BigInt::one() << z.unsigned_abs();
    if z >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Whether a rational has a power-of-two denominator.
pub fn is_dyadic(q: &BigRational) -> bool {
    let d = q.denom().magnitude();
    (d & (d - 1u32)).is_zero()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// The affine map `x ↦ 2^z·x + r`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PhiMap {
    pub z: i64,
    pub r: BigRational,
}

impl PhiMap {
    pub fn new(z: i64, r: BigRational) -> PhiMap {
        PhiMap { z, r }
    }

    pub fn identity() -> PhiMap {
        PhiMap::new(0, BigRational::zero())
    }

    pub fn scale(z: i64) -> PhiMap {
        PhiMap::new(z, BigRational::zero())
    }

    pub fn shift(n: i64) -> PhiMap {
        PhiMap::new(0, BigRational::from_integer(n.into()))
    }

    pub fn is_identity(&self) -> bool {
        self.z == 0 && self.r.is_zero()
    }

    pub fn parity(&self) -> Parity {
        if self.z % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        x * pow2q(self.z) + &self.r
    }

    /// `φ(x)` when it is an integer.
    pub fn apply(&self, x: &BigInt) -> Option<BigInt> {
        let y = self.eval(&BigRational::from_integer(x.clone()));
        y.is_integer().then(|| y.to_integer())
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &PhiMap) -> PhiMap {
        PhiMap::new(self.z + inner.z, &inner.r * pow2q(self.z) + &self.r)
    }

    pub fn inverse(&self) -> PhiMap {
        PhiMap::new(-self.z, -(&self.r * pow2q(-self.z)))
    }

    /// The unique rational fixed point of a non-translation map.
    pub fn fixed_point(&self) -> Option<BigRational> {
        if self.z == 0 {
            return None;
        }
        Some(&self.r / (BigRational::one() - pow2q(self.z)))
    }
}

impl fmt::Display for PhiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.z {
            0 => write!(f, "x")?,
            z => write!(f, "2^{z}x")?,
        }
        if self.r.is_positive() {
            write!(f, "+{}", self.r)?;
        } else if self.r.is_negative() {
            write!(f, "{}", self.r)?;
        }
        Ok(())
    }
}

/// Ascending rays run to `+∞`, `ℤ⁻` runs to `−∞`.
fn ascending(ray: Ray) -> bool {
    !matches!(ray, Ray::ZNeg)
}

fn ceil_q(q: &BigRational) -> BigInt {
    q.ceil().to_integer()
}

/// `{x ∈ σ : φ(x) ∈ ℤ, φ(x) on ray ρ, φ(x) ∈ T}`.
pub fn preimage(phi: &PhiMap, src: Ray, dst: Ray, target: &RaySet) -> RaySet {
    let member = |x: &BigInt| -> bool {
        src.admits(x)
            && phi
                .apply(x)
                .is_some_and(|y| dst.admits(&y) && target.contains(&dst.element(y)))
    };
    let a = target.log2_modulus() as i64;
    let b = (a - phi.z).max(0) as u32;
    let wanted = target.residues(dst);
    let periodic: BTreeSet<u64> = (0..1u64 << b)
        .filter(|&c| {
            phi.apply(&BigInt::from(c))
                .is_some_and(|y| wanted.contains(&residue(&y, a as u32)))
        })
        .collect();

    // φ is increasing, so `φ(x)` lies on `dst` iff `x` is on one side of
    // the threshold `θ = φ⁻¹(0)`.
    let theta = phi.inverse().eval(&BigRational::zero());
    let theta_up = ceil_q(&theta);
    let mut candidates: BTreeSet<BigInt> = BTreeSet::new();
    let same_direction = ascending(src) == ascending(dst);
    let (lo, hi) = match (ascending(src), ascending(dst)) {
        // x ≥ 0 and x ≥ θ: violators are 0 ≤ x < θ.
        (true, true) => (BigInt::zero(), theta_up.clone()),
        // x < 0 and x < θ: violators are θ ≤ x < 0.
        (false, false) => (theta_up.clone(), BigInt::zero()),
        // Bounded ranges: enumerate everything.
        (true, false) => (BigInt::zero(), theta_up.clone()),
        (false, true) => (theta_up.clone(), BigInt::zero()),
    };
    let mut x = lo;
    while x < hi {
        candidates.insert(x.clone());
        x += 1;
    }
    let inv = phi.inverse();
    for e in target.added().iter().chain(target.removed()) {
        if e.ray() == dst {
            if let Some(x) = inv.apply(&e.index) {
                candidates.insert(x);
            }
        }
    }

    let mut residues: [BTreeSet<u64>; 3] = Default::default();
    if same_direction {
        residues[src.slot()] = periodic;
    }
    let probe = RaySet::from_parts(b, residues.clone(), [], []);
    let mut added = Vec::new();
    let mut removed = Vec::new();
    for x in candidates {
        if !src.admits(&x) {
            continue;
        }
        let e = src.element(x.clone());
        match (member(&x), probe.contains(&e)) {
            (true, false) => added.push(e),
            (false, true) => removed.push(e),
            _ => {}
        }
    }
    RaySet::from_parts(b, residues, added, removed)
}

/// The element on `ray` with index `φ(e.index)`, if legal.
pub fn map_point(phi: &PhiMap, e: &MElement, dst: Ray) -> Option<MElement> {
    let y = phi.apply(&e.index)?;
    dst.admits(&y).then(|| dst.element(y))
}
