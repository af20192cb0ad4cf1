use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::phimap::{map_point, preimage, Parity, PhiMap};
use super::RaySet;
use crate::model::{MElement, Ray};

/// One affine piece: elements of `dom` (on `src`) map to `dst` by `phi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Piece {
    pub src: Ray,
    pub dst: Ray,
    pub dom: RaySet,
    pub phi: PhiMap,
}

impl Piece {
    /// Restricts `dom` to the points `phi` sends legally onto `dst`.
    pub fn new(src: Ray, dst: Ray, dom: RaySet, phi: PhiMap) -> Piece {
        let valid = preimage(&phi, src, dst, &RaySet::universe());
        Piece {
            src,
            dst,
            dom: dom.intersect(&valid),
            phi,
        }
    }

    pub fn apply(&self, e: &MElement) -> Option<MElement> {
        if e.ray() == self.src && self.dom.contains(e) {
            map_point(&self.phi, e, self.dst)
        } else {
            None
        }
    }

    /// `φ(S ∩ dom)`.
    pub fn image(&self, s: &RaySet) -> RaySet {
        preimage(&self.phi.inverse(), self.dst, self.src, &s.intersect(&self.dom))
    }

    pub fn range(&self) -> RaySet {
        self.image(&RaySet::universe())
    }
}

/// A finite union of affine pieces with disjoint domains and ranges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialBijection {
    pieces: Vec<Piece>,
}

impl PartialBijection {
    /// Merges pieces sharing `(src, dst, phi)` and drops empty ones.
    pub fn from_pieces(pieces: impl IntoIterator<Item = Piece>) -> PartialBijection {
        let mut out: Vec<Piece> = Vec::new();
        for p in pieces {
            if p.dom.is_empty() {
                continue;
            }
            match out
                .iter_mut()
                .find(|q| q.src == p.src && q.dst == p.dst && q.phi == p.phi)
            {
                Some(q) => q.dom = q.dom.union(&p.dom),
                None => out.push(p),
            }
        }
        out.sort_by(|a, b| (a.src, a.dst, &a.phi).cmp(&(b.src, b.dst, &b.phi)));
        PartialBijection { pieces: out }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn empty() -> PartialBijection {
        PartialBijection { pieces: vec![] }
    }

    /// The identity on `d`.
    pub fn identity_on(d: &RaySet) -> PartialBijection {
        PartialBijection::from_pieces(
            Ray::ALL.map(|r| Piece::new(r, r, d.intersect(&RaySet::ray(r)), PhiMap::identity())),
        )
    }

    pub fn identity() -> PartialBijection {
        PartialBijection::identity_on(&RaySet::universe())
    }

    /// `x ↦ s^n(x)`, defined everywhere.
    pub fn shift(n: i64) -> PartialBijection {
        let phi = PhiMap::shift(n);
        let ray = RaySet::ray;
        PartialBijection::from_pieces([
            Piece::new(Ray::Nat, Ray::Nat, ray(Ray::Nat), phi.clone()),
            Piece::new(Ray::ZPos, Ray::ZPos, ray(Ray::ZPos), phi.clone()),
            Piece::new(Ray::ZNeg, Ray::ZNeg, ray(Ray::ZNeg), phi.clone()),
            Piece::new(Ray::ZNeg, Ray::ZPos, ray(Ray::ZNeg), phi),
        ])
    }

    /// `R₀ = |𝕄|² ∖ p_𝕄`.
    pub fn r0() -> PartialBijection {
        make_paper_bijection(&RaySet::universe(), &PhiMap::scale(1)).0
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn apply(&self, e: &MElement) -> Option<MElement> {
        self.pieces.iter().find_map(|p| p.apply(e))
    }

    pub fn contains(&self, a: &MElement, b: &MElement) -> bool {
        self.apply(a).as_ref() == Some(b)
    }

    pub fn domain(&self) -> RaySet {
        self.pieces
            .iter()
            .fold(RaySet::empty(), |acc, p| acc.union(&p.dom))
    }

    pub fn range(&self) -> RaySet {
        self.image(&RaySet::universe())
    }

    pub fn image(&self, s: &RaySet) -> RaySet {
        self.pieces
            .iter()
            .fold(RaySet::empty(), |acc, p| acc.union(&p.image(s)))
    }

    /// `R⁻¹(S)`.
    pub fn preimage(&self, s: &RaySet) -> RaySet {
        self.pieces.iter().fold(RaySet::empty(), |acc, p| {
            acc.union(&p.dom.intersect(&preimage(&p.phi, p.src, p.dst, s)))
        })
    }

    pub fn restrict(&self, d: &RaySet) -> PartialBijection {
        PartialBijection::from_pieces(self.pieces.iter().map(|p| Piece {
            dom: p.dom.intersect(d),
            ..p.clone()
        }))
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &PartialBijection) -> PartialBijection {
        let mut out = Vec::new();
        for s in &inner.pieces {
            for r in self.pieces.iter().filter(|r| r.src == s.dst) {
                let dom = s.dom.intersect(&preimage(&s.phi, s.src, s.dst, &r.dom));
                if dom.is_empty() {
                    continue;
                }
                out.push(Piece {
                    src: s.src,
                    dst: r.dst,
                    dom,
                    phi: r.phi.after(&s.phi),
                });
            }
        }
        PartialBijection::from_pieces(out)
    }

    pub fn inverse(&self) -> PartialBijection {
        PartialBijection::from_pieces(self.pieces.iter().map(|p| Piece {
            src: p.dst,
            dst: p.src,
            dom: p.range(),
            phi: p.phi.inverse(),
        }))
    }

    /// `{x | R(x, x)}`.
    pub fn diagonal(&self) -> RaySet {
        let mut out = RaySet::empty();
        for p in self.pieces.iter().filter(|p| p.src == p.dst) {
            if p.phi.is_identity() {
                out = out.union(&p.dom);
            } else if let Some(x) = p.phi.fixed_point().filter(BigRational::is_integer) {
                let x = x.to_integer();
                if p.src.admits(&x) {
                    let e = p.src.element(x);
                    if p.dom.contains(&e) {
                        out = out.union(&RaySet::singleton(e));
                    }
                }
            }
        }
        out
    }

    /// Largest modulus exponent and exception index over all pieces.
    pub fn complexity(&self) -> (u32, u64) {
        self.pieces.iter().fold((0, 0), |(a, e), p| {
            let r = p.range();
            (
                a.max(p.dom.log2_modulus()).max(r.log2_modulus()),
                e.max(p.dom.exception_bound()).max(r.exception_bound()),
            )
        })
    }
}

impl fmt::Display for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return f.write_str("∅");
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(
                f,
                "{}→{} {} on [{}]",
                p.src.short_name(),
                p.dst.short_name(),
                p.phi,
                p.dom
            )?;
        }
        Ok(())
    }
}

/// The `(D, E, φ)`-bijection: `φ_𝕄` restricted to the points of `d` where
/// it is sign-preserving and integral. Even maps keep each ray; odd maps
/// send `ℕ → ℤ⁺`, `ℤ⁻ → ℤ⁻`, `ℤ⁺ → ℕ`.
pub fn make_paper_bijection(d: &RaySet, phi: &PhiMap) -> (PartialBijection, Parity) {
    let parity = phi.parity();
    let routes = match parity {
        Parity::Even => [
            (Ray::Nat, Ray::Nat),
            (Ray::ZNeg, Ray::ZNeg),
            (Ray::ZPos, Ray::ZPos),
        ],
        Parity::Odd => [
            (Ray::Nat, Ray::ZPos),
            (Ray::ZNeg, Ray::ZNeg),
            (Ray::ZPos, Ray::Nat),
        ],
    };
    let pieces = routes.map(|(src, dst)| {
        Piece::new(src, dst, d.intersect(&RaySet::ray(src)), phi.clone())
    });
    (PartialBijection::from_pieces(pieces), parity)
}
