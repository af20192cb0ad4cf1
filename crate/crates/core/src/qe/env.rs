use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use super::QeError;
use crate::bijections::{PartialBijection, RaySet};
use crate::model::{Line, MElement};

/// Named partial bijections.
///
/// A name is a word of letters joined by `.` and read as a composition,
/// so `A.B` is `A ∘ B`; a trailing `~` inverts a letter. Built-in letters
/// are `id`, `r0`, `s+N` (the shift by `N`) and `idN:K` / `idZ:K` (the
/// identity on the single element `(elemN K)` / `(elemZ K)`). Words are
/// evaluated on demand and memoized.
#[derive(Clone, Debug, Default)]
pub struct RelEnv {
    custom: BTreeMap<String, PartialBijection>,
    cache: HashMap<String, PartialBijection>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Letter {
    base: String,
    inv: bool,
}

fn is_symmetric(base: &str) -> bool {
    base == "id" || base.starts_with("idN:") || base.starts_with("idZ:")
}

fn letters(word: &str) -> Vec<Letter> {
    word.split('.')
        .map(|l| match l.strip_suffix('~') {
            Some(b) => Letter {
                base: b.to_string(),
                inv: true,
            },
            None => Letter {
                base: l.to_string(),
                inv: false,
            },
        })
        .collect()
}

fn render(ls: Vec<Letter>) -> String {
    let mut kept: Vec<Letter> = ls.into_iter().filter(|l| l.base != "id").collect();
    if kept.is_empty() {
        return "id".into();
    }
    for l in &mut kept {
        if is_symmetric(&l.base) {
            l.inv = false;
        }
    }
    kept.iter()
        .map(|l| format!("{}{}", l.base, if l.inv { "~" } else { "" }))
        .collect::<Vec<_>>()
        .join(".")
}

impl RelEnv {
    pub fn new() -> RelEnv {
        RelEnv::default()
    }

    /// Registers a base relation; its name must not use `.` or `~`.
    pub fn insert(&mut self, name: &str, r: PartialBijection) {
        assert!(
            !name.contains(['.', '~']),
            "relation names cannot contain `.` or `~`"
        );
        self.custom.insert(name.to_string(), r);
        self.cache.clear();
    }

    pub fn with(mut self, name: &str, r: PartialBijection) -> RelEnv {
        self.insert(name, r);
        self
    }

    /// `a ∘ b`.
    pub fn compose_name(a: &str, b: &str) -> String {
        let mut ls = letters(a);
        ls.extend(letters(b));
        render(ls)
    }

    pub fn inverse_name(a: &str) -> String {
        let ls = letters(a)
            .into_iter()
            .rev()
            .map(|l| Letter {
                base: l.base,
                inv: !l.inv,
            })
            .collect();
        render(ls)
    }

    /// The identity on `{e}`.
    pub fn id_of(e: &MElement) -> String {
        match e.line {
            Line::Nat => format!("idN:{}", e.index),
            Line::Zeta => format!("idZ:{}", e.index),
        }
    }

    fn base(&self, name: &str) -> Result<PartialBijection, QeError> {
        if let Some(r) = self.custom.get(name) {
            return Ok(r.clone());
        }
        let unknown = || QeError::UnknownRelation(name.to_string());
        let point = |s: &str, line: Line| -> Result<PartialBijection, QeError> {
            let k: BigInt = s.parse().map_err(|_| unknown())?;
            let e = match line {
                Line::Nat if k >= BigInt::from(0) => MElement::nat(k),
                Line::Nat => return Err(unknown()),
                Line::Zeta => MElement::zeta(k),
            };
            Ok(PartialBijection::identity_on(&RaySet::singleton(e)))
        };
        match name {
            "id" => Ok(PartialBijection::identity()),
            "r0" => Ok(PartialBijection::r0()),
            _ => {
                if let Some(n) = name.strip_prefix("s+") {
                    let n: i64 = n.parse().map_err(|_| unknown())?;
                    Ok(PartialBijection::shift(n))
                } else if let Some(k) = name.strip_prefix("idN:") {
                    point(k, Line::Nat)
                } else if let Some(k) = name.strip_prefix("idZ:") {
                    point(k, Line::Zeta)
                } else {
                    Err(unknown())
                }
            }
        }
    }

    pub fn get(&mut self, word: &str) -> Result<PartialBijection, QeError> {
        if let Some(r) = self.cache.get(word) {
            return Ok(r.clone());
        }
        let ls = letters(word);
        let r = if ls.len() == 1 {
            let b = self.base(&ls[0].base)?;
            if ls[0].inv {
                b.inverse()
            } else {
                b
            }
        } else {
            let (last, init) = ls.split_last().expect("nonempty word");
            let outer = self.get(&render(init.to_vec()))?;
            let inner = self.get(&render(vec![last.clone()]))?;
            outer.compose(&inner)
        };
        self.cache.insert(word.to_string(), r.clone());
        Ok(r)
    }

    pub fn holds(&mut self, word: &str, a: &MElement, b: &MElement) -> Result<bool, QeError> {
        Ok(self.get(word)?.contains(a, b))
    }
}
