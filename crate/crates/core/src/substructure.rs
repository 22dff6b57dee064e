//! Substructure predicates, lattice enumeration and generated substructures.
//!
//! Enumeration walks the additive subgroup lattice first and filters by the
//! extra clauses of each kind; every kind here is an additive subgroup.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ops::{check_carrier, CarrierMismatch};
use crate::set::ElementSet;
use crate::structure::{AdditiveGroup, RingAction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubstructureKind {
    Subgroup,
    NormalSubgroup,
    /// Subgroup `H` with `RH ⊆ H`.
    LeftRSubgroup,
    /// Subgroup `H` with `HR ⊆ H`.
    RightRSubgroup,
    InvariantRSubgroup,
    /// Normal subgroup with `r1(r2 + i) - r1 r2 ∈ I`.
    LeftIdeal,
    /// Normal subgroup with `IR ⊆ I`.
    RightIdeal,
    Ideal,
    /// Subgroup `H` of a module with `RH ⊆ H`.
    RSubmodule,
    /// Normal subgroup `N` of a module with `r(m + n) - rm ∈ N`.
    RIdeal,
}

impl SubstructureKind {
    pub const ALL: [SubstructureKind; 10] = [
        SubstructureKind::Subgroup,
        SubstructureKind::NormalSubgroup,
        SubstructureKind::LeftRSubgroup,
        SubstructureKind::RightRSubgroup,
        SubstructureKind::InvariantRSubgroup,
        SubstructureKind::LeftIdeal,
        SubstructureKind::RightIdeal,
        SubstructureKind::Ideal,
        SubstructureKind::RSubmodule,
        SubstructureKind::RIdeal,
    ];

    /// Kinds that only make sense on the near-ring itself.
    pub fn ring_only(self) -> bool {
        !matches!(self, Self::Subgroup | Self::NormalSubgroup | Self::RSubmodule | Self::RIdeal)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Subgroup => "subgroup",
            Self::NormalSubgroup => "normal-subgroup",
            Self::LeftRSubgroup => "left-r-subgroup",
            Self::RightRSubgroup => "right-r-subgroup",
            Self::InvariantRSubgroup => "invariant-r-subgroup",
            Self::LeftIdeal => "left-ideal",
            Self::RightIdeal => "right-ideal",
            Self::Ideal => "ideal",
            Self::RSubmodule => "r-submodule",
            Self::RIdeal => "r-ideal",
        }
    }

    fn normal(self) -> bool {
        matches!(self, Self::NormalSubgroup | Self::LeftIdeal | Self::RightIdeal | Self::Ideal | Self::RIdeal)
    }

    fn left_absorbing(self) -> bool {
        matches!(self, Self::LeftRSubgroup | Self::InvariantRSubgroup | Self::RSubmodule)
    }

    fn right_absorbing(self) -> bool {
        matches!(self, Self::RightRSubgroup | Self::InvariantRSubgroup | Self::RightIdeal | Self::Ideal)
    }

    /// `r1(r2 + i) - r1 r2 ∈ I`, or its module form.
    fn ideal_clause(self) -> bool {
        matches!(self, Self::LeftIdeal | Self::Ideal | Self::RIdeal)
    }
}

impl fmt::Display for SubstructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown substructure kind {0:?}")]
pub struct UnknownKind(pub String);

impl FromStr for SubstructureKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| UnknownKind(s.to_string()))
    }
}

/// First failed clause of a substructure test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "kebab-case")]
pub enum Violation {
    MissingZero,
    NotClosed { a: usize, b: usize, sum: usize },
    MissingInverse { a: usize, inverse: usize },
    /// `x + h - x ∉ H`.
    NotNormal { x: usize, h: usize, conjugate: usize },
    /// `r h ∉ H`.
    LeftAbsorption { r: usize, h: usize, product: usize },
    /// `h r ∉ H`.
    RightAbsorption { h: usize, r: usize, product: usize },
    /// `r1(r2 + i) - r1 r2 ∉ I`; for modules `r(m + n) - rm ∉ N`.
    IdealClause { r1: usize, r2: usize, i: usize, value: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::MissingZero => write!(f, "0 is missing"),
            Violation::NotClosed { a, b, sum } => write!(f, "{a}+{b}={sum} is missing"),
            Violation::MissingInverse { a, inverse } => write!(f, "-{a}={inverse} is missing"),
            Violation::NotNormal { x, h, conjugate } => write!(f, "{x}+{h}-{x}={conjugate} is missing"),
            Violation::LeftAbsorption { r, h, product } => write!(f, "{r}*{h}={product} is missing"),
            Violation::RightAbsorption { h, r, product } => write!(f, "{h}*{r}={product} is missing"),
            Violation::IdealClause { r1, r2, i, value } => write!(f, "{r1}({r2}+{i})-{r1}{r2}={value} is missing"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstructureError {
    #[error(transparent)]
    CarrierMismatch(#[from] CarrierMismatch),
    #[error("{0} is a near-ring kind and the carrier is a module")]
    RingKindOnModule(SubstructureKind),
}

fn check_kind<S: RingAction>(s: &S, kind: SubstructureKind) -> Result<(), SubstructureError> {
    if kind.ring_only() && !s.is_ring() {
        return Err(SubstructureError::RingKindOnModule(kind));
    }
    Ok(())
}

/// `None` when `set` is a substructure of the kind, else the first violation.
pub fn check_substructure<S: RingAction>(s: &S, set: &ElementSet, kind: SubstructureKind) -> Result<Option<Violation>, SubstructureError> {
    check_kind(s, kind)?;
    check_carrier(set, s.order())?;
    if let Some(v) = subgroup_violation(s, set) {
        return Ok(Some(v));
    }
    Ok(extra_violation(s, set, kind))
}

pub fn is_substructure<S: RingAction>(s: &S, set: &ElementSet, kind: SubstructureKind) -> Result<bool, SubstructureError> {
    Ok(check_substructure(s, set, kind)?.is_none())
}

fn subgroup_violation<G: AdditiveGroup>(g: &G, set: &ElementSet) -> Option<Violation> {
    if !set.contains(0) {
        return Some(Violation::MissingZero);
    }
    for a in set {
        for b in set {
            let sum = g.add(a, b);
            if !set.contains(sum) {
                return Some(Violation::NotClosed { a, b, sum });
            }
        }
    }
    for a in set {
        let inverse = g.neg(a);
        if !set.contains(inverse) {
            return Some(Violation::MissingInverse { a, inverse });
        }
    }
    None
}

/// Clauses beyond the subgroup axioms, for a set already known to be a subgroup.
fn extra_violation<S: RingAction>(s: &S, set: &ElementSet, kind: SubstructureKind) -> Option<Violation> {
    let n = s.order();
    let rn = s.ring().order();
    if kind.normal() {
        for x in 0..n {
            for h in set {
                let conjugate = s.sub(s.add(x, h), x);
                if !set.contains(conjugate) {
                    return Some(Violation::NotNormal { x, h, conjugate });
                }
            }
        }
    }
    if kind.left_absorbing() {
        for r in 0..rn {
            for h in set {
                let product = s.act(r, h);
                if !set.contains(product) {
                    return Some(Violation::LeftAbsorption { r, h, product });
                }
            }
        }
    }
    if kind.right_absorbing() {
        let ring = s.ring();
        for h in set {
            for r in 0..rn {
                let product = ring.mul(h, r);
                if !set.contains(product) {
                    return Some(Violation::RightAbsorption { h, r, product });
                }
            }
        }
    }
    if kind.ideal_clause() {
        for r1 in 0..rn {
            for r2 in 0..n {
                let base = s.act(r1, r2);
                for i in set {
                    let value = s.sub(s.act(r1, s.add(r2, i)), base);
                    if !set.contains(value) {
                        return Some(Violation::IdealClause { r1, r2, i, value });
                    }
                }
            }
        }
    }
    None
}

/// Subgroup generated by `base ∪ {g}`, where `base` is already a subgroup.
fn join<G: AdditiveGroup>(grp: &G, base: &ElementSet, g: usize) -> ElementSet {
    let mut set = *base;
    let mut elems: Vec<usize> = base.to_vec();
    if set.insert(g) {
        elems.push(g);
    }
    let mut i = 0;
    while i < elems.len() {
        let a = elems[i];
        let mut j = 0;
        while j <= i {
            let b = elems[j];
            for c in [grp.add(a, b), grp.add(b, a)] {
                if set.insert(c) {
                    elems.push(c);
                }
            }
            j += 1;
        }
        i += 1;
    }
    set
}

/// Every additive subgroup, sorted by size then lexicographically.
///
/// Breadth-first over the lattice: each subgroup is extended by one
/// representative of every other coset. Every subgroup is reached from
/// each of its maximal subgroups and expanded once.
pub fn subgroups<G: AdditiveGroup>(g: &G) -> Vec<ElementSet> {
    let n = g.order();
    let zero = ElementSet::singleton(0);
    let mut seen: HashSet<ElementSet> = HashSet::from([zero]);
    let mut frontier = vec![zero];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            let mut covered = *h;
            for x in 0..n {
                if covered.contains(x) {
                    continue;
                }
                // join(H, x) only depends on the coset x + H
                for y in h {
                    covered.insert(g.add(x, y));
                }
                let k = join(g, h, x);
                if seen.insert(k) {
                    next.push(k);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<ElementSet> = seen.into_iter().collect();
    out.sort();
    out
}

/// Every substructure of the kind, sorted by size then lexicographically.
pub fn enumerate<S: RingAction>(s: &S, kind: SubstructureKind) -> Result<Vec<ElementSet>, SubstructureError> {
    check_kind(s, kind)?;
    Ok(filter_kind(s, subgroups(s), kind))
}

/// Restricts an already enumerated subgroup list to a kind.
pub(crate) fn filter_kind<S: RingAction>(s: &S, subgroups: Vec<ElementSet>, kind: SubstructureKind) -> Vec<ElementSet> {
    subgroups.into_iter().filter(|h| extra_violation(s, h, kind).is_none()).collect()
}

/// Smallest substructure of the kind containing `v`, by closure under the
/// kind's defining operations.
pub fn generated_substructure<S: RingAction>(s: &S, v: &ElementSet, kind: SubstructureKind) -> Result<ElementSet, SubstructureError> {
    check_kind(s, kind)?;
    check_carrier(v, s.order())?;
    let n = s.order();
    let rn = s.ring().order();
    let mut cur = v.union(&ElementSet::singleton(0));
    loop {
        let mut next = cur;
        for a in &cur {
            next.insert(s.neg(a));
            for b in &cur {
                next.insert(s.add(a, b));
            }
        }
        if kind.normal() {
            for x in 0..n {
                for h in &cur {
                    next.insert(s.sub(s.add(x, h), x));
                }
            }
        }
        if kind.left_absorbing() {
            for r in 0..rn {
                for h in &cur {
                    next.insert(s.act(r, h));
                }
            }
        }
        if kind.right_absorbing() {
            for h in &cur {
                for r in 0..rn {
                    next.insert(s.ring().mul(h, r));
                }
            }
        }
        if kind.ideal_clause() {
            for r1 in 0..rn {
                for r2 in 0..n {
                    let base = s.act(r1, r2);
                    for i in &cur {
                        next.insert(s.sub(s.act(r1, s.add(r2, i)), base));
                    }
                }
            }
        }
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}
