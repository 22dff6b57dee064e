//! Pointwise set arithmetic, residuals and quotient modules.
//!
//! Products here are plain product sets `{a x : a in A, x in X}`; they are
//! never closed under addition. Triple products such as `(aR)(bR)N` are
//! built left to right from these.

use std::sync::Arc;

use thiserror::Error;

use crate::set::ElementSet;
use crate::structure::{AdditiveGroup, FiniteModule, RingAction, Table};
use crate::substructure::{check_substructure, SubstructureKind, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("element {index} is outside a carrier of {order} elements")]
pub struct CarrierMismatch {
    pub index: usize,
    pub order: usize,
}

pub fn check_carrier(set: &ElementSet, order: usize) -> Result<(), CarrierMismatch> {
    match set.last() {
        Some(index) if index >= order => Err(CarrierMismatch { index, order }),
        _ => Ok(()),
    }
}

/// `{a x : a in A, x in X}` with `A` over the ring and `X` over `s`.
pub fn set_product<S: RingAction>(s: &S, a: &ElementSet, x: &ElementSet) -> Result<ElementSet, CarrierMismatch> {
    check_carrier(a, s.ring().order())?;
    check_carrier(x, s.order())?;
    Ok(product(s, a, x))
}

/// Unchecked [`set_product`].
#[inline]
pub(crate) fn product<S: RingAction>(s: &S, a: &ElementSet, x: &ElementSet) -> ElementSet {
    let mut out = ElementSet::empty();
    for r in a {
        for m in x {
            out.insert(s.act(r, m));
        }
    }
    out
}

/// `{a x : x in X}`.
#[inline]
pub(crate) fn scale<S: RingAction>(s: &S, a: usize, x: &ElementSet) -> ElementSet {
    x.iter().map(|m| s.act(a, m)).collect()
}

/// `{r m : r in R}`.
pub(crate) fn orbit<S: RingAction>(s: &S, m: usize) -> ElementSet {
    (0..s.ring().order()).map(|r| s.act(r, m)).collect()
}

/// Pointwise sumset `{k + y : k in K, y in Y}`.
pub fn sumset<G: AdditiveGroup>(g: &G, k: &ElementSet, y: &ElementSet) -> ElementSet {
    let mut out = ElementSet::empty();
    for a in k {
        for b in y {
            out.insert(g.add(a, b));
        }
    }
    out
}

/// `(P : N) = {r in R : rN ⊆ P}`.
pub fn residual<S: RingAction>(s: &S, p: &ElementSet, n: &ElementSet) -> Result<ElementSet, CarrierMismatch> {
    check_carrier(p, s.order())?;
    check_carrier(n, s.order())?;
    Ok(residual_unchecked(s, p, n))
}

pub(crate) fn residual_unchecked<S: RingAction>(s: &S, p: &ElementSet, n: &ElementSet) -> ElementSet {
    (0..s.ring().order()).filter(|&r| n.iter().all(|m| p.contains(s.act(r, m)))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error(transparent)]
    CarrierMismatch(#[from] CarrierMismatch),
    #[error("not an R-ideal: {0}")]
    NotAnRIdeal(Violation),
}

/// Coset module `M/P`.
///
/// Cosets are numbered by their smallest member, so the class of 0 is
/// index 0. Each coset is labelled `[m]` after that representative.
pub fn quotient_module(m: &FiniteModule, p: &ElementSet) -> Result<QuotientModule, QuotientError> {
    check_carrier(p, m.order())?;
    if let Some(v) = check_substructure(m, p, SubstructureKind::RIdeal).expect("module kind on a module") {
        return Err(QuotientError::NotAnRIdeal(v));
    }
    let n = m.order();
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for h in p {
            class_of[m.add(x, h)] = id;
        }
    }
    let k = reps.len();
    let add = Table::from_fn(k, k, |a, b| class_of[m.add(reps[a], reps[b])]);
    let ring = m.ring_arc().clone();
    let action = Table::from_fn(ring.order(), k, |r, c| class_of[m.act(r, reps[c])]);
    // the R-ideal property makes the action independent of the representative
    for r in 0..ring.order() {
        for x in 0..n {
            debug_assert_eq!(class_of[m.act(r, x)], class_of[m.act(r, reps[class_of[x]])]);
        }
    }
    let labels = reps.iter().map(|&x| format!("[{}]", m.labels()[x])).collect();
    let module = FiniteModule::from_parts(format!("{}/{}", m.name(), p.display_with(m.labels())), Arc::clone(&ring), labels, add, action);
    Ok(QuotientModule { module, class_of, representatives: reps })
}

/// A quotient together with the projection from the original carrier.
#[derive(Debug, Clone)]
pub struct QuotientModule {
    pub module: FiniteModule,
    /// `class_of[m]` is the index of `m + P`.
    pub class_of: Vec<usize>,
    pub representatives: Vec<usize>,
}

impl QuotientModule {
    /// Image of a subset under the projection.
    pub fn project(&self, set: &ElementSet) -> ElementSet {
        set.iter().map(|x| self.class_of[x]).collect()
    }

    /// Full preimage of a subset of the quotient.
    pub fn lift(&self, set: &ElementSet) -> ElementSet {
        (0..self.class_of.len()).filter(|&x| set.contains(self.class_of[x])).collect()
    }
}
