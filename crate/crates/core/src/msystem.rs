//! Classical m_v-systems and their duality with classical prime R-ideals.
//!
//! `S ⊆ M \ {0}` is a classical m_v-system when for all `K, L` among the
//! R-submodules and all `A, B` (or `a, b`): if `(K + AL) ∩ S` and
//! `(K + BL) ∩ S` are nonempty then so is `(K + XL) ∩ S`, where `X` is
//! `AB` for v=0,2, `(aR)(bR)` for v=3 and the single product `ab` for v=c.
//! Sums `K + Y` are pointwise sumsets.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::ops::{check_carrier, product, sumset, CarrierMismatch};
use crate::prime::{classical_condition, Factor, ModuleContext, Variant};
use crate::report::{standing_hypotheses, Failure, Theorem, VerifierReport};
use crate::set::ElementSet;
use crate::structure::AdditiveGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MSystemError {
    #[error("the set is empty")]
    EmptySet,
    #[error("the set contains 0")]
    ContainsZero,
    #[error(transparent)]
    CarrierMismatch(#[from] CarrierMismatch),
    #[error("variant 1 is not defined for m-systems")]
    V1NotDefined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MSystemWitness {
    pub a: Factor,
    pub b: Factor,
    pub k: ElementSet,
    pub l: ElementSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MSystemVerdict {
    pub subset: ElementSet,
    pub variant: Variant,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<MSystemWitness>,
}

/// `X` in the conclusion set `K + XL`.
fn conclusion_factor(mc: &ModuleContext, v: Variant, a: &Factor, b: &Factor) -> ElementSet {
    let ring = mc.ring.ring();
    match (a, b) {
        (Factor::Set(a), Factor::Set(b)) => product(ring, a, b),
        (Factor::Element(a), Factor::Element(b)) if v == Variant::V3 => {
            product(ring, &mc.ring.right_multiple(*a), &mc.ring.right_multiple(*b))
        }
        (Factor::Element(a), Factor::Element(b)) => ElementSet::singleton(ring.mul(*a, *b)),
        _ => unreachable!("mixed factors"),
    }
}

fn as_set(f: &Factor) -> ElementSet {
    match *f {
        Factor::Element(a) => ElementSet::singleton(a),
        Factor::Set(s) => s,
    }
}

/// True when `(a, b, K, L)` violates the m-system condition for `S`.
fn violates(mc: &ModuleContext, s: &ElementSet, v: Variant, a: &Factor, b: &Factor, k: &ElementSet, l: &ElementSet) -> bool {
    let m = mc.module();
    let meets = |x: &ElementSet| sumset(m, k, &product(m, x, l)).intersects(s);
    meets(&as_set(a)) && meets(&as_set(b)) && !meets(&conclusion_factor(mc, v, a, b))
}

/// Replays an m-system witness.
pub fn check_m_system_witness(mc: &ModuleContext, s: &ElementSet, v: Variant, w: &MSystemWitness) -> bool {
    violates(mc, s, v, &w.a, &w.b, &w.k, &w.l)
}

pub fn is_classical_m_system(mc: &ModuleContext, s: &ElementSet, v: Variant) -> Result<MSystemVerdict, MSystemError> {
    check_carrier(s, mc.module().order())?;
    if s.is_empty() {
        return Err(MSystemError::EmptySet);
    }
    if s.contains(0) {
        return Err(MSystemError::ContainsZero);
    }
    let pairs: Vec<(Factor, Factor)> = match v {
        Variant::V1 => return Err(MSystemError::V1NotDefined),
        Variant::V3 | Variant::Vc => {
            let rn = mc.ring.ring().order();
            (0..rn).flat_map(|a| (0..rn).map(move |b| (Factor::Element(a), Factor::Element(b)))).collect()
        }
        Variant::V0 | Variant::V2 => {
            let dom = mc.ring.domain(v);
            dom.iter().flat_map(|a| dom.iter().map(|b| (Factor::Set(*a), Factor::Set(*b)))).collect()
        }
    };
    let subs = &mc.submodules;
    let witness = pairs.par_iter().find_map_first(|(a, b)| {
        for k in subs {
            for l in subs {
                if violates(mc, s, v, a, b, k, l) {
                    return Some(MSystemWitness { a: *a, b: *b, k: *k, l: *l });
                }
            }
        }
        None
    });
    Ok(MSystemVerdict { subset: *s, variant: v, holds: witness.is_none(), witness })
}

/// P is v-classical prime exactly when `M \ P` is a classical m_v-system,
/// for every R-ideal `P` with `RM ⊄ P`.
pub fn verify_complement_theorem(mc: &ModuleContext) -> VerifierReport {
    let m = mc.module();
    let (met, why) = standing_hypotheses(m);
    let mut report = VerifierReport::new(Theorem::Complement, m.name(), met);
    for w in why {
        report.note(w);
    }
    let full = m.carrier();
    for p in mc.admissible_r_ideals() {
        let s = full.difference(&p);
        for v in Variant::MODULE {
            let classical = classical_condition(m, &mc.ring, &p, v, &mc.submodules).expect("module variant");
            let system = is_classical_m_system(mc, &s, v).expect("complement of a proper R-ideal");
            let ok = classical.holds() == Some(system.holds);
            report.check(ok, || {
                let detail = format!(
                    "classical prime: {}, complement is an m-system: {}",
                    classical.holds() == Some(true),
                    system.holds
                );
                Failure::new(Some(p), Some(v), detail).with_witness(classical.witness().copied())
            });
        }
    }
    report.finish()
}
