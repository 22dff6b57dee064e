//! Left annihilators `Ann(P) = {r ∈ R : rP = 0}` and their stated properties.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::ops::{check_carrier, orbit, product, CarrierMismatch};
use crate::prime::{is_classical_prime_ring_ideal, module_prime_condition, Convention, ModuleContext, RingContext, Variant};
use crate::report::{standing_hypotheses, Failure, Theorem, VerifierReport};
use crate::set::ElementSet;
use crate::structure::{AdditiveGroup, FiniteModule, FiniteNearRing, RingAction};
use crate::substructure::{check_substructure, generated_substructure, SubstructureKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnnihilatorError {
    #[error("the set is empty")]
    EmptySet,
    #[error(transparent)]
    CarrierMismatch(#[from] CarrierMismatch),
}

/// Ring-side kinds an annihilator is tested against.
const RING_KINDS: [SubstructureKind; 8] = [
    SubstructureKind::Subgroup,
    SubstructureKind::NormalSubgroup,
    SubstructureKind::LeftRSubgroup,
    SubstructureKind::RightRSubgroup,
    SubstructureKind::InvariantRSubgroup,
    SubstructureKind::LeftIdeal,
    SubstructureKind::RightIdeal,
    SubstructureKind::Ideal,
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnnihilatorResult {
    pub subject: ElementSet,
    pub annihilator: ElementSet,
    /// Kinds of substructure of `R` the annihilator is.
    pub verified_kinds: Vec<SubstructureKind>,
}

impl AnnihilatorResult {
    pub fn is(&self, kind: SubstructureKind) -> bool {
        self.verified_kinds.contains(&kind)
    }
}

pub(crate) fn ann_unchecked<S: RingAction>(s: &S, p: &ElementSet) -> ElementSet {
    (0..s.ring().order()).filter(|&r| p.iter().all(|x| s.act(r, x) == 0)).collect()
}

fn kinds_of(ring: &FiniteNearRing, set: &ElementSet) -> Vec<SubstructureKind> {
    RING_KINDS.into_iter().filter(|&k| matches!(check_substructure(ring, set, k), Ok(None))).collect()
}

/// Left annihilator of a nonempty subset of a module or of the near-ring.
pub fn annihilator<S: RingAction>(s: &S, p: &ElementSet) -> Result<AnnihilatorResult, AnnihilatorError> {
    check_carrier(p, s.order())?;
    if p.is_empty() {
        return Err(AnnihilatorError::EmptySet);
    }
    let ann = ann_unchecked(s, p);
    Ok(AnnihilatorResult { subject: *p, annihilator: ann, verified_kinds: kinds_of(s.ring(), &ann) })
}

/// Largest module on which every nonempty subset is swept.
const ALL_SUBSETS_MAX: usize = 10;

/// Subsets swept by the left-ideal check: every nonempty subset of a small
/// module, otherwise submodules, R-ideals and singletons.
fn subjects(mc: &ModuleContext) -> Vec<ElementSet> {
    let n = mc.module().order();
    if n <= ALL_SUBSETS_MAX {
        return (1u32..1 << n).map(|bits| (0..n).filter(|i| bits >> i & 1 == 1).collect()).collect();
    }
    let mut out: Vec<ElementSet> = mc.submodules.iter().chain(&mc.r_ideals).copied().collect();
    out.extend((0..n).map(ElementSet::singleton));
    out.sort();
    out.dedup();
    out
}

fn new_report(mc: &ModuleContext, theorem: Theorem) -> VerifierReport {
    let (met, why) = standing_hypotheses(mc.module());
    let mut r = VerifierReport::new(theorem, mc.module().name(), met);
    for w in why {
        r.note(w);
    }
    r
}

/// Runs one annihilator statement on a module.
///
/// Statements about `R_R` and the ring's left R-subgroups use the module's
/// near-ring.
pub fn verify_prop(mc: &ModuleContext, theorem: Theorem) -> VerifierReport {
    match theorem {
        Theorem::AnnLeftIdeal => left_ideal(mc),
        Theorem::AnnIdeal => ideal(mc),
        Theorem::AnnClassical => classical(mc),
        Theorem::Ann3PrimeFaithful => three_prime_faithful(mc),
        Theorem::AnnFaithfulSubmodules => faithful_submodules(mc),
        other => panic!("{other} is not an annihilator statement"),
    }
}

/// Every annihilator statement on a module.
pub fn verify_annihilator_props(mc: &ModuleContext) -> Vec<VerifierReport> {
    [
        Theorem::AnnLeftIdeal,
        Theorem::AnnIdeal,
        Theorem::AnnClassical,
        Theorem::Ann3PrimeFaithful,
        Theorem::AnnFaithfulSubmodules,
    ]
    .into_par_iter()
    .map(|t| verify_prop(mc, t))
    .collect()
}

fn left_ideal(mc: &ModuleContext) -> VerifierReport {
    let mut r = new_report(mc, Theorem::AnnLeftIdeal);
    let m = mc.module();
    let ring = mc.ring.ring();
    let all = subjects(mc);
    if m.order() > ALL_SUBSETS_MAX {
        r.note("module too large for every subset; swept submodules, R-ideals and singletons");
    }
    let bad: Vec<(ElementSet, ElementSet)> = all
        .par_iter()
        .filter_map(|p| {
            let ann = ann_unchecked(m, p);
            (!matches!(check_substructure(ring, &ann, SubstructureKind::LeftIdeal), Ok(None))).then_some((*p, ann))
        })
        .collect();
    r.instances_checked += all.len() - bad.len();
    for (p, ann) in bad {
        r.check(false, || Failure::new(Some(p), None, format!("Ann(P) = {ann} is not a left ideal")));
    }
    r.finish()
}

fn ideal(mc: &ModuleContext) -> VerifierReport {
    let ring = mc.ring.ring();
    let met = ring.is_near_ring() && ring.flags().zero_symmetric;
    let mut r = VerifierReport::new(Theorem::AnnIdeal, mc.module().name(), met);
    r.note("P ranges over left R-subgroups of R, Ann taken in R_R");
    for p in mc.ring.left_r_subgroups.iter().filter(|p| p.len() > 1) {
        let ann = ann_unchecked(ring, p);
        r.check(matches!(check_substructure(ring, &ann, SubstructureKind::Ideal), Ok(None)), || {
            Failure::new(Some(*p), None, format!("Ann(P) = {ann} is not an ideal"))
        });
    }
    r.finish()
}

fn classical(mc: &ModuleContext) -> VerifierReport {
    let regular = FiniteModule::regular(mc.module().ring_arc().clone());
    let rr = ModuleContext::new(&regular);
    let (met, why) = standing_hypotheses(&regular);
    let mut r = VerifierReport::new(Theorem::AnnClassical, mc.module().name(), met);
    for w in why {
        r.note(w);
    }
    r.note("P ranges over nonzero R-ideals of R_R with RR ⊄ P");
    let ring = rr.ring.ring();
    for p in rr.admissible_r_ideals().into_iter().filter(|p| p.len() > 1) {
        let ann = ann_unchecked(ring, &p);
        for v in Variant::MODULE {
            let cl = crate::prime::classical_condition(&regular, &rr.ring, &p, v, &rr.submodules).expect("module variant");
            if cl.holds() != Some(true) {
                continue;
            }
            let verdict = is_classical_prime_ring_ideal(&rr.ring, &ann, v);
            let ok = matches!(&verdict, Ok(x) if x.holds() == Some(true));
            r.check(ok, || {
                let (detail, w) = match &verdict {
                    Ok(x) => (format!("Ann(P) = {ann} is not {v}-classical prime"), x.witness().copied()),
                    Err(e) => (format!("Ann(P) = {ann}: {e}"), None),
                };
                Failure::new(Some(p), Some(v), detail).with_witness(w)
            });
        }
    }
    r.finish()
}

fn three_prime_faithful(mc: &ModuleContext) -> VerifierReport {
    let mut r = new_report(mc, Theorem::Ann3PrimeFaithful);
    let m = mc.module();
    let zero = ElementSet::singleton(0);
    let rm = mc.rm();
    let prime = !rm.is_subset(&zero)
        && module_prime_condition(mc, &zero, Variant::V3, Convention::Dauns).expect("v3").holds() == Some(true);
    if !prime {
        r.note("M is not 3-prime");
        return r.finish();
    }
    let mut gen_differs = 0;
    let mut all_zero = true;
    for x in 1..m.order() {
        let single = ElementSet::singleton(x);
        let gen = generated_substructure(m, &single, SubstructureKind::RSubmodule).expect("module kind");
        if gen != orbit(m, x) {
            gen_differs += 1;
        }
        all_zero &= ann_unchecked(m, &gen) == zero;
    }
    if gen_differs > 0 {
        r.note(format!("gen(m) differs from Rm for {gen_differs} element(s)"));
    }
    let faithful = m.flags().faithful;
    r.check(faithful == all_zero, || {
        Failure::new(None, Some(Variant::V3), format!("faithful: {faithful}, Ann(gen(m)) = 0 for all m ≠ 0: {all_zero}"))
    });
    r.finish()
}

fn faithful_submodules(mc: &ModuleContext) -> VerifierReport {
    let mut r = new_report(mc, Theorem::AnnFaithfulSubmodules);
    let m = mc.module();
    let zero = ElementSet::singleton(0);
    let classical = [Variant::V0, Variant::V2].into_iter().any(|v| {
        crate::prime::classical_condition(m, &mc.ring, &zero, v, &mc.submodules).expect("variant").holds() == Some(true)
    });
    if !classical {
        r.note("M is neither 0- nor 2-classical prime");
        return r.finish();
    }
    let faithful: Vec<&ElementSet> =
        mc.submodules.iter().filter(|a| a.len() > 1 && ann_unchecked(m, a) == zero).collect();
    for a in &faithful {
        for b in &faithful {
            let premise = !product(m, &ann_unchecked(m, b), a).is_subset(&zero);
            if premise {
                let ann_a = ann_unchecked(m, a);
                r.check(ann_a == zero, || Failure::new(Some(**a), None, format!("Ann(A) = {ann_a}")));
            }
        }
    }
    if r.instances_checked == 0 {
        r.note("the premise Ann(B)A ≠ 0 never holds: a faithful B has Ann(B) = 0");
    }
    r.finish()
}

/// `Ann(M) = {0}`.
pub fn is_faithful(m: &FiniteModule) -> bool {
    ann_unchecked(m, &m.carrier()) == ElementSet::singleton(0)
}

/// Annihilator of `P` computed inside `R_R`.
pub fn ring_annihilator(rc: &RingContext, p: &ElementSet) -> Result<AnnihilatorResult, AnnihilatorError> {
    annihilator(rc.ring(), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::report::Outcome;
    use crate::structure::Strictness;

    fn s(v: &[usize]) -> ElementSet {
        ElementSet::from_indices(v.iter().copied())
    }

    fn regular(key: &str) -> FiniteModule {
        FiniteModule::regular(fixtures::ring(key, Strictness::Permissive).unwrap())
    }

    #[test]
    fn zero_is_annihilated_by_everything() {
        let m = regular("klein4");
        let a = annihilator(&m, &s(&[0])).unwrap();
        assert_eq!(a.annihilator, m.carrier());
    }

    #[test]
    fn klein4_column_one_is_zero() {
        let m = regular("klein4");
        // every row of the printed table has 0 in column 1
        assert!((0..4).all(|r| m.act(r, 1) == 0));
        let a = annihilator(&m, &s(&[0, 1])).unwrap();
        assert_eq!(a.annihilator, m.carrier());
        assert!(a.is(SubstructureKind::LeftIdeal));
    }

    #[test]
    fn dn32_whole_ring_has_zero_annihilator() {
        let m = regular("dn32");
        let a = annihilator(&m, &m.carrier()).unwrap();
        assert_eq!(a.annihilator, s(&[0]));
        assert!(a.is(SubstructureKind::Ideal));
        assert!(is_faithful(&m));
    }

    #[test]
    fn errors() {
        let m = regular("z3");
        assert_eq!(annihilator(&m, &ElementSet::empty()), Err(AnnihilatorError::EmptySet));
        assert!(matches!(annihilator(&m, &s(&[5])), Err(AnnihilatorError::CarrierMismatch(_))));
    }

    #[test]
    fn dn32_three_prime_faithful_holds() {
        let m = regular("dn32");
        let r = verify_prop(&ModuleContext::new(&m), Theorem::Ann3PrimeFaithful);
        assert_eq!(r.outcome, Outcome::Holds);
    }

    #[test]
    fn valid_examples_have_no_violations() {
        for key in ["klein4", "z3", "dn32"] {
            let m = regular(key);
            for r in verify_annihilator_props(&ModuleContext::new(&m)) {
                assert!(!r.is_violation(), "{key} {}: {:?}", r.theorem, r.failures);
            }
        }
    }

    #[test]
    fn faithful_submodule_premise_is_empty() {
        let m = regular("dn32");
        let r = verify_prop(&ModuleContext::new(&m), Theorem::AnnFaithfulSubmodules);
        assert_eq!(r.outcome, Outcome::Vacuous);
    }
}
