//! Exhaustive checks of the characterization and transfer statements for
//! classical prime R-ideals.
//!
//! Each verifier evaluates every condition of its statement independently;
//! none of them uses one condition to shortcut another.

use rayon::prelude::*;
use serde::Serialize;

use crate::annihilator;
use crate::msystem::verify_complement_theorem;
use crate::ops::{orbit, product, quotient_module, residual_unchecked};
use crate::prime::{
    classical_condition, cyclic_submodules, module_prime_condition, ring_prime_condition, Convention, Factor, ModuleContext, RingContext, Variant, Verdict,
};
use crate::report::{standing_hypotheses, Failure, Theorem, VerifierReport};
use crate::set::ElementSet;
use crate::structure::AdditiveGroup;
use crate::substructure::{check_substructure, SubstructureKind};

/// Theorems checked by [`verify`] on a single module.
pub const MODULE_THEOREMS: &[Theorem] = &[
    Theorem::Chain,
    Theorem::PrimeImpliesClassical,
    Theorem::DaunsImpliesJuglal,
    Theorem::RIdealIsSubmodule,
    Theorem::Char0,
    Theorem::Char2,
    Theorem::Char3,
    Theorem::CharC,
    Theorem::TildeIdeal,
    Theorem::TildePrime,
    Theorem::TildeClassical,
    Theorem::Quotient,
    Theorem::ResidualPrime,
    Theorem::Identity2Eq3,
    Theorem::Complement,
    Theorem::AnnLeftIdeal,
    Theorem::AnnIdeal,
    Theorem::AnnClassical,
    Theorem::Ann3PrimeFaithful,
    Theorem::AnnFaithfulSubmodules,
];

fn classical(mc: &ModuleContext, p: &ElementSet, v: Variant) -> bool {
    holds(&classical_condition(mc.module(), &mc.ring, p, v, &mc.submodules).expect("module variant"))
}

fn holds(v: &Verdict) -> bool {
    v.holds() == Some(true)
}

fn new_report(mc: &ModuleContext, theorem: Theorem) -> VerifierReport {
    let (met, why) = standing_hypotheses(mc.module());
    let mut r = VerifierReport::new(theorem, mc.module().name(), met);
    for w in why {
        r.note(w);
    }
    r
}

fn is_ideal(rc: &RingContext, q: &ElementSet) -> bool {
    matches!(check_substructure(rc.ring(), q, SubstructureKind::Ideal), Ok(None))
}

/// Runs one statement on a module. `None` for statements about power modules.
pub fn verify(mc: &ModuleContext, theorem: Theorem) -> Option<VerifierReport> {
    Some(match theorem {
        Theorem::Chain => chain(mc),
        Theorem::PrimeImpliesClassical => prime_implies_classical(mc),
        Theorem::DaunsImpliesJuglal => dauns_implies_juglal(mc),
        Theorem::RIdealIsSubmodule => r_ideal_is_submodule(mc),
        Theorem::Char0 => characterization(mc, Variant::V0),
        Theorem::Char2 => characterization(mc, Variant::V2),
        Theorem::Char3 => characterization(mc, Variant::V3),
        Theorem::CharC => characterization(mc, Variant::Vc),
        Theorem::TildeIdeal => tilde_ideal(mc),
        Theorem::TildePrime => tilde_prime(mc),
        Theorem::TildeClassical => tilde_classical(mc),
        Theorem::Quotient => quotient_transfer(mc),
        Theorem::ResidualPrime => residual_prime(mc),
        Theorem::Identity2Eq3 => identity_2eq3(mc),
        Theorem::Complement => verify_complement_theorem(mc),
        Theorem::AnnLeftIdeal
        | Theorem::AnnIdeal
        | Theorem::AnnClassical
        | Theorem::Ann3PrimeFaithful
        | Theorem::AnnFaithfulSubmodules => annihilator::verify_prop(mc, theorem),
        _ => return None,
    })
}

/// Every module-level statement, run concurrently, in [`MODULE_THEOREMS`] order.
pub fn verify_all(mc: &ModuleContext) -> Vec<VerifierReport> {
    MODULE_THEOREMS.par_iter().filter_map(|&t| verify(mc, t)).collect()
}

fn chain(mc: &ModuleContext) -> VerifierReport {
    let mut r = new_report(mc, Theorem::Chain);
    for p in mc.admissible_r_ideals() {
        let [v0, v2, v3, vc] = Variant::MODULE.map(|v| classical(mc, &p, v));
        for (name, stronger, weaker) in [("c => 3", vc, v3), ("3 => 2", v3, v2), ("2 => 0", v2, v0)] {
            r.check(!stronger || weaker, || Failure::new(Some(p), None, format!("{name} fails")));
        }
    }
    r.finish()
}

fn prime_implies_classical(mc: &ModuleContext) -> VerifierReport {
    let mut r = new_report(mc, Theorem::PrimeImpliesClassical);
    for p in mc.admissible_r_ideals() {
        for v in Variant::MODULE {
            let prime = module_prime_condition(mc, &p, v, Convention::Dauns).expect("module variant");
            let cl = classical_condition(mc.module(), &mc.ring, &p, v, &mc.submodules).expect("module variant");
            r.check(!holds(&prime) || holds(&cl), || {
                Failure::new(Some(p), Some(v), "prime but not classical prime").with_witness(cl.witness().copied())
            });
        }
    }
    r.finish()
}

fn dauns_implies_juglal(mc: &ModuleContext) -> VerifierReport {
    let mut r = new_report(mc, Theorem::DaunsImpliesJuglal);
    let mut differ = 0;
    for p in mc.admissible_r_ideals() {
        let d = module_prime_condition(mc, &p, Variant::V0, Convention::Dauns).expect("v0");
        let j = module_prime_condition(mc, &p, Variant::V0, Convention::Juglal).expect("v0");
        if d.holds() != j.holds() {
            differ += 1;
        }
        r.check(!holds(&d) || holds(&j), || {
            Failure::new(Some(p), Some(Variant::V0), "0-prime over R-submodules but not over R-ideals")
                .with_witness(j.witness().copied())
        });
    }
    r.note(format!("the two conventions differ on {differ} R-ideal(s)"));
    r.finish()
}

fn r_ideal_is_submodule(mc: &ModuleContext) -> VerifierReport {
    let mut r = new_report(mc, Theorem::RIdealIsSubmodule);
    for p in &mc.r_ideals {
        r.check(mc.submodules.contains(p), || Failure::new(Some(*p), None, "R-ideal that is not an R-submodule"));
    }
    r.finish()
}

/// Values of every condition of a characterization statement for one `P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterizationInstance {
    pub subject: ElementSet,
    pub variant: Variant,
    /// `(label, value)` in the statement's order.
    pub conditions: Vec<(&'static str, bool)>,
    /// Whether the residuals `(P:Rm)`, `m ∉ P`, form a chain under inclusion.
    pub residuals_totally_ordered: bool,
    /// Residuals that satisfy the prime condition without being ideals.
    pub non_ideal_residuals: usize,
    /// Whether `(0 : R m̄)` computed in `M/P` matched `(P : Rm)` in `M`.
    pub routes_agree: bool,
}

impl CharacterizationInstance {
    pub fn agree(&self) -> bool {
        self.conditions.windows(2).all(|w| w[0].1 == w[1].1)
    }
}

/// Element form: `X m ⊆ P ⇒ aRm ⊆ P or bRm ⊆ P` with `X = (aR)(bR)` (v=3)
/// or `aRb` (v=c).
fn element_condition(mc: &ModuleContext, p: &ElementSet, v: Variant) -> bool {
    let m = mc.module();
    let ring = mc.ring.ring();
    let rn = ring.order();
    (0..rn).into_par_iter().all(|a| {
        let ar = mc.ring.right_multiple(a);
        (0..rn).all(|b| {
            let br = mc.ring.right_multiple(b);
            let x = match v {
                Variant::V3 => product(ring, &ar, &br),
                _ => product(ring, &ar, &ElementSet::singleton(b)),
            };
            (0..m.order()).all(|e| {
                let single = ElementSet::singleton(e);
                !product(m, &x, &single).is_subset(p)
                    || product(m, &ar, &single).is_subset(p)
                    || product(m, &br, &single).is_subset(p)
            })
        })
    })
}

/// Evaluates every condition of the v-characterization for `P`.
///
/// `P` must be an enumerated R-ideal with `RM ⊄ P`.
pub fn characterization_instance(mc: &ModuleContext, p: &ElementSet, v: Variant) -> CharacterizationInstance {
    let m = mc.module();
    let rc = &mc.ring;
    let definition = classical(mc, p, v);

    // coset route: (0 : R m̄) for each nonzero class of M/P
    let q = quotient_module(m, p).expect("enumerated R-ideal");
    let zero = ElementSet::singleton(0);
    let coset_residuals: Vec<ElementSet> =
        (1..q.module.order()).map(|c| residual_unchecked(&q.module, &zero, &orbit(&q.module, c))).collect();

    // residual route: (P : Rm) for m outside P
    let outside: Vec<usize> = (0..m.order()).filter(|x| !p.contains(*x)).collect();
    let residuals: Vec<ElementSet> = outside.iter().map(|&x| residual_unchecked(m, p, &orbit(m, x))).collect();
    let routes_agree = outside.iter().zip(&residuals).all(|(&x, res)| coset_residuals[q.class_of[x] - 1] == *res);
    let residuals_totally_ordered =
        residuals.iter().all(|a| residuals.iter().all(|b| a.is_subset(b) || b.is_subset(a)));
    let tilde = residual_unchecked(m, p, &m.carrier());

    let ring_prime = |x: &ElementSet, v: Variant| holds(&ring_prime_condition(rc, x, v));
    let quotient = coset_residuals.iter().all(|x| ring_prime(x, v));
    let residual_part = residuals.iter().all(|x| ring_prime(x, v));
    let tilde_variant = match v {
        Variant::V0 => Variant::V0,
        _ => Variant::V2,
    };
    let residual = residual_part && ring_prime(&tilde, tilde_variant);
    let non_ideal_residuals = residuals.iter().filter(|x| ring_prime(x, v) && !is_ideal(rc, x)).count();

    let conditions = match v {
        Variant::V0 | Variant::V2 => {
            let cyclic = holds(&classical_condition(m, rc, p, v, &cyclic_submodules(m)).expect("module variant"));
            vec![("definition", definition), ("cyclic", cyclic), ("quotient", quotient), ("residual", residual)]
        }
        _ => {
            let arb = classical(mc, p, Variant::Vc);
            let element = element_condition(mc, p, v);
            vec![("definition", definition), ("aRbN", arb), ("element", element), ("quotient", quotient), ("residual", residual)]
        }
    };
    CharacterizationInstance {
        subject: *p,
        variant: v,
        conditions,
        residuals_totally_ordered,
        non_ideal_residuals,
        routes_agree,
    }
}

fn characterization(mc: &ModuleContext, v: Variant) -> VerifierReport {
    let theorem = match v {
        Variant::V0 => Theorem::Char0,
        Variant::V2 => Theorem::Char2,
        Variant::V3 => Theorem::Char3,
        _ => Theorem::CharC,
    };
    let mut r = new_report(mc, theorem);
    let labels = mc.module().labels();
    let ideals = mc.admissible_r_ideals();
    let instances: Vec<CharacterizationInstance> =
        ideals.par_iter().map(|p| characterization_instance(mc, p, v)).collect();
    let mut chains = 0;
    for inst in &instances {
        let values: Vec<String> = inst.conditions.iter().map(|(l, b)| format!("{l}={b}")).collect();
        r.note(format!("P={}: {}", inst.subject.display_with(labels), values.join(" ")));
        if inst.residuals_totally_ordered {
            chains += 1;
        }
        if inst.non_ideal_residuals > 0 {
            r.note(format!(
                "P={}: {} residual(s) satisfy the prime condition without being ideals",
                inst.subject.display_with(labels),
                inst.non_ideal_residuals
            ));
        }
        r.check(inst.agree(), || Failure::new(Some(inst.subject), Some(v), format!("conditions disagree: {}", values.join(" "))));
        r.check(inst.routes_agree, || Failure::new(Some(inst.subject), Some(v), "coset and residual routes disagree"));
    }
    if !instances.is_empty() {
        r.note(format!("residuals (P:Rm) totally ordered for {chains} of {} R-ideal(s)", instances.len()));
    }
    if !r.failures.is_empty() {
        if let Some(x) = (0..mc.module().order()).find(|&x| !orbit(mc.module(), x).contains(x)) {
            r.note(format!("M is not unital: {} ∉ R{}", labels[x], labels[x]));
        }
    }
    r.finish()
}

fn tilde_ideal(mc: &ModuleContext) -> VerifierReport {
    let mut r = new_report(mc, Theorem::TildeIdeal);
    let m = mc.module();
    for p in &mc.r_ideals {
        let t = residual_unchecked(m, p, &m.carrier());
        r.check(is_ideal(&mc.ring, &t), || Failure::new(Some(*p), None, format!("(P:M) = {t} is not an ideal")));
    }
    r.finish()
}

fn tilde_prime(mc: &ModuleContext) -> VerifierReport {
    let mut r = new_report(mc, Theorem::TildePrime);
    let m = mc.module();
    for p in mc.admissible_r_ideals() {
        let t = residual_unchecked(m, &p, &m.carrier());
        for v in Variant::MODULE {
            let prime = module_prime_condition(mc, &p, v, Convention::Dauns).expect("module variant");
            if !holds(&prime) {
                continue;
            }
            let cond = ring_prime_condition(&mc.ring, &t, v);
            r.check(holds(&cond) && is_ideal(&mc.ring, &t), || {
                Failure::new(Some(p), Some(v), format!("(P:M) = {t} is not a v-prime ideal")).with_witness(cond.witness().copied())
            });
        }
    }
    r.finish()
}

fn tilde_classical(mc: &ModuleContext) -> VerifierReport {
    let mut r = new_report(mc, Theorem::TildeClassical);
    let m = mc.module();
    let ring = mc.ring.ring();
    for p in mc.admissible_r_ideals() {
        let t = residual_unchecked(m, &p, &m.carrier());
        for v in Variant::MODULE {
            if !classical(mc, &p, v) {
                continue;
            }
            let cond = classical_condition(ring, &mc.ring, &t, v, &mc.ring.ideals).expect("module variant");
            r.check(holds(&cond) && is_ideal(&mc.ring, &t), || {
                Failure::new(Some(p), Some(v), format!("(P:M) = {t} is not a v-classical prime ideal"))
                    .with_witness(cond.witness().copied())
            });
        }
    }
    r.finish()
}

fn quotient_transfer(mc: &ModuleContext) -> VerifierReport {
    let mut r = new_report(mc, Theorem::Quotient);
    let m = mc.module();
    let zero = ElementSet::singleton(0);
    for p in mc.admissible_r_ideals() {
        let q = quotient_module(m, &p).expect("enumerated R-ideal");
        let qc = ModuleContext::new(&q.module);
        for v in Variant::MODULE {
            let here = classical(mc, &p, v);
            let there = holds(&classical_condition(&q.module, &qc.ring, &zero, v, &qc.submodules).expect("module variant"));
            r.check(here == there, || {
                Failure::new(Some(p), Some(v), format!("P classical prime: {here}, M/P classical prime: {there}"))
            });
        }
    }
    r.finish()
}

fn residual_prime(mc: &ModuleContext) -> VerifierReport {
    let mut r = new_report(mc, Theorem::ResidualPrime);
    let m = mc.module();
    for p in mc.admissible_r_ideals() {
        for v in Variant::MODULE {
            if !classical(mc, &p, v) {
                continue;
            }
            for n in &mc.r_ideals {
                let res = residual_unchecked(m, &p, n);
                let cond = ring_prime_condition(&mc.ring, &res, v);
                r.check(holds(&cond) && is_ideal(&mc.ring, &res), || {
                    Failure::new(Some(p), Some(v), format!("(P:N) = {res} for N = {n} is not a v-prime ideal"))
                        .with_witness(cond.witness().copied())
                });
            }
        }
    }
    r.finish()
}

fn identity_2eq3(mc: &ModuleContext) -> VerifierReport {
    let mut r = new_report(mc, Theorem::Identity2Eq3);
    if mc.ring.ring().flags().identity.is_none() {
        r.note("the near-ring has no identity");
        return r.finish();
    }
    for p in mc.admissible_r_ideals() {
        let (v2, v3) = (classical(mc, &p, Variant::V2), classical(mc, &p, Variant::V3));
        r.check(v2 == v3, || Failure::new(Some(p), None, format!("2-classical: {v2}, 3-classical: {v3}")));
    }
    r.finish()
}

/// Ring-level chain: c ⇒ 3 ⇒ 2 ⇒ 0 for classical prime ideals.
pub fn verify_ring_chain(rc: &RingContext) -> VerifierReport {
    let ring = rc.ring();
    let met = ring.is_near_ring() && ring.flags().zero_symmetric;
    let mut r = VerifierReport::new(Theorem::Chain, ring.name(), met);
    r.note("ring ideals, I over two-sided ideals");
    for p in rc.ideals.iter().filter(|p| p.len() < ring.order()) {
        let [v0, v2, v3, vc] =
            Variant::MODULE.map(|v| holds(&classical_condition(ring, rc, p, v, &rc.ideals).expect("variant")));
        for (name, stronger, weaker) in [("c => 3", vc, v3), ("3 => 2", v3, v2), ("2 => 0", v2, v0)] {
            r.check(!stronger || weaker, || Failure::new(Some(*p), None, format!("{name} fails")));
        }
    }
    r.finish()
}

/// Witness factors in a form suitable for display, used by reports.
pub fn factor_label(f: &Factor, labels: &[String]) -> String {
    match f {
        Factor::Element(e) => labels.get(*e).cloned().unwrap_or_else(|| e.to_string()),
        Factor::Set(s) => s.display_with(labels).to_string(),
    }
}
