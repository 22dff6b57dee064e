//! Prime and classical prime ideals of near-rings and R-ideals of modules.
//!
//! Every predicate is an exhaustive sweep over enumerated quantifier
//! domains. Sweeps run in parallel over the outermost domain and keep the
//! first witness in domain order, so reported witnesses are deterministic.
//!
//! Variants quantify over:
//! * `0`: two-sided ideals, `1`: left ideals, `2`: left R-subgroups;
//! * `3`: elements, through `aRb` (rings), `(aR)m` (modules) or `(aR)(bR)N`;
//! * `c`: elements, through bare products `ab`, `am` or `(aRb)N`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ops::{check_carrier, orbit, product, scale, CarrierMismatch};
use crate::set::ElementSet;
use crate::structure::{AdditiveGroup, FiniteModule, FiniteNearRing, RingAction};
use crate::substructure::{check_substructure, filter_kind, subgroups, SubstructureKind, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "0")]
    V0,
    #[serde(rename = "1")]
    V1,
    #[serde(rename = "2")]
    V2,
    #[serde(rename = "3")]
    V3,
    #[serde(rename = "c")]
    Vc,
}

impl Variant {
    pub const ALL: [Variant; 5] = [Variant::V0, Variant::V1, Variant::V2, Variant::V3, Variant::Vc];
    /// The variants defined for modules.
    pub const MODULE: [Variant; 4] = [Variant::V0, Variant::V2, Variant::V3, Variant::Vc];

    pub fn name(self) -> &'static str {
        match self {
            Variant::V0 => "0",
            Variant::V1 => "1",
            Variant::V2 => "2",
            Variant::V3 => "3",
            Variant::Vc => "c",
        }
    }

    /// Quantifier domain of the set-valued variants.
    fn set_kind(self) -> Option<SubstructureKind> {
        match self {
            Variant::V0 => Some(SubstructureKind::Ideal),
            Variant::V1 => Some(SubstructureKind::LeftIdeal),
            Variant::V2 => Some(SubstructureKind::LeftRSubgroup),
            Variant::V3 | Variant::Vc => None,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown variant {0:?} (expected 0, 1, 2, 3 or c)")]
pub struct UnknownVariant(pub String);

impl FromStr for Variant {
    type Err = UnknownVariant;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches(['v', 'V']);
        Variant::ALL.into_iter().find(|v| v.name() == t).ok_or_else(|| UnknownVariant(s.to_string()))
    }
}

/// Which definition of a v=0 prime R-ideal: the second factor ranges over
/// R-submodules (`Dauns`) or over R-ideals (`Juglal`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    #[default]
    Dauns,
    Juglal,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Dauns => "dauns",
            Convention::Juglal => "juglal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Notion {
    Prime,
    #[serde(rename = "classical")]
    ClassicalPrime,
}

impl fmt::Display for Notion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Notion::Prime => "prime",
            Notion::ClassicalPrime => "classical",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    RingIdeal,
    ModuleRIdeal,
}

/// One factor of a witness: a set from a quantifier domain or an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Factor {
    Element(usize),
    Set(ElementSet),
}

impl Factor {
    fn as_set(&self) -> ElementSet {
        match *self {
            Factor::Element(a) => ElementSet::singleton(a),
            Factor::Set(s) => s,
        }
    }
}

/// A counterexample to a prime-type condition.
///
/// `a` always lives in the ring. `b` lives in the ring, except for module
/// primeness where it is the module-side factor (`B` or `m`). `n` is the
/// `N` (or `I`) of the classical conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub a: Factor,
    pub b: Factor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<ElementSet>,
}

fn indices(s: &ElementSet) -> String {
    s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

impl Witness {
    /// Index form accepted by `FromStr`, e.g. `A=0,2;B=0,2;N=0,1,2,3`.
    pub fn to_arg(&self) -> String {
        let mut parts = Vec::new();
        for (upper, lower, f) in [("A", "a", &self.a), ("B", "b", &self.b)] {
            parts.push(match f {
                Factor::Set(s) => format!("{upper}={}", indices(s)),
                Factor::Element(e) => format!("{lower}={e}"),
            });
        }
        if let Some(n) = &self.n {
            parts.push(format!("N={}", indices(n)));
        }
        parts.join(";")
    }

    /// Human-readable form using element labels.
    pub fn describe(&self, ring: &[String], second: &[String], carrier: &[String]) -> String {
        let show = |f: &Factor, upper: &str, lower: &str, labels: &[String]| match f {
            Factor::Set(s) => format!("{upper}={}", s.display_with(labels)),
            Factor::Element(e) => format!("{lower}={}", labels.get(*e).map_or("?", String::as_str)),
        };
        let mut out = format!("{}, {}", show(&self.a, "A", "a", ring), show(&self.b, "B", "b", second));
        if let Some(n) = &self.n {
            out.push_str(&format!(", N={}", n.display_with(carrier)));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse witness {0:?}: expected e.g. A=0,2;B=0,2;N=0,1 or a=3;b=2")]
pub struct WitnessParseError(pub String);

impl FromStr for Witness {
    type Err = WitnessParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || WitnessParseError(s.to_string());
        let (mut a, mut b, mut n) = (None, None, None);
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = part.split_once('=').ok_or_else(err)?;
            let list: Vec<usize> = if val.trim().is_empty() {
                Vec::new()
            } else {
                val.split(',').map(|x| x.trim().parse().map_err(|_| err())).collect::<Result<_, _>>()?
            };
            let set: ElementSet = list.iter().copied().collect();
            match key.trim() {
                "A" => a = Some(Factor::Set(set)),
                "B" => b = Some(Factor::Set(set)),
                "N" | "I" => n = Some(set),
                k @ ("a" | "b" | "m") if list.len() == 1 => {
                    let f = Some(Factor::Element(list[0]));
                    if k == "a" {
                        a = f
                    } else {
                        b = f
                    }
                }
                _ => return Err(err()),
            }
        }
        Ok(Witness { a: a.ok_or_else(err)?, b: b.ok_or_else(err)?, n })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails { witness: Witness },
    NotApplicable { reason: String },
}

impl Verdict {
    fn from_search(w: Option<Witness>) -> Self {
        match w {
            None => Verdict::Holds,
            Some(witness) => Verdict::Fails { witness },
        }
    }

    /// `Some(true)` / `Some(false)`, or `None` when not applicable.
    pub fn holds(&self) -> Option<bool> {
        match self {
            Verdict::Holds => Some(true),
            Verdict::Fails { .. } => Some(false),
            Verdict::NotApplicable { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fails { witness } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrimeError {
    #[error(transparent)]
    CarrierMismatch(#[from] CarrierMismatch),
    #[error("not an ideal: {0}")]
    NotAnIdeal(Violation),
    #[error("not a proper ideal")]
    NotProper,
    #[error("not an R-ideal: {0}")]
    NotAnRIdeal(Violation),
    #[error("variant 1 is not defined here")]
    V1NotDefined,
}

/// Quantifier domains of a near-ring, enumerated once.
#[derive(Debug, Clone)]
pub struct RingContext<'a> {
    ring: &'a FiniteNearRing,
    pub ideals: Vec<ElementSet>,
    pub left_ideals: Vec<ElementSet>,
    pub left_r_subgroups: Vec<ElementSet>,
    /// `aR` for every `a`.
    right_multiples: Vec<ElementSet>,
}

impl<'a> RingContext<'a> {
    pub fn new(ring: &'a FiniteNearRing) -> Self {
        let groups = subgroups(ring);
        let ideals = filter_kind(ring, groups.clone(), SubstructureKind::Ideal);
        let left_ideals = filter_kind(ring, groups.clone(), SubstructureKind::LeftIdeal);
        let left_r_subgroups = filter_kind(ring, groups, SubstructureKind::LeftRSubgroup);
        let full = ring.carrier();
        let right_multiples = (0..ring.order()).map(|a| scale(ring, a, &full)).collect();
        Self { ring, ideals, left_ideals, left_r_subgroups, right_multiples }
    }

    pub fn ring(&self) -> &'a FiniteNearRing {
        self.ring
    }

    /// Quantifier domain of a set-valued variant.
    pub fn domain(&self, v: Variant) -> &[ElementSet] {
        match v {
            Variant::V0 => &self.ideals,
            Variant::V1 => &self.left_ideals,
            Variant::V2 => &self.left_r_subgroups,
            Variant::V3 | Variant::Vc => &[],
        }
    }

    /// `aR`.
    pub fn right_multiple(&self, a: usize) -> ElementSet {
        self.right_multiples[a]
    }
}

/// Quantifier domains of a module and its ring.
#[derive(Debug, Clone)]
pub struct ModuleContext<'a> {
    module: &'a FiniteModule,
    pub ring: RingContext<'a>,
    pub submodules: Vec<ElementSet>,
    pub r_ideals: Vec<ElementSet>,
    /// `RM`.
    rm: ElementSet,
    /// `aM` for every `a`.
    scaled: Vec<ElementSet>,
}

impl<'a> ModuleContext<'a> {
    pub fn new(module: &'a FiniteModule) -> Self {
        let ring = RingContext::new(module.ring());
        let groups = subgroups(module);
        let submodules = filter_kind(module, groups.clone(), SubstructureKind::RSubmodule);
        let r_ideals = filter_kind(module, groups, SubstructureKind::RIdeal);
        let full = module.carrier();
        let rm = product(module, &module.ring().carrier(), &full);
        let scaled = (0..module.ring().order()).map(|a| scale(module, a, &full)).collect();
        Self { module, ring, submodules, r_ideals, rm, scaled }
    }

    pub fn module(&self) -> &'a FiniteModule {
        self.module
    }

    /// `RM`.
    pub fn rm(&self) -> ElementSet {
        self.rm
    }

    /// `aM`.
    pub fn scaled(&self, a: usize) -> ElementSet {
        self.scaled[a]
    }

    /// R-ideals `P` with `RM ⊄ P`, the subjects of every module notion.
    pub fn admissible_r_ideals(&self) -> Vec<ElementSet> {
        self.r_ideals.iter().copied().filter(|p| !self.rm.is_subset(p)).collect()
    }

    /// Domain of the `N` quantifier in the classical conditions.
    pub fn n_range(&self, range: NRange) -> &[ElementSet] {
        match range {
            NRange::Submodules => &self.submodules,
            NRange::RIdeals => &self.r_ideals,
        }
    }
}

/// Range of `N` in the module classical conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NRange {
    #[default]
    Submodules,
    RIdeals,
}

/// First `Some` in domain order, searched in parallel over the outer index.
fn first_witness<F>(outer: usize, f: F) -> Option<Witness>
where
    F: Fn(usize) -> Option<Witness> + Sync + Send,
{
    (0..outer).into_par_iter().find_map_first(f)
}

// ----- single-instance evaluation, shared by sweeps and witness replay -----

/// `AB ⊆ Q` (sets) / `aRb ⊆ Q` / `ab ∈ Q`, and not `a, b ∈ Q`.
fn ring_prime_instance(rc: &RingContext, q: &ElementSet, v: Variant, a: &Factor, b: &Factor) -> bool {
    let ring = rc.ring;
    let hyp = match (v, a, b) {
        (Variant::V3, Factor::Element(a), Factor::Element(b)) => {
            product(ring, &rc.right_multiple(*a), &ElementSet::singleton(*b))
        }
        (Variant::Vc, Factor::Element(a), Factor::Element(b)) => ElementSet::singleton(ring.mul(*a, *b)),
        (Variant::V0 | Variant::V1 | Variant::V2, Factor::Set(a), Factor::Set(b)) => product(ring, a, b),
        _ => return false,
    };
    hyp.is_subset(q) && !a.as_set().is_subset(q) && !b.as_set().is_subset(q)
}

/// Module primeness: `AB ⊆ P` / `(aR)m ⊆ P` / `am ∈ P`, with `AM ⊄ P` and `B ⊄ P`.
fn module_prime_instance(mc: &ModuleContext, p: &ElementSet, v: Variant, a: &Factor, b: &Factor) -> bool {
    let m = mc.module;
    let (hyp, am) = match (v, a, b) {
        (Variant::V3, Factor::Element(a), Factor::Element(x)) => {
            (product(m, &mc.ring.right_multiple(*a), &ElementSet::singleton(*x)), mc.scaled(*a))
        }
        (Variant::Vc, Factor::Element(a), Factor::Element(x)) => (ElementSet::singleton(m.act(*a, *x)), mc.scaled(*a)),
        (Variant::V0 | Variant::V2, Factor::Set(a), Factor::Set(b)) => (product(m, a, b), product(m, a, &m.carrier())),
        _ => return false,
    };
    hyp.is_subset(p) && !am.is_subset(p) && !b.as_set().is_subset(p)
}

/// The ring-side factor multiplying `N` in a classical hypothesis:
/// `AB`, `(aR)(bR)` or `aRb`.
fn classical_multiplier(rc: &RingContext, v: Variant, a: &Factor, b: &Factor) -> Option<ElementSet> {
    let ring = rc.ring;
    Some(match (v, a, b) {
        (Variant::V0 | Variant::V1 | Variant::V2, Factor::Set(a), Factor::Set(b)) => product(ring, a, b),
        (Variant::V3, Factor::Element(a), Factor::Element(b)) => {
            product(ring, &rc.right_multiple(*a), &rc.right_multiple(*b))
        }
        (Variant::Vc, Factor::Element(a), Factor::Element(b)) => {
            product(ring, &rc.right_multiple(*a), &ElementSet::singleton(*b))
        }
        _ => return None,
    })
}

/// `XN ⊆ P` with `X` from [`classical_multiplier`], and `aN ⊄ P`, `bN ⊄ P`.
fn classical_instance<S: RingAction>(s: &S, rc: &RingContext, p: &ElementSet, v: Variant, a: &Factor, b: &Factor, n: &ElementSet) -> bool {
    let Some(x) = classical_multiplier(rc, v, a, b) else { return false };
    product(s, &x, n).is_subset(p) && !product(s, &a.as_set(), n).is_subset(p) && !product(s, &b.as_set(), n).is_subset(p)
}

// ----- quantifier sweeps (conditions only, no preconditions) -----

/// The v-prime condition on a subset `Q` of the ring, without checking
/// that `Q` is a proper ideal.
pub fn ring_prime_condition(rc: &RingContext, q: &ElementSet, v: Variant) -> Verdict {
    let n = rc.ring.order();
    let w = match v {
        Variant::V3 | Variant::Vc => first_witness(n, |a| {
            (0..n)
                .map(|b| (Factor::Element(a), Factor::Element(b)))
                .find(|(fa, fb)| ring_prime_instance(rc, q, v, fa, fb))
                .map(|(a, b)| Witness { a, b, n: None })
        }),
        _ => {
            let dom = rc.domain(v);
            first_witness(dom.len(), |i| {
                dom.iter()
                    .map(|b| (Factor::Set(dom[i]), Factor::Set(*b)))
                    .find(|(fa, fb)| ring_prime_instance(rc, q, v, fa, fb))
                    .map(|(a, b)| Witness { a, b, n: None })
            })
        }
    };
    Verdict::from_search(w)
}

/// The v-prime condition on `P ⊆ M` without the R-ideal / `RM ⊄ P` checks.
pub fn module_prime_condition(mc: &ModuleContext, p: &ElementSet, v: Variant, convention: Convention) -> Result<Verdict, PrimeError> {
    let m = mc.module;
    let (rn, mn) = (m.ring().order(), m.order());
    let w = match v {
        Variant::V1 => return Err(PrimeError::V1NotDefined),
        Variant::V3 | Variant::Vc => first_witness(rn, |a| {
            (0..mn)
                .map(|x| (Factor::Element(a), Factor::Element(x)))
                .find(|(fa, fb)| module_prime_instance(mc, p, v, fa, fb))
                .map(|(a, b)| Witness { a, b, n: None })
        }),
        Variant::V0 | Variant::V2 => {
            let dom = mc.ring.domain(v);
            let second = match (v, convention) {
                (Variant::V0, Convention::Juglal) => &mc.r_ideals,
                _ => &mc.submodules,
            };
            first_witness(dom.len(), |i| {
                second
                    .iter()
                    .map(|b| (Factor::Set(dom[i]), Factor::Set(*b)))
                    .find(|(fa, fb)| module_prime_instance(mc, p, v, fa, fb))
                    .map(|(a, b)| Witness { a, b, n: None })
            })
        }
    };
    Ok(Verdict::from_search(w))
}

/// The v-classical condition on `P` with `N` drawn from `ns`, over any
/// carrier acted on by the ring of `rc`.
pub fn classical_condition<S: RingAction + Sync>(s: &S, rc: &RingContext, p: &ElementSet, v: Variant, ns: &[ElementSet]) -> Result<Verdict, PrimeError> {
    let w = match v {
        Variant::V1 => return Err(PrimeError::V1NotDefined),
        Variant::V3 | Variant::Vc => {
            let rn = rc.ring.order();
            first_witness(rn, |a| {
                for b in 0..rn {
                    let (fa, fb) = (Factor::Element(a), Factor::Element(b));
                    if let Some(n) = ns.iter().find(|n| classical_instance(s, rc, p, v, &fa, &fb, n)) {
                        return Some(Witness { a: fa, b: fb, n: Some(*n) });
                    }
                }
                None
            })
        }
        Variant::V0 | Variant::V2 => {
            let dom = rc.domain(v);
            first_witness(dom.len(), |i| {
                for b in dom {
                    let (fa, fb) = (Factor::Set(dom[i]), Factor::Set(*b));
                    if let Some(n) = ns.iter().find(|n| classical_instance(s, rc, p, v, &fa, &fb, n)) {
                        return Some(Witness { a: fa, b: fb, n: Some(*n) });
                    }
                }
                None
            })
        }
    };
    Ok(Verdict::from_search(w))
}

// ----- full predicates with preconditions -----

fn require_ideal(rc: &RingContext, p: &ElementSet) -> Result<(), PrimeError> {
    check_carrier(p, rc.ring.order())?;
    if let Some(v) = check_substructure(rc.ring, p, SubstructureKind::Ideal).expect("ring kind on the ring") {
        return Err(PrimeError::NotAnIdeal(v));
    }
    if p.len() == rc.ring.order() {
        return Err(PrimeError::NotProper);
    }
    Ok(())
}

/// Precondition shared by every module notion. `Ok(Some(_))` is a
/// not-applicable verdict.
fn module_precondition(mc: &ModuleContext, p: &ElementSet) -> Result<Option<Verdict>, PrimeError> {
    check_carrier(p, mc.module.order())?;
    if let Some(v) = check_substructure(mc.module, p, SubstructureKind::RIdeal).expect("module kind") {
        return Err(PrimeError::NotAnRIdeal(v));
    }
    if mc.rm.is_subset(p) {
        return Ok(Some(Verdict::NotApplicable { reason: "RM ⊆ P".into() }));
    }
    Ok(None)
}

/// Is `P` a v-prime ideal of the ring (`P` must be a proper ideal).
pub fn is_prime_ring_ideal(rc: &RingContext, p: &ElementSet, v: Variant) -> Result<Verdict, PrimeError> {
    require_ideal(rc, p)?;
    Ok(ring_prime_condition(rc, p, v))
}

/// Is `P` a v-classical prime ideal of the ring; `I` ranges over ideals.
pub fn is_classical_prime_ring_ideal(rc: &RingContext, p: &ElementSet, v: Variant) -> Result<Verdict, PrimeError> {
    if v == Variant::V1 {
        return Err(PrimeError::V1NotDefined);
    }
    require_ideal(rc, p)?;
    classical_condition(rc.ring, rc, p, v, &rc.ideals)
}

/// Is the R-ideal `P` v-prime in the module.
pub fn is_prime_module_ideal(mc: &ModuleContext, p: &ElementSet, v: Variant, convention: Convention) -> Result<Verdict, PrimeError> {
    if v == Variant::V1 {
        return Err(PrimeError::V1NotDefined);
    }
    if let Some(na) = module_precondition(mc, p)? {
        return Ok(na);
    }
    module_prime_condition(mc, p, v, convention)
}

/// Is the R-ideal `P` v-classical prime; `N` ranges over R-submodules.
pub fn is_classical_prime_module_ideal(mc: &ModuleContext, p: &ElementSet, v: Variant) -> Result<Verdict, PrimeError> {
    is_classical_prime_module_ideal_with(mc, p, v, NRange::Submodules)
}

pub fn is_classical_prime_module_ideal_with(mc: &ModuleContext, p: &ElementSet, v: Variant, range: NRange) -> Result<Verdict, PrimeError> {
    if v == Variant::V1 {
        return Err(PrimeError::V1NotDefined);
    }
    if let Some(na) = module_precondition(mc, p)? {
        return Ok(na);
    }
    classical_condition(mc.module, &mc.ring, p, v, mc.n_range(range))
}

/// The classical condition for `P` restricted to a single `N`.
pub fn classical_prime_at(mc: &ModuleContext, p: &ElementSet, v: Variant, n: &ElementSet) -> Result<Verdict, PrimeError> {
    check_carrier(n, mc.module.order())?;
    if let Some(na) = module_precondition(mc, p)? {
        return Ok(na);
    }
    classical_condition(mc.module, &mc.ring, p, v, std::slice::from_ref(n))
}

// ----- classification -----

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictEntry {
    pub notion: Notion,
    pub variant: Variant,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention: Option<Convention>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub subject: ElementSet,
    pub target: Target,
    pub verdicts: Vec<VerdictEntry>,
    pub notes: Vec<String>,
}

impl Classification {
    /// Verdict lookup; `convention` only matters for module v=0 primeness.
    pub fn get(&self, notion: Notion, variant: Variant, convention: Convention) -> Option<&Verdict> {
        self.verdicts
            .iter()
            .find(|e| e.notion == notion && e.variant == variant && e.convention.map_or(true, |c| c == convention))
            .map(|e| &e.verdict)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ClassifyOptions {
    pub n_range: NRange,
}

fn na(reason: &str) -> Verdict {
    Verdict::NotApplicable { reason: reason.into() }
}

/// Full verdict matrix for an R-ideal `P` of the module.
pub fn classify_module(mc: &ModuleContext, p: &ElementSet, opts: ClassifyOptions) -> Result<Classification, PrimeError> {
    let pre = module_precondition(mc, p)?;
    let mut verdicts = Vec::new();
    let mut push = |notion, variant, convention, verdict| verdicts.push(VerdictEntry { notion, variant, convention, verdict });
    let eval = |f: &dyn Fn() -> Result<Verdict, PrimeError>| -> Result<Verdict, PrimeError> {
        match &pre {
            Some(v) => Ok(v.clone()),
            None => f(),
        }
    };
    let not_defined = "variant 1 is not defined for modules";
    for v in Variant::ALL {
        match v {
            Variant::V1 => push(Notion::Prime, v, None, na(not_defined)),
            Variant::V0 => {
                for c in [Convention::Dauns, Convention::Juglal] {
                    push(Notion::Prime, v, Some(c), eval(&|| module_prime_condition(mc, p, v, c))?);
                }
            }
            _ => push(Notion::Prime, v, None, eval(&|| module_prime_condition(mc, p, v, Convention::Dauns))?),
        }
    }
    for v in Variant::ALL {
        let verdict = match v {
            Variant::V1 => na(not_defined),
            _ => eval(&|| classical_condition(mc.module, &mc.ring, p, v, mc.n_range(opts.n_range)))?,
        };
        push(Notion::ClassicalPrime, v, None, verdict);
    }
    let mut notes = Vec::new();
    let c = Classification { subject: *p, target: Target::ModuleRIdeal, verdicts, notes: Vec::new() };
    if pre.is_none() {
        let d = c.get(Notion::Prime, Variant::V0, Convention::Dauns).and_then(Verdict::holds);
        let j = c.get(Notion::Prime, Variant::V0, Convention::Juglal).and_then(Verdict::holds);
        if d == j {
            notes.push("convention changes no verdict".to_string());
        } else {
            notes.push("0-prime verdict depends on the convention".to_string());
        }
    }
    if !check_substructure(mc.module, p, SubstructureKind::RSubmodule).expect("module kind").is_none() {
        notes.push("P is an R-ideal but not an R-submodule".to_string());
    }
    if opts.n_range == NRange::RIdeals {
        notes.push("classical conditions quantify N over R-ideals".to_string());
    }
    if p.len() == 1 && pre.is_none() {
        let held: Vec<&str> = Variant::MODULE
            .iter()
            .filter(|&&v| c.get(Notion::ClassicalPrime, v, Convention::Dauns).and_then(Verdict::holds) == Some(true))
            .map(|v| v.name())
            .collect();
        notes.push(if held.is_empty() {
            "the module is not v-classical prime for any v".to_string()
        } else {
            format!("the module is v-classical prime for v in {{{}}}", held.join(", "))
        });
    }
    Ok(Classification { notes, ..c })
}

/// Full verdict matrix for an ideal `P` of the ring.
pub fn classify_ring(rc: &RingContext, p: &ElementSet) -> Result<Classification, PrimeError> {
    check_carrier(p, rc.ring.order())?;
    let proper = match require_ideal(rc, p) {
        Ok(()) => true,
        Err(PrimeError::NotProper) => false,
        Err(e) => return Err(e),
    };
    let mut verdicts = Vec::new();
    for v in Variant::ALL {
        let verdict = if proper { ring_prime_condition(rc, p, v) } else { na("P is not proper") };
        verdicts.push(VerdictEntry { notion: Notion::Prime, variant: v, convention: None, verdict });
    }
    for v in Variant::ALL {
        let verdict = match (v, proper) {
            (Variant::V1, _) => na("1-classical primeness is not defined"),
            (_, false) => na("P is not proper"),
            _ => classical_condition(rc.ring, rc, p, v, &rc.ideals)?,
        };
        verdicts.push(VerdictEntry { notion: Notion::ClassicalPrime, variant: v, convention: None, verdict });
    }
    Ok(Classification { subject: *p, target: Target::RingIdeal, verdicts, notes: Vec::new() })
}

/// Every proper R-ideal of the module, classified.
pub fn classify_module_all(mc: &ModuleContext, opts: ClassifyOptions) -> Vec<Classification> {
    let full = mc.module.order();
    mc.r_ideals
        .iter()
        .filter(|p| p.len() < full)
        .map(|p| classify_module(mc, p, opts).expect("enumerated R-ideal"))
        .collect()
}

/// Every proper ideal of the ring, classified.
pub fn classify_ring_all(rc: &RingContext) -> Vec<Classification> {
    let full = rc.ring.order();
    rc.ideals
        .iter()
        .filter(|p| p.len() < full)
        .map(|p| classify_ring(rc, p).expect("enumerated ideal"))
        .collect()
}

// ----- witness replay -----

/// What a witness claims to refute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessClaim {
    pub target: Target,
    pub notion: Notion,
    pub variant: Variant,
    pub convention: Convention,
    pub n_range: NRange,
}

fn in_domain<S: RingAction>(s: &S, f: &Factor, kind: Option<SubstructureKind>, order: usize) -> bool {
    match (f, kind) {
        (Factor::Element(e), None) => *e < order,
        (Factor::Set(set), Some(k)) => set.fits(order) && matches!(check_substructure(s, set, k), Ok(None)),
        _ => false,
    }
}

/// Replays a witness against the definition: true when every factor lies
/// in its quantifier domain and the hypothesis holds while both
/// conclusions fail.
pub fn check_witness(mc: &ModuleContext, p: &ElementSet, claim: WitnessClaim, w: &Witness) -> bool {
    let v = claim.variant;
    let ring = mc.ring.ring;
    let m = mc.module;
    let rn = ring.order();
    let ring_kind = v.set_kind();
    match (claim.target, claim.notion) {
        (Target::RingIdeal, Notion::Prime) => {
            w.n.is_none()
                && in_domain(ring, &w.a, ring_kind, rn)
                && in_domain(ring, &w.b, ring_kind, rn)
                && ring_prime_instance(&mc.ring, p, v, &w.a, &w.b)
        }
        (Target::RingIdeal, Notion::ClassicalPrime) => {
            let Some(n) = &w.n else { return false };
            v != Variant::V1
                && in_domain(ring, &w.a, ring_kind, rn)
                && in_domain(ring, &w.b, ring_kind, rn)
                && in_domain(ring, &Factor::Set(*n), Some(SubstructureKind::Ideal), rn)
                && classical_instance(ring, &mc.ring, p, v, &w.a, &w.b, n)
        }
        (Target::ModuleRIdeal, Notion::Prime) => {
            let b_kind = match (v, claim.convention) {
                (Variant::V3 | Variant::Vc, _) => None,
                (Variant::V0, Convention::Juglal) => Some(SubstructureKind::RIdeal),
                _ => Some(SubstructureKind::RSubmodule),
            };
            w.n.is_none()
                && v != Variant::V1
                && in_domain(ring, &w.a, ring_kind, rn)
                && in_domain(m, &w.b, b_kind, m.order())
                && module_prime_instance(mc, p, v, &w.a, &w.b)
        }
        (Target::ModuleRIdeal, Notion::ClassicalPrime) => {
            let Some(n) = &w.n else { return false };
            let n_kind = match claim.n_range {
                NRange::Submodules => SubstructureKind::RSubmodule,
                NRange::RIdeals => SubstructureKind::RIdeal,
            };
            v != Variant::V1
                && in_domain(ring, &w.a, ring_kind, rn)
                && in_domain(ring, &w.b, ring_kind, rn)
                && in_domain(m, &Factor::Set(*n), Some(n_kind), m.order())
                && classical_instance(m, &mc.ring, p, v, &w.a, &w.b, n)
        }
    }
}

/// `Rm` for every `m`, deduplicated, in first-occurrence order.
pub fn cyclic_submodules(m: &FiniteModule) -> Vec<ElementSet> {
    let mut out: Vec<ElementSet> = Vec::new();
    for x in 0..m.order() {
        let c = orbit(m, x);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fixtures;
    use crate::structure::{RingTables, Strictness};

    fn s(v: &[usize]) -> ElementSet {
        ElementSet::from_indices(v.iter().copied())
    }

    fn regular(key: &str) -> FiniteModule {
        FiniteModule::regular(fixtures::ring(key, Strictness::Permissive).unwrap())
    }

    fn claim(target: Target, notion: Notion, variant: Variant) -> WitnessClaim {
        WitnessClaim { target, notion, variant, convention: Convention::Dauns, n_range: NRange::Submodules }
    }

    #[test]
    fn klein4_classical() {
        let m = regular("klein4");
        let mc = ModuleContext::new(&m);
        let zero = s(&[0]);
        assert_eq!(is_classical_prime_module_ideal(&mc, &zero, Variant::V0).unwrap(), Verdict::Holds);
        let v2 = is_classical_prime_module_ideal(&mc, &zero, Variant::V2).unwrap();
        assert_eq!(v2.holds(), Some(false));
        let vc = is_classical_prime_module_ideal(&mc, &zero, Variant::Vc).unwrap();
        assert_eq!(vc.holds(), Some(false));
        // the witnesses quoted for this example replay
        let full = m.carrier();
        let w2 = Witness { a: Factor::Set(s(&[0, 2])), b: Factor::Set(s(&[0, 2])), n: Some(full) };
        assert!(check_witness(&mc, &zero, claim(Target::ModuleRIdeal, Notion::ClassicalPrime, Variant::V2), &w2));
        let wc = Witness { a: Factor::Element(3), b: Factor::Element(2), n: Some(full) };
        assert!(check_witness(&mc, &zero, claim(Target::ModuleRIdeal, Notion::ClassicalPrime, Variant::Vc), &wc));
        // and so do the ones we report
        for (v, verdict) in [(Variant::V2, v2), (Variant::Vc, vc)] {
            let w = verdict.witness().unwrap();
            assert!(check_witness(&mc, &zero, claim(Target::ModuleRIdeal, Notion::ClassicalPrime, v), w));
        }
        // a non-violation does not replay
        let bogus = Witness { a: Factor::Element(3), b: Factor::Element(3), n: Some(full) };
        assert!(!check_witness(&mc, &zero, claim(Target::ModuleRIdeal, Notion::ClassicalPrime, Variant::Vc), &bogus));
    }

    #[test]
    fn klein4_ring_zero_is_0_prime() {
        let r = fixtures::ring("klein4", Strictness::Strict).unwrap();
        let rc = RingContext::new(&r);
        assert_eq!(is_prime_ring_ideal(&rc, &s(&[0]), Variant::V0).unwrap(), Verdict::Holds);
        assert_eq!(is_prime_ring_ideal(&rc, &r.carrier(), Variant::V0), Err(PrimeError::NotProper));
        assert!(matches!(is_prime_ring_ideal(&rc, &s(&[0, 1]), Variant::V0), Err(PrimeError::NotAnIdeal(_))));
    }

    #[test]
    fn zero_multiplication_is_not_c_prime() {
        let t = RingTables {
            name: "zero3".into(),
            elements: vec!["0".into(), "1".into(), "2".into()],
            add: (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect(),
            mul: vec![vec![0; 3]; 3],
        };
        let r = FiniteNearRing::validate(t, Strictness::Strict).unwrap();
        let rc = RingContext::new(&r);
        let v = is_prime_ring_ideal(&rc, &s(&[0]), Variant::Vc).unwrap();
        assert_eq!(v.witness().unwrap(), &Witness { a: Factor::Element(1), b: Factor::Element(1), n: None });
    }

    #[test]
    fn z3_verdicts() {
        let m = regular("z3");
        let mc = ModuleContext::new(&m);
        let zero = s(&[0]);
        let v = is_prime_ring_ideal(&mc.ring, &zero, Variant::Vc).unwrap();
        assert_eq!(v.witness().unwrap(), &Witness { a: Factor::Element(1), b: Factor::Element(1), n: None });
        assert_eq!(is_classical_prime_ring_ideal(&mc.ring, &zero, Variant::V0).unwrap(), Verdict::Holds);
        assert_eq!(is_classical_prime_ring_ideal(&mc.ring, &zero, Variant::Vc).unwrap().holds(), Some(false));
        assert_eq!(is_classical_prime_ring_ideal(&mc.ring, &zero, Variant::V1), Err(PrimeError::V1NotDefined));
        assert_eq!(is_classical_prime_module_ideal(&mc, &zero, Variant::V2).unwrap(), Verdict::Holds);
        let v3 = is_classical_prime_module_ideal(&mc, &zero, Variant::V3).unwrap();
        assert_eq!(v3.witness().unwrap(), &Witness { a: Factor::Element(1), b: Factor::Element(1), n: Some(m.carrier()) });
    }

    #[test]
    fn z4_module_primeness() {
        let r = crate::catalog::lenient_ring("z4").unwrap();
        let m = FiniteModule::regular(Arc::new(r));
        let mc = ModuleContext::new(&m);
        let zero = s(&[0]);
        let prime = |v| is_prime_module_ideal(&mc, &zero, v, Convention::Dauns).unwrap();
        assert_eq!(prime(Variant::V3).holds(), Some(false));
        assert_eq!(prime(Variant::Vc).holds(), Some(false));
        assert_eq!(prime(Variant::V0).holds(), Some(false));
        let c = |v| claim(Target::ModuleRIdeal, Notion::Prime, v);
        let w3 = Witness { a: Factor::Element(1), b: Factor::Element(2), n: None };
        assert!(check_witness(&mc, &zero, c(Variant::V3), &w3));
        assert!(check_witness(&mc, &zero, c(Variant::Vc), &w3));
        let w0 = Witness { a: Factor::Set(s(&[0, 1])), b: Factor::Set(s(&[0, 2])), n: None };
        assert!(check_witness(&mc, &zero, c(Variant::V0), &w0));
        assert_eq!(prime(Variant::V0).witness().unwrap(), &w0);
    }

    #[test]
    fn one_element_module_is_not_applicable() {
        let t = RingTables { name: "z2".into(), elements: vec!["0".into(), "1".into()], add: vec![vec![0, 1], vec![1, 0]], mul: vec![vec![0, 0], vec![0, 1]] };
        let r = Arc::new(FiniteNearRing::validate(t, Strictness::Strict).unwrap());
        let tables = crate::structure::ModuleTables { name: "0".into(), elements: vec!["0".into()], add: vec![vec![0]], action: vec![vec![0]; 2] };
        let m = FiniteModule::validate(r, tables).unwrap();
        let mc = ModuleContext::new(&m);
        let c = classify_module(&mc, &s(&[0]), ClassifyOptions::default()).unwrap();
        assert!(c.verdicts.iter().all(|e| e.verdict.holds().is_none()));
    }

    #[test]
    fn dn32_all_classical() {
        let m = regular("dn32");
        let mc = ModuleContext::new(&m);
        let c = classify_module(&mc, &s(&[0]), ClassifyOptions::default()).unwrap();
        for v in Variant::MODULE {
            assert_eq!(c.get(Notion::ClassicalPrime, v, Convention::Dauns), Some(&Verdict::Holds));
        }
    }

    #[test]
    fn witness_strings_round_trip() {
        for text in ["A=0,2;B=0,2;N=0,1,2,3", "a=3;b=2;N=0,1,2,3", "a=1;b=2", "A=0;B=0,1"] {
            let w: Witness = text.parse().unwrap();
            assert_eq!(w.to_arg(), text);
        }
        assert_eq!("a=1;m=2".parse::<Witness>().unwrap().to_arg(), "a=1;b=2");
        assert!("a=1,2;b=2".parse::<Witness>().is_err());
        assert!("x=1".parse::<Witness>().is_err());
        assert!("a=1".parse::<Witness>().is_err());
    }

    #[test]
    fn variants_parse() {
        assert_eq!("c".parse::<Variant>().unwrap(), Variant::Vc);
        assert_eq!("v2".parse::<Variant>().unwrap(), Variant::V2);
        assert!("4".parse::<Variant>().is_err());
    }
}
