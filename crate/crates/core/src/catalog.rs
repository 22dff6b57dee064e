//! Built-in example structures, their stated classifications, and a runner
//! that recomputes every classification and compares.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::characterize::{verify_all, verify_ring_chain};
use crate::io::{RingSpec, DEFAULT_MAX_POWER_ORDER};
use crate::nearfield::{build_dickson, left_distributivity_witness, verify_rn_theorems};
use crate::prime::{
    check_witness, classical_prime_at, is_classical_prime_module_ideal, is_classical_prime_ring_ideal, is_prime_module_ideal,
    Convention, ModuleContext, NRange, Notion, RingContext, Target, Variant, Witness, WitnessClaim,
};
use crate::report::VerifierReport;
use crate::set::ElementSet;
use crate::structure::{AdditiveGroup, FiniteModule, FiniteNearRing, RingAction, RingTables, ValidationError};

const KLEIN4: &str = include_str!("../../../fixtures/klein4.json");
const Z3: &str = include_str!("../../../fixtures/z3.json");
const Z4_CYCLIC: &str = include_str!("../../../fixtures/z4-cyclic.json");
const Z4_KLEIN: &str = include_str!("../../../fixtures/z4-klein.json");
const Z6: &str = include_str!("../../../fixtures/z6.json");
const DN32: &str = include_str!("../../../fixtures/dn32.json");

/// Every catalog key, aliases included.
pub const KEYS: &[&str] = &["klein4", "z3", "z4", "z4-cyclic", "z4-klein", "z6", "dn32"];

/// Keys swept by a full run; `z4` stands for `z4-klein`.
pub const RUN_KEYS: &[&str] = &["klein4", "z3", "z4", "z4-cyclic", "z6", "dn32"];

/// Raw JSON of a fixture, by key.
pub fn fixture_json(key: &str) -> Option<&'static str> {
    Some(match key {
        "klein4" => KLEIN4,
        "z3" => Z3,
        "z4" | "z4-klein" => Z4_KLEIN,
        "z4-cyclic" => Z4_CYCLIC,
        "z6" => Z6,
        "dn32" => DN32,
        _ => return None,
    })
}

fn tables(key: &str) -> Option<RingTables> {
    let spec: RingSpec = serde_json::from_str(fixture_json(key)?).ok()?;
    Some(RingTables { name: spec.name, elements: spec.elements, add: spec.add, mul: spec.mul })
}

/// Ring tables of a fixture kept verbatim even when they violate the axioms.
pub fn lenient_ring(key: &str) -> Option<FiniteNearRing> {
    FiniteNearRing::from_tables_unchecked(tables(key)?).ok()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog key {0:?}; known: klein4, z3, z4, z4-cyclic, z4-klein, z6, dn32")]
    UnknownKey(String),
    #[error("{key} fails validation: {}{}", errors.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "), note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default())]
    ValidationFailed { key: String, errors: Vec<ValidationError>, note: Option<String> },
}

/// What a claim asserts about its subject.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClaimKind {
    /// Ring-ideal primeness; classical `I` ranges over ideals.
    Ring { notion: Notion, variant: Variant },
    /// Module R-ideal primeness; classical `N` ranges over R-submodules.
    Module { notion: Notion, variant: Variant, convention: Convention },
    /// The classical condition restricted to one `N`.
    ModuleAt { variant: Variant, n: ElementSet },
    /// The nonzero R-submodules of the module, in sorted order.
    NonzeroSubmodules { sets: Vec<ElementSet> },
}

/// A stated classification of a catalog structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub subject: ElementSet,
    pub kind: ClaimKind,
    pub expected: bool,
    /// Counterexample given with a negative claim, replayed independently.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub source: &'static str,
}

impl Claim {
    fn module(notion: Notion, variant: Variant, expected: bool, source: &'static str) -> Self {
        let kind = ClaimKind::Module { notion, variant, convention: Convention::Dauns };
        Claim { subject: ElementSet::singleton(0), kind, expected, witness: None, source }
    }

    fn ring(notion: Notion, variant: Variant, expected: bool, source: &'static str) -> Self {
        let kind = ClaimKind::Ring { notion, variant };
        Claim { subject: ElementSet::singleton(0), kind, expected, witness: None, source }
    }

    fn with(mut self, w: &str) -> Self {
        self.witness = Some(w.parse().expect("catalog witness"));
        self
    }

    pub fn describe(&self, labels: &[String]) -> String {
        let p = self.subject.display_with(labels);
        let not = if self.expected { "" } else { "not " };
        match &self.kind {
            ClaimKind::Ring { notion, variant } => format!("{p} is {not}{variant}-{} as a ring ideal", notion_name(*notion)),
            ClaimKind::Module { notion, variant, convention } => {
                let conv = if *notion == Notion::Prime { format!(" ({convention})") } else { String::new() };
                format!("{p} is {not}{variant}-{}{conv}", notion_name(*notion))
            }
            ClaimKind::ModuleAt { variant, n } => {
                format!("{p} {} the {variant}-classical condition at N={}", if self.expected { "meets" } else { "fails" }, n.display_with(labels))
            }
            ClaimKind::NonzeroSubmodules { sets } => {
                let list: Vec<String> = sets.iter().map(|s| s.display_with(labels).to_string()).collect();
                format!("nonzero R-submodules are {}", list.join(", "))
            }
        }
    }
}

fn notion_name(n: Notion) -> &'static str {
    match n {
        Notion::Prime => "prime",
        Notion::ClassicalPrime => "classical prime",
    }
}

fn s(v: &[usize]) -> ElementSet {
    ElementSet::from_indices(v.iter().copied())
}

fn claims_for(key: &str) -> Vec<Claim> {
    use Notion::{ClassicalPrime as Cl, Prime};
    use Variant::*;
    match key {
        "klein4" => vec![
            Claim::module(Cl, V0, true, "Klein-4 example"),
            Claim::module(Cl, V2, false, "Klein-4 example").with("A=0,2;B=0,2;N=0,1,2,3"),
            Claim::module(Cl, Vc, false, "Klein-4 example").with("a=3;b=2;N=0,1,2,3"),
        ],
        "z3" => vec![
            Claim::module(Cl, V0, true, "Z3 example"),
            Claim::module(Cl, V2, true, "Z3 example"),
            Claim::module(Cl, V3, false, "Z3 example").with("a=1;b=1;N=0,1,2"),
            Claim::module(Cl, Vc, false, "Z3 example").with("a=1;b=1;N=0,1,2"),
            Claim::ring(Cl, V0, true, "Z3 example"),
            Claim::ring(Cl, Vc, false, "Z3 example"),
        ],
        "z4" | "z4-klein" | "z4-cyclic" => vec![
            Claim {
                subject: ElementSet::singleton(0),
                kind: ClaimKind::NonzeroSubmodules { sets: vec![s(&[0, 1]), s(&[0, 2]), s(&[0, 1, 2, 3])] },
                expected: true,
                witness: None,
                source: "Z4 example",
            },
            Claim::module(Cl, V3, true, "Z4 example"),
            Claim::module(Cl, Vc, true, "Z4 example"),
            Claim::module(Prime, V3, false, "Z4 example").with("a=1;m=2"),
            Claim::module(Prime, Vc, false, "Z4 example").with("a=1;m=2"),
            Claim::module(Prime, V0, false, "Z4 example").with("A=0,1;B=0,2"),
        ],
        "z6" => vec![
            Claim {
                subject: ElementSet::singleton(0),
                kind: ClaimKind::NonzeroSubmodules { sets: vec![s(&[0, 3]), s(&[0, 1, 2, 3, 4, 5])] },
                expected: true,
                witness: None,
                source: "Z6 example",
            },
            Claim {
                subject: ElementSet::singleton(0),
                kind: ClaimKind::ModuleAt { variant: V3, n: s(&[0, 3]) },
                expected: true,
                witness: None,
                source: "Z6 example",
            },
            Claim {
                subject: ElementSet::singleton(0),
                kind: ClaimKind::ModuleAt { variant: Vc, n: s(&[0, 3]) },
                expected: false,
                witness: Some("a=3;b=3;N=0,3".parse().expect("catalog witness")),
                source: "Z6 example",
            },
        ],
        "dn32" => vec![Claim::module(Cl, Vc, true, "DN(3,2) example")],
        _ => Vec::new(),
    }
}

fn discrepancy_note(key: &str) -> Option<&'static str> {
    match key {
        "z4" | "z4-klein" | "z4-cyclic" => Some("the printed table leaves the addition open; both readings are shipped"),
        "z6" => Some("the printed table has r·0 = 3 for odd r"),
        _ => None,
    }
}

/// One catalog structure with its stated classifications.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub key: String,
    pub ring: Arc<FiniteNearRing>,
    /// The module the claims refer to: `R_R`.
    pub module: FiniteModule,
    pub claims: Vec<Claim>,
    pub source: &'static str,
    pub discrepancy: Option<&'static str>,
}

impl CatalogEntry {
    /// Axiom violations and, when the ring is not zero-symmetric, that too.
    pub fn validation_errors(&self) -> Vec<ValidationError> {
        let mut out = self.ring.violations().to_vec();
        if let Some(r) = (0..self.ring.order()).find(|&r| self.ring.mul(r, 0) != 0) {
            out.push(ValidationError::NotZeroSymmetric { r, product: self.ring.mul(r, 0) });
        }
        out
    }

    /// The entry, or `ValidationFailed` when it breaks the standing hypotheses.
    pub fn require_valid(self) -> Result<Self, CatalogError> {
        let errors = self.validation_errors();
        if errors.is_empty() {
            Ok(self)
        } else {
            Err(CatalogError::ValidationFailed { key: self.key, errors, note: self.discrepancy.map(str::to_string) })
        }
    }
}

/// Loads a catalog structure. Tables are kept verbatim even when they break
/// the axioms; use [`CatalogEntry::require_valid`] to reject those.
pub fn load_example(key: &str) -> Result<CatalogEntry, CatalogError> {
    let ring = Arc::new(lenient_ring(key).ok_or_else(|| CatalogError::UnknownKey(key.to_string()))?);
    let module = FiniteModule::regular(ring.clone());
    let source = claims_for(key).first().map_or("", |c| c.source);
    Ok(CatalogEntry { key: key.to_string(), ring, module, claims: claims_for(key), source, discrepancy: discrepancy_note(key) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Confirmed,
    Contradicted,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub claim: String,
    pub source: &'static str,
    pub expected: bool,
    pub computed: Option<bool>,
    pub status: ClaimStatus,
    /// Counterexample found by the engine, when the computed verdict is negative.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Whether the quoted witness replays, when one is quoted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quoted_witness_replays: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Recomputes one claim from scratch and compares.
pub fn evaluate_claim(mc: &ModuleContext, claim: &Claim) -> ClaimResult {
    let p = &claim.subject;
    let labels = mc.module().labels();
    let (verdict, replay_claim) = match &claim.kind {
        ClaimKind::NonzeroSubmodules { sets } => {
            let found: Vec<ElementSet> = mc.submodules.iter().filter(|x| x.len() > 1).copied().collect();
            let computed = found == *sets;
            let note = (!computed).then(|| {
                let list: Vec<String> = found.iter().map(|x| x.display_with(labels).to_string()).collect();
                format!("enumerated: {}", list.join(", "))
            });
            return finish(claim, labels, Some(computed), None, None, note);
        }
        ClaimKind::Ring { notion, variant } => {
            let rc: &RingContext = &mc.ring;
            let v = match notion {
                Notion::ClassicalPrime => is_classical_prime_ring_ideal(rc, p, *variant),
                Notion::Prime => crate::prime::is_prime_ring_ideal(rc, p, *variant),
            };
            let wc = WitnessClaim {
                target: Target::RingIdeal,
                notion: *notion,
                variant: *variant,
                convention: Convention::Dauns,
                n_range: NRange::Submodules,
            };
            (v, wc)
        }
        ClaimKind::Module { notion, variant, convention } => {
            let v = match notion {
                Notion::ClassicalPrime => is_classical_prime_module_ideal(mc, p, *variant),
                Notion::Prime => is_prime_module_ideal(mc, p, *variant, *convention),
            };
            let wc = WitnessClaim {
                target: Target::ModuleRIdeal,
                notion: *notion,
                variant: *variant,
                convention: *convention,
                n_range: NRange::Submodules,
            };
            (v, wc)
        }
        ClaimKind::ModuleAt { variant, n } => {
            let wc = WitnessClaim {
                target: Target::ModuleRIdeal,
                notion: Notion::ClassicalPrime,
                variant: *variant,
                convention: Convention::Dauns,
                n_range: NRange::Submodules,
            };
            (classical_prime_at(mc, p, *variant, n), wc)
        }
    };
    match verdict {
        Err(e) => finish(claim, labels, None, None, None, Some(e.to_string())),
        Ok(v) => {
            let replay = claim.witness.as_ref().map(|w| check_witness(mc, p, replay_claim, w));
            let note = match &v {
                crate::prime::Verdict::NotApplicable { reason } => Some(reason.clone()),
                _ => None,
            };
            finish(claim, labels, v.holds(), v.witness().copied(), replay, note)
        }
    }
}

fn finish(
    claim: &Claim,
    labels: &[String],
    computed: Option<bool>,
    witness: Option<Witness>,
    quoted_witness_replays: Option<bool>,
    mut note: Option<String>,
) -> ClaimResult {
    let status = match computed {
        None => ClaimStatus::NotApplicable,
        Some(c) if c == claim.expected && quoted_witness_replays != Some(false) => ClaimStatus::Confirmed,
        Some(_) => ClaimStatus::Contradicted,
    };
    if quoted_witness_replays == Some(false) {
        let msg = "the quoted witness does not replay";
        note = Some(note.map_or(msg.to_string(), |n| format!("{n}; {msg}")));
    }
    ClaimResult {
        claim: claim.describe(labels),
        source: claim.source,
        expected: claim.expected,
        computed,
        status,
        witness,
        quoted_witness_replays,
        note,
    }
}

/// Cell-by-cell comparison of the constructed DN(3,2) with the shipped table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DicksonCheck {
    pub matching_cells: usize,
    pub total_cells: usize,
    /// `(row, column, shipped, constructed)`.
    pub mismatches: Vec<(usize, usize, usize, usize)>,
    pub near_field: bool,
    /// `(a, b, c)` with `a(b + c) ≠ ab + ac`.
    pub non_distributive_witness: Option<(usize, usize, usize)>,
}

impl DicksonCheck {
    pub fn passes(&self) -> bool {
        self.matching_cells == self.total_cells && self.near_field && self.non_distributive_witness.is_some()
    }
}

pub fn dickson_check() -> DicksonCheck {
    let built = build_dickson();
    let shipped = lenient_ring("dn32").expect("dn32 fixture");
    let n = built.order();
    let mut mismatches = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let (x, y) = (shipped.mul(a, b), built.mul(a, b));
            if x != y {
                mismatches.push((a, b, x, y));
            }
        }
    }
    DicksonCheck {
        matching_cells: n * n - mismatches.len(),
        total_cells: n * n,
        mismatches,
        near_field: built.is_near_ring() && built.flags().near_field,
        non_distributive_witness: left_distributivity_witness(&built),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub key: String,
    pub structure: String,
    pub order: usize,
    pub hypotheses_met: bool,
    pub violations: Vec<String>,
    pub claims: Vec<ClaimResult>,
    /// Discrepancies and failures outside the standing hypotheses.
    pub findings: Vec<String>,
    pub reports: Vec<VerifierReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dickson: Option<DicksonCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogReport {
    pub entries: Vec<EntryReport>,
    pub confirmed: usize,
    pub contradicted: usize,
    pub not_applicable: usize,
    /// Statement failures on structures that meet the hypotheses.
    pub violations: usize,
}

impl CatalogReport {
    pub fn has_contradictions(&self) -> bool {
        self.contradicted > 0 || self.violations > 0
    }
}

fn run_entry(entry: &CatalogEntry) -> EntryReport {
    let mc = ModuleContext::new(&entry.module);
    let labels = entry.module.labels();
    let errors = entry.validation_errors();
    let violations: Vec<String> = errors.iter().map(ToString::to_string).collect();
    let hypotheses_met = errors.is_empty();
    let claims: Vec<ClaimResult> = entry.claims.par_iter().map(|c| evaluate_claim(&mc, c)).collect();
    let mut reports = verify_all(&mc);
    reports.push(verify_ring_chain(&mc.ring));
    let mut findings = Vec::new();
    if let Some(note) = entry.discrepancy {
        findings.push(format!("table discrepancy: {note}"));
    }
    for v in &violations {
        findings.push(format!("tables as printed: {v}"));
    }
    for c in claims.iter().filter(|c| c.status != ClaimStatus::Confirmed) {
        let mut line = format!("claim {:?} ({}): expected {}, computed {}", c.claim, c.source, c.expected, show(c.computed));
        if let Some(w) = &c.witness {
            line.push_str(&format!(", witness {}", w.describe(entry.ring.labels(), labels, labels)));
        }
        if let Some(n) = &c.note {
            line.push_str(&format!(" [{n}]"));
        }
        if !hypotheses_met {
            line.push_str(" — structure outside the standing hypotheses");
        }
        findings.push(line);
    }
    let c_classical_contradicted = claims.iter().zip(&entry.claims).any(|(r, c)| {
        r.status == ClaimStatus::Contradicted && matches!(c.kind, ClaimKind::Module { notion: Notion::ClassicalPrime, variant: Variant::Vc, .. })
    });
    if c_classical_contradicted && !entry.ring.violations().is_empty() {
        let zero = ElementSet::singleton(0);
        let holds = c_classical_right_bracketed(&mc, &zero);
        findings.push(format!(
            "multiplication is not associative; with aRb read as {{a(rb)}} the c-classical condition for {{0}} {}",
            if holds { "holds" } else { "still fails" }
        ));
    }
    for r in reports.iter().filter(|r| r.outcome == crate::report::Outcome::Fails && !r.hypotheses_met) {
        findings.push(format!("{} fails on {} outside its hypotheses ({} instance(s))", r.theorem, r.structure, r.failures.len()));
    }
    let dickson = (entry.key == "dn32").then(dickson_check);
    if entry.key == "dn32" {
        let rn = verify_rn_theorems(entry.ring.clone(), 2, DEFAULT_MAX_POWER_ORDER).expect("DN(3,2) is a near-field");
        reports.extend(rn);
    }
    EntryReport {
        key: entry.key.clone(),
        structure: entry.ring.name().to_string(),
        order: entry.ring.order(),
        hypotheses_met,
        violations,
        claims,
        findings,
        reports,
        dickson,
    }
}

/// The c-classical condition with `aRb` formed as `{a(rb)}`; differs from
/// the default `{(ar)b}` only on non-associative tables.
pub fn c_classical_right_bracketed(mc: &ModuleContext, p: &ElementSet) -> bool {
    let ring = mc.ring.ring();
    let m = mc.module();
    let n = ring.order();
    let scale = |x: &ElementSet, y: &ElementSet| -> ElementSet { x.iter().flat_map(|a| y.iter().map(move |b| m.act(a, b))).collect() };
    (0..n).all(|a| {
        (0..n).all(|b| {
            let arb: ElementSet = (0..n).map(|r| ring.mul(a, ring.mul(r, b))).collect();
            mc.submodules.iter().all(|big_n| {
                !scale(&arb, big_n).is_subset(p)
                    || scale(&ElementSet::singleton(a), big_n).is_subset(p)
                    || scale(&ElementSet::singleton(b), big_n).is_subset(p)
            })
        })
    })
}

fn show(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "true",
        Some(false) => "false",
        None => "not applicable",
    }
}

/// Classifies every listed entry, compares with the stated claims and runs
/// the statement verifiers. Contradictions are reported, not raised.
pub fn run_catalog(keys: &[&str]) -> Result<CatalogReport, CatalogError> {
    let entries: Vec<CatalogEntry> = keys.iter().map(|k| load_example(k)).collect::<Result<_, _>>()?;
    let reports: Vec<EntryReport> = entries.par_iter().map(run_entry).collect();
    let count = |st| reports.iter().flat_map(|e| &e.claims).filter(|c| c.status == st).count();
    let violations = reports.iter().flat_map(|e| &e.reports).filter(|r| r.is_violation()).count();
    Ok(CatalogReport {
        confirmed: count(ClaimStatus::Confirmed),
        contradicted: count(ClaimStatus::Contradicted),
        not_applicable: count(ClaimStatus::NotApplicable),
        violations,
        entries: reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(key: &str) -> EntryReport {
        run_entry(&load_example(key).unwrap())
    }

    #[test]
    fn unknown_key() {
        assert_eq!(load_example("z5").unwrap_err(), CatalogError::UnknownKey("z5".into()));
    }

    #[test]
    fn expected_claims_are_attached() {
        let k = load_example("klein4").unwrap();
        assert!(k.claims.iter().any(|c| c.kind
            == ClaimKind::Module { notion: Notion::ClassicalPrime, variant: Variant::V0, convention: Convention::Dauns }
            && c.expected));
        let z4 = load_example("z4").unwrap();
        assert!(z4.claims.iter().any(|c| matches!(c.kind, ClaimKind::Module { notion: Notion::Prime, variant: Variant::V3, .. }) && !c.expected));
    }

    #[test]
    fn strict_loading_rejects_z4_and_z6() {
        assert!(load_example("klein4").unwrap().require_valid().is_ok());
        assert!(matches!(load_example("z4").unwrap().require_valid(), Err(CatalogError::ValidationFailed { .. })));
        let z6 = load_example("z6").unwrap().require_valid().unwrap_err();
        assert!(z6.to_string().contains("r·0"), "{z6}");
    }

    #[test]
    fn klein4_all_confirmed() {
        let e = entry("klein4");
        assert!(e.claims.iter().all(|c| c.status == ClaimStatus::Confirmed), "{:?}", e.claims);
        assert!(e.findings.is_empty(), "{:?}", e.findings);
    }

    #[test]
    fn z4_reading_reproduces_submodule_list() {
        let klein = entry("z4-klein");
        assert_eq!(klein.claims[0].status, ClaimStatus::Confirmed);
        let cyclic = entry("z4-cyclic");
        assert_eq!(cyclic.claims[0].status, ClaimStatus::Contradicted);
    }

    #[test]
    fn dickson_table_matches() {
        let d = dickson_check();
        assert_eq!(d.matching_cells, 81);
        assert!(d.passes());
    }

    #[test]
    fn empty_run() {
        let r = run_catalog(&[]).unwrap();
        assert!(r.entries.is_empty());
        assert!(!r.has_contradictions());
    }
}
