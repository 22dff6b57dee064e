//! Subcommand implementations. Each returns the process exit code.

use std::sync::Arc;
use std::time::Instant;

use nearprime_core::annihilator::{annihilator, verify_annihilator_props};
use nearprime_core::catalog::{self, ClaimStatus};
use nearprime_core::characterize::{verify, verify_all, verify_ring_chain};
use nearprime_core::io::{self, Structure, DEFAULT_MAX_POWER_ORDER};
use nearprime_core::msystem::is_classical_m_system;
use nearprime_core::nearfield::{build_dickson, build_gf9, build_power_module, is_proper_near_field, left_distributivity_witness, verify_rn_theorems};
use nearprime_core::prime::{
    check_witness, classify_module, classify_module_all, classify_ring, classify_ring_all, Classification, ClassifyOptions, Convention,
    ModuleContext, NRange, Notion, RingContext, Target, Variant, Witness, WitnessClaim,
};
use nearprime_core::report::{Outcome, Theorem, VerifierReport};
use nearprime_core::substructure::{enumerate, generated_substructure, subgroups};
use nearprime_core::{AdditiveGroup, FiniteModule, FiniteNearRing, RingAction, SubstructureKind};
use serde_json::{json, Value};

use crate::input::{self, CliError};
use crate::render::{self, WitnessLabels};
use crate::{CatalogAction, Cli, Command, ConventionArg, Global, NRangeArg, NotionArg, EXIT_CONTRADICTION, EXIT_INVALID, EXIT_OK};

pub fn run(cli: &Cli) -> Result<u8, CliError> {
    let g = cli.global;
    match &cli.command {
        Command::Validate { file } => validate(g, file),
        Command::Enumerate { file, kind, count, generate } => enumerate_cmd(g, file, kind, *count, generate.as_deref()),
        Command::Classify { file, ideal, variant, notion, convention, ring, n_range, check_witness } => {
            let q = ClassifyQuery {
                ideal: ideal.as_deref(),
                variant: input::variant(variant.as_deref())?,
                notion: notion.map(|n| match n {
                    NotionArg::Prime => Notion::Prime,
                    NotionArg::Classical => Notion::ClassicalPrime,
                }),
                convention: match convention {
                    ConventionArg::Dauns => Convention::Dauns,
                    ConventionArg::Juglal => Convention::Juglal,
                },
                ring: *ring,
                n_range: match n_range {
                    NRangeArg::Submodules => NRange::Submodules,
                    NRangeArg::RIdeals => NRange::RIdeals,
                },
                witness: check_witness.as_deref(),
            };
            classify(g, file, q)
        }
        Command::Msystem { file, set, variant } => msystem(g, file, set, input::variant(variant.as_deref())?),
        Command::Ann { file, set, verify } => ann(g, file, set, *verify),
        Command::Verify { file, theorem } => verify_cmd(g, file, theorem.as_deref()),
        Command::Nearfield { name, emit_json } => nearfield(g, name, *emit_json),
        Command::Power { file, n, verify, emit_json } => power(g, file, *n, *verify, *emit_json),
        Command::Catalog { action } => catalog_cmd(g, action),
    }
}

fn print_json(v: &impl serde::Serialize) {
    out!("{}", serde_json::to_string_pretty(v).expect("serializable output"));
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn ring_summary(r: &FiniteNearRing) -> Value {
    let f = r.flags();
    json!({
        "name": r.name(),
        "order": r.order(),
        "near_ring": r.is_near_ring(),
        "violations": r.violations().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "zero_symmetric": f.zero_symmetric,
        "identity": f.identity.map(|e| r.labels()[e].clone()),
        "abelian_addition": f.abelian_addition,
        "near_field": f.near_field,
    })
}

fn validate(g: Global, file: &str) -> Result<u8, CliError> {
    let s = input::load(file, g.strict)?;
    let ring = s.ring();
    let mut doc = json!({ "kind": "ring", "ring": ring_summary(ring) });
    if let Structure::Module(m) = &s {
        doc = json!({
            "kind": "module",
            "name": m.name(),
            "order": m.order(),
            "faithful": m.flags().faithful,
            "monogenic": m.flags().monogenic(),
            "ring": ring_summary(ring),
        });
    }
    if g.json {
        print_json(&doc);
        return Ok(EXIT_OK);
    }
    if let Structure::Module(m) = &s {
        out!("module {}: {} elements over {}", m.name(), m.order(), ring.name());
        out!("  module axioms: hold");
        out!("  faithful: {}", yes(m.flags().faithful));
        out!("  monogenic: {}", yes(m.flags().monogenic()));
    }
    let f = ring.flags();
    out!("ring {}: {} elements", ring.name(), ring.order());
    out!("  near-ring axioms: {}", if ring.is_near_ring() { "hold" } else { "violated" });
    out!("  zero-symmetric: {}", yes(f.zero_symmetric));
    out!("  identity: {}", f.identity.map_or("none", |e| ring.labels()[e].as_str()));
    out!("  abelian addition: {}", yes(f.abelian_addition));
    out!("  near-field: {}", yes(f.near_field));
    Ok(EXIT_OK)
}

fn enumerate_cmd(g: Global, file: &str, kind: &str, count: bool, generate: Option<&str>) -> Result<u8, CliError> {
    let kind: SubstructureKind = kind.parse().map_err(|e: <SubstructureKind as std::str::FromStr>::Err| CliError::Usage(e.to_string()))?;
    let s = input::load(file, g.strict)?;
    let usage = |e: nearprime_core::substructure::SubstructureError| CliError::Usage(e.to_string());
    let (sets, labels) = match &s {
        Structure::Ring(r) if kind.ring_only() => {
            let sets = match generate {
                Some(v) => vec![generated_substructure(r.as_ref(), &input::set(r.as_ref(), v)?, kind).map_err(usage)?],
                None => enumerate(r.as_ref(), kind).map_err(usage)?,
            };
            (sets, r.labels().to_vec())
        }
        _ => {
            let m = s.to_module();
            let sets = match generate {
                Some(v) => vec![generated_substructure(&m, &input::set(&m, v)?, kind).map_err(usage)?],
                None => enumerate(&m, kind).map_err(usage)?,
            };
            (sets, m.labels().to_vec())
        }
    };
    if g.json {
        let list: Vec<Vec<&str>> = sets.iter().map(|x| x.iter().map(|i| labels[i].as_str()).collect()).collect();
        print_json(&json!({ "kind": kind.name(), "count": sets.len(), "sets": sets, "labels": list }));
    } else if count {
        out!("{}", sets.len());
    } else {
        for x in &sets {
            out!("{}", render::set(x, &labels));
        }
    }
    Ok(EXIT_OK)
}

struct ClassifyQuery<'a> {
    ideal: Option<&'a str>,
    variant: Option<Variant>,
    notion: Option<Notion>,
    convention: Convention,
    ring: bool,
    n_range: NRange,
    witness: Option<&'a str>,
}

fn classify(g: Global, file: &str, q: ClassifyQuery) -> Result<u8, CliError> {
    let s = input::load(file, g.strict)?;
    let module = if q.ring { FiniteModule::regular(s.ring().clone()) } else { s.to_module() };
    let mc = ModuleContext::new(&module);
    let ring_labels = mc.ring.ring().labels();
    let carrier = if q.ring { ring_labels } else { module.labels() };
    let wl = WitnessLabels { ring: ring_labels, module: carrier };
    let opts = ClassifyOptions { n_range: q.n_range };

    if let Some(w) = q.witness {
        let w: Witness = w.parse().map_err(|e: nearprime_core::prime::WitnessParseError| CliError::Usage(e.to_string()))?;
        let p = input::set(&module, q.ideal.expect("required by clap"))?;
        let claim = WitnessClaim {
            target: if q.ring { Target::RingIdeal } else { Target::ModuleRIdeal },
            notion: q.notion.expect("required by clap"),
            variant: q.variant.expect("required by clap"),
            convention: q.convention,
            n_range: q.n_range,
        };
        let ok = check_witness(&mc, &p, claim, &w);
        if g.json {
            print_json(&json!({ "subject": p, "witness": w, "replays": ok }));
        } else {
            out!("witness replays: {ok}");
        }
        return Ok(if ok { EXIT_OK } else { EXIT_INVALID });
    }

    let classify_one = |p| -> Result<Classification, CliError> {
        Ok(if q.ring { classify_ring(&mc.ring, p)? } else { classify_module(&mc, p, opts)? })
    };
    let all: Vec<Classification> = match q.ideal {
        Some(arg) => vec![classify_one(&input::set(&module, arg)?)?],
        None if q.ring => classify_ring_all(&mc.ring),
        None => classify_module_all(&mc, opts),
    };

    // a single verdict prints bare
    if let (Some(v), Some(n), [c]) = (q.variant, q.notion, all.as_slice()) {
        let verdict = c.get(n, v, q.convention).ok_or_else(|| CliError::Usage(format!("no {n} verdict for variant {v}")))?;
        if g.json {
            print_json(&json!({ "subject": c.subject, "target": c.target, "notion": n, "variant": v, "convention": q.convention, "verdict": verdict }));
        } else {
            match verdict.holds() {
                Some(b) => out!("{b}"),
                None => out!("not applicable"),
            }
            if let Some(w) = verdict.witness() {
                out!("witness: {}", wl.describe(w, n));
                out!("replay: --check-witness \"{}\"", w.to_arg());
            }
        }
        return Ok(EXIT_OK);
    }

    let keep = |e: &nearprime_core::prime::VerdictEntry| q.variant.map_or(true, |v| v == e.variant) && q.notion.map_or(true, |n| n == e.notion);
    if g.json {
        let docs: Vec<Value> = all
            .iter()
            .map(|c| {
                let verdicts: Vec<_> = c.verdicts.iter().filter(|e| keep(e)).collect();
                json!({ "subject": c.subject, "target": c.target, "verdicts": verdicts, "notes": c.notes })
            })
            .collect();
        print_json(&docs);
        return Ok(EXIT_OK);
    }
    for c in &all {
        out!("P = {}", render::set(&c.subject, carrier));
        for e in c.verdicts.iter().filter(|e| keep(e)) {
            let conv = e.convention.map(|c| format!(" ({c})")).unwrap_or_default();
            out!("  {:<9} {}{:<9} {}", e.notion.to_string(), e.variant, conv, render::verdict(&e.verdict, e.notion, &wl));
        }
        for n in &c.notes {
            out!("  note: {n}");
        }
    }
    Ok(EXIT_OK)
}

fn msystem(g: Global, file: &str, set: &str, variant: Option<Variant>) -> Result<u8, CliError> {
    let module = input::load(file, g.strict)?.to_module();
    let mc = ModuleContext::new(&module);
    let s = input::set(&module, set)?;
    let variants: Vec<Variant> = variant.map_or(Variant::MODULE.to_vec(), |v| vec![v]);
    let mut out = Vec::new();
    for v in variants {
        out.push(is_classical_m_system(&mc, &s, v).map_err(|e| CliError::Invalid(e.to_string()))?);
    }
    if g.json {
        print_json(&out);
        return Ok(EXIT_OK);
    }
    let labels = module.labels();
    let rl = module.ring().labels();
    for r in &out {
        print!("classical m_{}-system: {}", r.variant, r.holds);
        if let Some(w) = &r.witness {
            let f = |x: &nearprime_core::prime::Factor| match x {
                nearprime_core::prime::Factor::Element(e) => rl[*e].clone(),
                nearprime_core::prime::Factor::Set(s) => render::set(s, rl),
            };
            print!("  [a={}, b={}, K={}, L={}]", f(&w.a), f(&w.b), render::set(&w.k, labels), render::set(&w.l, labels));
        }
        out!();
    }
    Ok(EXIT_OK)
}

fn ann(g: Global, file: &str, set: &str, verify: bool) -> Result<u8, CliError> {
    let module = input::load(file, g.strict)?.to_module();
    let s = input::set(&module, set)?;
    let a = annihilator(&module, &s).map_err(|e| CliError::Invalid(e.to_string()))?;
    let reports = if verify { verify_annihilator_props(&ModuleContext::new(&module)) } else { Vec::new() };
    if g.json {
        print_json(&json!({ "annihilator": a, "reports": reports }));
    } else {
        let rl = module.ring().labels();
        out!("Ann({}) = {}", render::set(&s, module.labels()), render::set(&a.annihilator, rl));
        let kinds: Vec<&str> = a.verified_kinds.iter().map(|k| k.name()).collect();
        out!("kinds: {}", if kinds.is_empty() { "none".to_string() } else { kinds.join(", ") });
        for r in &reports {
            out!("{}", render::report(r, module.labels()));
        }
    }
    Ok(if reports.iter().any(VerifierReport::is_violation) { EXIT_CONTRADICTION } else { EXIT_OK })
}

fn print_reports(g: Global, reports: &[VerifierReport], labels: &[String], started: Instant) {
    if g.json {
        print_json(&reports);
        return;
    }
    for r in reports {
        out!("{}", render::report(r, labels));
    }
    let count = |o| reports.iter().filter(|r| r.outcome == o).count();
    let violations = reports.iter().filter(|r| r.is_violation()).count();
    out!(
        "{} statement(s): {} hold, {} fail, {} vacuous; {} violation(s) inside the hypotheses",
        reports.len(),
        count(Outcome::Holds),
        count(Outcome::Fails),
        count(Outcome::Vacuous),
        violations
    );
    out!("finished in {} ms", started.elapsed().as_millis());
}

fn verify_cmd(g: Global, file: &str, theorem: Option<&str>) -> Result<u8, CliError> {
    let started = Instant::now();
    let module = input::load(file, g.strict)?.to_module();
    let mc = ModuleContext::new(&module);
    let reports = match theorem {
        Some(t) => {
            let t: Theorem = t.parse().map_err(|e: nearprime_core::report::UnknownTheorem| CliError::Usage(e.to_string()))?;
            let r = verify(&mc, t).ok_or_else(|| CliError::Usage(format!("{t} concerns power modules; use `power --verify`")))?;
            vec![r]
        }
        None => {
            let mut all = verify_all(&mc);
            all.push(verify_ring_chain(&RingContext::new(module.ring())));
            all
        }
    };
    print_reports(g, &reports, module.labels(), started);
    Ok(if reports.iter().any(VerifierReport::is_violation) { EXIT_CONTRADICTION } else { EXIT_OK })
}

fn nearfield(g: Global, name: &str, emit_json: bool) -> Result<u8, CliError> {
    let ring = match name {
        "dn32" => build_dickson(),
        "gf9" => build_gf9(),
        other => return Err(CliError::Usage(format!("unknown near-field {other:?}; expected dn32 or gf9"))),
    };
    if emit_json {
        out!("{}", io::ring_to_json(&ring));
        return Ok(EXIT_OK);
    }
    let witness = left_distributivity_witness(&ring);
    let fidelity = (name == "dn32").then(catalog::dickson_check);
    if g.json {
        print_json(&json!({
            "ring": ring_summary(&ring),
            "proper": is_proper_near_field(&ring),
            "non_distributive_witness": witness,
            "table_check": fidelity,
        }));
        return Ok(EXIT_OK);
    }
    let l = ring.labels();
    out!("{}: {} elements, near-field: {}", ring.name(), ring.order(), yes(ring.flags().near_field));
    match witness {
        Some((a, b, c)) => out!(
            "proper near-field: {a}({b} + {c}) = {} but {a}{b} + {a}{c} = {}",
            l[ring.mul(a, ring.add(b, c))],
            l[ring.add(ring.mul(a, b), ring.mul(a, c))],
            a = l[a],
            b = l[b],
            c = l[c]
        ),
        None => out!("left distributive: this is a field"),
    }
    if let Some(f) = fidelity {
        out!("table check: {}/{} cells match the shipped dn32 table", f.matching_cells, f.total_cells);
    }
    Ok(EXIT_OK)
}

fn power(g: Global, file: &str, n: usize, verify: bool, emit_json: bool) -> Result<u8, CliError> {
    let started = Instant::now();
    let ring: Arc<FiniteNearRing> = input::load(file, g.strict)?.ring().clone();
    let bound = io::max_order_from_env(DEFAULT_MAX_POWER_ORDER);
    let m = build_power_module(ring.clone(), n, bound).map_err(|e| CliError::Invalid(e.to_string()))?;
    if emit_json {
        out!("{}", io::module_to_json(&m));
        return Ok(EXIT_OK);
    }
    if verify {
        let reports = verify_rn_theorems(ring, n, bound).map_err(|e| CliError::Invalid(e.to_string()))?;
        print_reports(g, &reports, m.labels(), started);
        return Ok(if reports.iter().any(VerifierReport::is_violation) { EXIT_CONTRADICTION } else { EXIT_OK });
    }
    let mc = ModuleContext::new(&m);
    let doc = json!({
        "name": m.name(),
        "order": m.order(),
        "subgroups": subgroups(&m).len(),
        "r_submodules": mc.submodules.len(),
        "r_ideals": mc.r_ideals.len(),
    });
    if g.json {
        print_json(&doc);
    } else {
        out!("{}: {} elements", m.name(), m.order());
        out!("  subgroups: {}", doc["subgroups"]);
        out!("  R-submodules: {}", mc.submodules.len());
        out!("  R-ideals: {}", mc.r_ideals.len());
        for p in &mc.r_ideals {
            out!("    {}", render::set(p, m.labels()));
        }
    }
    Ok(EXIT_OK)
}

fn catalog_cmd(g: Global, action: &CatalogAction) -> Result<u8, CliError> {
    match action {
        CatalogAction::List => {
            let mut rows = Vec::new();
            for key in catalog::KEYS {
                let e = catalog::load_example(key)?;
                rows.push(json!({
                    "key": key,
                    "name": e.ring.name(),
                    "order": e.ring.order(),
                    "claims": e.claims.len(),
                    "valid": e.validation_errors().is_empty(),
                }));
            }
            if g.json {
                print_json(&rows);
            } else {
                for r in &rows {
                    let note = if r["valid"].as_bool() == Some(true) { "" } else { "  (tables break the standing hypotheses)" };
                    out!("{:<10} {:<10} {:>2} elements, {} claim(s){note}", r["key"].as_str().unwrap(), r["name"].as_str().unwrap(), r["order"], r["claims"]);
                }
            }
            Ok(EXIT_OK)
        }
        CatalogAction::Show { key } => {
            let e = catalog::load_example(key)?;
            let labels = e.module.labels();
            if g.json {
                let claims: Vec<Value> = e.claims.iter().map(|c| json!({ "claim": c.describe(labels), "detail": c })).collect();
                let tables: Value = serde_json::from_str(&io::ring_to_json(&e.ring)).expect("ring json");
                print_json(&json!({ "key": e.key, "ring": tables, "claims": claims, "discrepancy": e.discrepancy }));
            } else {
                out!("{}", io::ring_to_json(&e.ring));
                if let Some(d) = e.discrepancy {
                    out!("discrepancy: {d}");
                }
                for v in e.validation_errors() {
                    out!("violation: {v}");
                }
                for c in &e.claims {
                    print!("claim: {} ({})", c.describe(labels), c.source);
                    if let Some(w) = &c.witness {
                        print!(" witness {}", w.to_arg());
                    }
                    out!();
                }
            }
            Ok(EXIT_OK)
        }
        CatalogAction::Run { keys } => {
            let started = Instant::now();
            let keys: Vec<&str> = if keys.is_empty() { catalog::RUN_KEYS.to_vec() } else { keys.iter().map(String::as_str).collect() };
            let report = catalog::run_catalog(&keys)?;
            if g.json {
                print_json(&report);
            } else {
                for e in &report.entries {
                    out!("== {} ({}, {} elements){}", e.key, e.structure, e.order, if e.hypotheses_met { "" } else { " [outside the standing hypotheses]" });
                    for c in &e.claims {
                        let tag = match c.status {
                            ClaimStatus::Confirmed => "confirmed",
                            ClaimStatus::Contradicted => "CONTRADICTED",
                            ClaimStatus::NotApplicable => "not applicable",
                        };
                        out!("  [{tag}] {}", c.claim);
                    }
                    for f in &e.findings {
                        out!("  finding: {f}");
                    }
                    if let Some(d) = &e.dickson {
                        out!("  table check: {}/{} cells, near-field: {}, non-distributive witness: {:?}", d.matching_cells, d.total_cells, yes(d.near_field), d.non_distributive_witness);
                    }
                    let held = e.reports.iter().filter(|r| r.outcome == Outcome::Holds).count();
                    let failed: Vec<String> =
                        e.reports.iter().filter(|r| r.outcome == Outcome::Fails).map(|r| format!("{} on {}", r.theorem, r.structure)).collect();
                    out!("  statements: {} checked, {} hold, fail: [{}]", e.reports.len(), held, failed.join(", "));
                }
                out!(
                    "claims: {} confirmed, {} contradicted, {} not applicable; statement violations: {}",
                    report.confirmed, report.contradicted, report.not_applicable, report.violations
                );
                out!("finished in {} ms", started.elapsed().as_millis());
            }
            Ok(if report.has_contradictions() { EXIT_CONTRADICTION } else { EXIT_OK })
        }
    }
}
