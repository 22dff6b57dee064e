//! Plain-text rendering.

use nearprime_core::prime::{Notion, Verdict, Witness};
use nearprime_core::report::VerifierReport;
use nearprime_core::ElementSet;

pub fn set(s: &ElementSet, labels: &[String]) -> String {
    s.display_with(labels).to_string()
}

/// Label sets a witness lives in: `a` in the ring, `b` in the ring or the
/// module, `N` in the module.
pub struct WitnessLabels<'a> {
    pub ring: &'a [String],
    pub module: &'a [String],
}

impl WitnessLabels<'_> {
    pub fn describe(&self, w: &Witness, notion: Notion) -> String {
        let second = if notion == Notion::Prime { self.module } else { self.ring };
        w.describe(self.ring, second, self.module)
    }
}

pub fn verdict(v: &Verdict, notion: Notion, labels: &WitnessLabels) -> String {
    match v {
        Verdict::Holds => "holds".to_string(),
        Verdict::Fails { witness } => format!("fails  [{}]", labels.describe(witness, notion)),
        Verdict::NotApplicable { reason } => format!("not applicable ({reason})"),
    }
}

pub fn report(r: &VerifierReport, labels: &[String]) -> String {
    let mut out = format!("{}: {} ({} instance(s))", r.theorem, r.outcome, r.instances_checked);
    if !r.hypotheses_met {
        out.push_str(" [outside the standing hypotheses]");
    }
    for f in &r.failures {
        out.push_str("\n    failure:");
        if let Some(s) = &f.subject {
            out.push_str(&format!(" P={}", set(s, labels)));
        }
        if let Some(v) = f.variant {
            out.push_str(&format!(" v={v}"));
        }
        out.push_str(&format!(" {}", f.detail));
        if let Some(w) = &f.witness {
            out.push_str(&format!(" [{}]", w.to_arg()));
        }
    }
    for n in &r.notes {
        out.push_str(&format!("\n    note: {n}"));
    }
    out
}
