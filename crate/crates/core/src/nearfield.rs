//! The Dickson near-field DN(3,2), power modules `R^n`, and the structure
//! statements about `R^n` over a near-field.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::annihilator::ann_unchecked;
use crate::ops::{orbit, sumset};
use crate::prime::{classical_condition, ModuleContext, Variant};
use crate::report::{Failure, Theorem, VerifierReport};
use crate::set::ElementSet;
use crate::structure::{AdditiveGroup, FiniteModule, FiniteNearRing, ModuleTables, RingAction, RingTables, Strictness, ValidationError};

/// GF(9) as `Z3[x]/(x² + 1)`; element `c0 + c1·x` has index `c0 + 3·c1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Gf9;

impl Gf9 {
    pub const ORDER: usize = 9;

    fn split(a: usize) -> (usize, usize) {
        (a % 3, a / 3)
    }

    pub fn add(self, a: usize, b: usize) -> usize {
        let ((a0, a1), (b0, b1)) = (Self::split(a), Self::split(b));
        (a0 + b0) % 3 + 3 * ((a1 + b1) % 3)
    }

    /// `(a0 + a1 x)(b0 + b1 x)` with `x² = -1`.
    pub fn mul(self, a: usize, b: usize) -> usize {
        let ((a0, a1), (b0, b1)) = (Self::split(a), Self::split(b));
        let c0 = (a0 * b0 + 2 * a1 * b1) % 3;
        let c1 = (a0 * b1 + a1 * b0) % 3;
        c0 + 3 * c1
    }

    pub fn pow(self, a: usize, e: u32) -> usize {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    /// Nonzero squares, found by enumeration.
    pub fn is_square(self, a: usize) -> bool {
        a != 0 && (1..Self::ORDER).any(|t| self.mul(t, t) == a)
    }

    pub fn label(a: usize) -> String {
        let (c0, c1) = Self::split(a);
        match (c0, c1) {
            (c0, 0) => c0.to_string(),
            (0, 1) => "x".to_string(),
            (0, c1) => format!("{c1}x"),
            (c0, 1) => format!("{c0}+x"),
            (c0, c1) => format!("{c0}+{c1}x"),
        }
    }

    pub fn labels() -> Vec<String> {
        (0..Self::ORDER).map(Self::label).collect()
    }

    fn tables(name: &str, mul: impl Fn(usize, usize) -> usize) -> RingTables {
        let n = Self::ORDER;
        RingTables {
            name: name.to_string(),
            elements: Self::labels(),
            add: (0..n).map(|a| (0..n).map(|b| Gf9.add(a, b)).collect()).collect(),
            mul: (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect(),
        }
    }
}

/// The field GF(9).
pub fn build_gf9() -> FiniteNearRing {
    FiniteNearRing::validate(Gf9::tables("gf9", |a, b| Gf9.mul(a, b)), Strictness::Strict).expect("GF(9) is a field")
}

/// DN(3,2): `a ∘ b = ab` when `b` is a square, else `a³b`.
///
/// Twisting the left factor keeps right distributivity, since `a ↦ a³` is
/// additive.
pub fn build_dickson() -> FiniteNearRing {
    let mul = |a: usize, b: usize| if Gf9.is_square(b) { Gf9.mul(a, b) } else { Gf9.mul(Gf9.pow(a, 3), b) };
    FiniteNearRing::validate(Gf9::tables("dn32", mul), Strictness::Strict).expect("DN(3,2) is a near-field")
}

/// First `(a, b, c)` with `a(b + c) ≠ ab + ac`.
pub fn left_distributivity_witness(r: &FiniteNearRing) -> Option<(usize, usize, usize)> {
    let n = r.order();
    (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
        .find(|&(a, b, c)| r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)))
}

/// A near-field that is not a field.
pub fn is_proper_near_field(r: &FiniteNearRing) -> bool {
    r.is_near_ring() && r.flags().near_field && left_distributivity_witness(r).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PowerError {
    #[error("dimension must be at least 1")]
    InvalidDimension,
    #[error("R^{n} has more than {bound} elements")]
    BoundExceeded { n: usize, bound: usize },
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

/// Tuple encoding: the first component is the most significant digit.
fn digits(mut x: usize, q: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for d in out.iter_mut().rev() {
        *d = x % q;
        x /= q;
    }
    out
}

fn undigits(d: &[usize], q: usize) -> usize {
    d.iter().fold(0, |acc, x| acc * q + x)
}

/// `R^n` with componentwise addition and `r(v1, .., vn) = (r v1, .., r vn)`.
pub fn build_power_module(ring: Arc<FiniteNearRing>, n: usize, bound: usize) -> Result<FiniteModule, PowerError> {
    if n == 0 {
        return Err(PowerError::InvalidDimension);
    }
    let q = ring.order();
    let order = u32::try_from(n).ok().and_then(|e| q.checked_pow(e)).filter(|&o| o <= bound);
    let order = order.ok_or(PowerError::BoundExceeded { n, bound })?;
    let tuples: Vec<Vec<usize>> = (0..order).map(|x| digits(x, q, n)).collect();
    let labels = tuples
        .iter()
        .map(|t| format!("({})", t.iter().map(|&c| ring.labels()[c].as_str()).collect::<Vec<_>>().join(",")))
        .collect();
    let zip = |a: &[usize], b: &[usize], f: &dyn Fn(usize, usize) -> usize| -> usize {
        let v: Vec<usize> = a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect();
        undigits(&v, q)
    };
    let add = tuples.iter().map(|a| tuples.iter().map(|b| zip(a, b, &|x, y| ring.add(x, y))).collect()).collect();
    let action = (0..q)
        .map(|r| {
            tuples
                .iter()
                .map(|t| undigits(&t.iter().map(|&c| ring.mul(r, c)).collect::<Vec<_>>(), q))
                .collect()
        })
        .collect();
    let tables = ModuleTables { name: format!("{}^{n}", ring.name()), elements: labels, add, action };
    Ok(FiniteModule::validate_bounded(ring, tables, bound)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NearFieldError {
    #[error("{0} is not a near-field")]
    NotANearField(String),
    #[error(transparent)]
    Power(#[from] PowerError),
}

/// Nonzero generators `u_i` with mutually disjoint supports and
/// `T = Ru_1 + .. + Ru_l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub submodule: ElementSet,
    pub generators: Vec<usize>,
}

fn support(q: usize, n: usize, x: usize) -> u64 {
    digits(x, q, n).iter().enumerate().filter(|(_, &c)| c != 0).fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Searches for a disjoint-support decomposition of `t` by backtracking over
/// generators in increasing index order.
pub fn decompose(m: &FiniteModule, n: usize, t: &ElementSet) -> Option<Decomposition> {
    let q = m.ring().order();
    let cands: Vec<(usize, u64, ElementSet)> = t.iter().filter(|&x| x != 0).map(|x| (x, support(q, n, x), orbit(m, x))).collect();
    fn go(m: &FiniteModule, t: &ElementSet, cands: &[(usize, u64, ElementSet)], start: usize, used: u64, sum: ElementSet, chosen: &mut Vec<usize>) -> bool {
        if sum == *t {
            return true;
        }
        for (i, (x, sup, rx)) in cands.iter().enumerate().skip(start) {
            if used & sup != 0 || rx.is_subset(&sum) {
                continue;
            }
            chosen.push(*x);
            if go(m, t, cands, i + 1, used | sup, sumset(m, &sum, rx), chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    go(m, t, &cands, 0, 0, ElementSet::singleton(0), &mut chosen)
        .then(|| Decomposition { submodule: *t, generators: chosen })
}

/// Product sets `S_1 × .. × S_n` with each `S_i ∈ {{0}, R}`.
pub fn product_ideals(m: &FiniteModule, n: usize) -> Vec<ElementSet> {
    let q = m.ring().order();
    let mut out: Vec<ElementSet> = (0..1u32 << n)
        .map(|mask| {
            (0..m.order())
                .filter(|&x| digits(x, q, n).iter().enumerate().all(|(i, &c)| c == 0 || mask >> i & 1 == 1))
                .collect()
        })
        .collect();
    out.sort();
    out
}

/// Structure statements about `R^n` over a near-field `R`.
pub fn verify_rn_theorems(ring: Arc<FiniteNearRing>, n: usize, bound: usize) -> Result<Vec<VerifierReport>, NearFieldError> {
    if !(ring.is_near_ring() && ring.flags().near_field) {
        return Err(NearFieldError::NotANearField(ring.name().to_string()));
    }
    let m = build_power_module(ring.clone(), n, bound)?;
    Ok(verify_rn_module(&m, n))
}

/// Same as [`verify_rn_theorems`] on an already built `R^n`.
pub fn verify_rn_module(m: &FiniteModule, n: usize) -> Vec<VerifierReport> {
    let mc = ModuleContext::new(m);
    let proper = is_proper_near_field(m.ring());
    let decompositions: Vec<Option<Decomposition>> = mc.submodules.par_iter().map(|t| decompose(m, n, t)).collect();
    [
        Theorem::RnIdealShape,
        Theorem::RnDisjointSupports,
        Theorem::RnClassical,
        Theorem::RnCommutation,
        Theorem::RnAnnihilator,
        Theorem::RnDirectSumAnn,
    ]
    .into_par_iter()
    .map(|t| {
        let needs_proper = matches!(t, Theorem::RnDisjointSupports | Theorem::RnCommutation | Theorem::RnDirectSumAnn);
        let mut r = VerifierReport::new(t, m.name(), proper || !needs_proper);
        if needs_proper && !proper {
            r.note("R is a field, outside the statement's hypothesis; outcome recorded only");
        }
        match t {
            Theorem::RnIdealShape => ideal_shape(&mc, n, &mut r),
            Theorem::RnDisjointSupports => disjoint_supports(&mc, &decompositions, &mut r),
            Theorem::RnClassical => rn_classical(&mc, &mut r),
            Theorem::RnCommutation => commutation(&mc, &decompositions, &mut r),
            Theorem::RnAnnihilator => rn_annihilator(&mc, &mut r),
            _ => direct_sum_ann(&mc, &decompositions, &mut r),
        }
        r.finish()
    })
    .collect()
}

fn ideal_shape(mc: &ModuleContext, n: usize, r: &mut VerifierReport) {
    let products = product_ideals(mc.module(), n);
    let expected = 1usize << n;
    r.check(mc.r_ideals.len() == expected, || {
        Failure::new(None, None, format!("{} R-ideals, expected {expected}", mc.r_ideals.len()))
    });
    for p in &mc.r_ideals {
        r.check(products.contains(p), || Failure::new(Some(*p), None, "R-ideal is not a product set"));
    }
    for p in &products {
        r.check(mc.r_ideals.contains(p), || Failure::new(Some(*p), None, "product set is not an R-ideal"));
    }
}

fn disjoint_supports(mc: &ModuleContext, decs: &[Option<Decomposition>], r: &mut VerifierReport) {
    let labels = mc.module().labels();
    for (t, d) in mc.submodules.iter().zip(decs) {
        r.check(d.is_some(), || Failure::new(Some(*t), None, "no disjoint-support decomposition"));
        if let Some(d) = d.as_ref().filter(|d| d.generators.len() > 1) {
            let gens: Vec<String> = d.generators.iter().map(|&u| format!("R{}", labels[u])).collect();
            r.note(format!("{} = {}", t.display_with(labels), gens.join(" ⊕ ")));
        }
    }
}

fn rn_classical(mc: &ModuleContext, r: &mut VerifierReport) {
    let m = mc.module();
    for p in mc.r_ideals.iter().filter(|p| p.len() < m.order()) {
        let v = classical_condition(m, &mc.ring, p, Variant::Vc, &mc.submodules).expect("module variant");
        r.check(v.holds() == Some(true), || {
            Failure::new(Some(*p), Some(Variant::Vc), "proper R-ideal is not c-classical prime").with_witness(v.witness().copied())
        });
    }
}

fn commutation(mc: &ModuleContext, decs: &[Option<Decomposition>], r: &mut VerifierReport) {
    let m = mc.module();
    for d in decs.iter().flatten() {
        let pieces: Vec<ElementSet> = d.generators.iter().map(|&u| orbit(m, u)).collect();
        for (i, a) in pieces.iter().enumerate() {
            for b in &pieces[i + 1..] {
                let ok = a.iter().all(|x| b.iter().all(|y| m.add(x, y) == m.add(y, x)));
                r.check(ok, || Failure::new(Some(d.submodule), None, "components do not commute"));
            }
        }
    }
}

fn rn_annihilator(mc: &ModuleContext, r: &mut VerifierReport) {
    let m = mc.module();
    let zero = ElementSet::singleton(0);
    for s in mc.r_ideals.iter().filter(|s| s.len() > 1) {
        let ann = ann_unchecked(m, s);
        r.check(ann == zero, || Failure::new(Some(*s), None, format!("Ann(S) = {ann}")));
    }
}

/// Tests `Σ Ann(Ru_i) = Ann(Σ Ru_i)` on each decomposition. The `⊆`
/// direction is checked only for tuples `(r_i)` with `r_j R u_i = 0` for
/// `j ≠ i`; mismatches of the bare sets are counted separately.
fn direct_sum_ann(mc: &ModuleContext, decs: &[Option<Decomposition>], r: &mut VerifierReport) {
    let m = mc.module();
    let ring = m.ring();
    let mut bare_mismatches = 0;
    for d in decs.iter().flatten().filter(|d| !d.generators.is_empty()) {
        let pieces: Vec<ElementSet> = d.generators.iter().map(|&u| orbit(m, u)).collect();
        let anns: Vec<ElementSet> = pieces.iter().map(|p| ann_unchecked(m, p)).collect();
        let whole = ann_unchecked(m, &d.submodule);
        let sum = anns.iter().skip(1).fold(anns[0], |acc, a| sumset(ring, &acc, a));
        if sum != whole {
            bare_mismatches += 1;
        }
        // ⊇
        r.check(whole.is_subset(&sum), || {
            Failure::new(Some(d.submodule), None, format!("Ann(T) = {whole} not inside Σ Ann(Ru_i) = {sum}"))
        });
        // ⊆ under the side hypothesis
        let mut tuple = vec![0; anns.len()];
        let choices: Vec<Vec<usize>> = anns.iter().map(|a| a.to_vec()).collect();
        let total: usize = choices.iter().map(Vec::len).product();
        for k in 0..total {
            let mut rem = k;
            for (slot, c) in tuple.iter_mut().zip(&choices) {
                *slot = c[rem % c.len()];
                rem /= c.len();
            }
            let side = tuple.iter().enumerate().all(|(j, &rj)| {
                pieces.iter().enumerate().all(|(i, p)| i == j || p.iter().all(|x| m.act(rj, x) == 0))
            });
            if !side {
                continue;
            }
            let x = tuple.iter().fold(0, |acc, &rj| ring.add(acc, rj));
            r.check(whole.contains(x), || Failure::new(Some(d.submodule), None, format!("Σ r_i = {x} is not in Ann(T)")));
        }
    }
    if bare_mismatches > 0 {
        r.note(format!("Σ Ann(Ru_i) ≠ Ann(T) without the side hypothesis on {bare_mismatches} submodule(s)"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::io::DEFAULT_MAX_POWER_ORDER;
    use crate::report::Outcome;

    #[test]
    fn labels_match_fixture() {
        let fixture = fixtures::ring("dn32", Strictness::Strict).unwrap();
        assert_eq!(Gf9::labels(), fixture.labels());
    }

    #[test]
    fn gf9_has_four_nonzero_squares() {
        assert_eq!((1..9).filter(|&a| Gf9.is_square(a)).count(), 4);
        assert_eq!(Gf9.mul(3, 3), 2); // x² = -1
    }

    #[test]
    fn dickson_is_a_proper_near_field() {
        let d = build_dickson();
        assert!(d.flags().near_field);
        assert!(is_proper_near_field(&d));
        let f = build_gf9();
        assert!(f.flags().near_field);
        assert!(!is_proper_near_field(&f));
    }

    #[test]
    fn power_module_shapes() {
        let d = Arc::new(build_dickson());
        assert_eq!(build_power_module(d.clone(), 2, DEFAULT_MAX_POWER_ORDER).unwrap().order(), 81);
        let one = build_power_module(d.clone(), 1, DEFAULT_MAX_POWER_ORDER).unwrap();
        assert_eq!(one.action_table(), d.mul_table());
        assert_eq!(one.add_table(), d.add_table());
        assert_eq!(build_power_module(d.clone(), 0, 10).unwrap_err(), PowerError::InvalidDimension);
        assert_eq!(build_power_module(d, 4, 1024).unwrap_err(), PowerError::BoundExceeded { n: 4, bound: 1024 });
        let k = fixtures::ring("klein4", Strictness::Strict).unwrap();
        let m = build_power_module(k, 2, 1024).unwrap();
        assert_eq!(m.order(), 16);
        assert_eq!(m.labels()[1], "(0,1)");
    }

    #[test]
    fn dn32_squared_theorems_hold() {
        let reports = verify_rn_theorems(Arc::new(build_dickson()), 2, DEFAULT_MAX_POWER_ORDER).unwrap();
        assert_eq!(reports.len(), 6);
        for r in reports {
            assert!(r.hypotheses_met);
            assert_eq!(r.outcome, Outcome::Holds, "{}: {:?}", r.theorem, r.failures);
        }
    }

    #[test]
    fn gf9_squared_is_flagged_as_field() {
        let reports = verify_rn_theorems(Arc::new(build_gf9()), 2, DEFAULT_MAX_POWER_ORDER).unwrap();
        let ds = reports.iter().find(|r| r.theorem == Theorem::RnDisjointSupports).unwrap();
        assert!(!ds.hypotheses_met);
    }

    #[test]
    fn klein4_is_rejected() {
        let k = fixtures::ring("klein4", Strictness::Strict).unwrap();
        assert!(matches!(verify_rn_theorems(k, 2, 1024), Err(NearFieldError::NotANearField(_))));
    }
}
