//! Naive substructure oracle: every subset of the carrier, filtered by the
//! textbook definition of each kind, read straight off the tables.

use nearprime_core::{AdditiveGroup, ElementSet, RingAction, SubstructureKind};

fn members(s: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| s >> i & 1 == 1).collect()
}

fn is_subgroup<S: RingAction>(st: &S, h: &[usize], has: &dyn Fn(usize) -> bool) -> bool {
    has(0) && h.iter().all(|&a| h.iter().all(|&b| has(st.sub(a, b))))
}

fn is_normal<S: RingAction>(st: &S, h: &[usize], has: &dyn Fn(usize) -> bool) -> bool {
    is_subgroup(st, h, has) && (0..st.order()).all(|x| h.iter().all(|&i| has(st.add(st.add(x, i), st.neg(x)))))
}

/// `RH ⊆ H` under the action (the multiplication when the carrier is R).
fn left_closed<S: RingAction>(st: &S, h: &[usize], has: &dyn Fn(usize) -> bool) -> bool {
    (0..st.ring().order()).all(|r| h.iter().all(|&x| has(st.act(r, x))))
}

/// `HR ⊆ H` in the near-ring.
fn right_closed<S: RingAction>(st: &S, h: &[usize], has: &dyn Fn(usize) -> bool) -> bool {
    let r = st.ring();
    (0..r.order()).all(|s| h.iter().all(|&x| has(r.mul(x, s))))
}

/// `r(m + i) - rm ∈ I` for every r and m.
fn absorbs_twist<S: RingAction>(st: &S, h: &[usize], has: &dyn Fn(usize) -> bool) -> bool {
    (0..st.ring().order()).all(|r| (0..st.order()).all(|m| h.iter().all(|&i| has(st.sub(st.act(r, st.add(m, i)), st.act(r, m))))))
}

pub fn holds<S: RingAction>(st: &S, set: u64, kind: SubstructureKind) -> bool {
    use SubstructureKind::*;
    let n = st.order();
    let h = members(set, n);
    let has = move |x: usize| set >> x & 1 == 1;
    match kind {
        Subgroup => is_subgroup(st, &h, &has),
        NormalSubgroup => is_normal(st, &h, &has),
        LeftRSubgroup | RSubmodule => is_subgroup(st, &h, &has) && left_closed(st, &h, &has),
        RightRSubgroup => is_subgroup(st, &h, &has) && right_closed(st, &h, &has),
        InvariantRSubgroup => is_subgroup(st, &h, &has) && left_closed(st, &h, &has) && right_closed(st, &h, &has),
        LeftIdeal | RIdeal => is_normal(st, &h, &has) && absorbs_twist(st, &h, &has),
        RightIdeal => is_normal(st, &h, &has) && right_closed(st, &h, &has),
        Ideal => is_normal(st, &h, &has) && right_closed(st, &h, &has) && absorbs_twist(st, &h, &has),
    }
}

/// All subsets satisfying the definition, as bitmasks.
pub fn enumerate<S: RingAction>(st: &S, kind: SubstructureKind) -> Vec<u64> {
    let n = st.order();
    assert!(n < 64);
    (0..1u64 << n).filter(|&s| holds(st, s, kind)).collect()
}

/// Intersection of all members of `family` containing `v`.
pub fn generated(family: &[u64], v: u64) -> u64 {
    family.iter().filter(|&&s| s & v == v).fold(u64::MAX, |acc, &s| acc & s)
}

pub fn to_set(mask: u64) -> ElementSet {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn to_mask(s: &ElementSet) -> u64 {
    s.iter().fold(0, |acc, i| acc | 1 << i)
}

/// Kinds that apply to the carrier.
pub fn kinds_for<S: RingAction>(st: &S) -> Vec<SubstructureKind> {
    SubstructureKind::ALL.into_iter().filter(|k| st.is_ring() || !k.ring_only()).collect()
}

/// Compares `enumerate` and `generated_substructure` with the oracle on every
/// applicable kind and every subset; returns one line per mismatch.
pub fn mismatches<S: RingAction>(st: &S, name: &str) -> Vec<String> {
    use nearprime_core::substructure;
    let mut out = Vec::new();
    let n = st.order();
    for kind in kinds_for(st) {
        let expected = enumerate(st, kind);
        let mut got: Vec<u64> = substructure::enumerate(st, kind).unwrap().iter().map(to_mask).collect();
        got.sort();
        if got != expected {
            out.push(format!("{name}: enumerate({kind}) gave {} sets, oracle {}", got.len(), expected.len()));
            continue;
        }
        for v in 0..1u64 << n {
            let want = generated(&expected, v);
            let have = to_mask(&substructure::generated_substructure(st, &to_set(v), kind).unwrap());
            if want != have {
                out.push(format!("{name}: gen({kind}, {}) = {} but oracle {}", to_set(v), to_set(have), to_set(want)));
            }
        }
    }
    out
}
