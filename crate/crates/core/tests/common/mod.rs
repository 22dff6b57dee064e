//! Test-only generators of small near-rings and modules.
//!
//! A right near-ring on an additive group G is exactly a map `b ↦ ρ_b` into
//! End(G) with `ρ_c ∘ ρ_b = ρ_{ρ_c(b)}` (then `a·b = ρ_b(a)`). Zero-symmetry
//! is `ρ_0 = 0`. The generator searches such maps directly.

#![allow(dead_code)]

pub mod oracle;

use std::collections::HashMap;
use std::sync::Arc;

use nearprime_core::ops::quotient_module;
use nearprime_core::substructure::enumerate;
use nearprime_core::{AdditiveGroup, FiniteModule, FiniteNearRing, RingTables, Strictness, SubstructureKind};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

/// Cayley table of a group with identity 0.
#[derive(Debug, Clone)]
pub struct Group {
    pub name: String,
    pub op: Vec<Vec<usize>>,
}

impl Group {
    pub fn order(&self) -> usize {
        self.op.len()
    }

    /// Closure of `gens` under `mul`, identity first.
    fn generated<K: Clone + Eq + std::hash::Hash>(name: &str, id: K, gens: &[K], mul: impl Fn(&K, &K) -> K) -> Self {
        let mut elems = vec![id];
        let mut index: HashMap<K, usize> = HashMap::from([(elems[0].clone(), 0)]);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let x = mul(&elems[i], g);
                if !index.contains_key(&x) {
                    index.insert(x.clone(), elems.len());
                    elems.push(x);
                }
            }
            i += 1;
        }
        let op = elems.iter().map(|a| elems.iter().map(|b| index[&mul(a, b)]).collect()).collect();
        Group { name: name.to_string(), op }
    }

    pub fn cyclic(n: usize) -> Self {
        Group { name: format!("Z{n}"), op: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect() }
    }

    /// Direct product of cyclic groups.
    pub fn abelian(orders: &[usize]) -> Self {
        let gens: Vec<Vec<usize>> = (0..orders.len()).map(|i| (0..orders.len()).map(|j| usize::from(i == j)).collect()).collect();
        let name = orders.iter().map(|n| format!("Z{n}")).collect::<Vec<_>>().join("x");
        Self::generated(&name, vec![0; orders.len()], &gens, |a, b| {
            a.iter().zip(b).zip(orders).map(|((x, y), n)| (x + y) % n).collect()
        })
    }

    fn permutations(name: &str, gens: &[Vec<usize>]) -> Self {
        let id: Vec<usize> = (0..gens[0].len()).collect();
        Self::generated(name, id, gens, |p, q| q.iter().map(|&i| p[i]).collect())
    }

    pub fn s3() -> Self {
        Self::permutations("S3", &[vec![1, 0, 2], vec![1, 2, 0]])
    }

    pub fn d4() -> Self {
        Self::permutations("D4", &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])
    }

    /// Quaternion units as integer 4-vectors under the Hamilton product.
    pub fn q8() -> Self {
        let h = |p: &[i32; 4], q: &[i32; 4]| {
            [
                p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
                p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
                p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
                p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
            ]
        };
        Self::generated("Q8", [1, 0, 0, 0], &[[0, 1, 0, 0], [0, 0, 1, 0]], h)
    }

    /// Every group of order at most 8, up to isomorphism.
    pub fn all_small() -> Vec<Group> {
        let mut out: Vec<Group> = (1..=8).map(Self::cyclic).collect();
        out.push(Self::abelian(&[2, 2]));
        out.push(Self::s3());
        out.push(Self::abelian(&[2, 4]));
        out.push(Self::abelian(&[2, 2, 2]));
        out.push(Self::d4());
        out.push(Self::q8());
        out
    }

    /// Every endomorphism, as an image vector.
    pub fn endomorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        // a generating set together with a word for each element
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut reached = vec![false; n];
        reached[0] = true;
        while span.len() < n {
            let g = (0..n).find(|&x| !reached[x]).unwrap();
            gens.push(g);
            let mut i = 0;
            while i < span.len() {
                for (gi, &h) in gens.iter().enumerate() {
                    let x = self.op[span[i]][h];
                    if !reached[x] {
                        reached[x] = true;
                        parent[x] = Some((span[i], gi));
                        span.push(x);
                    }
                }
                i += 1;
            }
        }
        let mut out = Vec::new();
        let k = gens.len();
        let mut images = vec![0usize; k];
        loop {
            let mut f = vec![0usize; n];
            for &x in span.iter().skip(1) {
                let (p, gi) = parent[x].unwrap();
                f[x] = self.op[f[p]][images[gi]];
            }
            if (0..n).all(|a| (0..n).all(|b| f[self.op[a][b]] == self.op[f[a]][f[b]])) {
                out.push(f);
            }
            let mut i = 0;
            while i < k {
                images[i] += 1;
                if images[i] < n {
                    break;
                }
                images[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Search state for right-multiplication maps.
struct Search<'a> {
    ends: &'a [Vec<usize>],
    n: usize,
    rho: Vec<Option<usize>>,
    budget: usize,
}

impl Search<'_> {
    /// `ρ_c ∘ ρ_b = ρ_{ρ_c(b)}` for every triple whose maps are all fixed.
    fn consistent(&self, k: usize) -> bool {
        let e = |i: usize| &self.ends[self.rho[i].unwrap()];
        for b in 0..=k {
            for c in 0..=k {
                if b != k && c != k {
                    continue;
                }
                let d = e(c)[b];
                let Some(rd) = self.rho[d] else { continue };
                let rd = &self.ends[rd];
                if (0..self.n).any(|a| e(c)[e(b)[a]] != rd[a]) {
                    return false;
                }
            }
        }
        // triples closed by k as ρ_c(b)
        for b in 0..k {
            for c in 0..k {
                let d = e(c)[b];
                if d == k && (0..self.n).any(|a| e(c)[e(b)[a]] != e(k)[a]) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize, choices: &[Vec<usize>], found: &mut Vec<Vec<usize>>, limit: usize) {
        if found.len() >= limit || self.budget == 0 {
            return;
        }
        if k == self.n {
            found.push(self.rho.iter().map(|r| r.unwrap()).collect());
            return;
        }
        for &e in &choices[k] {
            self.budget = self.budget.saturating_sub(1);
            self.rho[k] = Some(e);
            if self.consistent(k) {
                self.run(k + 1, choices, found, limit);
            }
            self.rho[k] = None;
            if found.len() >= limit || self.budget == 0 {
                return;
            }
        }
    }
}

fn to_ring(g: &Group, ends: &[Vec<usize>], rho: &[usize], name: String) -> FiniteNearRing {
    let n = g.order();
    let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| ends[rho[b]][a]).collect()).collect();
    let tables = RingTables { name, elements: (0..n).map(|i| i.to_string()).collect(), add: g.op.clone(), mul };
    let ring = FiniteNearRing::validate(tables, Strictness::Permissive).expect("generated tables form a near-ring");
    assert!(ring.is_near_ring());
    ring
}

/// Near-rings on `g`, zero-symmetric only unless `all`. With a seed the search
/// order is shuffled and each restart contributes one structure; without, the
/// search is exhaustive up to `limit`.
pub fn near_rings(g: &Group, limit: usize, seed: Option<u64>, all: bool) -> Vec<FiniteNearRing> {
    let ends = g.endomorphisms();
    let n = g.order();
    let zero = ends.iter().position(|e| e.iter().all(|&x| x == 0)).unwrap();
    let base: Vec<usize> = (0..ends.len()).collect();
    let first = if all { base.clone() } else { vec![zero] };
    let mut found = Vec::new();
    match seed {
        None => {
            let mut choices = vec![base; n];
            choices[0] = first;
            let mut s = Search { ends: &ends, n, rho: vec![None; n], budget: usize::MAX };
            s.run(0, &choices, &mut found, limit);
        }
        Some(seed) => {
            let mut rng = StdRng::seed_from_u64(seed);
            for _ in 0..limit * 20 {
                if found.len() >= limit {
                    break;
                }
                let mut choices: Vec<Vec<usize>> = (0..n)
                    .map(|_| {
                        let mut c = base.clone();
                        c.shuffle(&mut rng);
                        c
                    })
                    .collect();
                choices[0] = first.clone();
                let mut s = Search { ends: &ends, n, rho: vec![None; n], budget: 20_000 };
                let mut one = Vec::new();
                s.run(0, &choices, &mut one, 1);
                for r in one {
                    if !found.contains(&r) {
                        found.push(r);
                    }
                }
            }
        }
    }
    found.iter().enumerate().map(|(i, rho)| to_ring(g, &ends, rho, format!("{}#{i}", g.name))).collect()
}

/// Near-rings on every group of order ≤ `max_order`. Groups with at most 16
/// endomorphisms are searched exhaustively (zero-symmetric ones; all of them
/// on orders ≤ 4); the rest are sampled `per_group` times.
pub fn ring_pool(max_order: usize, per_group: usize, seed: u64) -> Vec<Arc<FiniteNearRing>> {
    let mut out = Vec::new();
    for (i, g) in Group::all_small().iter().enumerate().filter(|(_, g)| g.order() <= max_order) {
        let rings = if g.endomorphisms().len() <= 16 {
            near_rings(g, usize::MAX, None, g.order() <= 4)
        } else {
            near_rings(g, per_group, Some(seed + i as u64), false)
        };
        out.extend(rings.into_iter().map(Arc::new));
    }
    out
}

/// Modules over `r`: `R_R`, its quotients by proper nonzero R-ideals, and `R^2`
/// when it stays within `max_order`.
pub fn modules_over(r: &Arc<FiniteNearRing>, max_order: usize) -> Vec<FiniteModule> {
    let regular = FiniteModule::regular(Arc::clone(r));
    let mut out = Vec::new();
    for p in enumerate(&regular, SubstructureKind::RIdeal).unwrap() {
        if p.len() > 1 && p.len() < regular.order() {
            out.push(quotient_module(&regular, &p).unwrap().module);
        }
    }
    if r.order() * r.order() <= max_order {
        out.push(nearprime_core::nearfield::build_power_module(Arc::clone(r), 2, max_order).unwrap());
    }
    out.insert(0, regular);
    out
}
