//! Cayley-table near-rings and near-ring modules, and their validation.
//!
//! Index 0 is always the additive identity. A near-ring here is a right
//! near-ring: `(a + b)c = ac + bc`. Modules are left modules over it with
//! `(r1 + r2)m = r1 m + r2 m` and `(r1 r2)m = r1 (r2 m)`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::set::{ElementSet, MAX_ELEMENTS};

/// Dense `rows × cols` table of element indices.
#[derive(Clone, PartialEq, Eq)]
pub struct Table {
    rows: usize,
    cols: usize,
    data: Vec<u16>,
}

impl Table {
    pub fn from_rows(rows: &[Vec<usize>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| x as u16)).collect();
        Self { rows: rows.len(), cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c) as u16);
            }
        }
        Self { rows, cols, data }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> usize {
        self.data[r * self.cols + c] as usize
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c)).collect()).collect()
    }
}

impl fmt::Debug for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// The group axiom that failed during validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupAxiom {
    Identity,
    Inverse,
    Associativity,
}

impl fmt::Display for GroupAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupAxiom::Identity => "identity",
            GroupAxiom::Inverse => "inverse",
            GroupAxiom::Associativity => "associativity",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error", rename_all = "kebab-case")]
pub enum ValidationError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("structure has {order} elements, limit is {max}")]
    TooLarge { order: usize, max: usize },
    #[error("addition is not a group ({axiom} fails at {witness:?})")]
    NotAGroup { axiom: GroupAxiom, witness: Vec<usize> },
    #[error("multiplication is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociativeMul { a: usize, b: usize, c: usize },
    #[error("not right distributive: ({a}+{b})*{c} != {a}*{c}+{b}*{c}")]
    NotRightDistributive { a: usize, b: usize, c: usize },
    #[error("not zero-symmetric: {r}*0 = {product}")]
    NotZeroSymmetric { r: usize, product: usize },
    #[error("action not additive in the scalar: ({r1}+{r2})m != {r1}m+{r2}m for m = {m}")]
    ActionNotAdditiveInScalar { r1: usize, r2: usize, m: usize },
    #[error("action not associative: ({r1}*{r2})m != {r1}({r2}m) for m = {m}")]
    ActionNotAssociative { r1: usize, r2: usize, m: usize },
}

/// How strictly to treat the zero-symmetry assumption.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strictness {
    /// Non-zero-symmetric rings are accepted with the flag cleared.
    #[default]
    Permissive,
    /// Non-zero-symmetric rings are rejected.
    Strict,
}

/// Additive group of a finite carrier. Element 0 is the identity.
pub trait AdditiveGroup {
    fn order(&self) -> usize;
    fn add(&self, a: usize, b: usize) -> usize;
    fn neg(&self, a: usize) -> usize;
    fn labels(&self) -> &[String];

    #[inline]
    fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    fn carrier(&self) -> ElementSet {
        ElementSet::full(self.order())
    }
}

/// A carrier acted on from the left by a near-ring: either the near-ring
/// itself (through its multiplication) or a module over it.
pub trait RingAction: AdditiveGroup {
    fn ring(&self) -> &FiniteNearRing;
    fn act(&self, r: usize, x: usize) -> usize;
    /// True when the carrier is the near-ring itself.
    fn is_ring(&self) -> bool;
}

/// Flags computed once at validation time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingFlags {
    pub zero_symmetric: bool,
    /// Two-sided multiplicative identity, when one exists.
    pub identity: Option<usize>,
    pub abelian_addition: bool,
    pub near_field: bool,
}

#[derive(Debug, Clone)]
pub struct FiniteNearRing {
    name: String,
    labels: Vec<String>,
    add: Table,
    mul: Table,
    neg: Vec<usize>,
    flags: RingFlags,
    violations: Vec<ValidationError>,
}

fn check_labels(labels: &[String], max: usize) -> Result<(), ValidationError> {
    if labels.is_empty() {
        return Err(ValidationError::Malformed("empty element list".into()));
    }
    if labels.len() > max {
        return Err(ValidationError::TooLarge { order: labels.len(), max });
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(ValidationError::Malformed(format!("duplicate element label {l:?}")));
        }
    }
    Ok(())
}

fn check_shape(name: &str, t: &[Vec<usize>], rows: usize, cols: usize, range: usize) -> Result<(), ValidationError> {
    if t.len() != rows || t.iter().any(|r| r.len() != cols) {
        return Err(ValidationError::Malformed(format!("{name} table must be {rows}x{cols}")));
    }
    if let Some(bad) = t.iter().flatten().find(|&&x| x >= range) {
        return Err(ValidationError::Malformed(format!("{name} table entry {bad} out of range")));
    }
    Ok(())
}

/// Checks the group axioms for an addition table and returns negatives.
fn validate_group(add: &Table) -> Result<Vec<usize>, ValidationError> {
    let n = add.rows();
    for a in 0..n {
        if add.get(0, a) != a || add.get(a, 0) != a {
            return Err(ValidationError::NotAGroup { axiom: GroupAxiom::Identity, witness: vec![a] });
        }
    }
    let mut neg = vec![0; n];
    for a in 0..n {
        match (0..n).find(|&b| add.get(a, b) == 0 && add.get(b, a) == 0) {
            Some(b) => neg[a] = b,
            None => return Err(ValidationError::NotAGroup { axiom: GroupAxiom::Inverse, witness: vec![a] }),
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = add.get(a, b);
            for c in 0..n {
                if add.get(ab, c) != add.get(a, add.get(b, c)) {
                    return Err(ValidationError::NotAGroup {
                        axiom: GroupAxiom::Associativity,
                        witness: vec![a, b, c],
                    });
                }
            }
        }
    }
    Ok(neg)
}

fn is_abelian(add: &Table) -> bool {
    let n = add.rows();
    (0..n).all(|a| (a + 1..n).all(|b| add.get(a, b) == add.get(b, a)))
}

/// Multiplicative axioms, collected rather than returned on first failure
/// so that unchecked construction can report all of them.
fn mul_violations(add: &Table, mul: &Table, first_only: bool) -> Vec<ValidationError> {
    let n = add.rows();
    let mut out = Vec::new();
    'assoc: for a in 0..n {
        for b in 0..n {
            let ab = mul.get(a, b);
            for c in 0..n {
                if mul.get(ab, c) != mul.get(a, mul.get(b, c)) {
                    out.push(ValidationError::NotAssociativeMul { a, b, c });
                    break 'assoc;
                }
            }
        }
    }
    if first_only && !out.is_empty() {
        return out;
    }
    'dist: for a in 0..n {
        for b in 0..n {
            let s = add.get(a, b);
            for c in 0..n {
                if mul.get(s, c) != add.get(mul.get(a, c), mul.get(b, c)) {
                    out.push(ValidationError::NotRightDistributive { a, b, c });
                    break 'dist;
                }
            }
        }
    }
    out
}

fn ring_flags(add: &Table, mul: &Table) -> RingFlags {
    let n = add.rows();
    let zero_symmetric = (0..n).all(|r| mul.get(r, 0) == 0);
    let identity = (0..n).find(|&e| (0..n).all(|r| mul.get(e, r) == r && mul.get(r, e) == r));
    let abelian_addition = is_abelian(add);
    let near_field = n >= 2
        && match (1..n).find(|&e| (1..n).all(|r| mul.get(e, r) == r && mul.get(r, e) == r)) {
            None => false,
            Some(e) => {
                (1..n).all(|a| (1..n).all(|b| mul.get(a, b) != 0))
                    && (1..n).all(|a| (1..n).any(|b| mul.get(a, b) == e))
            }
        };
    RingFlags { zero_symmetric, identity, abelian_addition, near_field }
}

/// Raw tables for a near-ring, as read from input.
#[derive(Debug, Clone)]
pub struct RingTables {
    pub name: String,
    pub elements: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

/// Raw tables for a module over an already-built near-ring.
#[derive(Debug, Clone)]
pub struct ModuleTables {
    pub name: String,
    pub elements: Vec<String>,
    pub add: Vec<Vec<usize>>,
    /// Row `r`, column `x` holds `r x`.
    pub action: Vec<Vec<usize>>,
}

impl FiniteNearRing {
    /// Validate tables as a right near-ring.
    pub fn validate(tables: RingTables, strictness: Strictness) -> Result<Self, ValidationError> {
        Self::validate_bounded(tables, strictness, MAX_ELEMENTS)
    }

    pub fn validate_bounded(tables: RingTables, strictness: Strictness, max_order: usize) -> Result<Self, ValidationError> {
        let ring = Self::build(tables, max_order, true)?;
        if !ring.flags.zero_symmetric {
            let r = (0..ring.order()).find(|&r| ring.mul(r, 0) != 0).unwrap();
            let err = ValidationError::NotZeroSymmetric { r, product: ring.mul(r, 0) };
            match strictness {
                Strictness::Strict => return Err(err),
                Strictness::Permissive => log::warn!("{}: {err}", ring.name),
            }
        }
        Ok(ring)
    }

    /// Build from tables whose addition is a group but whose multiplication
    /// may violate the near-ring axioms. Violations are kept on the result
    /// (see [`FiniteNearRing::violations`]) instead of being returned as an
    /// error. Used for verbatim tables that are known to be defective.
    pub fn from_tables_unchecked(tables: RingTables) -> Result<Self, ValidationError> {
        Self::build(tables, MAX_ELEMENTS, false)
    }

    fn build(tables: RingTables, max_order: usize, reject: bool) -> Result<Self, ValidationError> {
        let RingTables { name, elements, add, mul } = tables;
        check_labels(&elements, max_order.min(MAX_ELEMENTS))?;
        let n = elements.len();
        check_shape("add", &add, n, n, n)?;
        check_shape("mul", &mul, n, n, n)?;
        let add = Table::from_rows(&add);
        let mul = Table::from_rows(&mul);
        let neg = validate_group(&add)?;
        let violations = mul_violations(&add, &mul, reject);
        if reject {
            if let Some(e) = violations.into_iter().next() {
                return Err(e);
            }
            let flags = ring_flags(&add, &mul);
            return Ok(Self { name, labels: elements, add, mul, neg, flags, violations: Vec::new() });
        }
        let flags = ring_flags(&add, &mul);
        Ok(Self { name, labels: elements, add, mul, neg, flags, violations })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn flags(&self) -> &RingFlags {
        &self.flags
    }

    /// Axiom violations of an unchecked table; empty for validated rings.
    pub fn violations(&self) -> &[ValidationError] {
        &self.violations
    }

    /// True when the tables satisfy every near-ring axiom.
    pub fn is_near_ring(&self) -> bool {
        self.violations.is_empty()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul.get(a, b)
    }

    pub fn add_table(&self) -> &Table {
        &self.add
    }

    pub fn mul_table(&self) -> &Table {
        &self.mul
    }

    /// Index of a label.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn tables(&self) -> RingTables {
        RingTables {
            name: self.name.clone(),
            elements: self.labels.clone(),
            add: self.add.to_rows(),
            mul: self.mul.to_rows(),
        }
    }
}

impl AdditiveGroup for FiniteNearRing {
    fn order(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        self.add.get(a, b)
    }

    #[inline]
    fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    fn labels(&self) -> &[String] {
        &self.labels
    }
}

impl RingAction for FiniteNearRing {
    fn ring(&self) -> &FiniteNearRing {
        self
    }

    #[inline]
    fn act(&self, r: usize, x: usize) -> usize {
        self.mul.get(r, x)
    }

    fn is_ring(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleFlags {
    pub faithful: bool,
    /// Every `m` with `Rm = M`.
    pub generators: Vec<usize>,
}

impl ModuleFlags {
    pub fn monogenic(&self) -> bool {
        !self.generators.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct FiniteModule {
    name: String,
    ring: Arc<FiniteNearRing>,
    labels: Vec<String>,
    add: Table,
    action: Table,
    neg: Vec<usize>,
    flags: ModuleFlags,
    violations: Vec<ValidationError>,
}

fn action_violations(ring: &FiniteNearRing, add: &Table, action: &Table, first_only: bool) -> Vec<ValidationError> {
    let (rn, mn) = (ring.order(), add.rows());
    let mut out = Vec::new();
    'additive: for r1 in 0..rn {
        for r2 in 0..rn {
            let s = ring.add(r1, r2);
            for m in 0..mn {
                if action.get(s, m) != add.get(action.get(r1, m), action.get(r2, m)) {
                    out.push(ValidationError::ActionNotAdditiveInScalar { r1, r2, m });
                    break 'additive;
                }
            }
        }
    }
    if first_only && !out.is_empty() {
        return out;
    }
    'assoc: for r1 in 0..rn {
        for r2 in 0..rn {
            let p = ring.mul(r1, r2);
            for m in 0..mn {
                if action.get(p, m) != action.get(r1, action.get(r2, m)) {
                    out.push(ValidationError::ActionNotAssociative { r1, r2, m });
                    break 'assoc;
                }
            }
        }
    }
    out
}

fn module_flags(ring: &FiniteNearRing, action: &Table, mn: usize) -> ModuleFlags {
    let faithful = (1..ring.order()).all(|r| (0..mn).any(|m| action.get(r, m) != 0));
    let generators = (0..mn)
        .filter(|&m| {
            let orbit: ElementSet = (0..ring.order()).map(|r| action.get(r, m)).collect();
            orbit.len() == mn
        })
        .collect();
    ModuleFlags { faithful, generators }
}

impl FiniteModule {
    /// Validate tables as a left module over `ring`.
    pub fn validate(ring: Arc<FiniteNearRing>, tables: ModuleTables) -> Result<Self, ValidationError> {
        Self::validate_bounded(ring, tables, MAX_ELEMENTS)
    }

    pub fn validate_bounded(ring: Arc<FiniteNearRing>, tables: ModuleTables, max_order: usize) -> Result<Self, ValidationError> {
        Self::build(ring, tables, max_order, true)
    }

    /// Counterpart of [`FiniteNearRing::from_tables_unchecked`].
    pub fn from_tables_unchecked(ring: Arc<FiniteNearRing>, tables: ModuleTables) -> Result<Self, ValidationError> {
        Self::build(ring, tables, MAX_ELEMENTS, false)
    }

    fn build(ring: Arc<FiniteNearRing>, tables: ModuleTables, max_order: usize, reject: bool) -> Result<Self, ValidationError> {
        let ModuleTables { name, elements, add, action } = tables;
        check_labels(&elements, max_order.min(MAX_ELEMENTS))?;
        let mn = elements.len();
        check_shape("add", &add, mn, mn, mn)?;
        check_shape("action", &action, ring.order(), mn, mn)?;
        let add = Table::from_rows(&add);
        let action = Table::from_rows(&action);
        let neg = validate_group(&add)?;
        let mut violations = action_violations(&ring, &add, &action, reject);
        if reject && !violations.is_empty() {
            return Err(violations.swap_remove(0));
        }
        let flags = module_flags(&ring, &action, mn);
        Ok(Self { name, ring, labels: elements, add, action, neg, flags, violations })
    }

    /// The module `R_R`: the near-ring acting on itself by multiplication.
    ///
    /// Built from a ring with recorded violations, the module inherits them.
    pub fn regular(ring: Arc<FiniteNearRing>) -> Self {
        let tables = ModuleTables {
            name: format!("{}_R", ring.name()),
            elements: ring.labels().to_vec(),
            add: ring.add.to_rows(),
            action: ring.mul.to_rows(),
        };
        let unchecked = !ring.is_near_ring();
        let built = if unchecked {
            Self::from_tables_unchecked(ring, tables)
        } else {
            Self::validate(ring, tables)
        };
        built.expect("regular module of a built near-ring")
    }

    /// Assemble from tables already known to satisfy the module axioms.
    pub(crate) fn from_parts(name: String, ring: Arc<FiniteNearRing>, labels: Vec<String>, add: Table, action: Table) -> Self {
        let neg = validate_group(&add).expect("additive group");
        let flags = module_flags(&ring, &action, labels.len());
        let violations = if ring.is_near_ring() { Vec::new() } else { action_violations(&ring, &add, &action, false) };
        Self { name, ring, labels, add, action, neg, flags, violations }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring_arc(&self) -> &Arc<FiniteNearRing> {
        &self.ring
    }

    pub fn flags(&self) -> &ModuleFlags {
        &self.flags
    }

    pub fn violations(&self) -> &[ValidationError] {
        &self.violations
    }

    /// True when both the ring and the action satisfy every axiom.
    pub fn axioms_hold(&self) -> bool {
        self.violations.is_empty() && self.ring.is_near_ring()
    }

    pub fn add_table(&self) -> &Table {
        &self.add
    }

    pub fn action_table(&self) -> &Table {
        &self.action
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn tables(&self) -> ModuleTables {
        ModuleTables {
            name: self.name.clone(),
            elements: self.labels.clone(),
            add: self.add.to_rows(),
            action: self.action.to_rows(),
        }
    }
}

impl AdditiveGroup for FiniteModule {
    fn order(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        self.add.get(a, b)
    }

    #[inline]
    fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    fn labels(&self) -> &[String] {
        &self.labels
    }
}

impl RingAction for FiniteModule {
    fn ring(&self) -> &FiniteNearRing {
        &self.ring
    }

    #[inline]
    fn act(&self, r: usize, x: usize) -> usize {
        self.action.get(r, x)
    }

    fn is_ring(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
    }

    fn klein() -> Vec<Vec<usize>> {
        (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect()
    }

    fn ring(name: &str, add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>) -> RingTables {
        let n = add.len();
        RingTables { name: name.into(), elements: (0..n).map(|i| i.to_string()).collect(), add, mul }
    }

    #[test]
    fn klein4_example_validates() {
        let mul = (0..4).map(|r| (0..4).map(|b| if b == 3 { r } else { 0 }).collect()).collect();
        let r = FiniteNearRing::validate(ring("klein4", klein(), mul), Strictness::Strict).unwrap();
        assert!(r.flags().zero_symmetric);
        assert!(r.flags().abelian_addition);
        assert!(!r.flags().near_field);
        assert_eq!(r.flags().identity, None);
        for x in 0..4 {
            assert_eq!(r.mul(0, x), 0);
        }
    }

    #[test]
    fn zero_multiplication_is_a_near_ring() {
        let r = FiniteNearRing::validate(ring("zero", cyclic(5), vec![vec![0; 5]; 5]), Strictness::Strict).unwrap();
        assert!(r.flags().zero_symmetric);
    }

    #[test]
    fn z6_table_is_not_zero_symmetric() {
        let mul = vec![
            vec![0; 6],
            vec![3, 5, 1, 3, 5, 1],
            vec![0, 4, 2, 0, 4, 2],
            vec![3; 6],
            vec![0, 2, 4, 0, 2, 4],
            vec![3, 1, 5, 3, 1, 5],
        ];
        let err = FiniteNearRing::validate(ring("z6", cyclic(6), mul.clone()), Strictness::Strict).unwrap_err();
        assert_eq!(err, ValidationError::NotZeroSymmetric { r: 1, product: 3 });
        let r = FiniteNearRing::validate(ring("z6", cyclic(6), mul), Strictness::Permissive).unwrap();
        assert!(!r.flags().zero_symmetric);
    }

    #[test]
    fn group_failures_carry_the_axiom() {
        let mut add = cyclic(3);
        add[1][2] = 1;
        let err = FiniteNearRing::validate(ring("bad", add, vec![vec![0; 3]; 3]), Strictness::Permissive).unwrap_err();
        assert!(matches!(err, ValidationError::NotAGroup { .. }));

        let mut add = cyclic(3);
        add[0][1] = 2;
        let err = FiniteNearRing::validate(ring("bad", add, vec![vec![0; 3]; 3]), Strictness::Permissive).unwrap_err();
        assert_eq!(err, ValidationError::NotAGroup { axiom: GroupAxiom::Identity, witness: vec![1] });
    }

    #[test]
    fn left_distributive_only_table_is_rejected() {
        // a*b = b is left distributive but (a+b)*c = c != c + c
        let mul = (0..3).map(|_| (0..3).collect()).collect();
        let err = FiniteNearRing::validate(ring("left", cyclic(3), mul), Strictness::Permissive).unwrap_err();
        assert!(matches!(err, ValidationError::NotRightDistributive { .. }));
    }

    #[test]
    fn unchecked_records_every_violation() {
        let mul = vec![vec![0, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 0], vec![0, 1, 0, 1]];
        let r = FiniteNearRing::from_tables_unchecked(ring("z4", klein(), mul)).unwrap();
        assert!(!r.is_near_ring());
        assert_eq!(r.violations().len(), 2);
        assert!(matches!(r.violations()[0], ValidationError::NotAssociativeMul { .. }));
        assert!(matches!(r.violations()[1], ValidationError::NotRightDistributive { .. }));
    }

    #[test]
    fn shape_errors() {
        let err = FiniteNearRing::validate(ring("x", cyclic(3), vec![vec![0; 2]; 3]), Strictness::Permissive).unwrap_err();
        assert!(matches!(err, ValidationError::Malformed(_)));
        let t = RingTables { name: "x".into(), elements: vec!["0".into(), "1".into()], add: cyclic(2), mul: vec![vec![0, 5], vec![0, 0]] };
        assert!(matches!(FiniteNearRing::validate(t, Strictness::Permissive), Err(ValidationError::Malformed(_))));
        let err = FiniteNearRing::validate_bounded(ring("big", cyclic(4), vec![vec![0; 4]; 4]), Strictness::Permissive, 3).unwrap_err();
        assert_eq!(err, ValidationError::TooLarge { order: 4, max: 3 });
    }

    #[test]
    fn trivial_module_is_not_faithful() {
        let r = Arc::new(FiniteNearRing::validate(ring("z3zero", cyclic(3), vec![vec![0; 3]; 3]), Strictness::Strict).unwrap());
        let t = ModuleTables { name: "0".into(), elements: vec!["0".into()], add: vec![vec![0]], action: vec![vec![0]; 3] };
        let m = FiniteModule::validate(r, t).unwrap();
        assert!(!m.flags().faithful);
        assert_eq!(m.flags().generators, vec![0]);

        let r0 = Arc::new(FiniteNearRing::validate(ring("zero", vec![vec![0]], vec![vec![0]]), Strictness::Strict).unwrap());
        let t = ModuleTables { name: "0".into(), elements: vec!["0".into()], add: vec![vec![0]], action: vec![vec![0]] };
        assert!(FiniteModule::validate(r0, t).unwrap().flags().faithful);
    }

    #[test]
    fn action_axioms_are_checked() {
        let mul = (0..3).map(|r| (0..3).map(|b| if b == 2 { r } else { 0 }).collect()).collect();
        let r = Arc::new(FiniteNearRing::validate(ring("z3", cyclic(3), mul), Strictness::Strict).unwrap());
        // r m = m is not additive in the scalar
        let t = ModuleTables { name: "m".into(), elements: vec!["0".into(), "1".into(), "2".into()], add: cyclic(3), action: vec![vec![0, 1, 2]; 3] };
        let err = FiniteModule::validate(r.clone(), t).unwrap_err();
        assert!(matches!(err, ValidationError::ActionNotAdditiveInScalar { .. }));
        // r m = r*m' with a twisted column breaks (r1 r2) m = r1 (r2 m)
        let t = ModuleTables {
            name: "m".into(),
            elements: vec!["0".into(), "1".into(), "2".into()],
            add: cyclic(3),
            action: vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 2, 2]],
        };
        let err = FiniteModule::validate(r.clone(), t).unwrap_err();
        assert!(matches!(err, ValidationError::ActionNotAssociative { .. }));

        let m = FiniteModule::regular(r);
        assert!(m.flags().faithful);
        assert_eq!(m.flags().generators, vec![2]);
    }
}
