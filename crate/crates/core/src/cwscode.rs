//! Codeword-stabilized codes `span{Z_{c_i}|G⟩}` and their verification.
//!
//! Two independent routes decide whether a code corrects all errors up to a
//! given weight:
//!
//! - [`CwsCode::kl_verify`] evaluates every matrix element
//!   `⟨G|Z_{c_i} E Z_{c_j}|G⟩` with Pauli products and [`Graph::overlap`];
//! - [`CwsCode::paper_proof_check`] is purely combinatorial: no transition
//!   operator `Z_{c_i ⊕ c_j}` may coincide with a reachable phase-flip pattern.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::graphstate::{DenseState, Graph};
use crate::pauli::{enumerate_errors, PauliOperator, PhaseValue};
use crate::scalar::Scalar;

/// Default cap on the number of violations stored in a [`KlReport`].
pub const DEFAULT_VIOLATION_CAP: usize = 4096;

/// Graph plus an ordered list of distinct codeword subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwsCode {
    graph: Graph,
    codewords: Vec<VertexSet>,
}

/// The twelve codeword subsets of the `((9,12,3))` code on the 9-cycle.
pub const CODEWORDS_9_12_3: [&[usize]; 12] = [
    &[],
    &[2, 6, 7],
    &[4, 5, 9],
    &[2, 3, 6, 8],
    &[3, 5, 8, 9],
    &[2, 3, 4, 5, 6, 7, 8, 9],
    &[1, 4, 7],
    &[1, 2, 4, 6],
    &[1, 5, 7, 9],
    &[1, 2, 3, 4, 6, 7, 8],
    &[1, 3, 4, 5, 7, 8, 9],
    &[1, 2, 3, 5, 6, 8, 9],
];

impl CwsCode {
    pub fn new(graph: Graph, codewords: Vec<VertexSet>) -> Result<Self> {
        let n = graph.n();
        let mut seen = BTreeSet::new();
        for &c in &codewords {
            if !c.fits(n) {
                return Err(Error::QubitOutOfRange { index: c.iter().last().unwrap_or(0), n });
            }
            if !seen.insert(c) {
                return Err(Error::DuplicateCodeword(c));
            }
        }
        Ok(CwsCode { graph, codewords })
    }

    /// The nonadditive `((9,12,3))` code on the loop graph `L_9`.
    pub fn the_9_12_3() -> Self {
        let graph = Graph::loop_graph(9).expect("L_9");
        let codewords = CODEWORDS_9_12_3
            .iter()
            .map(|c| VertexSet::from_vertices(c.iter().copied()).expect("valid vertices"))
            .collect();
        CwsCode::new(graph, codewords).expect("distinct codewords")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn codewords(&self) -> &[VertexSet] {
        &self.codewords
    }

    /// Code dimension `K`.
    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.len() {
            Err(Error::CodewordIndex { index: i, k: self.len() })
        } else {
            Ok(())
        }
    }

    fn z_ops(&self) -> Vec<PauliOperator> {
        self.codewords
            .iter()
            .map(|&c| PauliOperator::z_on(self.n(), c).expect("codeword fits"))
            .collect()
    }

    /// Dense basis state `Z_{c_i}|G⟩` (0-based `i`).
    pub fn basis_state<T: Scalar>(&self, i: usize) -> Result<DenseState<T>> {
        self.check_index(i)?;
        let g = self.graph.state_vector::<T>()?;
        g.apply_pauli(&PauliOperator::z_on(self.n(), self.codewords[i])?)
    }

    /// `⟨G|Z_{c_i} e Z_{c_j}|G⟩` for 0-based indices.
    pub fn matrix_element(&self, i: usize, j: usize, e: &PauliOperator) -> Result<PhaseValue> {
        self.check_index(i)?;
        self.check_index(j)?;
        let zi = PauliOperator::z_on(self.n(), self.codewords[i])?;
        let zj = PauliOperator::z_on(self.n(), self.codewords[j])?;
        self.graph.overlap(&zi.mul(e)?.mul(&zj)?)
    }

    /// Knill–Laflamme scan over all Hermitian errors of weight `1..=max_weight`.
    pub fn kl_verify(&self, max_weight: usize) -> Result<KlReport> {
        self.kl_verify_with_cap(max_weight, DEFAULT_VIOLATION_CAP)
    }

    pub fn kl_verify_with_cap(&self, max_weight: usize, cap: usize) -> Result<KlReport> {
        self.kl_scan(1..=max_weight, cap)
    }

    fn kl_scan(&self, weights: std::ops::RangeInclusive<usize>, cap: usize) -> Result<KlReport> {
        let n = self.n();
        let checked_weight = *weights.end();
        if checked_weight > n {
            return Err(Error::WeightOutOfRange { d: checked_weight, n });
        }
        let mut errors = Vec::new();
        for d in weights {
            errors.extend(enumerate_errors(n, d)?);
        }
        let zs = self.z_ops();
        let checks: Vec<ErrorCheck> = errors.par_iter().map(|e| self.check_error(e, &zs)).collect();

        let mut report = KlReport {
            checked_weight,
            passed: true,
            pure: true,
            errors_checked: errors.len(),
            violation_count: 0,
            violations: Vec::new(),
            truncated: false,
        };
        for check in checks {
            report.pure &= check.diagonal_zero;
            report.violation_count += check.violations.len();
            for v in check.violations {
                if report.violations.len() < cap {
                    report.violations.push(v);
                } else {
                    report.truncated = true;
                }
            }
        }
        report.passed = report.violation_count == 0;
        report.pure &= report.passed;
        Ok(report)
    }

    fn check_error(&self, e: &PauliOperator, zs: &[PauliOperator]) -> ErrorCheck {
        let k = zs.len();
        let mut violations = Vec::new();
        let mut diagonal = PhaseValue::Zero;
        let mut diagonal_zero = true;
        for i in 0..k {
            let left = zs[i].mul_unchecked(e);
            for (j, zj) in zs.iter().enumerate() {
                let value = self
                    .graph
                    .overlap(&left.mul_unchecked(zj))
                    .expect("sizes checked");
                if i == j {
                    if i == 0 {
                        diagonal = value;
                    }
                    diagonal_zero &= value.is_zero();
                    if value != diagonal {
                        violations.push(Violation { error: *e, i, j, value });
                    }
                } else if !value.is_zero() {
                    violations.push(Violation { error: *e, i, j, value });
                }
            }
        }
        ErrorCheck { violations, diagonal_zero }
    }

    /// Smallest `d <= max_d` at which some weight-`d` error breaks the
    /// Knill–Laflamme condition.
    pub fn distance(&self, max_d: usize) -> Result<Distance> {
        if max_d > self.n() {
            return Err(Error::WeightOutOfRange { d: max_d, n: self.n() });
        }
        for d in 1..=max_d {
            if !self.kl_scan(d..=d, 1)?.passed {
                return Ok(Distance::Exact(d));
            }
        }
        Ok(Distance::AtLeast(max_d + 1))
    }

    /// `{c_i ⊕ c_j : i < j}`.
    pub fn transition_set(&self) -> BTreeSet<VertexSet> {
        let mut out = BTreeSet::new();
        for (i, &a) in self.codewords.iter().enumerate() {
            for &b in &self.codewords[i + 1..] {
                out.insert(a ^ b);
            }
        }
        out
    }

    /// Transition operators reduced by the coset structure `c_{m+k} = c_k ⊕ c_{m+1}`
    /// (`K = 2m`, `c_1 = ∅`): `{c_{m+1}} ∪ {c_i ⊕ c_j, c_{m+1} ⊕ c_i ⊕ c_j : i < j <= m}`.
    ///
    /// Codes without that structure get the full [`transition_set`](Self::transition_set)
    /// and `coset_structure == false`.
    pub fn reduced_transitions(&self) -> ReducedTransitions {
        let Some(m) = self.coset_half() else {
            return ReducedTransitions { set: self.transition_set(), coset_structure: false };
        };
        let pivot = self.codewords[m];
        let mut set = BTreeSet::from([pivot]);
        for i in 0..m {
            for j in i + 1..m {
                let t = self.codewords[i] ^ self.codewords[j];
                set.insert(t);
                set.insert(t ^ pivot);
            }
        }
        ReducedTransitions { set, coset_structure: true }
    }

    fn coset_half(&self) -> Option<usize> {
        let k = self.len();
        if k < 2 || !k.is_multiple_of(2) {
            return None;
        }
        let m = k / 2;
        let pivot = self.codewords[m];
        (0..m)
            .all(|i| self.codewords[i] ^ pivot == self.codewords[m + i])
            .then_some(m)
    }

    /// Combinatorial distance-3 certificate: no transition operator is a
    /// weight-≤2 error pattern, and no such error reduces to the identity.
    pub fn paper_proof_check(&self) -> bool {
        let patterns = reduction_patterns(&self.graph, 2.min(self.n())).expect("weight fits");
        !patterns.has_empty && self.transition_set().is_disjoint(&patterns.patterns)
    }
}

struct ErrorCheck {
    violations: Vec<Violation>,
    diagonal_zero: bool,
}

/// A nonzero off-diagonal element, or a diagonal element differing from `M[0][0]`.
/// Indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub error: PauliOperator,
    pub i: usize,
    pub j: usize,
    pub value: PhaseValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlReport {
    pub checked_weight: usize,
    pub passed: bool,
    /// Every error has `M_E = 0`, i.e. maps the code into its orthogonal complement.
    pub pure: bool,
    pub errors_checked: usize,
    pub violation_count: usize,
    /// The first violations in error-enumeration order, up to the cap.
    pub violations: Vec<Violation>,
    pub truncated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact(usize),
    /// No violation up to the scanned weight.
    AtLeast(usize),
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedTransitions {
    pub set: BTreeSet<VertexSet>,
    pub coset_structure: bool,
}

/// Phase-flip patterns reachable from Hermitian errors of weight `1..=max_weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSet {
    /// Nonempty patterns.
    pub patterns: BTreeSet<VertexSet>,
    /// Some error reduces to the empty pattern (it acts as a stabilizer up to sign).
    pub has_empty: bool,
}

pub fn reduction_patterns(graph: &Graph, max_weight: usize) -> Result<PatternSet> {
    let n = graph.n();
    if max_weight > n {
        return Err(Error::WeightOutOfRange { d: max_weight, n });
    }
    let mut patterns = BTreeSet::new();
    let mut has_empty = false;
    for d in 1..=max_weight {
        for e in enumerate_errors(n, d)? {
            let p = graph.reduce_error(&e)?.pattern;
            if p.is_empty() {
                has_empty = true;
            } else {
                patterns.insert(p);
            }
        }
    }
    Ok(PatternSet { patterns, has_empty })
}

/// Weight-≤2 patterns on a loop graph, grouped by size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternClasses {
    /// Size (1..=6 on loop graphs) to patterns of that size.
    pub classes: BTreeMap<usize, BTreeSet<VertexSet>>,
    pub has_empty: bool,
    /// Patterns not matching any closed-form shape of their class.
    pub unmatched: Vec<VertexSet>,
}

impl PatternClasses {
    pub fn shapes_match(&self) -> bool {
        self.unmatched.is_empty()
    }

    pub fn all(&self) -> BTreeSet<VertexSet> {
        self.classes.values().flatten().copied().collect()
    }

    pub fn class_of(&self, p: VertexSet) -> Option<usize> {
        self.classes.iter().find(|(_, s)| s.contains(&p)).map(|(&k, _)| k)
    }
}

/// Roman numeral for a pattern class.
pub fn class_name(size: usize) -> &'static str {
    ["0", "I", "II", "III", "IV", "V", "VI"].get(size).copied().unwrap_or("?")
}

/// Patterns of single- and two-qubit errors on a loop graph, tagged I..VI by size
/// and checked against the closed-form cycle shapes of each class.
pub fn error_patterns(graph: &Graph) -> Result<PatternClasses> {
    if !graph.is_loop_graph() {
        return Err(Error::NotLoopGraph);
    }
    let raw = reduction_patterns(graph, 2)?;
    let shapes = loop_shapes(graph.n());
    let mut classes: BTreeMap<usize, BTreeSet<VertexSet>> = BTreeMap::new();
    let mut unmatched = Vec::new();
    for &p in &raw.patterns {
        let size = p.len();
        if !shapes.get(&size).is_some_and(|s| s.contains(&p)) {
            unmatched.push(p);
        }
        classes.entry(size).or_default().insert(p);
    }
    Ok(PatternClasses { classes, has_empty: raw.has_empty, unmatched })
}

/// Closed-form pattern shapes on the `n`-cycle, keyed by class size:
///
/// ```text
/// I    Z_a
/// II   Z_a Z_b
/// III  Z_{a-} Z_b Z_{a+},  Z_{a±1} Z_a Z_{a±3}
/// IV   Z_{a-} Z_{a+} Z_{b-} Z_{b+},  Z_{a-} Z_a Z_{a+} Z_b,  Z_{a-} Z_{a-2} Z_{a+} Z_{a+2}
/// V    Z_{a-} Z_a Z_{a+} Z_{b-} Z_{b+}
/// VI   Z_{a-} Z_a Z_{a+} Z_{b-} Z_b Z_{b+}
/// ```
///
/// The two `±` signs in class III are independent. Products are taken as
/// symmetric differences and a shape only counts for the class whose size it has.
pub fn loop_shapes(n: usize) -> BTreeMap<usize, BTreeSet<VertexSet>> {
    let v = |a: usize, off: i64| -> VertexSet {
        let idx = (a as i64 - 1 + off).rem_euclid(n as i64) as usize;
        VertexSet::from_bits(1 << idx)
    };
    let xor = |parts: &[VertexSet]| parts.iter().fold(VertexSet::EMPTY, |acc, &p| acc ^ p);
    let mut shapes: BTreeMap<usize, BTreeSet<VertexSet>> = BTreeMap::new();
    let mut add = |class: usize, s: VertexSet| {
        if s.len() == class {
            shapes.entry(class).or_default().insert(s);
        }
    };
    for a in 1..=n {
        add(1, v(a, 0));
        for s1 in [-1, 1] {
            for s3 in [-3, 3] {
                add(3, xor(&[v(a, s1), v(a, 0), v(a, s3)]));
            }
        }
        add(4, xor(&[v(a, -1), v(a, -2), v(a, 1), v(a, 2)]));
        for b in 1..=n {
            add(2, xor(&[v(a, 0), v(b, 0)]));
            add(3, xor(&[v(a, -1), v(b, 0), v(a, 1)]));
            add(4, xor(&[v(a, -1), v(a, 1), v(b, -1), v(b, 1)]));
            add(4, xor(&[v(a, -1), v(a, 0), v(a, 1), v(b, 0)]));
            add(5, xor(&[v(a, -1), v(a, 0), v(a, 1), v(b, -1), v(b, 1)]));
            add(6, xor(&[v(a, -1), v(a, 0), v(a, 1), v(b, -1), v(b, 0), v(b, 1)]));
        }
    }
    shapes
}
