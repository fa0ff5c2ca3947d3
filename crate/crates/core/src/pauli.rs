//! Binary-symplectic n-qubit Pauli operators with exact phase.
//!
//! An operator is stored as `i^phase_exp · σ_1 ⊗ ... ⊗ σ_n` where each `σ_a`
//! is one of the Hermitian matrices `I, X, Y, Z`. Qubit `a` carries `Y` when
//! bit `a - 1` is set in both masks. Internally products are computed in the
//! X-left-of-Z normal form `i^k · X^x Z^z`; because `Y = iXZ` the two phase
//! exponents differ by the number of `Y` factors (see
//! [`PauliOperator::xz_phase_exp`]).

use std::fmt;

use crate::bits::{check_qubit_count, parity, VertexSet};
use crate::error::{Error, Result};

/// An exact value in `{0, 1, i, -1, -i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhaseValue {
    Zero,
    One,
    I,
    MinusOne,
    MinusI,
}

impl PhaseValue {
    /// `i^k`.
    pub fn from_phase_exp(k: u8) -> Self {
        match k & 3 {
            0 => PhaseValue::One,
            1 => PhaseValue::I,
            2 => PhaseValue::MinusOne,
            _ => PhaseValue::MinusI,
        }
    }

    /// The exponent `k` with `self == i^k`, or `None` for zero.
    pub fn phase_exp(self) -> Option<u8> {
        match self {
            PhaseValue::Zero => None,
            PhaseValue::One => Some(0),
            PhaseValue::I => Some(1),
            PhaseValue::MinusOne => Some(2),
            PhaseValue::MinusI => Some(3),
        }
    }

    pub fn is_zero(self) -> bool {
        self == PhaseValue::Zero
    }

    /// Product of two values; zero absorbs.
    pub fn times(self, other: PhaseValue) -> PhaseValue {
        match (self.phase_exp(), other.phase_exp()) {
            (Some(a), Some(b)) => PhaseValue::from_phase_exp(a + b),
            _ => PhaseValue::Zero,
        }
    }
}

impl fmt::Display for PhaseValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhaseValue::Zero => "0",
            PhaseValue::One => "1",
            PhaseValue::I => "i",
            PhaseValue::MinusOne => "-1",
            PhaseValue::MinusI => "-i",
        })
    }
}

/// An n-qubit Pauli operator, `n <= 64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PauliOperator {
    n: usize,
    x: u64,
    z: u64,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Result<Self> {
        check_qubit_count(n)?;
        Ok(PauliOperator { n, x: 0, z: 0, phase: 0 })
    }

    /// Operator `i^phase_exp · σ` with `σ` read off the masks (both bits set = `Y`).
    pub fn from_masks(n: usize, x: VertexSet, z: VertexSet, phase_exp: u8) -> Result<Self> {
        check_qubit_count(n)?;
        for mask in [x, z] {
            if !mask.fits(n) {
                let index = mask.iter().last().unwrap_or(0);
                return Err(Error::QubitOutOfRange { index, n });
            }
        }
        Ok(PauliOperator { n, x: x.bits(), z: z.bits(), phase: phase_exp & 3 })
    }

    fn single(n: usize, a: usize, x: bool, z: bool) -> Result<Self> {
        check_qubit_count(n)?;
        if a == 0 || a > n {
            return Err(Error::QubitOutOfRange { index: a, n });
        }
        let bit = 1u64 << (a - 1);
        Ok(PauliOperator {
            n,
            x: if x { bit } else { 0 },
            z: if z { bit } else { 0 },
            phase: 0,
        })
    }

    pub fn x(n: usize, a: usize) -> Result<Self> {
        Self::single(n, a, true, false)
    }

    pub fn y(n: usize, a: usize) -> Result<Self> {
        Self::single(n, a, true, true)
    }

    pub fn z(n: usize, a: usize) -> Result<Self> {
        Self::single(n, a, false, true)
    }

    /// `Z_U = ∏_{a∈U} Z_a`.
    pub fn z_on(n: usize, u: VertexSet) -> Result<Self> {
        Self::from_masks(n, VertexSet::EMPTY, u, 0)
    }

    /// `X_U = ∏_{a∈U} X_a`.
    pub fn x_on(n: usize, u: VertexSet) -> Result<Self> {
        Self::from_masks(n, u, VertexSet::EMPTY, 0)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn x_mask(&self) -> VertexSet {
        VertexSet::from_bits(self.x)
    }

    #[inline]
    pub fn z_mask(&self) -> VertexSet {
        VertexSet::from_bits(self.z)
    }

    /// Exponent `k` in `i^k · σ_1 ⊗ ... ⊗ σ_n` with Hermitian `σ_a`.
    #[inline]
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    /// Exponent `k` in the normal form `i^k · X^x Z^z`.
    #[inline]
    pub fn xz_phase_exp(&self) -> u8 {
        ((self.phase as u32 + (self.x & self.z).count_ones()) & 3) as u8
    }

    /// Same Pauli string with the phase replaced.
    #[inline]
    pub fn with_phase_exp(&self, phase_exp: u8) -> Self {
        PauliOperator { phase: phase_exp & 3, ..*self }
    }

    /// The Hermitian representative with `phase_exp == 0`.
    #[inline]
    pub fn unsigned(&self) -> Self {
        self.with_phase_exp(0)
    }

    fn from_xz_form(n: usize, x: u64, z: u64, xz_phase: u32) -> Self {
        let phase = (xz_phase + 4 * 64 - (x & z).count_ones()) & 3;
        PauliOperator { n, x, z, phase: phase as u8 }
    }

    fn check_same_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::SizeMismatch { left: self.n, right: other.n })
        } else {
            Ok(())
        }
    }

    /// Operator product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_size(other)?;
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        // (X^x1 Z^z1)(X^x2 Z^z2) = (-1)^{|z1 & x2|} X^{x1^x2} Z^{z1^z2}
        let k = self.xz_phase_exp() as u32
            + other.xz_phase_exp() as u32
            + 2 * (self.z & other.x).count_ones();
        Self::from_xz_form(self.n, self.x ^ other.x, self.z ^ other.z, k)
    }

    /// Inverse; for Hermitian operators this is the operator itself.
    pub fn inverse(&self) -> Self {
        // σ² = I for every Pauli string, so (i^k σ)^{-1} = i^{-k} σ.
        self.with_phase_exp((4 - self.phase) & 3)
    }

    /// Hermitian adjoint; equal to [`inverse`](Self::inverse) for Paulis.
    pub fn adjoint(&self) -> Self {
        self.inverse()
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_same_size(other)?;
        Ok(parity((self.x & other.z) ^ (self.z & other.x)) == 0)
    }

    /// Number of qubits acted on nontrivially.
    #[inline]
    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    #[inline]
    pub fn is_hermitian(&self) -> bool {
        self.phase & 1 == 0
    }

    #[inline]
    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Parses a label such as `"Z2 Z6 Z7"`, `"-i Y1"` or `"I"` on `n` qubits.
    ///
    /// Tokens are whitespace separated: an optional leading phase from
    /// `+`, `-`, `i`, `-i`, then either the single token `I` or one token
    /// `X<a>`, `Y<a>`, `Z<a>` per acted-upon qubit (1-based, each qubit once).
    pub fn parse(label: &str, n: usize) -> Result<Self> {
        check_qubit_count(n)?;
        let bad = |reason: String| Error::Label { label: label.to_string(), reason };
        let mut tokens = label.split_whitespace().peekable();
        let phase = match tokens.peek().copied() {
            Some("+") => 0,
            Some("i") => 1,
            Some("-") => 2,
            Some("-i") => 3,
            _ => 4,
        };
        let phase = if phase < 4 {
            tokens.next();
            phase
        } else {
            0
        };
        let rest: Vec<&str> = tokens.collect();
        if rest.is_empty() {
            return Err(bad("no Pauli factors".into()));
        }
        if rest == ["I"] {
            return Ok(PauliOperator { n, x: 0, z: 0, phase });
        }
        let (mut x, mut z) = (0u64, 0u64);
        for tok in rest {
            let mut chars = tok.chars();
            let letter = chars.next().unwrap_or(' ');
            let (bx, bz) = match letter {
                'X' => (true, false),
                'Y' => (true, true),
                'Z' => (false, true),
                'I' => return Err(bad("`I` must be the only factor".into())),
                _ => return Err(bad(format!("unexpected token {tok:?}"))),
            };
            let index: usize = chars
                .as_str()
                .parse()
                .map_err(|_| bad(format!("token {tok:?} lacks a qubit index")))?;
            if index == 0 || index > n {
                return Err(Error::QubitOutOfRange { index, n });
            }
            let bit = 1u64 << (index - 1);
            if (x | z) & bit != 0 {
                return Err(bad(format!("qubit {index} appears more than once")));
            }
            if bx {
                x |= bit;
            }
            if bz {
                z |= bit;
            }
        }
        Ok(PauliOperator { n, x, z, phase })
    }

    /// Canonical label; inverse of [`parse`](Self::parse).
    pub fn label(&self) -> String {
        self.to_string()
    }

    /// Letter acting on 1-based qubit `a`.
    pub fn letter(&self, a: usize) -> char {
        let bit = 1u64 << (a - 1);
        match (self.x & bit != 0, self.z & bit != 0) {
            (false, false) => 'I',
            (true, false) => 'X',
            (true, true) => 'Y',
            (false, true) => 'Z',
        }
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i ", "- ", "-i "][self.phase as usize];
        f.write_str(prefix)?;
        let support = VertexSet::from_bits(self.x | self.z);
        if support.is_empty() {
            return f.write_str("I");
        }
        for (k, a) in support.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", self.letter(a), a)?;
        }
        Ok(())
    }
}

/// All Hermitian Paulis (`phase_exp == 0`) of weight exactly `d` on `n` qubits.
///
/// Order: supports in lexicographic order of their sorted qubit lists, then
/// letters `X < Y < Z` per qubit with the lowest qubit varying slowest.
/// Yields `3^d · C(n, d)` operators.
pub fn enumerate_errors(n: usize, d: usize) -> Result<ErrorIter> {
    check_qubit_count(n)?;
    if d > n {
        return Err(Error::WeightOutOfRange { d, n });
    }
    Ok(ErrorIter {
        n,
        support: (0..d).collect(),
        letters: vec![0; d],
        done: false,
    })
}

/// All Hermitian Paulis with weight in `1..=max_weight`, in increasing weight.
pub fn enumerate_errors_up_to(n: usize, max_weight: usize) -> Result<Vec<PauliOperator>> {
    let mut out = Vec::new();
    for d in 1..=max_weight {
        out.extend(enumerate_errors(n, d)?);
    }
    Ok(out)
}

/// Iterator returned by [`enumerate_errors`].
#[derive(Clone, Debug)]
pub struct ErrorIter {
    n: usize,
    support: Vec<usize>,
    letters: Vec<u8>,
    done: bool,
}

impl ErrorIter {
    fn current(&self) -> PauliOperator {
        let (mut x, mut z) = (0u64, 0u64);
        for (&q, &l) in self.support.iter().zip(&self.letters) {
            let bit = 1u64 << q;
            match l {
                0 => x |= bit,
                1 => {
                    x |= bit;
                    z |= bit
                }
                _ => z |= bit,
            }
        }
        PauliOperator { n: self.n, x, z, phase: 0 }
    }

    fn advance(&mut self) {
        // letters: odometer with the last position fastest
        for l in self.letters.iter_mut().rev() {
            if *l < 2 {
                *l += 1;
                return;
            }
            *l = 0;
        }
        // next combination in lexicographic order
        let d = self.support.len();
        let mut i = d;
        while i > 0 {
            i -= 1;
            if self.support[i] < self.n - d + i {
                self.support[i] += 1;
                for j in i + 1..d {
                    self.support[j] = self.support[j - 1] + 1;
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for ErrorIter {
    type Item = PauliOperator;

    fn next(&mut self) -> Option<PauliOperator> {
        if self.done {
            return None;
        }
        let p = self.current();
        self.advance();
        Some(p)
    }
}

/// Number of Hermitian weight-`d` Paulis on `n` qubits, `3^d · C(n, d)`.
pub fn error_count(n: usize, d: usize) -> u64 {
    if d > n {
        return 0;
    }
    let mut binom = 1u64;
    for k in 0..d as u64 {
        binom = binom * (n as u64 - k) / (k + 1);
    }
    binom * 3u64.pow(d as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(label: &str, n: usize) -> PauliOperator {
        PauliOperator::parse(label, n).unwrap()
    }

    #[test]
    fn xz_is_minus_i_y() {
        let prod = p("X1", 1).mul(&p("Z1", 1)).unwrap();
        assert_eq!(prod.x_mask(), prod.z_mask());
        assert_eq!(prod.phase_exp(), 3);
        assert_eq!(prod.label(), "-i Y1");
        assert_eq!(prod, p("-i Y1", 1));
    }

    #[test]
    fn z_strings_multiply_by_xor() {
        let a = p("Z2 Z6 Z7", 9);
        let b = p("Z4 Z5 Z9", 9);
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod, p("Z2 Z4 Z5 Z6 Z7 Z9", 9));
        assert_eq!(prod.phase_exp(), 0);
    }

    #[test]
    fn size_mismatch_is_rejected() {
        assert!(matches!(
            p("X1", 2).mul(&p("X1", 3)),
            Err(Error::SizeMismatch { left: 2, right: 3 })
        ));
        assert!(p("X1", 2).commutes(&p("X1", 3)).is_err());
    }

    #[test]
    fn commutation() {
        assert!(!p("X1", 1).commutes(&p("Z1", 1)).unwrap());
        assert!(p("X1", 2).commutes(&p("Z2", 2)).unwrap());
        assert!(p("X1 X2", 2).commutes(&p("Z1 Z2", 2)).unwrap());
    }

    #[test]
    fn weights_and_hermiticity() {
        assert_eq!(PauliOperator::identity(9).unwrap().weight(), 0);
        assert_eq!(p("Y3", 9).weight(), 1);
        assert_eq!(p("Z9 X1 Z2", 9).weight(), 3);
        assert!(PauliOperator::identity(9).unwrap().is_hermitian());
        assert!(!p("i X1", 1).is_hermitian());
        assert!(p("Y1", 1).is_hermitian());
        assert_eq!(p("Y1", 1).xz_phase_exp(), 1);
    }

    #[test]
    fn label_round_trip_and_errors() {
        assert_eq!(p("Z2 Z6 Z7", 9), PauliOperator::z_on(9, VertexSet::from_vertices([2, 6, 7]).unwrap()).unwrap());
        assert_eq!(p("I", 9), PauliOperator::identity(9).unwrap());
        assert_eq!(p("Z7 Z2 Z6", 9).label(), "Z2 Z6 Z7");
        assert_eq!(p("- I", 3).label(), "- I");
        assert_eq!(p("+ X1", 3).label(), "X1");
        for bad in ["", "X0", "X10", "Q1", "X1 Z1", "I X1", "X", "-", "i"] {
            assert!(PauliOperator::parse(bad, 9).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_errors(9, 1).unwrap().count(), 27);
        assert_eq!(enumerate_errors(9, 2).unwrap().count(), 324);
        let zero: Vec<_> = enumerate_errors(9, 0).unwrap().collect();
        assert_eq!(zero, vec![PauliOperator::identity(9).unwrap()]);
        let first: Vec<String> = enumerate_errors(3, 2).unwrap().take(4).map(|e| e.label()).collect();
        assert_eq!(first, ["X1 X2", "X1 Y2", "X1 Z2", "Y1 X2"]);
        assert!(enumerate_errors(3, 4).is_err());
    }

    #[test]
    fn enumeration_exhaustive_small() {
        for n in 1..=9 {
            for d in 0..=n {
                let all: Vec<_> = enumerate_errors(n, d).unwrap().collect();
                assert_eq!(all.len() as u64, error_count(n, d));
                let distinct: HashSet<_> = all.iter().collect();
                assert_eq!(distinct.len(), all.len());
                assert!(all.iter().all(|e| e.is_hermitian() && e.weight() == d && e.phase_exp() == 0));
            }
        }
    }
}
