//! Sparse linear combinations of Pauli operators.
//!
//! A [`PauliSum`] maps Hermitian Pauli strings (`phase_exp == 0`) to complex
//! coefficients; the phase of an operator is folded into its coefficient on
//! insertion. With `T = Ratio<i64>` all arithmetic is exact, which is what
//! the projector identities below rely on.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use rayon::prelude::*;

use crate::bits::{check_qubit_count, VertexSet};
use crate::cwscode::CwsCode;
use crate::error::{Error, Result};
use crate::graphstate::{DenseState, Graph};
use crate::pauli::{enumerate_errors, PauliOperator, PhaseValue};
use crate::scalar::{from_int, i_pow, pow2, Scalar};
use crate::Exact;

#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum<T> {
    n: usize,
    terms: BTreeMap<PauliOperator, Complex<T>>,
}

fn czero<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

fn is_czero<T: Scalar>(c: &Complex<T>) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

impl<T: Scalar> PauliSum<T> {
    pub fn zero(n: usize) -> Result<Self> {
        check_qubit_count(n)?;
        Ok(PauliSum { n, terms: BTreeMap::new() })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_pauli(&PauliOperator::identity(n)?)
    }

    pub fn from_pauli(p: &PauliOperator) -> Result<Self> {
        Self::from_term(p, Complex::new(T::one(), T::zero()))
    }

    /// `coefficient · p`.
    pub fn from_term(p: &PauliOperator, coefficient: Complex<T>) -> Result<Self> {
        let mut s = Self::zero(p.n())?;
        s.accumulate(p, coefficient);
        Ok(s)
    }

    fn accumulate(&mut self, p: &PauliOperator, coefficient: Complex<T>) {
        let c = coefficient * i_pow::<T>(p.phase_exp());
        let key = p.unsigned();
        let slot = self.terms.entry(key).or_insert_with(czero);
        *slot = slot.clone() + c;
        if is_czero(slot) {
            self.terms.remove(&key);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Terms in canonical order; keys are Hermitian (`phase_exp == 0`).
    pub fn terms(&self) -> impl Iterator<Item = (&PauliOperator, &Complex<T>)> {
        self.terms.iter()
    }

    /// The coefficient `c` such that this sum contains `c · p`.
    pub fn coefficient(&self, p: &PauliOperator) -> Complex<T> {
        match self.terms.get(&p.unsigned()) {
            Some(c) => c.clone() * i_pow::<T>((4 - p.phase_exp()) & 3),
            None => czero(),
        }
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::SizeMismatch { left: self.n, right: other.n })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.accumulate(p, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(Complex::new(-T::one(), T::zero())))
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        let mut out = PauliSum { n: self.n, terms: BTreeMap::new() };
        if is_czero(&factor) {
            return out;
        }
        for (p, c) in &self.terms {
            out.terms.insert(*p, c.clone() * factor.clone());
        }
        out
    }

    /// Real scalar multiple.
    pub fn scale_real(&self, factor: T) -> Self {
        self.scale(Complex::new(factor, T::zero()))
    }

    /// Operator product; every pair of terms is multiplied and re-aggregated.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut out = PauliSum { n: self.n, terms: BTreeMap::new() };
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.accumulate(&p.mul_unchecked(q), a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        PauliSum {
            n: self.n,
            terms: self.terms.iter().map(|(p, c)| (*p, c.conj())).collect(),
        }
    }

    /// `Tr(x) = 2^n ·` (identity coefficient).
    pub fn trace(&self) -> Complex<T> {
        let id = PauliOperator::identity(self.n).expect("valid n");
        self.coefficient(&id) * pow2::<T>(self.n)
    }

    /// The operator `i^k · P` if this sum is a single term with coefficient `i^k`.
    pub fn as_single_pauli(&self) -> Option<PauliOperator> {
        if self.terms.len() != 1 {
            return None;
        }
        let (p, c) = self.terms.iter().next()?;
        (0..4u8).find(|&k| *c == i_pow::<T>(k)).map(|k| p.with_phase_exp(k))
    }

    /// `x|ψ⟩`.
    pub fn apply(&self, state: &DenseState<T>) -> Result<DenseState<T>> {
        if state.n() != self.n {
            return Err(Error::SizeMismatch { left: self.n, right: state.n() });
        }
        let mut acc = vec![czero::<T>(); 1 << self.n];
        for (p, c) in &self.terms {
            let moved = state.apply_pauli(p)?;
            for (slot, a) in acc.iter_mut().zip(moved.scaled_amplitudes()) {
                *slot = slot.clone() + c.clone() * a.clone();
            }
        }
        DenseState::from_scaled_amplitudes(self.n, acc)
    }
}

impl<'a, T: Scalar> Add<&'a PauliSum<T>> for &'a PauliSum<T> {
    type Output = PauliSum<T>;

    /// Panics on a qubit-count mismatch; use [`PauliSum::checked_add`] to recover.
    fn add(self, rhs: &'a PauliSum<T>) -> PauliSum<T> {
        self.checked_add(rhs).expect("PauliSum size mismatch")
    }
}

impl<'a, T: Scalar> Sub<&'a PauliSum<T>> for &'a PauliSum<T> {
    type Output = PauliSum<T>;

    fn sub(self, rhs: &'a PauliSum<T>) -> PauliSum<T> {
        self.checked_sub(rhs).expect("PauliSum size mismatch")
    }
}

impl<'a, T: Scalar> Mul<&'a PauliSum<T>> for &'a PauliSum<T> {
    type Output = PauliSum<T>;

    fn mul(self, rhs: &'a PauliSum<T>) -> PauliSum<T> {
        self.checked_mul(rhs).expect("PauliSum size mismatch")
    }
}

impl<T: Scalar> Neg for &PauliSum<T> {
    type Output = PauliSum<T>;

    fn neg(self) -> PauliSum<T> {
        self.scale_real(-T::one())
    }
}

fn l9_element<T: Scalar>(g: &Graph, vertices: &[usize]) -> PauliSum<T> {
    let u = VertexSet::from_vertices(vertices.iter().copied()).expect("valid vertices");
    PauliSum::from_pauli(&g.stabilizer_element(u).expect("fits")).expect("valid n")
}

/// `c_0 · 1 + Σ c_k G_{U_k}` on `L_9`.
fn l9_combination<T: Scalar>(g: &Graph, constant: i64, terms: &[(i64, &[usize])]) -> PauliSum<T> {
    let mut s = PauliSum::<T>::identity(9).expect("n = 9").scale_real(from_int(constant));
    for &(c, u) in terms {
        s = &s + &l9_element::<T>(g, u).scale_real(from_int(c));
    }
    s
}

/// The operator
/// `A = G_14 (1 - G_36 + G_39 - G_69 + 2 G_369 + 2 G_9) + G_17 (1 - G_39 + G_36 - G_69 + 2 G_369 + 2 G_6)`
/// on the loop graph `L_9`.
pub fn build_a<T: Scalar>() -> PauliSum<T> {
    let g = Graph::loop_graph(9).expect("L_9");
    let left = &l9_element::<T>(&g, &[1, 4])
        * &l9_combination(&g, 1, &[(-1, &[3, 6]), (1, &[3, 9]), (-1, &[6, 9]), (2, &[3, 6, 9]), (2, &[9])]);
    let right = &l9_element::<T>(&g, &[1, 7])
        * &l9_combination(&g, 1, &[(-1, &[3, 9]), (1, &[3, 6]), (-1, &[6, 9]), (2, &[3, 6, 9]), (2, &[6])]);
    &left + &right
}

/// `P = 2^{-10} (1 + G_38)(1 + G_62)(1 + G_95) A (A + 8)`.
pub fn build_projector<T: Scalar>() -> PauliSum<T> {
    let g = Graph::loop_graph(9).expect("L_9");
    let a = build_a::<T>();
    let a_plus_8 = &a + &PauliSum::identity(9).expect("n = 9").scale_real(from_int(8));
    let mut p = PauliSum::identity(9).expect("n = 9");
    for u in [[3, 8], [6, 2], [9, 5]] {
        p = &p * &l9_combination(&g, 1, &[(1, &u)]);
    }
    let p = &(&p * &a) * &a_plus_8;
    p.scale_real(T::one() / pow2::<T>(10))
}

/// Largest qubit count for which projectors are expanded over all `2^n` subsets.
pub const MAX_PROJECTOR_QUBITS: usize = 20;

/// `Σ_i Z_{c_i}|G⟩⟨G|Z_{c_i}` in the Pauli basis: `G_U` carries coefficient
/// `Σ_i (-1)^{|U ∩ c_i|} / 2^n`.
pub fn projector_from_codewords<T: Scalar>(code: &CwsCode) -> Result<PauliSum<T>> {
    let n = code.n();
    if n > MAX_PROJECTOR_QUBITS {
        return Err(Error::TooLarge { what: "projector expansion", n, max: MAX_PROJECTOR_QUBITS });
    }
    let g = code.graph();
    let scale = T::one() / pow2::<T>(n);
    let mut out = PauliSum::zero(n)?;
    for u in 0..1u64 << n {
        let u = VertexSet::from_bits(u);
        let t = codeword_character_sum(code.codewords(), u);
        if t != 0 {
            let coefficient = Complex::new(from_int::<T>(t) * scale.clone(), T::zero());
            out.accumulate(&g.stabilizer_element(u)?, coefficient);
        }
    }
    Ok(out)
}

/// `Σ_i (-1)^{|U ∩ c_i|}`.
#[inline]
pub fn codeword_character_sum(codewords: &[VertexSet], u: VertexSet) -> i64 {
    codewords.iter().map(|&c| if u.odd_overlap(c) { -1 } else { 1 }).sum()
}

/// Whether the single stabilizer element `x` fixes each codeword: entry `i`
/// is `⟨w_i|x|w_i⟩ == +1`.
pub fn stabilizes<T: Scalar>(x: &PauliSum<T>, code: &CwsCode) -> Result<Vec<bool>> {
    let p = x.as_single_pauli().ok_or(Error::NotSinglePauli)?;
    (0..code.len())
        .map(|i| Ok(code.matrix_element(i, i, &p)? == PhaseValue::One))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumeratorMethod {
    /// `Σ Tr(P E)^2` over every Hermitian Pauli `E`, from the expanded projector.
    Brute,
    /// `Σ_U (Σ_i (-1)^{|U ∩ c_i|})^2` over stabilizer elements, bucketed by weight.
    Fast,
}

/// `A_d = Σ_{wt(E) = d} Tr(P E)^2` for `d = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratorResult {
    pub a: Vec<u64>,
}

impl EnumeratorResult {
    pub fn total(&self) -> u64 {
        self.a.iter().sum()
    }
}

pub const MAX_BRUTE_ENUMERATOR_QUBITS: usize = 12;
pub const MAX_FAST_ENUMERATOR_QUBITS: usize = 30;

pub fn weight_enumerator(code: &CwsCode, method: EnumeratorMethod) -> Result<EnumeratorResult> {
    match method {
        EnumeratorMethod::Brute => brute_enumerator(code),
        EnumeratorMethod::Fast => fast_enumerator(code),
    }
}

fn brute_enumerator(code: &CwsCode) -> Result<EnumeratorResult> {
    let n = code.n();
    if n > MAX_BRUTE_ENUMERATOR_QUBITS {
        return Err(Error::TooLarge { what: "brute-force enumerator", n, max: MAX_BRUTE_ENUMERATOR_QUBITS });
    }
    let p = projector_from_codewords::<Exact>(code)?;
    let dim = pow2::<Exact>(n);
    let a = (0..=n)
        .into_par_iter()
        .map(|d| {
            let mut acc = Exact::from_integer(0);
            for e in enumerate_errors(n, d)? {
                let tr = p.coefficient(&e) * dim;
                acc += (tr * tr).re;
            }
            debug_assert!(acc.is_integer());
            Ok(acc.to_integer() as u64)
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(EnumeratorResult { a })
}

fn fast_enumerator(code: &CwsCode) -> Result<EnumeratorResult> {
    let n = code.n();
    if n > MAX_FAST_ENUMERATOR_QUBITS {
        return Err(Error::TooLarge { what: "enumerator", n, max: MAX_FAST_ENUMERATOR_QUBITS });
    }
    let g = code.graph();
    let words = code.codewords();
    let a = (0..1u64 << n)
        .into_par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut acc, u| {
                let u = VertexSet::from_bits(u);
                // G_U = ±X_U Z_{ΓU}
                let weight = (u | g.odd_neighborhood(u)).len();
                let t = codeword_character_sum(words, u);
                acc[weight] += (t * t) as u64;
                acc
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(EnumeratorResult { a })
}
