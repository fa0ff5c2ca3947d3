//! Graphs, graph states and their stabilizers.
//!
//! The fast path works purely on Pauli masks: the stabilizer group of `|G⟩`
//! is `{G_U}` with `G_U = ∏_{v∈U} X_v Z_{N_v}`, so `⟨G|P|G⟩` is nonzero only
//! when `P` is a phase multiple of `G_{x(P)}`. [`DenseState`] is a small
//! state-vector oracle used to cross-check that path.

use std::fmt;

use num_complex::Complex;

use crate::bits::{check_qubit_count, VertexSet};
use crate::error::{Error, Result};
use crate::pauli::{PauliOperator, PhaseValue};
use crate::scalar::{i_pow, pow2, Scalar};

/// Largest qubit count accepted by the dense oracle.
pub const MAX_DENSE_QUBITS: usize = 14;

/// Simple undirected graph on vertices `1..=n`, stored as adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Result<Self> {
        check_qubit_count(n)?;
        Ok(Graph { n, rows: vec![0; n] })
    }

    /// Builds a graph from 1-based edges; self-loops and repeated edges are errors.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::edgeless(n)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        for v in [a, b] {
            if v == 0 || v > self.n {
                return Err(Error::QubitOutOfRange { index: v, n: self.n });
            }
        }
        if a == b {
            return Err(Error::Graph(format!("self-loop on vertex {a}")));
        }
        if self.has_edge(a, b) {
            return Err(Error::Graph(format!("duplicate edge {a}-{b}")));
        }
        self.rows[a - 1] |= 1 << (b - 1);
        self.rows[b - 1] |= 1 << (a - 1);
        Ok(())
    }

    /// The cycle `1 - 2 - ... - n - 1`.
    pub fn loop_graph(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Graph(format!("loop graph needs at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (1..=n).map(|a| (a, a % n + 1)).collect();
        Self::from_edges(n, &edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a >= 1 && a <= self.n && self.rows[a - 1] >> (b - 1) & 1 == 1
    }

    /// `N_a`, the neighbourhood of 1-based vertex `a`.
    pub fn neighbors(&self, a: usize) -> Result<VertexSet> {
        self.check_vertex(a)?;
        Ok(VertexSet::from_bits(self.rows[a - 1]))
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 1..=self.n {
            for b in VertexSet::from_bits(self.rows[a - 1]).iter() {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// True iff this is exactly [`Graph::loop_graph`] on its vertex count.
    pub fn is_loop_graph(&self) -> bool {
        Graph::loop_graph(self.n).is_ok_and(|l| &l == self)
    }

    /// `Γ·u` over GF(2): the vertices adjacent to an odd number of members of `u`.
    #[inline]
    pub fn odd_neighborhood(&self, u: VertexSet) -> VertexSet {
        let mut acc = 0u64;
        for a in u.iter() {
            acc ^= self.rows[a - 1];
        }
        VertexSet::from_bits(acc)
    }

    /// Parity of the number of edges inside `u`; the sign exponent of the graph-state amplitude.
    pub fn inner_edge_parity(&self, u: VertexSet) -> bool {
        let mut count = 0u32;
        for a in u.iter() {
            count += (self.rows[a - 1] & u.bits()).count_ones();
        }
        (count / 2) & 1 == 1
    }

    fn check_vertex(&self, a: usize) -> Result<()> {
        if a == 0 || a > self.n {
            Err(Error::QubitOutOfRange { index: a, n: self.n })
        } else {
            Ok(())
        }
    }

    fn check_size(&self, p: &PauliOperator) -> Result<()> {
        if p.n() != self.n {
            Err(Error::SizeMismatch { left: self.n, right: p.n() })
        } else {
            Ok(())
        }
    }

    /// `G_a = X_a Z_{N_a}`.
    pub fn vertex_stabilizer(&self, a: usize) -> Result<PauliOperator> {
        let nbrs = self.neighbors(a)?;
        PauliOperator::from_masks(self.n, VertexSet::singleton(a)?, nbrs, 0)
    }

    /// `G_U = ∏_{v∈U} G_v`, multiplied in increasing vertex order.
    pub fn stabilizer_element(&self, u: VertexSet) -> Result<PauliOperator> {
        if !u.fits(self.n) {
            let index = u.iter().last().unwrap_or(0);
            return Err(Error::QubitOutOfRange { index, n: self.n });
        }
        let mut acc = PauliOperator::identity(self.n)?;
        for v in u.iter() {
            acc = acc.mul_unchecked(&self.vertex_stabilizer(v)?);
        }
        Ok(acc)
    }

    /// Exact `⟨G|p|G⟩`.
    pub fn overlap(&self, p: &PauliOperator) -> Result<PhaseValue> {
        self.check_size(p)?;
        let x = p.x_mask();
        if p.z_mask() != self.odd_neighborhood(x) {
            return Ok(PhaseValue::Zero);
        }
        let s = self.stabilizer_element(x)?;
        // same masks, so p = i^(k_p - k_s) · s and ⟨G|s|G⟩ = 1
        Ok(PhaseValue::from_phase_exp(4 + p.phase_exp() - s.phase_exp()))
    }

    /// Rewrites `e` as `i^phase · Z_pattern · G_support` with `support = x(e)`.
    ///
    /// On every basis state `Z_c|G⟩` the stabilizer factor contributes only
    /// the sign `(-1)^{|support ∩ c|}`, so `e` acts as the phase flip
    /// `Z_pattern` up to that sign; see [`Reduction::factor_on`].
    pub fn reduce_error(&self, e: &PauliOperator) -> Result<Reduction> {
        self.check_size(e)?;
        let support = e.x_mask();
        let g = self.stabilizer_element(support)?;
        let z_only = e.mul_unchecked(&g);
        debug_assert!(z_only.x_mask().is_empty());
        Ok(Reduction {
            pattern: z_only.z_mask(),
            phase_exp: z_only.phase_exp(),
            support,
        })
    }

    /// `|G⟩` from the sign formula `(-1)^{edges inside supp(μ)} / √2^n`.
    pub fn state_vector<T: Scalar>(&self) -> Result<DenseState<T>> {
        check_dense(self.n)?;
        let amps = (0..1u64 << self.n)
            .map(|mu| {
                let one = Complex::new(T::one(), T::zero());
                if self.inner_edge_parity(VertexSet::from_bits(mu)) {
                    -one
                } else {
                    one
                }
            })
            .collect();
        Ok(DenseState { n: self.n, amps })
    }

    /// `|G⟩ = ∏_{edges} U_ab |+⟩^n` with `U_ab = (1 + Z_a + Z_b - Z_a Z_b)/2`,
    /// applied as operator sums on the dense vector.
    pub fn state_vector_by_controlled_phase<T: Scalar>(&self) -> Result<DenseState<T>> {
        let mut psi = DenseState::<T>::plus_state(self.n)?;
        let two = T::one() + T::one();
        for (a, b) in self.edges() {
            let za = PauliOperator::z(self.n, a)?;
            let zb = PauliOperator::z(self.n, b)?;
            let zab = za.mul_unchecked(&zb);
            let terms = [
                psi.clone(),
                psi.apply_pauli(&za)?,
                psi.apply_pauli(&zb)?,
                psi.apply_pauli(&zab)?,
            ];
            let amps = (0..psi.amps.len())
                .map(|k| {
                    (terms[0].amps[k].clone() + terms[1].amps[k].clone() + terms[2].amps[k].clone()
                        - terms[3].amps[k].clone())
                        / two.clone()
                })
                .collect();
            psi = DenseState { n: self.n, amps };
        }
        Ok(psi)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges()).finish()
    }
}

/// Result of [`Graph::reduce_error`]: `e = i^phase_exp · Z_pattern · G_support`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Reduction {
    pub pattern: VertexSet,
    pub phase_exp: u8,
    pub support: VertexSet,
}

impl Reduction {
    pub fn sign(&self) -> PhaseValue {
        PhaseValue::from_phase_exp(self.phase_exp)
    }

    /// Factor `f` with `⟨w|e|Z_c G⟩ = f · ⟨w|Z_pattern|Z_c G⟩` for every `w`.
    pub fn factor_on(&self, codeword: VertexSet) -> PhaseValue {
        let flip = if self.support.odd_overlap(codeword) { 2 } else { 0 };
        PhaseValue::from_phase_exp(self.phase_exp + flip)
    }
}

fn check_dense(n: usize) -> Result<()> {
    check_qubit_count(n)?;
    if n > MAX_DENSE_QUBITS {
        Err(Error::TooLarge { what: "dense state vectors", n, max: MAX_DENSE_QUBITS })
    } else {
        Ok(())
    }
}

/// Dense state vector with an implicit `1/√2^n` normalisation.
///
/// Amplitude `k` belongs to the computational basis state `|μ⟩` where bit
/// `a - 1` of `k` is `μ_a`; the stored value is `√2^n · ⟨μ|ψ⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState<T> {
    n: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Scalar> DenseState<T> {
    /// `|+⟩^n`.
    pub fn plus_state(n: usize) -> Result<Self> {
        check_dense(n)?;
        Ok(DenseState {
            n,
            amps: vec![Complex::new(T::one(), T::zero()); 1 << n],
        })
    }

    /// Wraps scaled amplitudes; the caller provides `√2^n · ⟨μ|ψ⟩`.
    pub fn from_scaled_amplitudes(n: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        check_dense(n)?;
        if amps.len() != 1 << n {
            return Err(Error::SizeMismatch { left: 1 << n, right: amps.len() });
        }
        Ok(DenseState { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Scaled amplitudes `√2^n · ⟨μ|ψ⟩`.
    pub fn scaled_amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    /// `p|ψ⟩`.
    pub fn apply_pauli(&self, p: &PauliOperator) -> Result<Self> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch { left: self.n, right: p.n() });
        }
        let (x, z) = (p.x_mask().bits(), p.z_mask().bits());
        let base: Complex<T> = i_pow(p.xz_phase_exp());
        let neg = -base.clone();
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.amps.len()];
        for (mu, a) in self.amps.iter().enumerate() {
            let mu = mu as u64;
            // X^x Z^z |μ⟩ = (-1)^{z·μ} |μ ⊕ x⟩
            let f = if (z & mu).count_ones() & 1 == 1 { &neg } else { &base };
            out[(mu ^ x) as usize] = f.clone() * a.clone();
        }
        Ok(DenseState { n: self.n, amps: out })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if other.n != self.n {
            return Err(Error::SizeMismatch { left: self.n, right: other.n });
        }
        let sum = self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b.clone());
        Ok(sum / pow2::<T>(self.n))
    }

    /// `⟨self|p|self⟩`.
    pub fn expectation(&self, p: &PauliOperator) -> Result<Complex<T>> {
        self.inner(&self.apply_pauli(p)?)
    }

    pub fn norm_sqr(&self) -> T {
        self.inner(self).expect("same size").re
    }

    /// Sign string of a real ±1 amplitude vector, e.g. `+1/√512`.
    pub fn sign_strings(&self) -> Option<Vec<String>> {
        let one = Complex::new(T::one(), T::zero());
        let dim = 1usize << self.n;
        self.amps
            .iter()
            .map(|a| {
                if *a == one {
                    Some(format!("+1/√{dim}"))
                } else if *a == -one.clone() {
                    Some(format!("-1/√{dim}"))
                } else {
                    None
                }
            })
            .collect()
    }
}
