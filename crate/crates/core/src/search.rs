//! Search for codeword sets whose pairwise differences avoid every
//! reachable error pattern.
//!
//! Codewords are Z-flip subsets of the vertex set. Two subsets are
//! compatible when their symmetric difference is not a pattern produced by
//! an error of weight `< target_distance`; a code is a clique in this Cayley
//! graph on `2^n` vertices. The difference condition is translation
//! invariant, so the search fixes `∅` as the first codeword and looks for a
//! maximum clique among its neighbours.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use crate::bits::VertexSet;
use crate::cwscode::{reduction_patterns, CwsCode, PatternSet};
use crate::error::{Error, Result};
use crate::graphstate::Graph;

/// Largest vertex count the clique search will attempt (`2^n` candidates).
pub const MAX_SEARCH_QUBITS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStrategy {
    /// Scan subsets in increasing mask order and keep every compatible one.
    Greedy,
    /// Exact maximum clique with a colouring bound, seeded by the greedy set.
    BranchAndBound,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub graph: Graph,
    pub target_distance: usize,
    pub min_size: usize,
    pub time_budget: Duration,
    pub strategy: SearchStrategy,
}

impl SearchConfig {
    pub fn new(graph: Graph, target_distance: usize) -> Self {
        SearchConfig {
            graph,
            target_distance,
            min_size: 1,
            time_budget: Duration::from_secs(60),
            strategy: SearchStrategy::BranchAndBound,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.target_distance < 2 {
            return Err(Error::SearchConfig("target distance must be at least 2".into()));
        }
        if self.target_distance - 1 > self.graph.n() {
            return Err(Error::SearchConfig(format!(
                "target distance {} needs error weight {} > n = {}",
                self.target_distance,
                self.target_distance - 1,
                self.graph.n()
            )));
        }
        if self.min_size < 1 {
            return Err(Error::SearchConfig("min size must be at least 1".into()));
        }
        if self.graph.n() > MAX_SEARCH_QUBITS {
            return Err(Error::TooLarge { what: "codeword search", n: self.graph.n(), max: MAX_SEARCH_QUBITS });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    /// Codewords in increasing mask order; always starts with `∅`.
    pub codewords: Vec<VertexSet>,
    pub size: usize,
    /// The set passed the independent Knill–Laflamme verifier at weight
    /// `target_distance - 1` and reached `min_size`.
    pub certified: bool,
    pub elapsed: Duration,
    /// The whole search space was explored, so `size` is the maximum.
    pub exhausted: bool,
    /// Some error of weight `< target_distance` reduces to the empty pattern.
    pub degenerate_errors: bool,
}

/// Nonempty patterns of errors with weight `1..=max_weight`; `has_empty`
/// flags errors that act trivially on the graph state.
pub fn forbidden_differences(graph: &Graph, max_weight: usize) -> Result<PatternSet> {
    reduction_patterns(graph, max_weight)
}

/// True iff the code spanned by `candidate` passes the Knill–Laflamme check
/// for all errors of weight `< d`.
pub fn certify(candidate: &[VertexSet], graph: &Graph, d: usize) -> bool {
    if d == 0 || d - 1 > graph.n() {
        return false;
    }
    match CwsCode::new(graph.clone(), candidate.to_vec()) {
        Ok(code) => code.kl_verify_with_cap(d - 1, 1).is_ok_and(|r| r.passed),
        Err(_) => false,
    }
}

/// The search's own pairwise test, kept separate from [`certify`].
pub fn differences_avoid(candidate: &[VertexSet], forbidden: &BTreeSet<VertexSet>) -> bool {
    candidate.iter().enumerate().all(|(i, &a)| {
        candidate[i + 1..].iter().all(|&b| a != b && !forbidden.contains(&(a ^ b)))
    })
}

pub fn compatibility_search(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let start = Instant::now();
    let n = cfg.graph.n();
    let forbidden = forbidden_differences(&cfg.graph, cfg.target_distance - 1)?;
    let mut is_forbidden = vec![false; 1 << n];
    for p in &forbidden.patterns {
        is_forbidden[p.bits() as usize] = true;
    }

    let greedy = greedy_clique(n, &is_forbidden);
    let (clique, exhausted) = match cfg.strategy {
        SearchStrategy::Greedy => (greedy, false),
        SearchStrategy::BranchAndBound => {
            let deadline = start + cfg.time_budget;
            max_clique(n, &is_forbidden, greedy, deadline)
        }
    };

    let mut codewords: Vec<VertexSet> = std::iter::once(0)
        .chain(clique)
        .map(VertexSet::from_bits)
        .collect();
    codewords.sort();
    debug_assert!(differences_avoid(&codewords, &forbidden.patterns));
    let size = codewords.len();
    let certified = size >= cfg.min_size && certify(&codewords, &cfg.graph, cfg.target_distance);
    Ok(SearchResult {
        codewords,
        size,
        certified,
        elapsed: start.elapsed(),
        exhausted,
        degenerate_errors: forbidden.has_empty,
    })
}

/// Nonzero masks compatible with `∅` and with every earlier pick, in increasing order.
fn greedy_clique(n: usize, is_forbidden: &[bool]) -> Vec<u64> {
    let mut chosen: Vec<u64> = Vec::new();
    for c in 1..1u64 << n {
        if !is_forbidden[c as usize] && chosen.iter().all(|&d| !is_forbidden[(c ^ d) as usize]) {
            chosen.push(c);
        }
    }
    chosen
}

#[derive(Clone)]
struct Bitset(Vec<u64>);

impl Bitset {
    fn empty(len: usize) -> Self {
        Bitset(vec![0; len.div_ceil(64)])
    }

    fn full(len: usize) -> Self {
        let mut b = Self::empty(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    #[inline]
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    fn intersect(&self, other: &Bitset) -> Bitset {
        Bitset(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    #[inline]
    fn subtract_in_place(&mut self, other: &Bitset) {
        self.0.iter_mut().zip(&other.0).for_each(|(a, b)| *a &= !b);
    }

    #[inline]
    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct CliqueSearch {
    /// vertex index -> codeword mask, sorted by degree descending
    masks: Vec<u64>,
    adj: Vec<Bitset>,
    best: Vec<usize>,
    current: Vec<usize>,
    deadline: Instant,
    nodes: u64,
    timed_out: bool,
}

impl CliqueSearch {
    /// Greedy colouring of `p`; returns vertices with their colour numbers,
    /// colours nondecreasing.
    fn colour(&self, p: &Bitset) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(p.count());
        let mut uncoloured = p.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                uncoloured.remove(v);
                q.subtract_in_place(&self.adj[v]);
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, mut p: Bitset) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) && Instant::now() >= self.deadline {
            self.timed_out = true;
        }
        if self.timed_out {
            return;
        }
        let order = self.colour(&p);
        for &(v, colour) in order.iter().rev() {
            if self.current.len() + colour <= self.best.len() || self.timed_out {
                return;
            }
            self.current.push(v);
            let next = p.intersect(&self.adj[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            p.remove(v);
        }
    }
}

/// Maximum clique among the neighbours of `∅`; returns the clique (without
/// `∅`) and whether the search finished before the deadline.
fn max_clique(n: usize, is_forbidden: &[bool], seed: Vec<u64>, deadline: Instant) -> (Vec<u64>, bool) {
    let candidates: Vec<u64> = (1..1u64 << n).filter(|&c| !is_forbidden[c as usize]).collect();
    let compatible = |a: u64, b: u64| !is_forbidden[(a ^ b) as usize];
    let degree = |a: u64| candidates.iter().filter(|&&b| b != a && compatible(a, b)).count();
    let mut ordered: Vec<(usize, u64)> = candidates.iter().map(|&c| (degree(c), c)).collect();
    ordered.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    let masks: Vec<u64> = ordered.into_iter().map(|(_, c)| c).collect();

    let len = masks.len();
    let adj = (0..len)
        .map(|i| {
            let mut row = Bitset::empty(len);
            for j in 0..len {
                if i != j && compatible(masks[i], masks[j]) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    let index_of = |m: u64| masks.iter().position(|&x| x == m).expect("seed is a candidate");
    let mut search = CliqueSearch {
        best: seed.iter().map(|&m| index_of(m)).collect(),
        masks,
        adj,
        current: Vec::new(),
        deadline,
        nodes: 0,
        timed_out: false,
    };
    search.expand(Bitset::full(len));
    let clique = search.best.iter().map(|&i| search.masks[i]).collect();
    (clique, !search.timed_out)
}
