//! Dense-matrix oracles shared by the integration tests. Nothing here goes
//! through the mask arithmetic of `PauliOperator::mul` or `Graph::overlap`.

#![allow(dead_code)]

use cws_core::{Exact, Graph, PauliOperator, VertexSet};
use num_complex::Complex;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C = Complex<i64>;
pub type Matrix = Vec<Vec<C>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn single(letter: char) -> [[C; 2]; 2] {
    let o = C::new(0, 0);
    let one = C::new(1, 0);
    let i = C::new(0, 1);
    match letter {
        'I' => [[one, o], [o, one]],
        'X' => [[o, one], [one, o]],
        'Y' => [[o, -i], [i, o]],
        'Z' => [[one, o], [o, -one]],
        _ => unreachable!(),
    }
}

/// Dense matrix of a Pauli built from its rendered label, qubit `a` on bit `a - 1`.
pub fn pauli_matrix(p: &PauliOperator) -> Matrix {
    let n = p.n();
    let label = p.label();
    let mut tokens: Vec<&str> = label.split_whitespace().collect();
    let phase = match tokens[0] {
        "i" => C::new(0, 1),
        "-" => C::new(-1, 0),
        "-i" => C::new(0, -1),
        _ => C::new(1, 0),
    };
    if matches!(tokens[0], "i" | "-" | "-i") {
        tokens.remove(0);
    }
    let mut letters = vec!['I'; n];
    for t in tokens {
        if t == "I" {
            continue;
        }
        let a: usize = t[1..].parse().unwrap();
        letters[a - 1] = t.chars().next().unwrap();
    }
    let dim = 1usize << n;
    let mut m = vec![vec![C::new(0, 0); dim]; dim];
    for (row, line) in m.iter_mut().enumerate() {
        for (col, entry) in line.iter_mut().enumerate() {
            let mut v = phase;
            for (q, &l) in letters.iter().enumerate() {
                v *= single(l)[(row >> q) & 1][(col >> q) & 1];
            }
            *entry = v;
        }
    }
    m
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let dim = a.len();
    let mut c = vec![vec![C::new(0, 0); dim]; dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i][k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..dim {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

pub fn matvec(a: &Matrix, v: &[C]) -> Vec<C> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// `√2^n ⟨μ|G⟩` built by applying each controlled phase as a diagonal matrix to `|+⟩^n`.
pub fn graph_state_by_cz(g: &Graph) -> Vec<C> {
    let dim = 1usize << g.n();
    let mut v = vec![C::new(1, 0); dim];
    for (a, b) in g.edges() {
        for (mu, amp) in v.iter_mut().enumerate() {
            if (mu >> (a - 1)) & 1 == 1 && (mu >> (b - 1)) & 1 == 1 {
                *amp = -*amp;
            }
        }
    }
    v
}

/// `Z_u |v⟩` by flipping signs on basis states with odd overlap.
pub fn z_flip(v: &[C], u: VertexSet) -> Vec<C> {
    v.iter()
        .enumerate()
        .map(|(mu, &a)| if (mu as u64 & u.bits()).count_ones() % 2 == 1 { -a } else { a })
        .collect()
}

/// `2^n ⟨u|M|v⟩` for scaled vectors.
pub fn sandwich(u: &[C], m: &Matrix, v: &[C]) -> C {
    let mv = matvec(m, v);
    u.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum()
}

pub fn random_pauli(r: &mut impl Rng, n: usize) -> PauliOperator {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let x = VertexSet::from_bits(r.gen::<u64>() & mask);
    let z = VertexSet::from_bits(r.gen::<u64>() & mask);
    PauliOperator::from_masks(n, x, z, r.gen_range(0..4)).unwrap()
}

pub fn random_pauli_of_weight_at_most(r: &mut impl Rng, n: usize, w: usize) -> PauliOperator {
    let mut x = 0u64;
    let mut z = 0u64;
    let weight = r.gen_range(1..=w);
    let mut chosen = Vec::new();
    while chosen.len() < weight {
        let q = r.gen_range(0..n);
        if !chosen.contains(&q) {
            chosen.push(q);
        }
    }
    for q in chosen {
        match r.gen_range(0..3) {
            0 => x |= 1 << q,
            1 => {
                x |= 1 << q;
                z |= 1 << q
            }
            _ => z |= 1 << q,
        }
    }
    PauliOperator::from_masks(n, VertexSet::from_bits(x), VertexSet::from_bits(z), 0).unwrap()
}

pub fn random_graph(r: &mut impl Rng, n: usize) -> Graph {
    let mut g = Graph::edgeless(n).unwrap();
    for a in 1..=n {
        for b in a + 1..=n {
            if r.gen_bool(0.5) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// Distinct random subsets of `1..=n`, `k` of them.
pub fn random_codewords(r: &mut impl Rng, n: usize, k: usize) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = Vec::new();
    while out.len() < k {
        let c = VertexSet::from_bits(r.gen_range(0..1u64 << n));
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// Rank over Q(i) by Gaussian elimination.
pub fn rank(rows: &[Vec<C>]) -> usize {
    let mut m: Vec<Vec<Complex<Exact>>> = rows
        .iter()
        .map(|r| r.iter().map(|c| Complex::new(Exact::from_integer(c.re), Exact::from_integer(c.im))).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = Complex::<Exact>::one() / m[rank][col];
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col] * inv;
                #[allow(clippy::needless_range_loop)] // rows r and rank are both indexed
                for c in col..cols {
                    let sub = f * m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}
