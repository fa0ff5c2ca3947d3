mod common;

use common::*;
use cws_core::{enumerate_errors, Graph, PauliOperator, VertexSet};
use proptest::prelude::*;

fn arb_pauli(n: usize) -> impl Strategy<Value = PauliOperator> {
    let mask = (1u64 << n) - 1;
    (any::<u64>(), any::<u64>(), 0u8..4).prop_map(move |(x, z, k)| {
        PauliOperator::from_masks(n, VertexSet::from_bits(x & mask), VertexSet::from_bits(z & mask), k).unwrap()
    })
}

proptest! {
    #[test]
    fn associativity(p in arb_pauli(9), q in arb_pauli(9), r in arb_pauli(9)) {
        prop_assert_eq!(p.mul(&q)?.mul(&r)?, p.mul(&q.mul(&r)?)?);
    }

    #[test]
    fn identity_and_inverse(p in arb_pauli(9)) {
        let id = PauliOperator::identity(9)?;
        prop_assert_eq!(p.mul(&id)?, p);
        prop_assert_eq!(id.mul(&p)?, p);
        prop_assert_eq!(p.mul(&p.inverse())?, id);
        if p.is_hermitian() {
            prop_assert_eq!(p.mul(&p)?, id);
        }
    }

    #[test]
    fn commutes_matches_product_order(p in arb_pauli(9), q in arb_pauli(9)) {
        prop_assert_eq!(p.commutes(&q)?, p.mul(&q)? == q.mul(&p)?);
    }

    #[test]
    fn label_round_trip(p in arb_pauli(9)) {
        prop_assert_eq!(PauliOperator::parse(&p.label(), 9)?, p);
    }
}

#[test]
fn products_match_dense_matrices_on_three_qubits() {
    let all: Vec<PauliOperator> = (0..4).flat_map(|d| enumerate_errors(3, d).unwrap()).collect();
    assert_eq!(all.len(), 64);
    let mats: Vec<Matrix> = all.iter().map(pauli_matrix).collect();
    for (p, mp) in all.iter().zip(&mats) {
        for (q, mq) in all.iter().zip(&mats) {
            let prod = p.mul(q).unwrap();
            assert_eq!(pauli_matrix(&prod), matmul(mp, mq), "{p} * {q}");
        }
    }
}

#[test]
fn vertex_stabilizer_product_matches_dense() {
    let g = Graph::loop_graph(9).unwrap();
    let g1 = g.vertex_stabilizer(1).unwrap();
    let g2 = g.vertex_stabilizer(2).unwrap();
    let prod = g1.mul(&g2).unwrap();
    assert_eq!(prod, g.stabilizer_element(VertexSet::from_vertices([1, 2]).unwrap()).unwrap());
    assert_eq!(pauli_matrix(&prod), matmul(&pauli_matrix(&g1), &pauli_matrix(&g2)));
}

#[test]
fn vertex_stabilizers_commute() {
    let g = Graph::loop_graph(9).unwrap();
    for a in 1..=9 {
        for b in 1..=9 {
            assert!(g.vertex_stabilizer(a).unwrap().commutes(&g.vertex_stabilizer(b).unwrap()).unwrap());
        }
    }
}
