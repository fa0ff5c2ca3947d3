mod common;

use common::*;
use cws_core::{Exact, Graph, PauliOperator, PhaseValue, VertexSet};
use num_complex::Complex;

fn dense_value(v: C, n: usize) -> PhaseValue {
    let dim = 1i64 << n;
    match (v.re, v.im) {
        (0, 0) => PhaseValue::Zero,
        (r, 0) if r == dim => PhaseValue::One,
        (r, 0) if r == -dim => PhaseValue::MinusOne,
        (0, i) if i == dim => PhaseValue::I,
        (0, i) if i == -dim => PhaseValue::MinusI,
        _ => panic!("not a unit value: {v}"),
    }
}

fn to_c(s: &cws_core::ExactState) -> Vec<C> {
    s.scaled_amplitudes()
        .iter()
        .map(|a| C::new(a.re.to_integer(), a.im.to_integer()))
        .collect()
}

#[test]
fn sign_formula_matches_controlled_phase_product() {
    for n in 1..=5 {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
        for bits in 0..1u32 << pairs.len() {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, e)| *e).collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            let s = g.state_vector::<Exact>().unwrap();
            assert_eq!(to_c(&s), graph_state_by_cz(&g));
            assert_eq!(s, g.state_vector_by_controlled_phase::<Exact>().unwrap());
            assert_eq!(s.norm_sqr(), Exact::from_integer(1));
        }
    }
    let l9 = Graph::loop_graph(9).unwrap();
    assert_eq!(to_c(&l9.state_vector::<Exact>().unwrap()), graph_state_by_cz(&l9));
    assert_eq!(l9.state_vector::<Exact>().unwrap(), l9.state_vector_by_controlled_phase::<Exact>().unwrap());
}

#[test]
fn graph_state_is_the_unique_joint_eigenvector() {
    let mut r = rng(7);
    let mut graphs: Vec<Graph> = (1..=5).map(|n| random_graph(&mut r, n)).collect();
    graphs.extend((3..=5).map(|n| Graph::loop_graph(n).unwrap()));
    graphs.push(Graph::edgeless(4).unwrap());
    for g in graphs {
        let n = g.n();
        let psi = graph_state_by_cz(&g);
        let mut rows = Vec::new();
        for a in 1..=n {
            let m = pauli_matrix(&g.vertex_stabilizer(a).unwrap());
            assert_eq!(matvec(&m, &psi), psi);
            for (k, mut row) in m.into_iter().enumerate() {
                row[k] -= C::new(1, 0);
                rows.push(row);
            }
        }
        // joint +1 eigenspace = kernel of the stacked (G_a - 1)
        assert_eq!((1 << n) - rank(&rows), 1, "{g:?}");
    }
    let l9 = Graph::loop_graph(9).unwrap();
    let psi = graph_state_by_cz(&l9);
    for a in 1..=9 {
        assert_eq!(matvec(&pauli_matrix(&l9.vertex_stabilizer(a).unwrap()), &psi), psi);
    }
}

#[test]
fn full_stabilizer_product_matches_dense() {
    let g = Graph::loop_graph(9).unwrap();
    let all = g.stabilizer_element(VertexSet::all(9)).unwrap();
    let mut folded = PauliOperator::identity(9).unwrap();
    let mut dense = pauli_matrix(&folded);
    for a in 1..=9 {
        let ga = g.vertex_stabilizer(a).unwrap();
        folded = folded.mul(&ga).unwrap();
        dense = matmul(&dense, &pauli_matrix(&ga));
    }
    assert_eq!(all, folded);
    assert_eq!(pauli_matrix(&all), dense);
}

#[test]
fn overlap_matches_dense_inner_products() {
    let mut r = rng(11);
    let g = Graph::loop_graph(9).unwrap();
    let psi = graph_state_by_cz(&g);
    for _ in 0..200 {
        let p = random_pauli(&mut r, 9);
        assert_eq!(g.overlap(&p).unwrap(), dense_value(sandwich(&psi, &pauli_matrix(&p), &psi), 9), "{p}");
    }
    for _ in 0..50 {
        let u = VertexSet::from_bits(r.gen_range(0..512));
        let s = g.stabilizer_element(u).unwrap();
        assert_eq!(g.overlap(&s).unwrap(), PhaseValue::One);
        assert_eq!(dense_value(sandwich(&psi, &pauli_matrix(&s), &psi), 9), PhaseValue::One);
    }
    // apply_pauli through the library state agrees too
    let state = g.state_vector::<Exact>().unwrap();
    for _ in 0..50 {
        let p = random_pauli(&mut r, 9);
        let e = state.expectation(&p).unwrap();
        assert_eq!(e, g.overlap(&p).unwrap().to_complex::<Exact>());
    }
}

#[test]
fn nonzero_overlap_is_a_stabilizer_element() {
    let mut r = rng(13);
    for n in 2..=9 {
        let g = random_graph(&mut r, n);
        let psi = graph_state_by_cz(&g);
        for _ in 0..40 {
            // half the samples are stabilizer elements with a random phase
            let p = if r.gen_bool(0.5) {
                let s = g.stabilizer_element(VertexSet::from_bits(r.gen_range(0..1u64 << n))).unwrap();
                s.with_phase_exp(s.phase_exp() + r.gen_range(0..4))
            } else {
                random_pauli(&mut r, n)
            };
            let v = g.overlap(&p).unwrap();
            assert_eq!(v, dense_value(sandwich(&psi, &pauli_matrix(&p), &psi), n));
            if !v.is_zero() {
                let s = g.stabilizer_element(p.x_mask()).unwrap();
                assert_eq!(s.unsigned(), p.unsigned());
            }
        }
    }
}

#[test]
fn reduce_error_is_sound_on_graph_basis_states() {
    let mut r = rng(17);
    let g = Graph::loop_graph(9).unwrap();
    let psi = graph_state_by_cz(&g);
    for _ in 0..30 {
        let e = random_pauli_of_weight_at_most(&mut r, 9, 3);
        let red = g.reduce_error(&e).unwrap();
        let me = pauli_matrix(&e);
        let mz = pauli_matrix(&PauliOperator::z_on(9, red.pattern).unwrap());
        for _ in 0..20 {
            let a = VertexSet::from_bits(r.gen_range(0..512));
            let b = VertexSet::from_bits(r.gen_range(0..512));
            let wa = z_flip(&psi, a);
            let wb = z_flip(&psi, b);
            let lhs = sandwich(&wa, &me, &wb);
            let f = red.factor_on(b).to_complex::<i64>();
            assert_eq!(lhs, f * sandwich(&wa, &mz, &wb), "{e} on {a} {b}");
        }
        // on |G> itself the stabilizer factor is trivial
        let lhs = matvec(&me, &psi);
        let rhs: Vec<C> = matvec(&mz, &psi).into_iter().map(|x| x * red.sign().to_complex::<i64>()).collect();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn apply_pauli_is_an_involution_for_hermitian_operators() {
    let mut r = rng(19);
    let s = Graph::loop_graph(6).unwrap().state_vector::<Exact>().unwrap();
    for _ in 0..30 {
        let p = random_pauli(&mut r, 6).unsigned();
        assert_eq!(s.apply_pauli(&p).unwrap().apply_pauli(&p).unwrap(), s);
    }
    let f = Graph::loop_graph(6).unwrap().state_vector::<f64>().unwrap();
    assert!((f.norm_sqr() - 1.0).abs() < 1e-12);
    let _: Complex<f64> = f.expectation(&PauliOperator::identity(6).unwrap()).unwrap();
}

use rand::Rng;
