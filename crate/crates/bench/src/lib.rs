//! Seeded fixtures shared by the benchmarks.

use std::sync::Arc;

use cgate_core::dense::CMatrix;
use cgate_core::f2linalg::rank;
use cgate_core::verifier::EnumerationSpec;
use cgate_core::{Circuit, CodeblockLayout, DenseOperator, F2Matrix, Gate, GateKind, StabilizerCode};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn repetition(n: usize) -> StabilizerCode {
    let stabs: Vec<String> = (0..n - 1)
        .map(|i| (0..n).map(|q| if q == i || q == i + 1 { 'Z' } else { 'I' }).collect())
        .collect();
    StabilizerCode::from_stabilizers(&stabs).expect("repetition code")
}

/// Random full-rank `s × n` parity-check matrix.
pub fn random_parity(n: usize, s: usize, seed: u64) -> F2Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows: Vec<Vec<u8>> = (0..s).map(|_| (0..n).map(|_| rng.random_range(0..2)).collect()).collect();
        let m = F2Matrix::from_bits(&rows);
        if rank(&m) == s {
            return m;
        }
    }
}

pub fn random_hermitian(m: usize, seed: u64) -> DenseOperator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = 1 << m;
    let a = CMatrix::from_fn(dim, dim, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    DenseOperator::from_matrix(&a + a.adjoint()).expect("square")
}

/// `c` repetition blocks of length `block`.
pub fn rep_layout(block: usize, c: usize) -> CodeblockLayout {
    CodeblockLayout::repeated(Arc::new(repetition(block)), c).expect("layout")
}

/// Random circuit of `len` gates drawn from the named set, packed into layers.
pub fn random_circuit(n: usize, len: usize, seed: u64) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gates = (0..len)
        .map(|_| {
            let mut kind = GateKind::NAMED[rng.random_range(0..GateKind::NAMED.len())].clone();
            if kind.arity() > n {
                kind = GateKind::T;
            }
            let mut qubits: Vec<usize> = (0..n).collect();
            for i in 0..kind.arity() {
                qubits.swap(i, rng.random_range(i..n));
            }
            qubits.truncate(kind.arity());
            Gate::new(kind, qubits).expect("gate")
        })
        .collect();
    Circuit::packed(n, gates).expect("circuit")
}

/// The exhaustive rep-3 search over `{X, Z, S, H, CNOT, CZ}`.
pub fn rep3_search(max_gates: usize) -> (EnumerationSpec, CodeblockLayout) {
    let gate_set = vec![GateKind::X, GateKind::Z, GateKind::S, GateKind::H, GateKind::Cnot, GateKind::Cz];
    (EnumerationSpec::new(gate_set, 3, max_gates), rep_layout(3, 1))
}
