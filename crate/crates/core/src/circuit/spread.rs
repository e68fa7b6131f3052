//! Heisenberg-picture propagation of a Pauli operator through a circuit.
//!
//! The main route keeps the operator as a sparse real Pauli sum and maps it
//! through each gate with that gate's Pauli transfer matrix. A dense route
//! that carries the operator as a matrix on its light cone is kept as an
//! independent cross-check. Both prune qubits on which the operator has
//! become the identity after every gate.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::{Circuit, CodeblockLayout, GateKind};
use crate::dense::{dim_to_qubits, CMatrix, DenseOperator};
use crate::error::{Error, Result};
use crate::pauli::{decompose, pauli_coefficients, Pauli, PauliString, PauliSum};

/// Largest light cone either route will track.
pub const MAX_LIGHT_CONE: usize = 12;

const LETTERS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

/// Image of a single-qubit Z (or any Pauli) after conjugation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpreadResult {
    /// Qubits on which the conjugated operator acts non-trivially, ascending.
    pub support: Vec<usize>,
    /// `support ∩ block_m` for every block.
    pub per_block: Vec<Vec<usize>>,
    /// `|δ_m|` for every block.
    pub sizes: Vec<usize>,
    /// Conjugated operator on `support`, in that order.
    pub operator: PauliSum,
}

impl SpreadResult {
    fn new(support: Vec<usize>, layout: &CodeblockLayout, operator: PauliSum) -> Self {
        let mut per_block = vec![Vec::new(); layout.num_blocks()];
        for &q in &support {
            if let Some(m) = layout.block_of(q) {
                per_block[m].push(q);
            }
        }
        let sizes = per_block.iter().map(Vec::len).collect();
        Self {
            support,
            per_block,
            sizes,
            operator,
        }
    }

    pub fn max_block_size(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    /// The conjugated operator on all `n` qubits.
    pub fn operator_global(&self, n: usize) -> Result<PauliSum> {
        self.operator.embedded(&self.support, n)
    }
}

/// Pauli transfer matrix stored by columns: `cols[a]` lists `(b, R_ba)`
/// with `G P_a G† = Σ_b R_ba P_b`.
struct Ptm {
    arity: usize,
    cols: Vec<Vec<(usize, f64)>>,
}

fn local_word(g: usize, a: usize) -> PauliString {
    let mut w = PauliString::identity(g);
    for j in 0..g {
        w.set(j, LETTERS[(a >> (2 * (g - 1 - j))) & 3]);
    }
    w
}

fn letter_code(p: Pauli) -> usize {
    match p {
        Pauli::I => 0,
        Pauli::X => 1,
        Pauli::Y => 2,
        Pauli::Z => 3,
    }
}

fn ptm(gate: &CMatrix) -> Result<Ptm> {
    let g = dim_to_qubits(gate.nrows())?;
    let mut cols = Vec::with_capacity(1 << (2 * g));
    for a in 0..1usize << (2 * g) {
        let pa = local_word(g, a).dense_matrix()?.into_matrix();
        let image = DenseOperator::from_matrix(gate * pa * gate.adjoint())?;
        let col = pauli_coefficients(&image)?
            .into_iter()
            .filter(|(_, c)| c.norm() > 1e-15)
            .map(|(w, c)| {
                let b = (0..g).fold(0, |acc, j| (acc << 2) | letter_code(w.get(j)));
                (b, c.re)
            })
            .collect();
        cols.push(col);
    }
    Ok(Ptm { arity: g, cols })
}

fn ptm_for(kind: &GateKind) -> Result<Arc<Ptm>> {
    static NAMED: OnceLock<Vec<Arc<Ptm>>> = OnceLock::new();
    if let Some(i) = GateKind::NAMED.iter().position(|k| k == kind) {
        let table = NAMED.get_or_init(|| {
            GateKind::NAMED
                .iter()
                .map(|k| Arc::new(ptm(&k.matrix()).expect("named gates are well formed")))
                .collect()
        });
        return Ok(table[i].clone());
    }
    Ok(Arc::new(ptm(&kind.matrix())?))
}

fn check_sizes(circ: &Circuit, layout: &CodeblockLayout, p: &PauliString) -> Result<()> {
    for found in [layout.n_total(), p.num_qubits()] {
        if found != circ.n_total() {
            return Err(Error::DimensionMismatch {
                expected: circ.n_total(),
                found,
            });
        }
    }
    Ok(())
}

fn light_cone(support: &BTreeSet<usize>, gate: &[usize]) -> Result<Option<BTreeSet<usize>>> {
    if !gate.iter().any(|q| support.contains(q)) {
        return Ok(None);
    }
    let union: BTreeSet<usize> = support.iter().chain(gate).copied().collect();
    if union.len() > MAX_LIGHT_CONE {
        return Err(Error::LightConeTooLarge {
            size: union.len(),
            limit: MAX_LIGHT_CONE,
        });
    }
    Ok(Some(union))
}

/// Computes `U p U†` for the circuit unitary `U` and reports its support per
/// codeblock. `p` must be Hermitian (phase ±1).
pub fn conjugate_through(
    circ: &Circuit,
    layout: &CodeblockLayout,
    p: &PauliString,
    tol: f64,
) -> Result<SpreadResult> {
    check_sizes(circ, layout, p)?;
    let floor = tol.min(1e-14);
    let mut terms: BTreeMap<PauliString, f64> = PauliSum::from_pauli(p)?
        .terms()
        .map(|(w, c)| (w.clone(), c))
        .collect();
    let mut support = p.support_set();
    for gate in circ.gates() {
        let Some(cone) = light_cone(&support, gate.support())? else {
            continue;
        };
        let table = ptm_for(gate.kind())?;
        debug_assert_eq!(table.arity, gate.support().len());
        let mut next: BTreeMap<PauliString, f64> = BTreeMap::new();
        for (word, coef) in &terms {
            let a = gate
                .support()
                .iter()
                .fold(0, |acc, &q| (acc << 2) | letter_code(word.get(q)));
            for &(b, r) in &table.cols[a] {
                let mut w = word.clone();
                for (j, &q) in gate.support().iter().enumerate() {
                    w.set(q, LETTERS[(b >> (2 * (table.arity - 1 - j))) & 3]);
                }
                *next.entry(w).or_insert(0.0) += coef * r;
            }
        }
        next.retain(|_, c| c.abs() > floor);
        terms = next;
        support = prune_identity_qubits(&mut terms, &cone, tol);
    }
    let support: Vec<usize> = support.into_iter().collect();
    let mut full = PauliSum::new(p.num_qubits());
    for (w, c) in terms {
        full.add_word(w, c);
    }
    let operator = full.restricted(&support).pruned(tol);
    Ok(SpreadResult::new(support, layout, operator))
}

/// Drops every qubit whose non-identity terms have total weight at most
/// `tol`, removing those terms, and returns the remaining support.
fn prune_identity_qubits(terms: &mut BTreeMap<PauliString, f64>, cone: &BTreeSet<usize>, tol: f64) -> BTreeSet<usize> {
    let idle: Vec<usize> = cone
        .iter()
        .copied()
        .filter(|&q| {
            let w: f64 = terms
                .iter()
                .filter(|(p, _)| p.get(q) != Pauli::I)
                .map(|(_, c)| c * c)
                .sum();
            w.sqrt() <= tol
        })
        .collect();
    if !idle.is_empty() {
        terms.retain(|p, _| idle.iter().all(|&q| p.get(q) == Pauli::I));
    }
    terms.keys().flat_map(|p| p.support().ones().collect::<Vec<_>>()).collect()
}

/// Dense light-cone route: the operator is a matrix on its current support,
/// extended by each touching gate, conjugated, then reduced by tracing out
/// identity qubits. The final operator is decomposed, so its support may
/// hold at most ten qubits.
pub fn conjugate_through_dense(
    circ: &Circuit,
    layout: &CodeblockLayout,
    p: &PauliString,
    tol: f64,
) -> Result<SpreadResult> {
    check_sizes(circ, layout, p)?;
    let support: Vec<usize> = p.support_set().into_iter().collect();
    let mut k = p.restricted(&support).dense_matrix()?;
    k = DenseOperator::new(support.clone(), k.into_matrix())?;
    let mut current: BTreeSet<usize> = support.into_iter().collect();
    for gate in circ.gates() {
        let Some(cone) = light_cone(&current, gate.support())? else {
            continue;
        };
        let order: Vec<usize> = cone.iter().copied().collect();
        k = k.extended_to(&order)?;
        k.conjugate_by(&gate.matrix(), gate.support())?;
        let idle: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&q| k.acts_as_identity_on(q, tol))
            .collect();
        if !idle.is_empty() {
            k = k.reduce_identity(&idle)?;
        }
        current = k.qubits().iter().copied().collect();
    }
    let support: Vec<usize> = current.into_iter().collect();
    let k = k.extended_to(&support)?;
    let operator = decompose(&k, tol)?;
    Ok(SpreadResult::new(support, layout, operator))
}
