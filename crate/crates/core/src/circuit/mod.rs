//! Layered circuits over physical qubits, codeblock layouts, light-cone
//! tracking of conjugated Pauli operators and the support-spread bounds.

mod bounds;
mod gate;
mod layout;
mod spread;

pub use bounds::{
    biased_bound_ok, consecutive_bound, is_r_transversal_layer, layered_bound, minimal_r, per_block_support,
    Bound, BoundMode,
};
pub use gate::{Gate, GateKind, UNITARY_TOL};
pub use layout::{Block, CodeblockLayout};
pub use spread::{conjugate_through, conjugate_through_dense, SpreadResult, MAX_LIGHT_CONE};

use std::fmt;

use crate::dense::{apply_gate_to_rows, check_dense_size, CMatrix};
use crate::error::{Error, Result};

/// Largest circuit for which the full `2^n × 2^n` unitary is built.
pub const MAX_UNITARY_QUBITS: usize = 12;

/// Ordered gates grouped into layers of pairwise-disjoint gates.
///
/// Layers apply left to right; `layer_ends[l]` is one past the index of the
/// last gate in layer `l`.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_total: usize,
    gates: Vec<Gate>,
    layer_ends: Vec<usize>,
}

impl Circuit {
    pub fn empty(n_total: usize) -> Self {
        Self {
            n_total,
            gates: Vec::new(),
            layer_ends: Vec::new(),
        }
    }

    /// Explicit layers. Empty layers are dropped.
    pub fn from_layers(n_total: usize, layers: Vec<Vec<Gate>>) -> Result<Self> {
        let mut gates = Vec::new();
        let mut layer_ends = Vec::new();
        for layer in layers {
            if layer.is_empty() {
                continue;
            }
            check_layer(&layer, n_total)?;
            gates.extend(layer);
            layer_ends.push(gates.len());
        }
        Ok(Self {
            n_total,
            gates,
            layer_ends,
        })
    }

    /// One gate per layer.
    pub fn sequential(n_total: usize, gates: Vec<Gate>) -> Result<Self> {
        Self::from_layers(n_total, gates.into_iter().map(|g| vec![g]).collect())
    }

    /// Packs gates into as few layers as possible: each gate lands one layer
    /// after the latest gate sharing a qubit with it.
    pub fn packed(n_total: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut depth = vec![0usize; n_total];
        let mut layers: Vec<Vec<Gate>> = Vec::new();
        for g in gates {
            check_range(&g, n_total)?;
            let l = g.support().iter().map(|&q| depth[q]).max().unwrap_or(0);
            for &q in g.support() {
                depth[q] = l + 1;
            }
            if layers.len() <= l {
                layers.resize_with(l + 1, Vec::new);
            }
            layers[l].push(g);
        }
        Self::from_layers(n_total, layers)
    }

    /// Gates with optional layer tags. Either every gate carries a tag, in
    /// which case tags must be non-decreasing, or none does and the gates are
    /// packed.
    pub fn from_tagged(n_total: usize, gates: Vec<(Gate, Option<usize>)>) -> Result<Self> {
        let tagged = gates.iter().filter(|(_, t)| t.is_some()).count();
        if tagged == 0 {
            return Self::packed(n_total, gates.into_iter().map(|(g, _)| g).collect());
        }
        if tagged != gates.len() {
            return Err(Error::Invalid("either all gates or none must carry a layer tag".into()));
        }
        let mut layers: Vec<Vec<Gate>> = Vec::new();
        let mut last: Option<usize> = None;
        for (g, tag) in gates {
            let tag = tag.expect("all tagged");
            match last {
                Some(t) if tag < t => {
                    return Err(Error::Invalid(format!("layer tag {tag} follows tag {t}")));
                }
                Some(t) if tag == t => layers.last_mut().expect("layer exists").push(g),
                _ => layers.push(vec![g]),
            }
            last = Some(tag);
        }
        Self::from_layers(n_total, layers)
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn num_gates(&self) -> usize {
        self.gates.len()
    }

    pub fn num_layers(&self) -> usize {
        self.layer_ends.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn layers(&self) -> impl Iterator<Item = &[Gate]> + '_ {
        let starts = std::iter::once(0).chain(self.layer_ends.iter().copied());
        starts
            .zip(self.layer_ends.iter().copied())
            .map(move |(a, b)| &self.gates[a..b])
    }

    /// `U†`: layers reversed, each gate inverted.
    pub fn inverse(&self) -> Circuit {
        let layers: Vec<Vec<Gate>> = self
            .layers()
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .map(|layer| layer.iter().map(Gate::inverse).collect())
            .collect();
        Circuit::from_layers(self.n_total, layers).expect("inverse keeps layer structure")
    }

    /// Applies the circuit to each column of `states` (`2^n` rows).
    pub fn apply_to(&self, states: &mut CMatrix) -> Result<()> {
        for g in &self.gates {
            apply_gate_to_rows(states, self.n_total, &g.matrix(), g.support())?;
        }
        Ok(())
    }

    /// Full unitary on `n_total ≤ 12` qubits.
    pub fn unitary(&self) -> Result<CMatrix> {
        if self.n_total > MAX_UNITARY_QUBITS {
            return Err(Error::TooLarge {
                what: "circuit qubits for a full unitary",
                value: self.n_total,
                limit: MAX_UNITARY_QUBITS,
            });
        }
        check_dense_size(self.n_total)?;
        let dim = 1usize << self.n_total;
        let mut u = CMatrix::identity(dim, dim);
        self.apply_to(&mut u)?;
        Ok(u)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gates.is_empty() {
            return f.write_str("(empty)");
        }
        for (l, layer) in self.layers().enumerate() {
            if l > 0 {
                f.write_str(" | ")?;
            }
            for (i, g) in layer.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{g}")?;
            }
        }
        Ok(())
    }
}

fn check_range(g: &Gate, n_total: usize) -> Result<()> {
    match g.support().iter().find(|&&q| q >= n_total) {
        Some(&q) => Err(Error::IndexOutOfRange {
            index: q,
            bound: n_total,
        }),
        None => Ok(()),
    }
}

pub(crate) fn check_layer(layer: &[Gate], n_total: usize) -> Result<()> {
    let mut used = vec![false; n_total];
    for g in layer {
        check_range(g, n_total)?;
        for &q in g.support() {
            if std::mem::replace(&mut used[q], true) {
                return Err(Error::OverlappingSupports { qubit: q });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::max_abs_diff;

    fn gate(kind: GateKind, q: &[usize]) -> Gate {
        Gate::new(kind, q.to_vec()).unwrap()
    }

    #[test]
    fn packing_groups_disjoint_gates() {
        let c = Circuit::packed(
            4,
            vec![
                gate(GateKind::H, &[0]),
                gate(GateKind::X, &[1]),
                gate(GateKind::Cnot, &[0, 2]),
                gate(GateKind::Z, &[3]),
            ],
        )
        .unwrap();
        assert_eq!(c.num_layers(), 2);
        let sizes: Vec<usize> = c.layers().map(<[Gate]>::len).collect();
        assert_eq!(sizes, vec![3, 1]);
    }

    #[test]
    fn overlapping_layer_rejected() {
        let err = Circuit::from_layers(3, vec![vec![gate(GateKind::X, &[1]), gate(GateKind::Cz, &[0, 1])]]);
        assert!(matches!(err, Err(Error::OverlappingSupports { qubit: 1 })));
        assert!(matches!(
            Circuit::sequential(2, vec![gate(GateKind::X, &[2])]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn tagged_layers() {
        let c = Circuit::from_tagged(
            3,
            vec![
                (gate(GateKind::X, &[0]), Some(0)),
                (gate(GateKind::X, &[1]), Some(0)),
                (gate(GateKind::H, &[2]), Some(4)),
            ],
        )
        .unwrap();
        assert_eq!(c.num_layers(), 2);
        assert!(Circuit::from_tagged(2, vec![(gate(GateKind::X, &[0]), Some(1)), (gate(GateKind::X, &[1]), Some(0))]).is_err());
        assert!(Circuit::from_tagged(2, vec![(gate(GateKind::X, &[0]), Some(1)), (gate(GateKind::X, &[1]), None)]).is_err());
    }

    #[test]
    fn unitary_matches_kron_and_inverse() {
        let c = Circuit::sequential(2, vec![gate(GateKind::H, &[0]), gate(GateKind::Cnot, &[0, 1]), gate(GateKind::T, &[1])])
            .unwrap();
        let u = c.unitary().unwrap();
        let inv = c.inverse().unitary().unwrap();
        assert!(max_abs_diff(&(&inv * &u), &CMatrix::identity(4, 4)) < 1e-12);
        // CNOT with control on qubit 0 (most significant) maps |10⟩ to |11⟩.
        let cnot = Circuit::sequential(2, vec![gate(GateKind::Cnot, &[0, 1])]).unwrap().unitary().unwrap();
        assert_eq!(cnot[(3, 2)].re, 1.0);
        let flipped = Circuit::sequential(2, vec![gate(GateKind::Cnot, &[1, 0])]).unwrap().unitary().unwrap();
        assert_eq!(flipped[(3, 1)].re, 1.0);
    }

    #[test]
    fn display() {
        let c = Circuit::from_layers(2, vec![vec![gate(GateKind::X, &[0]), gate(GateKind::Z, &[1])], vec![gate(GateKind::Cz, &[0, 1])]])
            .unwrap();
        assert_eq!(c.to_string(), "X[0] Z[1] | CZ[0, 1]");
        assert_eq!(Circuit::empty(1).to_string(), "(empty)");
    }
}
