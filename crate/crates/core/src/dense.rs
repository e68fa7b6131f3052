//! Dense complex operators on small ordered qubit sets.
//!
//! Basis ordering is big-endian: the first qubit of an operator's qubit list
//! is the most significant bit of the basis index.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Largest qubit count for which full dense matrices are built.
pub const MAX_DENSE_QUBITS: usize = 14;

/// A `2^m × 2^m` complex matrix acting on an ordered list of `m` qubit labels.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    qubits: Vec<usize>,
    matrix: CMatrix,
}

impl DenseOperator {
    pub fn new(qubits: Vec<usize>, matrix: CMatrix) -> Result<Self> {
        let dim = 1usize
            .checked_shl(qubits.len() as u32)
            .ok_or(Error::TooLarge {
                what: "operator qubits",
                value: qubits.len(),
                limit: MAX_DENSE_QUBITS,
            })?;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: matrix.nrows().max(matrix.ncols()),
            });
        }
        let mut seen = qubits.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("duplicate qubit in {qubits:?}")));
        }
        Ok(Self { qubits, matrix })
    }

    pub fn identity(qubits: Vec<usize>) -> Result<Self> {
        check_dense_size(qubits.len())?;
        let dim = 1 << qubits.len();
        Self::new(qubits, CMatrix::identity(dim, dim))
    }

    /// Wraps a matrix on qubits `0..m`.
    pub fn from_matrix(matrix: CMatrix) -> Result<Self> {
        let m = dim_to_qubits(matrix.nrows())?;
        Self::new((0..m).collect(), matrix)
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn num_qubits(&self) -> usize {
        self.qubits.len()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Tensors identity onto every qubit of `qubits` not already present and
    /// reorders to exactly that list. `qubits` must contain the current set.
    pub fn extended_to(&self, qubits: &[usize]) -> Result<DenseOperator> {
        if qubits == self.qubits.as_slice() {
            return Ok(self.clone());
        }
        check_dense_size(qubits.len())?;
        let m = qubits.len();
        // Bit offset in the new index of each current qubit.
        let mut old_bits = Vec::with_capacity(self.qubits.len());
        for q in &self.qubits {
            let pos = qubits
                .iter()
                .position(|x| x == q)
                .ok_or_else(|| Error::Invalid(format!("qubit {q} missing from target ordering")))?;
            old_bits.push(m - 1 - pos);
        }
        let fresh_mask: usize = qubits
            .iter()
            .enumerate()
            .filter(|(_, q)| !self.qubits.contains(q))
            .map(|(pos, _)| 1usize << (m - 1 - pos))
            .sum();
        let project = |idx: usize| -> usize {
            old_bits
                .iter()
                .fold(0usize, |acc, &bit| (acc << 1) | ((idx >> bit) & 1))
        };
        let dim = 1 << m;
        let local: Vec<usize> = (0..dim).map(project).collect();
        let out = CMatrix::from_fn(dim, dim, |r, c| {
            if (r & fresh_mask) != (c & fresh_mask) {
                ZERO
            } else {
                self.matrix[(local[r], local[c])]
            }
        });
        DenseOperator::new(qubits.to_vec(), out)
    }

    /// Left-multiplies by `gate` acting on the listed qubit labels.
    pub fn apply_left(&mut self, gate: &CMatrix, on: &[usize]) -> Result<()> {
        let offsets = self.offsets(on, gate)?;
        apply_rows(&mut self.matrix, gate, &offsets);
        Ok(())
    }

    /// Right-multiplies by the adjoint of `gate` acting on the listed labels.
    pub fn apply_right_adjoint(&mut self, gate: &CMatrix, on: &[usize]) -> Result<()> {
        let offsets = self.offsets(on, gate)?;
        apply_cols_adjoint(&mut self.matrix, gate, &offsets);
        Ok(())
    }

    /// `self ← G · self · G†`.
    pub fn conjugate_by(&mut self, gate: &CMatrix, on: &[usize]) -> Result<()> {
        let offsets = self.offsets(on, gate)?;
        apply_rows(&mut self.matrix, gate, &offsets);
        apply_cols_adjoint(&mut self.matrix, gate, &offsets);
        Ok(())
    }

    fn offsets(&self, on: &[usize], gate: &CMatrix) -> Result<Vec<usize>> {
        let g = on.len();
        if gate.nrows() != 1 << g || gate.ncols() != 1 << g {
            return Err(Error::DimensionMismatch {
                expected: 1 << g,
                found: gate.nrows(),
            });
        }
        let m = self.qubits.len();
        let mut bits = Vec::with_capacity(g);
        for q in on {
            let pos = self
                .qubits
                .iter()
                .position(|x| x == q)
                .ok_or_else(|| Error::Invalid(format!("qubit {q} is not in this operator")))?;
            bits.push(m - 1 - pos);
        }
        Ok(local_offsets(&bits))
    }

    /// True when the operator factors as `I ⊗ rest` on `qubit`: the normalized
    /// Frobenius norm of `K - I ⊗ Tr_q(K)/2` is at most `tol`. In the Pauli
    /// basis this is the root of the summed squared coefficients of terms
    /// acting non-trivially on `qubit`.
    pub fn acts_as_identity_on(&self, qubit: usize, tol: f64) -> bool {
        let Some(pos) = self.qubits.iter().position(|&q| q == qubit) else {
            return true;
        };
        let bit = 1usize << (self.qubits.len() - 1 - pos);
        let dim = self.dim();
        let mut acc = 0.0;
        for r in 0..dim {
            if r & bit != 0 {
                continue;
            }
            for c in 0..dim {
                if c & bit != 0 {
                    continue;
                }
                let a00 = self.matrix[(r, c)];
                let a01 = self.matrix[(r, c | bit)];
                let a10 = self.matrix[(r | bit, c)];
                let a11 = self.matrix[(r | bit, c | bit)];
                acc += a01.norm_sqr() + a10.norm_sqr() + 0.5 * (a00 - a11).norm_sqr();
            }
        }
        (acc / dim as f64).sqrt() <= tol
    }

    /// Traces out the listed qubits (normalized by their dimension), leaving
    /// the remaining qubits in their current order.
    pub fn reduce_identity(&self, drop: &[usize]) -> Result<DenseOperator> {
        let keep: Vec<usize> = self.qubits.iter().copied().filter(|q| !drop.contains(q)).collect();
        let m = self.qubits.len();
        let keep_bits: Vec<usize> = keep
            .iter()
            .map(|q| m - 1 - self.qubits.iter().position(|x| x == q).unwrap())
            .collect();
        let drop_bits: Vec<usize> = self
            .qubits
            .iter()
            .enumerate()
            .filter(|(_, q)| drop.contains(q))
            .map(|(pos, _)| m - 1 - pos)
            .collect();
        let keep_off = local_offsets(&keep_bits);
        let drop_off = local_offsets(&drop_bits);
        let norm = 1.0 / drop_off.len() as f64;
        let dim = keep_off.len();
        let out = CMatrix::from_fn(dim, dim, |r, c| {
            drop_off
                .iter()
                .map(|&d| self.matrix[(keep_off[r] | d, keep_off[c] | d)])
                .sum::<Complex64>()
                * norm
        });
        DenseOperator::new(keep, out)
    }

    pub fn adjoint(&self) -> DenseOperator {
        DenseOperator {
            qubits: self.qubits.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermitian_deviation(&self) -> f64 {
        max_abs_diff(&self.matrix, &self.matrix.adjoint())
    }

    /// Largest entrywise deviation of `A†A` from the identity.
    pub fn unitary_deviation(&self) -> f64 {
        unitary_deviation(&self.matrix)
    }
}

pub fn check_dense_size(qubits: usize) -> Result<()> {
    if qubits > MAX_DENSE_QUBITS {
        return Err(Error::TooLarge {
            what: "dense qubit count",
            value: qubits,
            limit: MAX_DENSE_QUBITS,
        });
    }
    Ok(())
}

/// Number of qubits of a `dim × dim` matrix; `dim` must be a power of two.
pub fn dim_to_qubits(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::Invalid(format!("dimension {dim} is not a power of two")));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Left-multiplies the `2^n`-row matrix `m` (columns are states on qubits
/// `0..n`) by `gate` acting on the qubit labels `on`.
pub fn apply_gate_to_rows(m: &mut CMatrix, n: usize, gate: &CMatrix, on: &[usize]) -> Result<()> {
    if m.nrows() != 1usize << n {
        return Err(Error::DimensionMismatch {
            expected: 1 << n,
            found: m.nrows(),
        });
    }
    if gate.nrows() != 1 << on.len() || gate.ncols() != gate.nrows() {
        return Err(Error::DimensionMismatch {
            expected: 1 << on.len(),
            found: gate.nrows(),
        });
    }
    if let Some(&q) = on.iter().find(|&&q| q >= n) {
        return Err(Error::IndexOutOfRange { index: q, bound: n });
    }
    let bits: Vec<usize> = on.iter().map(|&q| n - 1 - q).collect();
    apply_rows(m, gate, &local_offsets(&bits));
    Ok(())
}

/// Index offsets for each local basis state of a gate whose qubits sit at the
/// given bit positions (first gate qubit is the most significant local bit).
fn local_offsets(bits: &[usize]) -> Vec<usize> {
    let g = bits.len();
    (0..1usize << g)
        .map(|a| {
            bits.iter()
                .enumerate()
                .filter(|(j, _)| (a >> (g - 1 - j)) & 1 == 1)
                .map(|(_, &b)| 1usize << b)
                .sum()
        })
        .collect()
}

fn base_indices(dim: usize, offsets: &[usize]) -> impl Iterator<Item = usize> {
    let mask: usize = offsets.iter().fold(0, |acc, &o| acc | o);
    (0..dim).filter(move |i| i & mask == 0)
}

fn apply_rows(m: &mut CMatrix, gate: &CMatrix, offsets: &[usize]) {
    let dim = m.nrows();
    let g = offsets.len();
    let mut buf = vec![ZERO; g];
    let bases: Vec<usize> = base_indices(dim, offsets).collect();
    for col in 0..m.ncols() {
        let mut column = m.column_mut(col);
        for &b in &bases {
            for (a, slot) in buf.iter_mut().enumerate() {
                *slot = column[b | offsets[a]];
            }
            for (a, &off) in offsets.iter().enumerate() {
                let mut acc = ZERO;
                for (a2, v) in buf.iter().enumerate() {
                    acc += gate[(a, a2)] * v;
                }
                column[b | off] = acc;
            }
        }
    }
}

fn apply_cols_adjoint(m: &mut CMatrix, gate: &CMatrix, offsets: &[usize]) {
    // (M G†)[r, b+off(a)] = Σ_a' M[r, b+off(a')] conj(G[a, a'])
    let dim = m.ncols();
    let g = offsets.len();
    let bases: Vec<usize> = base_indices(dim, offsets).collect();
    let gate_conj: Vec<Complex64> = (0..g * g).map(|i| gate[(i / g, i % g)].conj()).collect();
    let mut buf = vec![ZERO; g * m.nrows()];
    for &b in &bases {
        for (a, &off) in offsets.iter().enumerate() {
            let src = m.column(b | off);
            buf[a * src.len()..(a + 1) * src.len()].copy_from_slice(src.as_slice());
        }
        let rows = m.nrows();
        for (a, &off) in offsets.iter().enumerate() {
            let mut dst = m.column_mut(b | off);
            for r in 0..rows {
                let mut acc = ZERO;
                for a2 in 0..g {
                    acc += buf[a2 * rows + r] * gate_conj[a * g + a2];
                }
                dst[r] = acc;
            }
        }
    }
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn unitary_deviation(m: &CMatrix) -> f64 {
    let prod = m.adjoint() * m;
    max_abs_diff(&prod, &CMatrix::identity(m.nrows(), m.ncols()))
}

/// Kronecker product `a ⊗ b` (first factor most significant).
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Largest singular value. Uses the eigenvalues of the smaller Gram matrix.
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    let gram = if m.nrows() >= m.ncols() {
        m.adjoint() * m
    } else {
        m * m.adjoint()
    };
    let eig = gram.symmetric_eigenvalues();
    eig.iter().fold(0.0f64, |acc, &v| acc.max(v)).max(0.0).sqrt()
}

/// Multiplies by a unit-modulus scalar so the first entry (column-major scan
/// by rows first) whose modulus exceeds `tol` is real and positive.
pub fn canonical_phase(m: &CMatrix, tol: f64) -> CMatrix {
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let v = m[(r, c)];
            if v.norm() > tol {
                let phase = v.conj() / v.norm();
                return m * phase;
            }
        }
    }
    m.clone()
}

/// Serde adapter writing a complex matrix as rows of `[re, im]` pairs.
pub mod serde_cmatrix {
    use num_complex::Complex64;
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    use super::CMatrix;

    pub fn to_rows(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
        (0..m.nrows())
            .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
            .collect()
    }

    pub fn from_rows(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix, String> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err("matrix rows have different lengths".into());
        }
        Ok(CMatrix::from_fn(nrows, ncols, |r, c| Complex64::new(rows[r][c][0], rows[r][c][1])))
    }

    pub fn serialize<S: Serializer>(m: &CMatrix, s: S) -> Result<S::Ok, S::Error> {
        to_rows(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<CMatrix, D::Error> {
        let rows = Vec::<Vec<[f64; 2]>>::deserialize(d)?;
        from_rows(&rows).map_err(D::Error::custom)
    }
}
