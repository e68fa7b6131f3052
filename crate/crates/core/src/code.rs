//! Classical stabilizer codes built from Z-type stabilizers.
//!
//! The parity-check matrix is read off the stabilizer exponent vectors,
//! reduced to standard form, and the generator `[I_k | P]` fixes the
//! canonical isometry `|ε⟩ ↦ |G_ε⟩`. Qubits keep the caller's labels; the
//! standard-form column permutation is stored so that logical qubit `j` is
//! read from physical qubit `perm[j]`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dense::{check_dense_size, max_abs_diff, CMatrix, ONE};
use crate::error::{Error, Result};
use crate::f2linalg::{self, BitVector, F2Matrix, StandardForm};
use crate::pauli::PauliString;

/// Largest `n` for which codeword indices fit in a `u64`.
pub const MAX_INDEX_QUBITS: usize = 63;

pub struct StabilizerCode {
    n: usize,
    k: usize,
    d: usize,
    stabilizers: Vec<PauliString>,
    h: F2Matrix,
    g: F2Matrix,
    standard: StandardForm,
    isometry: OnceLock<CMatrix>,
}

impl StabilizerCode {
    /// Builds a code from Pauli literals such as `["ZZI", "IZZ"]`.
    pub fn from_stabilizers<S: AsRef<str>>(strings: &[S]) -> Result<Self> {
        let paulis = strings
            .iter()
            .map(|s| s.as_ref().parse::<PauliString>())
            .collect::<Result<Vec<_>>>()?;
        let n = paulis
            .first()
            .map(PauliString::num_qubits)
            .ok_or_else(|| Error::Invalid("no stabilizers given; use StabilizerCode::trivial".into()))?;
        Self::from_paulis(n, paulis)
    }

    /// Code on `n` qubits with no stabilizers: every qubit is logical.
    pub fn trivial(n: usize) -> Result<Self> {
        Self::from_paulis(n, Vec::new())
    }

    pub fn from_paulis(n: usize, stabilizers: Vec<PauliString>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("code needs at least one qubit".into()));
        }
        for (index, s) in stabilizers.iter().enumerate() {
            if s.num_qubits() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.num_qubits(),
                });
            }
            if !s.is_z_type() || s.phase_exp() != 0 {
                return Err(Error::NotZType {
                    index,
                    literal: s.to_string(),
                });
            }
        }
        let h = F2Matrix::from_rows(n, stabilizers.iter().map(|s| s.z_bits().clone()).collect())?;
        let standard = f2linalg::standard_form(&h)?;
        let (g, perm) = f2linalg::generator_from_parity(&h)?;
        debug_assert_eq!(perm, standard.perm);
        let k = n - stabilizers.len();
        let d = f2linalg::min_distance(&g)?;
        Ok(Self {
            n,
            k,
            d,
            stabilizers,
            h,
            g,
            standard,
            isometry: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn stabilizers(&self) -> &[PauliString] {
        &self.stabilizers
    }

    /// Parity-check matrix, one row per stabilizer, in user labels.
    pub fn h(&self) -> &F2Matrix {
        &self.h
    }

    /// Generator matrix in user labels.
    pub fn g(&self) -> &F2Matrix {
        &self.g
    }

    pub fn standard_form(&self) -> &StandardForm {
        &self.standard
    }

    /// Physical qubit carrying logical qubit `j` is `perm()[j]` for `j < k`.
    pub fn perm(&self) -> &[usize] {
        &self.standard.perm
    }

    /// Physical bit string `ε·G` for the logical word `eps`.
    pub fn codeword(&self, eps: &BitVector) -> Result<BitVector> {
        f2linalg::encode_word(&self.g, eps)
    }

    /// Computational-basis index of `|G_ε⟩` (qubit 0 most significant).
    pub fn codeword_index(&self, eps: &BitVector) -> Result<u64> {
        if self.n > MAX_INDEX_QUBITS {
            return Err(Error::TooLarge {
                what: "physical qubits for codeword indexing",
                value: self.n,
                limit: MAX_INDEX_QUBITS,
            });
        }
        Ok(self.codeword(eps)?.to_index())
    }

    /// Codeword indices for every logical basis state, in logical index order
    /// (logical qubit 0 most significant).
    pub fn codeword_indices(&self) -> Result<Vec<u64>> {
        if self.k > f2linalg::MAX_DISTANCE_ROWS {
            return Err(Error::TooLarge {
                what: "logical qubits",
                value: self.k,
                limit: f2linalg::MAX_DISTANCE_ROWS,
            });
        }
        (0..1u64 << self.k)
            .map(|e| self.codeword_index(&BitVector::from_index(self.k, e)))
            .collect()
    }

    /// Dense `2^n × 2^k` canonical isometry, built on first use.
    pub fn isometry_matrix(&self) -> Result<&CMatrix> {
        check_dense_size(self.n)?;
        if let Some(s) = self.isometry.get() {
            return Ok(s);
        }
        let cws = self.codeword_indices()?;
        let mut s = CMatrix::zeros(1 << self.n, 1 << self.k);
        for (eps, &row) in cws.iter().enumerate() {
            s[(row as usize, eps)] = ONE;
        }
        Ok(self.isometry.get_or_init(|| s))
    }

    /// Projector `S S†` onto the codespace.
    pub fn codespace_projector(&self) -> Result<CMatrix> {
        let s = self.isometry_matrix()?;
        Ok(s * s.adjoint())
    }

    fn check_logical(&self, j: usize) -> Result<()> {
        if j >= self.k {
            return Err(Error::IndexOutOfRange { index: j, bound: self.k });
        }
        Ok(())
    }

    /// Weight-one Z implementing logical Z on logical qubit `j`.
    pub fn logical_z_physical(&self, j: usize) -> Result<PauliString> {
        self.check_logical(j)?;
        Ok(PauliString::z_on(&BitVector::unit(self.n, self.standard.perm[j])))
    }

    /// X string on the support of generator row `j`, implementing logical X.
    pub fn logical_x_physical(&self, j: usize) -> Result<PauliString> {
        self.check_logical(j)?;
        Ok(PauliString::x_on(self.g.row(j)))
    }

    /// Logical qubits on which a physical Z on qubit `i` acts as Z.
    pub fn physical_z_logical(&self, i: usize) -> Result<BTreeSet<usize>> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, bound: self.n });
        }
        Ok((0..self.k).filter(|&j| self.g.get(j, i)).collect())
    }

    /// Checks the canonical isometry against the stabilizers and the stored
    /// distance against an independent enumeration.
    pub fn verify(&self) -> Result<CodeDiagnostics> {
        let s = self.isometry_matrix()?;
        let mut diag = verify_isometry(self, s, crate::DEFAULT_TOL)?;
        let brute = brute_force_distance(&self.g);
        if brute != Some(self.d) {
            diag.distance_ok = false;
            diag.violations
                .push(format!("stored distance {} but enumeration gives {:?}", self.d, brute));
        }
        Ok(diag)
    }
}

impl fmt::Debug for StabilizerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StabilizerCode")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("d", &self.d)
            .field("stabilizers", &self.stabilizers)
            .finish()
    }
}

impl Clone for StabilizerCode {
    fn clone(&self) -> Self {
        Self {
            n: self.n,
            k: self.k,
            d: self.d,
            stabilizers: self.stabilizers.clone(),
            h: self.h.clone(),
            g: self.g.clone(),
            standard: self.standard.clone(),
            isometry: OnceLock::new(),
        }
    }
}

impl PartialEq for StabilizerCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.stabilizers == other.stabilizers
    }
}

/// Free-function form of [`StabilizerCode::from_stabilizers`].
pub fn from_stabilizers<S: AsRef<str>>(strings: &[S]) -> Result<StabilizerCode> {
    StabilizerCode::from_stabilizers(strings)
}

pub fn codeword_index(c: &StabilizerCode, eps: &BitVector) -> Result<u64> {
    c.codeword_index(eps)
}

pub fn isometry_matrix(c: &StabilizerCode) -> Result<&CMatrix> {
    c.isometry_matrix()
}

pub fn logical_z_physical(c: &StabilizerCode, j: usize) -> Result<PauliString> {
    c.logical_z_physical(j)
}

pub fn logical_x_physical(c: &StabilizerCode, j: usize) -> Result<PauliString> {
    c.logical_x_physical(j)
}

pub fn physical_z_logical(c: &StabilizerCode, i: usize) -> Result<BTreeSet<usize>> {
    c.physical_z_logical(i)
}

pub fn verify_code(c: &StabilizerCode) -> Result<CodeDiagnostics> {
    c.verify()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeDiagnostics {
    /// Every column is a +1 eigenvector of every stabilizer.
    pub eigenvectors_ok: bool,
    /// `S†S` is the identity.
    pub orthonormal_ok: bool,
    /// Logical qubit `j` reads physical qubit `perm[j]`.
    pub systematic_ok: bool,
    pub distance_ok: bool,
    pub max_deviation: f64,
    pub violations: Vec<String>,
}

impl CodeDiagnostics {
    pub fn passed(&self) -> bool {
        self.eigenvectors_ok && self.orthonormal_ok && self.systematic_ok && self.distance_ok
    }
}

/// Checks an arbitrary `2^n × 2^k` matrix against the code's stabilizers and
/// isometry identities. Used on the canonical isometry and on hand-built
/// negative controls.
pub fn verify_isometry(code: &StabilizerCode, s: &CMatrix, tol: f64) -> Result<CodeDiagnostics> {
    check_dense_size(code.n)?;
    let (rows, cols) = (1usize << code.n, 1usize << code.k);
    if s.nrows() != rows || s.ncols() != cols {
        return Err(Error::DimensionMismatch {
            expected: rows,
            found: s.nrows(),
        });
    }
    let mut violations = Vec::new();
    let mut max_dev = 0.0f64;

    let mut eigen_ok = true;
    for (t, stab) in code.stabilizers.iter().enumerate() {
        let sigma = stab.dense_matrix()?.into_matrix();
        let dev = max_abs_diff(&(sigma * s), s);
        max_dev = max_dev.max(dev);
        if dev > tol {
            eigen_ok = false;
            violations.push(format!("stabilizer {t} ({stab}) moves the codewords by {dev:e}"));
        }
    }

    let gram = s.adjoint() * s;
    let dev = max_abs_diff(&gram, &CMatrix::identity(cols, cols));
    max_dev = max_dev.max(dev);
    let orthonormal_ok = dev <= tol;
    if !orthonormal_ok {
        violations.push(format!("S†S deviates from identity by {dev:e}"));
    }

    // Column ε must be supported on basis states whose perm[0..k] bits read ε.
    let mut systematic_ok = true;
    for eps in 0..cols {
        for r in 0..rows {
            if s[(r, eps)].norm() <= tol {
                continue;
            }
            let phys = BitVector::from_index(code.n, r as u64);
            let logical: Vec<bool> = (0..code.k).map(|j| phys.get(code.standard.perm[j])).collect();
            if BitVector::from_bools(&logical).to_index() != eps as u64 {
                systematic_ok = false;
                violations.push(format!("column {eps} has weight on basis state {phys}"));
            }
        }
    }

    Ok(CodeDiagnostics {
        eigenvectors_ok: eigen_ok,
        orthonormal_ok,
        systematic_ok,
        distance_ok: true,
        max_deviation: max_dev,
        violations,
    })
}

/// Naive minimum weight: encodes every nonzero message separately.
fn brute_force_distance(g: &F2Matrix) -> Option<usize> {
    let k = g.row_count();
    if k == 0 || k > f2linalg::MAX_DISTANCE_ROWS {
        return None;
    }
    (1u64..1 << k)
        .map(|e| {
            let eps = BitVector::from_index(k, e);
            f2linalg::encode_word(g, &eps).map(|w| w.weight()).unwrap_or(usize::MAX)
        })
        .min()
}

/// Amplitude helper for tests and callers building isometries by hand.
pub fn basis_column(dim: usize, index: usize) -> CMatrix {
    let mut v = CMatrix::zeros(dim, 1);
    v[(index, 0)] = Complex64::new(1.0, 0.0);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliSum;

    fn rep3() -> StabilizerCode {
        StabilizerCode::from_stabilizers(&["ZZI", "IZZ"]).unwrap()
    }

    fn code42() -> StabilizerCode {
        StabilizerCode::from_stabilizers(&["ZZZI", "ZIIZ"]).unwrap()
    }

    fn bits(b: &[u8]) -> BitVector {
        BitVector::from_bits(b)
    }

    #[test]
    fn construction_examples() {
        let c = rep3();
        assert_eq!((c.n(), c.k(), c.d()), (3, 1, 3));
        assert_eq!(c.g(), &F2Matrix::from_bits(&[[1u8, 1, 1]]));

        let c = StabilizerCode::from_stabilizers(&["ZZ"]).unwrap();
        assert_eq!((c.n(), c.k(), c.d()), (2, 1, 2));

        let err = StabilizerCode::from_stabilizers(&["ZZI", "IZZ", "ZIZ"]).unwrap_err();
        assert!(matches!(err, Error::RankDeficient { .. }));

        let err = StabilizerCode::from_stabilizers(&["ZXI"]).unwrap_err();
        assert!(matches!(err, Error::NotZType { index: 0, .. }));
        assert!(StabilizerCode::from_stabilizers(&["-ZZ"]).is_err());
        assert!(StabilizerCode::from_stabilizers(&["ZZ", "ZZZ"]).is_err());
    }

    #[test]
    fn the_4_2_code_has_the_expected_generator() {
        let c = code42();
        assert_eq!((c.n(), c.k(), c.d()), (4, 2, 2));
        assert_eq!(c.g(), &F2Matrix::from_bits(&[[1u8, 0, 1, 1], [0, 1, 1, 0]]));
        assert_eq!(c.perm(), &[0, 1, 2, 3]);
    }

    #[test]
    fn codeword_index_examples() {
        assert_eq!(rep3().codeword_index(&bits(&[1])).unwrap(), 0b111);
        assert_eq!(rep3().codeword_index(&bits(&[0])).unwrap(), 0);
        assert_eq!(code42().codeword_index(&bits(&[0, 0])).unwrap(), 0);
        assert_eq!(code42().codeword_index(&bits(&[1, 1])).unwrap(), 0b1101);
        assert!(code42().codeword_index(&bits(&[1])).is_err());
    }

    #[test]
    fn isometry_examples() {
        let s = rep3().isometry_matrix().unwrap().clone();
        assert_eq!(s.shape(), (8, 2));
        assert_eq!(s[(0, 0)], ONE);
        assert_eq!(s[(7, 1)], ONE);

        let t = StabilizerCode::trivial(2).unwrap();
        assert_eq!(t.isometry_matrix().unwrap(), &CMatrix::identity(4, 4));

        let s = code42().isometry_matrix().unwrap().clone();
        for (eps, row) in [(0, 0b0000), (1, 0b0110), (2, 0b1011), (3, 0b1101)] {
            assert_eq!(s[(row, eps)], ONE);
            assert_eq!(s.column(eps).iter().filter(|v| v.norm() > 0.0).count(), 1);
        }
    }

    #[test]
    fn projector_is_idempotent_and_fixed_by_stabilizers() {
        let c = code42();
        let p = c.codespace_projector().unwrap();
        assert!(max_abs_diff(&(&p * &p), &p) < 1e-15);
        for stab in c.stabilizers() {
            let sigma = stab.dense_matrix().unwrap().into_matrix();
            assert!(max_abs_diff(&(sigma * &p), &p) < 1e-15);
        }
        assert!((p.trace().re - 4.0).abs() < 1e-12);
    }

    #[test]
    fn logical_operator_examples() {
        assert_eq!(rep3().logical_z_physical(0).unwrap().to_string(), "ZII");
        assert_eq!(StabilizerCode::trivial(2).unwrap().logical_z_physical(1).unwrap().to_string(), "IZ");
        assert_eq!(code42().logical_z_physical(1).unwrap().to_string(), "IZII");
        assert!(rep3().logical_z_physical(1).is_err());

        assert_eq!(rep3().logical_x_physical(0).unwrap().to_string(), "XXX");
        assert_eq!(StabilizerCode::trivial(1).unwrap().logical_x_physical(0).unwrap().to_string(), "X");
        assert_eq!(code42().logical_x_physical(0).unwrap().to_string(), "XIXX");

        assert_eq!(rep3().physical_z_logical(2).unwrap(), BTreeSet::from([0]));
        assert_eq!(StabilizerCode::trivial(1).unwrap().physical_z_logical(0).unwrap(), BTreeSet::from([0]));
        assert_eq!(code42().physical_z_logical(2).unwrap(), BTreeSet::from([0, 1]));
        assert!(code42().physical_z_logical(4).is_err());
    }

    #[test]
    fn logical_z_acts_as_sign_of_logical_bit() {
        let c = code42();
        let s = c.isometry_matrix().unwrap();
        for j in 0..c.k() {
            let z = c.logical_z_physical(j).unwrap().dense_matrix().unwrap().into_matrix();
            let zl = s.adjoint() * z * s;
            let expected = PauliSum::from_pauli(&PauliString::single(2, j, crate::pauli::Pauli::Z))
                .unwrap()
                .to_dense()
                .unwrap()
                .into_matrix();
            assert!(max_abs_diff(&zl, &expected) < 1e-15);
        }
    }

    #[test]
    fn verify_passes_on_canonical_isometry() {
        for c in [rep3(), code42(), StabilizerCode::trivial(3).unwrap()] {
            let diag = c.verify().unwrap();
            assert!(diag.passed(), "{:?}", diag.violations);
        }
    }

    #[test]
    fn verify_catches_flipped_bit() {
        let c = rep3();
        let mut s = c.isometry_matrix().unwrap().clone();
        // Move |111> to |110>.
        s[(7, 1)] = Complex64::new(0.0, 0.0);
        s[(6, 1)] = ONE;
        let diag = verify_isometry(&c, &s, 1e-9).unwrap();
        assert!(!diag.eigenvectors_ok);
        assert!(!diag.passed());
    }

    #[test]
    fn permuted_layout_keeps_user_labels() {
        // Parity on qubits 0 and 1 only: the trailing column is free, so the
        // standard form must move a column and logical qubits live elsewhere.
        let c = StabilizerCode::from_stabilizers(&["ZZI"]).unwrap();
        assert_eq!((c.k(), c.d()), (2, 1));
        assert_ne!(c.perm(), &[0, 1, 2]);
        let diag = c.verify().unwrap();
        assert!(diag.passed(), "{:?}", diag.violations);
        for j in 0..c.k() {
            let z = c.logical_z_physical(j).unwrap();
            assert_eq!(z.support_set(), BTreeSet::from([c.perm()[j]]));
        }
    }
}
