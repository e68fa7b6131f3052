//! Phased Pauli words and real-weighted Pauli sums.
//!
//! A [`PauliString`] is `i^phase · σ_1 ⊗ … ⊗ σ_n` where each `σ` is one of the
//! Hermitian matrices I, X, Y, Z and the per-qubit letter is encoded by the
//! pair `(x, z)`: I = (0,0), X = (1,0), Y = (1,1), Z = (0,1). With this
//! convention a string is Hermitian exactly when its phase is ±1.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dense::{check_dense_size, CMatrix, DenseOperator, ONE, ZERO};
use crate::error::{Error, Result};
use crate::f2linalg::BitVector;
use crate::DEFAULT_TOL;

/// Largest operator [`decompose`] accepts.
pub const MAX_DECOMPOSE_QUBITS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Pauli> {
        match c {
            'I' | '_' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    x: BitVector,
    z: BitVector,
    phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
            phase: 0,
        }
    }

    pub fn from_parts(x: BitVector, z: BitVector, phase: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(Self { x, z, phase: phase % 4 })
    }

    /// Single-qubit Pauli `p` on qubit `q` of `n`.
    pub fn single(n: usize, q: usize, p: Pauli) -> Self {
        let mut s = Self::identity(n);
        s.set(q, p);
        s
    }

    /// Z on every qubit where `support` is one.
    pub fn z_on(support: &BitVector) -> Self {
        Self {
            x: BitVector::zeros(support.len()),
            z: support.clone(),
            phase: 0,
        }
    }

    /// X on every qubit where `support` is one.
    pub fn x_on(support: &BitVector) -> Self {
        Self {
            x: support.clone(),
            z: BitVector::zeros(support.len()),
            phase: 0,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVector {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVector {
        &self.z
    }

    /// Exponent of `i` in the overall phase.
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn phase(&self) -> Complex64 {
        i_pow(self.phase)
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        let (x, z) = p.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn support(&self) -> BitVector {
        self.x.or(&self.z)
    }

    pub fn support_set(&self) -> BTreeSet<usize> {
        self.support().ones().collect()
    }

    pub fn weight(&self) -> usize {
        self.support().weight()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    /// No X or Y letters.
    pub fn is_z_type(&self) -> bool {
        self.x.is_zero()
    }

    /// The same word with phase `+1`.
    pub fn unphased(&self) -> PauliString {
        Self {
            x: self.x.clone(),
            z: self.z.clone(),
            phase: 0,
        }
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase % 4;
        self
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        (self.x.and_weight(&other.z) + self.z.and_weight(&other.x)).is_multiple_of(2)
    }

    /// Phased product `self · other`.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits(),
                found: other.num_qubits(),
            });
        }
        // Each Hermitian letter is i^{xz} X^x Z^z. Moving Z^{z1} past X^{x2}
        // costs (-1)^{z1·x2}, and the result is converted back by i^{-x3 z3}.
        let x = self.x.xor(&other.x);
        let z = self.z.xor(&other.z);
        let exp = self.phase as usize
            + other.phase as usize
            + self.x.and_weight(&self.z)
            + other.x.and_weight(&other.z)
            + 2 * self.z.and_weight(&other.x)
            + 3 * x.and_weight(&z);
        Ok(PauliString {
            x,
            z,
            phase: (exp % 4) as u8,
        })
    }

    /// Conjugate transpose: same word, conjugated phase.
    pub fn adjoint(&self) -> PauliString {
        Self {
            x: self.x.clone(),
            z: self.z.clone(),
            phase: (4 - self.phase) % 4,
        }
    }

    /// Restriction to the listed qubits, in that order.
    pub fn restricted(&self, qubits: &[usize]) -> PauliString {
        let mut out = PauliString::identity(qubits.len());
        for (i, &q) in qubits.iter().enumerate() {
            out.set(i, self.get(q));
        }
        out.phase = self.phase;
        out
    }

    /// Places this string on the listed qubits of an `n`-qubit system.
    pub fn embedded(&self, qubits: &[usize], n: usize) -> Result<PauliString> {
        if qubits.len() != self.num_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits(),
                found: qubits.len(),
            });
        }
        let mut out = PauliString::identity(n);
        for (i, &q) in qubits.iter().enumerate() {
            if q >= n {
                return Err(Error::IndexOutOfRange { index: q, bound: n });
            }
            out.set(q, self.get(i));
        }
        out.phase = self.phase;
        Ok(out)
    }

    /// Dense matrix on qubits `0..n`.
    pub fn dense_matrix(&self) -> Result<DenseOperator> {
        let n = self.num_qubits();
        check_dense_size(n)?;
        let xm = self.x.to_index() as usize;
        let zm = self.z.to_index() as usize;
        let base = self.phase as usize + self.x.and_weight(&self.z);
        let dim = 1usize << n;
        let mut m = CMatrix::zeros(dim, dim);
        for c in 0..dim {
            let sign = 2 * ((zm & c).count_ones() as usize % 2);
            m[(c ^ xm, c)] = i_pow(((base + sign) % 4) as u8);
        }
        DenseOperator::new((0..n).collect(), m)
    }
}

/// Matrix of a dense operator on `n` qubits.
pub fn dense_matrix(p: &PauliString) -> Result<DenseOperator> {
    p.dense_matrix()
}

/// Phased product `a · b`.
pub fn multiply(a: &PauliString, b: &PauliString) -> Result<PauliString> {
    a.multiply(b)
}

pub(crate) fn i_pow(e: u8) -> Complex64 {
    match e % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        })?;
        for q in 0..self.num_qubits() {
            write!(f, "{}", self.get(q).symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses literals such as `"XZI"`, `"-YZI"`, `"+iXX"` or `"-iZ"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, body) = if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else {
            (0, s)
        };
        if body.is_empty() {
            return Err(Error::Invalid(format!("empty Pauli literal {s:?}")));
        }
        let mut out = PauliString::identity(body.chars().count());
        for (q, c) in body.chars().enumerate() {
            let p = Pauli::from_symbol(c)
                .ok_or_else(|| Error::Invalid(format!("bad Pauli letter {c:?} in {s:?}")))?;
            out.set(q, p);
        }
        out.phase = phase;
        Ok(out)
    }
}

impl Serialize for PauliString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Real linear combination of unphased Pauli words on `n` qubits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliSum {
    n: usize,
    terms: BTreeMap<PauliString, f64>,
}

impl PauliSum {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a sum from `(literal, coefficient)` pairs. Literal phases must
    /// be ±1 and are folded into the coefficient.
    pub fn from_terms<'a>(terms: impl IntoIterator<Item = (&'a str, f64)>) -> Result<Self> {
        let mut sum: Option<PauliSum> = None;
        for (lit, coef) in terms {
            let p: PauliString = lit.parse()?;
            let s = sum.get_or_insert_with(|| PauliSum::new(p.num_qubits()));
            s.add_pauli(&p, coef)?;
        }
        sum.ok_or_else(|| Error::Invalid("empty Pauli sum".into()))
    }

    /// Hermitian Pauli string as a one-term sum.
    pub fn from_pauli(p: &PauliString) -> Result<Self> {
        let mut s = PauliSum::new(p.num_qubits());
        s.add_pauli(p, 1.0)?;
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coef` times the Hermitian string `p`.
    pub fn add_pauli(&mut self, p: &PauliString, coef: f64) -> Result<()> {
        if p.num_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.num_qubits(),
            });
        }
        if !p.is_hermitian() {
            return Err(Error::NotHermitian { deviation: 2.0 });
        }
        let sign = if p.phase_exp() == 2 { -1.0 } else { 1.0 };
        self.add_word(p.unphased(), sign * coef);
        Ok(())
    }

    pub(crate) fn add_word(&mut self, word: PauliString, coef: f64) {
        *self.terms.entry(word).or_insert(0.0) += coef;
    }

    pub fn coefficient(&self, word: &str) -> f64 {
        word.parse::<PauliString>()
            .ok()
            .and_then(|p| {
                let sign = if p.phase_exp() == 2 { -1.0 } else { 1.0 };
                self.terms.get(&p.unphased()).map(|c| sign * c)
            })
            .unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, f64)> {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    /// Drops terms with `|coefficient| <= tol`.
    pub fn pruned(mut self, tol: f64) -> Self {
        self.terms.retain(|_, c| c.abs() > tol);
        self
    }

    /// Σ b², which equals `Tr(K²) / 2^n`.
    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|c| c * c).sum()
    }

    /// True iff every term with `|coefficient| > tol` has no X or Y letter.
    pub fn is_z_type(&self, tol: f64) -> bool {
        self.terms
            .iter()
            .filter(|(_, c)| c.abs() > tol)
            .all(|(p, _)| p.is_z_type())
    }

    /// Union of the supports of terms with `|coefficient| > tol`.
    pub fn support_of(&self, tol: f64) -> BTreeSet<usize> {
        self.terms
            .iter()
            .filter(|(_, c)| c.abs() > tol)
            .flat_map(|(p, _)| p.support().ones().collect::<Vec<_>>())
            .collect()
    }

    /// Places the sum on the listed qubits of an `n`-qubit system.
    pub fn embedded(&self, qubits: &[usize], n: usize) -> Result<PauliSum> {
        let mut out = PauliSum::new(n);
        for (p, c) in self.terms() {
            out.add_word(p.embedded(qubits, n)?, c);
        }
        Ok(out)
    }

    /// Restricts every term to the listed qubits. Letters outside the list
    /// are discarded, so callers should only drop identity positions.
    pub fn restricted(&self, qubits: &[usize]) -> PauliSum {
        let mut out = PauliSum::new(qubits.len());
        for (p, c) in self.terms() {
            out.add_word(p.restricted(qubits).unphased(), c);
        }
        out
    }

    /// Largest coefficient difference over the union of both term sets.
    pub fn max_abs_diff(&self, other: &PauliSum) -> f64 {
        let keys: BTreeSet<&PauliString> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .map(|k| {
                (self.terms.get(k).copied().unwrap_or(0.0) - other.terms.get(k).copied().unwrap_or(0.0)).abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> Result<DenseOperator> {
        check_dense_size(self.n)?;
        let dim = 1usize << self.n;
        let mut m = CMatrix::zeros(dim, dim);
        for (p, c) in self.terms() {
            m += p.dense_matrix()?.into_matrix() * Complex64::new(c, 0.0);
        }
        DenseOperator::new((0..self.n).collect(), m)
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(if c < 0.0 { " - " } else { " + " })?;
            } else if c < 0.0 {
                f.write_str("-")?;
            }
            write!(f, "{:.6}*{}", c.abs(), p)?;
        }
        Ok(())
    }
}

/// Pauli coefficients `Tr(P_α K) / 2^m` of an arbitrary square operator, as
/// complex numbers keyed by word over the operator's local qubit order.
///
/// Folds one qubit at a time, costing `m · 4^m`.
pub fn pauli_coefficients(k: &DenseOperator) -> Result<Vec<(PauliString, Complex64)>> {
    let m = k.num_qubits();
    if m > MAX_DECOMPOSE_QUBITS {
        return Err(Error::TooLarge {
            what: "decomposition qubits",
            value: m,
            limit: MAX_DECOMPOSE_QUBITS,
        });
    }
    let dim = 1usize << m;
    let mat = k.matrix();
    // Row-major buffer: index = row << m | col.
    let mut a: Vec<Complex64> = (0..dim * dim).map(|idx| mat[(idx >> m, idx & (dim - 1))]).collect();
    let half = Complex64::new(0.5, 0.0);
    let half_i = Complex64::new(0.0, 0.5);
    for bit in 0..m {
        let col_bit = 1usize << bit;
        let row_bit = col_bit << m;
        for idx in 0..dim * dim {
            if idx & (col_bit | row_bit) != 0 {
                continue;
            }
            let e00 = a[idx];
            let e01 = a[idx | col_bit];
            let e10 = a[idx | row_bit];
            let e11 = a[idx | row_bit | col_bit];
            a[idx] = (e00 + e11) * half;
            a[idx | col_bit] = (e01 + e10) * half;
            a[idx | row_bit] = (e01 - e10) * half_i;
            a[idx | row_bit | col_bit] = (e00 - e11) * half;
        }
    }
    let mut out = Vec::with_capacity(dim * dim);
    for (idx, &coef) in a.iter().enumerate() {
        let r = idx >> m;
        let c = idx & (dim - 1);
        // Slot (r, c) on a qubit holds I=(0,0), X=(0,1), Y=(1,0), Z=(1,1).
        let xm = r ^ c;
        let zm = r;
        let x = BitVector::from_index(m, xm as u64);
        let z = BitVector::from_index(m, zm as u64);
        out.push((PauliString { x, z, phase: 0 }, coef));
    }
    Ok(out)
}

/// Decomposes a Hermitian operator in the real orthogonal Pauli basis.
///
/// The result lives on `m = k.num_qubits()` qubits in the operator's own
/// ordering; terms with `|b| <= tol` are pruned.
pub fn decompose(k: &DenseOperator, tol: f64) -> Result<PauliSum> {
    if k.num_qubits() > MAX_DECOMPOSE_QUBITS {
        return Err(Error::TooLarge {
            what: "decomposition qubits",
            value: k.num_qubits(),
            limit: MAX_DECOMPOSE_QUBITS,
        });
    }
    let deviation = k.hermitian_deviation();
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    let mut sum = PauliSum::new(k.num_qubits());
    for (word, coef) in pauli_coefficients(k)? {
        if coef.re.abs() > tol {
            sum.add_word(word, coef.re);
        }
    }
    Ok(sum)
}

/// [`decompose`] with the default tolerance.
pub fn decompose_default(k: &DenseOperator) -> Result<PauliSum> {
    decompose(k, DEFAULT_TOL)
}

pub fn is_z_type(s: &PauliSum, tol: f64) -> bool {
    s.is_z_type(tol)
}

pub fn support_of(s: &PauliSum, tol: f64) -> BTreeSet<usize> {
    s.support_of(tol)
}

/// Dense single-qubit Pauli matrix.
pub fn pauli_matrix(p: Pauli) -> CMatrix {
    let i = Complex64::new(0.0, 1.0);
    match p {
        Pauli::I => CMatrix::identity(2, 2),
        Pauli::X => CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        Pauli::Y => CMatrix::from_row_slice(2, 2, &[ZERO, -i, i, ZERO]),
        Pauli::Z => CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{kron, max_abs_diff};

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        for lit in ["XZI", "-YZI", "iXX", "-iZ", "I"] {
            assert_eq!(p(lit).to_string(), lit);
        }
        assert_eq!(p("+XY").to_string(), "XY");
        assert_eq!(p("+iXY").phase_exp(), 1);
        assert!("XQ".parse::<PauliString>().is_err());
        assert!("-".parse::<PauliString>().is_err());
    }

    #[test]
    fn multiply_examples() {
        // X·Z = -iY
        let xz = p("XI").multiply(&p("ZI")).unwrap();
        assert_eq!(xz, p("-iYI"));
        assert_eq!(p("ZI").multiply(&p("IZ")).unwrap(), p("ZZ"));
        let a = p("-YZX");
        assert!(a.multiply(&a).unwrap().is_identity());
        assert_eq!(a.multiply(&a).unwrap().phase_exp(), 0);
        let b = p("iXY");
        assert_eq!(b.multiply(&b).unwrap(), p("-II"));
        assert!(p("X").multiply(&p("XX")).is_err());
    }

    #[test]
    fn multiply_matches_dense_product() {
        let words = ["X", "Y", "Z", "I", "-Y", "iZ"];
        for a in words {
            for b in words {
                let (pa, pb) = (p(a), p(b));
                let prod = pa.multiply(&pb).unwrap().dense_matrix().unwrap();
                let dense = pa.dense_matrix().unwrap().into_matrix() * pb.dense_matrix().unwrap().into_matrix();
                assert!(max_abs_diff(prod.matrix(), &dense) < 1e-15, "{a}·{b}");
            }
        }
    }

    #[test]
    fn dense_examples() {
        let id = p("III").dense_matrix().unwrap();
        assert!(max_abs_diff(id.matrix(), &CMatrix::identity(8, 8)) < 1e-15);
        let z = p("Z").dense_matrix().unwrap();
        assert_eq!(z.matrix()[(0, 0)], ONE);
        assert_eq!(z.matrix()[(1, 1)], -ONE);
        let xz = p("XZ").dense_matrix().unwrap();
        let expected = kron(&pauli_matrix(Pauli::X), &pauli_matrix(Pauli::Z));
        assert!(max_abs_diff(xz.matrix(), &expected) < 1e-15);
        assert!(PauliString::identity(15).dense_matrix().is_err());
    }

    #[test]
    fn decompose_examples() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(s, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(-s, 0.0),
            ],
        );
        let sum = decompose(&DenseOperator::from_matrix(h).unwrap(), 1e-9).unwrap();
        assert_eq!(sum.len(), 2);
        assert!((sum.coefficient("X") - s).abs() < 1e-12);
        assert!((sum.coefficient("Z") - s).abs() < 1e-12);

        let id = DenseOperator::identity(vec![0, 1, 2]).unwrap();
        let sum = decompose(&id, 1e-9).unwrap();
        assert_eq!(sum.len(), 1);
        assert!((sum.coefficient("III") - 1.0).abs() < 1e-12);
    }

    #[test]
    fn decompose_rejects_non_hermitian() {
        let m = CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ZERO, ZERO]);
        let err = decompose(&DenseOperator::from_matrix(m).unwrap(), 1e-9).unwrap_err();
        assert!(matches!(err, Error::NotHermitian { .. }));
    }

    #[test]
    fn decompose_of_single_string() {
        for lit in ["XYZ", "-ZZI", "YIY"] {
            let ps = p(lit);
            let sum = decompose(&ps.dense_matrix().unwrap(), 1e-9).unwrap();
            assert_eq!(sum.len(), 1);
            let (word, coef) = sum.terms().next().unwrap();
            assert_eq!(*word, ps.unphased());
            let sign = if ps.phase_exp() == 2 { -1.0 } else { 1.0 };
            assert!((coef - sign).abs() < 1e-12);
        }
    }

    #[test]
    fn z_type_and_support() {
        let s = PauliSum::from_terms([("ZI", 0.5), ("ZZ", 0.5)]).unwrap();
        assert!(s.is_z_type(1e-9));
        assert_eq!(s.support_of(1e-9), BTreeSet::from([0, 1]));
        assert!(!PauliSum::from_terms([("X", 1.0)]).unwrap().is_z_type(1e-9));
        let s = PauliSum::from_terms([("Z", 0.6), ("Y", 0.8)]).unwrap();
        assert!(!s.is_z_type(1e-9));
        // A negligible X term does not count.
        let s = PauliSum::from_terms([("Z", 1.0), ("X", 1e-12)]).unwrap();
        assert!(s.is_z_type(1e-9));
        assert_eq!(PauliSum::from_terms([("ZI", 1.0)]).unwrap().support_of(1e-9), BTreeSet::from([0]));
    }

    #[test]
    fn sum_round_trips_through_dense() {
        let s = PauliSum::from_terms([("XZ", 0.25), ("-YY", 0.5), ("II", 1.5)]).unwrap();
        let back = decompose(&s.to_dense().unwrap(), 1e-12).unwrap();
        assert!(s.max_abs_diff(&back) < 1e-12);
        assert!((s.coefficient("YY") + 0.5).abs() < 1e-15);
    }
}
