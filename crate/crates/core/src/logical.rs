//! Logical actions of physical circuits and the Z-algebra predicate.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{
    conjugate_through, consecutive_bound, layered_bound, minimal_r, per_block_support, Bound, Circuit,
    CodeblockLayout, GateKind, SpreadResult, MAX_UNITARY_QUBITS,
};
use crate::code::StabilizerCode;
use crate::dense::{
    canonical_phase, check_dense_size, max_abs_diff, operator_norm, serde_cmatrix, unitary_deviation, CMatrix,
    DenseOperator, ONE, ZERO,
};
use crate::error::{Error, Result};
use crate::f2linalg::BitVector;
use crate::pauli::{decompose, pauli_coefficients, MAX_DECOMPOSE_QUBITS};

/// Largest `n` for which [`x_rule_check`] enumerates every subset.
pub const X_RULE_EXHAUSTIVE_QUBITS: usize = 10;
/// Subsets drawn per weight when [`x_rule_check`] samples.
pub const X_RULE_SAMPLES: usize = 4096;

/// `U_L = S_dst† U S_src` with its preservation residual.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogicalAction {
    #[serde(with = "serde_cmatrix")]
    pub u_l: CMatrix,
    pub residual: f64,
    pub unitary_defect: f64,
}

impl LogicalAction {
    /// Wraps a logical unitary that did not come from a circuit.
    pub fn from_unitary(u_l: CMatrix) -> Result<Self> {
        if u_l.nrows() != u_l.ncols() {
            return Err(Error::DimensionMismatch {
                expected: u_l.nrows(),
                found: u_l.ncols(),
            });
        }
        crate::dense::dim_to_qubits(u_l.nrows())?;
        let unitary_defect = unitary_deviation(&u_l);
        Ok(Self {
            u_l,
            residual: 0.0,
            unitary_defect,
        })
    }

    pub fn num_logical(&self) -> usize {
        self.u_l.nrows().trailing_zeros() as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &LogicalAction) -> Result<LogicalAction> {
        if self.u_l.nrows() != other.u_l.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.u_l.nrows(),
                found: other.u_l.nrows(),
            });
        }
        let mut out = LogicalAction::from_unitary(&self.u_l * &other.u_l)?;
        out.residual = self.residual + other.residual;
        Ok(out)
    }

    /// Action seen through the isometry `S W†`: `W U_L W†`.
    pub fn in_basis(&self, w: &CMatrix) -> Result<LogicalAction> {
        if w.nrows() != self.u_l.nrows() || w.ncols() != self.u_l.ncols() {
            return Err(Error::DimensionMismatch {
                expected: self.u_l.nrows(),
                found: w.nrows(),
            });
        }
        let mut out = LogicalAction::from_unitary(w * &self.u_l * w.adjoint())?;
        out.residual = self.residual;
        Ok(out)
    }

    /// `U_L` with the global phase fixed.
    pub fn canonical(&self, tol: f64) -> CMatrix {
        canonical_phase(&self.u_l, tol)
    }

    /// Equality up to a global phase.
    pub fn equivalent_to(&self, m: &CMatrix, tol: f64) -> bool {
        m.shape() == self.u_l.shape() && max_abs_diff(&self.canonical(tol), &canonical_phase(m, tol)) <= tol
    }
}

fn check_layouts(circ: &Circuit, src: &CodeblockLayout, dst: &CodeblockLayout) -> Result<()> {
    for found in [src.n_total(), dst.n_total()] {
        if found != circ.n_total() {
            return Err(Error::DimensionMismatch {
                expected: circ.n_total(),
                found,
            });
        }
    }
    if circ.n_total() > MAX_UNITARY_QUBITS {
        return Err(Error::TooLarge {
            what: "physical qubits on the dense path",
            value: circ.n_total(),
            limit: MAX_UNITARY_QUBITS,
        });
    }
    Ok(())
}

/// `U S_src` as a `2^n × 2^K` matrix.
fn encoded_image(circ: &Circuit, src: &CodeblockLayout) -> Result<CMatrix> {
    let cws = src.codeword_indices()?;
    let mut m = CMatrix::zeros(1 << circ.n_total(), cws.len());
    for (eps, &cw) in cws.iter().enumerate() {
        m[(cw as usize, eps)] = ONE;
    }
    circ.apply_to(&mut m)?;
    Ok(m)
}

/// `‖(I − P_dst) U S_src‖` from a precomputed image and destination codewords.
fn leakage(image: &CMatrix, dst_cws: &[u64]) -> f64 {
    let mut outside = image.clone();
    for &cw in dst_cws {
        outside.row_mut(cw as usize).fill(ZERO);
    }
    operator_norm(&outside)
}

/// Whether `U` maps the source codespace into the destination codespace.
/// The residual is the operator norm of `(I − S_dst S_dst†) U S_src S_src†`.
pub fn preserves_codespace(
    circ: &Circuit,
    src: &CodeblockLayout,
    dst: &CodeblockLayout,
    tol: f64,
) -> Result<(bool, f64)> {
    check_layouts(circ, src, dst)?;
    let residual = leakage(&encoded_image(circ, src)?, &dst.codeword_indices()?);
    Ok((residual <= tol, residual))
}

/// `S_dst† U S_src`; fails with `NotPreserving` when the residual exceeds `tol`.
pub fn logical_action(
    circ: &Circuit,
    src: &CodeblockLayout,
    dst: &CodeblockLayout,
    tol: f64,
) -> Result<LogicalAction> {
    check_layouts(circ, src, dst)?;
    if src.k_total() != dst.k_total() {
        return Err(Error::DimensionMismatch {
            expected: src.k_total(),
            found: dst.k_total(),
        });
    }
    let image = encoded_image(circ, src)?;
    let dst_cws = dst.codeword_indices()?;
    let residual = leakage(&image, &dst_cws);
    if residual > tol {
        return Err(Error::NotPreserving { residual });
    }
    let k = dst_cws.len();
    let u_l = CMatrix::from_fn(k, k, |r, c| image[(dst_cws[r] as usize, c)]);
    let unitary_defect = unitary_deviation(&u_l);
    Ok(LogicalAction {
        u_l,
        residual,
        unitary_defect,
    })
}

/// Logical Z on logical qubit `j` of `k` (qubit 0 most significant).
pub fn logical_z_matrix(k: usize, j: usize) -> CMatrix {
    let dim = 1usize << k;
    CMatrix::from_fn(dim, dim, |r, c| {
        if r != c {
            ZERO
        } else if (r >> (k - 1 - j)) & 1 == 1 {
            -ONE
        } else {
            ONE
        }
    })
}

fn x_free(coefficients: &[(crate::pauli::PauliString, Complex64)], tol: f64) -> bool {
    coefficients
        .iter()
        .all(|(w, c)| w.x_bits().is_zero() || c.norm() <= tol)
}

fn check_decomposable(u: &CMatrix) -> Result<usize> {
    let k = crate::dense::dim_to_qubits(u.nrows())?;
    if k > MAX_DECOMPOSE_QUBITS {
        return Err(Error::TooLarge {
            what: "logical qubits for decomposition",
            value: k,
            limit: MAX_DECOMPOSE_QUBITS,
        });
    }
    Ok(k)
}

/// For each logical qubit `j`, whether `U_L Z_j U_L†` lies in the span of
/// logical Z products.
pub fn z_algebra_flags(u_l: &CMatrix, tol: f64) -> Result<Vec<bool>> {
    let k = check_decomposable(u_l)?;
    (0..k)
        .map(|j| {
            let image = u_l * logical_z_matrix(k, j) * u_l.adjoint();
            Ok(x_free(&pauli_coefficients(&DenseOperator::from_matrix(image)?)?, tol))
        })
        .collect()
}

pub fn z_algebra_conjugation_check(act: &LogicalAction, tol: f64) -> Result<Vec<bool>> {
    z_algebra_flags(&act.u_l, tol)
}

/// Whether `U_L` itself lies in the span of Z products. The Hermitian and
/// anti-Hermitian parts are decomposed separately.
pub fn z_span_check(act: &LogicalAction, tol: f64) -> Result<bool> {
    check_decomposable(&act.u_l)?;
    let u = &act.u_l;
    let half = Complex64::new(0.5, 0.0);
    let re_part = (u + u.adjoint()) * half;
    let im_part = (u - u.adjoint()) * Complex64::new(0.0, -0.5);
    for part in [re_part, im_part] {
        let op = DenseOperator::from_matrix(part)?;
        if !decompose(&op, tol.max(op.hermitian_deviation()))?.is_z_type(tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the distance X-rule check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XRuleReport {
    pub n: usize,
    pub d: usize,
    pub exhaustive: bool,
    pub subsets_checked: usize,
    pub max_norm: f64,
    /// Offending subsets as ascending qubit lists.
    pub violations: Vec<Vec<usize>>,
}

impl XRuleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Operator norm of `S† X_I S` for the qubit subset `subset`.
pub fn x_subset_logical_norm(code: &StabilizerCode, subset: &[usize]) -> Result<f64> {
    let s = code.isometry_matrix()?;
    let n = code.n();
    let flip: usize = subset.iter().map(|&q| 1usize << (n - 1 - q)).fold(0, |a, b| a | b);
    let moved = CMatrix::from_fn(s.nrows(), s.ncols(), |r, c| s[(r ^ flip, c)]);
    Ok(operator_norm(&(s.adjoint() * moved)))
}

/// Checks that every X string of weight below `d` has zero logical action.
///
/// Codes with at most ten qubits are checked densely over every nonempty
/// subset; larger codes sample subsets of each weight and test whether the
/// subset is a nonzero codeword, which is exactly when the action is nonzero.
pub fn x_rule_check(code: &StabilizerCode, tol: f64) -> Result<XRuleReport> {
    if code.n() <= X_RULE_EXHAUSTIVE_QUBITS {
        x_rule_exhaustive(code, tol)
    } else {
        x_rule_sampled(code, X_RULE_SAMPLES, 0)
    }
}

pub fn x_rule_exhaustive(code: &StabilizerCode, tol: f64) -> Result<XRuleReport> {
    let n = code.n();
    if n > X_RULE_EXHAUSTIVE_QUBITS {
        return Err(Error::TooLarge {
            what: "qubits for exhaustive X-rule check",
            value: n,
            limit: X_RULE_EXHAUSTIVE_QUBITS,
        });
    }
    check_dense_size(n)?;
    let mut report = XRuleReport {
        n,
        d: code.d(),
        exhaustive: true,
        subsets_checked: 0,
        max_norm: 0.0,
        violations: Vec::new(),
    };
    for mask in 1u64..1 << n {
        if mask.count_ones() as usize >= code.d() {
            continue;
        }
        let subset: Vec<usize> = BitVector::from_index(n, mask).ones().collect();
        let norm = x_subset_logical_norm(code, &subset)?;
        report.subsets_checked += 1;
        report.max_norm = report.max_norm.max(norm);
        if norm > tol {
            report.violations.push(subset);
        }
    }
    Ok(report)
}

pub fn x_rule_sampled(code: &StabilizerCode, samples_per_weight: usize, seed: u64) -> Result<XRuleReport> {
    let n = code.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = XRuleReport {
        n,
        d: code.d(),
        exhaustive: false,
        subsets_checked: 0,
        max_norm: 0.0,
        violations: Vec::new(),
    };
    for w in 1..code.d().min(n + 1) {
        for _ in 0..samples_per_weight {
            let mut qubits: Vec<usize> = (0..n).collect();
            for i in 0..w {
                let j = rng.random_range(i..n);
                qubits.swap(i, j);
            }
            let mut subset = qubits[..w].to_vec();
            subset.sort_unstable();
            let mut v = BitVector::zeros(n);
            for &q in &subset {
                v.set(q, true);
            }
            report.subsets_checked += 1;
            if code.h().rows().iter().all(|row| !row.dot(&v)) {
                report.max_norm = 1.0;
                report.violations.push(subset);
            }
        }
    }
    Ok(report)
}

/// Per-circuit assessment against the no-go bounds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub preserves: bool,
    pub residual: f64,
    /// One flag per logical qubit; empty when the codespace is not preserved.
    pub z_algebra_ok: Vec<bool>,
    pub z_span_ok: bool,
    pub h_layered: usize,
    pub h_consecutive: usize,
    pub r_layered: usize,
    pub r_consecutive: usize,
    pub c: usize,
    pub d: usize,
    pub layered_bound: Bound,
    pub consecutive_bound: Bound,
    pub consistent: bool,
}

impl TheoremVerdict {
    /// A preserving circuit that moves some logical Z out of the Z algebra.
    pub fn violates_z_algebra(&self) -> bool {
        self.preserves && self.z_algebra_ok.iter().any(|ok| !ok)
    }

    /// Either bound lies strictly below the distance.
    pub fn in_forbidden_regime(&self) -> bool {
        self.layered_bound.below(self.d) || self.consecutive_bound.below(self.d)
    }
}

/// Circuit shape parameters `(h_layered, r_layered, h_consecutive, r_consecutive)`.
pub fn circuit_shape(circ: &Circuit, layout: &CodeblockLayout) -> Result<(usize, usize, usize, usize)> {
    let mut r_layered = 1;
    for layer in circ.layers() {
        r_layered = r_layered.max(minimal_r(layer, layout)?);
    }
    let r_consecutive = circ
        .gates()
        .iter()
        .flat_map(|g| per_block_support(g.support(), layout))
        .max()
        .unwrap_or(0)
        .max(1);
    Ok((circ.num_layers(), r_layered, circ.num_gates(), r_consecutive))
}

pub fn theorem_witness(circ: &Circuit, layout: &CodeblockLayout, tol: f64) -> Result<TheoremVerdict> {
    theorem_witness_between(circ, layout, layout, tol)
}

/// Verdict for a circuit mapping the `src` codespace towards `dst`. Shape
/// parameters `c`, `d` and the per-block supports refer to `dst`.
pub fn theorem_witness_between(
    circ: &Circuit,
    src: &CodeblockLayout,
    dst: &CodeblockLayout,
    tol: f64,
) -> Result<TheoremVerdict> {
    let (h_layered, r_layered, h_consecutive, r_consecutive) = circuit_shape(circ, dst)?;
    let c = dst.num_blocks();
    let (preserves, residual) = preserves_codespace(circ, src, dst, tol)?;
    let (z_algebra_ok, z_span_ok) = if preserves && src.k_total() == dst.k_total() {
        let act = logical_action(circ, src, dst, tol)?;
        (z_algebra_conjugation_check(&act, tol)?, z_span_check(&act, tol)?)
    } else {
        (Vec::new(), false)
    };
    let mut verdict = TheoremVerdict {
        preserves,
        residual,
        z_algebra_ok,
        z_span_ok,
        h_layered,
        h_consecutive,
        r_layered,
        r_consecutive,
        c,
        d: dst.distance(),
        layered_bound: layered_bound(c, r_layered, h_layered),
        consecutive_bound: consecutive_bound(h_consecutive, r_consecutive),
        consistent: true,
    };
    verdict.consistent = !(verdict.violates_z_algebra() && verdict.in_forbidden_regime());
    Ok(verdict)
}

/// Full per-circuit report: verdict, logical action and Z spreading.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitAnalysis {
    pub verdict: TheoremVerdict,
    pub action: Option<LogicalAction>,
    pub label: Option<String>,
    /// Spread of `Z` on the physical qubit carrying each source logical qubit.
    pub spreads: Vec<SpreadResult>,
}

pub fn analyze_circuit(
    circ: &Circuit,
    src: &CodeblockLayout,
    dst: &CodeblockLayout,
    tol: f64,
) -> Result<CircuitAnalysis> {
    let verdict = theorem_witness_between(circ, src, dst, tol)?;
    let action = if verdict.preserves && src.k_total() == dst.k_total() {
        Some(logical_action(circ, src, dst, tol)?)
    } else {
        None
    };
    let label = action.as_ref().and_then(|a| label_action(&a.u_l, tol));
    let spreads = (0..src.k_total())
        .map(|j| {
            let q = src.logical_z_qubit(j)?;
            let z = crate::pauli::PauliString::single(circ.n_total(), q, crate::pauli::Pauli::Z);
            conjugate_through(circ, dst, &z, tol)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CircuitAnalysis {
        verdict,
        action,
        label,
        spreads,
    })
}

/// Names a logical unitary when it is, up to global phase, a Pauli word or a
/// named gate on its natural qubit order.
pub fn label_action(u_l: &CMatrix, tol: f64) -> Option<String> {
    let k = crate::dense::dim_to_qubits(u_l.nrows()).ok()?;
    if k <= MAX_DECOMPOSE_QUBITS {
        let op = DenseOperator::from_matrix(u_l.clone()).ok()?;
        let coefficients = pauli_coefficients(&op).ok()?;
        let big: Vec<_> = coefficients.iter().filter(|(_, c)| c.norm() > tol).collect();
        if let [(word, c)] = big.as_slice() {
            if (c.norm() - 1.0).abs() <= tol {
                return Some(word.to_string());
            }
        }
    }
    let target = canonical_phase(u_l, tol);
    GateKind::NAMED
        .iter()
        .filter(|g| g.arity() == k)
        .find(|g| max_abs_diff(&canonical_phase(&g.matrix(), tol), &target) <= tol)
        .map(|g| g.name().to_string())
}

/// Random logical unitary on `k` qubits that keeps the Z algebra: a
/// permutation matrix times diagonal phases.
pub fn random_monomial_action<R: Rng>(k: usize, rng: &mut R) -> Result<LogicalAction> {
    let dim = 1usize << k;
    let mut image: Vec<usize> = (0..dim).collect();
    for i in (1..dim).rev() {
        let j = rng.random_range(0..=i);
        image.swap(i, j);
    }
    let mut u = CMatrix::zeros(dim, dim);
    for (c, &r) in image.iter().enumerate() {
        let theta: f64 = rng.random::<f64>() * std::f64::consts::TAU;
        u[(r, c)] = Complex64::from_polar(1.0, theta);
    }
    LogicalAction::from_unitary(u)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::circuit::Gate;

    const TOL: f64 = 1e-9;

    fn rep(n: usize) -> Arc<StabilizerCode> {
        let stabs: Vec<String> = (0..n - 1)
            .map(|i| (0..n).map(|q| if q == i || q == i + 1 { 'Z' } else { 'I' }).collect())
            .collect();
        Arc::new(StabilizerCode::from_stabilizers(&stabs).unwrap())
    }

    fn layout(n: usize) -> CodeblockLayout {
        CodeblockLayout::repeated(rep(n), 1).unwrap()
    }

    fn on_all(kind: GateKind, n: usize) -> Circuit {
        Circuit::from_layers(n, vec![(0..n).map(|q| Gate::new(kind.clone(), vec![q]).unwrap()).collect()]).unwrap()
    }

    fn pauli(kind: GateKind) -> CMatrix {
        kind.matrix()
    }

    #[test]
    fn preservation_examples() {
        let l = layout(3);
        let (ok, res) = preserves_codespace(&on_all(GateKind::X, 3), &l, &l, TOL).unwrap();
        assert!(ok && res < 1e-12);
        let (ok, res) = preserves_codespace(&on_all(GateKind::H, 3), &l, &l, TOL).unwrap();
        assert!(!ok && res > 0.5);
        assert!(preserves_codespace(&Circuit::empty(3), &l, &l, TOL).unwrap().0);
        assert!(matches!(
            logical_action(&on_all(GateKind::H, 3), &l, &l, TOL),
            Err(Error::NotPreserving { .. })
        ));
    }

    #[test]
    fn logical_actions_of_paulis() {
        let l = layout(3);
        let x = logical_action(&on_all(GateKind::X, 3), &l, &l, TOL).unwrap();
        assert!(x.equivalent_to(&pauli(GateKind::X), TOL));
        let z3 = Circuit::sequential(3, vec![Gate::new(GateKind::Z, vec![2]).unwrap()]).unwrap();
        let z = logical_action(&z3, &l, &l, TOL).unwrap();
        assert!(z.equivalent_to(&pauli(GateKind::Z), TOL));
        let stab = Circuit::from_layers(3, vec![vec![Gate::new(GateKind::Z, vec![0]).unwrap(), Gate::new(GateKind::Z, vec![1]).unwrap()]])
            .unwrap();
        assert!(logical_action(&stab, &l, &l, TOL).unwrap().equivalent_to(&CMatrix::identity(2, 2), TOL));
    }

    #[test]
    fn z_algebra_examples() {
        let x = LogicalAction::from_unitary(pauli(GateKind::X)).unwrap();
        assert_eq!(z_algebra_conjugation_check(&x, TOL).unwrap(), vec![true]);
        let h = LogicalAction::from_unitary(pauli(GateKind::H)).unwrap();
        assert_eq!(z_algebra_conjugation_check(&h, TOL).unwrap(), vec![false]);
        let id = LogicalAction::from_unitary(CMatrix::identity(4, 4)).unwrap();
        assert_eq!(z_algebra_conjugation_check(&id, TOL).unwrap(), vec![true, true]);
        let cnot = LogicalAction::from_unitary(pauli(GateKind::Cnot)).unwrap();
        assert_eq!(z_algebra_conjugation_check(&cnot, TOL).unwrap(), vec![true, true]);
    }

    #[test]
    fn z_span_examples() {
        let span = |m: CMatrix| z_span_check(&LogicalAction::from_unitary(m).unwrap(), TOL).unwrap();
        assert!(span(pauli(GateKind::Z)));
        assert!(!span(pauli(GateKind::X)));
        assert!(span(pauli(GateKind::S)));
        assert!(span(pauli(GateKind::T)));
        assert!(!span(pauli(GateKind::Cnot)));
        assert!(span(pauli(GateKind::Ccz)));
    }

    #[test]
    fn x_rule() {
        let r3 = x_rule_check(&rep(3), TOL).unwrap();
        assert!(r3.passed() && r3.exhaustive);
        assert_eq!(r3.subsets_checked, 6);
        assert!(x_subset_logical_norm(&rep(3), &[0]).unwrap() < 1e-12);
        let r5 = x_rule_check(&rep(5), TOL).unwrap();
        assert!(r5.passed());
        assert_eq!(r5.subsets_checked, 30);
        let full = x_subset_logical_norm(&rep(5), &[0, 1, 2, 3, 4]).unwrap();
        assert!((full - 1.0).abs() < 1e-12);
        let sampled = x_rule_sampled(&rep(12), 200, 3).unwrap();
        assert!(sampled.passed() && !sampled.exhaustive);
        assert_eq!(sampled.subsets_checked, 200 * 11);
    }

    #[test]
    fn verdict_examples() {
        let l = layout(3);
        let v = theorem_witness(&on_all(GateKind::X, 3), &l, TOL).unwrap();
        assert!(v.preserves && v.consistent);
        assert_eq!((v.h_layered, v.r_layered, v.c, v.d), (1, 1, 1, 3));
        assert_eq!(v.layered_bound.value, 1);
        assert_eq!(v.z_algebra_ok, vec![true]);
        let v = theorem_witness(&Circuit::empty(3), &l, TOL).unwrap();
        assert!(v.consistent && v.z_span_ok);
        let two = Circuit::sequential(
            3,
            vec![Gate::new(GateKind::Cz, vec![0, 1]).unwrap(), Gate::new(GateKind::Cnot, vec![1, 2]).unwrap()],
        )
        .unwrap();
        let v = theorem_witness(&two, &l, TOL).unwrap();
        assert_eq!(v.consecutive_bound.value, 4);
        assert!(v.consistent);
    }

    #[test]
    fn labels() {
        assert_eq!(label_action(&pauli(GateKind::X), TOL).as_deref(), Some("X"));
        let minus_i_y = pauli(GateKind::Y) * Complex64::new(0.0, -1.0);
        assert_eq!(label_action(&minus_i_y, TOL).as_deref(), Some("Y"));
        assert_eq!(label_action(&pauli(GateKind::H), TOL).as_deref(), Some("H"));
        assert_eq!(label_action(&pauli(GateKind::Cnot), TOL).as_deref(), Some("CNOT"));
        assert_eq!(label_action(&CMatrix::identity(4, 4), TOL).as_deref(), Some("II"));
        let odd = pauli(GateKind::H) * pauli(GateKind::T);
        assert_eq!(label_action(&odd, TOL), None);
    }

    #[test]
    fn monomial_actions_keep_z_algebra() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 1..4 {
            let a = random_monomial_action(k, &mut rng).unwrap();
            assert!(a.unitary_defect < 1e-12);
            assert!(z_algebra_conjugation_check(&a, TOL).unwrap().iter().all(|&b| b));
        }
    }
}
