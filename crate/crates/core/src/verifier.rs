//! Exhaustive search over small circuits for counterexamples to the no-go
//! bounds, plus a randomized composition-closure probe.
//!
//! Circuits are sequences of gate placements. A placement is a named gate on
//! an ordered tuple of distinct qubits; qubits in a gate's symmetric prefix
//! are listed in ascending order so that equal gates are generated once.
//! Circuit ordinals count the empty circuit as 0, then every circuit of one
//! gate, then every circuit of two gates, each block in lexicographic order
//! of placement indices.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, CodeblockLayout, Gate, GateKind};
use crate::dense::{canonical_phase, CMatrix};
use crate::error::{Error, Result};
use crate::logical::{label_action, logical_action, theorem_witness, z_algebra_conjugation_check, LogicalAction};

/// Default cap on the number of raw circuits a search may visit.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerationSpec {
    pub gate_set: Vec<GateKind>,
    pub n_total: usize,
    pub max_gates: usize,
    pub max_support_per_gate: usize,
    /// Qubit sets gates may act on. Each gate uses the sets matching its
    /// arity, in every ordering its symmetry allows. `None` means all sets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub supports: Option<Vec<Vec<usize>>>,
    #[serde(default = "default_true")]
    pub dedup: bool,
    #[serde(default = "default_budget")]
    pub budget: u64,
}

fn default_true() -> bool {
    true
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

impl EnumerationSpec {
    pub fn new(gate_set: Vec<GateKind>, n_total: usize, max_gates: usize) -> Self {
        let max_support_per_gate = gate_set.iter().map(GateKind::arity).max().unwrap_or(1);
        Self {
            gate_set,
            n_total,
            max_gates,
            max_support_per_gate,
            supports: None,
            dedup: true,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_dedup(mut self, dedup: bool) -> Self {
        self.dedup = dedup;
        self
    }

    pub fn with_supports(mut self, supports: Vec<Vec<usize>>) -> Self {
        self.supports = Some(supports);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Number of circuits with `1..=max_gates` gates, saturating.
    pub fn raw_count(&self) -> Result<u128> {
        let p = placements(self)?.len() as u128;
        let mut total: u128 = 0;
        let mut power: u128 = 1;
        for _ in 0..self.max_gates {
            power = power.saturating_mul(p);
            total = total.saturating_add(power);
        }
        Ok(total)
    }

    fn check_budget(&self) -> Result<u128> {
        let count = self.raw_count()?;
        if count > self.budget as u128 {
            return Err(Error::BudgetExceeded {
                count,
                budget: self.budget as u128,
            });
        }
        Ok(count)
    }
}

/// All distinct ordered tuples of `k` qubits from `pool` with the first
/// `sym` positions ascending.
fn tuples(pool: &[usize], k: usize, sym: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(pool: &[usize], k: usize, sym: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for &q in pool {
            if cur.contains(&q) {
                continue;
            }
            if cur.len() < sym && cur.last().is_some_and(|&last| q < last) {
                continue;
            }
            cur.push(q);
            rec(pool, k, sym, cur, out);
            cur.pop();
        }
    }
    rec(pool, k, sym, &mut Vec::new(), out);
}

/// Every gate placement the spec allows, in deterministic order.
pub fn placements(spec: &EnumerationSpec) -> Result<Vec<Gate>> {
    let mut out = Vec::new();
    for kind in &spec.gate_set {
        if !kind.is_named() {
            return Err(Error::Invalid("exhaustive search takes named gates only".into()));
        }
        let a = kind.arity();
        if a > spec.max_support_per_gate || a > spec.n_total {
            continue;
        }
        let sym = kind.symmetric_prefix();
        let mut supports = Vec::new();
        match &spec.supports {
            None => tuples(&(0..spec.n_total).collect::<Vec<_>>(), a, sym, &mut supports),
            Some(templates) => {
                for t in templates.iter().filter(|t| t.len() == a) {
                    if let Some(&q) = t.iter().find(|&&q| q >= spec.n_total) {
                        return Err(Error::IndexOutOfRange {
                            index: q,
                            bound: spec.n_total,
                        });
                    }
                    let mut pool = t.clone();
                    pool.sort_unstable();
                    tuples(&pool, a, sym, &mut supports);
                }
            }
        }
        let mut seen = HashSet::new();
        for s in supports {
            if seen.insert(s.clone()) {
                out.push(Gate::new(kind.clone(), s)?);
            }
        }
    }
    Ok(out)
}

fn build(n_total: usize, placed: &[Gate], indices: &[usize]) -> Result<Circuit> {
    Circuit::packed(n_total, indices.iter().map(|&i| placed[i].clone()).collect())
}

/// Ordinal of the circuit with the given placement indices.
fn ordinal_of(p: usize, indices: &[usize]) -> u128 {
    let p = p as u128;
    let mut offset: u128 = 1;
    let mut power: u128 = 1;
    for _ in 1..indices.len() {
        power *= p;
        offset += power;
    }
    offset + indices.iter().fold(0u128, |acc, &i| acc * p + i as u128)
}

/// Circuit with a given ordinal.
pub fn circuit_at(spec: &EnumerationSpec, ordinal: u64) -> Result<Circuit> {
    let placed = placements(spec)?;
    let p = placed.len() as u128;
    let mut rest = ordinal as u128;
    if rest == 0 {
        return Ok(Circuit::empty(spec.n_total));
    }
    rest -= 1;
    let mut len = 1usize;
    let mut block = p;
    while rest >= block {
        rest -= block;
        len += 1;
        if len > spec.max_gates || p == 0 {
            return Err(Error::IndexOutOfRange {
                index: ordinal as usize,
                bound: spec.raw_count()? as usize + 1,
            });
        }
        block *= p;
    }
    if len > spec.max_gates {
        return Err(Error::IndexOutOfRange {
            index: ordinal as usize,
            bound: spec.raw_count()? as usize + 1,
        });
    }
    let mut indices = vec![0usize; len];
    for slot in indices.iter_mut().rev() {
        *slot = (rest % p) as usize;
        rest /= p;
    }
    build(spec.n_total, &placed, &indices)
}

/// Lexicographic odometer over `len` digits in base `p`, with the first digit
/// fixed.
struct Odometer {
    digits: Vec<usize>,
    base: usize,
    done: bool,
}

impl Odometer {
    fn new(first: usize, len: usize, base: usize) -> Self {
        let mut digits = vec![0; len];
        digits[0] = first;
        Self {
            digits,
            base,
            done: false,
        }
    }

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let current = self.digits.clone();
        let mut pos = self.digits.len();
        loop {
            if pos <= 1 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.digits[pos] += 1;
            if self.digits[pos] < self.base {
                break;
            }
            self.digits[pos] = 0;
        }
        Some(current)
    }
}

/// Every circuit of `1..=max_gates` gates in ordinal order, deduplicated by
/// unitary fingerprint when the spec asks for it.
pub fn enumerate_circuits(spec: &EnumerationSpec) -> Result<Vec<Circuit>> {
    spec.check_budget()?;
    let placed = placements(spec)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for len in 1..=spec.max_gates {
        for first in 0..placed.len() {
            let mut odo = Odometer::new(first, len, placed.len());
            while let Some(digits) = odo.next() {
                let c = build(spec.n_total, &placed, &digits)?;
                if !spec.dedup || seen.insert(fingerprint(&c.unitary()?)) {
                    out.push(c);
                }
            }
        }
    }
    Ok(out)
}

/// FNV-1a hash of a matrix after global-phase canonicalization and rounding
/// every component to six decimals.
pub fn fingerprint(m: &CMatrix) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let c = canonical_phase(m, 1e-6);
    let mut h = OFFSET;
    let mut feed = |v: i64| {
        for b in v.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(PRIME);
        }
    };
    feed(m.nrows() as i64);
    feed(m.ncols() as i64);
    for r in 0..c.nrows() {
        for col in 0..c.ncols() {
            let v = c[(r, col)];
            feed((v.re * 1e6).round() as i64);
            feed((v.im * 1e6).round() as i64);
        }
    }
    h
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogueEntry {
    /// Fingerprint of the phase-canonical logical unitary, as hex.
    pub fingerprint: String,
    pub label: Option<String>,
    pub z_algebra_ok: bool,
    pub z_span_ok: bool,
    pub circuits: u64,
    /// Smallest `(h, r)` over layers, lexicographically.
    pub min_layered: (usize, usize),
    /// Smallest `(h, r)` over consecutive gates, lexicographically.
    pub min_consecutive: (usize, usize),
    pub example_ordinal: u64,
    pub example: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchSummary {
    /// Raw circuit count including the empty circuit.
    pub raw_circuits: u64,
    pub circuits_examined: u64,
    pub duplicates_skipped: u64,
    pub preserving_count: u64,
    /// Preserving circuits with a bound strictly below the distance.
    pub forbidden_regime_count: u64,
    /// Preserving circuits leaving the Z algebra, in any regime.
    pub z_algebra_violations: u64,
    /// Preserving circuits leaving the Z algebra inside the forbidden
    /// regime. Nonzero would falsify the no-go bound.
    pub z_algebra_violations_below_bound: u64,
    pub first_counterexample: Option<u64>,
    pub catalogue: Vec<CatalogueEntry>,
}

/// Outcome of evaluating one circuit.
#[derive(Clone, Debug)]
struct Record {
    ordinal: u64,
    unitary: Option<u64>,
    preserves: bool,
    forbidden: bool,
    z_ok: bool,
    z_span_ok: bool,
    consistent: bool,
    layered: (usize, usize),
    consecutive: (usize, usize),
    action: Option<(u64, Option<String>)>,
    text: String,
}

fn evaluate(
    circ: &Circuit,
    ordinal: u64,
    unitary: Option<u64>,
    layout: &CodeblockLayout,
    tol: f64,
) -> Result<Record> {
    let v = theorem_witness(circ, layout, tol)?;
    let action = if v.preserves {
        let act = logical_action(circ, layout, layout, tol)?;
        Some((fingerprint(&act.u_l), label_action(&act.u_l, tol)))
    } else {
        None
    };
    Ok(Record {
        ordinal,
        unitary,
        preserves: v.preserves,
        forbidden: v.in_forbidden_regime(),
        z_ok: !v.violates_z_algebra(),
        z_span_ok: v.z_span_ok,
        consistent: v.consistent,
        layered: (v.h_layered, v.r_layered),
        consecutive: (v.h_consecutive, v.r_consecutive),
        action,
        text: circ.to_string(),
    })
}

/// Evaluates every circuit whose first placement is `first`, skipping
/// unitaries already seen in this partition when deduplicating.
fn run_partition(
    spec: &EnumerationSpec,
    placed: &[Gate],
    first: usize,
    layout: &CodeblockLayout,
    tol: f64,
) -> Result<Vec<Record>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for len in 1..=spec.max_gates {
        let mut odo = Odometer::new(first, len, placed.len());
        while let Some(digits) = odo.next() {
            let circ = build(spec.n_total, placed, &digits)?;
            let unitary = if spec.dedup {
                let fp = fingerprint(&circ.unitary()?);
                if !seen.insert(fp) {
                    continue;
                }
                Some(fp)
            } else {
                None
            };
            let ordinal = ordinal_of(placed.len(), &digits) as u64;
            out.push(evaluate(&circ, ordinal, unitary, layout, tol)?);
        }
    }
    Ok(out)
}

/// Runs the search and tallies the results without failing on
/// counterexamples. `jobs = 0` uses the default thread pool.
pub fn search(spec: &EnumerationSpec, layout: &CodeblockLayout, tol: f64, jobs: usize) -> Result<SearchSummary> {
    if layout.n_total() != spec.n_total {
        return Err(Error::DimensionMismatch {
            expected: spec.n_total,
            found: layout.n_total(),
        });
    }
    let raw = spec.check_budget()? as u64 + 1;
    let placed = placements(spec)?;
    let empty = Circuit::empty(spec.n_total);
    let empty_fp = if spec.dedup { Some(fingerprint(&empty.unitary()?)) } else { None };
    let mut records = vec![evaluate(&empty, 0, empty_fp, layout, tol)?];

    let work = |first: usize| run_partition(spec, &placed, first, layout, tol);
    let parts: Vec<Result<Vec<Record>>> = if spec.max_gates == 0 {
        Vec::new()
    } else if jobs == 1 {
        (0..placed.len()).map(work).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
        pool.install(|| (0..placed.len()).into_par_iter().map(work).collect())
    };
    for part in parts {
        records.extend(part?);
    }
    records.sort_by_key(|r| r.ordinal);
    if spec.dedup {
        let mut seen = HashSet::new();
        records.retain(|r| seen.insert(r.unitary.expect("fingerprinted when deduplicating")));
    }
    Ok(summarize(raw, records))
}

fn summarize(raw: u64, records: Vec<Record>) -> SearchSummary {
    let mut summary = SearchSummary {
        raw_circuits: raw,
        circuits_examined: records.len() as u64,
        duplicates_skipped: raw - records.len() as u64,
        preserving_count: 0,
        forbidden_regime_count: 0,
        z_algebra_violations: 0,
        z_algebra_violations_below_bound: 0,
        first_counterexample: None,
        catalogue: Vec::new(),
    };
    let mut catalogue: BTreeMap<u64, CatalogueEntry> = BTreeMap::new();
    for r in records {
        if !r.preserves {
            continue;
        }
        summary.preserving_count += 1;
        summary.forbidden_regime_count += r.forbidden as u64;
        summary.z_algebra_violations += (!r.z_ok) as u64;
        if !r.consistent {
            summary.z_algebra_violations_below_bound += 1;
            summary.first_counterexample.get_or_insert(r.ordinal);
        }
        let (fp, label) = r.action.expect("preserving circuits carry an action");
        let entry = catalogue.entry(fp).or_insert_with(|| CatalogueEntry {
            fingerprint: format!("{fp:016x}"),
            label,
            z_algebra_ok: r.z_ok,
            z_span_ok: r.z_span_ok,
            circuits: 0,
            min_layered: r.layered,
            min_consecutive: r.consecutive,
            example_ordinal: r.ordinal,
            example: r.text.clone(),
        });
        entry.circuits += 1;
        entry.min_layered = entry.min_layered.min(r.layered);
        entry.min_consecutive = entry.min_consecutive.min(r.consecutive);
    }
    summary.catalogue = catalogue.into_values().collect();
    summary
}

/// Exhaustive check of the no-go bound over the spec. Returns the summary,
/// or `CounterexampleFound` with the lowest-ordinal offending circuit.
pub fn brute_force_theorem(
    spec: &EnumerationSpec,
    layout: &CodeblockLayout,
    tol: f64,
    jobs: usize,
) -> Result<SearchSummary> {
    let summary = search(spec, layout, tol, jobs)?;
    match summary.first_counterexample {
        Some(ordinal) => Err(Error::CounterexampleFound {
            circuit: Box::new(circuit_at(spec, ordinal)?),
        }),
        None => Ok(summary),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub trials: usize,
    pub failures: usize,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Composes random pairs of Z-algebra-preserving actions and checks the
/// products. Every input must already preserve the Z algebra.
pub fn composition_closure_probe(
    actions: &[LogicalAction],
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<ClosureReport> {
    if actions.is_empty() {
        return Err(Error::Precondition("no actions to compose".into()));
    }
    for (i, a) in actions.iter().enumerate() {
        if !z_algebra_conjugation_check(a, tol)?.iter().all(|&ok| ok) {
            return Err(Error::Precondition(format!("action {i} does not preserve the Z algebra")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..trials {
        let a = &actions[rng.random_range(0..actions.len())];
        let b = &actions[rng.random_range(0..actions.len())];
        let ab = a.compose(b)?;
        if !z_algebra_conjugation_check(&ab, tol)?.iter().all(|&ok| ok) {
            failures += 1;
        }
    }
    Ok(ClosureReport { trials, failures })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::code::StabilizerCode;

    const TOL: f64 = 1e-9;

    fn rep3_layout(c: usize) -> CodeblockLayout {
        let rep3 = Arc::new(StabilizerCode::from_stabilizers(&["ZZI", "IZZ"]).unwrap());
        CodeblockLayout::repeated(rep3, c).unwrap()
    }

    #[test]
    fn placement_counts() {
        let spec = EnumerationSpec::new(vec![GateKind::X], 2, 1);
        assert_eq!(enumerate_circuits(&spec).unwrap().len(), 2);
        let spec = EnumerationSpec::new(vec![GateKind::Cnot], 2, 1);
        assert_eq!(enumerate_circuits(&spec).unwrap().len(), 2);
        let spec = EnumerationSpec::new(vec![GateKind::Cz, GateKind::Toffoli, GateKind::Ccz], 3, 1);
        // 3 CZ pairs, 3 Toffoli targets, 1 CCZ.
        assert_eq!(placements(&spec).unwrap().len(), 7);
        let mut capped = spec.clone();
        capped.max_support_per_gate = 2;
        assert_eq!(placements(&capped).unwrap().len(), 3);
    }

    #[test]
    fn templates_restrict_supports() {
        let spec = EnumerationSpec::new(vec![GateKind::Cnot, GateKind::X], 4, 1).with_supports(vec![vec![0, 2], vec![3]]);
        let names: Vec<String> = placements(&spec).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(names, vec!["CNOT[0, 2]", "CNOT[2, 0]", "X[3]"]);
    }

    #[test]
    fn ordinals_round_trip() {
        let spec = EnumerationSpec::new(vec![GateKind::X, GateKind::H], 2, 3).with_dedup(false);
        let placed = placements(&spec).unwrap();
        assert_eq!(placed.len(), 4);
        assert_eq!(ordinal_of(4, &[0]), 1);
        assert_eq!(ordinal_of(4, &[3]), 4);
        assert_eq!(ordinal_of(4, &[0, 0]), 5);
        assert_eq!(ordinal_of(4, &[1, 2]), 11);
        assert_eq!(ordinal_of(4, &[0, 0, 0]), 21);
        let all = enumerate_circuits(&spec).unwrap();
        assert_eq!(all.len(), 4 + 16 + 64);
        for (i, c) in all.iter().enumerate() {
            assert_eq!(&circuit_at(&spec, i as u64 + 1).unwrap(), c);
        }
        assert!(circuit_at(&spec, 85).is_err());
    }

    #[test]
    fn budget_enforced() {
        let spec = EnumerationSpec::new(vec![GateKind::X], 3, 4).with_budget(100);
        assert!(matches!(enumerate_circuits(&spec), Err(Error::BudgetExceeded { count: 120, budget: 100 })));
    }

    #[test]
    fn rep3_single_gates() {
        let layout = rep3_layout(1);
        let gates = vec![GateKind::X, GateKind::Z, GateKind::S, GateKind::H, GateKind::Cnot, GateKind::Cz];
        let spec = EnumerationSpec::new(gates, 3, 1);
        let s = brute_force_theorem(&spec, &layout, TOL, 1).unwrap();
        assert_eq!(s.z_algebra_violations_below_bound, 0);
        assert!(s.preserving_count >= 4);
    }

    #[test]
    fn identity_only_when_no_gates() {
        let spec = EnumerationSpec::new(vec![GateKind::X], 3, 0);
        let s = brute_force_theorem(&spec, &rep3_layout(1), TOL, 1).unwrap();
        assert_eq!((s.raw_circuits, s.circuits_examined, s.preserving_count), (1, 1, 1));
        assert_eq!(s.catalogue.len(), 1);
        assert_eq!(s.catalogue[0].label.as_deref(), Some("I"));
    }

    #[test]
    fn jobs_do_not_change_summary() {
        let spec = EnumerationSpec::new(vec![GateKind::X, GateKind::H, GateKind::Cnot], 3, 2);
        let a = brute_force_theorem(&spec, &rep3_layout(1), TOL, 1).unwrap();
        let b = brute_force_theorem(&spec, &rep3_layout(1), TOL, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn closure_precondition() {
        let x = LogicalAction::from_unitary(GateKind::X.matrix()).unwrap();
        let z = LogicalAction::from_unitary(GateKind::Z.matrix()).unwrap();
        let h = LogicalAction::from_unitary(GateKind::H.matrix()).unwrap();
        assert!(composition_closure_probe(&[x.clone(), z.clone()], 50, 1, TOL).unwrap().passed());
        assert!(matches!(composition_closure_probe(&[x, h], 5, 1, TOL), Err(Error::Precondition(_))));
    }
}
