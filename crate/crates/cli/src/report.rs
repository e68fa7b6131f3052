use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use cgate_core::code::CodeDiagnostics;
use cgate_core::logical::{TheoremVerdict, XRuleReport};
use cgate_core::verifier::{EnumerationSpec, SearchSummary};
use cgate_core::{LogicalAction, SpreadResult};
use serde::{Deserialize, Serialize};

use crate::formats::{CircuitFile, InputDigest};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub input_digests: Vec<InputDigest>,
    /// Numerical tolerance used for every comparison in `results`.
    pub tolerance: f64,
    pub results: Results,
    /// Wall-clock milliseconds per phase.
    pub timings: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Results {
    Code(Box<CodeReport>),
    Circuit(Box<CircuitReport>),
    Search(Box<SearchReport>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeReport {
    pub name: Option<String>,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub labels: Option<Vec<String>>,
    pub stabilizers: Vec<String>,
    pub standard_form: Vec<String>,
    pub p: Vec<String>,
    pub generator: Vec<String>,
    pub perm: Vec<usize>,
    pub logical_z: Vec<String>,
    pub logical_x: Vec<String>,
    pub x_rule: XRuleReport,
    /// Absent when the dense isometry exceeds the qubit limit.
    pub isometry: Option<CodeDiagnostics>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpreadEntry {
    pub logical: usize,
    pub physical: usize,
    pub result: SpreadResult,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiasedReport {
    pub d_z: usize,
    pub d_x: usize,
    pub layered_ok: bool,
    pub consecutive_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitReport {
    pub circuit: String,
    pub n_qubits: usize,
    pub num_gates: usize,
    pub num_layers: usize,
    pub verdict: TheoremVerdict,
    pub label: Option<String>,
    pub action: Option<LogicalAction>,
    pub spreads: Vec<SpreadEntry>,
    pub biased: Option<BiasedReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub spec: EnumerationSpec,
    pub distance: usize,
    pub num_blocks: usize,
    pub summary: SearchSummary,
    /// First counterexample, replayable with `check-circuit`.
    pub counterexample: Option<CircuitFile>,
}

impl ReportDocument {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "cgate {} :: {} (tol {:e})", self.tool_version, self.command, self.tolerance);
        for d in &self.input_digests {
            let _ = writeln!(out, "  input {:<24} {} sha256:{}", d.role, d.path, &d.sha256[..16]);
        }
        match &self.results {
            Results::Code(r) => render_code(&mut out, r),
            Results::Circuit(r) => render_circuit(&mut out, r),
            Results::Search(r) => render_search(&mut out, r),
        }
        let total = self.timings.get("total").copied().unwrap_or_default();
        let _ = writeln!(out, "elapsed {total:.1} ms");
        out
    }
}

fn render_code(out: &mut String, r: &CodeReport) {
    let name = r.name.as_deref().unwrap_or("code");
    let _ = writeln!(out, "{name}: [{}, {}, {}]", r.n, r.k, r.d);
    let _ = writeln!(out, "stabilizers: {}", r.stabilizers.join(" "));
    let _ = writeln!(out, "standard form (columns {:?}):", r.perm);
    for row in &r.standard_form {
        let _ = writeln!(out, "  {row}");
    }
    let _ = writeln!(out, "generator:");
    for row in &r.generator {
        let _ = writeln!(out, "  {row}");
    }
    for (j, (z, x)) in r.logical_z.iter().zip(&r.logical_x).enumerate() {
        let _ = writeln!(out, "logical {j}: Z = {z}, X = {x}");
    }
    let mode = if r.x_rule.exhaustive { "exhaustive" } else { "sampled" };
    let _ = writeln!(
        out,
        "x-rule ({mode}, {} subsets): {} (max norm {:.3e})",
        r.x_rule.subsets_checked,
        if r.x_rule.passed() { "ok" } else { "VIOLATED" },
        r.x_rule.max_norm
    );
    match &r.isometry {
        Some(d) => {
            let _ = writeln!(
                out,
                "isometry: {} (max deviation {:.3e})",
                if d.passed() { "ok" } else { "FAILED" },
                d.max_deviation
            );
        }
        None => {
            let _ = writeln!(out, "isometry: skipped (too many qubits)");
        }
    }
}

fn render_circuit(out: &mut String, r: &CircuitReport) {
    let v = &r.verdict;
    let _ = writeln!(out, "circuit on {} qubits, {} gates, {} layers", r.n_qubits, r.num_gates, r.num_layers);
    let _ = writeln!(out, "  {}", r.circuit);
    if !v.preserves {
        let _ = writeln!(out, "does not preserve codespace (residual {:.3e})", v.residual);
    } else {
        let label = r.label.as_deref().unwrap_or("unnamed unitary");
        let _ = writeln!(out, "preserves codespace; logical action {label}");
        let flags: Vec<&str> = v.z_algebra_ok.iter().map(|&ok| if ok { "kept" } else { "LEFT" }).collect();
        let _ = writeln!(out, "Z algebra per logical qubit: [{}]; Z span {}", flags.join(", "), v.z_span_ok);
    }
    let _ = writeln!(
        out,
        "layered: h={} r={} c={} bound={}{}",
        v.h_layered,
        v.r_layered,
        v.c,
        v.layered_bound.value,
        if v.layered_bound.saturated { "+" } else { "" }
    );
    let _ = writeln!(
        out,
        "consecutive: h={} r={} bound={}{}",
        v.h_consecutive,
        v.r_consecutive,
        v.consecutive_bound.value,
        if v.consecutive_bound.saturated { "+" } else { "" }
    );
    let _ = writeln!(out, "distance {}; {}", v.d, if v.consistent { "consistent" } else { "COUNTEREXAMPLE" });
    for s in &r.spreads {
        let _ = writeln!(
            out,
            "  Z on logical {} (qubit {}): support {:?}, block sizes {:?}",
            s.logical, s.physical, s.result.support, s.result.sizes
        );
    }
    if let Some(b) = &r.biased {
        let _ = writeln!(
            out,
            "biased noise d_z={} d_x={}: layered {}, consecutive {}",
            b.d_z, b.d_x, b.layered_ok, b.consecutive_ok
        );
    }
}

fn render_search(out: &mut String, r: &SearchReport) {
    let s = &r.summary;
    let _ = writeln!(
        out,
        "search: {} gates, up to {} per circuit, {} blocks, distance {}",
        r.spec.gate_set.len(),
        r.spec.max_gates,
        r.num_blocks,
        r.distance
    );
    let _ = writeln!(
        out,
        "circuits {} raw, {} examined, {} duplicates",
        s.raw_circuits, s.circuits_examined, s.duplicates_skipped
    );
    let _ = writeln!(
        out,
        "preserving {}, forbidden regime {}, Z-algebra violations {} ({} below bound)",
        s.preserving_count, s.forbidden_regime_count, s.z_algebra_violations, s.z_algebra_violations_below_bound
    );
    for e in &s.catalogue {
        let _ = writeln!(
            out,
            "  {:<10} z_ok={:<5} circuits={:<5} layered(h,r)={:?} consecutive(h,r)={:?} e.g. {}",
            e.label.as_deref().unwrap_or("?"),
            e.z_algebra_ok,
            e.circuits,
            e.min_layered,
            e.min_consecutive,
            e.example
        );
    }
    match s.first_counterexample {
        Some(o) => {
            let _ = writeln!(out, "COUNTEREXAMPLE at ordinal {o}");
        }
        None => {
            let _ = writeln!(out, "no counterexample");
        }
    }
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("cannot write in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("cannot replace {}", path.display()))?;
    Ok(())
}
