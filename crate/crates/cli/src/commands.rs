use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Result};
use cgate_core::circuit::{biased_bound_ok, BoundMode, MAX_UNITARY_QUBITS};
use cgate_core::code::verify_isometry;
use cgate_core::logical::{
    analyze_circuit, x_rule_exhaustive, x_rule_sampled, X_RULE_EXHAUSTIVE_QUBITS,
    X_RULE_SAMPLES,
};
use cgate_core::verifier::{circuit_at, search};
use cgate_core::{Error as CoreError, F2Matrix};

use crate::formats::{circuit_to_file, Inputs};
use crate::report::{
    BiasedReport, CircuitReport, CodeReport, ReportDocument, Results, SearchReport, SpreadEntry, SCHEMA_VERSION,
};

#[derive(Clone, Debug)]
pub struct Options {
    pub tol: f64,
    pub max_qubits: usize,
    pub seed: u64,
    pub jobs: usize,
    pub d_z: Option<usize>,
    pub d_x: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            tol: cgate_core::DEFAULT_TOL,
            max_qubits: MAX_UNITARY_QUBITS,
            seed: 0,
            jobs: 0,
            d_z: None,
            d_x: None,
        }
    }
}

fn rows(m: &F2Matrix) -> Vec<String> {
    m.rows().iter().map(ToString::to_string).collect()
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn document(
    command: &str,
    inputs: Inputs,
    opts: &Options,
    results: Results,
    mut timings: BTreeMap<String, f64>,
    start: Instant,
) -> ReportDocument {
    timings.insert("total".into(), ms(start));
    ReportDocument {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        command: command.into(),
        input_digests: inputs.into_digests(),
        tolerance: opts.tol,
        results,
        timings,
    }
}

fn check_qubits(what: &'static str, n: usize, opts: &Options) -> Result<()> {
    if n > opts.max_qubits {
        return Err(CoreError::TooLarge {
            what,
            value: n,
            limit: opts.max_qubits,
        }
        .into());
    }
    Ok(())
}

pub fn analyze_code(path: &Path, opts: &Options) -> Result<ReportDocument> {
    let start = Instant::now();
    let mut timings = BTreeMap::new();
    let mut inputs = Inputs::new();
    let (file, code) = inputs.load_code("code", path)?;
    timings.insert("load".into(), ms(start));

    let t = Instant::now();
    let x_rule = if code.n() <= X_RULE_EXHAUSTIVE_QUBITS {
        x_rule_exhaustive(&code, opts.tol)?
    } else {
        x_rule_sampled(&code, X_RULE_SAMPLES, opts.seed)?
    };
    timings.insert("x_rule".into(), ms(t));

    let t = Instant::now();
    let isometry = if code.n() <= opts.max_qubits {
        Some(verify_isometry(&code, code.isometry_matrix()?, opts.tol)?)
    } else {
        None
    };
    timings.insert("isometry".into(), ms(t));

    let sf = code.standard_form();
    let report = CodeReport {
        name: file.name.clone(),
        n: code.n(),
        k: code.k(),
        d: code.d(),
        labels: file.labels.clone(),
        stabilizers: file.stabilizers.clone(),
        standard_form: rows(&sf.h_std),
        p: rows(&sf.p),
        generator: rows(code.g()),
        perm: code.perm().to_vec(),
        logical_z: (0..code.k())
            .map(|j| Ok(code.logical_z_physical(j)?.to_string()))
            .collect::<Result<_>>()?,
        logical_x: (0..code.k())
            .map(|j| Ok(code.logical_x_physical(j)?.to_string()))
            .collect::<Result<_>>()?,
        x_rule,
        isometry,
    };
    Ok(document(
        "analyze-code",
        inputs,
        opts,
        Results::Code(Box::new(report)),
        timings,
        start,
    ))
}

pub fn check_circuit(
    circuit: &Path,
    layout: &Path,
    dst_layout: Option<&Path>,
    opts: &Options,
) -> Result<ReportDocument> {
    let start = Instant::now();
    let mut timings = BTreeMap::new();
    let mut inputs = Inputs::new();
    let circ = inputs.load_circuit("circuit", circuit)?;
    let src = inputs.load_layout("layout", layout)?;
    let dst = match dst_layout {
        Some(p) => inputs.load_layout("dst_layout", p)?,
        None => src.clone(),
    };
    timings.insert("load".into(), ms(start));
    for (which, l) in [("layout", &src), ("destination layout", &dst)] {
        if l.n_total() != circ.n_total() {
            bail!("{which} covers {} qubits but the circuit has {}", l.n_total(), circ.n_total());
        }
    }
    check_qubits("circuit qubit count", circ.n_total(), opts)?;
    if opts.d_x.is_some() && opts.d_z.is_none() {
        bail!("--d-x needs --d-z");
    }

    let t = Instant::now();
    let analysis = analyze_circuit(&circ, &src, &dst, opts.tol)?;
    timings.insert("analysis".into(), ms(t));

    let v = &analysis.verdict;
    let spreads = analysis
        .spreads
        .into_iter()
        .enumerate()
        .map(|(j, result)| {
            Ok(SpreadEntry {
                logical: j,
                physical: src.logical_z_qubit(j)?,
                result,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let biased = opts.d_z.map(|d_z| {
        let d_x = opts.d_x.unwrap_or(v.d);
        BiasedReport {
            d_z,
            d_x,
            layered_ok: biased_bound_ok(d_z, d_x, BoundMode::Layered, v.c, v.r_layered, v.h_layered),
            consecutive_ok: biased_bound_ok(d_z, d_x, BoundMode::Consecutive, v.c, v.r_consecutive, v.h_consecutive),
        }
    });
    let report = CircuitReport {
        circuit: circ.to_string(),
        n_qubits: circ.n_total(),
        num_gates: circ.num_gates(),
        num_layers: circ.num_layers(),
        verdict: analysis.verdict,
        label: analysis.label,
        action: analysis.action,
        spreads,
        biased,
    };
    Ok(document(
        "check-circuit",
        inputs,
        opts,
        Results::Circuit(Box::new(report)),
        timings,
        start,
    ))
}

pub fn verify_theorem(spec_path: &Path, opts: &Options) -> Result<ReportDocument> {
    let start = Instant::now();
    let mut timings = BTreeMap::new();
    let mut inputs = Inputs::new();
    let (spec, layout) = inputs.load_spec("spec", spec_path)?;
    timings.insert("load".into(), ms(start));
    check_qubits("layout qubit count", layout.n_total(), opts)?;

    let t = Instant::now();
    let summary = search(&spec, &layout, opts.tol, opts.jobs)?;
    timings.insert("search".into(), ms(t));

    let counterexample = summary
        .first_counterexample
        .map(|o| circuit_at(&spec, o).map(|c| circuit_to_file(&c)))
        .transpose()?;
    let report = SearchReport {
        distance: layout.distance(),
        num_blocks: layout.num_blocks(),
        spec,
        summary,
        counterexample,
    };
    Ok(document(
        "verify-theorem",
        inputs,
        opts,
        Results::Search(Box::new(report)),
        timings,
        start,
    ))
}

/// True when the report shows a violation of the no-go bound.
pub fn has_counterexample(doc: &ReportDocument) -> bool {
    match &doc.results {
        Results::Code(_) => false,
        Results::Circuit(r) => !r.verdict.consistent,
        Results::Search(r) => r.summary.first_counterexample.is_some(),
    }
}
