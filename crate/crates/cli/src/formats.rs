//! JSON input documents: codes, layouts, circuits and search specs.

use std::collections::{BTreeSet, HashMap};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use cgate_core::dense::serde_cmatrix;
use cgate_core::f2linalg::rank;
use cgate_core::verifier::{EnumerationSpec, DEFAULT_BUDGET};
use cgate_core::{Circuit, CodeblockLayout, Error as CoreError, F2Matrix, Gate, GateKind, PauliString, StabilizerCode};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub stabilizers: Vec<String>,
    /// Declared distance, cross-checked against the computed one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockRecord {
    /// Code file path, relative to the layout file.
    pub code: String,
    /// Half-open qubit range `[start, end)`.
    pub range: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayoutFile {
    pub blocks: Vec<BlockRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gate: Option<String>,
    /// Row-major `[re, im]` entries.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layer: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitFile {
    pub n_qubits: usize,
    pub gates: Vec<GateRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub gate_set: Vec<String>,
    /// Layout file path, relative to the spec file.
    pub layout: String,
    pub max_gates: usize,
    #[serde(default)]
    pub max_support_per_gate: Option<usize>,
    #[serde(default)]
    pub supports: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub dedup: Option<bool>,
    #[serde(default)]
    pub budget: Option<u64>,
}

/// SHA-256 of one input file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

/// Reads input files and records their digests.
#[derive(Default)]
pub struct Inputs {
    digests: Vec<InputDigest>,
    codes: HashMap<PathBuf, Arc<StabilizerCode>>,
}

impl Inputs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn into_digests(self) -> Vec<InputDigest> {
        self.digests
    }

    pub fn read(&mut self, role: &str, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
        let sha256 = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
        self.digests.push(InputDigest {
            role: role.to_owned(),
            path: path.display().to_string(),
            sha256,
        });
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    fn parse<T: for<'de> Deserialize<'de>>(&mut self, role: &str, path: &Path) -> Result<T> {
        let text = self.read(role, path)?;
        serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
    }

    pub fn load_code(&mut self, role: &str, path: &Path) -> Result<(CodeFile, StabilizerCode)> {
        let file: CodeFile = self.parse(role, path)?;
        let code = build_code(&file).with_context(|| format!("invalid code in {}", path.display()))?;
        Ok((file, code))
    }

    pub fn load_layout(&mut self, role: &str, path: &Path) -> Result<CodeblockLayout> {
        let file: LayoutFile = self.parse(role, path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        let mut blocks = Vec::with_capacity(file.blocks.len());
        for (i, b) in file.blocks.iter().enumerate() {
            let code_path = base.join(&b.code);
            let key = code_path.canonicalize().unwrap_or_else(|_| code_path.clone());
            let code = match self.codes.get(&key) {
                Some(c) => c.clone(),
                None => {
                    let (_, c) = self.load_code(&format!("{role}.block{i}.code"), &code_path)?;
                    let c = Arc::new(c);
                    self.codes.insert(key, c.clone());
                    c
                }
            };
            let [start, end] = b.range;
            if end < start || end - start != code.n() {
                bail!(
                    "block {i} range [{start}, {end}) does not match the {}-qubit code {}",
                    code.n(),
                    b.code
                );
            }
            blocks.push((code, start..end));
        }
        CodeblockLayout::new(blocks).with_context(|| format!("invalid layout in {}", path.display()))
    }

    pub fn load_circuit(&mut self, role: &str, path: &Path) -> Result<Circuit> {
        let file: CircuitFile = self.parse(role, path)?;
        build_circuit(&file).with_context(|| format!("invalid circuit in {}", path.display()))
    }

    pub fn load_spec(&mut self, role: &str, path: &Path) -> Result<(EnumerationSpec, CodeblockLayout)> {
        let file: SpecFile = self.parse(role, path)?;
        let layout_path = path.parent().unwrap_or(Path::new(".")).join(&file.layout);
        let layout = self.load_layout(&format!("{role}.layout"), &layout_path)?;
        let gate_set = file
            .gate_set
            .iter()
            .map(|g| g.parse::<GateKind>().map_err(|e| anyhow!("gate {g:?}: {e}")))
            .collect::<Result<Vec<_>>>()?;
        let mut spec = EnumerationSpec::new(gate_set, layout.n_total(), file.max_gates)
            .with_dedup(file.dedup.unwrap_or(true))
            .with_budget(file.budget.unwrap_or(DEFAULT_BUDGET));
        if let Some(m) = file.max_support_per_gate {
            spec.max_support_per_gate = m;
        }
        if let Some(s) = file.supports {
            spec = spec.with_supports(s);
        }
        Ok((spec, layout))
    }
}

/// Index of the first stabilizer that is a product of earlier ones.
fn first_dependent(stabilizers: &[PauliString]) -> Option<usize> {
    let rows: Vec<_> = stabilizers.iter().map(|s| s.z_bits().clone()).collect();
    let n = stabilizers.first()?.num_qubits();
    (0..rows.len()).find(|&i| {
        let m = F2Matrix::from_rows(n, rows[..=i].to_vec()).expect("equal lengths");
        rank(&m) <= i
    })
}

pub fn build_code(file: &CodeFile) -> Result<StabilizerCode> {
    let code = match StabilizerCode::from_stabilizers(&file.stabilizers) {
        Ok(code) => code,
        Err(e @ CoreError::RankDeficient { .. }) => {
            let paulis: Vec<PauliString> = file.stabilizers.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
            let culprit = first_dependent(&paulis)
                .map(|i| format!("; stabilizer {i} ({}) is a product of earlier ones", file.stabilizers[i]))
                .unwrap_or_default();
            bail!("{e}: stabilizer set [{}]{culprit}", file.stabilizers.join(", "));
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(d) = file.distance {
        if d != code.d() {
            bail!("declared distance {d} but the code has distance {}", code.d());
        }
    }
    if let Some(labels) = &file.labels {
        if labels.len() != code.n() {
            bail!("{} labels given for {} qubits", labels.len(), code.n());
        }
        if labels.iter().collect::<BTreeSet<_>>().len() != labels.len() {
            bail!("qubit labels must be distinct");
        }
    }
    Ok(code)
}

pub fn build_circuit(file: &CircuitFile) -> Result<Circuit> {
    let mut tagged = Vec::with_capacity(file.gates.len());
    for (i, rec) in file.gates.iter().enumerate() {
        let kind = match (&rec.gate, &rec.matrix) {
            (Some(name), None) => name.parse::<GateKind>().map_err(|e| anyhow!("gate {i}: {e}"))?,
            (None, Some(rows)) => {
                let m = serde_cmatrix::from_rows(rows).map_err(|e| anyhow!("gate {i}: {e}"))?;
                GateKind::unitary(m).with_context(|| format!("gate {i}"))?
            }
            _ => bail!("gate {i}: give exactly one of \"gate\" or \"matrix\""),
        };
        let gate = Gate::new(kind, rec.qubits.clone()).with_context(|| format!("gate {i}"))?;
        tagged.push((gate, rec.layer));
    }
    Ok(Circuit::from_tagged(file.n_qubits, tagged)?)
}

/// Circuit document that rebuilds `circ` with its layering.
pub fn circuit_to_file(circ: &Circuit) -> CircuitFile {
    let gates = circ
        .layers()
        .enumerate()
        .flat_map(|(layer, gates)| {
            gates.iter().map(move |g| {
                let (gate, matrix) = if g.kind().is_named() {
                    (Some(g.kind().name().to_owned()), None)
                } else {
                    (None, Some(serde_cmatrix::to_rows(&g.matrix())))
                };
                GateRecord {
                    gate,
                    matrix,
                    qubits: g.support().to_vec(),
                    layer: Some(layer),
                }
            })
        })
        .collect();
    CircuitFile {
        n_qubits: circ.n_total(),
        gates,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circuit_file_round_trip() {
        let text = r#"{"n_qubits": 3, "gates": [
            {"gate": "cnot", "qubits": [0, 1]},
            {"matrix": [[[1,0],[0,0]],[[0,0],[0,1]]], "qubits": [2]},
            {"gate": "H", "qubits": [0]}]}"#;
        let file: CircuitFile = serde_json::from_str(text).unwrap();
        let circ = build_circuit(&file).unwrap();
        assert_eq!(circ.num_layers(), 2);
        let again = build_circuit(&circuit_to_file(&circ)).unwrap();
        assert_eq!(circ.to_string(), again.to_string());
        assert!(cgate_core::dense::max_abs_diff(&circ.unitary().unwrap(), &again.unitary().unwrap()) < 1e-12);
    }

    #[test]
    fn gate_record_needs_one_source() {
        let file = CircuitFile {
            n_qubits: 1,
            gates: vec![GateRecord {
                gate: None,
                matrix: None,
                qubits: vec![0],
                layer: None,
            }],
        };
        assert!(build_circuit(&file).is_err());
    }

    #[test]
    fn dependent_stabilizer_named() {
        let file = CodeFile {
            name: None,
            stabilizers: vec!["ZZI".into(), "IZZ".into(), "ZIZ".into()],
            distance: None,
            labels: None,
        };
        let msg = format!("{:#}", build_code(&file).unwrap_err());
        assert!(msg.contains("stabilizer 2 (ZIZ)"), "{msg}");
    }

    #[test]
    fn declared_distance_checked() {
        let file = CodeFile {
            name: None,
            stabilizers: vec!["ZZI".into(), "IZZ".into()],
            distance: Some(2),
            labels: None,
        };
        assert!(build_code(&file).is_err());
    }
}
