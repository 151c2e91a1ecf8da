//! File formats: state files, graph files, and built-in states.
//!
//! State files are JSON objects
//! `{ "n_qubits": N, "kind": "pure", "amplitudes": [[re, im], ..] }` or
//! `{ "n_qubits": N, "kind": "mixed", "matrix": [[[re, im], ..], ..] }`
//! with amplitude index `sum_a b_a 2^(N-a)` (party 1 = most significant
//! bit). Norm/trace deviations beyond 1e-6 are rejected with a descriptive
//! error; smaller deviations are repaired by renormalization. Graph files
//! are `{ "n_vertices": N, "edges": [[a, b], ..] }` with 1-based vertices.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use qent_core::linalg::{CMatrix, C64};
use qent_core::stabilizer::Graph;
use qent_core::states::{DensityOperator, PureState};

/// Loose tolerance for accepting slightly denormalized input files.
pub const FILE_TOLERANCE: f64 = 1e-6;

/// A state loaded from a file or builtin: pure or mixed.
#[derive(Clone, Debug)]
pub enum LoadedState {
    Pure(PureState),
    Mixed(DensityOperator),
}

impl LoadedState {
    pub fn n_qubits(&self) -> usize {
        match self {
            LoadedState::Pure(s) => s.n_qubits(),
            LoadedState::Mixed(r) => r.n_qubits(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            LoadedState::Pure(_) => "pure",
            LoadedState::Mixed(_) => "mixed",
        }
    }

    /// Density operator view (projector for pure input).
    pub fn density(&self) -> DensityOperator {
        match self {
            LoadedState::Pure(s) => s.projector(),
            LoadedState::Mixed(r) => r.clone(),
        }
    }
}

#[derive(Deserialize, Serialize)]
struct StateFile {
    n_qubits: usize,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    amplitudes: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<[f64; 2]>>>,
}

/// SHA-256 digest of a file's bytes, hex encoded.
pub fn digest_file(path: &Path) -> Result<String, String> {
    let bytes = fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

pub fn load_state(path: &Path) -> Result<LoadedState, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_state(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse_state(text: &str) -> Result<LoadedState, String> {
    let file: StateFile =
        serde_json::from_str(text).map_err(|e| format!("not a valid state file: {e}"))?;
    let dim = 1usize
        .checked_shl(file.n_qubits as u32)
        .filter(|_| file.n_qubits >= 1 && file.n_qubits <= 12)
        .ok_or("n_qubits out of supported range 1..=12")?;
    match file.kind.as_str() {
        "pure" => {
            let amps = file.amplitudes.ok_or("pure state file needs an `amplitudes` array")?;
            if amps.len() != dim {
                return Err(format!("expected {dim} amplitudes, found {}", amps.len()));
            }
            let v: Vec<C64> = amps.iter().map(|[re, im]| C64::new(*re, *im)).collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > FILE_TOLERANCE {
                return Err(format!(
                    "state norm {norm} deviates from 1 beyond the {FILE_TOLERANCE:e} file tolerance"
                ));
            }
            PureState::from_unnormalized(file.n_qubits, v)
                .map(LoadedState::Pure)
                .map_err(|e| e.to_string())
        }
        "mixed" => {
            let rows = file.matrix.ok_or("mixed state file needs a `matrix` array")?;
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return Err(format!("expected a {dim}x{dim} matrix"));
            }
            let m = CMatrix::from_fn(dim, dim, |r, c| {
                C64::new(rows[r][c][0], rows[r][c][1])
            });
            let herm_dev = m.hermiticity_deviation();
            if herm_dev > FILE_TOLERANCE {
                return Err(format!(
                    "matrix deviates from Hermiticity by {herm_dev:e}, beyond the file tolerance"
                ));
            }
            let trace = m.trace().re;
            if (trace - 1.0).abs() > FILE_TOLERANCE {
                return Err(format!(
                    "matrix trace {trace} deviates from 1 beyond the file tolerance"
                ));
            }
            // repair the small deviations, then validate strictly
            let repaired = m.hermitize().scale_re(1.0 / trace);
            DensityOperator::new(file.n_qubits, repaired)
                .map(LoadedState::Mixed)
                .map_err(|e| e.to_string())
        }
        other => Err(format!("unknown state kind {other:?}; expected \"pure\" or \"mixed\"")),
    }
}

pub fn state_to_json(state: &LoadedState) -> serde_json::Value {
    match state {
        LoadedState::Pure(s) => serde_json::json!({
            "n_qubits": s.n_qubits(),
            "kind": "pure",
            "amplitudes": s.amplitudes().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        }),
        LoadedState::Mixed(r) => {
            let dim = r.dim();
            let rows: Vec<Vec<[f64; 2]>> = (0..dim)
                .map(|i| (0..dim).map(|j| {
                    let z = r.matrix()[(i, j)];
                    [z.re, z.im]
                }).collect())
                .collect();
            serde_json::json!({
                "n_qubits": r.n_qubits(),
                "kind": "mixed",
                "matrix": rows,
            })
        }
    }
}

pub fn write_state(path: &Path, state: &LoadedState) -> Result<(), String> {
    let text = serde_json::to_string_pretty(&state_to_json(state)).expect("state serializes");
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

#[derive(Deserialize)]
struct GraphFile {
    n_vertices: usize,
    edges: Vec<[usize; 2]>,
}

pub fn load_graph(path: &Path) -> Result<Graph, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse_graph(text: &str) -> Result<Graph, String> {
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| format!("not a valid graph file: {e}"))?;
    let edges: Vec<(usize, usize)> = file.edges.iter().map(|[a, b]| (*a, *b)).collect();
    Graph::new(file.n_vertices, &edges).map_err(|e| e.to_string())
}

/// Built-in named states for one-command reproduction of the standard
/// examples.
pub fn builtin_state(name: &str) -> Result<LoadedState, String> {
    match name {
        "ghz3" => Ok(LoadedState::Pure(PureState::ghz(3))),
        "ghz4" => Ok(LoadedState::Pure(PureState::ghz(4))),
        "w3" => Ok(LoadedState::Pure(PureState::w(3))),
        "w4" => Ok(LoadedState::Pure(PureState::w(4))),
        "bell" => Ok(LoadedState::Pure(PureState::bell_phi_plus())),
        "cluster4" => qent_core::stabilizer::graph_state(&Graph::linear(4))
            .map(LoadedState::Pure)
            .map_err(|e| e.to_string()),
        "mixed3" => Ok(LoadedState::Mixed(DensityOperator::maximally_mixed(3))),
        other => Err(format!(
            "unknown builtin {other:?}; available: ghz3, ghz4, w3, w4, bell, cluster4, mixed3"
        )),
    }
}
