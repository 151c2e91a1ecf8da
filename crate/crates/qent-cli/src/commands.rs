//! Subcommand implementations: each builds a [`Report`].

use std::path::Path;

use serde_json::{json, Value};

use qent_core::classify::{
    classify_slocc_3q_detailed, enumerate_splits, separability_report, tensor_rank_bounds,
};
use qent_core::linalg::{vdot, CMatrix};
use qent_core::measures::{
    concurrence_2q, entropy_of_entanglement, geometric_measure, global_entanglement,
    localizable_entanglement, relative_entropy_of_entanglement_ub, schmidt_measure, tangle,
};
use qent_core::metrology::{
    ghz_limit, optimal_time_for_probe, optimize_probe, probe_uncertainty, quantum_fisher_information,
    ramsey_probability, shot_noise_limit, OptimizeBudget, RamseyConfig, UncertaintyReport,
};
use qent_core::normal_form::{acin_normal_form, schmidt_decompose};
use qent_core::stabilizer::{graph_generators, stabilizer_state, StabilizerGroup};
use qent_core::states::{PureState, Split};
use qent_core::witness::{evaluate, ghz_witness, pauli_decompose, w_witness, Witness};

use crate::formats::{
    builtin_state, digest_file, load_graph, load_state, state_to_json, write_state, LoadedState,
};
use crate::report::{Report, RunDefaults};
use crate::{Command, MetrologyCommand, StateInput};

pub fn dispatch(command: &Command, defaults: RunDefaults) -> Result<Report, String> {
    match command {
        Command::Classify(input) => classify(input, defaults),
        Command::Measure { input, measure, all, pair, grid } => {
            measure_cmd(input, measure, *all, pair.as_deref(), *grid, defaults)
        }
        Command::Witness { input, which, decompose } => {
            witness_cmd(input, which, *decompose, defaults)
        }
        Command::NormalForm(input) => normal_form_cmd(input, defaults),
        Command::Graph { file, state_out } => graph_cmd(file, state_out.as_deref(), defaults),
        Command::Stabilizer { generators, state_out } => {
            stabilizer_cmd(generators, state_out.as_deref(), defaults)
        }
        Command::Metrology { command } => metrology_cmd(command, defaults),
        Command::Splits { n } => splits_cmd(*n, defaults),
    }
}

/* Input handling *************************************************************/

fn resolve_state(input: &StateInput, report: &mut Report) -> Result<LoadedState, String> {
    match (&input.file, &input.builtin) {
        (Some(path), None) => {
            let state = load_state(path)?;
            report.input(&path.display().to_string(), digest_file(path)?);
            Ok(state)
        }
        (None, Some(name)) => {
            let state = builtin_state(name)?;
            report.input(&format!("builtin:{name}"), String::new());
            Ok(state)
        }
        (None, None) => Err("provide a state file or --builtin NAME".to_string()),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    }
}

fn require_pure(state: &LoadedState) -> Result<&PureState, String> {
    match state {
        LoadedState::Pure(s) => Ok(s),
        LoadedState::Mixed(_) => Err("this operation needs a pure state".to_string()),
    }
}

/* classify *******************************************************************/

fn classify(input: &StateInput, defaults: RunDefaults) -> Result<Report, String> {
    let mut report = Report::new("classify", defaults);
    let state = resolve_state(input, &mut report)?;
    report.push("n_qubits", json!(state.n_qubits()));
    report.push("kind", json!(state.kind()));

    if let LoadedState::Pure(pure) = &state {
        if pure.n_qubits() == 3 {
            let detail = classify_slocc_3q_detailed(pure).map_err(|e| e.to_string())?;
            report.push("slocc_class", json!(detail.class.label()));
            report.push("local_ranks", json!(detail.local_ranks));
            report.push("tangle", json!(detail.tangle));
            if detail.tangle_boundary {
                report.flag(
                    "tangle within a decade of the 1e-8 class threshold: \
                     W/GHZ distinction is tolerance-boundary",
                );
            }
            let bounds = tensor_rank_bounds(pure).map_err(|e| e.to_string())?;
            report.push("tensor_rank", json!(bounds.exact));
            return Ok(report);
        }
    }

    // mixed input (or pure input away from three qubits): separability report
    let rho = state.density();
    let sep = separability_report(&rho).map_err(|e| e.to_string())?;
    let verdicts: Vec<Value> = sep
        .entries
        .iter()
        .map(|e| {
            json!({
                "split": e.split.label(),
                "verdict": match e.verdict {
                    qent_core::classify::SplitVerdict::CertifiedInseparable =>
                        "certified_inseparable",
                    qent_core::classify::SplitVerdict::ConsistentWithSeparable =>
                        "consistent_with_separable",
                },
                "npt_evidence": e.evidence.as_ref().map(|ev| json!({
                    "transposed_block": ev.transposed_block,
                    "min_eigenvalue": ev.min_eigenvalue,
                })),
            })
        })
        .collect();
    report.push("split_verdicts", Value::Array(verdicts));
    report.push("hierarchy", json!(sep.hierarchy.label()));
    if let Some(g) = sep.ghz_witness_value {
        report.push("ghz_witness_value", json!(g));
    }
    if let Some(w) = sep.w_witness_value {
        report.push("w_witness_value", json!(w));
    }
    report.flag("verdicts are sufficient conditions only: separability is never certified");
    Ok(report)
}

/* measure ********************************************************************/

fn measure_cmd(
    input: &StateInput,
    selected: &[String],
    all: bool,
    pair: Option<&[usize]>,
    grid: usize,
    defaults: RunDefaults,
) -> Result<Report, String> {
    let mut report = Report::new("measure", defaults);
    let state = resolve_state(input, &mut report)?;
    let wants = |name: &str| -> bool {
        if all || selected.is_empty() {
            return true;
        }
        selected.iter().any(|s| s == name)
    };
    report.push("n_qubits", json!(state.n_qubits()));
    report.push("kind", json!(state.kind()));

    match &state {
        LoadedState::Pure(pure) => {
            let n = pure.n_qubits();
            if wants("entropy") && n >= 2 {
                let split = Split::bipartition(n, &[1]).map_err(|e| e.to_string())?;
                let value = entropy_of_entanglement(pure, &split).map_err(|e| e.to_string())?;
                report.push(
                    "entropy_of_entanglement",
                    json!({"split": split.label(), "bits": value}),
                );
            }
            if wants("schmidt") && n <= 6 {
                let sm = schmidt_measure(pure).map_err(|e| e.to_string())?;
                report.push(
                    "schmidt_measure",
                    json!({
                        "lower_bits": sm.lower_bits,
                        "upper_bits": sm.upper_bits,
                        "exact_bits": sm.exact_bits,
                    }),
                );
                if sm.budget_exhausted {
                    report.flag(
                        "schmidt measure: rank-fit budget exhausted, upper bound is trivial",
                    );
                }
            }
            if wants("global") && n >= 2 {
                report.push("global_entanglement", json!(global_entanglement(pure).map_err(|e| e.to_string())?));
            }
            if wants("geometric") && n <= 6 {
                let g = geometric_measure(pure, defaults.restarts, defaults.seed)
                    .map_err(|e| e.to_string())?;
                report.push(
                    "geometric_measure",
                    json!({"distance": g.distance, "overlap_sq": g.overlap_sq}),
                );
                if !g.converged {
                    report.flag("geometric measure: non-convergence within the sweep budget");
                }
            }
            if wants("tangle") && n == 3 {
                report.push("tangle", json!(tangle(pure).map_err(|e| e.to_string())?));
            }
            if wants("localizable") && n <= 4 && n >= 2 {
                let (a, b) = match pair {
                    Some(&[a, b]) => (a, b),
                    _ => (n - 1, n),
                };
                let le = localizable_entanglement(pure, (a, b), grid).map_err(|e| e.to_string())?;
                report.push(
                    "localizable_entanglement",
                    json!({"pair": [a, b], "grid": grid, "value": le}),
                );
            }
            // opt-in for pure input (runs on the projector)
            if selected.iter().any(|s| s == "ree") && n <= 3 {
                push_ree(&mut report, &pure.projector(), defaults)?;
            }
        }
        LoadedState::Mixed(rho) => {
            if wants("concurrence") && rho.n_qubits() == 2 {
                report.push("concurrence", json!(concurrence_2q(rho).map_err(|e| e.to_string())?));
            }
            if wants("ree") && rho.n_qubits() <= 3 {
                push_ree(&mut report, rho, defaults)?;
            }
        }
    }
    if report.results.len() <= 2 {
        report.flag("no applicable measure for this input; see --help for the selection flags");
    }
    Ok(report)
}

fn push_ree(
    report: &mut Report,
    rho: &qent_core::states::DensityOperator,
    defaults: RunDefaults,
) -> Result<(), String> {
    let k = rho.dim();
    let restarts = defaults.restarts.clamp(1, 8);
    let r = relative_entropy_of_entanglement_ub(rho, k, restarts, defaults.seed)
        .map_err(|e| e.to_string())?;
    report.push(
        "relative_entropy_upper_bound",
        json!({"bits": r.value_bits, "components": k, "certified_gap": r.converged}),
    );
    if !r.converged {
        report.flag(
            "relative entropy bound: non-convergence of the duality gap; \
             value is still a valid upper bound",
        );
    }
    Ok(())
}

/* witness ********************************************************************/

fn witness_cmd(
    input: &StateInput,
    which: &str,
    decompose: bool,
    defaults: RunDefaults,
) -> Result<Report, String> {
    let mut report = Report::new("witness", defaults);
    let state = resolve_state(input, &mut report)?;
    let witness: Witness = match which {
        "ghz" => ghz_witness(),
        "w" => w_witness(),
        other => return Err(format!("unknown witness {other:?}; available: ghz, w")),
    };
    if state.n_qubits() != 3 {
        return Err("the shipped witnesses act on three qubits".to_string());
    }
    let rho = state.density();
    let value = evaluate(&witness, &rho).map_err(|e| e.to_string())?;
    report.push("witness", json!(witness.target_class()));
    report.push("expectation_value", json!(value));
    report.push(
        "interpretation",
        json!(if value < -defaults.tol {
            format!("negative: state certified outside the {} class", match which {
                "ghz" => "W",
                _ => "biseparable",
            })
        } else {
            "non-negative: no certification from this witness".to_string()
        }),
    );
    if decompose {
        let d = pauli_decompose(&witness);
        let terms: Vec<Value> = d
            .terms
            .iter()
            .map(|t| json!({"coefficient": t.coefficient, "labels": t.labels}))
            .collect();
        report.push("pauli_terms", Value::Array(terms));
        report.push("n_terms", json!(d.n_terms()));
    }
    Ok(report)
}

/* normal-form ****************************************************************/

fn matrix_to_json(m: &CMatrix) -> Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect();
    json!(rows)
}

fn normal_form_cmd(input: &StateInput, defaults: RunDefaults) -> Result<Report, String> {
    let mut report = Report::new("normal-form", defaults);
    let state = resolve_state(input, &mut report)?;
    let pure = require_pure(&state)?;
    match pure.n_qubits() {
        3 => {
            let form = acin_normal_form(pure).map_err(|e| e.to_string())?;
            report.push("lambdas", json!(form.lambdas));
            report.push("phi", json!(form.phi));
            report.push(
                "unitaries",
                json!([
                    matrix_to_json(&form.local_unitaries[0]),
                    matrix_to_json(&form.local_unitaries[1]),
                    matrix_to_json(&form.local_unitaries[2]),
                ]),
            );
            report.push("reconstruction_fidelity", json!(form.reconstruction_fidelity(pure)));
            if form.lambdas[4].abs() < 1e-10 && form.phi.abs() < 1e-10 {
                report.push("w_class_form", json!(true));
            }
        }
        2 => {
            let split = Split::bipartition(2, &[1]).map_err(|e| e.to_string())?;
            let s = schmidt_decompose(pure, &split).map_err(|e| e.to_string())?;
            report.push("schmidt_coefficients", json!(s.coefficients));
            report.push("theta", json!(s.theta));
        }
        _ => return Err("normal forms are available for two- and three-qubit pure states".to_string()),
    }
    Ok(report)
}

/* graph and stabilizer *******************************************************/

fn emit_stabilizer_state(
    report: &mut Report,
    group: &StabilizerGroup,
    state_out: Option<&Path>,
    tol: f64,
) -> Result<(), String> {
    let state = stabilizer_state(group).map_err(|e| e.to_string())?;
    let labels: Vec<String> = group.generators().iter().map(|g| g.label()).collect();
    report.push("generators", json!(labels));

    // verify every generator stabilizes the output within the CLI tolerance
    let mut worst = 0.0f64;
    for g in group.generators() {
        let gv = g.apply(state.amplitudes());
        let overlap = vdot(state.amplitudes(), &gv).re;
        worst = worst.max((overlap - 1.0).abs());
    }
    report.push("stabilization_deviation", json!(worst));
    if worst > tol {
        report.flag(format!("stabilization deviation {worst:e} exceeds --tol"));
    }

    let loaded = LoadedState::Pure(state);
    report.push("state", state_to_json(&loaded));
    if let Some(path) = state_out {
        write_state(path, &loaded)?;
        report.push("state_out", json!(path.display().to_string()));
    }
    Ok(())
}

fn graph_cmd(file: &Path, state_out: Option<&Path>, defaults: RunDefaults) -> Result<Report, String> {
    let mut report = Report::new("graph", defaults);
    let graph = load_graph(file)?;
    report.input(&file.display().to_string(), digest_file(file)?);
    report.push("n_vertices", json!(graph.n_vertices()));
    report.push("edges", json!(graph.edges()));
    report.push("connected", json!(graph.is_connected()));
    let group = graph_generators(&graph);
    emit_stabilizer_state(&mut report, &group, state_out, defaults.tol)?;
    Ok(report)
}

fn stabilizer_cmd(
    generators: &str,
    state_out: Option<&Path>,
    defaults: RunDefaults,
) -> Result<Report, String> {
    let mut report = Report::new("stabilizer", defaults);
    let group = StabilizerGroup::parse(generators).map_err(|e| e.to_string())?;
    emit_stabilizer_state(&mut report, &group, state_out, defaults.tol)?;
    Ok(report)
}

/* metrology ******************************************************************/

fn uncertainty_json(r: &UncertaintyReport) -> Value {
    json!({
        "delta_omega0": r.delta_omega0,
        "fisher_information": r.fisher_information,
        "scheme": r.scheme,
        "t": r.resources.t,
        "total_time": r.resources.total_time,
        "gamma": r.resources.gamma,
        "n": r.resources.n,
    })
}

fn metrology_cmd(command: &MetrologyCommand, defaults: RunDefaults) -> Result<Report, String> {
    let mut report = Report::new("metrology", defaults);
    match command {
        MetrologyCommand::Limits { n, t, total_time } => {
            let cfg = RamseyConfig::new(0.0, *t, *total_time, 0.0, *n).map_err(|e| e.to_string())?;
            report.push("shot_noise", uncertainty_json(&shot_noise_limit(&cfg)));
            report.push("ghz", uncertainty_json(&ghz_limit(&cfg)));
            report.push(
                "probability_at_half_fringe",
                json!(ramsey_probability(&cfg, core::f64::consts::FRAC_PI_2 / cfg.t)),
            );
        }
        MetrologyCommand::Qfi { n, t, total_time, gamma, probe, optimize_t } => {
            let cfg =
                RamseyConfig::new(0.0, *t, *total_time, *gamma, *n).map_err(|e| e.to_string())?;
            let probe_state = match probe.as_str() {
                "plus" => PureState::plus(*n),
                "ghz" => PureState::ghz(*n),
                other => return Err(format!("unknown probe {other:?}; available: plus, ghz")),
            };
            report.push("fisher_information", json!(quantum_fisher_information(&probe_state, *t, *gamma)));
            report.push("fixed_t", uncertainty_json(&probe_uncertainty(&probe_state, &cfg, probe)));
            if *optimize_t {
                let (t_star, best) = optimal_time_for_probe(&probe_state, &cfg, 80);
                report.push("optimal_t", json!(t_star));
                report.push("optimal", uncertainty_json(&best));
            }
        }
        MetrologyCommand::Optimize { total_time, gamma, grid } => {
            if *gamma <= 0.0 {
                report.flag(
                    "gamma = 0: the optimum degenerates to the GHZ probe at t = total-time",
                );
            }
            let cfg = RamseyConfig::new(0.0, (*total_time * 1e-3).min(1.0), *total_time, *gamma, 4)
                .map_err(|e| e.to_string())?;
            let budget = OptimizeBudget { grid: *grid, ..OptimizeBudget::default() };
            let opt = optimize_probe(&cfg, budget).map_err(|e| e.to_string())?;
            report.push(
                "family",
                json!({
                    "lambda0": opt.family.lambda0,
                    "lambda1": opt.family.lambda1,
                    "lambda2": opt.family.lambda2,
                }),
            );
            report.push("optimized", uncertainty_json(&opt.report));
            report.push("baseline", uncertainty_json(&opt.baseline));
            report.push("improvement", json!(opt.improvement));
            report.push("improvement_percent", json!(opt.improvement * 100.0));
            if !opt.converged {
                report.flag("probe optimization: non-convergence of the pattern search");
            }
        }
        MetrologyCommand::Sweep { n, total_time, gamma, t_min, t_max, points } => {
            if !(t_min > &0.0) || t_min >= t_max || *points < 2 {
                return Err("need 0 < t-min < t-max and at least 2 points".to_string());
            }
            let mut rows: Vec<Value> = Vec::new();
            let mut csv = String::from("t,delta_omega0,scheme\n");
            for k in 0..*points {
                let t = t_min * (t_max / t_min).powf(k as f64 / (*points - 1) as f64);
                let t = t.min(*total_time);
                let cfg = RamseyConfig::new(0.0, t, *total_time, *gamma, *n)
                    .map_err(|e| e.to_string())?;
                for (scheme, probe) in
                    [("shot-noise", PureState::plus(*n)), ("ghz", PureState::ghz(*n))]
                {
                    let r = probe_uncertainty(&probe, &cfg, scheme);
                    csv.push_str(&format!("{t},{},{scheme}\n", r.delta_omega0));
                    rows.push(json!({"t": t, "delta_omega0": r.delta_omega0, "scheme": scheme}));
                }
            }
            report.push("csv", json!(csv));
            report.push("rows", Value::Array(rows));
        }
    }
    Ok(report)
}

/* splits *********************************************************************/

fn splits_cmd(n: usize, defaults: RunDefaults) -> Result<Report, String> {
    let mut report = Report::new("splits", defaults);
    let splits = enumerate_splits(n).map_err(|e| e.to_string())?;
    let labels: Vec<String> = splits.iter().map(|s| s.label()).collect();
    report.push("n_parties", json!(n));
    report.push("count", json!(labels.len()));
    report.push("splits", json!(labels));
    Ok(report)
}
