//! Ramsey frequency estimation: the probability law, shot-noise and GHZ
//! limits, quantum Fisher information under independent dephasing, and
//! optimization over the permutation-symmetric four-qubit probe family.
//!
//! Bookkeeping: an experiment of total duration `T` is split into `T/t`
//! independent interrogations of length `t`, so an interrogation-level
//! Fisher information `F` yields `delta omega_0 = (F T / t)^{-1/2}`. For a
//! pure probe without dephasing `F = 4 t^2 Var(J_z)`, reproducing the
//! shot-noise limit `(N T t)^{-1/2}` for `|+>^N` and `(T t)^{-1/2}/N` for
//! the GHZ probe.

use alloc::string::{String, ToString};
use alloc::vec;

// float math through the trait; under test builds std's inherent
// methods shadow it
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

use crate::linalg::{eigh, CMatrix, C64, ZERO};
use crate::states::{DensityOperator, PureState};
use crate::{Error, Result};

/* Configuration and reports **************************************************/

/// Resources of a Ramsey frequency-estimation run.
#[derive(Clone, Copy, Debug)]
pub struct RamseyConfig {
    /// True atomic frequency (rad/s); enters only through detunings.
    pub omega0: f64,
    /// Interrogation time (s).
    pub t: f64,
    /// Total duration (s), `t <= T`.
    pub total_time: f64,
    /// Per-qubit dephasing rate (1/s).
    pub gamma: f64,
    /// Ion count.
    pub n: usize,
}

impl RamseyConfig {
    pub fn new(omega0: f64, t: f64, total_time: f64, gamma: f64, n: usize) -> Result<Self> {
        if !(t > 0.0) || !(total_time > 0.0) || t > total_time {
            return Err(Error::BadArgument(
                "need 0 < t <= T for interrogation and total time".to_string(),
            ));
        }
        if gamma < 0.0 {
            return Err(Error::BadArgument("dephasing rate must be non-negative".to_string()));
        }
        if n == 0 {
            return Err(Error::BadArgument("need at least one ion".to_string()));
        }
        Ok(RamseyConfig { omega0, t, total_time, gamma, n })
    }
}

/// Frequency uncertainty with the resources and Fisher information that
/// produced it; `delta_omega0 = (F T/t)^{-1/2}` holds by construction.
#[derive(Clone, Debug)]
pub struct UncertaintyReport {
    pub delta_omega0: f64,
    /// Fisher information of a single interrogation.
    pub fisher_information: f64,
    pub scheme: String,
    pub resources: RamseyConfig,
}

impl UncertaintyReport {
    fn from_fisher(fisher: f64, scheme: &str, resources: RamseyConfig) -> Self {
        let repetitions = resources.total_time / resources.t;
        UncertaintyReport {
            delta_omega0: 1.0 / (fisher * repetitions).sqrt(),
            fisher_information: fisher,
            scheme: scheme.to_string(),
            resources,
        }
    }
}

/* Closed-form limits **********************************************************/

/// Single-ion Ramsey fringe `(1 + cos((omega - omega0) t))/2`.
pub fn ramsey_probability(cfg: &RamseyConfig, omega: f64) -> f64 {
    (1.0 + ((omega - cfg.omega0) * cfg.t).cos()) / 2.0
}

/// Shot-noise limit `(N T t)^{-1/2}` of `N` uncorrelated ions (`gamma = 0`).
pub fn shot_noise_limit(cfg: &RamseyConfig) -> UncertaintyReport {
    let fisher = cfg.n as f64 * cfg.t * cfg.t;
    UncertaintyReport::from_fisher(fisher, "shot-noise", *cfg)
}

/// GHZ limit `(T t)^{-1/2} / N` (`gamma = 0`), beating shot noise by
/// `1/sqrt(N)`.
pub fn ghz_limit(cfg: &RamseyConfig) -> UncertaintyReport {
    let n = cfg.n as f64;
    let fisher = n * n * cfg.t * cfg.t;
    UncertaintyReport::from_fisher(fisher, "ghz", *cfg)
}

/* Quantum Fisher information **************************************************/

/// Half-weight of a basis label: eigenvalue of `J_z = sum_a Z_a / 2`.
fn jz_eigenvalue(index: usize, n: usize) -> f64 {
    let w = (index as u64).count_ones() as f64;
    (n as f64 - 2.0 * w) / 2.0
}

/// Independent dephasing for time `t` at rate `gamma`: every coherence
/// `rho_{b,b'}` decays by `exp(-gamma t d_H(b,b'))` with `d_H` the Hamming
/// distance. This is the tensor power of a single-qubit phase-flip channel,
/// hence completely positive and trace preserving.
pub fn dephase(rho: &DensityOperator, gamma: f64, t: f64) -> DensityOperator {
    let dim = rho.dim();
    let mut m = CMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            let hamming = ((r ^ c) as u64).count_ones() as f64;
            m[(r, c)] = rho.matrix()[(r, c)] * (-gamma * t * hamming).exp();
        }
    }
    DensityOperator::new_unchecked(rho.n_qubits(), m)
}

/// Quantum Fisher information for frequency estimation with a pure probe,
/// interrogation time `t`, and dephasing rate `gamma`.
///
/// For `gamma = 0` this is `4 t^2 Var(J_z)`. Otherwise the probe is pushed
/// through the dephasing channel and the mixed-state formula
/// `F = sum_{l_i + l_j > 0} 2 |<i| d_omega rho |j>|^2 / (l_i + l_j)` is
/// evaluated with `d_omega rho = -i t [J_z, rho]`.
pub fn quantum_fisher_information(probe: &PureState, t: f64, gamma: f64) -> f64 {
    if gamma == 0.0 {
        return 4.0 * t * t * jz_variance(probe);
    }
    quantum_fisher_information_mixed(&dephase(&probe.projector(), gamma, t), t)
}

/// Variance of `J_z` in a pure state (diagonal observable).
pub fn jz_variance(probe: &PureState) -> f64 {
    let n = probe.n_qubits();
    let mut mean = 0.0;
    let mut second = 0.0;
    for (idx, amp) in probe.amplitudes().iter().enumerate() {
        let p = amp.norm_sqr();
        if p == 0.0 {
            continue;
        }
        let m = jz_eigenvalue(idx, n);
        mean += p * m;
        second += p * m * m;
    }
    second - mean * mean
}

/// Mixed-state Fisher information `F = sum 2 |<i|d rho|j>|^2 / (l_i + l_j)`
/// for the generator `J_z` at interrogation time `t`.
pub fn quantum_fisher_information_mixed(rho: &DensityOperator, t: f64) -> f64 {
    let n = rho.n_qubits();
    let dim = rho.dim();
    // d_omega rho = -i t [J_z, rho]: entries -i t (m_r - m_c) rho_{rc}
    let mut drho = CMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            let gap = jz_eigenvalue(r, n) - jz_eigenvalue(c, n);
            drho[(r, c)] = C64::new(0.0, -t * gap) * rho.matrix()[(r, c)];
        }
    }
    let e = eigh(rho.matrix());
    let d_in_basis = e.vectors.adjoint().mul(&drho).mul(&e.vectors);
    let mut fisher = 0.0;
    let floor = 1e-12;
    for i in 0..dim {
        for j in 0..dim {
            let denom = e.values[i].max(0.0) + e.values[j].max(0.0);
            if denom > floor {
                fisher += 2.0 * d_in_basis[(i, j)].norm_sqr() / denom;
            }
        }
    }
    fisher
}

/// Uncertainty report for an explicit probe under the configured dephasing.
pub fn probe_uncertainty(probe: &PureState, cfg: &RamseyConfig, scheme: &str) -> UncertaintyReport {
    let fisher = quantum_fisher_information(probe, cfg.t, cfg.gamma);
    UncertaintyReport::from_fisher(fisher, scheme, *cfg)
}

/* Four-qubit probe family *****************************************************/

/// Coefficients of the permutation-symmetric four-qubit probe family:
/// `l0` on the two extremal kets, `l1` on the eight weight-1/weight-3 kets,
/// `l2` on the six weight-2 kets; `2 l0^2 + 8 l1^2 + 6 l2^2 = 1`.
#[derive(Clone, Copy, Debug)]
pub struct ProbeFamily4 {
    pub lambda0: f64,
    pub lambda1: f64,
    pub lambda2: f64,
}

impl ProbeFamily4 {
    pub fn new(lambda0: f64, lambda1: f64, lambda2: f64) -> Result<Self> {
        if lambda0 < 0.0 || lambda1 < 0.0 || lambda2 < 0.0 {
            return Err(Error::BadArgument("family coefficients must be non-negative".to_string()));
        }
        let norm = 2.0 * lambda0 * lambda0 + 8.0 * lambda1 * lambda1 + 6.0 * lambda2 * lambda2;
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(ProbeFamily4 { lambda0, lambda1, lambda2 })
    }

    /// GHZ_4 member (`l1 = l2 = 0`).
    pub fn ghz() -> Self {
        ProbeFamily4 { lambda0: core::f64::consts::FRAC_1_SQRT_2, lambda1: 0.0, lambda2: 0.0 }
    }

    /// Uniform member (`|+>^4`).
    pub fn uniform() -> Self {
        ProbeFamily4 { lambda0: 0.25, lambda1: 0.25, lambda2: 0.25 }
    }

    /// Spherical parameterization of the constraint surface:
    /// `(sqrt2 l0, sqrt8 l1, sqrt6 l2) = (cos a, sin a cos b, sin a sin b)`
    /// with `a, b` in `[0, pi/2]`.
    pub fn from_angles(a: f64, b: f64) -> Self {
        ProbeFamily4 {
            lambda0: a.cos() / 2.0f64.sqrt(),
            lambda1: a.sin() * b.cos() / 8.0f64.sqrt(),
            lambda2: a.sin() * b.sin() / 6.0f64.sqrt(),
        }
    }
}

/// The 16-amplitude probe state of the family, coefficients by Hamming
/// weight `{0,4} -> l0`, `{1,3} -> l1`, `{2} -> l2`.
pub fn probe_state_4(family: &ProbeFamily4) -> Result<PureState> {
    // surface check mirrors the constructor for families built directly
    let _ = ProbeFamily4::new(family.lambda0, family.lambda1, family.lambda2)?;
    let mut amps = vec![ZERO; 16];
    for (idx, amp) in amps.iter_mut().enumerate() {
        let l = match (idx as u64).count_ones() {
            0 | 4 => family.lambda0,
            1 | 3 => family.lambda1,
            _ => family.lambda2,
        };
        *amp = C64::new(l, 0.0);
    }
    PureState::new(4, amps)
}

/* Probe optimization **********************************************************/

/// Resolution and refinement budget of the probe-family search.
#[derive(Clone, Copy, Debug)]
pub struct OptimizeBudget {
    /// Coarse grid points per family angle.
    pub grid: usize,
    /// Pattern-search refinement rounds.
    pub refine_rounds: usize,
    /// Golden-section iterations for each interrogation-time optimization.
    pub time_iters: usize,
}

impl Default for OptimizeBudget {
    fn default() -> Self {
        OptimizeBudget { grid: 13, refine_rounds: 40, time_iters: 60 }
    }
}

/// Outcome of the family optimization.
#[derive(Clone, Debug)]
pub struct ProbeOptimization {
    pub family: ProbeFamily4,
    pub report: UncertaintyReport,
    /// Optimal-t uncorrelated baseline on the same resources.
    pub baseline: UncertaintyReport,
    /// `baseline.delta_omega0 / report.delta_omega0 - 1`.
    pub improvement: f64,
    pub converged: bool,
}

/// Best interrogation time for a fixed probe: maximize `F(t)/t` over
/// `t in (0, T]` by golden-section search on `log t`, bracketed by
/// `[1e-4/gamma, 10/gamma]` (clamped to `T`) when `gamma > 0`. For
/// `gamma = 0` the optimum sits at `t = T`.
pub fn optimal_time_for_probe(
    probe: &PureState,
    cfg: &RamseyConfig,
    iters: usize,
) -> (f64, UncertaintyReport) {
    if cfg.gamma == 0.0 {
        let mut best_cfg = *cfg;
        best_cfg.t = cfg.total_time;
        return (best_cfg.t, probe_uncertainty(probe, &best_cfg, "probe-optimal-t"));
    }
    let lo = (1e-4 / cfg.gamma).min(cfg.total_time);
    let hi = (10.0 / cfg.gamma).min(cfg.total_time);
    let objective = |log_t: f64| {
        let t = log_t.exp();
        quantum_fisher_information(probe, t, cfg.gamma) / t
    };
    let log_t = golden_section_max(lo.ln(), hi.ln(), iters, objective);
    let mut best_cfg = *cfg;
    best_cfg.t = log_t.exp();
    (best_cfg.t, probe_uncertainty(probe, &best_cfg, "probe-optimal-t"))
}

fn golden_section_max(mut a: f64, mut b: f64, iters: usize, f: impl Fn(f64) -> f64) -> f64 {
    let inv_phi = 0.618_033_988_749_894_9;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        c
    } else {
        d
    }
}

/// Jointly optimize the family coefficients and the interrogation time to
/// minimize `delta omega_0`, and compare with the optimal-t uncorrelated
/// baseline `|+>^4`.
///
/// The family contains `|+>^4` itself, so the improvement is non-negative
/// up to optimizer resolution; with dephasing the optimum is a partially
/// entangled member strictly better than both the GHZ probe and the
/// baseline.
pub fn optimize_probe(cfg: &RamseyConfig, budget: OptimizeBudget) -> Result<ProbeOptimization> {
    if cfg.n != 4 {
        return Err(Error::BadArgument("the probe family is a 4-ion construction".to_string()));
    }
    let baseline_probe = PureState::plus(4);
    let (_, baseline) = optimal_time_for_probe(&baseline_probe, cfg, budget.time_iters);

    let evaluate = |a: f64, b: f64| -> f64 {
        let family = ProbeFamily4::from_angles(a, b);
        let probe = probe_state_4(&family).expect("angles stay on the constraint surface");
        let (_, report) = optimal_time_for_probe(&probe, cfg, budget.time_iters);
        report.delta_omega0
    };

    let half_pi = core::f64::consts::FRAC_PI_2;
    let grid = budget.grid.max(4);
    let mut best = (f64::INFINITY, 0.0f64, 0.0f64);
    for i in 0..grid {
        let a = half_pi * i as f64 / (grid - 1) as f64;
        for j in 0..grid {
            let b = half_pi * j as f64 / (grid - 1) as f64;
            let value = evaluate(a, b);
            if value < best.0 {
                best = (value, a, b);
            }
        }
    }

    // pattern-search refinement on the two angles
    let mut delta = half_pi / (grid - 1) as f64;
    let mut converged = false;
    for _round in 0..budget.refine_rounds {
        let mut improved = false;
        for (da, db) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
            let a = (best.1 + da * delta).clamp(0.0, half_pi);
            let b = (best.2 + db * delta).clamp(0.0, half_pi);
            let value = evaluate(a, b);
            if value < best.0 - 1e-15 {
                best = (value, a, b);
                improved = true;
            }
        }
        if !improved {
            delta *= 0.5;
            if delta < 1e-7 {
                converged = true;
                break;
            }
        }
    }

    let family = ProbeFamily4::from_angles(best.1, best.2);
    let probe = probe_state_4(&family)?;
    let (_, report) = optimal_time_for_probe(&probe, cfg, budget.time_iters);
    let improvement = baseline.delta_omega0 / report.delta_omega0 - 1.0;
    Ok(ProbeOptimization { family, report, baseline, improvement, converged })
}
