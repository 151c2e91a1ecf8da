//! Entanglement monotones: entropy of entanglement, Schmidt measure, global
//! entanglement, geometric measure, concurrence and tangle, an upper bound
//! on the relative entropy of entanglement, and localizable entanglement.
//!
//! Variational quantities (geometric measure, relative entropy) return the
//! optimizer's best value together with a convergence flag; they are upper
//! bounds by construction, never certified optima.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

// float math through the trait; under test builds std's inherent
// methods shadow it
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

use crate::linalg::{eigh, sqrtm_psd, vdot, vkron, vnorm, vnormalize, vscale, CMatrix, C64, ONE, ZERO};
use crate::rng::Rng;
use crate::states::{
    entropy_of_spectrum, partial_trace, DensityOperator, PureState, Split,
};
use crate::tol;
use crate::{Error, Result};

/* Entropy of entanglement ****************************************************/

/// Von Neumann entropy (bits) of either reduction across a bipartition.
pub fn entropy_of_entanglement(state: &PureState, split: &Split) -> Result<f64> {
    if !split.is_bipartition() {
        return Err(Error::BadSplit("entropy of entanglement needs a bipartition".to_string()));
    }
    if split.n_parties() != state.n_qubits() {
        return Err(Error::DimensionMismatch {
            left: split.n_parties(),
            right: state.n_qubits(),
        });
    }
    // the smaller block gives the cheaper eigenproblem; both sides agree
    let block = if split.blocks()[0].len() <= split.blocks()[1].len() {
        &split.blocks()[0]
    } else {
        &split.blocks()[1]
    };
    let red = state.reduced_density(block)?;
    Ok(entropy_of_spectrum(&red.eigenvalues()))
}

/* Schmidt measure ************************************************************/

/// Schmidt measure `log2(R_min)` or its bracketing interval when only
/// bounds on the tensor rank are known.
#[derive(Clone, Debug)]
pub struct SchmidtMeasure {
    pub lower_bits: f64,
    pub upper_bits: f64,
    pub exact_bits: Option<f64>,
    pub budget_exhausted: bool,
}

/// Schmidt measure via tensor-rank bounds (exact through three qubits).
pub fn schmidt_measure(state: &PureState) -> Result<SchmidtMeasure> {
    let b = crate::classify::tensor_rank_bounds(state)?;
    Ok(SchmidtMeasure {
        lower_bits: (b.lower as f64).log2(),
        upper_bits: (b.upper as f64).log2(),
        exact_bits: b.exact.map(|r| (r as f64).log2()),
        budget_exhausted: b.budget_exhausted,
    })
}

/* Global entanglement ********************************************************/

/// Global entanglement `(4/N) sum_j d(f_j(0)|psi>, f_j(1)|psi>)` with
/// `d(x,y) = sum_{i<j} |x_i y_j - x_j y_i|^2`, the deletion maps `f_j(b)`
/// implemented literally.
pub fn global_entanglement(state: &PureState) -> Result<f64> {
    let n = state.n_qubits();
    if n < 2 {
        return Err(Error::BadArgument("global entanglement needs at least 2 qubits".to_string()));
    }
    let sub_dim = 1usize << (n - 1);
    let mut total = 0.0;
    for j in 1..=n {
        let mut x = vec![ZERO; sub_dim];
        let mut y = vec![ZERO; sub_dim];
        for idx in 0..sub_dim {
            x[idx] = state.amplitude(crate::bits::insert_bit(idx, j, n, 0));
            y[idx] = state.amplitude(crate::bits::insert_bit(idx, j, n, 1));
        }
        total += pairwise_determinant_distance(&x, &y);
    }
    Ok(4.0 / n as f64 * total)
}

/// `sum_{i<j} |x_i y_j - x_j y_i|^2`, the literal (quadratic-cost) form.
fn pairwise_determinant_distance(x: &[C64], y: &[C64]) -> f64 {
    let m = x.len();
    let mut acc = 0.0;
    for i in 0..m {
        for j in (i + 1)..m {
            acc += (x[i] * y[j] - x[j] * y[i]).norm_sqr();
        }
    }
    acc
}

/* Geometric measure **********************************************************/

/// Result of the product-state distance minimization.
#[derive(Clone, Debug)]
pub struct GeometricMeasure {
    /// Hilbert-Schmidt distance `|| |psi><psi| - |prod><prod| ||_2`.
    pub distance: f64,
    /// Squared best product overlap `Lambda^2 = max |<psi|prod>|^2`.
    pub overlap_sq: f64,
    /// The achieving product ansatz, one unit vector per party.
    pub closest_product: Vec<Vec<C64>>,
    pub converged: bool,
}

/// Geometric measure via alternating overlap maximization over pure product
/// states, using `||psi psi - phi phi||_2^2 = 2 - 2 |<psi|phi>|^2`.
pub fn geometric_measure(state: &PureState, restarts: usize, seed: u64) -> Result<GeometricMeasure> {
    let n = state.n_qubits();
    if n > 6 {
        return Err(Error::BadArgument("geometric measure supports at most 6 qubits".to_string()));
    }
    let mut rng = Rng::seed_from_u64(seed);
    let mut best_overlap = -1.0f64;
    let mut best_vectors: Vec<Vec<C64>> = Vec::new();
    let mut converged_any = false;

    for _ in 0..restarts.max(1) {
        let mut vectors: Vec<Vec<C64>> = (0..n).map(|_| rng.unit_vector(2)).collect();
        let mut overlap = product_overlap(state, &vectors).norm();
        let mut converged = false;
        for _sweep in 0..10_000 {
            for site in 1..=n {
                let g = environment_vector(state, &vectors, site);
                let norm = vnorm(&g);
                if norm > 1e-300 {
                    vectors[site - 1] = vscale(&g, C64::new(1.0 / norm, 0.0));
                }
            }
            let new_overlap = product_overlap(state, &vectors).norm();
            if new_overlap - overlap < tol::OVERLAP_CONVERGENCE {
                overlap = new_overlap.max(overlap);
                converged = true;
                break;
            }
            overlap = new_overlap;
        }
        converged_any |= converged;
        if overlap > best_overlap {
            best_overlap = overlap;
            best_vectors = vectors;
        }
    }

    let overlap_sq = (best_overlap * best_overlap).min(1.0);
    Ok(GeometricMeasure {
        distance: (2.0 - 2.0 * overlap_sq).max(0.0).sqrt(),
        overlap_sq,
        closest_product: best_vectors,
        converged: converged_any,
    })
}

/// `<prod|psi>` for a product ansatz.
fn product_overlap(state: &PureState, vectors: &[Vec<C64>]) -> C64 {
    let n = state.n_qubits();
    let mut acc = ZERO;
    for (idx, &amp) in state.amplitudes().iter().enumerate() {
        if amp == ZERO {
            continue;
        }
        let mut coeff = ONE;
        for site in 1..=n {
            coeff *= vectors[site - 1][crate::bits::bit(idx, site, n)].conj();
        }
        acc += coeff * amp;
    }
    acc
}

/// Gradient vector for one site: `g_b = <prod with e_b at site|psi>`
/// conjugated back into ket form, so the maximizing update is `v = g/|g|`.
fn environment_vector(state: &PureState, vectors: &[Vec<C64>], site: usize) -> Vec<C64> {
    let n = state.n_qubits();
    let mut g = vec![ZERO; 2];
    for (idx, &amp) in state.amplitudes().iter().enumerate() {
        if amp == ZERO {
            continue;
        }
        let mut coeff = ONE;
        for other in 1..=n {
            if other == site {
                continue;
            }
            coeff *= vectors[other - 1][crate::bits::bit(idx, other, n)].conj();
        }
        g[crate::bits::bit(idx, site, n)] += coeff * amp;
    }
    g
}

/* Concurrence and tangle *****************************************************/

/// Work data of the two-qubit concurrence: the inverted operator
/// `rho~ = 1 - rho_1 (x) 1 - 1 (x) rho_2 + rho` and the non-increasing
/// spectrum of `rho rho~`.
///
/// `rho rho~` is similar to the positive operator
/// `sqrt(rho) rho~ sqrt(rho) = R R^dagger` with `R = sqrt(rho) sqrt(rho~)`,
/// so its spectrum coincides with its singular values and equals the squared
/// singular values of `R`. The latter is how the spectrum is computed:
/// square-rooting near-zero eigenvalues of the product would lose half the
/// working precision exactly where the concurrence subtraction needs it.
#[derive(Clone, Debug)]
pub struct ConcurrenceWork {
    pub rho_tilde: CMatrix,
    pub singular_values: [f64; 4],
}

/// Build the concurrence work data for a two-qubit state.
pub fn concurrence_work(rho: &DensityOperator) -> Result<ConcurrenceWork> {
    if rho.n_qubits() != 2 {
        return Err(Error::BadDimension { expected: 4, got: rho.dim() });
    }
    let rho1 = partial_trace(rho, &[1])?;
    let rho2 = partial_trace(rho, &[2])?;
    let id2 = CMatrix::identity(2);
    let rho_tilde = CMatrix::identity(4)
        .sub(&rho1.matrix().kron(&id2))
        .sub(&id2.kron(rho2.matrix()))
        .add(rho.matrix());

    let r = sqrtm_psd(rho.matrix()).mul(&sqrtm_psd(&rho_tilde));
    let sigma = crate::linalg::singular_values(&r);
    let mut sv = [0.0f64; 4];
    for (k, &s) in sigma.iter().enumerate().take(4) {
        sv[k] = s * s;
    }
    Ok(ConcurrenceWork { rho_tilde, singular_values: sv })
}

/// Two-qubit concurrence
/// `max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4))`.
pub fn concurrence_2q(rho: &DensityOperator) -> Result<f64> {
    let work = concurrence_work(rho)?;
    let s: Vec<f64> = work.singular_values.iter().map(|l| l.sqrt()).collect();
    Ok((s[0] - s[1] - s[2] - s[3]).max(0.0))
}

/// Concurrence of a pure two-qubit state, `2 |a00 a11 - a01 a10|`.
pub fn concurrence_pure_2q(state: &PureState) -> Result<f64> {
    if state.n_qubits() != 2 {
        return Err(Error::BadDimension { expected: 4, got: state.dim() });
    }
    let a = state.amplitudes();
    Ok(2.0 * (a[0] * a[3] - a[1] * a[2]).norm())
}

/// Residual three-party entanglement
/// `tau = C^2(1-23) - C^2(1-2) - C^2(1-3)` of a pure three-qubit state.
///
/// `C^2(1-23)` is evaluated as `4 det(rho_1)`, which must agree with
/// `2(1 - tr rho_1^2)` for a unit-trace qubit reduction; both routes are
/// computed and the agreement asserted. The result is clamped to zero from
/// below (it is non-negative up to rounding).
pub fn tangle(state: &PureState) -> Result<f64> {
    if state.n_qubits() != 3 {
        return Err(Error::BadDimension { expected: 8, got: state.dim() });
    }
    let rho1 = state.reduced_density(&[1])?;
    let det = (rho1.matrix()[(0, 0)] * rho1.matrix()[(1, 1)]
        - rho1.matrix()[(0, 1)] * rho1.matrix()[(1, 0)])
        .re;
    let c_sq_1_23 = 4.0 * det;
    let purity_route = 2.0 * (1.0 - rho1.purity());
    assert!(
        (c_sq_1_23 - purity_route).abs() < 1e-9,
        "determinant and purity routes disagree: {c_sq_1_23} vs {purity_route}"
    );

    let c12 = concurrence_2q(&state.reduced_density(&[1, 2])?)?;
    let c13 = concurrence_2q(&state.reduced_density(&[1, 3])?)?;
    Ok((c_sq_1_23 - c12 * c12 - c13 * c13).max(0.0))
}

/* Relative entropy of entanglement ******************************************/

/// Normalized product ansatz: one unit vector per party.
#[derive(Clone, Debug)]
pub struct ProductAnsatz {
    pub local_vectors: Vec<Vec<C64>>,
}

impl ProductAnsatz {
    /// Joint vector `(x)_a v_a`.
    pub fn joint(&self) -> Vec<C64> {
        let mut v = self.local_vectors[0].clone();
        for w in &self.local_vectors[1..] {
            v = vkron(&v, w);
        }
        v
    }
}

/// Convex mixture of product projectors.
#[derive(Clone, Debug)]
pub struct SeparableAnsatz {
    pub weights: Vec<f64>,
    pub components: Vec<ProductAnsatz>,
}

impl SeparableAnsatz {
    /// The separable density matrix `sum_k p_k |w_k><w_k|`.
    pub fn density(&self) -> CMatrix {
        let dim = self.components[0].joint().len();
        let mut m = CMatrix::zeros(dim, dim);
        for (p, comp) in self.weights.iter().zip(&self.components) {
            if *p <= 0.0 {
                continue;
            }
            let w = comp.joint();
            m = m.add(&CMatrix::outer(&w, &w).scale_re(*p));
        }
        m
    }
}

/// Upper bound on the relative entropy of entanglement.
#[derive(Clone, Debug)]
pub struct ReeUpperBound {
    /// `S(rho || sigma)` in bits at the best separable ansatz found.
    pub value_bits: f64,
    pub ansatz: SeparableAnsatz,
    /// Set when the Frank-Wolfe duality gap certified proximity to the
    /// optimum over the separable set.
    pub converged: bool,
}

const REE_EPSILON: f64 = 1e-9;
const REE_GAP_TOL: f64 = 2e-4;

/// Minimize `S(rho||sigma) = tr[rho log2 rho] - tr[rho log2 sigma]` over
/// mixtures of `k` product projectors.
///
/// Each iteration combines a projected-gradient step (Euclidean simplex
/// projection for the weights, Riemannian sphere steps for the local
/// vectors) with a Frank-Wolfe step: the product state minimizing the
/// linearized objective joins the mixture, evicting the lightest component
/// when the ansatz is full. The objective is jointly convex in `sigma`, so
/// the Frank-Wolfe gap upper-bounds the distance to the true optimum and
/// drives the convergence flag. An `eps`-identity admixture keeps the
/// support condition safe throughout. Returns the best bound over restarts.
pub fn relative_entropy_of_entanglement_ub(
    rho: &DensityOperator,
    k: usize,
    restarts: usize,
    seed: u64,
) -> Result<ReeUpperBound> {
    let n = rho.n_qubits();
    if n > 3 {
        return Err(Error::BadArgument(
            "relative-entropy bound supports at most 3 qubits".to_string(),
        ));
    }
    let dim = rho.dim();
    if k < dim {
        return Err(Error::BadArgument(format!("ansatz needs at least {dim} components")));
    }
    let mut rng = Rng::seed_from_u64(seed);

    // constant term tr[rho log2 rho] = -S(rho)
    let rho_evals = eigh(rho.matrix()).values;
    let neg_entropy = -entropy_of_spectrum(&rho_evals);

    let mut best: Option<(f64, SeparableAnsatz, bool)> = None;
    for restart in 0..restarts.max(1) {
        let init = if restart == 0 {
            dephased_init(rho, k, &mut rng)
        } else {
            random_init(n, k, &mut rng)
        };
        let (value, ansatz, converged) = ree_descend(rho, neg_entropy, init, &mut rng);
        let better = best.as_ref().map(|(b, _, _)| value < *b).unwrap_or(true);
        if better {
            best = Some((value, ansatz, converged));
        }
    }
    let (value, ansatz, converged) = best.expect("at least one restart");
    Ok(ReeUpperBound { value_bits: value.max(0.0), ansatz, converged })
}

/// Initial ansatz: the input dephased in the computational product basis
/// (a separable state with the same diagonal), padded with random products.
fn dephased_init(rho: &DensityOperator, k: usize, rng: &mut Rng) -> SeparableAnsatz {
    let n = rho.n_qubits();
    let dim = rho.dim();
    let mut weights = Vec::with_capacity(k);
    let mut components = Vec::with_capacity(k);
    for idx in 0..dim {
        weights.push(rho.matrix()[(idx, idx)].re.max(0.0));
        let vecs: Vec<Vec<C64>> = (1..=n)
            .map(|p| {
                let b = crate::bits::bit(idx, p, n);
                let mut v = vec![ZERO; 2];
                v[b] = ONE;
                v
            })
            .collect();
        components.push(ProductAnsatz { local_vectors: vecs });
    }
    for _ in dim..k {
        weights.push(0.0);
        components.push(ProductAnsatz {
            local_vectors: (0..n).map(|_| rng.unit_vector(2)).collect(),
        });
    }
    let total: f64 = weights.iter().sum();
    let weights = if total > 0.0 {
        weights.iter().map(|w| w / total).collect()
    } else {
        vec![1.0 / k as f64; k]
    };
    SeparableAnsatz { weights, components }
}

fn random_init(n: usize, k: usize, rng: &mut Rng) -> SeparableAnsatz {
    SeparableAnsatz {
        weights: vec![1.0 / k as f64; k],
        components: (0..k)
            .map(|_| ProductAnsatz { local_vectors: (0..n).map(|_| rng.unit_vector(2)).collect() })
            .collect(),
    }
}

/// Objective and Fréchet derivative of `-tr[rho log2 sigma_eps]` at the
/// ansatz's density. Returns `(f, F)` with `F` the gradient with respect to
/// `sigma_eps` as a dense Hermitian matrix.
fn ree_objective_grad(rho: &DensityOperator, sigma: &CMatrix, neg_entropy: f64) -> (f64, CMatrix) {
    let dim = sigma.rows();
    let sigma_eps = sigma
        .scale_re(1.0 - REE_EPSILON)
        .add(&CMatrix::identity(dim).scale_re(REE_EPSILON / dim as f64));
    let e = eigh(&sigma_eps);
    let u = &e.vectors;
    let rho_in_basis = u.adjoint().mul(rho.matrix()).mul(u);

    let ln2 = core::f64::consts::LN_2;
    let mut f = neg_entropy;
    for (i, &mu) in e.values.iter().enumerate() {
        let mu = mu.max(1e-300);
        f -= rho_in_basis[(i, i)].re * mu.ln() / ln2;
    }

    // divided-difference kernel of ln on the spectrum
    let mut g = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let mi = e.values[i].max(1e-300);
            let mj = e.values[j].max(1e-300);
            let kernel = if (mi - mj).abs() < 1e-14 * mi.max(mj) {
                1.0 / mi
            } else {
                (mi.ln() - mj.ln()) / (mi - mj)
            };
            g[(i, j)] = rho_in_basis[(i, j)] * (kernel / ln2);
        }
    }
    let f_dense = u.mul(&g).mul(&u.adjoint()).scale_re(-1.0);
    (f, f_dense)
}

fn ree_descend(
    rho: &DensityOperator,
    neg_entropy: f64,
    mut ansatz: SeparableAnsatz,
    rng: &mut Rng,
) -> (f64, SeparableAnsatz, bool) {
    let n = rho.n_qubits();
    let k = ansatz.weights.len();
    let mut step = 0.1;
    let (mut f, mut grad_sigma) = ree_objective_grad(rho, &ansatz.density(), neg_entropy);
    let mut converged = false;

    for _iter in 0..400 {
        let scale = 1.0 - REE_EPSILON;

        // Frank-Wolfe direction: the product state most negative under the
        // gradient, found by alternating smallest-eigenvector sweeps
        let atom = lmo_product_atom(&grad_sigma, n, &ansatz, rng);
        let sigma_now = ansatz.density();
        let grad_times = |m: &CMatrix| -> f64 {
            // tr[grad * m]
            let mut acc = 0.0;
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    acc += (grad_sigma[(r, c)] * m[(c, r)]).re;
                }
            }
            acc
        };
        let atom_joint = atom.joint();
        let atom_dense = CMatrix::outer(&atom_joint, &atom_joint);
        let gap = scale * (grad_times(&sigma_now) - grad_times(&atom_dense));
        if gap < REE_GAP_TOL {
            converged = true;
            break;
        }

        // Frank-Wolfe line search over sigma' = (1-t) sigma + t atom
        let mut best_t = 0.0;
        let mut best_f = f;
        let mut t = 1.0;
        for _ in 0..25 {
            let trial = blend_ansatz(&ansatz, &atom, t, k);
            let (ft, _) = ree_objective_grad(rho, &trial.density(), neg_entropy);
            if ft < best_f {
                best_f = ft;
                best_t = t;
            }
            t *= 0.6;
        }
        if best_t > 0.0 {
            ansatz = blend_ansatz(&ansatz, &atom, best_t, k);
            let (fj, gj) = ree_objective_grad(rho, &ansatz.density(), neg_entropy);
            f = fj;
            grad_sigma = gj;
        }

        // projected-gradient polish on weights and local vectors
        let joints: Vec<Vec<C64>> = ansatz.components.iter().map(|c| c.joint()).collect();
        let grad_w: Vec<f64> = joints
            .iter()
            .map(|w| {
                let fw = grad_sigma.apply(w);
                scale * vdot(w, &fw).re
            })
            .collect();
        let mut grad_v: Vec<Vec<Vec<C64>>> = Vec::with_capacity(k);
        for (ki, comp) in ansatz.components.iter().enumerate() {
            let p = ansatz.weights[ki];
            let mut per_site = Vec::with_capacity(n);
            for site in 1..=n {
                if p <= 1e-14 {
                    per_site.push(vec![ZERO; 2]);
                    continue;
                }
                let mut b_mat = CMatrix::zeros(2, 2);
                let mut contexts: Vec<Vec<C64>> = Vec::with_capacity(2);
                for b in 0..2usize {
                    let mut vecs = comp.local_vectors.clone();
                    let mut e = vec![ZERO; 2];
                    e[b] = ONE;
                    vecs[site - 1] = e;
                    contexts.push(ProductAnsatz { local_vectors: vecs }.joint());
                }
                for b in 0..2usize {
                    for bp in 0..2usize {
                        b_mat[(b, bp)] = vdot(&contexts[b], &grad_sigma.apply(&contexts[bp]));
                    }
                }
                let v = &comp.local_vectors[site - 1];
                let h = b_mat.apply(v);
                let h = vscale(&h, C64::new(p * scale, 0.0));
                // Riemannian projection: remove the component along v
                let along = vdot(v, &h);
                let tangent: Vec<C64> =
                    h.iter().zip(v).map(|(hi, vi)| hi - vi * along).collect();
                per_site.push(tangent);
            }
            grad_v.push(per_site);
        }

        for _try in 0..30 {
            let trial_weights = project_simplex(
                &ansatz
                    .weights
                    .iter()
                    .zip(&grad_w)
                    .map(|(w, g)| w - step * g)
                    .collect::<Vec<f64>>(),
            );
            let trial_components: Vec<ProductAnsatz> = ansatz
                .components
                .iter()
                .enumerate()
                .map(|(ki, comp)| ProductAnsatz {
                    local_vectors: comp
                        .local_vectors
                        .iter()
                        .enumerate()
                        .map(|(si, v)| {
                            let g = &grad_v[ki][si];
                            let moved: Vec<C64> =
                                v.iter().zip(g).map(|(vi, gi)| vi - gi * step).collect();
                            let norm = vnorm(&moved);
                            if norm > 1e-300 {
                                vnormalize(&moved)
                            } else {
                                v.clone()
                            }
                        })
                        .collect(),
                })
                .collect();
            let trial = SeparableAnsatz { weights: trial_weights, components: trial_components };
            let (f_new, grad_new) = ree_objective_grad(rho, &trial.density(), neg_entropy);
            if f_new < f {
                ansatz = trial;
                f = f_new;
                grad_sigma = grad_new;
                step = (step * 1.4).min(10.0);
                break;
            }
            step *= 0.5;
            if step < 1e-13 {
                step = 1e-13;
                break;
            }
        }
    }
    (f, ansatz, converged)
}

/// Linear minimization oracle over product states: alternating
/// smallest-eigenvector sweeps of `<w|grad|w>` from the heaviest current
/// components plus random restarts.
fn lmo_product_atom(grad: &CMatrix, n: usize, ansatz: &SeparableAnsatz, rng: &mut Rng) -> ProductAnsatz {
    let mut order: Vec<usize> = (0..ansatz.weights.len()).collect();
    order.sort_by(|&a, &b| {
        ansatz.weights[b]
            .partial_cmp(&ansatz.weights[a])
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let mut inits: Vec<Vec<Vec<C64>>> = Vec::new();
    for &i in order.iter().take(2) {
        inits.push(ansatz.components[i].local_vectors.clone());
    }
    for _ in 0..4 {
        inits.push((0..n).map(|_| rng.unit_vector(2)).collect());
    }

    let mut best_value = f64::INFINITY;
    let mut best_vectors = inits[0].clone();
    for mut vectors in inits {
        for _sweep in 0..60 {
            let mut moved = 0.0;
            for site in 1..=n {
                // 2x2 restriction of the gradient onto the other sites
                let mut contexts: Vec<Vec<C64>> = Vec::with_capacity(2);
                for b in 0..2usize {
                    let mut vecs = vectors.clone();
                    let mut e = vec![ZERO; 2];
                    e[b] = ONE;
                    vecs[site - 1] = e;
                    contexts.push(ProductAnsatz { local_vectors: vecs }.joint());
                }
                let mut b_mat = CMatrix::zeros(2, 2);
                for b in 0..2usize {
                    for bp in 0..2usize {
                        b_mat[(b, bp)] = vdot(&contexts[b], &grad.apply(&contexts[bp]));
                    }
                }
                let e = eigh(&b_mat);
                let smallest = e.vectors.column(1);
                moved += (1.0 - vdot(&smallest, &vectors[site - 1]).norm()).abs();
                vectors[site - 1] = smallest;
            }
            if moved < 1e-12 {
                break;
            }
        }
        let joint = ProductAnsatz { local_vectors: vectors.clone() }.joint();
        let value = vdot(&joint, &grad.apply(&joint)).re;
        if value < best_value {
            best_value = value;
            best_vectors = vectors;
        }
    }
    ProductAnsatz { local_vectors: best_vectors }
}

/// `(1-t) ansatz + t atom`, evicting the lightest component when the slot
/// budget `k` is exceeded.
fn blend_ansatz(ansatz: &SeparableAnsatz, atom: &ProductAnsatz, t: f64, k: usize) -> SeparableAnsatz {
    let mut weights: Vec<f64> = ansatz.weights.iter().map(|w| w * (1.0 - t)).collect();
    let mut components = ansatz.components.clone();
    weights.push(t);
    components.push(atom.clone());
    while weights.len() > k {
        let (min_idx, _) = weights
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(core::cmp::Ordering::Equal))
            .expect("non-empty");
        weights.remove(min_idx);
        components.remove(min_idx);
    }
    let total: f64 = weights.iter().sum();
    if total > 0.0 {
        for w in &mut weights {
            *w /= total;
        }
    }
    SeparableAnsatz { weights, components }
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    let mut acc = 0.0;
    let mut theta = 0.0;
    let mut found = false;
    for (i, &s) in sorted.iter().enumerate() {
        acc += s;
        let t = (acc - 1.0) / (i as f64 + 1.0);
        if s - t > 0.0 {
            theta = t;
        } else {
            found = true;
            break;
        }
    }
    let _ = found;
    let _ = n;
    v.iter().map(|x| (x - theta).max(0.0)).collect()
}

/* Localizable entanglement ***************************************************/

/// Maximal outcome-averaged concurrence of `pair` over products of local
/// projective measurements on every other party, optimized on a Bloch-angle
/// grid with pattern-search refinement.
pub fn localizable_entanglement(
    state: &PureState,
    pair: (usize, usize),
    grid_resolution: usize,
) -> Result<f64> {
    let n = state.n_qubits();
    if n > 4 {
        return Err(Error::BadArgument(
            "localizable entanglement supports at most 4 qubits".to_string(),
        ));
    }
    let (a, b) = (pair.0.min(pair.1), pair.0.max(pair.1));
    if a == 0 || b > n || a == b {
        return Err(Error::BadSubset("pair must be two distinct parties".to_string()));
    }
    let outside: Vec<usize> = (1..=n).filter(|&p| p != a && p != b).collect();
    if outside.is_empty() {
        return concurrence_pure_2q(state);
    }
    let res = grid_resolution.max(3);

    let eval = |angles: &[f64]| average_pair_concurrence(state, &[a, b], &outside, angles);

    // coarse grid over (theta, phi) per outside party
    let dims = 2 * outside.len();
    let mut best_angles = vec![0.0; dims];
    let mut best = -1.0f64;
    let thetas: Vec<f64> =
        (0..res).map(|k| core::f64::consts::PI * k as f64 / (res - 1) as f64).collect();
    let phis: Vec<f64> =
        (0..res).map(|k| 2.0 * core::f64::consts::PI * k as f64 / res as f64).collect();
    let combos = res.pow(dims as u32);
    let mut angles = vec![0.0; dims];
    for combo in 0..combos {
        let mut c = combo;
        for d in 0..dims {
            let idx = c % res;
            c /= res;
            angles[d] = if d % 2 == 0 { thetas[idx] } else { phis[idx] };
        }
        let value = eval(&angles);
        if value > best {
            best = value;
            best_angles.copy_from_slice(&angles);
        }
    }

    // pattern-search refinement around the best grid point
    let mut delta = core::f64::consts::PI / (res - 1) as f64;
    for _round in 0..60 {
        let mut improved = false;
        for d in 0..dims {
            for sign in [-1.0, 1.0] {
                let mut trial = best_angles.clone();
                trial[d] += sign * delta;
                let value = eval(&trial);
                if value > best + 1e-15 {
                    best = value;
                    best_angles = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            delta *= 0.5;
            if delta < 1e-9 {
                break;
            }
        }
    }
    Ok(best.min(1.0))
}

/// Outcome-probability-weighted concurrence of the pair after measuring the
/// outside parties in the Bloch bases given by `angles` (theta, phi per
/// party). Probabilities cancel against the normalization of each branch.
fn average_pair_concurrence(
    state: &PureState,
    pair: &[usize],
    outside: &[usize],
    angles: &[f64],
) -> f64 {
    let n = state.n_qubits();
    let n_out = outside.len();
    // two basis vectors per outside party
    let bases: Vec<[[C64; 2]; 2]> = (0..n_out)
        .map(|i| {
            let theta = angles[2 * i];
            let phi = angles[2 * i + 1];
            let c = (theta / 2.0).cos();
            let s = (theta / 2.0).sin();
            let e = C64::new(0.0, phi).exp();
            [[C64::new(c, 0.0), e * s], [C64::new(s, 0.0), -(e * c)]]
        })
        .collect();

    let mut total = 0.0;
    for outcome in 0..(1usize << n_out) {
        // contract the outside parties with the chosen outcome vectors
        let mut v = [ZERO; 4];
        for t in 0..(1usize << n_out) {
            let mut coeff = ONE;
            for (i, _) in outside.iter().enumerate() {
                let o = (outcome >> (n_out - 1 - i)) & 1;
                let tb = (t >> (n_out - 1 - i)) & 1;
                coeff *= bases[i][o][tb].conj();
            }
            if coeff == ZERO {
                continue;
            }
            for j in 0..4usize {
                let idx = crate::bits::merge(j, pair, t, outside, n);
                v[j] += coeff * state.amplitude(idx);
            }
        }
        // unnormalized branch: p * C(branch) = 2 |v0 v3 - v1 v2|
        total += 2.0 * (v[0] * v[3] - v[1] * v[2]).norm();
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{haar_random_pure_with, tensor_product};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn binary_entropy(p: f64) -> f64 {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }

    #[test]
    fn entropy_of_entanglement_values() {
        let split = Split::bipartition(2, &[1]).unwrap();
        assert!((entropy_of_entanglement(&PureState::bell_psi_plus(), &split).unwrap() - 1.0)
            .abs()
            < 1e-12);
        let product = tensor_product(&PureState::plus(1), &PureState::basis(1, 1));
        assert!(entropy_of_entanglement(&product, &split).unwrap() < 1e-10);
        // sin(t)|00> + cos(t)|11>, sin^2 = 1/4
        let psi = PureState::new(2, vec![c(0.5), ZERO, ZERO, c(0.75f64.sqrt())]).unwrap();
        assert!(
            (entropy_of_entanglement(&psi, &split).unwrap() - binary_entropy(0.25)).abs() < 1e-12
        );
    }

    #[test]
    fn entropy_symmetric_in_the_two_sides() {
        let mut rng = Rng::seed_from_u64(51);
        let psi = haar_random_pure_with(3, &mut rng);
        let s1 = entropy_of_entanglement(&psi, &Split::bipartition(3, &[1]).unwrap()).unwrap();
        let s2 = entropy_of_entanglement(&psi, &Split::bipartition(3, &[2, 3]).unwrap()).unwrap();
        assert!((s1 - s2).abs() < 1e-10);
        assert!(entropy_of_entanglement(&psi, &Split::finest(3)).is_err());
    }

    #[test]
    fn schmidt_measure_canonical() {
        assert!((schmidt_measure(&PureState::ghz(3)).unwrap().exact_bits.unwrap() - 1.0).abs()
            < 1e-12);
        let w = schmidt_measure(&PureState::w(3)).unwrap().exact_bits.unwrap();
        assert!((w - 3.0f64.log2()).abs() < 1e-12);
        assert!(
            schmidt_measure(&PureState::basis(3, 2)).unwrap().exact_bits.unwrap().abs() < 1e-12
        );
    }

    #[test]
    fn global_entanglement_values() {
        let product = PureState::basis(4, 9);
        assert!(global_entanglement(&product).unwrap() < 1e-12);
        for n in 2..=8 {
            assert!((global_entanglement(&PureState::ghz(n)).unwrap() - 1.0).abs() < 1e-10);
        }
        assert!((global_entanglement(&PureState::w(3)).unwrap() - 8.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn global_matches_purity_oracle() {
        // oracle: 2 (1 - (1/N) sum_j tr rho_j^2)
        let mut rng = Rng::seed_from_u64(52);
        for n in [2usize, 3, 4] {
            for _ in 0..10 {
                let psi = haar_random_pure_with(n, &mut rng);
                let literal = global_entanglement(&psi).unwrap();
                let mut purity_sum = 0.0;
                for j in 1..=n {
                    purity_sum += psi.reduced_density(&[j]).unwrap().purity();
                }
                let oracle = 2.0 * (1.0 - purity_sum / n as f64);
                assert!((literal - oracle).abs() < 1e-9, "n={n}: {literal} vs {oracle}");
            }
        }
    }

    #[test]
    fn geometric_measure_product_state() {
        let g = geometric_measure(&PureState::basis(3, 6), 5, 1).unwrap();
        assert!(g.distance < 1e-7);
        assert!((g.overlap_sq - 1.0).abs() < 1e-9);
    }

    #[test]
    fn geometric_measure_ghz_and_w() {
        let g = geometric_measure(&PureState::ghz(3), 20, 2).unwrap();
        assert!((g.overlap_sq - 0.5).abs() < 1e-8, "{}", g.overlap_sq);
        assert!((g.distance - 1.0).abs() < 1e-8);
        let w = geometric_measure(&PureState::w(3), 20, 3).unwrap();
        assert!((w.overlap_sq - 4.0 / 9.0).abs() < 1e-8, "{}", w.overlap_sq);
        assert!((w.distance - 10.0f64.sqrt() / 3.0).abs() < 1e-8);
    }

    #[test]
    fn geometric_identity_against_dense_norm() {
        // || psi psi - prod prod ||_2^2 computed densely equals 2 - 2 Lambda^2
        let mut rng = Rng::seed_from_u64(53);
        let psi = haar_random_pure_with(2, &mut rng);
        let g = geometric_measure(&psi, 10, 4).unwrap();
        let prod = ProductAnsatz { local_vectors: g.closest_product.clone() }.joint();
        let diff = psi
            .projector()
            .matrix()
            .sub(&CMatrix::outer(&prod, &prod));
        let hs_sq = diff.mul(&diff.adjoint()).trace().re;
        assert!((hs_sq - g.distance * g.distance).abs() < 1e-9);
    }

    #[test]
    fn concurrence_bell_and_product() {
        let bell = PureState::bell_psi_plus().projector();
        assert!((concurrence_2q(&bell).unwrap() - 1.0).abs() < 1e-10);
        let prod = PureState::basis(2, 2).projector();
        assert!(concurrence_2q(&prod).unwrap() < 1e-10);
    }

    #[test]
    fn concurrence_of_w_residual_state() {
        // 1/3 |00><00| + 2/3 |Psi+><Psi+| has concurrence 2/3
        let rho = DensityOperator::mixture(&[
            (1.0 / 3.0, PureState::basis(2, 0).projector()),
            (2.0 / 3.0, PureState::bell_psi_plus().projector()),
        ])
        .unwrap();
        assert!((concurrence_2q(&rho).unwrap() - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn concurrence_matches_spin_flip_oracle() {
        // rho~ must equal the spin-flip (sigma_y (x) sigma_y) rho* (same)
        let mut rng = Rng::seed_from_u64(54);
        for _ in 0..10 {
            let p = rng.uniform();
            let rho = DensityOperator::mixture(&[
                (p, haar_random_pure_with(2, &mut rng).projector()),
                (1.0 - p, haar_random_pure_with(2, &mut rng).projector()),
            ])
            .unwrap();
            let work = concurrence_work(&rho).unwrap();
            let sy = CMatrix::from_rows(&[
                &[ZERO, C64::new(0.0, -1.0)],
                &[C64::new(0.0, 1.0), ZERO],
            ]);
            let yy = sy.kron(&sy);
            let flip = yy.mul(&rho.matrix().conj()).mul(&yy);
            assert!(work.rho_tilde.sub(&flip).max_abs() < 1e-12);
        }
    }

    #[test]
    fn concurrence_pure_agrees_with_mixed_formula() {
        let mut rng = Rng::seed_from_u64(55);
        for _ in 0..10 {
            let psi = haar_random_pure_with(2, &mut rng);
            let via_formula = concurrence_2q(&psi.projector()).unwrap();
            let via_pure = concurrence_pure_2q(&psi).unwrap();
            assert!((via_formula - via_pure).abs() < 1e-9);
        }
    }

    #[test]
    fn tangle_canonical_values() {
        assert!((tangle(&PureState::ghz(3)).unwrap() - 1.0).abs() < 1e-12);
        assert!(tangle(&PureState::w(3)).unwrap() < 1e-12);
        assert!(tangle(&PureState::basis(3, 3)).unwrap() < 1e-12);
        let bisep = tensor_product(&PureState::basis(1, 0), &PureState::bell_psi_plus());
        assert!(tangle(&bisep).unwrap() < 1e-12);
    }

    #[test]
    fn tangle_permutation_invariant() {
        let mut rng = Rng::seed_from_u64(56);
        let perms: [[usize; 3]; 6] =
            [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]];
        for _ in 0..30 {
            let psi = haar_random_pure_with(3, &mut rng);
            let base = tangle(&psi).unwrap();
            assert!((0.0..=1.0 + 1e-12).contains(&base));
            for perm in &perms {
                let permuted = permute_parties(&psi, perm);
                assert!((tangle(&permuted).unwrap() - base).abs() < 1e-10);
            }
        }
    }

    fn permute_parties(state: &PureState, perm: &[usize; 3]) -> PureState {
        // party p of the output takes the role of party perm[p-1] of the input
        let mut amps = vec![ZERO; 8];
        for idx in 0..8usize {
            let mut src = 0usize;
            for p in 1..=3usize {
                let b = crate::bits::bit(idx, p, 3);
                src = crate::bits::with_bit(src, perm[p - 1], 3, b);
            }
            amps[src] = state.amplitude(idx);
        }
        PureState::new(3, amps).unwrap()
    }

    #[test]
    fn ree_fully_separable_is_zero() {
        let r = relative_entropy_of_entanglement_ub(&DensityOperator::maximally_mixed(3), 8, 2, 7)
            .unwrap();
        assert!(r.value_bits < 1e-6, "{}", r.value_bits);
    }

    #[test]
    fn ree_bell_state_matches_entropy() {
        let rho = PureState::bell_psi_plus().projector();
        let r = relative_entropy_of_entanglement_ub(&rho, 4, 4, 8).unwrap();
        assert!((r.value_bits - 1.0).abs() < 1e-2, "{}", r.value_bits);
    }

    #[test]
    fn ree_partially_entangled_matches_binary_entropy() {
        // sin(t)|00> + cos(t)|11>, sin^2 = 1/4 -> H2(1/4)
        let psi = PureState::new(2, vec![c(0.5), ZERO, ZERO, c(0.75f64.sqrt())]).unwrap();
        let r = relative_entropy_of_entanglement_ub(&psi.projector(), 4, 4, 9).unwrap();
        assert!((r.value_bits - binary_entropy(0.25)).abs() < 1e-2, "{}", r.value_bits);
    }

    #[test]
    fn ree_never_below_entropy_oracle() {
        let mut rng = Rng::seed_from_u64(57);
        let split = Split::bipartition(2, &[1]).unwrap();
        for _ in 0..3 {
            let psi = haar_random_pure_with(2, &mut rng);
            let oracle = entropy_of_entanglement(&psi, &split).unwrap();
            let r =
                relative_entropy_of_entanglement_ub(&psi.projector(), 4, 4, rng.next_u64()).unwrap();
            assert!(r.value_bits >= oracle - 1e-3, "{} vs {}", r.value_bits, oracle);
        }
    }

    #[test]
    fn ansatz_density_is_separable_mixture() {
        let mut rng = Rng::seed_from_u64(58);
        let a = random_init(2, 4, &mut rng);
        let m = a.density();
        assert!((m.trace().re - 1.0).abs() < 1e-12);
        assert!(m.hermiticity_deviation() < 1e-12);
    }

    #[test]
    fn simplex_projection_properties() {
        let p = project_simplex(&[0.5, 0.7, -0.1]);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(p.iter().all(|&x| x >= 0.0));
        let q = project_simplex(&[0.2, 0.3, 0.5]);
        for (a, b) in q.iter().zip([0.2, 0.3, 0.5]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn localizable_ghz_reaches_bell() {
        let le = localizable_entanglement(&PureState::ghz(3), (2, 3), 9).unwrap();
        assert!((le - 1.0).abs() < 1e-6, "{le}");
    }

    #[test]
    fn localizable_w_pair() {
        let le = localizable_entanglement(&PureState::w(3), (2, 3), 9).unwrap();
        assert!((le - 2.0 / 3.0).abs() < 1e-3, "{le}");
    }

    #[test]
    fn localizable_product_is_zero() {
        let st = tensor_product(&PureState::plus(1), &PureState::plus(2));
        let le = localizable_entanglement(&st, (2, 3), 5).unwrap();
        assert!(le < 1e-8);
    }

    #[test]
    fn localizable_pair_only_falls_back_to_concurrence() {
        let le = localizable_entanglement(&PureState::bell_psi_plus(), (1, 2), 5).unwrap();
        assert!((le - 1.0).abs() < 1e-12);
    }

    #[test]
    fn measures_vanish_on_separable_inputs() {
        let product = PureState::basis(3, 4);
        assert!(global_entanglement(&product).unwrap() < 1e-12);
        assert!(tangle(&product).unwrap() < 1e-12);
        let g = geometric_measure(&product, 5, 10).unwrap();
        assert!(g.distance < 1e-7);
        assert!(schmidt_measure(&product).unwrap().exact_bits.unwrap().abs() < 1e-12);
    }
}
