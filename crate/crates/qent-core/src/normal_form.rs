//! Bipartite Schmidt decomposition, the three-qubit generalized Schmidt
//! normal form, and parameter-counting lower bounds.
//!
//! The three-qubit form brings any pure state to
//!
//! ```text
//! l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>
//! ```
//!
//! with `l_i >= 0`, `sum l_i^2 = 1`, and `phi` in `[0, pi]`, by one local
//! unitary per qubit. The construction follows the slice-matrix route: a
//! first-qubit rotation making `det T0' = 0` (a quadratic equation), an SVD
//! of the singular slice, and diagonal phase absorption.

use alloc::vec;
use alloc::vec::Vec;

// float math through the trait; under test builds std's inherent
// methods shadow it
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

use crate::linalg::{svd, vkron, CMatrix, C64, ONE, ZERO};
use crate::states::{PureState, Split};
use crate::tol;
use crate::{Error, Result};

/* Bipartite Schmidt form *****************************************************/

/// Schmidt decomposition of a pure state across a bipartition.
///
/// `coefficients` are the singular values of the reshaped amplitude matrix,
/// non-increasing, squares summing to 1. `local_unitaries = (ua, ub)` map
/// the canonical state `sum_i c_i |i>|i>` back to the input. For a
/// two-dimensional spectrum `theta = asin(c_min)` recovers the angle of the
/// canonical form `sin(theta)|0,0> + cos(theta)|1,1>` with
/// `sin(theta) <= cos(theta)`.
#[derive(Clone, Debug)]
pub struct SchmidtForm2 {
    pub theta: Option<f64>,
    pub coefficients: Vec<f64>,
    pub local_unitaries: (CMatrix, CMatrix),
    block_a: Vec<usize>,
    block_b: Vec<usize>,
    n_qubits: usize,
}

impl SchmidtForm2 {
    /// The canonical diagonal state `sum_i c_i |i>_A |i>_B` on the split's
    /// own ordering (block A on the high-order bits).
    pub fn canonical_amplitudes(&self) -> Vec<C64> {
        let da = 1usize << self.block_a.len();
        let db = 1usize << self.block_b.len();
        let mut v = vec![ZERO; da * db];
        for (i, &c) in self.coefficients.iter().enumerate() {
            v[i * db + i] = C64::new(c, 0.0);
        }
        v
    }

    /// Reconstruct the input state by applying the local unitaries to the
    /// canonical state and permuting parties back to their labels.
    pub fn reconstruct(&self) -> PureState {
        let canonical = self.canonical_amplitudes();
        let da = 1usize << self.block_a.len();
        let db = 1usize << self.block_b.len();
        // apply ua (x) ub
        let mut rotated = vec![ZERO; da * db];
        for a in 0..da {
            for b in 0..db {
                let amp = canonical[a * db + b];
                if amp == ZERO {
                    continue;
                }
                for ra in 0..da {
                    let ca = self.local_unitaries.0[(ra, a)];
                    if ca == ZERO {
                        continue;
                    }
                    for rb in 0..db {
                        rotated[ra * db + rb] += ca * self.local_unitaries.1[(rb, b)] * amp;
                    }
                }
            }
        }
        // scatter (blockA, blockB) bit groups back onto the party labels
        let n = self.n_qubits;
        let mut out = vec![ZERO; 1usize << n];
        for a in 0..da {
            for b in 0..db {
                let idx = crate::bits::merge(a, &self.block_a, b, &self.block_b, n);
                out[idx] = rotated[a * db + b];
            }
        }
        PureState::from_unnormalized(n, out).expect("unitaries preserve norm")
    }
}

/// Reshape a state's amplitudes into the `2^|A| x 2^|B|` matrix of a
/// bipartition, block A indexing rows.
pub fn amplitude_matrix(state: &PureState, block_a: &[usize], block_b: &[usize]) -> CMatrix {
    let n = state.n_qubits();
    let da = 1usize << block_a.len();
    let db = 1usize << block_b.len();
    CMatrix::from_fn(da, db, |a, b| {
        state.amplitude(crate::bits::merge(a, block_a, b, block_b, n))
    })
}

/// Schmidt decomposition across a two-block split.
pub fn schmidt_decompose(state: &PureState, split: &Split) -> Result<SchmidtForm2> {
    if split.n_parties() != state.n_qubits() {
        return Err(Error::DimensionMismatch {
            left: split.n_parties(),
            right: state.n_qubits(),
        });
    }
    if !split.is_bipartition() {
        return Err(Error::BadSplit("schmidt decomposition needs a bipartition".into()));
    }
    let block_a = split.blocks()[0].clone();
    let block_b = split.blocks()[1].clone();
    let m = amplitude_matrix(state, &block_a, &block_b);
    let s = svd(&m);
    let k = m.rows().min(m.cols());
    let coefficients: Vec<f64> = s.singular_values[..k].to_vec();
    // psi = sum_i sigma_i |u_i> |conj(v_i)>, so U_B = conj(V)
    let ub = s.v.conj();
    let theta = if k == 2 { Some(coefficients[1].min(1.0).asin()) } else { None };
    Ok(SchmidtForm2 {
        theta,
        coefficients,
        local_unitaries: (s.u, ub),
        block_a,
        block_b,
        n_qubits: state.n_qubits(),
    })
}

/* Slice matrices *************************************************************/

/// The two 2x2 slices `(T_i)_{jk} = alpha_{i,j,k}` of a three-qubit state,
/// `i` the first qubit's bit.
#[derive(Clone, Debug)]
pub struct SliceMatrices {
    pub t0: CMatrix,
    pub t1: CMatrix,
}

impl SliceMatrices {
    pub fn from_state(state: &PureState) -> Result<Self> {
        if state.n_qubits() != 3 {
            return Err(Error::BadDimension { expected: 8, got: state.dim() });
        }
        let a = state.amplitudes();
        let t0 = CMatrix::from_rows(&[&[a[0], a[1]], &[a[2], a[3]]]);
        let t1 = CMatrix::from_rows(&[&[a[4], a[5]], &[a[6], a[7]]]);
        debug_assert!(
            (t0.frobenius_norm().powi(2) + t1.frobenius_norm().powi(2) - 1.0).abs() < 1e-12,
            "slices of a normalized state carry unit total weight"
        );
        Ok(SliceMatrices { t0, t1 })
    }

    /// `u00 T0 + u01 T1`: the transformed top slice after a first-qubit
    /// rotation with top row `(u00, u01)`.
    pub fn combined(&self, u00: C64, u01: C64) -> CMatrix {
        self.t0.scale(u00).add(&self.t1.scale(u01))
    }
}

/* Three-qubit normal form ****************************************************/

/// Generalized Schmidt normal form of a three-qubit pure state.
#[derive(Clone, Debug)]
pub struct AcinForm {
    /// `[l0, l1, l2, l3, l4]`, all non-negative, squares summing to 1.
    pub lambdas: [f64; 5],
    /// Phase on the `|100>` term, in `[0, pi]`.
    pub phi: f64,
    /// Local unitaries `(U1, U2, U3)` with
    /// `(U1 (x) U2 (x) U3)|psi> = canonical`.
    pub local_unitaries: [CMatrix; 3],
}

impl AcinForm {
    /// The canonical state built from the coefficients.
    pub fn canonical_state(&self) -> PureState {
        let [l0, l1, l2, l3, l4] = self.lambdas;
        let mut amps = vec![ZERO; 8];
        amps[0b000] = C64::new(l0, 0.0);
        amps[0b100] = C64::new(0.0, self.phi).exp() * l1;
        amps[0b101] = C64::new(l2, 0.0);
        amps[0b110] = C64::new(l3, 0.0);
        amps[0b111] = C64::new(l4, 0.0);
        PureState::from_unnormalized(3, amps).expect("normalized coefficients")
    }

    /// Apply the stored local unitaries to `state`.
    pub fn rotate(&self, state: &PureState) -> PureState {
        state
            .apply_one_qubit(1, &self.local_unitaries[0])
            .and_then(|s| s.apply_one_qubit(2, &self.local_unitaries[1]))
            .and_then(|s| s.apply_one_qubit(3, &self.local_unitaries[2]))
            .expect("3-qubit state with 2x2 unitaries")
    }

    /// `|<canonical| (U1 (x) U2 (x) U3) |psi>|^2`.
    pub fn reconstruction_fidelity(&self, state: &PureState) -> f64 {
        self.canonical_state().inner(&self.rotate(state)).norm_sqr()
    }

    /// Sum of squared coefficients (should be 1).
    pub fn norm_sqr(&self) -> f64 {
        self.lambdas.iter().map(|l| l * l).sum()
    }
}

/// Candidate top rows `(u00, u01)` of the first-qubit unitary, i.e. the
/// projective roots of `det(u00 T0 + u01 T1) = 0`.
fn det_zero_candidates(slices: &SliceMatrices) -> Vec<(C64, C64)> {
    let det0 = slices.t0.det2();
    let det1 = slices.t1.det2();
    // det(T0 + z T1) = det0 + z*mixed + z^2*det1
    let mixed = slices.t0[(0, 0)] * slices.t1[(1, 1)] + slices.t1[(0, 0)] * slices.t0[(1, 1)]
        - slices.t0[(0, 1)] * slices.t1[(1, 0)]
        - slices.t1[(0, 1)] * slices.t0[(1, 0)];

    // scale of the quadratic's coefficients for a normalized state
    let scale = (slices.t0.frobenius_norm().powi(2) + slices.t1.frobenius_norm().powi(2)).max(1e-300);
    let tol_c = 1e-14 * scale;

    let mut cands: Vec<(C64, C64)> = Vec::new();
    let mut push = |u00: C64, u01: C64| {
        let n = (u00.norm_sqr() + u01.norm_sqr()).sqrt();
        if n > 0.0 {
            cands.push((u00 / n, u01 / n));
        }
    };

    if det1.norm() > tol_c {
        // genuine quadratic: z = (-b +- sqrt(b^2 - 4ac)) / 2a, stabilized
        let a = det1;
        let b = mixed;
        let c = det0;
        let disc = b * b - a * c * 4.0;
        let mut sq = disc.sqrt();
        if (b.conj() * sq).re < 0.0 {
            sq = -sq;
        }
        let q = (b + sq) * -0.5;
        if q.norm() > 1e-300 {
            push(ONE, q / a);
            push(ONE, c / q);
        } else {
            // b and the discriminant both vanish: double root at 0
            push(ONE, ZERO);
        }
    } else if mixed.norm() > tol_c {
        // linear in z, plus the projective root at infinity
        push(ONE, -det0 / mixed);
        push(ZERO, ONE);
    } else if det0.norm() > tol_c {
        // only u00 = 0 kills the determinant
        push(ZERO, ONE);
    } else {
        // the determinant vanishes identically; fix z = 0 (and try the
        // infinity representative for robustness)
        push(ONE, ZERO);
        push(ZERO, ONE);
    }
    cands
}

fn wrap_angle(a: f64) -> f64 {
    let two_pi = 2.0 * core::f64::consts::PI;
    let mut x = a % two_pi;
    if x < 0.0 {
        x += two_pi;
    }
    // phases that are zero up to rounding must not report as just-below 2 pi
    if two_pi - x < 1e-9 {
        x = 0.0;
    }
    x
}

/// Build the full form for one root candidate. Returns `None` when the
/// candidate fails to annihilate the second singular value of `T0'`.
fn form_for_candidate(slices: &SliceMatrices, u00: C64, u01: C64) -> Option<AcinForm> {
    // first-qubit unitary: top row (u00, u01), second row (-conj(u01), conj(u00))
    let u1 = CMatrix::from_rows(&[&[u00, u01], &[-u01.conj(), u00.conj()]]);
    let t0p = slices.combined(u00, u01);
    let t1p = slices.combined(-u01.conj(), u00.conj());

    let s = svd(&t0p);
    // the slice was driven singular, so sigma_1 must be noise
    if s.singular_values[1] > 1e-7 {
        return None;
    }
    let u2 = s.u.adjoint();
    let u3 = s.v.transpose();
    let l0 = s.singular_values[0];
    // T1'' = U2 T1' U3^T = U^dagger T1' V
    let t1pp = u2.mul(&t1p).mul(&s.v);

    let t00 = t1pp[(0, 0)];
    let t01 = t1pp[(0, 1)];
    let t10 = t1pp[(1, 0)];
    let t11 = t1pp[(1, 1)];

    let entries = [t00, t01, t10, t11];
    let mags = [t00.norm(), t01.norm(), t10.norm(), t11.norm()];
    let scale = mags.iter().cloned().fold(l0, f64::max).max(1e-300);
    let nz = |k: usize| mags[k] > 1e-13 * scale;
    let arg = |k: usize| entries[k].arg();

    // Diagonal phases xi_jk on the |1jk> amplitudes obey the constraint
    // xi00 + xi11 = xi01 + xi10; a zero entry leaves its xi free. With all
    // three of t01, t10, t11 nonzero xi00 is forced and carries the
    // invariant phase; otherwise the slack always allows phi = 0.
    let (xi00, xi01, xi10);
    if nz(1) && nz(2) && nz(3) {
        xi01 = -arg(1);
        xi10 = -arg(2);
        xi00 = xi01 + xi10 + arg(3);
    } else {
        xi00 = if nz(0) { -arg(0) } else { 0.0 };
        let a01 = if nz(1) { -arg(1) } else { 0.0 };
        let a10 = if nz(2) { -arg(2) } else { 0.0 };
        let a11 = if nz(3) { -arg(3) } else { 0.0 };
        if !nz(3) {
            xi01 = a01;
            xi10 = a10;
        } else if !nz(1) {
            xi10 = a10;
            xi01 = xi00 + a11 - xi10;
        } else {
            // t10 == 0 here (t01, t11 nonzero)
            xi01 = a01;
            xi10 = xi00 + a11 - xi01;
        }
    }

    let phi = if nz(0) { wrap_angle(arg(0) + xi00) } else { 0.0 };

    // realize the xi's as diagonal unitaries D1, D2, D3 with b0 = c0 = 0
    let a1 = xi00;
    let b1 = xi10 - xi00;
    let c1 = xi01 - xi00;
    let d1 = CMatrix::diagonal(&[ONE, C64::new(0.0, a1).exp()]);
    let d2 = CMatrix::diagonal(&[ONE, C64::new(0.0, b1).exp()]);
    let d3 = CMatrix::diagonal(&[ONE, C64::new(0.0, c1).exp()]);

    let lambdas = [l0, mags[0], mags[1], mags[2], mags[3]];
    Some(AcinForm {
        lambdas,
        phi,
        local_unitaries: [d1.mul(&u1), d2.mul(&u2), d3.mul(&u3)],
    })
}

/// Three-qubit generalized Schmidt normal form.
///
/// Both determinant roots are tried. Generically they yield two different
/// valid forms of which exactly one has its phase in `[0, pi]`; that one is
/// the unique normal form and is returned. Among several in-range candidates
/// (degenerate inputs) the form with the largest `l0` wins, ties broken by
/// the smaller `phi`.
pub fn acin_normal_form(state: &PureState) -> Result<AcinForm> {
    let slices = SliceMatrices::from_state(state)?;
    let mut best: Option<AcinForm> = None;
    let mut best_fidelity = 0.0f64;
    let pi = core::f64::consts::PI;
    let in_range = |f: &AcinForm| f.phi <= pi + 1e-12;
    for (u00, u01) in det_zero_candidates(&slices) {
        let Some(form) = form_for_candidate(&slices, u00, u01) else {
            continue;
        };
        let fid = form.reconstruction_fidelity(state);
        best_fidelity = best_fidelity.max(fid);
        if fid < tol::ACIN_FIDELITY {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => match (in_range(&form), in_range(b)) {
                (true, false) => true,
                (false, true) => false,
                _ => {
                    form.lambdas[0] > b.lambdas[0] + 1e-12
                        || ((form.lambdas[0] - b.lambdas[0]).abs() <= 1e-12 && form.phi < b.phi)
                }
            },
        };
        if better {
            best = Some(form);
        }
    }
    best.ok_or(Error::ReconstructionFailed { fidelity: best_fidelity })
}

/* Parameter counting *********************************************************/

/// Lower bound `2^{n+1} - 3n - 2` on the real parameters labeling
/// LU-inequivalent pure states of `n` qubits.
pub fn lu_parameter_lower_bound(n: u32) -> i64 {
    assert!(n >= 1, "need at least one qubit");
    2i64.pow(n + 1) - 3 * n as i64 - 2
}

/// Lower bound `2^{n+1} - 6n - 2` for SLOCC equivalence classes; may be
/// negative, signaling no information.
pub fn slocc_parameter_lower_bound(n: u32) -> i64 {
    assert!(n >= 1, "need at least one qubit");
    2i64.pow(n + 1) - 6 * n as i64 - 2
}

/// Tensor product of three single-qubit vectors in crate bit order.
pub fn product_3q(v1: &[C64; 2], v2: &[C64; 2], v3: &[C64; 2]) -> PureState {
    let amps = vkron(&vkron(v1.as_slice(), v2.as_slice()), v3.as_slice());
    PureState::from_unnormalized(3, amps).expect("product of unit vectors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;
    use crate::states::{fidelity_pure, haar_random_pure_with, tensor_product};

    #[test]
    fn schmidt_bell_state() {
        let s = schmidt_decompose(&PureState::bell_psi_plus(), &Split::bipartition(2, &[1]).unwrap())
            .unwrap();
        assert!((s.theta.unwrap() - core::f64::consts::FRAC_PI_4).abs() < 1e-12);
        for c in &s.coefficients {
            assert!((c - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        }
    }

    #[test]
    fn schmidt_product_state() {
        let st = tensor_product(&PureState::basis(1, 0), &PureState::plus(1));
        let s = schmidt_decompose(&st, &Split::bipartition(2, &[1]).unwrap()).unwrap();
        assert!((s.coefficients[0] - 1.0).abs() < 1e-12);
        assert!(s.coefficients[1].abs() < 1e-12);
        assert!(s.theta.unwrap().abs() < 1e-9);
    }

    #[test]
    fn schmidt_matches_gram_oracle_and_reconstructs() {
        // oracle path: eigenvalues of the reduced density operator
        let mut rng = Rng::seed_from_u64(31);
        for _ in 0..20 {
            let psi = haar_random_pure_with(2, &mut rng);
            let split = Split::bipartition(2, &[1]).unwrap();
            let s = schmidt_decompose(&psi, &split).unwrap();
            let red = psi.reduced_density(&[1]).unwrap();
            let evals = red.eigenvalues();
            for (c, l) in s.coefficients.iter().zip(evals.iter()) {
                assert!((c * c - l).abs() < 1e-10);
            }
            let rec = s.reconstruct();
            assert!(fidelity_pure(&rec, &psi).unwrap() > 1.0 - 1e-10);
        }
    }

    #[test]
    fn schmidt_uneven_split_reconstructs() {
        let mut rng = Rng::seed_from_u64(32);
        for block in [[1usize], [2], [3]] {
            let psi = haar_random_pure_with(3, &mut rng);
            let split = Split::bipartition(3, &block).unwrap();
            let s = schmidt_decompose(&psi, &split).unwrap();
            let rec = s.reconstruct();
            assert!(fidelity_pure(&rec, &psi).unwrap() > 1.0 - 1e-10);
        }
    }

    #[test]
    fn schmidt_invariant_under_local_unitaries() {
        let mut rng = Rng::seed_from_u64(33);
        let psi = haar_random_pure_with(2, &mut rng);
        let split = Split::bipartition(2, &[1]).unwrap();
        let base = schmidt_decompose(&psi, &split).unwrap();
        for _ in 0..5 {
            let u = rng.unitary(2);
            let v = rng.unitary(2);
            let rotated = psi.apply_one_qubit(1, &u).unwrap().apply_one_qubit(2, &v).unwrap();
            let s = schmidt_decompose(&rotated, &split).unwrap();
            for (a, b) in s.coefficients.iter().zip(base.coefficients.iter()) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn acin_ghz() {
        let f = acin_normal_form(&PureState::ghz(3)).unwrap();
        let h = core::f64::consts::FRAC_1_SQRT_2;
        assert!((f.lambdas[0] - h).abs() < 1e-12);
        assert!((f.lambdas[4] - h).abs() < 1e-12);
        for k in 1..4 {
            assert!(f.lambdas[k].abs() < 1e-12);
        }
        assert!(f.phi.abs() < 1e-12);
    }

    #[test]
    fn acin_basis_state() {
        let f = acin_normal_form(&PureState::basis(3, 0)).unwrap();
        assert!((f.lambdas[0] - 1.0).abs() < 1e-12);
        for k in 1..5 {
            assert!(f.lambdas[k].abs() < 1e-12);
        }
    }

    #[test]
    fn acin_w_state_has_w_class_form() {
        let f = acin_normal_form(&PureState::w(3)).unwrap();
        // W-class signature: l4 = phi = 0
        assert!(f.lambdas[4].abs() < 1e-10);
        assert!(f.phi.abs() < 1e-10);
        let t = 1.0 / 3.0f64.sqrt();
        assert!((f.lambdas[0] - t).abs() < 1e-10);
        assert!(f.reconstruction_fidelity(&PureState::w(3)) > tol::ACIN_FIDELITY);
    }

    #[test]
    fn acin_random_states_reconstruct() {
        let mut rng = Rng::seed_from_u64(34);
        for _ in 0..50 {
            let psi = haar_random_pure_with(3, &mut rng);
            let f = acin_normal_form(&psi).unwrap();
            assert!(f.reconstruction_fidelity(&psi) > tol::ACIN_FIDELITY);
            assert!((f.norm_sqr() - 1.0).abs() < 1e-10);
            assert!(f.phi >= 0.0 && f.phi <= core::f64::consts::PI + 1e-12, "phi={}", f.phi);
            for l in f.lambdas {
                assert!(l >= 0.0);
            }
        }
    }

    #[test]
    fn acin_idempotent() {
        let mut rng = Rng::seed_from_u64(35);
        for _ in 0..20 {
            let psi = haar_random_pure_with(3, &mut rng);
            let f = acin_normal_form(&psi).unwrap();
            let g = acin_normal_form(&f.canonical_state()).unwrap();
            for (a, b) in f.lambdas.iter().zip(g.lambdas.iter()) {
                assert!((a - b).abs() < 1e-8, "{:?} vs {:?}", f.lambdas, g.lambdas);
            }
            assert!((f.phi - g.phi).abs() < 1e-8, "phi {} vs {}", f.phi, g.phi);
        }
    }

    #[test]
    fn acin_lu_invariant() {
        let mut rng = Rng::seed_from_u64(36);
        for _ in 0..20 {
            let psi = haar_random_pure_with(3, &mut rng);
            let f = acin_normal_form(&psi).unwrap();
            let rotated = psi
                .apply_one_qubit(1, &rng.unitary(2))
                .unwrap()
                .apply_one_qubit(2, &rng.unitary(2))
                .unwrap()
                .apply_one_qubit(3, &rng.unitary(2))
                .unwrap();
            let g = acin_normal_form(&rotated).unwrap();
            for (a, b) in f.lambdas.iter().zip(g.lambdas.iter()) {
                assert!((a - b).abs() < 1e-8, "{:?} vs {:?}", f.lambdas, g.lambdas);
            }
            assert!((f.phi - g.phi).abs() < 1e-8, "phi {} vs {}", f.phi, g.phi);
        }
    }

    #[test]
    fn acin_biseparable_input() {
        // |psi>_1 (x) Bell_23: degenerate slices, must not error
        let st = tensor_product(&PureState::plus(1), &PureState::bell_phi_plus());
        let f = acin_normal_form(&st).unwrap();
        assert!(f.reconstruction_fidelity(&st) > tol::ACIN_FIDELITY);
    }

    #[test]
    fn parameter_bounds() {
        assert_eq!(lu_parameter_lower_bound(2), 0);
        assert_eq!(lu_parameter_lower_bound(3), 5);
        assert_eq!(lu_parameter_lower_bound(4), 18);
        assert_eq!(slocc_parameter_lower_bound(2), -6);
        assert_eq!(slocc_parameter_lower_bound(3), -4);
        assert_eq!(slocc_parameter_lower_bound(4), 6);
    }
}
