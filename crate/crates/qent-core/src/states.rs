//! State representations and the linear-algebra operations on them.
//!
//! [`PureState`] stores the complex amplitude vector of an N-qubit register,
//! [`DensityOperator`] a Hermitian positive unit-trace matrix on the same
//! register, and [`Split`] a partition of the parties. Operations cover
//! tensor products, partial trace/transpose, entropies, trace norm,
//! single-qubit projective measurements, Haar sampling, and fidelity.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

// float math through the trait; under test builds std's inherent
// methods shadow it
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

use crate::bits;
use crate::linalg::{self, eigh, vdot, vkron, vnorm, CMatrix, C64, ONE, ZERO};
use crate::rng::Rng;
use crate::tol;
use crate::{Error, Result};

/* Pure states ****************************************************************/

/// Normalized pure state of `n_qubits` qubits.
///
/// The amplitude at index `i` belongs to the basis label whose party-`a` bit
/// is `bits::bit(i, a, n)`; see the crate-level bit-ordering note.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<C64>,
}

impl PureState {
    /// Validating constructor: length must be `2^n_qubits` and the Euclidean
    /// norm must be 1 within `tol::VALIDATE`.
    pub fn new(n_qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        if n_qubits == 0 || amplitudes.len() != 1usize << n_qubits {
            return Err(Error::BadDimension {
                expected: 1usize << n_qubits,
                got: amplitudes.len(),
            });
        }
        let norm = vnorm(&amplitudes);
        if (norm - 1.0).abs() > tol::VALIDATE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(PureState { n_qubits, amplitudes })
    }

    /// Normalize and wrap; errors on the zero vector or bad length.
    pub fn from_unnormalized(n_qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        if n_qubits == 0 || amplitudes.len() != 1usize << n_qubits {
            return Err(Error::BadDimension {
                expected: 1usize << n_qubits,
                got: amplitudes.len(),
            });
        }
        let norm = vnorm(&amplitudes);
        if norm < 1e-150 {
            return Err(Error::NotNormalized { norm });
        }
        let inv = C64::new(1.0 / norm, 0.0);
        Ok(PureState {
            n_qubits,
            amplitudes: amplitudes.into_iter().map(|a| a * inv).collect(),
        })
    }

    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let dim = 1usize << n_qubits;
        assert!(index < dim, "basis index out of range");
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        PureState { n_qubits, amplitudes }
    }

    /// `(|0..0> + |1..1>)/sqrt(2)`.
    pub fn ghz(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let mut amplitudes = vec![ZERO; dim];
        let x = C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        amplitudes[0] = x;
        amplitudes[dim - 1] = x;
        PureState { n_qubits, amplitudes }
    }

    /// Equal superposition of all weight-1 basis strings.
    pub fn w(n_qubits: usize) -> Self {
        assert!(n_qubits >= 2, "W state needs at least 2 qubits");
        let dim = 1usize << n_qubits;
        let mut amplitudes = vec![ZERO; dim];
        let x = C64::new(1.0 / (n_qubits as f64).sqrt(), 0.0);
        for a in 1..=n_qubits {
            amplitudes[1usize << (n_qubits - a)] = x;
        }
        PureState { n_qubits, amplitudes }
    }

    /// `|+>^(x)n`.
    pub fn plus(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let x = C64::new(1.0 / (dim as f64).sqrt(), 0.0);
        PureState { n_qubits, amplitudes: vec![x; dim] }
    }

    /// Bell state `(|0,1> + |1,0>)/sqrt(2)`.
    pub fn bell_psi_plus() -> Self {
        let x = C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        PureState { n_qubits: 2, amplitudes: vec![ZERO, x, x, ZERO] }
    }

    /// Bell state `(|0,0> + |1,1>)/sqrt(2)`.
    pub fn bell_phi_plus() -> Self {
        Self::ghz(2)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> C64 {
        vdot(&self.amplitudes, &other.amplitudes)
    }

    /// Projector `|psi><psi|` as a density operator.
    pub fn projector(&self) -> DensityOperator {
        DensityOperator {
            n_qubits: self.n_qubits,
            matrix: CMatrix::outer(&self.amplitudes, &self.amplitudes),
        }
    }

    /// Apply a single-qubit operator to `party` (not necessarily unitary);
    /// the result is *not* renormalized.
    pub fn apply_one_qubit_raw(&self, party: usize, op: &CMatrix) -> Result<Vec<C64>> {
        self.check_party(party)?;
        assert_eq!((op.rows(), op.cols()), (2, 2), "one-qubit operator must be 2x2");
        let n = self.n_qubits;
        let mut out = vec![ZERO; self.dim()];
        for (idx, &amp) in self.amplitudes.iter().enumerate() {
            if amp == ZERO {
                continue;
            }
            let b = bits::bit(idx, party, n);
            for target in 0..2usize {
                let coeff = op[(target, b)];
                if coeff == ZERO {
                    continue;
                }
                out[bits::with_bit(idx, party, n, target)] += coeff * amp;
            }
        }
        Ok(out)
    }

    /// Apply a unitary to one qubit, keeping normalization.
    pub fn apply_one_qubit(&self, party: usize, u: &CMatrix) -> Result<PureState> {
        let out = self.apply_one_qubit_raw(party, u)?;
        PureState::from_unnormalized(self.n_qubits, out)
    }

    /// Apply one 2x2 operator per party (`ops.len() == n`), renormalizing.
    /// This realizes an invertible local filtering when every operator is
    /// invertible.
    pub fn apply_local(&self, ops: &[CMatrix]) -> Result<PureState> {
        if ops.len() != self.n_qubits {
            return Err(Error::DimensionMismatch { left: ops.len(), right: self.n_qubits });
        }
        let mut cur = self.amplitudes.clone();
        for (k, op) in ops.iter().enumerate() {
            let tmp = PureState { n_qubits: self.n_qubits, amplitudes: cur };
            cur = tmp.apply_one_qubit_raw(k + 1, op)?;
        }
        PureState::from_unnormalized(self.n_qubits, cur)
    }

    /// Reduced density operator on `keep` (ascending party labels).
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityOperator> {
        let keep = checked_subset(keep, self.n_qubits)?;
        let n = self.n_qubits;
        let traced: Vec<usize> = (1..=n).filter(|p| !keep.contains(p)).collect();
        let dk = 1usize << keep.len();
        let dt = 1usize << traced.len();
        let mut m = CMatrix::zeros(dk, dk);
        for t in 0..dt {
            // sub-vector over kept parties at fixed traced configuration
            let mut sub = vec![ZERO; dk];
            for k in 0..dk {
                sub[k] = self.amplitudes[bits::merge(k, &keep, t, &traced, n)];
            }
            for r in 0..dk {
                if sub[r] == ZERO {
                    continue;
                }
                for c in 0..dk {
                    m[(r, c)] += sub[r] * sub[c].conj();
                }
            }
        }
        Ok(DensityOperator { n_qubits: keep.len(), matrix: m })
    }

    /// Rotate the global phase so the first non-negligible amplitude is real
    /// positive.
    pub fn phase_canonical(&self) -> PureState {
        let thresh = 1e-12;
        for a in &self.amplitudes {
            if a.norm() > thresh {
                let ph = (a / a.norm()).conj();
                return PureState {
                    n_qubits: self.n_qubits,
                    amplitudes: self.amplitudes.iter().map(|z| z * ph).collect(),
                };
            }
        }
        self.clone()
    }

    fn check_party(&self, party: usize) -> Result<()> {
        if party == 0 || party > self.n_qubits {
            return Err(Error::PartyOutOfRange { party, n_qubits: self.n_qubits });
        }
        Ok(())
    }
}

fn checked_subset(parties: &[usize], n: usize) -> Result<Vec<usize>> {
    if parties.is_empty() {
        return Err(Error::BadSubset("empty subset".to_string()));
    }
    let mut sorted = parties.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::BadSubset(format!("duplicate party {}", w[0])));
        }
    }
    for &p in &sorted {
        if p == 0 || p > n {
            return Err(Error::PartyOutOfRange { party: p, n_qubits: n });
        }
    }
    Ok(sorted)
}

/* Density operators **********************************************************/

/// Hermitian, positive, unit-trace operator on `n_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    n_qubits: usize,
    matrix: CMatrix,
}

impl DensityOperator {
    /// Validating constructor: Hermitian within `tol::VALIDATE` (max entry),
    /// trace 1 within `tol::VALIDATE`, eigenvalues above `-tol::POSITIVITY`.
    pub fn new(n_qubits: usize, matrix: CMatrix) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if n_qubits == 0 || matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::BadDimension { expected: dim, got: matrix.rows() });
        }
        let dev = matrix.hermiticity_deviation();
        if dev > tol::VALIDATE {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol::VALIDATE {
            return Err(Error::BadTrace { trace });
        }
        let min_eig = eigh(&matrix).values.last().copied().unwrap_or(0.0);
        if min_eig < -tol::POSITIVITY {
            return Err(Error::NotPositive { min_eigenvalue: min_eig });
        }
        Ok(DensityOperator { n_qubits, matrix })
    }

    /// Construct without validation; for internal call sites whose output is
    /// valid by construction (partial traces, convex mixtures, channels).
    pub(crate) fn new_unchecked(n_qubits: usize, matrix: CMatrix) -> Self {
        DensityOperator { n_qubits, matrix }
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        DensityOperator {
            n_qubits,
            matrix: CMatrix::identity(dim).scale_re(1.0 / dim as f64),
        }
    }

    /// Convex mixture `sum_i w_i rho_i`; weights must be a probability vector.
    pub fn mixture(parts: &[(f64, DensityOperator)]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::BadArgument("empty mixture".to_string()));
        }
        let n = parts[0].1.n_qubits;
        let mut total = 0.0;
        let mut m = CMatrix::zeros(1 << n, 1 << n);
        for (w, rho) in parts {
            if rho.n_qubits != n {
                return Err(Error::DimensionMismatch { left: rho.n_qubits, right: n });
            }
            if *w < -1e-12 {
                return Err(Error::BadArgument("negative mixture weight".to_string()));
            }
            total += w;
            m = m.add(&rho.matrix.scale_re(*w));
        }
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::BadArgument(format!("mixture weights sum to {total}")));
        }
        Ok(DensityOperator { n_qubits: n, matrix: m })
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Eigenvalues, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eigh(&self.matrix).values
    }

    pub fn purity(&self) -> f64 {
        self.matrix.mul(&self.matrix).trace().re
    }

    /// Rank at the shared relative tolerance.
    pub fn rank(&self) -> usize {
        let vals = self.eigenvalues();
        let max = vals.first().copied().unwrap_or(0.0);
        if max <= 0.0 {
            return 0;
        }
        vals.iter().filter(|&&l| l > tol::RANK_REL * max).count()
    }
}

/* Splits *********************************************************************/

/// Partition of the parties `{1..n}` into disjoint non-empty blocks,
/// canonically ordered by smallest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    n_parties: usize,
    blocks: Vec<Vec<usize>>,
}

impl Split {
    pub fn new(n_parties: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut seen = vec![false; n_parties + 1];
        let mut canon: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        for block in blocks {
            if block.is_empty() {
                return Err(Error::BadSplit("empty block".to_string()));
            }
            let mut b = block.clone();
            b.sort_unstable();
            for &p in &b {
                if p == 0 || p > n_parties {
                    return Err(Error::PartyOutOfRange { party: p, n_qubits: n_parties });
                }
                if seen[p] {
                    return Err(Error::BadSplit(format!("party {p} appears twice")));
                }
                seen[p] = true;
            }
            canon.push(b);
        }
        if seen.iter().skip(1).any(|s| !s) {
            return Err(Error::BadSplit("blocks do not cover all parties".to_string()));
        }
        canon.sort_by_key(|b| b[0]);
        Ok(Split { n_parties, blocks: canon })
    }

    /// Two-block split `block | complement`.
    pub fn bipartition(n_parties: usize, block: &[usize]) -> Result<Self> {
        let block = checked_subset(block, n_parties)?;
        if block.len() == n_parties {
            return Err(Error::BadSplit("bipartition block covers all parties".to_string()));
        }
        let rest: Vec<usize> = (1..=n_parties).filter(|p| !block.contains(p)).collect();
        Split::new(n_parties, &[block, rest])
    }

    /// The trivial one-block split `{1..n}`.
    pub fn trivial(n_parties: usize) -> Self {
        Split { n_parties, blocks: vec![(1..=n_parties).collect()] }
    }

    /// The finest split `1-2-..-n`.
    pub fn finest(n_parties: usize) -> Self {
        Split { n_parties, blocks: (1..=n_parties).map(|p| vec![p]).collect() }
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_bipartition(&self) -> bool {
        self.blocks.len() == 2
    }

    /// Render as the conventional dash notation, e.g. `12-3`.
    pub fn label(&self) -> alloc::string::String {
        let mut out = alloc::string::String::new();
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                out.push('-');
            }
            for p in b {
                out.push_str(&p.to_string());
            }
        }
        out
    }
}

/* Measurements ***************************************************************/

/// Outcome branch of a projective measurement.
///
/// `post_state` is `None` for branches whose probability is below
/// `tol::ZERO_PROB` (a renormalized post-state would be meaningless there).
#[derive(Clone, Debug)]
pub struct MeasurementRecord {
    pub outcome_label: usize,
    pub probability: f64,
    pub post_state: Option<PureState>,
}

/// Orthonormal single-qubit measurement basis.
#[derive(Clone, Debug)]
pub struct QubitBasis {
    pub vectors: [[C64; 2]; 2],
}

impl QubitBasis {
    pub fn new(v0: [C64; 2], v1: [C64; 2]) -> Result<Self> {
        let n0 = (v0[0].norm_sqr() + v0[1].norm_sqr() - 1.0).abs();
        let n1 = (v1[0].norm_sqr() + v1[1].norm_sqr() - 1.0).abs();
        let ov = (v0[0].conj() * v1[0] + v0[1].conj() * v1[1]).norm();
        let dev = n0.max(n1).max(ov);
        if dev > tol::BASIS_ORTHO {
            return Err(Error::NonOrthonormalBasis { deviation: dev });
        }
        Ok(QubitBasis { vectors: [v0, v1] })
    }

    /// Computational (Z) basis.
    pub fn z() -> Self {
        QubitBasis { vectors: [[ONE, ZERO], [ZERO, ONE]] }
    }

    /// Hadamard (X) basis `{|+>, |->}`.
    pub fn x() -> Self {
        let h = C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        QubitBasis { vectors: [[h, h], [h, -h]] }
    }

    /// Basis from Bloch angles: `v0 = (cos(theta/2), e^{i phi} sin(theta/2))`
    /// and its orthogonal complement.
    pub fn from_bloch(theta: f64, phi: f64) -> Self {
        let c = (theta / 2.0).cos();
        let s = (theta / 2.0).sin();
        let e = C64::new(0.0, phi).exp();
        QubitBasis {
            vectors: [
                [C64::new(c, 0.0), e * s],
                [C64::new(s, 0.0), -(e * c)],
            ],
        }
    }
}

/* Free operations ************************************************************/

/// Kronecker product of two registers; `a`'s parties become `1..=a.n`,
/// `b`'s follow.
pub fn tensor_product(a: &PureState, b: &PureState) -> PureState {
    PureState {
        n_qubits: a.n_qubits + b.n_qubits,
        amplitudes: vkron(&a.amplitudes, &b.amplitudes),
    }
}

/// Partial trace keeping `keep`; the result's parties follow the ascending
/// order of `keep`.
pub fn partial_trace(rho: &DensityOperator, keep: &[usize]) -> Result<DensityOperator> {
    let keep = checked_subset(keep, rho.n_qubits)?;
    let n = rho.n_qubits;
    let traced: Vec<usize> = (1..=n).filter(|p| !keep.contains(p)).collect();
    let dk = 1usize << keep.len();
    let dt = 1usize << traced.len();
    let mut out = CMatrix::zeros(dk, dk);
    for r in 0..dk {
        for c in 0..dk {
            let mut acc = ZERO;
            for t in 0..dt {
                let row = bits::merge(r, &keep, t, &traced, n);
                let col = bits::merge(c, &keep, t, &traced, n);
                acc += rho.matrix[(row, col)];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(DensityOperator { n_qubits: keep.len(), matrix: out })
}

/// Transpose the tensor factors of `subset`; the result is Hermitian but in
/// general not positive, so it is returned as a bare matrix.
pub fn partial_transpose(rho: &DensityOperator, subset: &[usize]) -> Result<CMatrix> {
    let subset = checked_subset(subset, rho.n_qubits)?;
    if subset.len() == rho.n_qubits {
        return Err(Error::BadSubset(
            "partial transpose over all parties is the plain transpose; pass a proper subset"
                .to_string(),
        ));
    }
    let n = rho.n_qubits;
    let dim = rho.dim();
    let mut out = CMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            let (sr, sc) = bits::swap_bits(r, c, &subset, n);
            out[(r, c)] = rho.matrix[(sr, sc)];
        }
    }
    Ok(out)
}

/// Von Neumann entropy in bits, with `0 log 0 := 0`.
pub fn von_neumann_entropy(rho: &DensityOperator) -> f64 {
    entropy_of_spectrum(&rho.eigenvalues())
}

/// Entropy of a spectrum in bits, ignoring non-positive rounding noise.
pub fn entropy_of_spectrum(eigenvalues: &[f64]) -> f64 {
    let mut s = 0.0;
    for &l in eigenvalues {
        if l > 0.0 {
            s -= l * l.log2();
        }
    }
    s.max(0.0)
}

/// Trace norm (sum of singular values) of a square matrix.
pub fn trace_norm(a: &CMatrix) -> Result<f64> {
    linalg::trace_norm(a)
}

/// Projective measurement of one qubit in the given basis. Returns one
/// record per outcome; post-states live on the remaining `n-1` qubits (the
/// surviving parties keep their relative order and are relabeled `1..n-1`).
pub fn projective_measure_qubit(
    state: &PureState,
    party: usize,
    basis: &QubitBasis,
) -> Result<Vec<MeasurementRecord>> {
    state.check_party(party)?;
    if state.n_qubits == 1 {
        // post-state on "remaining qubits" is empty; report probabilities only
        let mut records = Vec::with_capacity(2);
        for (k, v) in basis.vectors.iter().enumerate() {
            let amp = v[0].conj() * state.amplitudes[0] + v[1].conj() * state.amplitudes[1];
            records.push(MeasurementRecord {
                outcome_label: k,
                probability: amp.norm_sqr(),
                post_state: None,
            });
        }
        return Ok(records);
    }
    let n = state.n_qubits;
    let sub_dim = 1usize << (n - 1);
    let mut records = Vec::with_capacity(2);
    for (k, v) in basis.vectors.iter().enumerate() {
        let mut sub = vec![ZERO; sub_dim];
        for j in 0..sub_dim {
            let a0 = state.amplitudes[bits::insert_bit(j, party, n, 0)];
            let a1 = state.amplitudes[bits::insert_bit(j, party, n, 1)];
            sub[j] = v[0].conj() * a0 + v[1].conj() * a1;
        }
        let p = sub.iter().map(|z| z.norm_sqr()).sum::<f64>();
        let post_state = if p > tol::ZERO_PROB {
            Some(PureState::from_unnormalized(n - 1, sub)?)
        } else {
            None
        };
        records.push(MeasurementRecord { outcome_label: k, probability: p, post_state });
    }
    Ok(records)
}

/// Haar-random pure state from a fixed seed.
pub fn haar_random_pure(n_qubits: usize, seed: u64) -> PureState {
    let mut rng = Rng::seed_from_u64(seed);
    haar_random_pure_with(n_qubits, &mut rng)
}

/// Haar-random pure state drawing from a caller-held stream.
pub fn haar_random_pure_with(n_qubits: usize, rng: &mut Rng) -> PureState {
    PureState { n_qubits, amplitudes: rng.unit_vector(1usize << n_qubits) }
}

/// `|<a|b>|^2`.
pub fn fidelity_pure(a: &PureState, b: &PureState) -> Result<f64> {
    if a.n_qubits != b.n_qubits {
        return Err(Error::DimensionMismatch { left: a.n_qubits, right: b.n_qubits });
    }
    Ok(a.inner(b).norm_sqr().min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn constructors_validate() {
        assert!(PureState::new(1, vec![ONE, ZERO]).is_ok());
        assert!(matches!(
            PureState::new(1, vec![ONE, ONE]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            PureState::new(2, vec![ONE, ZERO]),
            Err(Error::BadDimension { .. })
        ));
    }

    #[test]
    fn tensor_product_identity_case() {
        // |0> (x) |0> -> |0,0>
        let z = PureState::basis(1, 0);
        let t = tensor_product(&z, &z);
        assert_eq!(t.amplitude(0), ONE);
        // |+> (x) |+> -> uniform on 2 qubits
        let p = tensor_product(&PureState::plus(1), &PureState::plus(1));
        for k in 0..4 {
            assert!((p.amplitude(k) - c(0.5)).norm() < 1e-15);
        }
    }

    #[test]
    fn partial_trace_of_w_matches_residual_mixture() {
        // tr_1 |W><W| = 1/3 |00><00| + 2/3 |Psi+><Psi+|
        let w = PureState::w(3).projector();
        let red = partial_trace(&w, &[2, 3]).unwrap();
        let psi_plus = PureState::bell_psi_plus().projector();
        let target = DensityOperator::mixture(&[
            (1.0 / 3.0, PureState::basis(2, 0).projector()),
            (2.0 / 3.0, psi_plus),
        ])
        .unwrap();
        assert!(red.matrix().sub(target.matrix()).max_abs() < 1e-12);
    }

    #[test]
    fn partial_trace_of_ghz_is_classical_mixture() {
        let ghz = PureState::ghz(3).projector();
        let red = partial_trace(&ghz, &[2, 3]).unwrap();
        let target = DensityOperator::mixture(&[
            (0.5, PureState::basis(2, 0).projector()),
            (0.5, PureState::basis(2, 3).projector()),
        ])
        .unwrap();
        assert!(red.matrix().sub(target.matrix()).max_abs() < 1e-12);
    }

    #[test]
    fn partial_trace_keep_all_is_identity() {
        let mut rng = Rng::seed_from_u64(2);
        let psi = haar_random_pure_with(3, &mut rng);
        let rho = psi.projector();
        let same = partial_trace(&rho, &[1, 2, 3]).unwrap();
        assert!(same.matrix().sub(rho.matrix()).max_abs() < 1e-14);
    }

    #[test]
    fn partial_trace_recovers_factor() {
        let mut rng = Rng::seed_from_u64(3);
        for _ in 0..10 {
            let a = haar_random_pure_with(2, &mut rng);
            let b = haar_random_pure_with(1, &mut rng);
            let joint = tensor_product(&a, &b).projector();
            let red = partial_trace(&joint, &[1, 2]).unwrap();
            assert!(red.matrix().sub(a.projector().matrix()).max_abs() < 1e-10);
        }
    }

    #[test]
    fn partial_transpose_mixed_state_unchanged() {
        let rho = DensityOperator::maximally_mixed(2);
        let pt = partial_transpose(&rho, &[1]).unwrap();
        assert!(pt.sub(rho.matrix()).max_abs() < 1e-15);
        let e = eigh(&pt);
        for &l in &e.values {
            assert!((l - 0.25).abs() < 1e-14);
        }
    }

    #[test]
    fn partial_transpose_bell_min_eigenvalue() {
        let rho = PureState::bell_psi_plus().projector();
        let pt = partial_transpose(&rho, &[1]).unwrap();
        let e = eigh(&pt);
        assert!((e.values.last().unwrap() + 0.5).abs() < 1e-12);
    }

    #[test]
    fn partial_transpose_ghz_is_npt() {
        let rho = PureState::ghz(3).projector();
        let pt = partial_transpose(&rho, &[1]).unwrap();
        let e = eigh(&pt);
        assert!(*e.values.last().unwrap() < -0.1);
        assert!(partial_transpose(&rho, &[1, 2, 3]).is_err());
    }

    #[test]
    fn entropy_values() {
        let pure = PureState::ghz(2).projector();
        // pure projector has zero entropy
        assert!(von_neumann_entropy(&pure).abs() < 1e-10);
        assert!((von_neumann_entropy(&DensityOperator::maximally_mixed(1)) - 1.0).abs() < 1e-12);
        // reduction of sin(t)|00> + cos(t)|11> with sin^2 = 1/3
        let s = (1.0f64 / 3.0).sqrt();
        let cth = (2.0f64 / 3.0).sqrt();
        let psi =
            PureState::new(2, vec![c(s), ZERO, ZERO, c(cth)]).unwrap();
        let red = partial_trace(&psi.projector(), &[1]).unwrap();
        let h2 = -(1.0 / 3.0f64) * (1.0 / 3.0f64).log2() - (2.0 / 3.0) * (2.0 / 3.0f64).log2();
        assert!((von_neumann_entropy(&red) - h2).abs() < 1e-12);
    }

    #[test]
    fn entropy_invariant_under_conjugation() {
        let mut rng = Rng::seed_from_u64(4);
        let psi = haar_random_pure_with(2, &mut rng);
        let red = partial_trace(&psi.projector(), &[1]).unwrap();
        let s0 = von_neumann_entropy(&red);
        let u = rng.unitary(2);
        let rotated = DensityOperator::new_unchecked(1, u.mul(red.matrix()).mul(&u.adjoint()));
        assert!((von_neumann_entropy(&rotated) - s0).abs() < 1e-9);
    }

    #[test]
    fn trace_norm_examples() {
        let rho = PureState::w(3).projector();
        assert!((trace_norm(rho.matrix()).unwrap() - 1.0).abs() < 1e-12);
        // |0><0| - |+><+| has trace norm sqrt 2
        let z = PureState::basis(1, 0).projector();
        let p = PureState::plus(1).projector();
        let d = z.matrix().sub(p.matrix());
        assert!((trace_norm(&d).unwrap() - core::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn trace_norm_triangle_inequality() {
        let mut rng = Rng::seed_from_u64(5);
        for _ in 0..20 {
            let h = |rng: &mut Rng| {
                let g = CMatrix::from_fn(4, 4, |_, _| rng.complex_gaussian());
                g.add(&g.adjoint()).scale_re(0.5)
            };
            let a = h(&mut rng);
            let b = h(&mut rng);
            let lhs = trace_norm(&a.add(&b)).unwrap();
            let rhs = trace_norm(&a).unwrap() + trace_norm(&b).unwrap();
            assert!(lhs <= rhs + 1e-10);
        }
    }

    #[test]
    fn ghz_x_measurement_gives_bell_branches() {
        let recs = projective_measure_qubit(&PureState::ghz(3), 1, &QubitBasis::x()).unwrap();
        assert_eq!(recs.len(), 2);
        let bell_plus = PureState::bell_phi_plus();
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let bell_minus =
            PureState::new(2, vec![c(h), ZERO, ZERO, c(-h)]).unwrap();
        for r in &recs {
            assert!((r.probability - 0.5).abs() < 1e-12);
        }
        let f0 = fidelity_pure(recs[0].post_state.as_ref().unwrap(), &bell_plus).unwrap();
        let f1 = fidelity_pure(recs[1].post_state.as_ref().unwrap(), &bell_minus).unwrap();
        assert!((f0 - 1.0).abs() < 1e-12);
        assert!((f1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn z_measurement_of_product_is_deterministic() {
        let state = tensor_product(&PureState::basis(1, 0), &PureState::bell_phi_plus());
        let recs = projective_measure_qubit(&state, 1, &QubitBasis::z()).unwrap();
        assert!((recs[0].probability - 1.0).abs() < 1e-12);
        assert!(recs[1].probability < 1e-15);
        assert!(recs[1].post_state.is_none());
        let f = fidelity_pure(recs[0].post_state.as_ref().unwrap(), &PureState::bell_phi_plus())
            .unwrap();
        assert!((f - 1.0).abs() < 1e-12);
    }

    #[test]
    fn measurement_probabilities_sum_to_one() {
        let mut rng = Rng::seed_from_u64(6);
        for _ in 0..10 {
            let psi = haar_random_pure_with(3, &mut rng);
            let theta = rng.uniform_in(0.0, core::f64::consts::PI);
            let phi = rng.uniform_in(0.0, 2.0 * core::f64::consts::PI);
            let basis = QubitBasis::from_bloch(theta, phi);
            let recs = projective_measure_qubit(&psi, 2, &basis).unwrap();
            let total: f64 = recs.iter().map(|r| r.probability).sum();
            assert!((total - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn measurement_mixture_reproduces_dephased_input() {
        // sum_k p_k |v_k><v_k| (x) |post_k><post_k| equals the input dephased
        // in the measured basis
        let mut rng = Rng::seed_from_u64(7);
        let psi = haar_random_pure_with(2, &mut rng);
        let basis = QubitBasis::x();
        let recs = projective_measure_qubit(&psi, 1, &basis).unwrap();
        let mut rebuilt = CMatrix::zeros(4, 4);
        for (k, r) in recs.iter().enumerate() {
            let v = basis.vectors[k];
            let pv = PureState::new(1, vec![v[0], v[1]]).unwrap();
            let joint = tensor_product(&pv, r.post_state.as_ref().unwrap());
            rebuilt = rebuilt.add(&joint.projector().matrix().scale_re(r.probability));
        }
        // dephase the input in the X basis of qubit 1
        let rho = psi.projector();
        let mut dephased = CMatrix::zeros(4, 4);
        for (k, v) in basis.vectors.iter().enumerate() {
            let _ = k;
            let mut proj1 = CMatrix::zeros(2, 2);
            for r in 0..2 {
                for c in 0..2 {
                    proj1[(r, c)] = v[r] * v[c].conj();
                }
            }
            let p = proj1.kron(&CMatrix::identity(2));
            dephased = dephased.add(&p.mul(rho.matrix()).mul(&p));
        }
        assert!(rebuilt.sub(&dephased).max_abs() < 1e-10);
    }

    #[test]
    fn non_orthonormal_basis_rejected() {
        let bad = QubitBasis::new([ONE, ZERO], [ONE, ZERO]);
        assert!(matches!(bad, Err(Error::NonOrthonormalBasis { .. })));
    }

    #[test]
    fn haar_sampling_is_reproducible() {
        let a = haar_random_pure(3, 99);
        let b = haar_random_pure(3, 99);
        assert_eq!(a, b);
    }

    #[test]
    fn haar_mean_reduction_purity() {
        // Haar moment: E[tr rho_A^2] = (dA + dB)/(dA dB + 1) = 4/5 for two
        // qubits; Monte Carlo over 10^4 samples within 2%
        let mut rng = Rng::seed_from_u64(909);
        let samples = 10_000;
        let mut total = 0.0;
        for _ in 0..samples {
            let psi = haar_random_pure_with(2, &mut rng);
            total += psi.reduced_density(&[1]).unwrap().purity();
        }
        let mean = total / samples as f64;
        let expected = 4.0 / 5.0;
        assert!((mean - expected).abs() < 0.02 * expected, "mean purity {mean}");
    }

    #[test]
    fn haar_distribution_invariant_under_fixed_unitary() {
        // statistical check: the basis-population profile of U|psi| matches
        // the uniform 1/d profile of |psi| for a fixed unitary U
        let mut rng = Rng::seed_from_u64(910);
        let u2 = rng.unitary(2);
        let u = u2.kron(&rng.unitary(2));
        let samples = 4000;
        let dim = 4;
        let mut plain = vec![0.0f64; dim];
        let mut rotated = vec![0.0f64; dim];
        for _ in 0..samples {
            let psi = haar_random_pure_with(2, &mut rng);
            let rpsi = u.apply(psi.amplitudes());
            for k in 0..dim {
                plain[k] += psi.amplitude(k).norm_sqr();
                rotated[k] += rpsi[k].norm_sqr();
            }
        }
        for k in 0..dim {
            let a = plain[k] / samples as f64;
            let b = rotated[k] / samples as f64;
            assert!((a - 1.0 / dim as f64).abs() < 0.02, "population {a}");
            assert!((a - b).abs() < 0.03, "rotation moved population {a} -> {b}");
        }
    }

    #[test]
    fn fidelity_examples() {
        let ghz = PureState::ghz(3);
        assert!((fidelity_pure(&ghz, &ghz).unwrap() - 1.0).abs() < 1e-14);
        assert!(fidelity_pure(&ghz, &PureState::w(3)).unwrap() < 1e-14);
        assert!((fidelity_pure(&ghz, &PureState::basis(3, 0)).unwrap() - 0.5).abs() < 1e-14);
        assert!(fidelity_pure(&ghz, &PureState::plus(2)).is_err());
    }

    #[test]
    fn split_canonicalization() {
        let s = Split::new(3, &[vec![3], vec![2, 1]]).unwrap();
        assert_eq!(s.blocks(), &[vec![1, 2], vec![3]]);
        assert_eq!(s.label(), "12-3");
        assert!(Split::new(3, &[vec![1], vec![2]]).is_err());
        assert!(Split::new(3, &[vec![1, 1], vec![2, 3]]).is_err());
        let b = Split::bipartition(3, &[2]).unwrap();
        assert_eq!(b.label(), "13-2");
    }

    #[test]
    fn local_filter_keeps_normalization() {
        let mut rng = Rng::seed_from_u64(8);
        let psi = haar_random_pure_with(3, &mut rng);
        let ops: Vec<CMatrix> = (0..3).map(|_| rng.invertible_2x2()).collect();
        let filtered = psi.apply_local(&ops).unwrap();
        assert!((vnorm(filtered.amplitudes()) - 1.0).abs() < 1e-12);
    }
}
