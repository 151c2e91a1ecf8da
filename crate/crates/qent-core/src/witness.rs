//! Entanglement witnesses: construction, evaluation, and local (Pauli)
//! decompositions.
//!
//! A witness is a Hermitian operator that is non-negative on a convex class
//! of states; a negative expectation value certifies the state lies outside
//! that class. Shipped are the three-qubit GHZ witness
//! `(3/4) 1 - |GHZ><GHZ|` (non-negative on W-type states) and the W witness
//! `(2/3) 1 - |W><W|` (non-negative on biseparable states), plus the generic
//! `Q - eps*1` construction.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::linalg::{eigh, CMatrix, C64};
use crate::stabilizer::{PauliLetter, PauliString};
use crate::states::{DensityOperator, PureState};
use crate::{Error, Result};

/// Hermitian witness operator with a class tag.
#[derive(Clone, Debug)]
pub struct Witness {
    matrix: CMatrix,
    target_class: String,
    epsilon: Option<f64>,
}

impl Witness {
    fn from_parts(matrix: CMatrix, target_class: &str, epsilon: Option<f64>) -> Result<Self> {
        let dev = matrix.hermiticity_deviation();
        if dev > crate::tol::VALIDATE {
            return Err(Error::NotHermitian { deviation: dev });
        }
        Ok(Witness { matrix, target_class: target_class.to_string(), epsilon })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn target_class(&self) -> &str {
        &self.target_class
    }

    pub fn epsilon(&self) -> Option<f64> {
        self.epsilon
    }

    pub fn n_qubits(&self) -> usize {
        self.matrix.rows().trailing_zeros() as usize
    }
}

/// `(3/4) 1 - |GHZ><GHZ|` on three qubits: non-negative on every W-type
/// state, negative on states with GHZ-type entanglement.
pub fn ghz_witness() -> Witness {
    let ghz = PureState::ghz(3).projector();
    let m = CMatrix::identity(8).scale_re(0.75).sub(ghz.matrix());
    Witness::from_parts(m, "GHZ-witness", Some(0.25)).expect("closed form is Hermitian")
}

/// `(2/3) 1 - |W><W|` on three qubits: non-negative on biseparable states.
pub fn w_witness() -> Witness {
    let w = PureState::w(3).projector();
    let m = CMatrix::identity(8).scale_re(2.0 / 3.0).sub(w.matrix());
    Witness::from_parts(m, "W-witness", Some(1.0 / 3.0)).expect("closed form is Hermitian")
}

/// Generic witness `Q - eps*1` for a PSD `Q`. Choosing an `eps` that keeps
/// the operator non-negative on the intended class is the caller's job; no
/// class guarantee is asserted here.
pub fn custom_witness(q: &CMatrix, epsilon: f64) -> Result<Witness> {
    if !q.is_square() {
        return Err(Error::NotSquare { rows: q.rows(), cols: q.cols() });
    }
    let dev = q.hermiticity_deviation();
    if dev > crate::tol::VALIDATE {
        return Err(Error::NotHermitian { deviation: dev });
    }
    if epsilon <= 0.0 {
        return Err(Error::BadArgument("witness shift epsilon must be positive".to_string()));
    }
    let min_eig = eigh(q).values.last().copied().unwrap_or(0.0);
    if min_eig < -crate::tol::POSITIVITY {
        return Err(Error::NotPositive { min_eigenvalue: min_eig });
    }
    let m = q.sub(&CMatrix::identity(q.rows()).scale_re(epsilon));
    Witness::from_parts(m, "custom", Some(epsilon))
}

/// Expectation value `tr[W rho]`; the imaginary residue must be rounding
/// noise and is discarded after an assertion.
pub fn evaluate(w: &Witness, rho: &DensityOperator) -> Result<f64> {
    if w.matrix.rows() != rho.dim() {
        return Err(Error::DimensionMismatch { left: w.matrix.rows(), right: rho.dim() });
    }
    let tr = w.matrix.mul(rho.matrix()).trace();
    debug_assert!(tr.im.abs() < 1e-10, "witness expectation has imaginary residue {}", tr.im);
    Ok(tr.re)
}

/// One term of a local decomposition: real coefficient and Pauli letters.
#[derive(Clone, Debug)]
pub struct PauliTerm {
    pub coefficient: f64,
    pub labels: String,
}

/// Expansion `W = sum_alpha c_alpha sigma_alpha` over the 4^N Pauli strings.
#[derive(Clone, Debug)]
pub struct PauliDecomposition {
    pub n_qubits: usize,
    pub terms: Vec<PauliTerm>,
}

impl PauliDecomposition {
    /// Rebuild the dense operator from the stored terms.
    pub fn reconstruct(&self) -> CMatrix {
        let dim = 1usize << self.n_qubits;
        let mut m = CMatrix::zeros(dim, dim);
        for term in &self.terms {
            let p = PauliString::parse(&term.labels).expect("labels were produced by label()");
            m = m.add(&p.to_matrix().scale_re(term.coefficient));
        }
        m
    }

    /// Evaluate `sum_alpha c_alpha tr[sigma_alpha rho]` without forming the
    /// witness matrix; the route an experiment with local measurements takes.
    pub fn evaluate(&self, rho: &DensityOperator) -> Result<f64> {
        if rho.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch { left: self.n_qubits, right: rho.n_qubits() });
        }
        let mut total = 0.0;
        for term in &self.terms {
            let p = PauliString::parse(&term.labels).expect("labels were produced by label()");
            let tr = p.to_matrix().mul(rho.matrix()).trace();
            total += term.coefficient * tr.re;
        }
        Ok(total)
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }
}

/// Decompose a witness over the Pauli basis: `c_alpha = tr[W sigma_alpha]/2^N`.
/// Coefficients with `|c| < 1e-12` are omitted.
pub fn pauli_decompose(w: &Witness) -> PauliDecomposition {
    let n = w.n_qubits();
    let dim = 1usize << n;
    let letters = [PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z];
    let mut terms = Vec::new();
    let mut stack: Vec<PauliLetter> = Vec::with_capacity(n);
    // iterate all 4^N strings in lexicographic I<X<Y<Z order
    let total = 4usize.pow(n as u32);
    for code in 0..total {
        stack.clear();
        let mut c = code;
        for _ in 0..n {
            stack.push(letters[c % 4]);
            c /= 4;
        }
        stack.reverse();
        let p = PauliString::from_letters(&stack, 0);
        // tr[W sigma]: sigma has one nonzero entry per column
        let pm = p.to_matrix();
        let mut tr = C64::new(0.0, 0.0);
        for col in 0..dim {
            let row = col ^ p.x_bits() as usize;
            tr += w.matrix[(col, row)] * pm[(row, col)];
        }
        let coeff = tr.re / dim as f64;
        debug_assert!(tr.im.abs() < 1e-10);
        if coeff.abs() >= 1e-12 {
            terms.push(PauliTerm { coefficient: coeff, labels: p.label() });
        }
    }
    PauliDecomposition { n_qubits: n, terms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ONE;
    use crate::rng::Rng;
    use crate::states::{haar_random_pure_with, tensor_product};

    #[test]
    fn closed_form_expectations() {
        let a_ghz = ghz_witness();
        let a_w = w_witness();
        let ghz = PureState::ghz(3).projector();
        let w = PureState::w(3).projector();
        assert!((evaluate(&a_ghz, &ghz).unwrap() + 0.25).abs() < 1e-14);
        assert!((evaluate(&a_ghz, &w).unwrap() - 0.75).abs() < 1e-14);
        assert!((evaluate(&a_w, &w).unwrap() + 1.0 / 3.0).abs() < 1e-14);
        // orthogonality <W|GHZ> = 0 puts the cross expectation at 2/3;
        // the direct 8x8 trace is the oracle
        assert!((evaluate(&a_w, &ghz).unwrap() - 2.0 / 3.0).abs() < 1e-14);
        assert!((evaluate(&a_ghz, &DensityOperator::maximally_mixed(3)).unwrap() - 5.0 / 8.0)
            .abs()
            < 1e-14);
    }

    #[test]
    fn custom_witness_reproduces_ghz_form() {
        // Q = 1 - |GHZ><GHZ| is PSD; eps = 1/4 gives (3/4)1 - |GHZ><GHZ|
        let q = CMatrix::identity(8).sub(PureState::ghz(3).projector().matrix());
        let w = custom_witness(&q, 0.25).unwrap();
        assert!(w.matrix().sub(ghz_witness().matrix()).max_abs() < 1e-14);
        assert!(custom_witness(&q, 0.0).is_err());
        assert!(custom_witness(&q, -1.0).is_err());
        // non-PSD Q rejected
        let bad = CMatrix::identity(8).scale_re(-1.0);
        assert!(custom_witness(&bad, 0.1).is_err());
    }

    #[test]
    fn custom_witness_shifts_spectrum() {
        let mut rng = Rng::seed_from_u64(23);
        let g = CMatrix::from_fn(4, 4, |_, _| rng.complex_gaussian());
        let q = g.mul(&g.adjoint());
        let q = q.hermitize();
        let w = custom_witness(&q, 0.1).unwrap();
        let eq = eigh(&q).values;
        let ew = eigh(w.matrix()).values;
        for (a, b) in eq.iter().zip(&ew) {
            assert!((a - 0.1 - b).abs() < 1e-10);
        }
    }

    #[test]
    fn evaluate_is_linear() {
        let mut rng = Rng::seed_from_u64(24);
        let w = ghz_witness();
        let r1 = haar_random_pure_with(3, &mut rng).projector();
        let r2 = haar_random_pure_with(3, &mut rng).projector();
        let p = 0.3;
        let mix = DensityOperator::mixture(&[(p, r1.clone()), (1.0 - p, r2.clone())]).unwrap();
        let lhs = evaluate(&w, &mix).unwrap();
        let rhs = p * evaluate(&w, &r1).unwrap() + (1.0 - p) * evaluate(&w, &r2).unwrap();
        assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn witnesses_nonnegative_on_product_states() {
        let mut rng = Rng::seed_from_u64(25);
        let a_ghz = ghz_witness();
        let a_w = w_witness();
        for _ in 0..500 {
            let prod = tensor_product(
                &tensor_product(
                    &haar_random_pure_with(1, &mut rng),
                    &haar_random_pure_with(1, &mut rng),
                ),
                &haar_random_pure_with(1, &mut rng),
            )
            .projector();
            assert!(evaluate(&a_ghz, &prod).unwrap() >= -1e-12);
            assert!(evaluate(&a_w, &prod).unwrap() >= -1e-12);
        }
    }

    #[test]
    fn identity_decomposes_to_single_term() {
        let w = Witness::from_parts(CMatrix::identity(4), "custom", None).unwrap();
        let d = pauli_decompose(&w);
        assert_eq!(d.n_terms(), 1);
        assert_eq!(d.terms[0].labels, "II");
        assert!((d.terms[0].coefficient - 1.0).abs() < 1e-14);
    }

    #[test]
    fn ghz_witness_decomposition_reconstructs() {
        let w = ghz_witness();
        let d = pauli_decompose(&w);
        assert!(d.reconstruct().sub(w.matrix()).max_abs() < 1e-12);
        // all coefficients are rational multiples of 1/8
        for t in &d.terms {
            let scaled = t.coefficient * 8.0;
            assert!((scaled - scaled.round()).abs() < 1e-12, "{} {}", t.labels, t.coefficient);
        }
    }

    #[test]
    fn random_witness_decomposition_roundtrip() {
        let mut rng = Rng::seed_from_u64(27);
        for _ in 0..5 {
            let g = CMatrix::from_fn(8, 8, |_, _| rng.complex_gaussian());
            let q = g.mul(&g.adjoint()).hermitize();
            let q = q.scale_re(1.0 / q.trace().re);
            let w = custom_witness(&q, 0.1).unwrap();
            let d = pauli_decompose(&w);
            assert!(d.reconstruct().sub(w.matrix()).max_abs() < 1e-10);
        }
    }

    #[test]
    fn decomposition_evaluation_equivalence() {
        let mut rng = Rng::seed_from_u64(26);
        let w = w_witness();
        let d = pauli_decompose(&w);
        for _ in 0..10 {
            // random mixed state from a convex mixture of projectors
            let p = rng.uniform();
            let rho = DensityOperator::mixture(&[
                (p, haar_random_pure_with(3, &mut rng).projector()),
                (1.0 - p, haar_random_pure_with(3, &mut rng).projector()),
            ])
            .unwrap();
            let direct = evaluate(&w, &rho).unwrap();
            let via_terms = d.evaluate(&rho).unwrap();
            assert!((direct - via_terms).abs() < 1e-9);
        }
    }

    #[test]
    fn hermiticity_enforced() {
        let mut m = CMatrix::identity(2);
        m[(0, 1)] = ONE;
        assert!(Witness::from_parts(m, "custom", None).is_err());
    }
}
