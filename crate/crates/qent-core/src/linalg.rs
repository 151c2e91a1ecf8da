//! Dense complex linear algebra sized for small qubit registers.
//!
//! Everything here is written for matrices of dimension at most a few
//! hundred (2^N for N <= ~10). The eigensolver is a cyclic complex Jacobi
//! iteration and the SVD is one-sided Jacobi (Hestenes), both chosen for
//! accuracy at tiny singular values and for determinism: given identical
//! input bits the output is identical, eigenvalues are sorted descending,
//! and eigenvector phases are canonicalized.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex;
// float math through the trait; under test builds std's inherent
// methods shadow it
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

use crate::Error;

/// Complex double-precision scalar used throughout the crate.
pub type C64 = Complex<f64>;

pub const ZERO: C64 = Complex::new(0.0, 0.0);
pub const ONE: C64 = Complex::new(1.0, 0.0);
pub const I: C64 = Complex::new(0.0, 1.0);

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl core::fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Build from row slices; all rows must have equal length.
    pub fn from_rows(rows: &[&[C64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Self::from_fn(r, c, |i, j| rows[i][j])
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = entries[i];
        }
        m
    }

    /// Rank-one matrix `|u><v|`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        Self::from_fn(u.len(), v.len(), |r, c| u[r] * v[c].conj())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, c: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn set_column(&mut self, c: usize, v: &[C64]) {
        for r in 0..self.rows {
            self[(r, c)] = v[r];
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        CMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        CMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: C64) -> Self {
        let data = self.data.iter().map(|a| a * s).collect();
        CMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] += a * other[(k, c)];
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| (0..self.cols).fold(ZERO, |acc, c| acc + self[(r, c)] * v[c]))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> Self {
        let data = self.data.iter().map(|a| a.conj()).collect();
        CMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).fold(ZERO, |a, b| a + b)
    }

    /// Kronecker product, left factor on the high-order bits.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self[(r1, c1)];
                if a == ZERO {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        out[(r1 * other.rows + r2, c1 * other.cols + c2)] = a * other[(r2, c2)];
                    }
                }
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max entry deviation from `A = A^dagger`.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for r in 0..self.rows {
            for c in r..self.cols {
                dev = dev.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_deviation() <= tol
    }

    /// Hermitian part `(A + A^dagger)/2`.
    pub fn hermitize(&self) -> Self {
        assert!(self.is_square());
        let mut out = Self::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = (self[(r, c)] + self[(c, r)].conj()) * 0.5;
            }
        }
        out
    }

    /// Max entry deviation from the identity; of use when checking unitarity
    /// via `U^dagger U`.
    pub fn deviation_from_identity(&self) -> f64 {
        assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                let target = if r == c { ONE } else { ZERO };
                dev = dev.max((self[(r, c)] - target).norm());
            }
        }
        dev
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_square() && self.adjoint().mul(self).deviation_from_identity() <= tol
    }

    /// Determinant of a 2x2 matrix.
    pub fn det2(&self) -> C64 {
        assert_eq!((self.rows, self.cols), (2, 2));
        self[(0, 0)] * self[(1, 1)] - self[(0, 1)] * self[(1, 0)]
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }
}

/* Vector helpers *************************************************************/

/// Inner product `<a|b>` (conjugate-linear in the first argument).
pub fn vdot(a: &[C64], b: &[C64]) -> C64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(ZERO, |acc, (x, y)| acc + x.conj() * y)
}

pub fn vnorm(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vscale(a: &[C64], s: C64) -> Vec<C64> {
    a.iter().map(|z| z * s).collect()
}

pub fn vnormalize(a: &[C64]) -> Vec<C64> {
    let n = vnorm(a);
    assert!(n > 0.0, "cannot normalize the zero vector");
    vscale(a, C64::new(1.0 / n, 0.0))
}

/// Kronecker product of vectors, left factor on the high-order bits.
pub fn vkron(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

/* Hermitian eigendecomposition ***********************************************/

/// Eigendecomposition of a Hermitian matrix: `a = V diag(values) V^dagger`.
///
/// Eigenvalues are real and sorted descending; `vectors` holds the
/// corresponding eigenvectors as columns, each with its largest-magnitude
/// entry rotated to the positive real axis.
pub struct EigH {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

const JACOBI_MAX_SWEEPS: usize = 60;

/// Jacobi rotation parameters diagonalizing the Hermitian 2x2 block
/// `[[app, apq], [conj(apq), aqq]]`. Returns the unitary block
/// `[[c, s], [-s*e^{-i phi}, c*e^{-i phi}]]` as `(c, s, phase)` where
/// `phase = e^{-i phi}` and `apq = |apq| e^{i phi}`.
fn jacobi_rotation(app: f64, aqq: f64, apq: C64) -> (f64, f64, C64) {
    let r = apq.norm();
    let phase = if r > 0.0 { (apq / r).conj() } else { ONE };
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (tau - (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    (c, s, phase)
}

/// Cyclic complex Jacobi eigendecomposition of a Hermitian matrix.
///
/// The input is symmetrized internally; callers are expected to pass
/// matrices that are Hermitian up to rounding.
pub fn eigh(a: &CMatrix) -> EigH {
    assert!(a.is_square(), "eigh needs a square matrix");
    let n = a.rows();
    let mut m = a.hermitize();
    let mut v = CMatrix::identity(n);
    let scale = m.frobenius_norm();
    if scale > 0.0 {
        for _sweep in 0..JACOBI_MAX_SWEEPS {
            let mut off = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += m[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() <= 1e-15 * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = m[(p, q)];
                    if apq.norm() <= 1e-18 * scale {
                        continue;
                    }
                    let app = m[(p, p)].re;
                    let aqq = m[(q, q)].re;
                    let (c, s, ph) = jacobi_rotation(app, aqq, apq);
                    // column update: M <- M J, with J the plane rotation
                    for i in 0..n {
                        let mp = m[(i, p)];
                        let mq = m[(i, q)];
                        m[(i, p)] = mp * c - mq * (ph * s);
                        m[(i, q)] = mp * s + mq * (ph * c);
                    }
                    // row update: M <- J^dagger M
                    for j in 0..n {
                        let mp = m[(p, j)];
                        let mq = m[(q, j)];
                        m[(p, j)] = mp * c - mq * (ph.conj() * s);
                        m[(q, j)] = mp * s + mq * (ph.conj() * c);
                    }
                    // keep the diagonal exactly real
                    m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
                    m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
                    for i in 0..n {
                        let vp = v[(i, p)];
                        let vq = v[(i, q)];
                        v[(i, p)] = vp * c - vq * (ph * s);
                        v[(i, q)] = vp * s + vq * (ph * c);
                    }
                }
            }
        }
    }

    let mut pairs: Vec<(f64, Vec<C64>)> =
        (0..n).map(|i| (m[(i, i)].re, v.column(i))).collect();
    sort_eigenpairs(&mut pairs);
    let values = pairs.iter().map(|(l, _)| *l).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (i, (_, col)) in pairs.iter().enumerate() {
        vectors.set_column(i, &canonical_phase(col));
    }
    EigH { values, vectors }
}

/// Descending eigenvalues; exact ties broken by lexicographic comparison of
/// the (phase-canonicalized) eigenvectors.
fn sort_eigenpairs(pairs: &mut [(f64, Vec<C64>)]) {
    pairs.sort_by(|a, b| {
        b.0.partial_cmp(&a.0)
            .unwrap_or(core::cmp::Ordering::Equal)
            .then_with(|| lex_cmp(&canonical_phase(&a.1), &canonical_phase(&b.1)))
    });
}

fn lex_cmp(a: &[C64], b: &[C64]) -> core::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.re.partial_cmp(&y.re).unwrap_or(core::cmp::Ordering::Equal) {
            core::cmp::Ordering::Equal => {}
            o => return o,
        }
        match x.im.partial_cmp(&y.im).unwrap_or(core::cmp::Ordering::Equal) {
            core::cmp::Ordering::Equal => {}
            o => return o,
        }
    }
    core::cmp::Ordering::Equal
}

/// Rotate a vector's global phase so its largest-magnitude entry (lowest
/// index on ties) is real positive.
pub fn canonical_phase(v: &[C64]) -> Vec<C64> {
    let mut best = 0usize;
    let mut best_norm = 0.0f64;
    for (i, z) in v.iter().enumerate() {
        let n = z.norm();
        if n > best_norm + 1e-15 {
            best_norm = n;
            best = i;
        }
    }
    if best_norm == 0.0 {
        return v.to_vec();
    }
    let ph = (v[best] / best_norm).conj();
    vscale(v, ph)
}

/* Singular value decomposition ***********************************************/

/// SVD `a = U diag(singular_values) V^dagger` with square unitary factors.
///
/// Singular values are sorted descending. Computed by one-sided Jacobi
/// orthogonalization, which keeps full relative accuracy on small singular
/// values (no Gram-matrix squaring).
pub struct Svd {
    pub u: CMatrix,
    pub singular_values: Vec<f64>,
    pub v: CMatrix,
}

pub fn svd(a: &CMatrix) -> Svd {
    if a.rows() < a.cols() {
        // work on the adjoint and swap factors
        let s = svd(&a.adjoint());
        return Svd { u: s.v, singular_values: s.singular_values, v: s.u };
    }
    let m = a.rows();
    let n = a.cols();
    let mut work = a.clone();
    let mut v = CMatrix::identity(n);
    let scale = work.frobenius_norm();

    if scale > 0.0 {
        for _sweep in 0..JACOBI_MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..n {
                for q in (p + 1)..n {
                    let cp = work.column(p);
                    let cq = work.column(q);
                    let app = cp.iter().map(|z| z.norm_sqr()).sum::<f64>();
                    let aqq = cq.iter().map(|z| z.norm_sqr()).sum::<f64>();
                    let apq = vdot(&cp, &cq);
                    if apq.norm() <= 1e-16 * (app * aqq).sqrt() + 1e-300 {
                        continue;
                    }
                    rotated = true;
                    let (c, s, ph) = jacobi_rotation(app, aqq, apq);
                    for i in 0..m {
                        let wp = work[(i, p)];
                        let wq = work[(i, q)];
                        work[(i, p)] = wp * c - wq * (ph * s);
                        work[(i, q)] = wp * s + wq * (ph * c);
                    }
                    for i in 0..n {
                        let vp = v[(i, p)];
                        let vq = v[(i, q)];
                        v[(i, p)] = vp * c - vq * (ph * s);
                        v[(i, q)] = vp * s + vq * (ph * c);
                    }
                }
            }
            if !rotated {
                break;
            }
        }
    }

    // column norms are the singular values; sort descending
    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = (0..n).map(|j| vnorm(&work.column(j))).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap_or(core::cmp::Ordering::Equal));

    // Columns stay mutually orthogonal down to the underflow floor, so only
    // exactly-collapsed columns go through basis completion.
    let cutoff = 1e-307;
    let mut singular_values = Vec::with_capacity(n);
    let mut u_cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut v_sorted = CMatrix::zeros(n, n);
    for (k, &j) in order.iter().enumerate() {
        let sigma = norms[j];
        singular_values.push(sigma);
        v_sorted.set_column(k, &v.column(j));
        if sigma > cutoff {
            u_cols.push(vscale(&work.column(j), C64::new(1.0 / sigma, 0.0)));
        }
    }
    let u = complete_orthonormal(u_cols, m);

    Svd { u, singular_values, v: v_sorted }
}

/// Singular values only, descending.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    svd(a).singular_values
}

/// Count singular values above `RANK_REL * sigma_max`.
pub fn rank(a: &CMatrix) -> usize {
    let sv = singular_values(a);
    rank_from_singular_values(&sv)
}

pub fn rank_from_singular_values(sv: &[f64]) -> usize {
    let max = sv.first().copied().unwrap_or(0.0);
    if max <= 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > crate::tol::RANK_REL * max).count()
}

/// Extend a set of orthonormal columns to a full orthonormal basis of C^dim,
/// drawing completion candidates greedily from the standard basis.
fn complete_orthonormal(mut cols: Vec<Vec<C64>>, dim: usize) -> CMatrix {
    while cols.len() < dim {
        let mut best: Option<(f64, Vec<C64>)> = None;
        for k in 0..dim {
            let mut cand = vec![ZERO; dim];
            cand[k] = ONE;
            for c in &cols {
                let ov = vdot(c, &cand);
                for i in 0..dim {
                    cand[i] -= c[i] * ov;
                }
            }
            let r = vnorm(&cand);
            if best.as_ref().map(|(b, _)| r > *b).unwrap_or(true) {
                best = Some((r, cand));
            }
        }
        let (r, cand) = best.expect("dim > 0");
        assert!(r > 1e-8, "orthonormal completion failed");
        cols.push(canonical_phase(&vnormalize(&cand)));
    }
    let mut m = CMatrix::zeros(dim, cols.len());
    for (j, c) in cols.iter().enumerate() {
        m.set_column(j, c);
    }
    m
}

/* Linear solve ****************************************************************/

/// Solve `A x = b` by LU with partial pivoting. Returns `None` when a pivot
/// collapses below `1e-300`.
pub fn solve_lu(a: &CMatrix, b: &[C64]) -> Option<Vec<C64>> {
    assert!(a.is_square());
    let n = a.rows();
    assert_eq!(b.len(), n);
    let mut m = a.clone();
    let mut x: Vec<C64> = b.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();

    for k in 0..n {
        let mut piv = k;
        let mut piv_norm = m[(perm[k], k)].norm();
        for r in (k + 1)..n {
            let nr = m[(perm[r], k)].norm();
            if nr > piv_norm {
                piv_norm = nr;
                piv = r;
            }
        }
        if piv_norm < 1e-300 {
            return None;
        }
        perm.swap(k, piv);
        let pk = perm[k];
        for r in (k + 1)..n {
            let pr = perm[r];
            let f = m[(pr, k)] / m[(pk, k)];
            m[(pr, k)] = f;
            for c in (k + 1)..n {
                let s = m[(pk, c)] * f;
                m[(pr, c)] -= s;
            }
        }
    }
    // forward substitution on permuted rhs
    let mut y = vec![ZERO; n];
    for r in 0..n {
        let mut acc = x[perm[r]];
        for c in 0..r {
            acc -= m[(perm[r], c)] * y[c];
        }
        y[r] = acc;
    }
    // back substitution
    for r in (0..n).rev() {
        let mut acc = y[r];
        for c in (r + 1)..n {
            acc -= m[(perm[r], c)] * x[c];
        }
        x[r] = acc / m[(perm[r], r)];
    }
    Some(x)
}

/* Matrix functions ************************************************************/

/// Hermitian matrix function via eigendecomposition.
pub fn herm_fn(a: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let e = eigh(a);
    let n = a.rows();
    let mut out = CMatrix::zeros(n, n);
    for (k, &l) in e.values.iter().enumerate() {
        let col = e.vectors.column(k);
        let fl = f(l);
        if fl == 0.0 {
            continue;
        }
        for r in 0..n {
            for c in 0..n {
                out[(r, c)] += col[r] * col[c].conj() * fl;
            }
        }
    }
    out
}

/// Positive-semidefinite square root.
///
/// Eigenvalues below `1e-13 * lambda_max` are treated as exact zeros: the
/// square root is not Lipschitz at 0, so rooting rounding noise on a true
/// null space would pollute the result at the 1e-8 level.
pub fn sqrtm_psd(a: &CMatrix) -> CMatrix {
    let e = eigh(a);
    let floor = e.values.first().copied().unwrap_or(0.0).max(0.0) * 1e-13;
    let n = a.rows();
    let mut out = CMatrix::zeros(n, n);
    for (k, &l) in e.values.iter().enumerate() {
        if l <= floor {
            continue;
        }
        let col = e.vectors.column(k);
        let s = l.sqrt();
        for r in 0..n {
            for c in 0..n {
                out[(r, c)] += col[r] * col[c].conj() * s;
            }
        }
    }
    out
}

/// Sum of singular values of a square matrix.
pub fn trace_norm(a: &CMatrix) -> crate::Result<f64> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    Ok(singular_values(a).iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    fn random_hermitian(n: usize, rng: &mut Rng) -> CMatrix {
        let g = CMatrix::from_fn(n, n, |_, _| C64::new(rng.gaussian(), rng.gaussian()));
        g.add(&g.adjoint()).scale_re(0.5)
    }

    #[test]
    fn eigh_reconstructs() {
        let mut rng = Rng::seed_from_u64(7);
        for n in [2usize, 3, 5, 8, 16] {
            let a = random_hermitian(n, &mut rng);
            let e = eigh(&a);
            let d = CMatrix::diagonal(
                &e.values.iter().map(|&l| C64::new(l, 0.0)).collect::<Vec<_>>(),
            );
            let rec = e.vectors.mul(&d).mul(&e.vectors.adjoint());
            assert!(rec.sub(&a).max_abs() < 1e-11, "n={n}");
            assert!(e.vectors.is_unitary(1e-11));
            for w in e.values.windows(2) {
                assert!(w[0] >= w[1] - 1e-12);
            }
        }
    }

    #[test]
    fn eigh_known_pauli_x() {
        let x = CMatrix::from_rows(&[&[ZERO, ONE], &[ONE, ZERO]]);
        let e = eigh(&x);
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn svd_reconstructs_and_sorts() {
        let mut rng = Rng::seed_from_u64(11);
        for (m, n) in [(2usize, 2usize), (3, 5), (6, 2), (8, 8)] {
            let a = CMatrix::from_fn(m, n, |_, _| C64::new(rng.gaussian(), rng.gaussian()));
            let s = svd(&a);
            assert!(s.u.is_unitary(1e-11));
            assert!(s.v.is_unitary(1e-11));
            let mut sig = CMatrix::zeros(m, n);
            for (i, &x) in s.singular_values.iter().enumerate().take(m.min(n)) {
                sig[(i, i)] = C64::new(x, 0.0);
                assert!(x >= -1e-15);
            }
            let rec = s.u.mul(&sig).mul(&s.v.adjoint());
            assert!(rec.sub(&a).max_abs() < 1e-11, "{m}x{n}");
            for w in s.singular_values.windows(2) {
                assert!(w[0] >= w[1] - 1e-12);
            }
        }
    }

    #[test]
    fn svd_rank_deficient() {
        // |u><v| has rank 1 regardless of shape
        let u = [ONE, 2.0 * ONE, I];
        let v = [ONE, -I];
        let a = CMatrix::outer(&u, &v);
        let s = svd(&a);
        assert_eq!(rank_from_singular_values(&s.singular_values), 1);
        assert!(s.u.is_unitary(1e-12));
        assert!(s.v.is_unitary(1e-12));
    }

    #[test]
    fn solve_lu_random() {
        let mut rng = Rng::seed_from_u64(3);
        for n in [1usize, 2, 5, 9] {
            let a = CMatrix::from_fn(n, n, |_, _| C64::new(rng.gaussian(), rng.gaussian()));
            let xs: Vec<C64> = (0..n).map(|_| C64::new(rng.gaussian(), rng.gaussian())).collect();
            let b = a.apply(&xs);
            let sol = solve_lu(&a, &b).expect("generic matrix is invertible");
            for (got, want) in sol.iter().zip(&xs) {
                assert!((got - want).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn trace_norm_diag() {
        let a = CMatrix::diagonal(&[ONE, -ONE]);
        assert!((trace_norm(&a).unwrap() - 2.0).abs() < 1e-13);
        let b = CMatrix::zeros(2, 3);
        assert!(trace_norm(&b).is_err());
    }

    #[test]
    fn sqrtm_squares_back() {
        let mut rng = Rng::seed_from_u64(21);
        let g = CMatrix::from_fn(4, 4, |_, _| C64::new(rng.gaussian(), rng.gaussian()));
        let psd = g.mul(&g.adjoint());
        let r = sqrtm_psd(&psd);
        assert!(r.mul(&r).sub(&psd).max_abs() < 1e-10);
    }
}
