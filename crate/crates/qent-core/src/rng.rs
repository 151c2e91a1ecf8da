//! Seeded randomness for sampling states, unitaries, and filters.
//!
//! A thin wrapper over ChaCha12 so that every stochastic operation in the
//! crate is reproducible from a single `u64` seed, independent of platform.

use alloc::vec::Vec;

// float math through the trait; under test builds std's inherent
// methods shadow it
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;
use rand_core::{RngCore, SeedableRng};

use crate::linalg::{vdot, vnormalize, CMatrix, C64};

/// Deterministic stream of uniform and Gaussian variates.
pub struct Rng {
    inner: rand_chacha::ChaCha12Rng,
    spare_gaussian: Option<f64>,
}

impl Rng {
    pub fn seed_from_u64(seed: u64) -> Self {
        Rng { inner: rand_chacha::ChaCha12Rng::seed_from_u64(seed), spare_gaussian: None }
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Standard normal via Box-Muller.
    pub fn gaussian(&mut self) -> f64 {
        if let Some(g) = self.spare_gaussian.take() {
            return g;
        }
        let mut u = self.uniform();
        if u <= 0.0 {
            u = f64::MIN_POSITIVE;
        }
        let v = self.uniform();
        let r = (-2.0 * u.ln()).sqrt();
        let theta = 2.0 * core::f64::consts::PI * v;
        self.spare_gaussian = Some(r * theta.sin());
        r * theta.cos()
    }

    pub fn complex_gaussian(&mut self) -> C64 {
        C64::new(self.gaussian(), self.gaussian())
    }

    /// Unit vector with Haar-uniform direction in `C^dim`.
    pub fn unit_vector(&mut self, dim: usize) -> Vec<C64> {
        loop {
            let v: Vec<C64> = (0..dim).map(|_| self.complex_gaussian()).collect();
            if v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-12 {
                return vnormalize(&v);
            }
        }
    }

    /// Haar-distributed unitary: Gram-Schmidt of a Ginibre matrix with the
    /// triangular factor's diagonal kept real positive.
    pub fn unitary(&mut self, dim: usize) -> CMatrix {
        let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
        while cols.len() < dim {
            let mut cand: Vec<C64> = (0..dim).map(|_| self.complex_gaussian()).collect();
            for c in &cols {
                let ov = vdot(c, &cand);
                for i in 0..dim {
                    cand[i] -= c[i] * ov;
                }
            }
            let norm: f64 = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                continue;
            }
            cols.push(vnormalize(&cand));
        }
        let mut u = CMatrix::zeros(dim, dim);
        for (j, c) in cols.iter().enumerate() {
            u.set_column(j, c);
        }
        u
    }

    /// Random invertible 2x2 filter with condition number at most ~10.
    ///
    /// Used for SLOCC invariance checks: the operators stay comfortably away
    /// from singular so that renormalized filtered states keep their class
    /// numerically as well as algebraically.
    pub fn invertible_2x2(&mut self) -> CMatrix {
        loop {
            let g = CMatrix::from_fn(2, 2, |_, _| self.complex_gaussian());
            // singular values of a 2x2 from its Gram matrix, in closed form
            let gg = g.adjoint().mul(&g);
            let tr = gg.trace().re;
            let det = gg.det2().norm();
            let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
            let s_max = (tr / 2.0 + disc).max(0.0).sqrt();
            let s_min = (tr / 2.0 - disc).max(0.0).sqrt();
            if s_min > 0.1 * s_max && s_max > 1e-3 {
                return g.scale_re(1.0 / s_max);
            }
        }
    }
}
