//! Symplectic Pauli-group arithmetic, stabilizer groups and their unique
//! +1 eigenstates, and graph-state construction.
//!
//! A Pauli string is stored as `i^k * prod_a X_a^{x_a} Z_a^{z_a}` with the
//! X/Z exponents packed into bit masks (party 1 in the lowest mask bit of
//! neither: mask bit `n-a` holds party `a`, matching the amplitude index
//! convention). Dense `2^N` cross-checks live in the tests.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

// float math through the trait; under test builds std's inherent
// methods shadow it
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

use crate::linalg::{vnorm, CMatrix, C64, ONE, ZERO};
use crate::states::PureState;
use crate::{Error, Result};

/* Pauli strings **************************************************************/

/// Element of the N-qubit Pauli group: phase exponent `k` (for `i^k`) plus
/// X- and Z-bit masks. Party `a` occupies mask bit `n - a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PauliString {
    n_qubits: usize,
    phase_exponent: u8,
    x_bits: u64,
    z_bits: u64,
}

/// Site letter of a Pauli string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        assert!(n_qubits >= 1 && n_qubits <= 64);
        PauliString { n_qubits, phase_exponent: 0, x_bits: 0, z_bits: 0 }
    }

    /// Single-letter string: `letter` on `party`, identity elsewhere.
    pub fn single(n_qubits: usize, party: usize, letter: PauliLetter) -> Result<Self> {
        let mut s = Self::identity(n_qubits);
        s.set_letter(party, letter)?;
        Ok(s)
    }

    /// Build from per-site letters with a phase exponent for `i^k`.
    pub fn from_letters(letters: &[PauliLetter], phase_exponent: u8) -> Self {
        let n = letters.len();
        let mut s = Self::identity(n);
        s.phase_exponent = phase_exponent % 4;
        for (k, &l) in letters.iter().enumerate() {
            s.set_letter(k + 1, l).expect("party in range");
        }
        s
    }

    /// Parse strings like `XZII`, `-YXI`, `iZZ`, `-iXY`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rest = text.trim();
        let mut phase = 0u8;
        if let Some(r) = rest.strip_prefix("-i") {
            phase = 3;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            phase = 2;
            rest = r;
        } else if let Some(r) = rest.strip_prefix("i") {
            phase = 1;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        if rest.is_empty() || rest.len() > 64 {
            return Err(Error::BadPauliLiteral(format!("bad length in {text:?}")));
        }
        let mut letters = Vec::with_capacity(rest.len());
        for ch in rest.chars() {
            letters.push(match ch {
                'I' | 'i' => PauliLetter::I,
                'X' | 'x' => PauliLetter::X,
                'Y' | 'y' => PauliLetter::Y,
                'Z' | 'z' => PauliLetter::Z,
                _ => return Err(Error::BadPauliLiteral(format!("bad letter {ch:?} in {text:?}"))),
            });
        }
        Ok(Self::from_letters(&letters, phase))
    }

    #[inline]
    fn mask(&self, party: usize) -> u64 {
        1u64 << (self.n_qubits - party)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn phase_exponent(&self) -> u8 {
        self.phase_exponent
    }

    pub fn x_bits(&self) -> u64 {
        self.x_bits
    }

    pub fn z_bits(&self) -> u64 {
        self.z_bits
    }

    pub fn letter(&self, party: usize) -> PauliLetter {
        let x = self.x_bits & self.mask(party) != 0;
        let z = self.z_bits & self.mask(party) != 0;
        match (x, z) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (false, true) => PauliLetter::Z,
            (true, true) => PauliLetter::Y,
        }
    }

    /// Set one site's letter; `Y` contributes `i * XZ`, adjusting the phase
    /// so the letters read back as the familiar Hermitian Paulis.
    pub fn set_letter(&mut self, party: usize, letter: PauliLetter) -> Result<()> {
        if party == 0 || party > self.n_qubits {
            return Err(Error::PartyOutOfRange { party, n_qubits: self.n_qubits });
        }
        // clear any previous letter, undoing a Y phase if present
        if self.letter(party) == PauliLetter::Y {
            self.phase_exponent = (self.phase_exponent + 3) % 4;
        }
        let m = self.mask(party);
        self.x_bits &= !m;
        self.z_bits &= !m;
        match letter {
            PauliLetter::I => {}
            PauliLetter::X => self.x_bits |= m,
            PauliLetter::Z => self.z_bits |= m,
            PauliLetter::Y => {
                self.x_bits |= m;
                self.z_bits |= m;
                self.phase_exponent = (self.phase_exponent + 1) % 4;
            }
        }
        Ok(())
    }

    /// Scalar prefactor `i^k`, corrected for stored `XZ` pairs so the letters
    /// multiply as `I, X, Y, Z` matrices.
    pub fn scalar(&self) -> C64 {
        match self.phase_exponent % 4 {
            0 => ONE,
            1 => C64::new(0.0, 1.0),
            2 => -ONE,
            _ => C64::new(0.0, -1.0),
        }
    }

    /// Letter-wise label with a phase token, e.g. `-iXZY`.
    pub fn label(&self) -> String {
        // displaying in letters costs a phase correction for each Y site
        let y_count = (self.x_bits & self.z_bits).count_ones() as u8;
        let display_phase = (self.phase_exponent + 4 - (y_count % 4)) % 4;
        let mut out = String::new();
        out.push_str(match display_phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        });
        for p in 1..=self.n_qubits {
            out.push(match self.letter(p) {
                PauliLetter::I => 'I',
                PauliLetter::X => 'X',
                PauliLetter::Y => 'Y',
                PauliLetter::Z => 'Z',
            });
        }
        out
    }

    /// Group product `self * other` with `i^k` phase bookkeeping.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        // moving Z's of self past X's of other picks up (-1) each
        let anti = (self.z_bits & other.x_bits).count_ones() as u8;
        Ok(PauliString {
            n_qubits: self.n_qubits,
            phase_exponent: (self.phase_exponent + other.phase_exponent + 2 * (anti % 2)) % 4,
            x_bits: self.x_bits ^ other.x_bits,
            z_bits: self.z_bits ^ other.z_bits,
        })
    }

    pub fn inverse(&self) -> Self {
        // P^-1 = P^dagger; bits are involutive, only the phase adjusts:
        // (i^k X Z)^-1 = (-1)^{x.z} i^{-k} X Z
        let anti = (self.x_bits & self.z_bits).count_ones() as u8;
        PauliString {
            n_qubits: self.n_qubits,
            phase_exponent: (4 - self.phase_exponent + 2 * (anti % 2)) % 4,
            x_bits: self.x_bits,
            z_bits: self.z_bits,
        }
    }

    /// True when the symplectic form `x1.z2 + z1.x2` vanishes mod 2.
    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        let f = (self.x_bits & other.z_bits).count_ones()
            + (self.z_bits & other.x_bits).count_ones();
        Ok(f % 2 == 0)
    }

    /// Hermitian iff the phase compensates the stored `XZ` (=`-iY`) pairs.
    pub fn is_hermitian(&self) -> bool {
        let y_count = (self.x_bits & self.z_bits).count_ones() as u8;
        (self.phase_exponent + y_count) % 2 == 0
    }

    /// Apply to a dense state vector: `Z` bits contribute signs, `X` bits
    /// flip basis labels, times the scalar prefactor.
    pub fn apply(&self, amplitudes: &[C64]) -> Vec<C64> {
        let dim = amplitudes.len();
        debug_assert_eq!(dim, 1usize << self.n_qubits);
        let mut out = vec![ZERO; dim];
        let scalar = self.scalar();
        for (idx, &amp) in amplitudes.iter().enumerate() {
            if amp == ZERO {
                continue;
            }
            let sign = if ((idx as u64) & self.z_bits).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            out[idx ^ self.x_bits as usize] += scalar * sign * amp;
        }
        out
    }

    /// Dense `2^N x 2^N` matrix.
    pub fn to_matrix(&self) -> CMatrix {
        let dim = 1usize << self.n_qubits;
        let mut m = CMatrix::zeros(dim, dim);
        let scalar = self.scalar();
        for col in 0..dim {
            let sign = if ((col as u64) & self.z_bits).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            m[(col ^ self.x_bits as usize, col)] = scalar * sign;
        }
        m
    }
}

/* Stabilizer groups **********************************************************/

/// Generating set of a stabilizer group: `n` independent, pairwise commuting,
/// Hermitian Pauli strings whose generated group excludes `-1`.
#[derive(Clone, Debug)]
pub struct StabilizerGroup {
    generators: Vec<PauliString>,
}

impl StabilizerGroup {
    /// Validates commutation, GF(2) independence, and Hermiticity (which
    /// together keep `-1` outside the generated group).
    pub fn new(generators: Vec<PauliString>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::BadStabilizer("no generators".to_string()));
        }
        let n = generators[0].n_qubits();
        if generators.len() != n {
            return Err(Error::BadStabilizer(format!(
                "need exactly {n} generators for {n} qubits, got {}",
                generators.len()
            )));
        }
        for g in &generators {
            if g.n_qubits() != n {
                return Err(Error::DimensionMismatch { left: g.n_qubits(), right: n });
            }
            if !g.is_hermitian() {
                return Err(Error::BadStabilizer(format!(
                    "generator {} is not Hermitian",
                    g.label()
                )));
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for b in generators.iter().skip(i + 1) {
                if !a.commutes_with(b)? {
                    return Err(Error::BadStabilizer(format!(
                        "generators {} and {} anticommute",
                        a.label(),
                        b.label()
                    )));
                }
            }
        }
        if symplectic_rank(&generators) != generators.len() {
            return Err(Error::BadStabilizer(
                "generators are dependent over GF(2)".to_string(),
            ));
        }
        Ok(StabilizerGroup { generators })
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn n_qubits(&self) -> usize {
        self.generators[0].n_qubits()
    }

    /// Parse a comma/whitespace-separated generator list like
    /// `"XZII, ZXZI, IZXZ, IIZX"`.
    pub fn parse(text: &str) -> Result<Self> {
        let gens: Result<Vec<PauliString>> = text
            .split([',', ' ', '\n', '\t'])
            .filter(|t| !t.is_empty())
            .map(PauliString::parse)
            .collect();
        Self::new(gens?)
    }

    /// Generator set after GF(2) row reduction of the symplectic matrix
    /// (products of the originals; spans the same group).
    pub fn row_reduced(&self) -> Self {
        let n = self.generators.len();
        let mut gens = self.generators.clone();
        let mut row = 0;
        for col in 0..(2 * n) {
            let Some(piv) = (row..n).find(|&r| symplectic_bit(&gens[r], col)) else {
                continue;
            };
            gens.swap(row, piv);
            for r in 0..n {
                if r != row && symplectic_bit(&gens[r], col) {
                    gens[r] = gens[r].multiply(&gens[row]).expect("same width");
                }
            }
            row += 1;
            if row == n {
                break;
            }
        }
        StabilizerGroup { generators: gens }
    }
}

fn symplectic_bit(g: &PauliString, col: usize) -> bool {
    let n = g.n_qubits();
    if col < n {
        g.x_bits() & (1 << (n - 1 - col)) != 0
    } else {
        g.z_bits() & (1 << (2 * n - 1 - col)) != 0
    }
}

/// Rank over GF(2) of the `n x 2n` symplectic bit matrix.
fn symplectic_rank(gens: &[PauliString]) -> usize {
    let n_cols = 2 * gens[0].n_qubits();
    let mut rows: Vec<u128> = gens
        .iter()
        .map(|g| ((g.x_bits() as u128) << gens[0].n_qubits()) | g.z_bits() as u128)
        .collect();
    let mut rank = 0;
    for col in (0..n_cols).rev() {
        let mask = 1u128 << col;
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r] & mask != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let piv_row = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && *row & mask != 0 {
                *row ^= piv_row;
            }
        }
        rank += 1;
    }
    rank
}

/// The unique `+1` joint eigenstate of the group, computed by applying the
/// projector `prod_i (1 + P_i)/2` to computational fiducial vectors in index
/// order until one survives. The global phase is fixed by making the first
/// non-zero amplitude real positive.
pub fn stabilizer_state(group: &StabilizerGroup) -> Result<PureState> {
    let n = group.n_qubits();
    let dim = 1usize << n;
    for fiducial in 0..dim {
        let mut v = vec![ZERO; dim];
        v[fiducial] = ONE;
        for g in group.generators() {
            let gv = g.apply(&v);
            for (a, b) in v.iter_mut().zip(gv) {
                *a = (*a + b) * 0.5;
            }
        }
        if vnorm(&v) > 1e-8 {
            let state = PureState::from_unnormalized(n, v)?.phase_canonical();
            // defensive: every generator must stabilize the output
            for g in group.generators() {
                let gv = g.apply(state.amplitudes());
                let dev: f64 = state
                    .amplitudes()
                    .iter()
                    .zip(&gv)
                    .map(|(a, b)| (a - b).norm_sqr())
                    .sum::<f64>();
                if dev.sqrt() > 1e-10 {
                    return Err(Error::BadStabilizer(format!(
                        "projector output not stabilized by {}",
                        g.label()
                    )));
                }
            }
            return Ok(state);
        }
    }
    Err(Error::BadStabilizer("projector annihilated every fiducial vector".to_string()))
}

/* Graphs and graph states ****************************************************/

/// Simple graph on vertices `1..=n`, no self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::BadGraph("graph needs at least one vertex".to_string()));
        }
        let mut canon: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(Error::BadGraph(format!("self-loop at vertex {a}")));
            }
            if a == 0 || b == 0 || a > n_vertices || b > n_vertices {
                return Err(Error::BadGraph(format!("edge ({a},{b}) out of range")));
            }
            let e = (a.min(b), a.max(b));
            if !canon.contains(&e) {
                canon.push(e);
            }
        }
        canon.sort_unstable();
        Ok(Graph { n_vertices, edges: canon })
    }

    /// Path graph `1-2-..-n`.
    pub fn linear(n_vertices: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..n_vertices).map(|a| (a, a + 1)).collect();
        Graph::new(n_vertices, &edges).expect("valid by construction")
    }

    /// Star with center 1.
    pub fn star(n_vertices: usize) -> Self {
        let edges: Vec<(usize, usize)> = (2..=n_vertices).map(|b| (1, b)).collect();
        Graph::new(n_vertices, &edges).expect("valid by construction")
    }

    /// Cycle graph.
    pub fn ring(n_vertices: usize) -> Result<Self> {
        if n_vertices < 3 {
            return Err(Error::BadGraph("ring needs at least 3 vertices".to_string()));
        }
        let mut edges: Vec<(usize, usize)> = (1..n_vertices).map(|a| (a, a + 1)).collect();
        edges.push((1, n_vertices));
        Graph::new(n_vertices, &edges)
    }

    pub fn empty(n_vertices: usize) -> Self {
        Graph { n_vertices, edges: Vec::new() }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, vertex: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == vertex {
                    Some(b)
                } else if b == vertex {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n_vertices;
        let mut seen = vec![false; n + 1];
        let mut stack = vec![1usize];
        seen[1] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }
}

/// The vertex generators `K_a = X_a prod_{b in N_a} Z_b`.
pub fn graph_generators(g: &Graph) -> StabilizerGroup {
    let n = g.n_vertices();
    let gens: Vec<PauliString> = (1..=n)
        .map(|a| {
            let mut s = PauliString::single(n, a, PauliLetter::X).expect("vertex in range");
            for b in g.neighbors(a) {
                s.set_letter(b, PauliLetter::Z).expect("vertex in range");
            }
            s
        })
        .collect();
    StabilizerGroup::new(gens).expect("vertex generators commute and are independent")
}

/// The graph state: unique `+1` eigenstate of the vertex generators, checked
/// to be stabilized by each `K_a`.
pub fn graph_state(g: &Graph) -> Result<PureState> {
    stabilizer_state(&graph_generators(g))
}

/// Schmidt rank of a pure state across a two-camp cut, at the shared
/// relative tolerance.
pub fn schmidt_rank_across_cut(state: &PureState, cut: &crate::states::Split) -> Result<usize> {
    if !cut.is_bipartition() {
        return Err(Error::BadSplit("rank needs a bipartition".to_string()));
    }
    if cut.n_parties() != state.n_qubits() {
        return Err(Error::DimensionMismatch {
            left: cut.n_parties(),
            right: state.n_qubits(),
        });
    }
    let m = crate::normal_form::amplitude_matrix(state, &cut.blocks()[0], &cut.blocks()[1]);
    Ok(crate::linalg::rank(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vdot;
    use crate::rng::Rng;
    use crate::states::{fidelity_pure, Split};

    fn dense_mul(a: &PauliString, b: &PauliString) -> CMatrix {
        a.to_matrix().mul(&b.to_matrix())
    }

    #[test]
    fn single_qubit_table() {
        let x = PauliString::parse("X").unwrap();
        let y = PauliString::parse("Y").unwrap();
        let z = PauliString::parse("Z").unwrap();
        // X * Z = -iY
        let xz = x.multiply(&z).unwrap();
        assert_eq!(xz.label(), "-iY");
        assert!(xz.to_matrix().sub(&dense_mul(&x, &z)).max_abs() < 1e-15);
        // Z * X = iY
        let zx = z.multiply(&x).unwrap();
        assert_eq!(zx.label(), "iY");
        // Y as a matrix
        let m = y.to_matrix();
        assert!((m[(0, 1)] - C64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((m[(1, 0)] - C64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn multiply_matches_dense_exhaustively_n2() {
        // every pair of phaseless 2-qubit strings
        let letters = [PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z];
        for a0 in letters {
            for a1 in letters {
                for b0 in letters {
                    for b1 in letters {
                        let a = PauliString::from_letters(&[a0, a1], 0);
                        let b = PauliString::from_letters(&[b0, b1], 0);
                        let prod = a.multiply(&b).unwrap();
                        let dev = prod.to_matrix().sub(&dense_mul(&a, &b)).max_abs();
                        assert!(dev < 1e-14, "{} * {}", a.label(), b.label());
                        let dense_comm = dense_mul(&a, &b).sub(&dense_mul(&b, &a));
                        assert_eq!(
                            a.commutes_with(&b).unwrap(),
                            dense_comm.max_abs() < 1e-14,
                            "{} vs {}",
                            a.label(),
                            b.label()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn multiply_matches_dense_random_n4() {
        let mut rng = Rng::seed_from_u64(12);
        let letters = [PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z];
        for _ in 0..50 {
            let mut pick = || {
                let ls: alloc::vec::Vec<PauliLetter> =
                    (0..4).map(|_| letters[(rng.next_u64() % 4) as usize]).collect();
                PauliString::from_letters(&ls, (rng.next_u64() % 4) as u8)
            };
            let a = pick();
            let b = pick();
            let prod = a.multiply(&b).unwrap();
            assert!(prod.to_matrix().sub(&dense_mul(&a, &b)).max_abs() < 1e-13);
        }
    }

    #[test]
    fn inverse_gives_identity() {
        let a = PauliString::parse("-iXYZ").unwrap();
        let prod = a.multiply(&a.inverse()).unwrap();
        assert_eq!(prod, PauliString::identity(3));
    }

    #[test]
    fn commutation_example_from_symplectic_form() {
        let zz = PauliString::parse("ZZI").unwrap();
        let xxx = PauliString::parse("XXX").unwrap();
        assert!(zz.commutes_with(&xxx).unwrap());
        let zi = PauliString::parse("ZII").unwrap();
        let xi = PauliString::parse("XII").unwrap();
        assert!(!zi.commutes_with(&xi).unwrap());
    }

    #[test]
    fn parse_and_label_roundtrip() {
        for text in ["XZII", "-YXI", "iZZ", "-iXY", "IIII"] {
            let p = PauliString::parse(text).unwrap();
            let q = PauliString::parse(&p.label()).unwrap();
            assert_eq!(p, q);
        }
        assert!(PauliString::parse("AB").is_err());
        assert!(PauliString::parse("").is_err());
    }

    #[test]
    fn ghz_stabilizer_state() {
        let group = StabilizerGroup::parse("ZZI, IZZ, XXX").unwrap();
        let state = stabilizer_state(&group).unwrap();
        let f = fidelity_pure(&state, &PureState::ghz(3)).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_z_gives_zero_ket() {
        let group = StabilizerGroup::parse("Z").unwrap();
        let state = stabilizer_state(&group).unwrap();
        assert!((state.amplitude(0) - ONE).norm() < 1e-12);
        // -Z stabilizes |1>, exercising the fiducial fallback
        let group = StabilizerGroup::parse("-Z").unwrap();
        let state = stabilizer_state(&group).unwrap();
        assert!((state.amplitude(1) - ONE).norm() < 1e-12);
    }

    #[test]
    fn invalid_groups_rejected() {
        // anticommuting
        assert!(StabilizerGroup::parse("XI, ZI").is_err());
        // dependent (ZZ = Z1 * Z2 would need phase bookkeeping; use plain dupes)
        assert!(StabilizerGroup::parse("ZI, ZI").is_err());
        // non-Hermitian
        assert!(StabilizerGroup::parse("iZI, IZ").is_err());
        // wrong count
        assert!(StabilizerGroup::parse("ZZ").is_err());
    }

    #[test]
    fn cluster_state_from_explicit_generators() {
        let group = StabilizerGroup::parse("XZII, ZXZI, IZXZ, IIZX").unwrap();
        let state = stabilizer_state(&group).unwrap();
        for k in 0..16 {
            assert!((state.amplitude(k).norm() - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn linear_graph_generators_expected_set() {
        let g = Graph::linear(4);
        let gens = graph_generators(&g);
        let labels: alloc::vec::Vec<_> = gens.generators().iter().map(|p| p.label()).collect();
        assert_eq!(labels, ["XZII", "ZXZI", "IZXZ", "IIZX"]);
    }

    #[test]
    fn empty_graph_gives_plus_states() {
        let g = Graph::empty(3);
        let gens = graph_generators(&g);
        let labels: alloc::vec::Vec<_> = gens.generators().iter().map(|p| p.label()).collect();
        assert_eq!(labels, ["XII", "IXI", "IIX"]);
        let state = graph_state(&g).unwrap();
        assert!((fidelity_pure(&state, &PureState::plus(3)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_generators_commute() {
        let g = Graph::new(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let gens = graph_generators(&g);
        let labels: alloc::vec::Vec<_> = gens.generators().iter().map(|p| p.label()).collect();
        assert_eq!(labels, ["XZZ", "ZXZ", "ZZX"]);
        for (i, a) in gens.generators().iter().enumerate() {
            for b in gens.generators().iter().skip(i + 1) {
                let dense = dense_mul(a, b).sub(&dense_mul(b, a));
                assert!(dense.max_abs() < 1e-14);
            }
        }
    }

    #[test]
    fn cluster_state_matches_cz_expansion() {
        // product expansion with Z on the |1> branch: the +1 eigenstate
        let g = Graph::linear(4);
        let state = graph_state(&g).unwrap();
        let mut amps = vec![ZERO; 16];
        for b in 0..16usize {
            let bits: Vec<usize> = (0..4).map(|k| (b >> (3 - k)) & 1).collect();
            let mut sign = 1.0;
            for a in 0..3 {
                if bits[a] == 1 && bits[a + 1] == 1 {
                    sign = -sign;
                }
            }
            amps[b] = C64::new(sign * 0.25, 0.0);
        }
        let expansion = PureState::new(4, amps).unwrap();
        assert!((fidelity_pure(&state, &expansion).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn single_vertex_graph_is_plus() {
        let state = graph_state(&Graph::empty(1)).unwrap();
        assert!((fidelity_pure(&state, &PureState::plus(1)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn star_graph_ranks() {
        let state = graph_state(&Graph::star(3)).unwrap();
        for block in [[1usize], [2], [3]] {
            let cut = Split::bipartition(3, &block).unwrap();
            assert_eq!(schmidt_rank_across_cut(&state, &cut).unwrap(), 2);
        }
    }

    #[test]
    fn cluster_rank_across_middle_cut() {
        let state = graph_state(&Graph::linear(4)).unwrap();
        let cut = Split::bipartition(4, &[1, 2]).unwrap();
        assert_eq!(schmidt_rank_across_cut(&state, &cut).unwrap(), 2);
        let product = PureState::plus(4);
        assert_eq!(schmidt_rank_across_cut(&product, &cut).unwrap(), 1);
        let ghz = PureState::ghz(3);
        let cut3 = Split::bipartition(3, &[1]).unwrap();
        assert_eq!(schmidt_rank_across_cut(&ghz, &cut3).unwrap(), 2);
    }

    #[test]
    fn row_reduced_group_same_state() {
        let g = Graph::ring(5).unwrap();
        let gens = graph_generators(&g);
        let state = stabilizer_state(&gens).unwrap();
        let reduced = gens.row_reduced();
        let state2 = stabilizer_state(&reduced).unwrap();
        assert!((fidelity_pure(&state, &state2).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn graph_states_up_to_eight_vertices() {
        let corpus = [Graph::linear(8), Graph::star(8), Graph::ring(8).unwrap(), Graph::linear(6)];
        for graph in &corpus {
            let gens = graph_generators(graph);
            for (i, a) in gens.generators().iter().enumerate() {
                for b in gens.generators().iter().skip(i + 1) {
                    assert!(a.commutes_with(b).unwrap());
                }
            }
            let state = graph_state(graph).unwrap();
            for g in gens.generators() {
                let gv = g.apply(state.amplitudes());
                let dev: f64 = state
                    .amplitudes()
                    .iter()
                    .zip(&gv)
                    .map(|(a, b)| (a - b).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(dev < 1e-10, "{} fails on {:?}", g.label(), graph.edges());
            }
        }
    }

    #[test]
    fn apply_matches_dense() {
        let mut rng = Rng::seed_from_u64(13);
        let p = PauliString::parse("-iYZXI").unwrap();
        let v: Vec<C64> = (0..16).map(|_| rng.complex_gaussian()).collect();
        let fast = p.apply(&v);
        let dense = p.to_matrix().apply(&v);
        let dev: f64 = fast.iter().zip(&dense).map(|(a, b)| (a - b).norm()).sum();
        assert!(dev < 1e-12);
        let _ = vdot(&fast, &dense);
    }
}
