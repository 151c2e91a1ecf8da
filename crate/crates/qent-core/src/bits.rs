//! Bit-indexing utility for the crate-wide basis convention.
//!
//! Basis label `b1 b2 .. bN` maps to index `sum_a b_a * 2^(N-a)`: party 1 is
//! the most significant bit. Parties are 1-based everywhere in the public
//! API. All index arithmetic in the crate funnels through these functions.

/// Bit of `index` belonging to `party` (1-based) in an `n`-qubit register.
#[inline]
pub fn bit(index: usize, party: usize, n: usize) -> usize {
    debug_assert!(party >= 1 && party <= n);
    (index >> (n - party)) & 1
}

/// `index` with the bit of `party` set to `value` (0 or 1).
#[inline]
pub fn with_bit(index: usize, party: usize, n: usize, value: usize) -> usize {
    debug_assert!(value <= 1);
    let shift = n - party;
    (index & !(1 << shift)) | (value << shift)
}

/// Insert `value` as the bit of `party` into an `(n-1)`-qubit `index`,
/// yielding an `n`-qubit index. Used when undoing a single-qubit contraction.
#[inline]
pub fn insert_bit(index: usize, party: usize, n: usize, value: usize) -> usize {
    debug_assert!(party >= 1 && party <= n);
    debug_assert!(value <= 1);
    let shift = n - party;
    let high = (index >> shift) << (shift + 1);
    let low = index & ((1 << shift) - 1);
    high | (value << shift) | low
}

/// Remove the bit of `party` from an `n`-qubit `index`, yielding an
/// `(n-1)`-qubit index over the remaining parties in order.
#[inline]
pub fn remove_bit(index: usize, party: usize, n: usize) -> usize {
    let shift = n - party;
    let high = (index >> (shift + 1)) << shift;
    let low = index & ((1 << shift) - 1);
    high | low
}

/// Pack the bits of `parties` (given in ascending label order) into a
/// `parties.len()`-qubit index, most significant first.
#[inline]
pub fn extract(index: usize, parties: &[usize], n: usize) -> usize {
    let mut out = 0;
    for &p in parties {
        out = (out << 1) | bit(index, p, n);
    }
    out
}

/// Build an `n`-qubit index from sub-indices over two disjoint party lists
/// (each in ascending label order).
#[inline]
pub fn merge(a_sub: usize, a_parties: &[usize], b_sub: usize, b_parties: &[usize], n: usize) -> usize {
    let mut out = 0;
    for (k, &p) in a_parties.iter().enumerate() {
        let b = (a_sub >> (a_parties.len() - 1 - k)) & 1;
        out = with_bit(out, p, n, b);
    }
    for (k, &p) in b_parties.iter().enumerate() {
        let b = (b_sub >> (b_parties.len() - 1 - k)) & 1;
        out = with_bit(out, p, n, b);
    }
    out
}

/// Swap, between two indices, the bits belonging to the listed parties.
/// Returns the pair `(row', col')` used by the partial transpose.
#[inline]
pub fn swap_bits(row: usize, col: usize, parties: &[usize], n: usize) -> (usize, usize) {
    let mut r = row;
    let mut c = col;
    for &p in parties {
        let rb = bit(row, p, n);
        let cb = bit(col, p, n);
        r = with_bit(r, p, n, cb);
        c = with_bit(c, p, n, rb);
    }
    (r, c)
}

/// Hamming weight of the `n` low-order basis bits.
#[inline]
pub fn weight(index: usize) -> u32 {
    index.count_ones()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn msb_first_convention() {
        // 3 qubits: label (b1,b2,b3) = (1,0,1) -> index 5
        let idx = 0b101;
        assert_eq!(bit(idx, 1, 3), 1);
        assert_eq!(bit(idx, 2, 3), 0);
        assert_eq!(bit(idx, 3, 3), 1);
    }

    #[test]
    fn insert_remove_roundtrip() {
        for n in 2..=5usize {
            for party in 1..=n {
                for sub in 0..(1usize << (n - 1)) {
                    for v in 0..=1usize {
                        let full = insert_bit(sub, party, n, v);
                        assert_eq!(bit(full, party, n), v);
                        assert_eq!(remove_bit(full, party, n), sub);
                    }
                }
            }
        }
    }

    #[test]
    fn extract_merge_roundtrip() {
        let n = 4;
        let a = [1usize, 3];
        let b = [2usize, 4];
        for idx in 0..16usize {
            let sa = extract(idx, &a, n);
            let sb = extract(idx, &b, n);
            assert_eq!(merge(sa, &a, sb, &b, n), idx);
        }
    }

    #[test]
    fn swap_is_involutive() {
        let n = 3;
        for r in 0..8usize {
            for c in 0..8usize {
                let (r1, c1) = swap_bits(r, c, &[2], n);
                let (r2, c2) = swap_bits(r1, c1, &[2], n);
                assert_eq!((r2, c2), (r, c));
            }
        }
    }
}
