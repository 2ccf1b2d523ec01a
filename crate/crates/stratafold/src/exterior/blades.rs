//! Bit-mask combinatorics for basis blades. A blade is a subset of
//! {0, .., n-1} stored as a u32; bit order encodes the increasing tuple.

/// Sign of wedging two disjoint sorted blades `a` then `b` into sorted order,
/// or None if they share an index.
pub(crate) fn wedge_masks(a: u32, b: u32) -> Option<(u32, f64)> {
    if a & b != 0 {
        return None;
    }
    // count transpositions: for each index of b, the indices of a above it
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let i = rest.trailing_zeros();
        inversions += (a >> (i + 1)).count_ones();
        rest &= rest - 1;
    }
    let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
    Some((a | b, sign))
}

/// Removes index `k` from blade `m` in first-slot convention: returns the
/// remaining blade and (-1)^(number of indices below k), or None if k is
/// absent.
pub(crate) fn contract_mask(m: u32, k: usize) -> Option<(u32, f64)> {
    let bit = 1u32 << k;
    if m & bit == 0 {
        return None;
    }
    let below = (m & (bit - 1)).count_ones();
    let sign = if below % 2 == 0 { 1.0 } else { -1.0 };
    Some((m & !bit, sign))
}

/// Replaces index `old` (present in `m`) by `new`, resorting; None if `new`
/// already occurs elsewhere in the blade. Sign counts the indices strictly
/// between the two.
pub(crate) fn substitute_mask(m: u32, old: usize, new: usize) -> Option<(u32, f64)> {
    debug_assert!(m & (1 << old) != 0);
    if new == old {
        return Some((m, 1.0));
    }
    let rest = m & !(1u32 << old);
    if rest & (1 << new) != 0 {
        return None;
    }
    let (lo, hi) = if new < old { (new, old) } else { (old, new) };
    let between = (rest >> (lo + 1)) & !(u32::MAX << (hi - lo - 1) as u32);
    let sign = if between.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
    Some((rest | (1 << new), sign))
}

/// Sorts an index list into a blade mask, tracking the permutation sign.
/// Returns None when an index repeats (the blade vanishes).
pub(crate) fn mask_from_indices(indices: &[usize]) -> Option<(u32, f64)> {
    let mut mask = 0u32;
    let mut inversions = 0usize;
    for (pos, &i) in indices.iter().enumerate() {
        let bit = 1u32 << i;
        if mask & bit != 0 {
            return None;
        }
        for &j in &indices[..pos] {
            if j > i {
                inversions += 1;
            }
        }
        mask |= bit;
    }
    let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
    Some((mask, sign))
}

/// Indices of a blade in increasing order.
pub(crate) fn mask_indices(m: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    let mut rest = m;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

/// All blades of the given grade over n indices, in increasing mask order.
pub(crate) fn masks_of_grade(n: usize, grade: usize) -> Vec<u32> {
    let mut out = Vec::new();
    if grade > n {
        return out;
    }
    if grade == 0 {
        out.push(0);
        return out;
    }
    // Gosper's hack walks fixed-popcount masks in increasing order
    let mut v: u64 = (1u64 << grade) - 1;
    let limit: u64 = 1u64 << n;
    while v < limit {
        out.push(v as u32);
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    out
}
