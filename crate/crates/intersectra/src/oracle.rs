//! Brute-force references that share no code with the search engine.
//!
//! `naive_beta` enumerates every subfamily of `[n]^(r)` with plain bit
//! arithmetic, so it is only usable when `C(n, r)` is tiny.

use std::collections::BTreeSet;

/// Largest `C(n, r)` accepted by [`naive_beta`].
pub const NAIVE_LIMIT: usize = 20;

/// `r`-subsets of `[n]` as bitmasks, by filtering all `2^n` masks.
pub fn r_subsets(n: u32, r: u32) -> Vec<u64> {
    assert!(n < 64);
    (0u64..1 << n).filter(|m| m.count_ones() == r).collect()
}

/// `|F<k>|` by collecting every pairwise intersection, `A = B` included.
pub fn k_count(family: &[u64], k: u32) -> usize {
    let mut seen = BTreeSet::new();
    for (i, &a) in family.iter().enumerate() {
        for &b in &family[i..] {
            let c = a & b;
            if c.count_ones() == k {
                seen.insert(c);
            }
        }
    }
    seen.len()
}

pub fn pairwise_meeting(family: &[u64]) -> bool {
    family
        .iter()
        .enumerate()
        .all(|(i, &a)| family[i + 1..].iter().all(|&b| a & b != 0))
}

/// `β(n, r, k)` over every intersecting subfamily (the empty one counts 0).
pub fn naive_beta(n: u32, r: u32, k: u32) -> Option<usize> {
    let sets = r_subsets(n, r);
    if sets.len() > NAIVE_LIMIT {
        return None;
    }
    let mut best = 0;
    let mut family = Vec::with_capacity(sets.len());
    for choice in 0u32..1 << sets.len() {
        family.clear();
        family.extend(
            sets.iter()
                .enumerate()
                .filter(|(i, _)| choice >> i & 1 == 1)
                .map(|(_, &s)| s),
        );
        if pairwise_meeting(&family) {
            best = best.max(k_count(&family, k));
        }
    }
    Some(best)
}

/// `k`-subsets of `[n]` that meet `points`, by direct filtering.
pub fn hitting_sets(n: u32, k: u32, points: u64) -> Vec<u64> {
    r_subsets(n, k)
        .into_iter()
        .filter(|&c| c & points != 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_values() {
        assert_eq!(naive_beta(4, 2, 2), Some(3));
        assert_eq!(naive_beta(5, 2, 1), Some(3));
        assert_eq!(naive_beta(3, 1, 1), Some(1));
        assert_eq!(naive_beta(7, 3, 1), None);
        assert_eq!(hitting_sets(7, 2, 0b111).len(), 15);
    }
}
