//! Binomial coefficients and colex enumeration of `[n]^(r)`.

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::vset::VSet;

/// `C(n, k)` with overflow detection.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc.checked_mul((n - i) as u128)? / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// `C(n, k)` in exact arbitrary precision.
pub fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Colex rank of an `r`-subset given as a bitmask: `sum_i C(c_i, i)` over
/// its 0-based elements `c_1 < ... < c_r`.
pub fn colex_rank(mask: u64) -> u64 {
    let mut rank = 0;
    let mut m = mask;
    let mut i = 1;
    while m != 0 {
        let c = m.trailing_zeros() as u64;
        rank += binomial(c, i).expect("colex rank of a 64-bit mask fits");
        m &= m - 1;
        i += 1;
    }
    rank
}

/// Next bitmask with the same popcount (Gosper's hack); `None` past 64 bits.
#[inline]
pub fn next_same_popcount(x: u64) -> Option<u64> {
    if x == 0 {
        return None;
    }
    let c = x & x.wrapping_neg();
    let (r, overflow) = x.overflowing_add(c);
    if overflow || r == 0 {
        return None;
    }
    Some((((r ^ x) >> 2) / c) | r)
}

/// All `r`-subsets of `[n]` as bitmasks, in colex order. Requires `n <= 64`.
pub fn subset_masks(n: u32, r: u32) -> Vec<u64> {
    assert!(n <= 64, "bitmask enumeration needs n <= 64");
    if r > n {
        return Vec::new();
    }
    if r == 0 {
        return alloc::vec![0];
    }
    let limit_bit = if n == 64 { None } else { Some(1u64 << n) };
    let mut out = Vec::new();
    let mut x = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
    loop {
        if let Some(limit) = limit_bit {
            if x >= limit {
                break;
            }
        }
        out.push(x);
        match next_same_popcount(x) {
            Some(next) => x = next,
            None => break,
        }
    }
    out
}

/// Iterator over `[n]^(r)` in colex order, for any `n`.
pub struct Subsets {
    n: u32,
    // 1-based elements, increasing; `None` once exhausted.
    current: Option<Vec<u32>>,
}

impl Subsets {
    pub fn new(n: u32, r: u32) -> Self {
        let current = (r <= n).then(|| (1..=r).collect());
        Subsets { n, current }
    }
}

impl Iterator for Subsets {
    type Item = VSet;

    fn next(&mut self) -> Option<VSet> {
        let cur = self.current.as_mut()?;
        let out = VSet::new(self.n, cur.iter().copied()).expect("subset within ground set");
        // Colex successor: bump the lowest element that can move up, reset
        // everything below it to 1, 2, ...
        let r = cur.len();
        let mut i = 0;
        while i < r {
            let limit = if i + 1 < r { cur[i + 1] } else { self.n + 1 };
            if cur[i] + 1 < limit {
                cur[i] += 1;
                for (j, slot) in cur.iter_mut().enumerate().take(i) {
                    *slot = j as u32 + 1;
                }
                break;
            }
            i += 1;
        }
        if i == r {
            self.current = None;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial_ratio(n: u64, k: u64) -> u64 {
        // Independent route: Pascal's triangle.
        let mut row = alloc::vec![1u64];
        for _ in 0..n {
            let mut next = alloc::vec![1u64; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        row.get(k as usize).copied().unwrap_or(0)
    }

    #[test]
    fn binomials_match_pascal() {
        for n in 0..40 {
            for k in 0..=n + 1 {
                let p = factorial_ratio(n, k);
                assert_eq!(binomial(n, k), Some(p), "C({n},{k})");
                assert_eq!(binomial_big(n, k), BigUint::from(p));
            }
        }
        assert_eq!(binomial(68, 34), None);
        assert_eq!(binomial_big(100, 50).to_u64_digits().len(), 2);
    }

    #[test]
    fn subsets_in_colex_order() {
        let masks = subset_masks(4, 2);
        assert_eq!(masks, [0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        for (i, &m) in masks.iter().enumerate() {
            assert_eq!(colex_rank(m), i as u64);
        }
        let sets: Vec<_> = Subsets::new(4, 2).map(|s| s.as_mask().unwrap()).collect();
        assert_eq!(sets, masks);
        assert_eq!(Subsets::new(7, 3).count(), 35);
        assert_eq!(Subsets::new(3, 0).count(), 1);
        assert_eq!(Subsets::new(2, 3).count(), 0);
        assert_eq!(subset_masks(64, 63).len(), 64);
        assert_eq!(subset_masks(5, 5), [0b11111]);
    }

    #[test]
    fn wide_subsets_are_sorted() {
        let v: Vec<_> = Subsets::new(70, 2).collect();
        assert_eq!(v.len(), 70 * 69 / 2);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }
}
