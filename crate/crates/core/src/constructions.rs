//! Explicit intersecting families and the registry of known `α^(r)` values.
//!
//! `α^(r)` is the largest number of singletons `|A<1>|` that an intersecting
//! family of `r`-sets can realize, over all ground-set sizes. It is known
//! exactly for `r <= 4` (1, 3, 7, 16); beyond that only Tuza's interval
//! `2C(2r-4,r-2) + 2r - 4 <= α^(r) <= C(2r-1,r-1) + C(2r-4,r-1)` is recorded.

use alloc::vec::Vec;

use crate::combin::{binomial, Subsets};
use crate::error::{param, Error, Result};
use crate::family::SetFamily;
use crate::structure::pairwise_intersecting;
use crate::vset::VSet;

/// Exact `α^(r)` for `r = 1..=4`.
pub const KNOWN_ALPHA: [u64; 4] = [1, 3, 7, 16];

/// The six triples on `[7]` whose pairwise intersections realize all seven points.
pub const ALPHA3_TRIPLES: [[u32; 3]; 6] = [
    [1, 2, 3],
    [1, 4, 5],
    [2, 4, 6],
    [3, 5, 6],
    [1, 6, 7],
    [2, 5, 7],
];

/// The two extra 4-sets added to the up-closure of [`ALPHA3_TRIPLES`] in
/// [`section4_family`].
pub const SECTION4_EXTRA: [[u32; 4]; 2] = [[1, 2, 5, 8], [3, 4, 7, 8]];

fn ensure_fits(n: u32, needed: u32) -> Result<()> {
    if n < needed {
        return Err(param("n", n, "ground set too small for this family"));
    }
    Ok(())
}

/// The triangle `{12, 13, 23}` over `[n]`, `n >= 3`.
pub fn triangle(n: u32) -> Result<SetFamily> {
    ensure_fits(n, 3)?;
    SetFamily::from_lists(n, &[[1, 2], [1, 3], [2, 3]])?.with_rank(2)
}

/// [`ALPHA3_TRIPLES`] over `[n]`, `n >= 7`.
pub fn alpha3_family(n: u32) -> Result<SetFamily> {
    ensure_fits(n, 7)?;
    SetFamily::from_lists(n, &ALPHA3_TRIPLES)?.with_rank(3)
}

/// The star `{A ∈ [n]^(r) : 1 ∈ A}` of size `C(n-1, r-1)`.
pub fn star_family(n: u32, r: u32) -> Result<SetFamily> {
    if r == 0 || r > n {
        return Err(param("r", r, "must satisfy 1 <= r <= n"));
    }
    let members = Subsets::new(n, r).filter(|s| s.contains(1));
    SetFamily::uniform(n, r, members)
}

/// All `r`-subsets of `[n]` containing at least one member of `base`.
pub fn up_closure(base: &SetFamily, r: u32) -> Result<SetFamily> {
    let n = base.ground_size();
    let members = Subsets::new(n, r).filter(|s| base.iter().any(|b| b.is_subset(s)));
    SetFamily::uniform(n, r, members)
}

/// Tuza's lower-bound family for `α^(r)`, `r >= 3`.
///
/// The base `[2r-4]` is split into complementary `(r-2)`-set pairs `(A_i, B_i)`,
/// taken in colex order of the smaller half `A_i`. Pair `i` receives four new
/// labels `a_i, b_i, c_i, d_i` (in that order, after the base) and contributes
/// `A_i+a_i+b_i`, `A_i+c_i+d_i`, `B_i+a_i+c_i`, `B_i+b_i+d_i`.
pub fn tuza_family(r: u32) -> Result<SetFamily> {
    if r < 3 {
        return Err(param("r", r, "the paired construction needs r >= 3"));
    }
    let base = 2 * r - 4;
    let half_pairs =
        binomial(base as u64, (r - 2) as u64).ok_or(Error::Overflow("C(2r-4,r-2)"))? / 2;
    let n =
        u32::try_from(base as u64 + 4 * half_pairs).map_err(|_| Error::Overflow("ground size"))?;
    let full = VSet::prefix(n, base)?;
    let mut members = Vec::new();
    let mut next_label = base + 1;
    for a in Subsets::new(n, r - 2).take_while(|s| s.max_element().unwrap_or(0) <= base) {
        let b = full.difference(&a);
        if b <= a {
            continue;
        }
        let [la, lb, lc, ld] = [next_label, next_label + 1, next_label + 2, next_label + 3];
        next_label += 4;
        members.push(a.with(la)?.with(lb)?);
        members.push(a.with(lc)?.with(ld)?);
        members.push(b.with(la)?.with(lc)?);
        members.push(b.with(lb)?.with(ld)?);
    }
    debug_assert_eq!(next_label, n + 1);
    SetFamily::uniform(n, r, members)
}

/// Up-closure of an extremal `(r-k+1)`-uniform base to `r`-sets over `[n]`.
///
/// When `base<1> = [α]` with `α = α^(r-k+1)`, the result's `k`-intersections
/// are exactly the `k`-sets meeting `[α]`. `n` must leave room for the padding
/// used to realize each of them: `n >= |support(base)| + 2(k-1)`.
pub fn construction_one(n: u32, r: u32, k: u32, base: &SetFamily) -> Result<SetFamily> {
    if k == 0 || k > r {
        return Err(param("k", k, "must satisfy 1 <= k <= r"));
    }
    if base.ground_size() != n {
        return Err(Error::GroundMismatch {
            expected: n,
            found: base.ground_size(),
        });
    }
    if base.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let base_rank = r - k + 1;
    if let Some(m) = base.iter().find(|m| m.len() != base_rank as usize) {
        return Err(Error::RankMismatch {
            expected: base_rank,
            found: m.len() as u32,
        });
    }
    if !pairwise_intersecting(base.members()) {
        return Err(Error::NotIntersecting);
    }
    let needed = base.support().len() as u32 + 2 * (k - 1);
    if n < needed || r > n {
        return Err(param(
            "n",
            n,
            "too small to realize every claimed k-intersection",
        ));
    }
    up_closure(base, r)
}

/// The non-uniqueness example for `k = 2`, `r = 4`: the up-closure
/// `E` of [`ALPHA3_TRIPLES`] to 4-sets, plus `1258` and `3478`.
pub fn section4_family(n: u32) -> Result<SetFamily> {
    if n < 10 {
        return Err(param("n", n, "must be at least 10"));
    }
    let mut f = up_closure(&alpha3_family(n)?, 4)?;
    for extra in SECTION4_EXTRA {
        f.insert(VSet::new(n, extra)?)?;
    }
    Ok(f)
}

/// What is known about `α^(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaValue {
    Exact(u64),
    Interval { lower: u64, upper: u64 },
}

/// Registry entry for `α^(r)` with a family achieving the lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaRecord {
    pub r: u32,
    pub value: AlphaValue,
    pub witness: SetFamily,
}

impl AlphaRecord {
    pub fn ground_size(&self) -> u32 {
        self.witness.ground_size()
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.value, AlphaValue::Exact(_))
    }

    /// Exact value, or the lower end of the interval.
    pub fn lower(&self) -> u64 {
        match self.value {
            AlphaValue::Exact(v) => v,
            AlphaValue::Interval { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> u64 {
        match self.value {
            AlphaValue::Exact(v) => v,
            AlphaValue::Interval { upper, .. } => upper,
        }
    }
}

/// `α^(r)` with its witness: exact for `r <= 4`, Tuza interval above.
pub fn alpha_witness(r: u32) -> Result<AlphaRecord> {
    let witness = match r {
        0 => return Err(param("r", r, "must be at least 1")),
        1 => SetFamily::from_lists(1, &[[1]])?.with_rank(1)?,
        2 => triangle(3)?,
        3 => alpha3_family(7)?,
        _ => tuza_family(r)?,
    };
    let value = if r <= 4 {
        AlphaValue::Exact(KNOWN_ALPHA[r as usize - 1])
    } else {
        let (lower, upper) = tuza_bounds(r)?;
        AlphaValue::Interval { lower, upper }
    };
    Ok(AlphaRecord { r, value, witness })
}

fn checked_binomial(n: u64, k: u64) -> Result<u64> {
    binomial(n, k).ok_or(Error::Overflow("binomial coefficient"))
}

/// Tuza's bounds `(2C(2r-4,r-2) + 2r-4, C(2r-1,r-1) + C(2r-4,r-1))`, `r >= 4`.
pub fn tuza_bounds(r: u32) -> Result<(u64, u64)> {
    if r < 4 {
        return Err(param("r", r, "Tuza bounds are stated for r >= 4"));
    }
    let r = r as u64;
    let lower = checked_binomial(2 * r - 4, r - 2)?
        .checked_mul(2)
        .and_then(|x| x.checked_add(2 * r - 4))
        .ok_or(Error::Overflow("Tuza lower bound"))?;
    let upper = checked_binomial(2 * r - 1, r - 1)?
        .checked_add(checked_binomial(2 * r - 4, r - 1)?)
        .ok_or(Error::Overflow("Tuza upper bound"))?;
    Ok((lower, upper))
}

/// Lovász's bounds `(C(2r-3,r-1) + 2r-2, (2r-1)C(2r-3,r-1))`, `r >= 2`.
pub fn lovasz_bounds(r: u32) -> Result<(u64, u64)> {
    if r < 2 {
        return Err(param("r", r, "Lovász bounds are stated for r >= 2"));
    }
    let r = r as u64;
    let c = checked_binomial(2 * r - 3, r - 1)?;
    let lower = c
        .checked_add(2 * r - 2)
        .ok_or(Error::Overflow("Lovász lower bound"))?;
    let upper = c
        .checked_mul(2 * r - 1)
        .ok_or(Error::Overflow("Lovász upper bound"))?;
    Ok((lower, upper))
}

/// Bracket for `α^(r)`: the exact value twice for `r <= 3`, Tuza's interval
/// for `r >= 4` (so `r = 4` gives `(16, 39)` even though 16 is exact).
pub fn alpha_bounds(r: u32) -> Result<(u64, u64)> {
    match r {
        0 => Err(param("r", r, "must be at least 1")),
        1..=3 => {
            let v = KNOWN_ALPHA[r as usize - 1];
            Ok((v, v))
        }
        _ => tuza_bounds(r),
    }
}

/// Ground-set sizes beyond which the closed form for `β(n, r, k)` is
/// guaranteed, as given by a rough counting argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThresholdEstimate {
    /// `k · C(2r, r)^2`.
    pub sufficient_n: u64,
    /// `2C(2r-2k-2, r-k-1) + 2r-2k-2`, the Tuza lower bound for `α^(r-k+1)`
    /// and hence the least `n` the construction can live on. `None` when
    /// `r - k - 1 < 0`, where the expression is undefined.
    pub construction_min_n: Option<u64>,
}

pub fn threshold_estimate(r: u32, k: u32) -> Result<ThresholdEstimate> {
    if k == 0 || k > r {
        return Err(param("k", k, "must satisfy 1 <= k <= r"));
    }
    let (r, k) = (r as u64, k as u64);
    let c = checked_binomial(2 * r, r)?;
    let sufficient_n = c
        .checked_mul(c)
        .and_then(|x| x.checked_mul(k))
        .ok_or(Error::Overflow("threshold"))?;
    let construction_min_n = if r > k {
        let m = 2 * (r - k) - 2;
        Some(
            checked_binomial(m, r - k - 1)?
                .checked_mul(2)
                .and_then(|x| x.checked_add(m))
                .ok_or(Error::Overflow("construction threshold"))?,
        )
    } else {
        None
    };
    Ok(ThresholdEstimate {
        sufficient_n,
        construction_min_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{intersection_structure, is_intersecting};

    fn singletons(f: &SetFamily) -> usize {
        intersection_structure(f).unwrap().count(1)
    }

    #[test]
    fn star_examples() {
        let s = star_family(4, 2).unwrap();
        assert_eq!(s.to_lists(), [[1, 2], [1, 3], [1, 4]]);
        assert_eq!(star_family(6, 3).unwrap().len(), 10);
        assert_eq!(star_family(5, 5).unwrap().to_lists(), [[1, 2, 3, 4, 5]]);
        assert!(star_family(3, 4).is_err());
        assert!(star_family(3, 0).is_err());
    }

    #[test]
    fn tuza_three_is_the_four_set_gadget() {
        let f = tuza_family(3).unwrap();
        assert_eq!(f.ground_size(), 6);
        // {1ab, 1cd, 2ac, 2bd} with a,b,c,d = 3,4,5,6.
        let expected =
            SetFamily::from_lists(6, &[[1, 3, 4], [1, 5, 6], [2, 3, 5], [2, 4, 6]]).unwrap();
        assert_eq!(f, expected);
        assert_eq!(singletons(&f), 6);
        assert!(tuza_family(2).is_err());
    }

    #[test]
    fn tuza_four_has_sixteen_singletons() {
        let f = tuza_family(4).unwrap();
        assert_eq!((f.len(), f.ground_size()), (12, 16));
        assert!(is_intersecting(&f).unwrap());
        assert_eq!(singletons(&f), 16);
    }

    #[test]
    fn alpha_registry() {
        for r in 1..=4 {
            let rec = alpha_witness(r).unwrap();
            assert_eq!(rec.value, AlphaValue::Exact(KNOWN_ALPHA[r as usize - 1]));
            assert_eq!(rec.witness.rank(), Some(r));
            assert!(is_intersecting(&rec.witness).unwrap());
            assert_eq!(singletons(&rec.witness) as u64, rec.lower());
        }
        assert_eq!(alpha_witness(3).unwrap().witness, alpha3_family(7).unwrap());
        let five = alpha_witness(5).unwrap();
        assert_eq!(
            five.value,
            AlphaValue::Interval {
                lower: 46,
                upper: 141
            }
        );
        assert_eq!(singletons(&five.witness), 46);
        assert!(alpha_witness(0).is_err());
    }

    #[test]
    fn bounds_arithmetic() {
        assert_eq!(alpha_bounds(4).unwrap(), (16, 39));
        assert_eq!(alpha_bounds(5).unwrap(), (46, 141));
        assert_eq!(alpha_bounds(6).unwrap(), (148, 518));
        assert_eq!(alpha_bounds(2).unwrap(), (3, 3));
        assert!(alpha_bounds(0).is_err());
        // Lovász: r=2 gives (C(1,1)+2, 3C(1,1)) = (3, 3); r=3 gives (3+4, 5·3).
        assert_eq!(lovasz_bounds(2).unwrap(), (3, 3));
        assert_eq!(lovasz_bounds(3).unwrap(), (7, 15));
        for r in 4..=12 {
            let (tl, tu) = tuza_bounds(r).unwrap();
            let (ll, lu) = lovasz_bounds(r).unwrap();
            assert!(ll <= tl && tl <= tu && tu <= lu, "r={r}");
        }
    }

    #[test]
    fn threshold_arithmetic() {
        assert_eq!(threshold_estimate(2, 1).unwrap().sufficient_n, 36);
        assert_eq!(threshold_estimate(3, 2).unwrap().sufficient_n, 800);
        assert_eq!(threshold_estimate(4, 2).unwrap().sufficient_n, 9800);
        assert_eq!(
            threshold_estimate(2, 1).unwrap().construction_min_n,
            Some(2)
        );
        // r-k+1 = 5: Tuza's lower bound for α^(5).
        assert_eq!(
            threshold_estimate(6, 2).unwrap().construction_min_n,
            Some(46)
        );
        assert_eq!(threshold_estimate(3, 3).unwrap().construction_min_n, None);
        assert!(threshold_estimate(3, 4).is_err());
    }

    #[test]
    fn construction_one_validation() {
        let t = triangle(8).unwrap();
        assert!(construction_one(8, 3, 2, &t).is_ok());
        assert!(matches!(
            construction_one(8, 4, 2, &t),
            Err(Error::RankMismatch { .. })
        ));
        assert!(construction_one(4, 3, 2, &triangle(4).unwrap()).is_err());
        let bad = SetFamily::from_lists(8, &[[1, 2], [3, 4]]).unwrap();
        assert_eq!(construction_one(8, 3, 2, &bad), Err(Error::NotIntersecting));
        let point = SetFamily::from_lists(7, &[[1]]).unwrap();
        assert_eq!(
            construction_one(7, 3, 3, &point).unwrap(),
            star_family(7, 3).unwrap()
        );
    }

    #[test]
    fn section4_extras_meet_everything() {
        let f = section4_family(10).unwrap();
        assert!(is_intersecting(&f).unwrap());
        assert_eq!(f.rank(), Some(4));
        assert!(section4_family(9).is_err());
    }
}
