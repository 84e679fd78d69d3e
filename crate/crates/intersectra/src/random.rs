//! Seeded random families for property sweeps.

use intersectra_core::combin::Subsets;
use intersectra_core::{SetFamily, VSet};
use rand::seq::SliceRandom;
use rand::Rng;

/// A random intersecting family of `r`-sets.
///
/// Shuffles `[n]^(r)` and greedily keeps sets meeting everything kept so
/// far, stopping at a random target size so the result is usually not
/// maximal yet.
pub fn random_intersecting_family<R: Rng + ?Sized>(n: u32, r: u32, rng: &mut R) -> SetFamily {
    let mut pool: Vec<VSet> = Subsets::new(n, r).collect();
    pool.shuffle(rng);
    let target = rng.gen_range(1..=pool.len().max(1));
    let mut kept: Vec<VSet> = Vec::new();
    for s in pool {
        if kept.len() >= target {
            break;
        }
        if kept.iter().all(|m| m.meets(&s)) {
            kept.push(s);
        }
    }
    SetFamily::uniform(n, r, kept).expect("r-subsets of [n]")
}

/// A random family of arbitrary nonempty subsets of `[n]`.
pub fn random_family<R: Rng + ?Sized>(n: u32, max_members: usize, rng: &mut R) -> SetFamily {
    let count = rng.gen_range(1..=max_members);
    let members = (0..count).map(|_| loop {
        let s = VSet::new(n, (1..=n).filter(|_| rng.gen_bool(0.4))).expect("labels in range");
        if !s.is_empty() {
            break s;
        }
    });
    SetFamily::new(n, members.collect::<Vec<_>>()).expect("subsets of [n]")
}

/// A random superfamily of `family` over the same ground set.
pub fn random_superfamily<R: Rng + ?Sized>(
    family: &SetFamily,
    extra: usize,
    rng: &mut R,
) -> SetFamily {
    let n = family.ground_size();
    let more = random_family(n, extra.max(1), rng);
    SetFamily::new(n, family.iter().chain(more.iter()).cloned()).expect("same ground set")
}
