//! Intersection structures and the predicates built on them.
//!
//! For a family `A` the intersection structure is the set of all pairwise
//! intersections `A ∩ B` with `A, B ∈ A`, where `A = B` is allowed. Its
//! members of size `k` are the `k`-intersections `A<k>`.
//!
//! A uniform intersecting family of `r`-sets is *maximal* when every `r`-set
//! outside it (any set of `[n]^(r) \ A`) is disjoint from at least one member.

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::combin::{binomial_big, Subsets};
use crate::error::{param, Error, Result};
use crate::family::SetFamily;
use crate::vset::VSet;

/// `k ↦ A<k>` for every `0 <= k <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionStructure {
    by_size: Vec<Vec<VSet>>,
}

impl IntersectionStructure {
    /// The `k`-intersections in colex order; empty for `k > n`.
    pub fn by_size(&self, k: usize) -> &[VSet] {
        self.by_size.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: usize) -> usize {
        self.by_size(k).len()
    }

    /// Largest key stored (the ground size).
    pub fn max_size(&self) -> usize {
        self.by_size.len() - 1
    }

    /// Every member of `I(A)`.
    pub fn iter(&self) -> impl Iterator<Item = &VSet> {
        self.by_size.iter().flatten()
    }

    /// Union of the singletons in `A<1>`, viewed as a set of points.
    pub fn singleton_support(&self, n: u32) -> VSet {
        self.by_size(1)
            .iter()
            .fold(VSet::empty(n), |acc, s| acc.union(s))
    }
}

/// Computes `I(F)` bucketed by intersection size.
pub fn intersection_structure(family: &SetFamily) -> Result<IntersectionStructure> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let n = family.ground_size() as usize;
    let members = family.members();
    let mut by_size: Vec<Vec<VSet>> = (0..=n).map(|_| Vec::new()).collect();
    for (i, a) in members.iter().enumerate() {
        for b in &members[i..] {
            let c = a.intersection(b);
            by_size[c.len()].push(c);
        }
    }
    for bucket in &mut by_size {
        bucket.sort_unstable();
        bucket.dedup();
    }
    Ok(IntersectionStructure { by_size })
}

/// `F<k>` in lexicographic order.
pub fn k_intersections(family: &SetFamily, k: usize) -> Result<Vec<VSet>> {
    let n = family.ground_size();
    if k > n as usize {
        return Err(param("k", k as u64, "must satisfy 0 <= k <= n"));
    }
    if family.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = intersection_structure(family)?.by_size[k].clone();
    out.sort_by(VSet::lex_cmp);
    Ok(out)
}

pub(crate) fn pairwise_intersecting(members: &[VSet]) -> bool {
    members
        .iter()
        .enumerate()
        .all(|(i, a)| members[i + 1..].iter().all(|b| a.meets(b)))
}

/// Whether every two members meet. The empty set is disjoint from itself,
/// so a family containing it is never intersecting.
pub fn is_intersecting(family: &SetFamily) -> Result<bool> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    Ok(family.iter().all(|m| !m.is_empty()) && pairwise_intersecting(family.members()))
}

fn check_uniform(family: &SetFamily, n: u32, r: u32) -> Result<()> {
    if family.ground_size() != n {
        return Err(Error::GroundMismatch {
            expected: n,
            found: family.ground_size(),
        });
    }
    if r == 0 || r > n {
        return Err(param("r", r, "must satisfy 1 <= r <= n"));
    }
    if let Some(m) = family.iter().find(|m| m.len() != r as usize) {
        return Err(Error::RankMismatch {
            expected: r,
            found: m.len() as u32,
        });
    }
    if !pairwise_intersecting(family.members()) {
        return Err(Error::NotIntersecting);
    }
    Ok(())
}

/// Whether no `r`-set outside `F` meets every member of `F`.
pub fn is_maximal(family: &SetFamily, n: u32, r: u32) -> Result<bool> {
    check_uniform(family, n, r)?;
    Ok(Subsets::new(n, r)
        .filter(|s| !family.contains(s))
        .all(|s| family.iter().any(|m| m.is_disjoint(&s))))
}

/// Extends `F` to a maximal intersecting family of `r`-sets.
///
/// Candidates are scanned once in colex order; each is added iff it meets
/// every set already in the family. The empty family is accepted.
pub fn maximalize(family: &SetFamily, n: u32, r: u32) -> Result<SetFamily> {
    check_uniform(family, n, r)?;
    let mut current: Vec<VSet> = family.members().to_vec();
    for s in Subsets::new(n, r) {
        if current.iter().all(|m| m.meets(&s)) && !family.contains(&s) {
            current.push(s);
        }
    }
    SetFamily::uniform(n, r, current)
}

/// The link `F_D = {A \ D : D ⊊ A ∈ F}`.
pub fn link(family: &SetFamily, d: &VSet) -> Result<SetFamily> {
    if d.ground_size() != family.ground_size() {
        return Err(Error::GroundMismatch {
            expected: family.ground_size(),
            found: d.ground_size(),
        });
    }
    let residues = family
        .iter()
        .filter(|a| d.is_proper_subset(a))
        .map(|a| a.difference(d));
    let out = SetFamily::new(family.ground_size(), residues)?;
    match family.rank() {
        Some(r) if d.len() < r as usize => out.with_rank(r - d.len() as u32),
        _ => Ok(out),
    }
}

/// Identifies `a` and `b` with the fresh label `v`.
///
/// Every member containing `a` or `b` loses both and gains `v`. When `v > n`
/// the ground set grows to `[v]`. Members that coincide after the merge are
/// collapsed.
pub fn merge_vertices(family: &SetFamily, a: u32, b: u32, v: u32) -> Result<SetFamily> {
    let n = family.ground_size();
    if a == b {
        return Err(param("b", b, "merged labels must differ"));
    }
    if v == 0 {
        return Err(param("v", v, "labels are 1-based"));
    }
    if v <= n && family.iter().any(|m| m.contains(v)) {
        return Err(Error::MergeTargetNotFresh(v));
    }
    if v == a || v == b {
        return Err(Error::MergeTargetNotFresh(v));
    }
    let ground = n.max(v);
    let merged = family
        .iter()
        .map(|m| {
            let touched = m.contains(a) || m.contains(b);
            let stripped = m.without(a).without(b).extend_ground(ground)?;
            if touched {
                stripped.with(v)
            } else {
                Ok(stripped)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    SetFamily::new(ground, merged)
}

/// Merges `a` and `b` into the label `n + 1`; returns the merged family and
/// the new label.
pub fn merge_to_fresh(family: &SetFamily, a: u32, b: u32) -> Result<(SetFamily, u32)> {
    let v = family.ground_size() + 1;
    Ok((merge_vertices(family, a, b, v)?, v))
}

/// Unordered pairs of distinct members whose intersection avoids `F<1>`.
///
/// For a maximal intersecting family of `r`-sets with `n >= 2r` this list is
/// always empty.
pub fn star_cover_violations(family: &SetFamily) -> Result<Vec<(VSet, VSet)>> {
    if !is_intersecting(family)? {
        return Err(Error::NotIntersecting);
    }
    let n = family.ground_size();
    let singletons = intersection_structure(family)?.singleton_support(n);
    let members = family.members();
    let mut out = Vec::new();
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            if a.intersection(b).is_disjoint(&singletons) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}

/// Number of `k`-subsets of `[n]` meeting `[alpha]`: `C(n,k) - C(n-alpha,k)`.
pub fn hitting_count(n: u64, k: u64, alpha: u64) -> Result<BigUint> {
    if k > n {
        return Err(param("k", k, "must satisfy 0 <= k <= n"));
    }
    if alpha > n {
        return Err(param("alpha", alpha, "must satisfy 0 <= alpha <= n"));
    }
    Ok(binomial_big(n, k) - binomial_big(n - alpha, k))
}
