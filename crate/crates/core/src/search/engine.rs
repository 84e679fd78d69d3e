//! Include/exclude branch and bound over the `r`-sets of `[n]`.
//!
//! Every node fixes a clique `included` of pairwise-meeting `r`-sets, the
//! still undecided `candidates` (each meets all of `included`) and the
//! `excluded` sets that meet all of `included` but were rejected. A leaf is
//! reached when no candidate remains; pruning guarantees `excluded` is empty
//! there, so every leaf is a maximal intersecting family. Sets are indexed
//! by colex rank and families are `u128` masks over those indices.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use crate::combin::{colex_rank, subset_masks};

pub(crate) type IndexSet = u128;

/// Largest `C(n, r)` the engine accepts.
pub const MAX_UNIVERSE: usize = 128;

/// Members of `set` with index greater than `i`.
#[inline]
fn above(set: IndexSet, i: usize) -> IndexSet {
    set & (u128::MAX << i << 1)
}

#[inline]
pub(crate) fn indices(mut set: IndexSet) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if set == 0 {
            return None;
        }
        let i = set.trailing_zeros() as usize;
        set &= set - 1;
        Some(i)
    })
}

/// The `r`-sets of `[n]` with their meeting relation.
pub(crate) struct Universe {
    pub n: u32,
    pub r: u32,
    pub sets: Vec<u64>,
    meets: Vec<IndexSet>,
    pub full: IndexSet,
}

impl Universe {
    pub fn new(n: u32, r: u32) -> Self {
        let sets = subset_masks(n, r);
        debug_assert!(sets.len() <= MAX_UNIVERSE);
        let meets = sets
            .iter()
            .map(|&a| {
                sets.iter()
                    .enumerate()
                    .filter(|(_, &b)| a & b != 0)
                    .fold(0u128, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        let full = if sets.len() == 128 {
            u128::MAX
        } else {
            (1u128 << sets.len()) - 1
        };
        Universe {
            n,
            r,
            sets,
            meets,
            full,
        }
    }

    pub fn index_of(&self, mask: u64) -> usize {
        colex_rank(mask) as usize
    }

    pub fn family_index(&self, masks: &[u64]) -> IndexSet {
        masks
            .iter()
            .fold(0u128, |acc, &m| acc | 1 << self.index_of(m))
    }

    pub fn masks(&self, family: IndexSet) -> Vec<u64> {
        indices(family).map(|i| self.sets[i]).collect()
    }

    /// The root node; with symmetry breaking the colex-least set `[r]` is
    /// forced in, since every nonempty family has a relabeling containing it.
    pub fn root(&self, break_symmetry: bool) -> Node {
        if break_symmetry && !self.sets.is_empty() {
            Node {
                depth: 1,
                included: 1,
                candidates: self.meets[0] & !1,
                excluded: 0,
            }
        } else {
            Node {
                depth: 0,
                included: 0,
                candidates: self.full,
                excluded: 0,
            }
        }
    }

    /// `|F<k>|` for the family `F` given as an index mask.
    pub fn count_k(&self, family: IndexSet, k: u32, scratch: &mut Vec<u64>) -> u64 {
        if k == self.r {
            return family.count_ones() as u64;
        }
        if k == 1 {
            let mut seen = 0u64;
            for i in indices(family) {
                let a = self.sets[i];
                for j in indices(above(family, i)) {
                    let c = a & self.sets[j];
                    if c.count_ones() == 1 {
                        seen |= c;
                    }
                }
            }
            return seen.count_ones() as u64;
        }
        scratch.clear();
        for i in indices(family) {
            let a = self.sets[i];
            for j in indices(above(family, i)) {
                let c = a & self.sets[j];
                if c.count_ones() == k {
                    scratch.push(c);
                }
            }
        }
        scratch.sort_unstable();
        scratch.dedup();
        scratch.len() as u64
    }

    pub fn is_feasible(&self, node: &Node) -> bool {
        // An excluded set that no candidate is disjoint from can never be
        // blocked, so no leaf below is maximal.
        indices(node.excluded).all(|x| !self.meets[x] & node.candidates != 0)
    }

    pub fn children(&self, node: &Node) -> (Node, Node) {
        let v = node.candidates.trailing_zeros() as usize;
        let bit = 1u128 << v;
        let with = Node {
            depth: node.depth + 1,
            included: node.included | bit,
            candidates: node.candidates & self.meets[v] & !bit,
            excluded: node.excluded & self.meets[v],
        };
        let without = Node {
            depth: node.depth + 1,
            included: node.included,
            candidates: node.candidates & !bit,
            excluded: node.excluded | bit,
        };
        (with, without)
    }
}

/// A search-tree node; also the unit of parallel work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Node {
    pub(crate) depth: u32,
    pub(crate) included: IndexSet,
    pub(crate) candidates: IndexSet,
    pub(crate) excluded: IndexSet,
}

impl Node {
    pub fn depth(&self) -> u32 {
        self.depth
    }
}

/// Shared node counter with an optional limit (0 = unlimited).
pub(crate) struct Budget<'a> {
    pub limit: u64,
    pub used: &'a AtomicU64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Exhausted;

impl Budget<'_> {
    #[inline]
    fn tick(&self) -> Result<(), Exhausted> {
        if self.limit == 0 {
            self.used.fetch_add(1, Ordering::Relaxed);
            return Ok(());
        }
        self.used
            .fetch_update(Ordering::Relaxed, Ordering::Relaxed, |u| {
                (u < self.limit).then_some(u + 1)
            })
            .map(drop)
            .map_err(|_| Exhausted)
    }
}

/// Receives the maximal families reached by the search.
pub(crate) trait LeafSink {
    /// Subtrees whose bound is strictly below this value are discarded.
    fn floor(&self) -> Option<u64>;
    fn leaf(&mut self, universe: &Universe, family: IndexSet, value: u64);
}

/// Subtree deduplication by canonical node key.
pub(crate) struct Dedup {
    pub max_depth: u32,
    seen: BTreeSet<Vec<Vec<u64>>>,
    pub skipped: u64,
}

impl Dedup {
    pub fn new(max_depth: u32) -> Self {
        Dedup {
            max_depth,
            seen: BTreeSet::new(),
            skipped: 0,
        }
    }

    fn first_visit(&mut self, universe: &Universe, node: &Node) -> bool {
        let groups = [
            universe.masks(node.included),
            universe.masks(node.candidates),
            universe.masks(node.excluded),
        ];
        let refs: [&[u64]; 3] = [&groups[0], &groups[1], &groups[2]];
        let key = super::canon::least_relabeling(universe.n, &refs);
        let fresh = self.seen.insert(key);
        if !fresh {
            self.skipped += 1;
        }
        fresh
    }
}

pub(crate) struct Explorer<'a, S: LeafSink> {
    pub universe: &'a Universe,
    pub objective: Option<u32>,
    pub budget: Budget<'a>,
    pub sink: S,
    pub dedup: Option<Dedup>,
    /// Nodes at this depth are handed back as work units instead of explored.
    pub split_depth: Option<u32>,
    pub units: Vec<Node>,
    scratch: Vec<u64>,
}

impl<'a, S: LeafSink> Explorer<'a, S> {
    pub fn new(
        universe: &'a Universe,
        objective: Option<u32>,
        budget: Budget<'a>,
        sink: S,
    ) -> Self {
        Explorer {
            universe,
            objective,
            budget,
            sink,
            dedup: None,
            split_depth: None,
            units: Vec::new(),
            scratch: Vec::new(),
        }
    }

    fn value(&mut self, family: IndexSet) -> u64 {
        match self.objective {
            Some(k) => self.universe.count_k(family, k, &mut self.scratch),
            None => 0,
        }
    }

    /// Explores the subtree at `node`; returns the best leaf value found
    /// below it (`None` when every leaf was pruned or deferred).
    pub fn explore(&mut self, node: Node) -> Result<Option<u64>, Exhausted> {
        self.budget.tick()?;
        if !self.universe.is_feasible(&node) {
            return Ok(None);
        }
        if node.candidates == 0 {
            let v = self.value(node.included);
            self.sink.leaf(self.universe, node.included, v);
            return Ok(Some(v));
        }
        if let Some(d) = self.dedup.as_mut() {
            if node.depth <= d.max_depth && !d.first_visit(self.universe, &node) {
                return Ok(None);
            }
        }
        let bound = match self.objective {
            Some(_) => {
                let ub = self.value(node.included | node.candidates);
                if self.sink.floor().is_some_and(|f| ub < f) {
                    return Ok(None);
                }
                Some(ub)
            }
            None => None,
        };
        if self.split_depth == Some(node.depth) {
            self.units.push(node);
            return Ok(None);
        }
        let (with, without) = self.universe.children(&node);
        let a = self.explore(with)?;
        let b = self.explore(without)?;
        let best = a.max(b);
        if let (Some(ub), Some(best)) = (bound, best) {
            debug_assert!(ub >= best, "inadmissible bound {ub} < {best}");
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Collect(Vec<IndexSet>);

    impl LeafSink for Collect {
        fn floor(&self) -> Option<u64> {
            None
        }
        fn leaf(&mut self, _: &Universe, family: IndexSet, _: u64) {
            self.0.push(family);
        }
    }

    fn leaves(n: u32, r: u32) -> Vec<Vec<u64>> {
        let u = Universe::new(n, r);
        let used = AtomicU64::new(0);
        let mut ex = Explorer::new(
            &u,
            None,
            Budget {
                limit: 0,
                used: &used,
            },
            Collect(Vec::new()),
        );
        ex.explore(u.root(false)).unwrap();
        ex.sink.0.iter().map(|&f| u.masks(f)).collect()
    }

    #[test]
    fn four_two_has_stars_and_triangles() {
        // 4 stars and 4 triangles on [4].
        let all = leaves(4, 2);
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|f| f.len() == 3));
    }

    #[test]
    fn three_two_is_a_single_triangle() {
        assert_eq!(leaves(3, 2), [[0b011, 0b101, 0b110]]);
    }

    #[test]
    fn count_k_matches_direct_count() {
        let u = Universe::new(6, 3);
        let fam = u.family_index(&[0b000111, 0b011001, 0b101010, 0b110100]);
        let mut scratch = Vec::new();
        assert_eq!(u.count_k(fam, 1, &mut scratch), 6);
        assert_eq!(u.count_k(fam, 2, &mut scratch), 0);
        assert_eq!(u.count_k(fam, 3, &mut scratch), 4);
        let pair = u.family_index(&[0b000111, 0b001011]);
        assert_eq!(u.count_k(pair, 2, &mut scratch), 1);
    }

    #[test]
    fn budget_stops_exploration() {
        let u = Universe::new(5, 2);
        let used = AtomicU64::new(0);
        let mut ex = Explorer::new(
            &u,
            Some(1),
            Budget {
                limit: 3,
                used: &used,
            },
            Collect(Vec::new()),
        );
        assert_eq!(ex.explore(u.root(false)), Err(Exhausted));
    }
}
