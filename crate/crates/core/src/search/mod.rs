//! Exact maximization of `|A<k>|` over intersecting families of `r`-sets.
//!
//! Since `F ⊆ F'` implies `F<k> ⊆ F'<k>`, the maximum is attained by a
//! maximal family, so the search walks only maximal intersecting families:
//! include/exclude branching on the colex-least undecided `r`-set, pruned by
//! the bound `|(included ∪ candidates)<k>|`. With symmetry breaking on, `[r]`
//! is forced into the family and isomorphic subtrees near the root are
//! skipped using canonical node keys.
//!
//! A search is organised as a [`SearchPlan`]: a deterministic frontier
//! phase followed by independent [`WorkUnit`]s whose outcomes merge
//! commutatively, so callers can run the units on any number of threads.

pub mod canon;
mod engine;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};
use core::time::Duration;

pub use canon::{canonical_form, CanonicalForm, CANONICALIZATION_LIMIT};
pub use engine::{Node as WorkUnit, MAX_UNIVERSE};

use crate::combin::binomial;
use crate::constructions::{alpha3_family, star_family, triangle, up_closure};
use crate::error::{param, Error, Result};
use crate::family::SetFamily;
use crate::structure::{is_intersecting, k_intersections, maximalize};
use engine::{Budget, Dedup, Explorer, IndexSet, LeafSink, Universe};

/// Default node budget (the `INTERSECTRA_BUDGET` default).
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Work-unit split depth when symmetry dedup is shallower.
const MIN_SPLIT_DEPTH: u32 = 6;
/// Cap on `n! · C(n,r) · 2^depth` spent on canonical node keys.
const DEDUP_WORK: u64 = 1 << 28;
const MAX_DEDUP_DEPTH: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Symmetry {
    #[default]
    On,
    Off,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum expanded nodes; 0 means unlimited.
    pub node_budget: u64,
    pub symmetry: Symmetry,
    /// Requested worker count. Advisory: the core search is serial, the std
    /// driver honours it.
    pub parallel_width: usize,
    pub report_all_optima: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            symmetry: Symmetry::On,
            parallel_width: 1,
            report_all_optima: false,
        }
    }
}

impl SearchConfig {
    pub fn with_symmetry(mut self, symmetry: Symmetry) -> Self {
        self.symmetry = symmetry;
        self
    }

    pub fn with_budget(mut self, node_budget: u64) -> Self {
        self.node_budget = node_budget;
        self
    }

    pub fn with_all_optima(mut self, all: bool) -> Self {
        self.report_all_optima = all;
        self
    }

    pub fn with_width(mut self, width: usize) -> Self {
        self.parallel_width = width.max(1);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchParams {
    pub n: u32,
    pub r: u32,
    pub k: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub params: SearchParams,
    /// Largest `|F<k>|` found.
    pub value: u64,
    /// The least optimal family in canonical encoding order.
    pub witness: SetFamily,
    /// True iff the search ran to exhaustion within the budget.
    pub optimal: bool,
    pub nodes_expanded: u64,
    /// Wall time, filled in by callers that have a clock.
    pub elapsed: Option<Duration>,
    /// All optimal classes when `report_all_optima` is set.
    pub classes: Vec<SetFamily>,
}

fn validate(n: u32, r: u32, config: &SearchConfig) -> Result<()> {
    if r == 0 || r > n {
        return Err(param("r", r, "must satisfy 1 <= r <= n"));
    }
    if n > 64 {
        return Err(Error::SearchLimit {
            reason: "ground sets above 64 points are not searchable",
        });
    }
    if binomial(n as u64, r as u64).is_none_or(|c| c > MAX_UNIVERSE as u64) {
        return Err(Error::SearchLimit {
            reason: "C(n, r) exceeds 128 candidate sets",
        });
    }
    if config.symmetry == Symmetry::On && n > CANONICALIZATION_LIMIT {
        return Err(Error::CanonicalizationLimit {
            n,
            limit: CANONICALIZATION_LIMIT,
        });
    }
    Ok(())
}

fn dedup_depth(n: u32, universe: usize) -> u32 {
    let factorial: u64 = (1..=n as u64).product();
    let cost = factorial.saturating_mul(universe as u64).max(1);
    let mut depth = 0;
    while depth < MAX_DEDUP_DEPTH && cost.saturating_mul(1 << (depth + 1)) <= DEDUP_WORK {
        depth += 1;
    }
    depth.min(universe as u32)
}

/// Maps a family to the key used for tie-breaking: the canonical form when
/// `n` permits it, the colex-sorted masks otherwise.
#[derive(Debug, Clone, Copy)]
struct Encoder {
    n: u32,
}

impl Encoder {
    fn canonical(&self) -> bool {
        self.n <= CANONICALIZATION_LIMIT
    }

    fn encode(&self, mut masks: Vec<u64>) -> Vec<u64> {
        if self.canonical() {
            canon::least_relabeling(self.n, &[&masks])
                .pop()
                .expect("one group")
        } else {
            masks.sort_unstable();
            masks
        }
    }

    /// `encode(masks)` if it is strictly below `bound`, an earlier encoding.
    fn encode_below(&self, mut masks: Vec<u64>, bound: &[u64]) -> Option<Vec<u64>> {
        if self.canonical() {
            canon::least_relabeling_below(self.n, &masks, bound)
        } else {
            masks.sort_unstable();
            (masks.as_slice() < bound).then_some(masks)
        }
    }
}

/// Best value seen with its optimal families (or just the least one).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Incumbent {
    value: Option<u64>,
    encodings: BTreeSet<Vec<u64>>,
    keep_all: bool,
}

impl Incumbent {
    fn new(keep_all: bool) -> Self {
        Incumbent {
            value: None,
            encodings: BTreeSet::new(),
            keep_all,
        }
    }

    pub fn value(&self) -> Option<u64> {
        self.value
    }

    fn admits(&self, value: u64) -> bool {
        self.value.is_none_or(|b| value >= b)
    }

    /// The kept encoding when only the least is kept and `value` ties it.
    fn single_at(&self, value: u64) -> Option<&[u64]> {
        if self.keep_all || self.value != Some(value) {
            return None;
        }
        self.encodings.first().map(Vec::as_slice)
    }

    fn offer(&mut self, value: u64, encoding: Vec<u64>) {
        match self.value {
            Some(b) if value < b => return,
            Some(b) if value == b => {}
            _ => {
                self.value = Some(value);
                self.encodings.clear();
            }
        }
        self.encodings.insert(encoding);
        if !self.keep_all {
            while self.encodings.len() > 1 {
                self.encodings.pop_last();
            }
        }
    }

    /// Commutative, associative merge.
    fn merge(&mut self, other: Incumbent) {
        if let Some(v) = other.value {
            for e in other.encodings {
                self.offer(v, e);
            }
        }
    }
}

struct BestSink {
    incumbent: Incumbent,
    floor: Option<u64>,
    encoder: Encoder,
}

impl LeafSink for BestSink {
    fn floor(&self) -> Option<u64> {
        self.floor.max(self.incumbent.value)
    }

    fn leaf(&mut self, universe: &Universe, family: IndexSet, value: u64) {
        if self.floor.is_some_and(|f| value < f) || !self.incumbent.admits(value) {
            return;
        }
        let masks = universe.masks(family);
        let encoding = match self.incumbent.single_at(value) {
            Some(bound) => match self.encoder.encode_below(masks, bound) {
                Some(e) => e,
                None => return,
            },
            None => self.encoder.encode(masks),
        };
        self.incumbent.offer(value, encoding);
    }
}

/// Outcome of one work unit.
#[derive(Debug, Clone)]
pub struct UnitOutcome {
    incumbent: Incumbent,
    complete: bool,
}

impl UnitOutcome {
    pub fn value(&self) -> Option<u64> {
        self.incumbent.value
    }

    pub fn complete(&self) -> bool {
        self.complete
    }
}

/// A prepared `β(n, r, k)` search: frontier explored, work units pending.
pub struct SearchPlan {
    universe: Universe,
    params: SearchParams,
    config: SearchConfig,
    encoder: Encoder,
    frontier: Incumbent,
    frontier_complete: bool,
    units: Vec<WorkUnit>,
    nodes: AtomicU64,
}

impl SearchPlan {
    pub fn beta(n: u32, r: u32, k: u32, config: &SearchConfig) -> Result<Self> {
        validate(n, r, config)?;
        if k == 0 || k > r {
            return Err(param("k", k, "must satisfy 1 <= k <= r"));
        }
        let universe = Universe::new(n, r);
        let encoder = Encoder { n };
        let mut incumbent = Incumbent::new(config.report_all_optima);
        let mut scratch = Vec::new();
        for seed in seed_families(n, r)? {
            let masks = seed.masks().expect("n <= 64");
            let value = universe.count_k(universe.family_index(&masks), k, &mut scratch);
            if incumbent.admits(value) {
                incumbent.offer(value, encoder.encode(masks));
            }
        }

        let symmetric = config.symmetry == Symmetry::On;
        let nodes = AtomicU64::new(0);
        let root = universe.root(symmetric);
        let dedup = symmetric.then(|| dedup_depth(n, universe.sets.len()));
        let split = dedup.unwrap_or(0).max(MIN_SPLIT_DEPTH).max(root.depth);
        let (frontier, frontier_complete, units) = {
            let sink = BestSink {
                floor: incumbent.value,
                incumbent,
                encoder,
            };
            let budget = Budget {
                limit: config.node_budget,
                used: &nodes,
            };
            let mut ex = Explorer::new(&universe, Some(k), budget, sink);
            ex.dedup = dedup.map(Dedup::new);
            ex.split_depth = Some(split);
            let complete = ex.explore(root).is_ok();
            (ex.sink.incumbent, complete, ex.units)
        };
        Ok(SearchPlan {
            universe,
            params: SearchParams { n, r, k },
            config: config.clone(),
            encoder,
            frontier,
            frontier_complete,
            units,
            nodes,
        })
    }

    pub fn params(&self) -> SearchParams {
        self.params
    }

    pub fn units(&self) -> &[WorkUnit] {
        &self.units
    }

    /// Best value known after the frontier phase.
    pub fn floor(&self) -> u64 {
        self.frontier.value.unwrap_or(0)
    }

    pub fn nodes_expanded(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    /// Explores one unit, discarding subtrees that cannot reach `floor`.
    pub fn solve(&self, unit: &WorkUnit, floor: u64) -> UnitOutcome {
        let sink = BestSink {
            incumbent: Incumbent::new(self.config.report_all_optima),
            floor: Some(floor),
            encoder: self.encoder,
        };
        let budget = Budget {
            limit: self.config.node_budget,
            used: &self.nodes,
        };
        let mut ex = Explorer::new(&self.universe, Some(self.params.k), budget, sink);
        let complete = ex.explore(*unit).is_ok();
        UnitOutcome {
            incumbent: ex.sink.incumbent,
            complete,
        }
    }

    /// Merges unit outcomes (in any order) and verifies the witness.
    pub fn finish<I: IntoIterator<Item = UnitOutcome>>(self, outcomes: I) -> Result<SearchResult> {
        let mut best = self.frontier;
        let mut complete = self.frontier_complete;
        let mut solved = 0;
        for o in outcomes {
            complete &= o.complete;
            solved += 1;
            best.merge(o.incumbent);
        }
        complete &= solved == self.units.len();
        let SearchParams { n, r, k } = self.params;
        let value = best
            .value
            .ok_or(Error::WitnessRejected("no family found"))?;
        let families = best
            .encodings
            .iter()
            .map(|e| {
                let f = SetFamily::from_masks(n, e.iter().copied())?.with_rank(r)?;
                verify_witness(&f, k, value)?;
                Ok(f)
            })
            .collect::<Result<Vec<_>>>()?;
        let witness = families
            .first()
            .cloned()
            .ok_or(Error::WitnessRejected("no family found"))?;
        Ok(SearchResult {
            params: self.params,
            value,
            witness,
            optimal: complete,
            nodes_expanded: self.nodes.load(Ordering::Relaxed),
            elapsed: None,
            classes: if self.config.report_all_optima {
                families
            } else {
                Vec::new()
            },
        })
    }
}

fn seed_families(n: u32, r: u32) -> Result<Vec<SetFamily>> {
    let mut seeds = alloc::vec![
        maximalize(&SetFamily::empty(n), n, r)?,
        maximalize(&star_family(n, r)?, n, r)?,
    ];
    if r >= 2 && n >= 3 {
        seeds.push(maximalize(&up_closure(&triangle(n)?, r)?, n, r)?);
    }
    if r >= 3 && n >= 7 {
        seeds.push(maximalize(&up_closure(&alpha3_family(n)?, r)?, n, r)?);
    }
    Ok(seeds)
}

fn verify_witness(f: &SetFamily, k: u32, value: u64) -> Result<()> {
    if !is_intersecting(f)? {
        return Err(Error::WitnessRejected("witness is not intersecting"));
    }
    if k_intersections(f, k as usize)?.len() as u64 != value {
        return Err(Error::WitnessRejected("k-intersection recount disagrees"));
    }
    Ok(())
}

/// `β(n, r, k)`: exact when the result is flagged optimal.
///
/// Units are solved one after another against the frontier floor, exactly
/// as a parallel driver would, so node counts of complete runs do not
/// depend on how the units are scheduled.
pub fn beta_search(n: u32, r: u32, k: u32, config: &SearchConfig) -> Result<SearchResult> {
    let plan = SearchPlan::beta(n, r, k, config)?;
    let floor = plan.floor();
    let outcomes: Vec<_> = plan.units().iter().map(|u| plan.solve(u, floor)).collect();
    plan.finish(outcomes)
}

/// `β(n, r, 1)` at a fixed ground size. `α^(r)` is the maximum of this over
/// all `n`, so the value is a lower bound on `α^(r)` that becomes exact once
/// `n` is large enough.
pub fn alpha_search(r: u32, n: u32, config: &SearchConfig) -> Result<SearchResult> {
    beta_search(n, r, 1, config)
}

struct EnumSink<F> {
    symmetric: bool,
    encoder: Encoder,
    seen: BTreeSet<Vec<u64>>,
    emit: F,
    emitted: usize,
}

impl<F: FnMut(SetFamily)> LeafSink for EnumSink<F> {
    fn floor(&self) -> Option<u64> {
        None
    }

    fn leaf(&mut self, universe: &Universe, family: IndexSet, _: u64) {
        let masks = universe.masks(family);
        let masks = if self.symmetric {
            let e = self.encoder.encode(masks);
            if !self.seen.insert(e.clone()) {
                return;
            }
            e
        } else {
            masks
        };
        let f = SetFamily::from_masks(universe.n, masks)
            .and_then(|f| f.with_rank(universe.r))
            .expect("engine leaves are r-uniform over [n]");
        self.emitted += 1;
        (self.emit)(f);
    }
}

/// Summary of a maximal-family enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationStats {
    pub emitted: usize,
    pub complete: bool,
    pub nodes_expanded: u64,
}

/// Streams every maximal intersecting family of `[n]^(r)`, or one canonical
/// representative per isomorphism class with symmetry on.
pub fn for_each_maximal_family<F: FnMut(SetFamily)>(
    n: u32,
    r: u32,
    config: &SearchConfig,
    emit: F,
) -> Result<EnumerationStats> {
    validate(n, r, config)?;
    let universe = Universe::new(n, r);
    let symmetric = config.symmetry == Symmetry::On;
    let nodes = AtomicU64::new(0);
    let sink = EnumSink {
        symmetric,
        encoder: Encoder { n },
        seen: BTreeSet::new(),
        emit,
        emitted: 0,
    };
    let budget = Budget {
        limit: config.node_budget,
        used: &nodes,
    };
    let mut ex = Explorer::new(&universe, None, budget, sink);
    ex.dedup = symmetric.then(|| Dedup::new(dedup_depth(n, universe.sets.len())));
    let complete = ex.explore(universe.root(symmetric)).is_ok();
    Ok(EnumerationStats {
        emitted: ex.sink.emitted,
        complete,
        nodes_expanded: nodes.load(Ordering::Relaxed),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub families: Vec<SetFamily>,
    pub complete: bool,
    pub nodes_expanded: u64,
}

pub fn enumerate_maximal_families(n: u32, r: u32, config: &SearchConfig) -> Result<Enumeration> {
    let mut families = Vec::new();
    let stats = for_each_maximal_family(n, r, config, |f| families.push(f))?;
    Ok(Enumeration {
        families,
        complete: stats.complete,
        nodes_expanded: stats.nodes_expanded,
    })
}

/// Exhaustive check of the Erdős–Ko–Rado bound `|A| <= C(n-1, r-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EkrReport {
    pub n: u32,
    pub r: u32,
    pub bound: u64,
    pub max_size: u64,
    /// Families inspected (classes with symmetry on).
    pub families_checked: usize,
    /// Isomorphism classes of size exactly `bound`.
    pub attaining_classes: usize,
    pub complete: bool,
}

impl EkrReport {
    /// The bound holds and is attained, and the enumeration was exhaustive.
    pub fn holds(&self) -> bool {
        self.complete && self.max_size == self.bound
    }
}

pub fn ekr_check(n: u32, r: u32, config: &SearchConfig) -> Result<EkrReport> {
    if r == 0 || n < 2 * r {
        return Err(param("n", n, "the bound needs n >= 2r"));
    }
    let bound = binomial(n as u64 - 1, r as u64 - 1).ok_or(Error::Overflow("C(n-1,r-1)"))?;
    let encoder = Encoder { n };
    let mut max_size = 0u64;
    let mut checked = 0usize;
    let mut attaining = BTreeSet::new();
    let stats = for_each_maximal_family(n, r, config, |f| {
        checked += 1;
        let size = f.len() as u64;
        max_size = max_size.max(size);
        if size == bound {
            attaining.insert(encoder.encode(f.masks().expect("n <= 64")));
        }
    })?;
    Ok(EkrReport {
        n,
        r,
        bound,
        max_size,
        families_checked: checked,
        attaining_classes: attaining.len(),
        complete: stats.complete,
    })
}
