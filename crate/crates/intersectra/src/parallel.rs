//! Runs the work units of a search plan on scoped threads.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use intersectra_core::search::{SearchConfig, SearchPlan, SearchResult, UnitOutcome};
use intersectra_core::Result;

/// `β(n, r, k)` on `config.parallel_width` threads.
///
/// Every unit is solved against the floor fixed by the frontier phase and
/// outcomes merge commutatively, so the result does not depend on the
/// worker count or on scheduling.
pub fn beta_search_parallel(n: u32, r: u32, k: u32, config: &SearchConfig) -> Result<SearchResult> {
    let start = Instant::now();
    let plan = SearchPlan::beta(n, r, k, config)?;
    let outcomes = run_units(&plan, config.parallel_width);
    let mut res = plan.finish(outcomes)?;
    res.elapsed = Some(start.elapsed());
    Ok(res)
}

fn run_units(plan: &SearchPlan, width: usize) -> Vec<UnitOutcome> {
    let floor = plan.floor();
    let units = plan.units();
    let width = width.clamp(1, units.len().max(1));
    if width == 1 {
        return units.iter().map(|u| plan.solve(u, floor)).collect();
    }
    let next = AtomicUsize::new(0);
    let outcomes = Mutex::new(Vec::with_capacity(units.len()));
    std::thread::scope(|scope| {
        for _ in 0..width {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(unit) = units.get(i) else { break };
                let o = plan.solve(unit, floor);
                outcomes.lock().expect("worker panicked").push(o);
            });
        }
    });
    outcomes.into_inner().expect("worker panicked")
}

#[cfg(test)]
mod tests {
    use super::*;
    use intersectra_core::search::{beta_search, Symmetry};

    #[test]
    fn width_does_not_change_the_result() {
        for symmetry in [Symmetry::On, Symmetry::Off] {
            let cfg = SearchConfig::default().with_symmetry(symmetry);
            let serial = beta_search(7, 3, 2, &cfg).unwrap();
            for width in [1, 2, 4] {
                let res = beta_search_parallel(7, 3, 2, &cfg.clone().with_width(width)).unwrap();
                assert_eq!(res.value, serial.value);
                assert_eq!(res.witness, serial.witness);
                assert_eq!(res.optimal, serial.optimal);
                assert_eq!(res.nodes_expanded, serial.nodes_expanded);
            }
        }
    }
}
