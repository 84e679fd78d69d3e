//! Named verification suites with expected values and observed results.

use std::collections::BTreeSet;

use intersectra_core::combin::{binomial, Subsets};
use intersectra_core::constructions::{
    alpha3_family, alpha_bounds, construction_one, section4_family, triangle, tuza_bounds,
    tuza_family, KNOWN_ALPHA,
};
use intersectra_core::search::{alpha_search, beta_search, ekr_check, SearchConfig, Symmetry};
use intersectra_core::{
    hitting_count, intersection_structure, is_intersecting, k_intersections, maximalize,
    star_cover_violations, SetFamily, VSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::oracle;
use crate::random::{random_family, random_intersecting_family, random_superfamily};
use crate::report::{family_json, RunReport};

pub const SUITES: [&str; 10] = [
    "alpha-small",
    "alpha4",
    "tuza",
    "ekr",
    "beta-pairs",
    "construction1",
    "section4",
    "lemma1-random",
    "oracle",
    "hitting-bound",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub observed: Value,
    pub pass: bool,
    /// The result the expected value comes from.
    pub anchor: &'static str,
}

impl Check {
    fn new(
        name: impl Into<String>,
        anchor: &'static str,
        expected: Value,
        observed: Value,
    ) -> Self {
        let pass = expected == observed;
        Check {
            name: name.into(),
            expected,
            observed,
            pass,
            anchor,
        }
    }

    /// A check whose pass condition is not plain equality.
    fn holds(
        name: impl Into<String>,
        anchor: &'static str,
        expected: Value,
        observed: Value,
        pass: bool,
    ) -> Self {
        Check {
            name: name.into(),
            expected,
            observed,
            pass,
            anchor,
        }
    }

    fn failed(name: impl Into<String>, anchor: &'static str, err: impl ToString) -> Self {
        Check::holds(
            name,
            anchor,
            Value::Null,
            json!({ "error": err.to_string() }),
            false,
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "expected": self.expected,
            "observed": self.observed,
            "pass": self.pass,
            "anchor": self.anchor,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub anchor: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn to_run_report(&self) -> RunReport {
        let mut r = RunReport::new("verify").input("suite", self.suite.as_str());
        r.outputs = json!({ "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>() });
        r.anchor = Some(self.anchor.to_owned());
        r.pass = Some(self.pass());
        r
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown suite `{0}` (known: {known}, all)", known = SUITES.join(", "))]
pub struct UnknownSuite(pub String);

/// Runs one suite by name, or every suite for `all`.
pub fn run_suite(name: &str) -> Result<Vec<SuiteReport>, UnknownSuite> {
    if name == "all" {
        return Ok(SUITES
            .iter()
            .map(|s| run_one(s).expect("listed suite"))
            .collect());
    }
    run_one(name).map(|r| vec![r])
}

fn run_one(name: &str) -> Result<SuiteReport, UnknownSuite> {
    let (anchor, checks) = match name {
        "alpha-small" => (ALPHA_SMALL, alpha_small()),
        "alpha4" => (ALPHA4, alpha4()),
        "tuza" => (TUZA, tuza()),
        "ekr" => (EKR, ekr()),
        "beta-pairs" => (BETA_PAIRS, beta_pairs()),
        "construction1" => (UP_CLOSURE, construction1()),
        "section4" => (NON_UNIQUE, section4()),
        "lemma1-random" => (STAR_COVER, star_cover_random()),
        "oracle" => (ORACLE, oracle_suite()),
        "hitting-bound" => (HITTING, hitting_bound()),
        _ => return Err(UnknownSuite(name.to_owned())),
    };
    Ok(SuiteReport {
        suite: name.to_owned(),
        anchor,
        checks,
    })
}

const ALPHA_SMALL: &str = "alpha(1) = 1, alpha(2) = 3, alpha(3) = 7";
const ALPHA4: &str = "alpha(4) = 16 within Tuza's interval";
const TUZA: &str = "Tuza's lower bound alpha(r) >= 2C(2r-4,r-2) + 2r - 4";
const EKR: &str = "Erdos-Ko-Rado bound |A| <= C(n-1,r-1) for n >= 2r";
const BETA_PAIRS: &str = "beta(n,2,1) = alpha(2) = 3";
const UP_CLOSURE: &str =
    "up-closure of an extremal base realizes exactly the k-sets meeting [alpha]";
const NON_UNIQUE: &str = "non-uniqueness example for k = 2, r = 4: maximal extension has <1> = [8]";
const STAR_COVER: &str = "maximal families with n >= 2r: every pairwise intersection meets A<1>";
const ORACLE: &str = "search agrees with exhaustive enumeration; F <= F' implies F<k> <= F'<k>";
const HITTING: &str = "beta(n,r,k) >= C(n,k) - C(n-alpha(r-k+1),k)";

fn desk_config() -> SearchConfig {
    SearchConfig::default().with_budget(100_000_000)
}

fn search_check(
    name: String,
    anchor: &'static str,
    expected: u64,
    res: intersectra_core::Result<intersectra_core::search::SearchResult>,
) -> Check {
    match res {
        Ok(res) => Check::new(
            name,
            anchor,
            json!({ "value": expected, "optimal": true }),
            json!({ "value": res.value, "optimal": res.optimal }),
        ),
        Err(e) => Check::failed(name, anchor, e),
    }
}

fn singleton_count(f: &SetFamily) -> intersectra_core::Result<usize> {
    Ok(intersection_structure(f)?.count(1))
}

fn alpha_small() -> Vec<Check> {
    [(1, 3), (2, 5), (3, 7)]
        .into_iter()
        .map(|(r, n)| {
            search_check(
                format!("alpha_search(r={r}, n={n})"),
                ALPHA_SMALL,
                KNOWN_ALPHA[r as usize - 1],
                alpha_search(r, n, &desk_config()),
            )
        })
        .collect()
}

fn alpha4() -> Vec<Check> {
    let mut out = Vec::new();
    match tuza_family(4) {
        Ok(f) => {
            out.push(Check::new(
                "tuza_family(4) is intersecting",
                ALPHA4,
                json!(true),
                json!(is_intersecting(&f).unwrap_or(false)),
            ));
            out.push(Check::new(
                "tuza_family(4) is 4-uniform",
                ALPHA4,
                json!(4),
                json!(f.uniform_rank()),
            ));
            out.push(Check::new(
                "|tuza_family(4)<1>|",
                ALPHA4,
                json!(16),
                json!(singleton_count(&f).ok()),
            ));
        }
        Err(e) => out.push(Check::failed("tuza_family(4)", ALPHA4, e)),
    }
    out.push(Check::new(
        "alpha_bounds(4)",
        ALPHA4,
        json!([16, 39]),
        json!(alpha_bounds(4).ok()),
    ));
    out
}

/// `2C(2r-4,r-2) + 2r - 4`, computed independently of the library.
fn tuza_formula(r: u64) -> u64 {
    2 * binomial(2 * r - 4, r - 2).expect("small") + 2 * r - 4
}

fn tuza() -> Vec<Check> {
    let mut out = Vec::new();
    for r in 3..=7u32 {
        let observed = tuza_family(r).and_then(|f| singleton_count(&f));
        out.push(Check::new(
            format!("|tuza_family({r})<1>|"),
            TUZA,
            json!(tuza_formula(r as u64)),
            json!(observed.ok()),
        ));
    }
    for r in 4..=7u32 {
        out.push(Check::new(
            format!("tuza_bounds({r}).lower"),
            TUZA,
            json!(tuza_formula(r as u64)),
            json!(tuza_bounds(r).ok().map(|b| b.0)),
        ));
    }
    out
}

fn ekr() -> Vec<Check> {
    let mut out = Vec::new();
    for (n, r, bound, classes) in [(4, 2, 3, Some(2)), (5, 2, 4, Some(1)), (6, 3, 10, None)] {
        let name = format!("ekr_check({n},{r})");
        match ekr_check(n, r, &desk_config()) {
            Ok(rep) => {
                out.push(Check::new(
                    format!("{name} max size"),
                    EKR,
                    json!({ "max_size": bound, "bound": bound, "complete": true }),
                    json!({ "max_size": rep.max_size, "bound": rep.bound, "complete": rep.complete }),
                ));
                if let Some(c) = classes {
                    out.push(Check::new(
                        format!("{name} attaining classes"),
                        EKR,
                        json!(c),
                        json!(rep.attaining_classes),
                    ));
                }
            }
            Err(e) => out.push(Check::failed(name, EKR, e)),
        }
    }
    for (n, expected) in [(6, 10), (7, 15)] {
        out.push(search_check(
            format!("beta_search({n},3,3)"),
            EKR,
            expected,
            beta_search(n, 3, 3, &desk_config()),
        ));
    }
    out
}

fn beta_pairs() -> Vec<Check> {
    (4..=6)
        .map(|n| {
            search_check(
                format!("beta_search({n},2,1)"),
                BETA_PAIRS,
                3,
                beta_search(n, 2, 1, &desk_config()),
            )
        })
        .collect()
}

fn to_mask(s: &VSet) -> u64 {
    s.as_mask().expect("n <= 64")
}

/// Checks `F<k> = {k-sets meeting [alpha]}` in both directions, with the
/// expected collection enumerated directly.
fn up_closure_checks(
    label: &str,
    anchor: &'static str,
    n: u32,
    k: u32,
    alpha: u32,
    family: &SetFamily,
    claimed: u64,
) -> Vec<Check> {
    let expected: BTreeSet<u64> = oracle::hitting_sets(n, k, (1u64 << alpha) - 1)
        .into_iter()
        .collect();
    let observed: BTreeSet<u64> = match k_intersections(family, k as usize) {
        Ok(v) => v.iter().map(to_mask).collect(),
        Err(e) => return vec![Check::failed(label, anchor, e)],
    };
    let missing = expected.difference(&observed).count();
    let extra = observed.difference(&expected).count();
    let hc = hitting_count(n as u64, k as u64, alpha as u64).map(|c| c.to_string());
    vec![
        Check::new(
            format!("{label}: brute-force count of {k}-sets meeting [{alpha}]"),
            anchor,
            json!(claimed),
            json!(expected.len()),
        ),
        Check::new(
            format!("{label}: hitting_count({n},{k},{alpha})"),
            anchor,
            json!(claimed.to_string()),
            json!(hc.ok()),
        ),
        Check::new(
            format!("{label}: every {k}-set meeting [{alpha}] is a {k}-intersection"),
            anchor,
            json!(0),
            json!(missing),
        ),
        Check::new(
            format!("{label}: every {k}-intersection meets [{alpha}]"),
            anchor,
            json!(0),
            json!(extra),
        ),
        Check::new(
            format!("{label}: |F<{k}>|"),
            anchor,
            json!(claimed),
            json!(observed.len()),
        ),
    ]
}

type BaseFn = fn(u32) -> intersectra_core::Result<SetFamily>;

fn construction1() -> Vec<Check> {
    let cases: [(u32, u32, u32, BaseFn, u32, u64); 3] = [
        (8, 3, 2, triangle, 3, 18),
        (12, 4, 2, alpha3_family, 7, 56),
        (10, 4, 3, triangle, 3, 85),
    ];
    let mut out = Vec::new();
    for (n, r, k, base, alpha, claimed) in cases {
        let label = format!("construction_one({n},{r},{k})");
        match base(n).and_then(|b| construction_one(n, r, k, &b)) {
            Ok(f) => {
                out.push(Check::new(
                    format!("{label}: intersecting"),
                    UP_CLOSURE,
                    json!(true),
                    json!(is_intersecting(&f).unwrap_or(false)),
                ));
                out.extend(up_closure_checks(
                    &label, UP_CLOSURE, n, k, alpha, &f, claimed,
                ));
            }
            Err(e) => out.push(Check::failed(label, UP_CLOSURE, e)),
        }
    }
    out
}

fn section4() -> Vec<Check> {
    let n = 10;
    let f = match section4_family(n) {
        Ok(f) => f,
        Err(e) => return vec![Check::failed("section4_family(10)", NON_UNIQUE, e)],
    };
    let mut out = vec![Check::new(
        "section4_family(10) is intersecting",
        NON_UNIQUE,
        json!(true),
        json!(is_intersecting(&f).unwrap_or(false)),
    )];
    out.extend(up_closure_checks(
        "section4_family(10)",
        NON_UNIQUE,
        n,
        2,
        7,
        &f,
        42,
    ));

    let eight = VSet::prefix(n, 8).expect("8 <= 10");
    let addable: Vec<VSet> = Subsets::new(n, 4)
        .filter(|s| !f.contains(s) && f.iter().all(|m| m.meets(s)))
        .collect();
    let outside = addable.iter().filter(|s| !s.is_subset(&eight)).count();
    out.push(Check::holds(
        "addable 4-sets lie inside [8]",
        NON_UNIQUE,
        json!({ "outside_[8]": 0 }),
        json!({ "outside_[8]": outside, "addable": addable.len() }),
        outside == 0 && !addable.is_empty(),
    ));

    match maximalize(&f, n, 4)
        .and_then(|m| Ok((intersection_structure(&m)?.singleton_support(n), m)))
    {
        Ok((support, m)) => {
            out.push(Check::new(
                "maximalize(section4_family(10))<1>",
                NON_UNIQUE,
                json!((1..=8).collect::<Vec<u32>>()),
                json!(support.iter().collect::<Vec<u32>>()),
            ));
            out.push(Check::new(
                "maximal extension keeps the star-cover property",
                STAR_COVER,
                json!(0),
                json!(star_cover_violations(&m).map(|v| v.len()).ok()),
            ));
        }
        Err(e) => out.push(Check::failed(
            "maximalize(section4_family(10))",
            NON_UNIQUE,
            e,
        )),
    }
    out
}

pub const STAR_COVER_PARAMS: [(u32, u32); 4] = [(6, 2), (7, 3), (9, 3), (9, 4)];
const STAR_COVER_SAMPLES: usize = 100;

fn star_cover_random() -> Vec<Check> {
    STAR_COVER_PARAMS
        .iter()
        .map(|&(n, r)| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + (n as u64) * 100 + r as u64);
            let mut violations = 0usize;
            let mut non_maximal = 0usize;
            let mut errors = 0usize;
            for _ in 0..STAR_COVER_SAMPLES {
                let seed = random_intersecting_family(n, r, &mut rng);
                match maximalize(&seed, n, r).and_then(|m| {
                    let maximal = intersectra_core::is_maximal(&m, n, r)?;
                    Ok((maximal, star_cover_violations(&m)?.len()))
                }) {
                    Ok((maximal, v)) => {
                        violations += v;
                        non_maximal += usize::from(!maximal);
                    }
                    Err(_) => errors += 1,
                }
            }
            Check::new(
                format!("{STAR_COVER_SAMPLES} random maximal families, n={n}, r={r}"),
                STAR_COVER,
                json!({ "violations": 0, "non_maximal": 0, "errors": 0 }),
                json!({ "violations": violations, "non_maximal": non_maximal, "errors": errors }),
            )
        })
        .collect()
}

/// Every `(n, r)` with `C(n, r) <= 12`. `C(n, n) = 1` for all `n`, so
/// `n` is capped at 12 as well.
pub fn oracle_range() -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for n in 1..=12u32 {
        for r in 1..=n {
            if binomial(n as u64, r as u64).is_some_and(|c| c <= 12) {
                out.push((n, r));
            }
        }
    }
    out
}

const MONOTONE_PAIRS: usize = 1000;

fn oracle_suite() -> Vec<Check> {
    let mut mismatches = Vec::new();
    let mut instances = 0usize;
    for (n, r) in oracle_range() {
        for k in 1..=r {
            instances += 1;
            let naive = oracle::naive_beta(n, r, k).expect("within oracle range") as u64;
            let off = SearchConfig::default()
                .with_symmetry(Symmetry::Off)
                .with_budget(0);
            let mut got = vec![beta_search(n, r, k, &off).map(|s| (s.value, s.optimal))];
            if n <= intersectra_core::search::CANONICALIZATION_LIMIT {
                let on = SearchConfig::default().with_budget(0);
                got.push(beta_search(n, r, k, &on).map(|s| (s.value, s.optimal)));
            }
            if got.iter().any(|g| g.as_ref().ok() != Some(&(naive, true))) {
                mismatches.push(json!({ "n": n, "r": r, "k": k, "naive": naive }));
            }
        }
    }
    let mut out = vec![Check::holds(
        format!("beta_search = naive oracle on {instances} instances with C(n,r) <= 12"),
        ORACLE,
        json!({ "mismatches": [] }),
        json!({ "mismatches": mismatches, "instances": instances }),
        mismatches.is_empty() && instances > 0,
    )];

    let mut rng = ChaCha8Rng::seed_from_u64(0x000e_1de4);
    let mut failures = 0usize;
    for _ in 0..MONOTONE_PAIRS {
        let n = rng.gen_range(3..=9);
        let f = random_family(n, 8, &mut rng);
        let g = random_superfamily(&f, 8, &mut rng);
        let monotone = (0..=n as usize).all(|k| {
            let small: BTreeSet<u64> = k_intersections(&f, k)
                .expect("k <= n")
                .iter()
                .map(to_mask)
                .collect();
            let large: BTreeSet<u64> = k_intersections(&g, k)
                .expect("k <= n")
                .iter()
                .map(to_mask)
                .collect();
            small.is_subset(&large)
        });
        failures += usize::from(!monotone || !f.is_subfamily_of(&g));
    }
    out.push(Check::new(
        format!("monotonicity on {MONOTONE_PAIRS} random nested pairs"),
        ORACLE,
        json!(0),
        json!(failures),
    ));
    out
}

fn hitting_bound() -> Vec<Check> {
    let (n, r, k) = (7u32, 3u32, 2u32);
    let alpha = KNOWN_ALPHA[(r - k) as usize] as u32;
    let target = hitting_count(n as u64, k as u64, alpha as u64)
        .ok()
        .and_then(|c| u64::try_from(c).ok())
        .unwrap_or(0);
    let mut out = Vec::new();
    match triangle(n).and_then(|b| construction_one(n, r, k, &b)) {
        Ok(w) => {
            let count = k_intersections(&w, k as usize).map(|v| v.len()).ok();
            out.push(Check::new(
                "up-closure witness for (7,3,2) is intersecting and 3-uniform",
                HITTING,
                json!({ "intersecting": true, "rank": r }),
                json!({ "intersecting": is_intersecting(&w).unwrap_or(false), "rank": w.uniform_rank() }),
            ));
            out.push(Check::new(
                "witness |F<2>| = hitting_count(7,2,3)",
                HITTING,
                json!(target),
                json!(count),
            ));
        }
        Err(e) => out.push(Check::failed("up-closure witness for (7,3,2)", HITTING, e)),
    }
    match beta_search(n, r, k, &desk_config()) {
        Ok(res) => {
            let equality = if res.value == target {
                "equal (empirical: n = 7 is far below the proven threshold)"
            } else {
                "strictly greater"
            };
            out.push(Check::holds(
                "beta_search(7,3,2) >= hitting_count(7,2,3)",
                HITTING,
                json!({ "at_least": target }),
                json!({
                    "value": res.value,
                    "optimal": res.optimal,
                    "relation": equality,
                    "witness": family_json(&res.witness),
                }),
                res.value >= target,
            ));
        }
        Err(e) => out.push(Check::failed("beta_search(7,3,2)", HITTING, e)),
    }
    out
}
