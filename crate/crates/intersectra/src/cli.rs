//! The `intersectra` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use intersectra_core::constructions::{
    alpha_witness, construction_one, section4_family, star_family, tuza_family,
};
use intersectra_core::search::{SearchConfig, Symmetry, DEFAULT_NODE_BUDGET};
use intersectra_core::{
    intersection_structure, is_intersecting, is_maximal, maximalize, star_cover_violations,
    SetFamily, VSet,
};
use serde_json::{json, Map, Value};

use crate::format::{read_family, write_family};
use crate::parallel::beta_search_parallel;
use crate::report::{family_json, search_json, set_json, RunReport};
use crate::verify::run_suite;

#[derive(Debug, Parser)]
#[command(
    name = "intersectra",
    version,
    about = "Intersection structures of intersecting set families"
)]
pub struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print only the essential result.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Size, intersecting flag, k-intersection counts and the <1> support of a family file.
    Analyze {
        file: PathBuf,
        /// Intersection sizes to count (default: 1 up to the largest member).
        #[arg(long, short, value_delimiter = ',')]
        k: Vec<usize>,
    },
    /// Maximality and star-cover check of a uniform family file.
    Check {
        file: PathBuf,
        /// Ground size (default: from the file).
        #[arg(long)]
        n: Option<u32>,
        /// Rank (default: from the file).
        #[arg(long)]
        r: Option<u32>,
    },
    /// Build an explicit family.
    #[command(subcommand)]
    Construct(Construct),
    /// Exact branch-and-bound search.
    #[command(subcommand)]
    Search(Search),
    /// Run a named verification suite (or `all`).
    Verify { suite: String },
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// All r-sets of [n] containing 1.
    Star {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
    },
    /// Tuza's paired family for r >= 3.
    Tuza {
        #[arg(long)]
        r: u32,
    },
    /// The recorded family realizing the best known alpha(r).
    AlphaWitness {
        #[arg(long)]
        r: u32,
    },
    /// Up-closure of an (r-k+1)-uniform base to r-sets of [n].
    Construction1 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: u32,
        /// Base family file, lifted to [n] if smaller (default: the alpha witness of rank r-k+1).
        #[arg(long)]
        base: Option<PathBuf>,
    },
    /// The 4-uniform family whose maximal extension realizes [8], n >= 10.
    Section4 {
        #[arg(long, default_value_t = 10)]
        n: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum Search {
    /// beta(n, r, 1), a lower bound on alpha(r).
    Alpha {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// beta(n, r, k) = max |A<k>| over intersecting A in [n]^(r).
    Beta {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        opts: SearchOpts,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OnOff {
    On,
    Off,
}

#[derive(Debug, Args)]
pub struct SearchOpts {
    /// Node budget, 0 for unlimited.
    #[arg(long, env = "INTERSECTRA_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = OnOff::On)]
    symmetry: OnOff,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Report every optimal isomorphism class.
    #[arg(long)]
    all_optima: bool,
}

impl SearchOpts {
    fn config(&self) -> SearchConfig {
        let symmetry = match self.symmetry {
            OnOff::On => Symmetry::On,
            OnOff::Off => Symmetry::Off,
        };
        SearchConfig::default()
            .with_budget(self.budget)
            .with_symmetry(symmetry)
            .with_width(self.workers)
            .with_all_optima(self.all_optima)
    }
}

fn family_input(path: &Path) -> anyhow::Result<SetFamily> {
    Ok(read_family(path)?)
}

fn sets_json(sets: &[VSet]) -> Value {
    Value::Array(sets.iter().map(set_json).collect())
}

/// Summary of a family file: size, intersecting flag, `|F<k>|` counts and
/// the support of `F<1>`.
pub fn cmd_analyze(path: &Path, ks: &[usize]) -> anyhow::Result<RunReport> {
    let family = family_input(path)?;
    let n = family.ground_size();
    let ks: Vec<usize> = if ks.is_empty() {
        let top = family.iter().map(VSet::len).max().unwrap_or(0);
        (1..=top).collect()
    } else {
        ks.to_vec()
    };
    if let Some(&k) = ks.iter().find(|&&k| k > n as usize) {
        bail!("k={k} exceeds n={n}");
    }
    let structure = intersection_structure(&family)?;
    let mut counts = Map::new();
    for &k in &ks {
        counts.insert(k.to_string(), json!(structure.count(k)));
    }
    let mut report = RunReport::new("analyze")
        .input("file", path.display().to_string())
        .input("k", json!(ks));
    report.outputs = json!({
        "n": n,
        "size": family.len(),
        "is_intersecting": is_intersecting(&family)?,
        "empty_intersection": structure.count(0) > 0,
        "counts": counts,
        "support": set_json(&structure.singleton_support(n)),
    });
    Ok(report)
}

/// Intersecting, maximality and star-cover report for a uniform family.
pub fn cmd_check(path: &Path, n: Option<u32>, r: Option<u32>) -> anyhow::Result<RunReport> {
    let family = family_input(path)?;
    let n = n.unwrap_or(family.ground_size());
    let Some(r) = r.or(family.rank()).or(family.uniform_rank()) else {
        bail!("family is not uniform; pass --r");
    };
    if family.ground_size() != n {
        bail!("file has n={}, --n says {n}", family.ground_size());
    }
    let mut report = RunReport::new("check")
        .input("file", path.display().to_string())
        .input("n", n)
        .input("r", r);
    let intersecting = !family.is_empty() && is_intersecting(&family)?;
    if !intersecting {
        report.outputs =
            json!({ "is_intersecting": false, "is_maximal": false, "violations": Value::Null });
        return Ok(report);
    }
    let maximal = is_maximal(&family, n, r)?;
    let violations: Vec<Value> = star_cover_violations(&family)?
        .iter()
        .map(|(a, b)| json!([set_json(a), set_json(b)]))
        .collect();
    let structure = intersection_structure(&family)?;
    let mut out = Map::new();
    out.insert("is_intersecting".into(), json!(true));
    out.insert("is_maximal".into(), json!(maximal));
    out.insert("violations".into(), Value::Array(violations));
    out.insert("support".into(), set_json(&structure.singleton_support(n)));
    if !maximal {
        let full = maximalize(&family, n, r)?;
        let added: Vec<VSet> = full
            .iter()
            .filter(|s| !family.contains(s))
            .cloned()
            .collect();
        out.insert("maximalize_added".into(), sets_json(&added));
        out.insert(
            "maximalized_support".into(),
            set_json(&intersection_structure(&full)?.singleton_support(n)),
        );
    }
    report.outputs = Value::Object(out);
    Ok(report)
}

/// Runs a verification suite; `pass` is set on the report.
pub fn cmd_verify(suite: &str) -> anyhow::Result<RunReport> {
    let reports = run_suite(suite)?;
    if let [one] = reports.as_slice() {
        return Ok(one.to_run_report());
    }
    let mut report = RunReport::new("verify").input("suite", suite);
    report.outputs = json!({
        "suites": reports.iter().map(|r| r.to_run_report().to_json()).collect::<Vec<_>>(),
    });
    report.anchor = Some("all verification suites".to_owned());
    report.pass = Some(reports.iter().all(|r| r.pass()));
    Ok(report)
}

fn regrounded(f: &SetFamily, n: u32) -> anyhow::Result<SetFamily> {
    let members = f
        .iter()
        .map(|s| s.extend_ground(n))
        .collect::<Result<Vec<_>, _>>()?;
    let out = SetFamily::new(n, members)?;
    Ok(match f.rank() {
        Some(r) => out.with_rank(r)?,
        None => out,
    })
}

fn construct(c: &Construct) -> anyhow::Result<(SetFamily, String)> {
    Ok(match c {
        Construct::Star { n, r } => (star_family(*n, *r)?, format!("star n={n} r={r}")),
        Construct::Tuza { r } => (tuza_family(*r)?, format!("tuza r={r}")),
        Construct::AlphaWitness { r } => {
            let rec = alpha_witness(*r)?;
            let what = if rec.is_exact() {
                format!("alpha-witness r={r}: alpha = {}", rec.lower())
            } else {
                format!(
                    "alpha-witness r={r}: {} <= alpha <= {}",
                    rec.lower(),
                    rec.upper()
                )
            };
            (rec.witness, what)
        }
        Construct::Construction1 { n, r, k, base } => {
            if *k == 0 || k > r {
                bail!("k must satisfy 1 <= k <= r");
            }
            let (base, what) = match base {
                Some(path) => (family_input(path)?, path.display().to_string()),
                None => (
                    alpha_witness(r - k + 1)?.witness,
                    format!("alpha-witness r={}", r - k + 1),
                ),
            };
            if base.ground_size() > *n {
                bail!(
                    "n={n} is smaller than the base's ground size {}",
                    base.ground_size()
                );
            }
            let base = regrounded(&base, *n)?;
            let f = construction_one(*n, *r, *k, &base)?;
            (f, format!("up-closure n={n} r={r} k={k} of {what}"))
        }
        Construct::Section4 { n } => (section4_family(*n)?, format!("section4 n={n}")),
    })
}

fn search(s: &Search) -> anyhow::Result<intersectra_core::search::SearchResult> {
    let res = match s {
        Search::Alpha { r, n, opts } => beta_search_parallel(*n, *r, 1, &opts.config())?,
        Search::Beta { n, r, k, opts } => beta_search_parallel(*n, *r, *k, &opts.config())?,
    };
    Ok(res)
}

fn render_lists(f: &SetFamily) -> String {
    let text = write_family(f);
    text.split_once('\n')
        .map_or(String::new(), |(_, rest)| rest.to_owned())
}

/// Human-readable rendering; keys in the report's own order.
fn render_text(report: &RunReport, quiet: bool) -> String {
    let mut out = String::new();
    match report.command.as_str() {
        "verify" => render_verify(&report.to_json(), quiet, &mut out),
        _ => {
            if let Value::Object(m) = &report.outputs {
                for (k, v) in m {
                    out.push_str(&format!("{k}: {v}\n"));
                }
            }
        }
    }
    out
}

fn render_verify(doc: &Value, quiet: bool, out: &mut String) {
    if let Some(suites) = doc["outputs"]["suites"].as_array() {
        for s in suites {
            render_verify(s, quiet, out);
        }
        let pass = doc["pass"].as_bool().unwrap_or(false);
        out.push_str(&format!("all: {}\n", if pass { "PASS" } else { "FAIL" }));
        return;
    }
    let checks = doc["outputs"]["checks"]
        .as_array()
        .cloned()
        .unwrap_or_default();
    if !quiet {
        for c in &checks {
            let ok = c["pass"].as_bool().unwrap_or(false);
            out.push_str(&format!(
                "  {} {}: observed {} expected {}\n",
                if ok { "PASS" } else { "FAIL" },
                c["name"].as_str().unwrap_or(""),
                c["observed"],
                c["expected"],
            ));
            if !ok {
                out.push_str(&format!(
                    "       anchor: {}\n",
                    c["anchor"].as_str().unwrap_or("")
                ));
            }
        }
    }
    let passed = checks
        .iter()
        .filter(|c| c["pass"].as_bool() == Some(true))
        .count();
    out.push_str(&format!(
        "{}: {} ({passed}/{} checks)\n",
        doc["inputs"]["suite"].as_str().unwrap_or(""),
        if doc["pass"].as_bool() == Some(true) {
            "PASS"
        } else {
            "FAIL"
        },
        checks.len(),
    ));
}

/// Executes a parsed command line; returns the text to print and whether
/// the run counts as a success.
pub fn execute(cli: &Cli) -> anyhow::Result<(String, bool)> {
    let json = cli.json;
    match &cli.command {
        Command::Analyze { file, k } => report_output(cmd_analyze(file, k)?, json, cli.quiet),
        Command::Check { file, n, r } => report_output(cmd_check(file, *n, *r)?, json, cli.quiet),
        Command::Verify { suite } => report_output(cmd_verify(suite)?, json, cli.quiet),
        Command::Construct(c) => {
            let (family, provenance) = construct(c)?;
            let text = if json {
                let doc = json!({
                    "family": family_json(&family),
                    "n": family.ground_size(),
                    "r": family.rank().or(family.uniform_rank()),
                    "provenance": provenance,
                });
                pretty(&doc)
            } else {
                write_family(&family)
            };
            Ok((text, true))
        }
        Command::Search(s) => {
            let res = search(s).context("search failed")?;
            if json {
                return Ok((pretty(&search_json(&res)), true));
            }
            let p = res.params;
            let mut text = format!(
                "beta({},{},{}) {} {}\n",
                p.n,
                p.r,
                p.k,
                if res.optimal { "=" } else { ">=" },
                res.value
            );
            if !cli.quiet {
                let ms = res.elapsed.map_or(0, |d| d.as_millis());
                text.push_str(&format!(
                    "{} after {} nodes in {ms} ms\n",
                    if res.optimal {
                        "optimal"
                    } else {
                        "budget exhausted, not proven optimal"
                    },
                    res.nodes_expanded,
                ));
                text.push_str("witness:\n");
                text.push_str(&render_lists(&res.witness));
                for (i, c) in res.classes.iter().enumerate() {
                    text.push_str(&format!("class {}:\n", i + 1));
                    text.push_str(&render_lists(c));
                }
            }
            Ok((text, true))
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain JSON");
    s.push('\n');
    s
}

fn report_output(report: RunReport, json: bool, quiet: bool) -> anyhow::Result<(String, bool)> {
    let ok = report.pass.unwrap_or(true);
    let text = if json {
        let mut s = report.render();
        s.push('\n');
        s
    } else {
        render_text(&report, quiet)
    };
    Ok((text, ok))
}

/// Entry point shared by the binary: exit 0 on success, 1 for a failed
/// verification, 2 for errors.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(&cli) {
        Ok((text, ok)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
