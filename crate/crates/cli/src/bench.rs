//! Benchmark harness: instance families from a TOML config, one CSV row per
//! (instance, algorithm).
//!
//! ```toml
//! algorithms = ["greedy", "local:2", "wishful", "exact"]
//! lp = ["standard", "intersecting"]   # optional gap columns
//! budget = 50000000                   # per row, optional
//! oracle_cap = 40                     # optional
//!
//! [[family]]
//! generator = "random"
//! name = "k3"
//! universe = 9
//! n = 15
//! k = 3
//! seeds = [1, 2, 3]
//! weights = "1:10"                    # optional
//!
//! [[family]]
//! generator = "projective"
//! q = [2, 3]
//!
//! [[family]]
//! generator = "file"
//! path = "instances/fano.txt"         # relative to the config file
//! ```

use std::io::Write;
use std::path::Path;

use kspack::exact::max_packing_exact_capped;
use kspack::instance::{
    gen_projective_plane, gen_random, packing_value, parse_instance, WeightRange,
};
use kspack::relaxation::{build_lp, solve_lp, GapVariant, LpStatus, DEFAULT_CLIQUE_CAP};
use kspack::{parse_rational, Budget, Error, Instance, Rational};
use rayon::prelude::*;
use serde::Deserialize;

use crate::algorithm::{self, Algorithm};
use crate::error::{read, CliError, CliResult};

pub const CSV_VERSION_LINE: &str = "# kspack bench csv v1";

pub const COLUMNS: [&str; 17] = [
    "family",
    "instance",
    "seed",
    "n",
    "k",
    "algorithm",
    "status",
    "value",
    "exact_value",
    "ratio",
    "lp_standard",
    "gap_standard",
    "lp_intersecting",
    "gap_intersecting",
    "iterations",
    "budget_spent",
    "message",
];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    #[serde(default)]
    pub algorithms: Vec<String>,
    #[serde(default)]
    pub lp: Vec<String>,
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default = "default_oracle_cap")]
    pub oracle_cap: usize,
    #[serde(default, rename = "family")]
    pub families: Vec<Family>,
}

fn default_budget() -> u64 {
    Budget::DEFAULT_LIMIT
}

fn default_oracle_cap() -> usize {
    kspack::exact::DEFAULT_CAP
}

#[derive(Debug, Deserialize)]
#[serde(tag = "generator", rename_all = "lowercase")]
pub enum Family {
    Random {
        name: Option<String>,
        universe: usize,
        n: usize,
        k: usize,
        seeds: Vec<u64>,
        weights: Option<String>,
    },
    Projective {
        name: Option<String>,
        q: Vec<u64>,
    },
    File {
        name: Option<String>,
        path: String,
    },
}

struct BenchInstance {
    family: String,
    label: String,
    seed: Option<u64>,
    instance: Instance,
}

pub fn parse_weight_range(text: &str) -> CliResult<WeightRange> {
    let bad = || CliError::Input(format!("weight range `{text}` is not of the form lo:hi"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    let lo = parse_rational(lo).ok_or_else(bad)?;
    let hi = parse_rational(hi).ok_or_else(bad)?;
    Ok(WeightRange::new(lo, hi)?)
}

fn expand(config: &BenchConfig, base: &Path) -> CliResult<Vec<BenchInstance>> {
    let mut out = Vec::new();
    for (i, family) in config.families.iter().enumerate() {
        match family {
            Family::Random {
                name,
                universe,
                n,
                k,
                seeds,
                weights,
            } => {
                let family = name.clone().unwrap_or_else(|| format!("random-{}", i + 1));
                let range = weights.as_deref().map(parse_weight_range).transpose()?;
                for &seed in seeds {
                    out.push(BenchInstance {
                        label: format!("{family}/seed={seed}"),
                        family: family.clone(),
                        seed: Some(seed),
                        instance: gen_random(*universe, *n, *k, range.as_ref(), seed)?,
                    });
                }
            }
            Family::Projective { name, q } => {
                let family = name
                    .clone()
                    .unwrap_or_else(|| format!("projective-{}", i + 1));
                for &q in q {
                    out.push(BenchInstance {
                        label: format!("{family}/q={q}"),
                        family: family.clone(),
                        seed: None,
                        instance: gen_projective_plane(q)?,
                    });
                }
            }
            Family::File { name, path } => {
                let full = base.join(path);
                let family = name.clone().unwrap_or_else(|| path.clone());
                out.push(BenchInstance {
                    label: path.clone(),
                    family,
                    seed: None,
                    instance: parse_instance(&read(&full)?)?,
                });
            }
        }
    }
    Ok(out)
}

/// Per-instance quantities shared by all rows of that instance.
#[derive(Default)]
struct Context {
    exact: Option<Rational>,
    lp: [Option<Rational>; 2],
}

fn context(instance: &Instance, variants: &[GapVariant], oracle_cap: usize) -> Context {
    let exact = max_packing_exact_capped(instance, oracle_cap)
        .and_then(|p| packing_value(instance, &p))
        .ok();
    let mut lp = [None, None];
    for &v in variants {
        let value = build_lp(instance, v, DEFAULT_CLIQUE_CAP)
            .and_then(|lp| solve_lp(&lp))
            .ok()
            .filter(|s| s.status == LpStatus::Optimal)
            .map(|s| s.objective_value);
        lp[v as usize] = value;
    }
    Context { exact, lp }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    CapExceeded,
    BudgetExceeded,
    Error,
}

impl RowStatus {
    fn of(err: &Error) -> Self {
        match err {
            Error::CapExceeded { .. } => RowStatus::CapExceeded,
            Error::BudgetExceeded { .. } => RowStatus::BudgetExceeded,
            _ => RowStatus::Error,
        }
    }

    fn as_str(&self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::CapExceeded => "cap_exceeded",
            RowStatus::BudgetExceeded => "budget_exceeded",
            RowStatus::Error => "error",
        }
    }
}

fn text(v: &Option<Rational>) -> String {
    v.as_ref().map(|r| r.to_string()).unwrap_or_default()
}

/// Runs the benchmark described by `config_path` and writes CSV to `out`.
pub fn run_bench(config_path: &Path, out: &mut dyn Write) -> CliResult<()> {
    let config: BenchConfig = toml::from_str(&read(config_path)?)?;
    let algorithms: Vec<Algorithm> = config
        .algorithms
        .iter()
        .map(|a| a.parse())
        .collect::<CliResult<_>>()?;
    let variants: Vec<GapVariant> = config
        .lp
        .iter()
        .map(|v| v.parse())
        .collect::<kspack::Result<_>>()?;
    let base = config_path.parent().unwrap_or(Path::new("."));
    let instances = if algorithms.is_empty() {
        Vec::new()
    } else {
        expand(&config, base)?
    };

    let contexts: Vec<Context> = instances
        .par_iter()
        .map(|b| context(&b.instance, &variants, config.oracle_cap))
        .collect();
    let tasks: Vec<(usize, &Algorithm)> = (0..instances.len())
        .flat_map(|i| algorithms.iter().map(move |a| (i, a)))
        .collect();
    let rows: Vec<(RowStatus, Vec<String>)> = tasks
        .par_iter()
        .map(|&(i, alg)| {
            let b = &instances[i];
            let ctx = &contexts[i];
            let mut budget = Budget::new(config.budget);
            let result = algorithm::run(alg, &b.instance, &mut budget, config.oracle_cap);
            let (status, value, iterations, message) = match result {
                Ok(sol) => (
                    RowStatus::Ok,
                    Some(sol.value),
                    sol.iterations.to_string(),
                    String::new(),
                ),
                Err(e) => (RowStatus::of(&e), None, String::new(), e.to_string()),
            };
            let ratio = match (&ctx.exact, &value) {
                (Some(opt), Some(v)) if *v != Rational::from_integer(0.into()) => Some(opt / v),
                _ => None,
            };
            let gap = |lp: &Option<Rational>| match (lp, &ctx.exact) {
                (Some(lp), Some(opt)) => Some(lp / opt),
                _ => None,
            };
            let record = vec![
                b.family.clone(),
                b.label.clone(),
                b.seed.map(|s| s.to_string()).unwrap_or_default(),
                b.instance.num_sets().to_string(),
                b.instance.k().to_string(),
                alg.to_string(),
                status.as_str().to_string(),
                text(&value),
                text(&ctx.exact),
                text(&ratio),
                text(&ctx.lp[0]),
                text(&gap(&ctx.lp[0])),
                text(&ctx.lp[1]),
                text(&gap(&ctx.lp[1])),
                iterations,
                budget.spent().to_string(),
                message,
            ];
            (status, record)
        })
        .collect();

    writeln!(out, "{CSV_VERSION_LINE}").map_err(csv::Error::from)?;
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(COLUMNS)?;
    for (_, record) in &rows {
        writer.write_record(record)?;
    }
    writer.flush().map_err(csv::Error::from)?;

    if !rows.is_empty() && rows.iter().all(|(s, _)| *s != RowStatus::Ok) {
        let resource_limited = rows
            .iter()
            .all(|(s, _)| matches!(s, RowStatus::CapExceeded | RowStatus::BudgetExceeded));
        return Err(CliError::AllRowsFailed { resource_limited });
    }
    Ok(())
}
