//! Seeded experiment harness: parses a flat key-value config, generates one
//! instance per seed, runs every configured algorithm next to the exact
//! solver, and renders the results as sorted CSV rows.
//!
//! Config grammar, one `key = value` per line, `#` starts a comment:
//!
//! ```text
//! corpus = process          # edgeless | cycle | gnp | process | blowup | gap
//! n = 24                    # edgeless/cycle/gnp/process
//! p = 0.3                   # gnp/blowup/gap edge probability
//! base = C5                 # blowup/gap base graph, by pattern name
//! s = 3                     # blowup/gap class size
//! gamma = 3                 # gap cycle-removal depth
//! seeds = 0..10             # end-exclusive range, or a single seed
//! oracle_budget = 100000000 # optional
//! out = results.csv         # optional default output path
//! algo = peel t=1           # repeated; see AlgoSpec for the names
//! algo = greedy
//! ```
//!
//! Identical configs reproduce identical records except for the wall-time
//! column, which is measurement, not content.

use std::fmt::Write as _;
use std::time::Instant;

use crate::approx::{self, ApproxError, EHParams, FailMode, SubstitutionParams};
use crate::gen::{self, BlowupParams, RandomSource};
use crate::graph::Graph;
use crate::oracle;
use crate::pattern::Pattern;
use thiserror::Error;

pub const CSV_VERSION_COMMENT: &str = "# hfree bench csv v1";
pub const CSV_COLUMNS: &str = "seed,instance,n,m,algorithm,found,alpha,ratio,wall_ms,certificate";

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("no algorithms")]
    NoAlgorithms,
    #[error("seed range is empty")]
    EmptySeeds,
    #[error("config line {line}: cannot parse `{text}`")]
    BadLine { line: usize, text: String },
    #[error("unknown config key `{key}`")]
    UnknownKey { key: String },
    #[error("duplicate config key `{key}`")]
    DuplicateKey { key: String },
    #[error("missing config key `{key}`")]
    MissingKey { key: &'static str },
    #[error("bad value for `{key}`: `{value}`")]
    BadValue { key: String, value: String },
    #[error("unknown corpus kind `{name}`")]
    UnknownCorpus { name: String },
    #[error("unknown algorithm `{name}`")]
    UnknownAlgo { name: String },
    #[error("algorithm `{algo}` rejects its parameters")]
    BadAlgoParams { algo: String, source: ApproxError },
    #[error("seed {seed}, algorithm `{algo}` failed")]
    Algorithm {
        seed: u64,
        algo: String,
        source: ApproxError,
    },
    #[error("seed {seed}, algorithm `{algo}` returned a dependent set: {reason}")]
    Unsound {
        seed: u64,
        algo: String,
        reason: String,
    },
}

/// Instance family drawn once per seed.
#[derive(Debug, Clone, PartialEq)]
pub enum CorpusSpec {
    Edgeless {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Gnp {
        n: usize,
        p: f64,
    },
    Process {
        n: usize,
    },
    Blowup {
        base: String,
        s: usize,
        p: f64,
    },
    Gap {
        base: String,
        s: usize,
        p: f64,
        gamma: usize,
    },
}

impl CorpusSpec {
    /// Instance descriptor shared by every seed of the family.
    pub fn label(&self) -> String {
        match self {
            CorpusSpec::Edgeless { n } => format!("edgeless-n{n}"),
            CorpusSpec::Cycle { n } => format!("cycle-n{n}"),
            CorpusSpec::Gnp { n, p } => format!("gnp-n{n}-p{p}"),
            CorpusSpec::Process { n } => format!("process-n{n}"),
            CorpusSpec::Blowup { base, s, p } => format!("blowup-{base}-s{s}-p{p}"),
            CorpusSpec::Gap { base, s, p, gamma } => format!("gap-{base}-s{s}-p{p}-g{gamma}"),
        }
    }

    /// The seed's instance. Deterministic in (self, seed).
    pub fn generate(&self, seed: u64) -> Result<Graph, BenchError> {
        let src = RandomSource::new(seed);
        match self {
            CorpusSpec::Edgeless { n } => Ok(Graph::edgeless(*n)),
            CorpusSpec::Cycle { n } => Ok(Graph::cycle(*n)),
            CorpusSpec::Gnp { n, p } => Ok(gen::gnp(*n, *p, &mut src.rng())),
            CorpusSpec::Process { n } => Ok(gen::triangle_free_process(*n, &mut src.rng())),
            CorpusSpec::Blowup { base, s, p } => {
                let h = resolve_base(base)?;
                Ok(gen::blowup(h.graph(), *s, *p, &mut src.rng()))
            }
            CorpusSpec::Gap { base, s, p, gamma } => {
                let h = resolve_base(base)?;
                let params = BlowupParams::new(h.n(), *s, *p, *gamma, seed);
                Ok(gen::gap_instance(h.graph(), &params).0)
            }
        }
    }
}

fn resolve_base(name: &str) -> Result<Pattern, BenchError> {
    Pattern::named(name).map_err(|_| BenchError::BadValue {
        key: "base".into(),
        value: name.into(),
    })
}

/// One algorithm column of the experiment.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgoSpec {
    /// repeated minimum-degree selection
    Greedy,
    /// clique-or-stable recursion for hosts with no t-clique
    Ramsey { t: usize },
    /// t rounds of comb peeling over the exact edgeless base
    Peel { t: usize },
    /// clique-stripping wrapper over the modular-decomposition solver
    Eh { delta: f64 },
    /// t-swap local search seeded by the trial seed
    Ls { t: usize },
    /// two-solver decomposition for hosts excluding a triangle with a
    /// pendant edge class (the four-clique instantiation)
    Subst { mode: FailMode },
}

impl AlgoSpec {
    /// CSV label; doubles as the sort key within a trial.
    pub fn label(&self) -> String {
        match self {
            AlgoSpec::Greedy => "greedy".into(),
            AlgoSpec::Ramsey { t } => format!("ramsey-t{t}"),
            AlgoSpec::Peel { t } => format!("peel-t{t}"),
            AlgoSpec::Eh { delta } => format!("eh-d{delta}"),
            AlgoSpec::Ls { t } => format!("ls-t{t}"),
            AlgoSpec::Subst { mode } => match mode {
                FailMode::Faithful => "subst-faithful".into(),
                FailMode::Retry { k } => format!("subst-retry{k}"),
            },
        }
    }

    fn run(&self, g: &Graph, seed: u64) -> Result<approx::Solution, ApproxError> {
        match self {
            AlgoSpec::Greedy => Ok(approx::greedy_min_degree(g)),
            AlgoSpec::Ramsey { t } => approx::ramsey_is(g, *t),
            AlgoSpec::Peel { t } => approx::peel_iterate(g, &approx::exact_edgeless(), *t),
            AlgoSpec::Eh { delta } => {
                let params = EHParams::new(*delta, *delta * (1.0 - *delta))?;
                approx::eh_wrapper(g, approx::cograph_eh_oracle, &params)
            }
            AlgoSpec::Ls { t } => approx::local_search(g, *t, seed),
            AlgoSpec::Subst { mode } => {
                let h1 = Pattern::named("K3@0").expect("known name");
                let h2 = Pattern::named("K2").expect("known name");
                let s1 = approx::ramsey_solver(3);
                let s2 = approx::exact_edgeless();
                let params = SubstitutionParams::from_epsilons(s1.epsilon, s2.epsilon, 3, 2)?;
                approx::substitution_approx(g, &h1, &h2, &s1, &s2, &params, seed, *mode)
            }
        }
    }

    /// Rejects parameter combinations the run would reject, without a graph.
    fn validate(&self) -> Result<(), BenchError> {
        let check = match self {
            AlgoSpec::Eh { delta } => EHParams::new(*delta, 0.1).map(|_| ()).err(),
            AlgoSpec::Ls { t } if !(2..=3).contains(t) => Some(ApproxError::BadSwapSize { t: *t }),
            AlgoSpec::Ramsey { t } if *t < 2 => Some(ApproxError::BadRamseyT { t: *t }),
            AlgoSpec::Peel { t } if *t < 1 => Some(ApproxError::BadPeelDepth { t: *t }),
            _ => None,
        };
        match check {
            Some(source) => Err(BenchError::BadAlgoParams {
                algo: self.label(),
                source,
            }),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub corpus: CorpusSpec,
    /// end-exclusive
    pub seeds: std::ops::Range<u64>,
    pub algos: Vec<AlgoSpec>,
    pub oracle_budget: u64,
    pub out: Option<String>,
}

/// One row of the experiment: one algorithm on one seeded instance.
/// `alpha` is `None` when the exact solver hit its node budget; `ratio`
/// needs both an exact optimum and a nonempty answer.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub seed: u64,
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub algorithm: String,
    pub found: usize,
    pub alpha: Option<usize>,
    pub ratio: Option<f64>,
    pub wall_ms: u64,
    pub certificate: String,
}

/// Parses the config grammar in the module docs. Every key is checked;
/// duplicates and leftovers are errors, not warnings.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, BenchError> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(cut) => &raw[..cut],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(BenchError::BadLine {
                line: idx + 1,
                text: raw.trim().into(),
            });
        };
        let (key, value) = (key.trim().to_string(), value.trim().to_string());
        if key.is_empty() || value.is_empty() {
            return Err(BenchError::BadLine {
                line: idx + 1,
                text: raw.trim().into(),
            });
        }
        pairs.push((key, value));
    }

    let mut algos = Vec::new();
    let mut scalars: Vec<(String, String)> = Vec::new();
    for (key, value) in pairs {
        if key == "algo" {
            algos.push(parse_algo(&value)?);
        } else {
            if scalars.iter().any(|(k, _)| *k == key) {
                return Err(BenchError::DuplicateKey { key });
            }
            scalars.push((key, value));
        }
    }

    let mut taken = vec![false; scalars.len()];
    let mut take = |key: &str| -> Option<String> {
        scalars.iter().position(|(k, _)| k == key).map(|i| {
            taken[i] = true;
            scalars[i].1.clone()
        })
    };

    let corpus_kind = take("corpus").ok_or(BenchError::MissingKey { key: "corpus" })?;
    let corpus = match corpus_kind.as_str() {
        "edgeless" => CorpusSpec::Edgeless {
            n: parse_num(&mut take, "n")?,
        },
        "cycle" => CorpusSpec::Cycle {
            n: parse_num(&mut take, "n")?,
        },
        "gnp" => CorpusSpec::Gnp {
            n: parse_num(&mut take, "n")?,
            p: parse_num(&mut take, "p")?,
        },
        "process" => CorpusSpec::Process {
            n: parse_num(&mut take, "n")?,
        },
        "blowup" => CorpusSpec::Blowup {
            base: take("base").ok_or(BenchError::MissingKey { key: "base" })?,
            s: parse_num(&mut take, "s")?,
            p: parse_num(&mut take, "p")?,
        },
        "gap" => CorpusSpec::Gap {
            base: take("base").ok_or(BenchError::MissingKey { key: "base" })?,
            s: parse_num(&mut take, "s")?,
            p: parse_num(&mut take, "p")?,
            gamma: parse_num(&mut take, "gamma")?,
        },
        other => return Err(BenchError::UnknownCorpus { name: other.into() }),
    };
    if let CorpusSpec::Blowup { base, .. } | CorpusSpec::Gap { base, .. } = &corpus {
        resolve_base(base)?;
    }

    let seeds_text = take("seeds").ok_or(BenchError::MissingKey { key: "seeds" })?;
    let seeds = parse_seeds(&seeds_text)?;
    let oracle_budget = match take("oracle_budget") {
        Some(v) => v.parse::<u64>().map_err(|_| BenchError::BadValue {
            key: "oracle_budget".into(),
            value: v,
        })?,
        None => oracle::DEFAULT_NODE_BUDGET,
    };
    let out = take("out");

    if let Some(i) = taken.iter().position(|&t| !t) {
        return Err(BenchError::UnknownKey {
            key: scalars[i].0.clone(),
        });
    }
    for a in &algos {
        a.validate()?;
    }
    let config = ExperimentConfig {
        corpus,
        seeds,
        algos,
        oracle_budget,
        out,
    };
    if config.algos.is_empty() {
        return Err(BenchError::NoAlgorithms);
    }
    if config.seeds.is_empty() {
        return Err(BenchError::EmptySeeds);
    }
    Ok(config)
}

fn parse_num<T: std::str::FromStr>(
    take: &mut impl FnMut(&str) -> Option<String>,
    key: &'static str,
) -> Result<T, BenchError> {
    let v = take(key).ok_or(BenchError::MissingKey { key })?;
    v.parse::<T>().map_err(|_| BenchError::BadValue {
        key: key.into(),
        value: v,
    })
}

fn parse_seeds(text: &str) -> Result<std::ops::Range<u64>, BenchError> {
    let bad = || BenchError::BadValue {
        key: "seeds".into(),
        value: text.into(),
    };
    match text.split_once("..") {
        Some((a, b)) => {
            let start = a.trim().parse::<u64>().map_err(|_| bad())?;
            let end = b.trim().parse::<u64>().map_err(|_| bad())?;
            Ok(start..end)
        }
        None => {
            let s = text.trim().parse::<u64>().map_err(|_| bad())?;
            Ok(s..s + 1)
        }
    }
}

fn parse_algo(text: &str) -> Result<AlgoSpec, BenchError> {
    let mut words = text.split_whitespace();
    let name = words.next().ok_or(BenchError::BadValue {
        key: "algo".into(),
        value: text.into(),
    })?;
    let mut params: Vec<(&str, &str)> = Vec::new();
    for w in words {
        let Some((k, v)) = w.split_once('=') else {
            return Err(BenchError::BadValue {
                key: format!("algo {name}"),
                value: w.into(),
            });
        };
        params.push((k, v));
    }
    let mut get = |key: &str| -> Option<&str> {
        params
            .iter()
            .position(|(k, _)| *k == key)
            .map(|i| params.remove(i).1)
    };
    let bad = |key: &str, value: &str| BenchError::BadValue {
        key: format!("algo {name} {key}"),
        value: value.into(),
    };
    let spec = match name {
        "greedy" => AlgoSpec::Greedy,
        "ramsey" => {
            let v = get("t").ok_or(BenchError::MissingKey { key: "t" })?;
            AlgoSpec::Ramsey {
                t: v.parse().map_err(|_| bad("t", v))?,
            }
        }
        "peel" => {
            let v = get("t").ok_or(BenchError::MissingKey { key: "t" })?;
            AlgoSpec::Peel {
                t: v.parse().map_err(|_| bad("t", v))?,
            }
        }
        "eh" => {
            let v = get("delta").ok_or(BenchError::MissingKey { key: "delta" })?;
            AlgoSpec::Eh {
                delta: v.parse().map_err(|_| bad("delta", v))?,
            }
        }
        "ls" => {
            let v = get("t").ok_or(BenchError::MissingKey { key: "t" })?;
            AlgoSpec::Ls {
                t: v.parse().map_err(|_| bad("t", v))?,
            }
        }
        "subst" => {
            let mode = match get("mode") {
                None => FailMode::default_retry(),
                Some("faithful") => FailMode::Faithful,
                Some("retry") => {
                    let k = match get("k") {
                        None => 3,
                        Some(v) => v.parse().map_err(|_| bad("k", v))?,
                    };
                    FailMode::Retry { k }
                }
                Some(other) => return Err(bad("mode", other)),
            };
            AlgoSpec::Subst { mode }
        }
        other => return Err(BenchError::UnknownAlgo { name: other.into() }),
    };
    if let Some((k, v)) = params.first() {
        return Err(bad(k, v));
    }
    Ok(spec)
}

/// Runs the whole experiment. Records come back sorted by
/// (seed, instance, algorithm); every answer is re-checked for independence
/// before it becomes a row.
pub fn run_trials(config: &ExperimentConfig) -> Result<Vec<TrialRecord>, BenchError> {
    if config.algos.is_empty() {
        return Err(BenchError::NoAlgorithms);
    }
    if config.seeds.is_empty() {
        return Err(BenchError::EmptySeeds);
    }
    let instance = config.corpus.label();
    let mut records = Vec::new();
    for seed in config.seeds.clone() {
        let g = config.corpus.generate(seed)?;
        let exact = oracle::max_independent_set(&g, config.oracle_budget);
        let alpha = if exact.timed_out {
            None
        } else {
            Some(exact.size)
        };
        for algo in &config.algos {
            let label = algo.label();
            let clock = Instant::now();
            let sol = algo.run(&g, seed).map_err(|source| BenchError::Algorithm {
                seed,
                algo: label.clone(),
                source,
            })?;
            let wall_ms = clock.elapsed().as_millis() as u64;
            if let Err(e) = oracle::verify_independent(&g, &sol.set) {
                return Err(BenchError::Unsound {
                    seed,
                    algo: label,
                    reason: e.to_string(),
                });
            }
            let found = sol.set.len();
            if let Some(a) = alpha {
                assert!(found <= a, "an independent set cannot beat the optimum");
            }
            let ratio = match (alpha, found) {
                (Some(a), f) if f > 0 => Some(a as f64 / f as f64),
                _ => None,
            };
            records.push(TrialRecord {
                seed,
                instance: instance.clone(),
                n: g.n(),
                m: g.m(),
                algorithm: label,
                found,
                alpha,
                ratio,
                wall_ms,
                certificate: sol.certificate.tag().to_string(),
            });
        }
    }
    records.sort_by(|a, b| {
        (a.seed, &a.instance, &a.algorithm).cmp(&(b.seed, &b.instance, &b.algorithm))
    });
    Ok(records)
}

/// Fixed-schema CSV: version comment, column header, one line per record.
pub fn csv_string(records: &[TrialRecord]) -> String {
    let mut out = String::new();
    out.push_str(CSV_VERSION_COMMENT);
    out.push('\n');
    out.push_str(CSV_COLUMNS);
    out.push('\n');
    for r in records {
        let alpha = match r.alpha {
            Some(a) => a.to_string(),
            None => "timeout".into(),
        };
        let ratio = match r.ratio {
            Some(x) => format!("{x:.6}"),
            None => String::new(),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.seed,
            r.instance,
            r.n,
            r.m,
            r.algorithm,
            r.found,
            alpha,
            ratio,
            r.wall_ms,
            r.certificate
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// The same CSV with the wall-time column blanked, which is the form golden
/// comparisons use: timing is measurement, not content.
pub fn csv_without_wall_time(csv: &str) -> String {
    let wall_idx = CSV_COLUMNS
        .split(',')
        .position(|c| c == "wall_ms")
        .expect("column exists");
    let mut out = String::new();
    for line in csv.lines() {
        if line.starts_with('#') || line == CSV_COLUMNS {
            out.push_str(line);
        } else {
            let mut fields: Vec<&str> = line.split(',').collect();
            if fields.len() > wall_idx {
                fields[wall_idx] = "";
            }
            out.push_str(&fields.join(","));
        }
        out.push('\n');
    }
    out
}
