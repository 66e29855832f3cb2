//! Command-line front end: exact solves, certified approximations, seeded
//! instance generators with JSON-lines reports, witness verification, and
//! the config-driven benchmark harness.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hfree::approx::{self, EHParams, FailMode, SubstitutionParams};
use hfree::bench;
use hfree::gen::{self, BlowupParams, RandomSource};
use hfree::io;
use hfree::oracle;
use hfree::pattern::Pattern;
use hfree::Graph;

const SEED_ENV: &str = "HFREE_SEED";

#[derive(Parser)]
#[command(
    name = "hfree",
    version,
    about = "maximum independent set toolkit: exact solver, certified approximations, hard-instance generators, benchmark harness"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact maximum independent set (or clique) by branch and bound
    Exact {
        /// graph file, edge-list or DIMACS
        #[arg(long = "in")]
        input: PathBuf,
        /// solve maximum clique instead
        #[arg(long)]
        clique: bool,
        /// search-node budget; when exhausted the best set so far is
        /// printed as a lower bound
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Approximation algorithms, each with a checkable certificate
    Approx {
        #[arg(long, value_enum)]
        algo: AlgoName,
        #[arg(long = "in")]
        input: PathBuf,
        /// clique order (ramsey), peel rounds (peel), swap width (ls)
        #[arg(long)]
        t: Option<usize>,
        /// pattern pair "H1@root,H2" for subst, e.g. "K3@0,K2"
        #[arg(long)]
        pattern: Option<String>,
        /// exponent knob: oracle strength delta for eh, joint ratio
        /// exponent for subst
        #[arg(long)]
        eps: Option<f64>,
        /// randomness seed; HFREE_SEED supplies the default
        #[arg(long)]
        seed: Option<u64>,
        /// failure handling for subst
        #[arg(long, value_enum)]
        mode: Option<ModeName>,
    },
    /// Seeded instance generators; a JSON-lines report lands next to the
    /// output file
    Gen {
        #[arg(long, value_enum)]
        kind: KindName,
        /// base graph: registry name (K3, C5, ...) or a file path
        #[arg(long)]
        base: Option<String>,
        /// second graph file for intersect
        #[arg(long)]
        second: Option<PathBuf>,
        /// vertex count for process
        #[arg(long)]
        n: Option<usize>,
        /// class size for blowup/gap
        #[arg(long)]
        s: Option<usize>,
        /// cross-pair edge probability for blowup/gap
        #[arg(long)]
        p: Option<f64>,
        /// remove all cycles of length up to gamma (gap)
        #[arg(long)]
        gamma: Option<usize>,
        /// randomness seed; HFREE_SEED supplies the default
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a vertex-set file against a graph; prints PASS or FAIL
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        set: PathBuf,
    },
    /// Run a config-driven experiment and write its CSV
    Bench {
        #[arg(long)]
        config: PathBuf,
        /// overrides the config's `out` entry
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoName {
    Ramsey,
    Eh,
    Peel,
    Greedy,
    Ls,
    Subst,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeName {
    Faithful,
    Retry,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindName {
    Blowup,
    Process,
    Gap,
    Intersect,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Exact {
            input,
            clique,
            budget,
        } => cmd_exact(&input, clique, budget),
        Cmd::Approx {
            algo,
            input,
            t,
            pattern,
            eps,
            seed,
            mode,
        } => cmd_approx(algo, &input, t, pattern.as_deref(), eps, seed, mode),
        Cmd::Gen {
            kind,
            base,
            second,
            n,
            s,
            p,
            gamma,
            seed,
            out,
        } => cmd_gen(
            kind,
            base.as_deref(),
            second.as_deref(),
            n,
            s,
            p,
            gamma,
            seed,
            &out,
        ),
        Cmd::Verify { input, set } => cmd_verify(&input, &set),
        Cmd::Bench { config, out } => cmd_bench(&config, out),
    }
}

fn load_graph(path: &std::path::Path) -> Result<Graph> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read graph file {}", path.display()))?;
    let g = io::parse_graph_auto(&text)
        .with_context(|| format!("cannot parse graph file {}", path.display()))?;
    Ok(g)
}

fn resolve_pattern(spec: &str) -> Result<Pattern> {
    if let Ok(p) = Pattern::named(spec) {
        return Ok(p);
    }
    let text = fs::read_to_string(spec)
        .with_context(|| format!("`{spec}` is neither a known pattern name nor a readable file"))?;
    let (g, root) = io::parse_pattern_file(&text)
        .with_context(|| format!("cannot parse pattern file {spec}"))?;
    Ok(Pattern::new(g, root)?)
}

fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .parse::<u64>()
            .with_context(|| format!("{SEED_ENV} must be an unsigned integer, got `{v}`")),
        Err(_) => Ok(0),
    }
}

fn print_witness(set: &hfree::VertexSet) {
    if set.members().is_empty() {
        println!("witness");
    } else {
        println!("witness {set}");
    }
}

fn cmd_exact(input: &std::path::Path, clique: bool, budget: Option<u64>) -> Result<ExitCode> {
    let g = load_graph(input)?;
    let budget = budget.unwrap_or(oracle::DEFAULT_NODE_BUDGET);
    let r = if clique {
        oracle::max_clique(&g, budget)
    } else {
        oracle::max_independent_set(&g, budget)
    };
    let quantity = match (clique, r.timed_out) {
        (false, false) => "alpha",
        (true, false) => "omega",
        (_, true) => "lower-bound",
    };
    println!("{quantity} {}", r.size);
    print_witness(&r.best);
    println!("nodes {}", r.nodes);
    if r.timed_out {
        println!("timeout");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_approx(
    algo: AlgoName,
    input: &std::path::Path,
    t: Option<usize>,
    pattern: Option<&str>,
    eps: Option<f64>,
    seed: Option<u64>,
    mode: Option<ModeName>,
) -> Result<ExitCode> {
    let g = load_graph(input)?;
    let sol = match algo {
        AlgoName::Greedy => approx::greedy_min_degree(&g),
        AlgoName::Ramsey => approx::ramsey_is(&g, t.unwrap_or(3))?,
        AlgoName::Peel => approx::peel_iterate(&g, &approx::exact_edgeless(), t.unwrap_or(1))?,
        AlgoName::Ls => approx::local_search(&g, t.unwrap_or(2), resolve_seed(seed)?)?,
        AlgoName::Eh => {
            let delta = eps.unwrap_or(0.5);
            let params = EHParams::new(delta, delta * (1.0 - delta))?;
            approx::eh_wrapper(&g, approx::cograph_eh_oracle, &params)?
        }
        AlgoName::Subst => {
            let spec = pattern.unwrap_or("K3@0,K2");
            let Some((h1_name, h2_name)) = spec.split_once(',') else {
                bail!("--pattern for subst takes a pair like K3@0,K2");
            };
            let h1 = resolve_pattern(h1_name.trim())?;
            let h2 = resolve_pattern(h2_name.trim())?;
            run_subst(&g, &h1, &h2, eps, resolve_seed(seed)?, mode)?
        }
    };
    println!("size {}", sol.set.len());
    println!("certificate {}", sol.certificate.tag());
    print_witness(&sol.set);
    Ok(ExitCode::SUCCESS)
}

/// The substitution driver needs one solver per pattern side. The registry
/// here is deliberately small: cliques K<t> get the recursive clique-or-
/// stable solver, and K1/K2 (making the side edgeless) get the exact
/// edgeless solver.
fn run_subst(
    g: &Graph,
    h1: &Pattern,
    h2: &Pattern,
    eps: Option<f64>,
    seed: u64,
    mode: Option<ModeName>,
) -> Result<approx::Solution> {
    let t1 = clique_order(h1)
        .context("subst solver registry covers clique patterns K<t> on the first side")?;
    if t1 < 3 {
        bail!("first pattern must be a clique on at least 3 vertices, got K{t1}");
    }
    if clique_order(h2).is_none_or(|t| t > 2) {
        bail!("subst solver registry covers K1 or K2 on the second side");
    }
    let s1 = approx::ramsey_solver(t1);
    let s2 = approx::exact_edgeless();
    let params = match eps {
        Some(e) => SubstitutionParams::new(e, h1.n(), h2.n())?,
        None => SubstitutionParams::from_epsilons(s1.epsilon, s2.epsilon, h1.n(), h2.n())?,
    };
    let mode = match mode {
        Some(ModeName::Faithful) => FailMode::Faithful,
        Some(ModeName::Retry) | None => FailMode::default_retry(),
    };
    Ok(approx::substitution_approx(
        g, h1, h2, &s1, &s2, &params, seed, mode,
    )?)
}

fn clique_order(p: &Pattern) -> Option<usize> {
    let n = p.n();
    (p.graph().m() == n * (n - 1) / 2).then_some(n)
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    kind: KindName,
    base: Option<&str>,
    second: Option<&std::path::Path>,
    n: Option<usize>,
    s: Option<usize>,
    p: Option<f64>,
    gamma: Option<usize>,
    seed: Option<u64>,
    out: &std::path::Path,
) -> Result<ExitCode> {
    let need = |opt: Option<&str>, flag: &str| -> Result<String> {
        opt.map(str::to_string)
            .with_context(|| format!("--{flag} is required for this kind"))
    };
    let (g, report) = match kind {
        KindName::Process => {
            let n = n.context("--n is required for process")?;
            let seed = resolve_seed(seed)?;
            let g = gen::triangle_free_process(n, &mut RandomSource::new(seed).rng());
            let report = serde_json::json!({
                "kind": "process", "n": g.n(), "m": g.m(), "seed": seed,
            });
            (g, report)
        }
        KindName::Blowup => {
            let h = resolve_pattern(&need(base, "base")?)?;
            let s = s.context("--s is required for blowup")?;
            let p = p.context("--p is required for blowup")?;
            let seed = resolve_seed(seed)?;
            let g = gen::blowup(h.graph(), s, p, &mut RandomSource::new(seed).rng());
            let report = serde_json::json!({
                "kind": "blowup", "base_n": h.n(), "s": s, "p": p, "seed": seed,
                "n": g.n(), "m": g.m(),
            });
            (g, report)
        }
        KindName::Gap => {
            let h = resolve_pattern(&need(base, "base")?)?;
            let s = s.context("--s is required for gap")?;
            let p = p.context("--p is required for gap")?;
            let gamma = gamma.context("--gamma is required for gap")?;
            let seed = resolve_seed(seed)?;
            let params = BlowupParams::new(h.n(), s, p, gamma, seed);
            let (g, _, report) = gen::gap_instance(h.graph(), &params);
            let mut value = serde_json::to_value(&report)?;
            value["kind"] = "gap".into();
            (g, value)
        }
        KindName::Intersect => {
            let a = resolve_pattern(&need(base, "base")?)?;
            let b_path = second.context("--second is required for intersect")?;
            let b = load_graph(b_path)?;
            let g = gen::intersect(a.graph(), &b)?;
            let report = serde_json::json!({
                "kind": "intersect", "n": g.n(),
                "m_base": a.graph().m(), "m_second": b.m(), "m": g.m(),
                "girth_base": a.graph().girth(), "girth_second": b.girth(),
                "girth": g.girth(),
            });
            (g, report)
        }
    };
    fs::write(out, io::serialize_edge_list(&g))
        .with_context(|| format!("cannot write {}", out.display()))?;
    let sidecar = format!("{}.report.jsonl", out.display());
    let mut line = serde_json::to_string(&report)?;
    line.push('\n');
    fs::write(&sidecar, line).with_context(|| format!("cannot write {sidecar}"))?;
    println!("wrote {} n={} m={}", out.display(), g.n(), g.m());
    println!("report {sidecar}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(input: &std::path::Path, set: &std::path::Path) -> Result<ExitCode> {
    let g = load_graph(input)?;
    let text = fs::read_to_string(set)
        .with_context(|| format!("cannot read set file {}", set.display()))?;
    let vs = io::parse_vertex_set(&text, g.n())
        .with_context(|| format!("cannot parse set file {}", set.display()))?;
    match oracle::verify_independent(&g, &vs) {
        Ok(()) => {
            println!("PASS");
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            println!("FAIL {e}");
            Ok(ExitCode::FAILURE)
        }
    }
}

fn cmd_bench(config_path: &std::path::Path, out: Option<PathBuf>) -> Result<ExitCode> {
    let text = fs::read_to_string(config_path)
        .with_context(|| format!("cannot read config {}", config_path.display()))?;
    let config = bench::parse_config(&text)
        .with_context(|| format!("invalid config {}", config_path.display()))?;
    let out = match out.or_else(|| config.out.clone().map(PathBuf::from)) {
        Some(p) => p,
        None => bail!("no output path: pass --out or set `out` in the config"),
    };
    let records = bench::run_trials(&config)?;
    fs::write(&out, bench::csv_string(&records))
        .with_context(|| format!("cannot write {}", out.display()))?;
    println!("wrote {} ({} records)", out.display(), records.len());
    Ok(ExitCode::SUCCESS)
}
