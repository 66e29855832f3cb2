//! Approximation algorithms for maximum independent set on hosts that
//! exclude a fixed induced subgraph, each returning a [`Solution`] whose
//! certificate records which exit produced the set. The certificate carries
//! exactly the quantities the accompanying guarantee is stated in (removed
//! cliques, peel paths, round traces), so tests can check the promised
//! inequality rather than just the set.
//!
//! Every algorithm is deterministic given its inputs and seed; ties break
//! toward the lowest vertex index throughout.

use crate::graph::{Graph, VertexSet};
use crate::oracle;
use crate::pattern::{self, Pattern, PatternError};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ApproxError {
    #[error("swap radius t={t} outside the supported range [2, 3]")]
    BadSwapSize { t: usize },
    #[error("clique bound t={t} must be at least 2")]
    BadRamseyT { t: usize },
    #[error("peel depth t={t} must be at least 1")]
    BadPeelDepth { t: usize },
    #[error("delta={delta} outside (0, 0.5]")]
    BadDelta { delta: f64 },
    #[error("epsilon={epsilon} outside (0, {max}]")]
    BadEpsilon { epsilon: f64, max: f64 },
    #[error("params built for pattern sizes ({n1}, {n2}), got patterns of sizes ({p1}, {p2})")]
    ParamsMismatch {
        n1: usize,
        n2: usize,
        p1: usize,
        p2: usize,
    },
    #[error("plugged-in solver or oracle broke its contract: {reason}")]
    Contract { reason: String },
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// Which branch of the substitution loop produced a round's subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubstBranch {
    /// few copies of the first pattern: the subset was sampled
    FewCopies,
    /// many copies: the subset is a kernel's extension set
    ManyCopies,
}

/// One completed round of the substitution loop whose solution was too small
/// to return: the removed subset and the size that was found inside it.
#[derive(Debug, Clone)]
pub struct RoundLog {
    pub round: usize,
    pub branch: SubstBranch,
    pub removed: VertexSet,
    pub found: usize,
}

/// Which exit produced the solution, with the payload its guarantee needs.
#[derive(Debug, Clone)]
pub enum Certificate {
    /// the clique-or-independent oracle handed back an independent set
    IsReturned,
    /// every oracle call returned a clique; the removed cliques plus the
    /// small residual bound the optimum from above
    Singleton {
        cliques: Vec<VertexSet>,
        residual: VertexSet,
    },
    /// winning comb leaf: the peeled path prefix plus the leaf solution
    CombLeaf { path: Vec<usize>, leaf: VertexSet },
    /// fixed point of t-swap local search
    LocalOpt { t: usize },
    /// min-degree greedy peel, maximal by construction
    Greedy,
    /// clique-bound recursion with the declared bound
    Ramsey { t: usize },
    /// a substitution round's solution cleared the return threshold
    SubstReturn { round: usize, branch: SubstBranch },
    /// the substitution loop exhausted its vertex budget; the trace holds
    /// the removed subsets partitioning the host
    SubstSingleton { trace: Vec<RoundLog> },
    /// a sampled subset kept containing the first pattern
    SubstFail {
        round: usize,
        attempts: usize,
        sample: VertexSet,
        trace: Vec<RoundLog>,
    },
}

impl Certificate {
    pub fn tag(&self) -> &'static str {
        match self {
            Certificate::IsReturned => "is-returned",
            Certificate::Singleton { .. } => "singleton",
            Certificate::CombLeaf { .. } => "comb-leaf",
            Certificate::LocalOpt { .. } => "local-opt",
            Certificate::Greedy => "greedy",
            Certificate::Ramsey { .. } => "ramsey",
            Certificate::SubstReturn { .. } => "subst-return",
            Certificate::SubstSingleton { .. } => "subst-singleton",
            Certificate::SubstFail { .. } => "fail",
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Certificate::SubstFail { .. })
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub set: VertexSet,
    pub algorithm: &'static str,
    pub certificate: Certificate,
}

/// Threshold arithmetic: `base^exp` in doubles, snapped to the nearest
/// integer when within 1e-9 (so 9^0.5 is 3, not 4 after the ceiling), then
/// rounded up. Values beyond exact double range saturate to usize::MAX.
pub(crate) fn pow_ceil(base: f64, exp: f64) -> usize {
    let raw = base.powf(exp);
    let snapped = if (raw - raw.round()).abs() < 1e-9 {
        raw.round()
    } else {
        raw.ceil()
    };
    if snapped >= 9.0e15 {
        return usize::MAX;
    }
    snapped as usize
}

// ---------------------------------------------------------------------------
// plug-in contracts
// ---------------------------------------------------------------------------

/// An approximation routine pluggable into the peel and substitution
/// drivers. `epsilon` is the declared guarantee exponent: the routine
/// promises an n^(1-epsilon) ratio on its graph class (exact solvers declare
/// 1.0; parameter builders cap it at 0.99).
pub struct PluggedSolver<F> {
    pub name: &'static str,
    pub epsilon: f64,
    pub solve: F,
}

/// Solver signature accepted by the plug-in drivers.
pub type SolveFn = fn(&Graph) -> Result<VertexSet, ApproxError>;

/// Exact base for edgeless inputs; errors on any edge, which turns a
/// violated freeness precondition into a visible contract failure instead
/// of a silently bad set.
pub fn exact_edgeless() -> PluggedSolver<SolveFn> {
    fn solve(g: &Graph) -> Result<VertexSet, ApproxError> {
        if let Some((u, v)) = g.edges().next() {
            return Err(ApproxError::Contract {
                reason: format!("edgeless-only base was handed edge {u}-{v}"),
            });
        }
        Ok(VertexSet::full(g.n()))
    }
    PluggedSolver {
        name: "exact-edgeless",
        epsilon: 1.0,
        solve,
    }
}

/// The clique-bound recursion as a plug-in for hosts promised free of the
/// t-vertex complete graph.
pub fn ramsey_solver(t: usize) -> PluggedSolver<impl Fn(&Graph) -> Result<VertexSet, ApproxError>> {
    PluggedSolver {
        name: "ramsey",
        epsilon: 1.0 / (t as f64 - 1.0),
        solve: move |g: &Graph| ramsey_is(g, t).map(|s| s.set),
    }
}

/// Clique-or-independent oracle for hosts whose every level of the modular
/// decomposition is a union or a join: returns whichever of the maximum
/// clique / maximum independent set is larger (clique on ties). Some side
/// always reaches sqrt(n), which meets any exponent demand up to 1/2.
pub fn cograph_eh_oracle(g: &Graph) -> Result<VertexSet, ApproxError> {
    match oracle::cograph_solve(g) {
        None => Err(ApproxError::Contract {
            reason: "oracle input is outside its class (induced 4-vertex path present)".into(),
        }),
        Some(sol) => Ok(if sol.omega.len() >= sol.alpha.len() {
            sol.omega
        } else {
            sol.alpha
        }),
    }
}

// ---------------------------------------------------------------------------
// ramsey recursion and greedy
// ---------------------------------------------------------------------------

/// Min-degree greedy peel inside `verts`, lowest index on ties; returns the
/// picked vertices in host ids.
fn greedy_on(g: &Graph, verts: &[usize]) -> Vec<usize> {
    let mut remaining: Vec<usize> = verts.to_vec();
    let mut picked = Vec::new();
    while !remaining.is_empty() {
        let v = *remaining
            .iter()
            .min_by_key(|&&v| {
                let d = remaining.iter().filter(|&&u| g.has_edge(u, v)).count();
                (d, v)
            })
            .expect("nonempty");
        picked.push(v);
        remaining.retain(|&u| u != v && !g.has_edge(u, v));
    }
    picked.sort_unstable();
    picked
}

/// Repeatedly takes a lowest-index minimum-degree vertex and deletes its
/// closed neighborhood. The result is maximal: every discarded vertex has a
/// neighbor in the set.
pub fn greedy_min_degree(g: &Graph) -> Solution {
    let verts: Vec<usize> = (0..g.n()).collect();
    let picked = greedy_on(g, &verts);
    let set = VertexSet::from_vec(g.n(), picked).expect("in range");
    debug_assert!(g.is_independent_set(&set));
    Solution {
        set,
        algorithm: "greedy",
        certificate: Certificate::Greedy,
    }
}

/// Independent set in a host promised free of the complete graph on `t`
/// vertices. For t=2 the host is edgeless and everything is returned; else
/// a maximum-degree vertex either has a large neighborhood to recurse into
/// with t-1, or the whole graph is sparse enough for greedy peeling. The
/// guarantee is n^(1/(t-1))/2; the recursion depth charges the factor 2.
pub fn ramsey_is(g: &Graph, t: usize) -> Result<Solution, ApproxError> {
    if t < 2 {
        return Err(ApproxError::BadRamseyT { t });
    }
    fn rec(g: &Graph, verts: Vec<usize>, t: usize) -> Vec<usize> {
        let n = verts.len();
        if n == 0 {
            return vec![];
        }
        if t == 2 {
            return verts;
        }
        let v = *verts
            .iter()
            .max_by(|&&a, &&b| {
                let da = verts.iter().filter(|&&u| g.has_edge(u, a)).count();
                let db = verts.iter().filter(|&&u| g.has_edge(u, b)).count();
                da.cmp(&db).then(b.cmp(&a))
            })
            .expect("nonempty");
        let deg = verts.iter().filter(|&&u| g.has_edge(u, v)).count();
        let threshold = pow_ceil(n as f64, (t as f64 - 2.0) / (t as f64 - 1.0));
        if deg >= threshold {
            let inside: Vec<usize> = verts
                .iter()
                .copied()
                .filter(|&u| g.has_edge(u, v))
                .collect();
            rec(g, inside, t - 1)
        } else {
            greedy_on(g, &verts)
        }
    }
    let picked = rec(g, (0..g.n()).collect(), t);
    let set = VertexSet::from_vec(g.n(), picked).expect("in range");
    if let Some((u, v)) = g.find_violating_edge(&set) {
        return Err(ApproxError::Contract {
            reason: format!(
                "clique-freeness precondition violated: recursion bottomed out on edge {u}-{v}"
            ),
        });
    }
    Ok(Solution {
        set,
        algorithm: "ramsey",
        certificate: Certificate::Ramsey { t },
    })
}

// ---------------------------------------------------------------------------
// clique-or-independent wrapper
// ---------------------------------------------------------------------------

/// Parameters for [`eh_wrapper`]: the oracle's exponent `delta` (at most
/// 1/2) and the slack exponent `epsilon` quoted in its ratio statement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EHParams {
    pub delta: f64,
    pub epsilon: f64,
}

impl EHParams {
    pub fn new(delta: f64, epsilon: f64) -> Result<Self, ApproxError> {
        if !(delta > 0.0 && delta <= 0.5) {
            return Err(ApproxError::BadDelta { delta });
        }
        if epsilon <= 0.0 {
            return Err(ApproxError::BadEpsilon {
                epsilon,
                max: f64::INFINITY,
            });
        }
        Ok(EHParams { delta, epsilon })
    }
}

/// Drives a clique-or-independent oracle: while at least ceil(n^(1-delta))
/// vertices survive, ask the oracle; an independent answer is returned
/// outright, a clique is removed and recorded. If the loop exhausts the
/// graph, any single vertex is good enough, and the removed cliques plus
/// the residual certify why: the optimum meets each clique at most once.
///
/// The oracle must return, on every induced subgraph J it is shown, a
/// clique or independent set of at least |V(J)|^delta vertices; anything
/// else is reported as a contract violation.
pub fn eh_wrapper<F>(g: &Graph, oracle_fn: F, params: &EHParams) -> Result<Solution, ApproxError>
where
    F: Fn(&Graph) -> Result<VertexSet, ApproxError>,
{
    let n = g.n();
    if n == 0 {
        return Ok(Solution {
            set: VertexSet::empty(0),
            algorithm: "eh",
            certificate: Certificate::IsReturned,
        });
    }
    let floor = pow_ceil(n as f64, 1.0 - params.delta);
    let mut vprime: Vec<usize> = (0..n).collect();
    let mut cliques: Vec<VertexSet> = Vec::new();
    while vprime.len() >= floor {
        let (sub, map) = g.induced(&vprime);
        let x_local = oracle_fn(&sub)?;
        if x_local.host_n() != sub.n() {
            return Err(ApproxError::Contract {
                reason: format!(
                    "oracle answered for a host of size {}, was asked about {}",
                    x_local.host_n(),
                    sub.n()
                ),
            });
        }
        let need = (sub.n() as f64).powf(params.delta) - 1e-9;
        if (x_local.len() as f64) < need {
            return Err(ApproxError::Contract {
                reason: format!(
                    "oracle set has {} vertices, below the promised {}^{} = {:.3}",
                    x_local.len(),
                    sub.n(),
                    params.delta,
                    need + 1e-9
                ),
            });
        }
        let x = x_local.mapped(&map, n);
        if sub.is_independent_set(&x_local) {
            return Ok(Solution {
                set: x,
                algorithm: "eh",
                certificate: Certificate::IsReturned,
            });
        }
        if !sub.is_clique(&x_local) {
            return Err(ApproxError::Contract {
                reason: "oracle set is neither a clique nor independent".into(),
            });
        }
        vprime.retain(|v| !x.contains(*v));
        cliques.push(x);
    }
    let residual = VertexSet::from_vec(n, vprime).expect("in range");
    Ok(Solution {
        set: VertexSet::singleton(n, 0).expect("n is at least 1 here"),
        algorithm: "eh",
        certificate: Certificate::Singleton { cliques, residual },
    })
}

// ---------------------------------------------------------------------------
// comb peeling
// ---------------------------------------------------------------------------

/// One comb pass: peel lowest-index vertices, run `inner` on each peeled
/// vertex's surviving open neighborhood, and keep the best leaf — the
/// peeled prefix plus that leaf's set (the all-path leaf closes the comb).
/// Earliest leaf wins ties. Returns (path prefix, leaf set) in host ids.
fn comb(
    g: &Graph,
    inner: &dyn Fn(&Graph) -> Result<Vec<usize>, ApproxError>,
) -> Result<(Vec<usize>, Vec<usize>), ApproxError> {
    let mut remaining: Vec<usize> = (0..g.n()).collect();
    let mut path: Vec<usize> = Vec::new();
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut best_size = 0usize;
    while !remaining.is_empty() {
        let v = remaining[0];
        let nbrs: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&u| g.has_edge(u, v))
            .collect();
        let (sub, map) = g.induced(&nbrs);
        let s_local = inner(&sub)?;
        let s_set = VertexSet::from_vec(sub.n(), s_local).map_err(|e| ApproxError::Contract {
            reason: format!("inner solver returned an invalid set: {e}"),
        })?;
        if let Some((a, b)) = sub.find_violating_edge(&s_set) {
            return Err(ApproxError::Contract {
                reason: format!("inner solver returned a dependent set: edge {a}-{b}"),
            });
        }
        let s_host: Vec<usize> = s_set.members().iter().map(|&x| map[x]).collect();
        let size = path.len() + s_host.len();
        if best.is_none() || size > best_size {
            best_size = size;
            best = Some((path.clone(), s_host));
        }
        path.push(v);
        remaining.retain(|&u| u != v && !g.has_edge(u, v));
    }
    if best.is_none() || path.len() > best_size {
        best = Some((path, vec![]));
    }
    Ok(best.expect("a leaf always exists"))
}

fn peel_rec(
    g: &Graph,
    base: &dyn Fn(&Graph) -> Result<VertexSet, ApproxError>,
    level: usize,
) -> Result<Vec<usize>, ApproxError> {
    if level == 0 {
        let s = base(g)?;
        return Ok(s.members().to_vec());
    }
    let (path, leaf) = comb(g, &|sub| peel_rec(sub, base, level - 1))?;
    let mut all = path;
    all.extend(leaf);
    all.sort_unstable();
    Ok(all)
}

/// `t` nested comb passes over `base`. With an exact base this guarantees
/// a set of size at least alpha^(1/(t+1)): each pass costs one exponent
/// notch and the comb accounting pays for it.
pub fn peel_iterate<F>(
    g: &Graph,
    base: &PluggedSolver<F>,
    t: usize,
) -> Result<Solution, ApproxError>
where
    F: Fn(&Graph) -> Result<VertexSet, ApproxError>,
{
    if t < 1 {
        return Err(ApproxError::BadPeelDepth { t });
    }
    let base_dyn: &dyn Fn(&Graph) -> Result<VertexSet, ApproxError> = &base.solve;
    let (path, leaf) = comb(g, &|sub| peel_rec(sub, base_dyn, t - 1))?;
    let mut all = path.clone();
    all.extend(leaf.iter().copied());
    all.sort_unstable();
    let set = VertexSet::from_vec(g.n(), all).expect("in range");
    debug_assert!(g.is_independent_set(&set));
    let leaf_set = VertexSet::from_vec(g.n(), leaf).expect("in range");
    Ok(Solution {
        set,
        algorithm: "peel",
        certificate: Certificate::CombLeaf {
            path,
            leaf: leaf_set,
        },
    })
}

/// Single comb pass: peel vertices, solve each open neighborhood with
/// `base`, return the best leaf. Sound whenever every open neighborhood of
/// the host lies in the base's class.
pub fn universal_peel<F>(g: &Graph, base: &PluggedSolver<F>) -> Result<Solution, ApproxError>
where
    F: Fn(&Graph) -> Result<VertexSet, ApproxError>,
{
    peel_iterate(g, base, 1)
}

// ---------------------------------------------------------------------------
// local search
// ---------------------------------------------------------------------------

/// Visits k-subsets of `pool` in lexicographic order until the visitor
/// returns false; returns false if stopped early.
fn combos(pool: &[usize], k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        pool: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == k {
            return visit(cur);
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            let go_on = rec(pool, k, i + 1, cur, visit);
            cur.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(pool, k, 0, &mut Vec::new(), visit)
}

/// t-swap local search from a seeded random start vertex: exchange
/// X inside the set for a strictly larger independent Y outside it,
/// |Y| at most t. Swaps are scanned by increasing |Y|, then |X|, then
/// lexicographic X, then lexicographic Y, and the first valid swap is
/// applied; the output is a fixed point of that scan.
pub fn local_search(g: &Graph, t: usize, seed: u64) -> Result<Solution, ApproxError> {
    if !(2..=3).contains(&t) {
        return Err(ApproxError::BadSwapSize { t });
    }
    if g.n() == 0 {
        return Ok(Solution {
            set: VertexSet::empty(0),
            algorithm: "ls",
            certificate: Certificate::LocalOpt { t },
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s: Vec<usize> = vec![rng.random_range(0..g.n())];
    'improve: loop {
        let outside: Vec<usize> = (0..g.n()).filter(|v| !s.contains(v)).collect();
        for ysize in 1..=t {
            for xsize in 0..ysize {
                let mut swap: Option<(Vec<usize>, Vec<usize>)> = None;
                combos(&s, xsize, &mut |x| {
                    combos(&outside, ysize, &mut |y| {
                        let y_independent = combos(y, 2, &mut |pair| !g.has_edge(pair[0], pair[1]));
                        if !y_independent {
                            return true;
                        }
                        let keeps = |u: usize| s.contains(&u) && !x.contains(&u);
                        let clash = y.iter().any(|&yy| g.neighbors(yy).any(keeps));
                        if clash {
                            return true;
                        }
                        swap = Some((x.to_vec(), y.to_vec()));
                        false
                    })
                });
                if let Some((x, y)) = swap {
                    s.retain(|v| !x.contains(v));
                    s.extend(y);
                    s.sort_unstable();
                    continue 'improve;
                }
            }
        }
        break;
    }
    let set = VertexSet::from_vec(g.n(), s).expect("in range");
    debug_assert_eq!(oracle::is_locally_optimal(g, &set, t), Ok(true));
    Ok(Solution {
        set,
        algorithm: "ls",
        certificate: Certificate::LocalOpt { t },
    })
}

// ---------------------------------------------------------------------------
// substitution loop
// ---------------------------------------------------------------------------

/// Exponent bookkeeping for [`substitution_approx`]. `epsilon` is the joint
/// guarantee exponent of the two plugged solvers (capped at 0.99); the
/// derived exponents are recomputed on demand so they can never go stale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubstitutionParams {
    epsilon: f64,
    n1: usize,
    n2: usize,
}

impl SubstitutionParams {
    pub fn new(epsilon: f64, n1: usize, n2: usize) -> Result<Self, ApproxError> {
        if !(epsilon > 0.0 && epsilon <= 0.99) {
            return Err(ApproxError::BadEpsilon { epsilon, max: 0.99 });
        }
        Ok(SubstitutionParams { epsilon, n1, n2 })
    }

    /// Joint epsilon from two declared solver exponents, capped at 0.99
    /// (an exact solver's 1.0 is deliberately weakened to 0.99).
    pub fn from_epsilons(e1: f64, e2: f64, n1: usize, n2: usize) -> Result<Self, ApproxError> {
        let epsilon = e1.min(e2).min(0.99);
        SubstitutionParams::new(epsilon, n1, n2)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Sampling exponent epsilon/(2 n1).
    pub fn gamma(&self) -> f64 {
        self.epsilon / (2.0 * self.n1 as f64)
    }

    /// min(1 - epsilon, gamma): a lower bound on both branches' subset sizes
    /// as an exponent of the surviving vertex count.
    pub fn eta(&self) -> f64 {
        (1.0 - self.epsilon).min(self.gamma())
    }

    /// Overall guarantee exponent epsilon*eta/(2 + epsilon*eta), in (0, 1).
    pub fn delta(&self) -> f64 {
        let eh = self.epsilon * self.eta();
        eh / (2.0 + eh)
    }
}

/// What to do when a sampled subset contains the first pattern: report the
/// failure outright, or draw up to `k` fresh samples first (each retry is an
/// independent trial of the same tail bound, so the failure probability only
/// degrades polynomially). Retries consume extra randomness, so the two
/// modes diverge afterwards even on the same seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailMode {
    Faithful,
    Retry { k: usize },
}

impl FailMode {
    pub fn default_retry() -> FailMode {
        FailMode::Retry { k: 3 }
    }
}

fn sample_sorted(rng: &mut ChaCha8Rng, pool: &[usize], k: usize) -> Vec<usize> {
    let mut scratch: Vec<usize> = pool.to_vec();
    let take = k.min(scratch.len());
    let (picked, _) = scratch.partial_shuffle(rng, take);
    let mut v = picked.to_vec();
    v.sort_unstable();
    v
}

/// Approximation driver for hosts excluding the substitution of `h2` into
/// `h1`'s root. Each round inspects the survivors: with few copies of `h1`
/// around, a small random sample is `h1`-free with high probability and
/// `solver1` runs on it; with many copies, some kernel (a copy of `h1`
/// minus its root) has lots of root-extensions, which form an `h2`-free
/// subset for `solver2` (a copy of `h2` inside them would complete to the
/// excluded pattern). A round's solution is returned once it reaches
/// ceil(n^delta); otherwise the inspected subset is removed and the loop
/// continues while at least ceil(n^(1-delta)) vertices survive. If every
/// round fell short, the removed subsets partition the host into pieces
/// with provably small optima, so one vertex already meets the ratio.
///
/// Hosts too small for the loop to shrink anything meaningfully
/// (n^(1-delta) < 2) return the singleton immediately.
#[allow(clippy::too_many_arguments)]
pub fn substitution_approx<F1, F2>(
    g: &Graph,
    h1: &Pattern,
    h2: &Pattern,
    solver1: &PluggedSolver<F1>,
    solver2: &PluggedSolver<F2>,
    params: &SubstitutionParams,
    seed: u64,
    mode: FailMode,
) -> Result<Solution, ApproxError>
where
    F1: Fn(&Graph) -> Result<VertexSet, ApproxError>,
    F2: Fn(&Graph) -> Result<VertexSet, ApproxError>,
{
    if h1.root().is_none() {
        return Err(ApproxError::Pattern(PatternError::NoRoot));
    }
    if params.n1() != h1.n() || params.n2() != h2.n() {
        return Err(ApproxError::ParamsMismatch {
            n1: params.n1(),
            n2: params.n2(),
            p1: h1.n(),
            p2: h2.n(),
        });
    }
    let n = g.n();
    if n == 0 {
        return Ok(Solution {
            set: VertexSet::empty(0),
            algorithm: "subst",
            certificate: Certificate::SubstSingleton { trace: vec![] },
        });
    }
    let n_f = n as f64;
    let eps = params.epsilon();
    let delta = params.delta();
    if n_f.powf(1.0 - delta) < 2.0 {
        return Ok(Solution {
            set: VertexSet::singleton(n, 0).expect("n is at least 1 here"),
            algorithm: "subst",
            certificate: Certificate::SubstSingleton { trace: vec![] },
        });
    }
    let loop_floor = pow_ceil(n_f, 1.0 - delta);
    let w_floor = pow_ceil(n_f, delta);
    let max_attempts = match mode {
        FailMode::Faithful => 1,
        FailMode::Retry { k } => k + 1,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vi: Vec<usize> = (0..n).collect();
    let mut trace: Vec<RoundLog> = Vec::new();
    let mut round = 0usize;
    while vi.len() >= loop_floor {
        round += 1;
        let m_f = vi.len() as f64;
        let (sub, map) = g.induced(&vi);
        let copy_threshold = pow_ceil(m_f, h1.n() as f64 - eps);
        let copies = pattern::count_induced(&sub, h1, copy_threshold);
        let (xi, branch, w) = if copies < copy_threshold {
            let sample_size = pow_ceil(m_f, params.gamma()).min(vi.len());
            let mut chosen: Option<Vec<usize>> = None;
            let mut attempts = 0;
            while attempts < max_attempts {
                attempts += 1;
                let local = sample_sorted(&mut rng, &vi, sample_size);
                let (gx, _) = g.induced(&local);
                if !pattern::contains_induced(&gx, h1) {
                    chosen = Some(local);
                    break;
                }
                if attempts == max_attempts {
                    let sample = VertexSet::from_vec(n, local).expect("in range");
                    return Ok(Solution {
                        set: VertexSet::empty(n),
                        algorithm: "subst",
                        certificate: Certificate::SubstFail {
                            round,
                            attempts,
                            sample,
                            trace,
                        },
                    });
                }
            }
            let xi = chosen.expect("loop either chose or returned");
            let (gx, xmap) = g.induced(&xi);
            let w = run_plugged(&gx, &xmap, n, &solver1.solve, solver1.name)?;
            (xi, SubstBranch::FewCopies, w)
        } else {
            let cand_threshold = pow_ceil(m_f, 1.0 - eps);
            let witness = pattern::find_candidates(&sub, h1, cand_threshold)?;
            let Some(witness) = witness else {
                return Err(ApproxError::Contract {
                    reason: format!(
                        "counting promised a kernel with {cand_threshold} extensions, none found"
                    ),
                });
            };
            let xi: Vec<usize> = witness
                .extensions
                .members()
                .iter()
                .map(|&x| map[x])
                .collect();
            let (gx, xmap) = g.induced(&xi);
            let w = run_plugged(&gx, &xmap, n, &solver2.solve, solver2.name)?;
            (xi, SubstBranch::ManyCopies, w)
        };
        if w.len() >= w_floor {
            return Ok(Solution {
                set: w,
                algorithm: "subst",
                certificate: Certificate::SubstReturn { round, branch },
            });
        }
        trace.push(RoundLog {
            round,
            branch,
            removed: VertexSet::from_vec(n, xi.clone()).expect("in range"),
            found: w.len(),
        });
        vi.retain(|v| xi.binary_search(v).is_err());
    }
    Ok(Solution {
        set: VertexSet::singleton(n, 0).expect("n is at least 1 here"),
        algorithm: "subst",
        certificate: Certificate::SubstSingleton { trace },
    })
}

/// Runs a plugged solver on an induced subgraph, enforces its output
/// contract, and lifts the set back to host ids.
fn run_plugged(
    gx: &Graph,
    xmap: &[usize],
    host_n: usize,
    solve: &dyn Fn(&Graph) -> Result<VertexSet, ApproxError>,
    name: &str,
) -> Result<VertexSet, ApproxError> {
    let w_local = solve(gx)?;
    if w_local.host_n() != gx.n() {
        return Err(ApproxError::Contract {
            reason: format!(
                "solver {name} answered for host size {}, asked {}",
                w_local.host_n(),
                gx.n()
            ),
        });
    }
    if let Some((u, v)) = gx.find_violating_edge(&w_local) {
        return Err(ApproxError::Contract {
            reason: format!("solver {name} returned a dependent set: edge {u}-{v}"),
        });
    }
    Ok(w_local.mapped(xmap, host_n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gnp(n: usize, p: f64, seed: u64) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn petersen() -> Graph {
        let mut edges = vec![];
        for v in 0..5 {
            edges.push((v, (v + 1) % 5));
            edges.push((v, v + 5));
            edges.push((v + 5, (v + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    #[test]
    fn pow_ceil_snaps_float_fuzz() {
        assert_eq!(pow_ceil(9.0, 0.5), 3);
        assert_eq!(pow_ceil(2.0, 0.98), 2);
        assert_eq!(pow_ceil(6.0, 2.5), 89);
        assert_eq!(pow_ceil(0.0, 0.5), 0);
        assert_eq!(pow_ceil(10.0, 40.0), usize::MAX);
        assert_eq!(pow_ceil(16.0, 0.75), 8);
    }

    #[test]
    fn ramsey_examples() {
        let s = ramsey_is(&Graph::edgeless(5), 2).unwrap();
        assert_eq!(s.set.len(), 5);
        assert_eq!(s.certificate.tag(), "ramsey");

        let s = ramsey_is(&Graph::cycle(5), 3).unwrap();
        assert_eq!(s.set.len(), 2); // floor(sqrt 5)

        let s = ramsey_is(&Graph::biclique(3, 3), 3).unwrap();
        assert_eq!(s.set.members(), &[3, 4, 5]); // max-degree branch enters a side
        assert!(s.set.len() >= 2); // floor(sqrt 6)

        let s = ramsey_is(&petersen(), 3).unwrap();
        assert!(s.set.len() >= 3); // floor(sqrt 10)
        assert!(petersen().is_independent_set(&s.set));

        assert!(matches!(
            ramsey_is(&Graph::complete(3), 1),
            Err(ApproxError::BadRamseyT { t: 1 })
        ));
        // misdeclared freeness surfaces as a contract error, not a bad set
        assert!(matches!(
            ramsey_is(&Graph::complete(3), 3),
            Err(ApproxError::Contract { .. })
        ));
    }

    #[test]
    fn eh_wrapper_returns_independent_set_on_edgeless() {
        let g = Graph::edgeless(9);
        let params = EHParams::new(0.5, 0.01).unwrap();
        let s = eh_wrapper(&g, cograph_eh_oracle, &params).unwrap();
        assert_eq!(s.set.len(), 9);
        assert!(matches!(s.certificate, Certificate::IsReturned));
    }

    #[test]
    fn eh_wrapper_singleton_on_disjoint_cliques() {
        // four disjoint 4-cliques: every oracle answer is a clique
        let mut edges = Vec::new();
        for b in 0..4 {
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push((4 * b + i, 4 * b + j));
                }
            }
        }
        let g = Graph::from_edges(16, &edges).unwrap();
        let params = EHParams::new(0.5, 0.01).unwrap();
        let s = eh_wrapper(&g, cograph_eh_oracle, &params).unwrap();
        assert_eq!(s.set.len(), 1);
        let Certificate::Singleton { cliques, residual } = &s.certificate else {
            panic!("expected singleton certificate");
        };
        assert_eq!(cliques.len(), 4);
        assert!(residual.is_empty());
        for c in cliques {
            assert!(g.is_clique(c));
            // each removal step saw at least ceil(16^(1/2)) = 4 survivors,
            // so each clique has at least 4^(1/2) = 2 vertices
            assert!(c.len() >= 2);
        }
        // optimum bound from the certificate: alpha <= q + |residual|
        let alpha = oracle::max_independent_set(&g, oracle::DEFAULT_NODE_BUDGET).size;
        assert_eq!(alpha, 4);
        assert!(alpha <= cliques.len() + residual.len());
        assert!((alpha as f64) <= 2.0 * 16f64.powf(0.75));
    }

    #[test]
    fn eh_wrapper_single_vertex_host() {
        let g = Graph::edgeless(1);
        let params = EHParams::new(0.5, 0.01).unwrap();
        let s = eh_wrapper(&g, cograph_eh_oracle, &params).unwrap();
        assert_eq!(s.set.members(), &[0]);
        assert!(matches!(s.certificate, Certificate::IsReturned));
    }

    #[test]
    fn eh_wrapper_rejects_contract_breakers() {
        let g = Graph::cycle(4);
        let params = EHParams::new(0.5, 0.01).unwrap();
        let undersized = |sub: &Graph| Ok(VertexSet::empty(sub.n()));
        assert!(matches!(
            eh_wrapper(&g, undersized, &params),
            Err(ApproxError::Contract { .. })
        ));
        // a path on 3 vertices is neither clique nor independent in C4
        let mixed = |sub: &Graph| Ok(VertexSet::from_vec(sub.n(), vec![0, 1, 2]).unwrap());
        assert!(matches!(
            eh_wrapper(&g, mixed, &params),
            Err(ApproxError::Contract { .. })
        ));
    }

    #[test]
    fn eh_params_validate() {
        assert!(EHParams::new(0.5, 0.01).is_ok());
        assert!(matches!(
            EHParams::new(0.0, 0.01),
            Err(ApproxError::BadDelta { .. })
        ));
        assert!(matches!(
            EHParams::new(0.6, 0.01),
            Err(ApproxError::BadDelta { .. })
        ));
        assert!(matches!(
            EHParams::new(0.5, 0.0),
            Err(ApproxError::BadEpsilon { .. })
        ));
    }

    #[test]
    fn peel_star_takes_the_leaves() {
        let g = Graph::star(5);
        let base = exact_edgeless();
        let s = universal_peel(&g, &base).unwrap();
        assert_eq!(s.set.members(), &[1, 2, 3, 4, 5]);
        let Certificate::CombLeaf { path, leaf } = &s.certificate else {
            panic!("expected comb certificate");
        };
        assert!(path.is_empty());
        assert_eq!(leaf.len(), 5);
    }

    #[test]
    fn peel_cycle_and_empty() {
        let base = exact_edgeless();
        let s = universal_peel(&Graph::cycle(5), &base).unwrap();
        assert_eq!(s.set.len(), 2);
        let s = universal_peel(&Graph::edgeless(0), &base).unwrap();
        assert!(s.set.is_empty());
    }

    #[test]
    fn peel_base_contract_violation_surfaces() {
        let base = exact_edgeless();
        // triangle host: a peeled vertex's neighborhood has an edge
        let err = universal_peel(&Graph::complete(3), &base);
        assert!(matches!(err, Err(ApproxError::Contract { .. })));
    }

    #[test]
    fn peel_iterate_depths() {
        let base = exact_edgeless();
        let s = peel_iterate(&Graph::edgeless(7), &base, 3).unwrap();
        assert_eq!(s.set.len(), 7);

        // triangle-free, alpha = 4: one pass must reach ceil(sqrt(4)) = 2
        let s = peel_iterate(&petersen(), &base, 1).unwrap();
        assert!(s.set.len() * s.set.len() >= 4);
        assert!(petersen().is_independent_set(&s.set));

        // wheel: hub joined to C5; no 4-clique, alpha = 2, depth 2 base sees
        // edgeless graphs two neighborhoods deep
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend((0..5).map(|i| (i, 5)));
        let wheel = Graph::from_edges(6, &edges).unwrap();
        let s = peel_iterate(&wheel, &base, 2).unwrap();
        assert!(s.set.len().pow(3) >= 2);
        assert!(wheel.is_independent_set(&s.set));

        assert!(matches!(
            peel_iterate(&wheel, &base, 0),
            Err(ApproxError::BadPeelDepth { t: 0 })
        ));
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_min_degree(&Graph::complete(6)).set.len(), 1);
        assert_eq!(greedy_min_degree(&Graph::cycle(4)).set.members(), &[0, 2]);
        assert_eq!(greedy_min_degree(&Graph::star(3)).set.members(), &[1, 2, 3]);
    }

    #[test]
    fn greedy_output_is_maximal() {
        for seed in 0..25u64 {
            let g = gnp(18, 0.3, 4200 + seed);
            let s = greedy_min_degree(&g);
            assert!(g.is_independent_set(&s.set));
            for v in 0..g.n() {
                if !s.set.contains(v) {
                    assert!(
                        s.set.members().iter().any(|&u| g.has_edge(u, v)),
                        "vertex {v} could extend the set"
                    );
                }
            }
        }
    }

    #[test]
    fn local_search_examples() {
        let s = local_search(&Graph::edgeless(7), 2, 1).unwrap();
        assert_eq!(s.set.len(), 7);
        let s = local_search(&Graph::complete(5), 2, 9).unwrap();
        assert_eq!(s.set.len(), 1);
        for seed in 0..8 {
            let s = local_search(&Graph::cycle(4), 2, seed).unwrap();
            let m = s.set.members();
            assert!(m == [0, 2] || m == [1, 3], "got {m:?}");
        }
        assert!(matches!(
            local_search(&Graph::cycle(4), 1, 0),
            Err(ApproxError::BadSwapSize { .. })
        ));
        assert!(matches!(
            local_search(&Graph::cycle(4), 4, 0),
            Err(ApproxError::BadSwapSize { .. })
        ));
    }

    #[test]
    fn local_search_reaches_fixed_points() {
        for seed in 0..15u64 {
            let g = gnp(14, 0.35, 86000 + seed);
            for t in [2, 3] {
                let s = local_search(&g, t, seed).unwrap();
                assert_eq!(oracle::is_locally_optimal(&g, &s.set, t), Ok(true));
            }
        }
    }

    #[test]
    fn substitution_params_arithmetic() {
        let p = SubstitutionParams::new(0.5, 3, 2).unwrap();
        assert!((p.gamma() - 1.0 / 12.0).abs() < 1e-12);
        assert!((p.eta() - 1.0 / 12.0).abs() < 1e-12);
        assert!((p.delta() - 1.0 / 49.0).abs() < 1e-12);
        assert!(p.delta() > 0.0 && p.delta() < 1.0);

        let p = SubstitutionParams::from_epsilons(1.0, 1.0, 2, 1).unwrap();
        assert!((p.epsilon() - 0.99).abs() < 1e-12);
        assert!(matches!(
            SubstitutionParams::new(0.0, 3, 2),
            Err(ApproxError::BadEpsilon { .. })
        ));
        assert!(matches!(
            SubstitutionParams::new(1.5, 3, 2),
            Err(ApproxError::BadEpsilon { .. })
        ));
    }

    #[test]
    fn substitution_on_biclique() {
        // host K3,3 excludes K4 = substitute(K3 rooted, K2)
        let h1 = Pattern::named("K3").unwrap().rooted(0).unwrap();
        let h2 = Pattern::named("K2").unwrap();
        let g = Graph::biclique(3, 3);
        let s1 = ramsey_solver(3);
        let s2 = exact_edgeless();
        let params = SubstitutionParams::from_epsilons(s1.epsilon, s2.epsilon, 3, 2).unwrap();
        assert!((params.epsilon() - 0.5).abs() < 1e-12);
        for seed in 0..20u64 {
            let s = substitution_approx(&g, &h1, &h2, &s1, &s2, &params, seed, FailMode::Faithful)
                .unwrap();
            // a 2-vertex sample can never contain a triangle: failure impossible
            assert!(!s.certificate.is_fail());
            assert!(g.is_independent_set(&s.set));
            assert!(!s.set.is_empty());
            let ratio = 3.0 / s.set.len() as f64;
            assert!(ratio <= 6f64.powf(1.0 - params.delta()) + 1e-9);
            // reproducibility: same seed, same set
            let again =
                substitution_approx(&g, &h1, &h2, &s1, &s2, &params, seed, FailMode::Faithful)
                    .unwrap();
            assert_eq!(s.set.members(), again.set.members());
        }
    }

    #[test]
    fn substitution_tiny_host_returns_singleton_without_looping() {
        let h1 = Pattern::named("K3").unwrap().rooted(0).unwrap();
        let h2 = Pattern::named("K2").unwrap();
        let s1 = ramsey_solver(3);
        let s2 = exact_edgeless();
        let params = SubstitutionParams::from_epsilons(s1.epsilon, s2.epsilon, 3, 2).unwrap();
        // n = 2: n^(1-delta) = 2^(48/49) < 2, below the loop's useful range
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let s =
            substitution_approx(&g, &h1, &h2, &s1, &s2, &params, 7, FailMode::Faithful).unwrap();
        assert_eq!(s.set.members(), &[0]);
        let Certificate::SubstSingleton { trace } = &s.certificate else {
            panic!("expected singleton certificate");
        };
        assert!(trace.is_empty());
    }

    #[test]
    fn substitution_rejects_mismatched_params_and_rootless_patterns() {
        let h1 = Pattern::named("K3").unwrap().rooted(0).unwrap();
        let h2 = Pattern::named("K2").unwrap();
        let s1 = ramsey_solver(3);
        let s2 = exact_edgeless();
        let bad = SubstitutionParams::new(0.5, 4, 2).unwrap();
        let g = Graph::biclique(3, 3);
        assert!(matches!(
            substitution_approx(&g, &h1, &h2, &s1, &s2, &bad, 0, FailMode::Faithful),
            Err(ApproxError::ParamsMismatch { .. })
        ));
        let unrooted = Pattern::named("K3").unwrap();
        let p = SubstitutionParams::new(0.5, 3, 2).unwrap();
        assert!(matches!(
            substitution_approx(&g, &unrooted, &h2, &s1, &s2, &p, 0, FailMode::Faithful),
            Err(ApproxError::Pattern(PatternError::NoRoot))
        ));
    }

    #[test]
    fn substitution_exhaustion_leaves_a_partition_trace() {
        // C6 host, K3 pattern: zero copies, so every round samples 2
        // vertices; an adjacent sample scores 1 < 2 and gets removed, after
        // which 4 < ceil(6^(48/49)) = 6 survivors end the loop.
        let h1 = Pattern::named("K3").unwrap().rooted(0).unwrap();
        let h2 = Pattern::named("K2").unwrap();
        let s1 = ramsey_solver(3);
        let s2 = exact_edgeless();
        let params = SubstitutionParams::from_epsilons(s1.epsilon, s2.epsilon, 3, 2).unwrap();
        let g = Graph::cycle(6);
        let mut saw_singleton = false;
        let mut saw_return = false;
        for seed in 0..40u64 {
            let s = substitution_approx(&g, &h1, &h2, &s1, &s2, &params, seed, FailMode::Faithful)
                .unwrap();
            match &s.certificate {
                Certificate::SubstSingleton { trace } => {
                    saw_singleton = true;
                    assert_eq!(trace.len(), 1);
                    assert_eq!(trace[0].branch, SubstBranch::FewCopies);
                    assert_eq!(trace[0].removed.len(), 2);
                    assert_eq!(trace[0].found, 1);
                    assert_eq!(s.set.members(), &[0]);
                }
                Certificate::SubstReturn {
                    round: 1,
                    branch: SubstBranch::FewCopies,
                } => {
                    saw_return = true;
                    assert_eq!(s.set.len(), 2);
                }
                other => panic!("unexpected certificate {:?}", other.tag()),
            }
        }
        assert!(saw_singleton, "no seed sampled an adjacent pair");
        assert!(saw_return, "no seed sampled an independent pair");
    }
    #[test]
    fn substitution_forced_fail_fixture() {
        // single-edge pattern: "sample contains the pattern" just means the
        // sampled triple spans an edge, which seed 0's first draw does on
        // this host (five disjoint 6-cycles keep the copy count below the
        // few-copies threshold while leaving plenty of edges to hit)
        let h1 = Pattern::named("K2").unwrap().rooted(0).unwrap();
        let h2 = Pattern::named("K1").unwrap();
        let s1 = exact_edgeless();
        let s2 = exact_edgeless();
        let params = SubstitutionParams::from_epsilons(s1.epsilon, s2.epsilon, 2, 1).unwrap();
        let mut edges = Vec::new();
        for b in 0..5 {
            for i in 0..6 {
                let u = 6 * b + i;
                let v = 6 * b + (i + 1) % 6;
                edges.push((u.min(v), u.max(v)));
            }
        }
        let g = Graph::from_edges(30, &edges).unwrap();

        let s =
            substitution_approx(&g, &h1, &h2, &s1, &s2, &params, 0, FailMode::Faithful).unwrap();
        let Certificate::SubstFail {
            round,
            attempts,
            sample,
            trace,
        } = &s.certificate
        else {
            panic!("expected a fail certificate, got {}", s.certificate.tag());
        };
        assert_eq!((*round, *attempts), (1, 1));
        assert!(trace.is_empty());
        assert!(s.set.is_empty());
        // the offending sample really does span an edge
        assert!(g.find_violating_edge(sample).is_some());

        // same seed, retry mode: a later draw lands on an edgeless triple
        let r = substitution_approx(&g, &h1, &h2, &s1, &s2, &params, 0, FailMode::Retry { k: 3 })
            .unwrap();
        assert!(!r.certificate.is_fail());
        assert_eq!(r.set.len(), 3);
        assert!(g.is_independent_set(&r.set));
    }
}
