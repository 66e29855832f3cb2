//! Exact maximum independent set and clique at desk scale.
//!
//! The solver is branch and bound: branch on a highest-degree vertex
//! (include first), prune with a greedy clique cover upper bound, and apply
//! the classic safe degree reductions at every node — isolated and pendant
//! vertices are taken outright, and a degree-2 vertex with non-adjacent
//! neighbors is folded into a merged vertex (shifting the optimum by exactly
//! one). Folding is what makes long subdivision paths and sparse
//! triangle-free instances collapse instead of blowing up the tree.
//!
//! All tie-breaking is by lowest vertex index, so witnesses are reproducible.
//! A node budget turns the solver into an anytime lower bound: when the
//! budget runs out, the best set found so far is returned with `timed_out`
//! set, never an error.

use crate::graph::{bits, Graph, VertexSet};
use thiserror::Error;

/// Default branch-and-bound node budget.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("swap radius t={t} outside the supported range [2, 3]")]
    BadSwapSize { t: usize },
    #[error("set is not independent: edge {u}-{v}")]
    NotIndependent { u: usize, v: usize },
}

/// Outcome of an exact solve. When `timed_out` is set, `best` is still a
/// valid independent set (or clique), just not proven optimal.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub size: usize,
    pub best: VertexSet,
    pub nodes: u64,
    pub timed_out: bool,
}

/// Exact maximum independent set within `budget` branch nodes.
pub fn max_independent_set(g: &Graph, budget: u64) -> OracleResult {
    let mut solver = Solver::new(g, budget);
    solver.warm_start();
    let root = solver.root_state.clone();
    let mut events = Vec::new();
    solver.bb(root, &mut events, 0);
    let members: Vec<usize> = bits::iter_ones(&solver.best_words).collect();
    debug_assert!(members.iter().all(|&v| v < g.n()));
    let best = VertexSet::from_vec(g.n(), members).expect("solver stays in range");
    debug_assert!(g.is_independent_set(&best));
    OracleResult {
        size: best.len(),
        best,
        nodes: solver.nodes,
        timed_out: solver.timed_out,
    }
}

/// Exact maximum clique: maximum independent set of the complement.
pub fn max_clique(g: &Graph, budget: u64) -> OracleResult {
    let res = max_independent_set(&g.complement(), budget);
    debug_assert!(g.is_clique(&res.best));
    res
}

// ---------------------------------------------------------------------------
// solver internals
// ---------------------------------------------------------------------------

/// Mutable adjacency with an alive mask. Fold vertices get fresh ids above
/// the original range; rows of dead vertices go stale, so every neighborhood
/// read masks with `alive`.
#[derive(Clone)]
struct State {
    words: usize,
    rows: Vec<u64>, // cap * words, row-major
    alive: Vec<u64>,
    alive_count: usize,
    next_id: usize,
}

impl State {
    fn new(g: &Graph) -> State {
        // Each fold kills three vertices and births one, so ids never exceed
        // n + n/2 (plus slack for the empty-graph edge case).
        let cap = g.n() + g.n() / 2 + 2;
        let words = bits::words_for(cap);
        let mut st = State {
            words,
            rows: vec![0; cap * words],
            alive: vec![0; words],
            alive_count: g.n(),
            next_id: g.n(),
        };
        for v in 0..g.n() {
            bits::set(&mut st.alive, v);
            for u in g.neighbors(v) {
                bits::set(&mut st.rows[v * words..(v + 1) * words], u);
            }
        }
        st
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    fn deg(&self, v: usize) -> usize {
        bits::intersection_count(self.row(v), &self.alive)
    }

    fn remove(&mut self, v: usize) {
        debug_assert!(bits::get(&self.alive, v));
        bits::clear(&mut self.alive, v);
        self.alive_count -= 1;
    }

    /// Live neighbors of `v` as a fresh mask.
    fn nbhd(&self, v: usize) -> Vec<u64> {
        self.row(v)
            .iter()
            .zip(&self.alive)
            .map(|(r, a)| r & a)
            .collect()
    }

    fn remove_mask(&mut self, mask: &[u64]) {
        for (a, m) in self.alive.iter_mut().zip(mask) {
            *a &= !m;
        }
        self.alive_count = bits::count(&self.alive);
    }

    /// Degree-2 fold of `v` with non-adjacent neighbors `u`, `w`: all three
    /// die and a merged vertex adjacent to their outside neighborhoods is
    /// born. Returns the new id.
    fn fold(&mut self, v: usize, u: usize, w: usize) -> usize {
        let z = self.next_id;
        self.next_id += 1;
        debug_assert!(z * self.words < self.rows.len(), "fold capacity exceeded");
        self.remove(v);
        self.remove(u);
        self.remove(w);
        let merged: Vec<u64> = self
            .row(u)
            .iter()
            .zip(self.row(w))
            .zip(&self.alive)
            .map(|((ru, rw), a)| (ru | rw) & a)
            .collect();
        self.rows[z * self.words..(z + 1) * self.words].copy_from_slice(&merged);
        for x in bits::iter_ones(&merged) {
            let row = &mut self.rows[x * self.words..(x + 1) * self.words];
            bits::set(row, z);
        }
        bits::set(&mut self.alive, z);
        self.alive_count += 1;
        z
    }

    /// Greedy clique cover of the live graph; its size bounds the optimum.
    fn clique_cover_bound(&self) -> usize {
        let mut cliques: Vec<Vec<u64>> = Vec::new();
        for v in bits::iter_ones(&self.alive) {
            let row = self.row(v);
            let fits = cliques
                .iter_mut()
                .find(|c| c.iter().zip(row).all(|(cw, rw)| cw & rw == *cw));
            match fits {
                Some(c) => bits::set(c, v),
                None => {
                    let mut c = vec![0; self.words];
                    bits::set(&mut c, v);
                    cliques.push(c);
                }
            }
        }
        cliques.len()
    }
}

/// Path decisions, replayed backwards to turn a leaf into a vertex set.
enum Event {
    Take(usize),
    Fold {
        z: usize,
        v: usize,
        u: usize,
        w: usize,
    },
}

struct Solver {
    root_state: State,
    capacity_words: usize,
    best_size: usize,
    best_words: Vec<u64>,
    nodes: u64,
    budget: u64,
    timed_out: bool,
}

impl Solver {
    fn new(g: &Graph, budget: u64) -> Solver {
        let root_state = State::new(g);
        let capacity_words = root_state.words;
        Solver {
            root_state,
            capacity_words,
            best_size: 0,
            best_words: vec![0; capacity_words],
            nodes: 0,
            budget,
            timed_out: false,
        }
    }

    /// Seeds the incumbent with the min-degree greedy set so pruning bites
    /// from the first node. Greedy never folds, so ids are original.
    fn warm_start(&mut self) {
        let mut st = self.root_state.clone();
        let mut picked = vec![0u64; self.capacity_words];
        let mut size = 0;
        while st.alive_count > 0 {
            let v = bits::iter_ones(&st.alive)
                .min_by_key(|&v| (st.deg(v), v))
                .expect("nonempty");
            bits::set(&mut picked, v);
            size += 1;
            let mut dead = st.nbhd(v);
            bits::set(&mut dead, v);
            st.remove_mask(&dead);
        }
        self.best_size = size;
        self.best_words = picked;
    }

    fn bb(&mut self, mut st: State, events: &mut Vec<Event>, mut size: usize) {
        if self.timed_out {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.timed_out = true;
            return;
        }
        let events_mark = events.len();

        // reductions to a fixpoint; each one is optimum-preserving
        loop {
            let mut applied = false;
            let scan = st.alive.clone();
            for v in bits::iter_ones(&scan) {
                let d = st.deg(v);
                if d > 2 {
                    continue;
                }
                let nb: Vec<usize> = bits::iter_ones(&st.nbhd(v)).collect();
                match d {
                    0 | 1 => {
                        let mut dead = st.nbhd(v);
                        bits::set(&mut dead, v);
                        st.remove_mask(&dead);
                        events.push(Event::Take(v));
                        size += 1;
                    }
                    2 => {
                        let (u, w) = (nb[0], nb[1]);
                        if bits::get(st.row(u), w) {
                            // triangle: taking v is always safe
                            let mut dead = st.nbhd(v);
                            bits::set(&mut dead, v);
                            st.remove_mask(&dead);
                            events.push(Event::Take(v));
                        } else {
                            let z = st.fold(v, u, w);
                            events.push(Event::Fold { z, v, u, w });
                        }
                        size += 1;
                    }
                    _ => unreachable!(),
                }
                applied = true;
                break; // restart the scan at the lowest index
            }
            if !applied {
                break;
            }
        }

        if st.alive_count == 0 {
            if size > self.best_size {
                self.best_size = size;
                self.best_words = materialize(events, self.capacity_words);
            }
            events.truncate(events_mark);
            return;
        }

        if size + st.clique_cover_bound() <= self.best_size {
            events.truncate(events_mark);
            return;
        }

        let pivot = bits::iter_ones(&st.alive)
            .max_by(|&a, &b| st.deg(a).cmp(&st.deg(b)).then(b.cmp(&a)))
            .expect("nonempty");

        // include the pivot
        let mut with = st.clone();
        let mut dead = with.nbhd(pivot);
        bits::set(&mut dead, pivot);
        with.remove_mask(&dead);
        events.push(Event::Take(pivot));
        self.bb(with, events, size + 1);
        events.pop();

        // exclude the pivot
        st.remove(pivot);
        self.bb(st, events, size);

        events.truncate(events_mark);
    }
}

/// Replays path decisions newest-first: folds translate their merged vertex
/// back into original ids, so the final mask mentions only input vertices.
fn materialize(events: &[Event], words: usize) -> Vec<u64> {
    let mut set = vec![0u64; words];
    for ev in events.iter().rev() {
        match *ev {
            Event::Take(v) => bits::set(&mut set, v),
            Event::Fold { z, v, u, w } => {
                if bits::get(&set, z) {
                    bits::clear(&mut set, z);
                    bits::set(&mut set, u);
                    bits::set(&mut set, w);
                } else {
                    bits::set(&mut set, v);
                }
            }
        }
    }
    set
}

// ---------------------------------------------------------------------------
// cographs
// ---------------------------------------------------------------------------

/// Exact independent set and clique witnesses for a cograph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CographSolution {
    pub alpha: VertexSet,
    pub omega: VertexSet,
}

/// Solves a cograph by its modular structure: a disconnected graph sums
/// independence over components and takes the best clique among them; a
/// co-disconnected graph does the opposite. Returns `None` when some level
/// is both connected and co-connected on two or more vertices — exactly the
/// graphs with an induced path on four vertices. Never wrong, only honest.
pub fn cograph_solve(g: &Graph) -> Option<CographSolution> {
    let verts: Vec<usize> = (0..g.n()).collect();
    let (alpha, omega) = solve_parts(g, &verts)?;
    Some(CographSolution {
        alpha: VertexSet::from_vec(g.n(), alpha).expect("in range"),
        omega: VertexSet::from_vec(g.n(), omega).expect("in range"),
    })
}

fn solve_parts(g: &Graph, verts: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    if verts.is_empty() {
        return Some((vec![], vec![]));
    }
    if verts.len() == 1 {
        return Some((verts.to_vec(), verts.to_vec()));
    }
    let (sub, map) = g.induced(verts);
    let comps = sub.components();
    if comps.len() > 1 {
        let mut alpha = Vec::new();
        let mut omega: Vec<usize> = Vec::new();
        for comp in comps {
            let original: Vec<usize> = comp.iter().map(|&v| map[v]).collect();
            let (a, o) = solve_parts(g, &original)?;
            alpha.extend(a);
            if o.len() > omega.len() {
                omega = o;
            }
        }
        return Some((alpha, omega));
    }
    let co_comps = sub.complement().components();
    if co_comps.len() > 1 {
        let mut alpha: Vec<usize> = Vec::new();
        let mut omega = Vec::new();
        for comp in co_comps {
            let original: Vec<usize> = comp.iter().map(|&v| map[v]).collect();
            let (a, o) = solve_parts(g, &original)?;
            if a.len() > alpha.len() {
                alpha = a;
            }
            omega.extend(o);
        }
        return Some((alpha, omega));
    }
    None
}

// ---------------------------------------------------------------------------
// predicates
// ---------------------------------------------------------------------------

/// Checks independence; on failure returns the lexicographically first
/// violating edge.
pub fn verify_independent(g: &Graph, s: &VertexSet) -> Result<(), OracleError> {
    assert_eq!(s.host_n(), g.n(), "vertex set belongs to a different host");
    match g.find_violating_edge(s) {
        None => Ok(()),
        Some((u, v)) => Err(OracleError::NotIndependent { u, v }),
    }
}

/// Is `s` a fixed point of t-swap local search? True when no independent set
/// `Y` outside `s` of size at most `t` beats its fingerprint in `s`: a swap
/// removing `X = N(Y) ∩ s` and inserting `Y` improves iff `|X| < |Y|`, and
/// any valid improving swap can be normalized to that form.
pub fn is_locally_optimal(g: &Graph, s: &VertexSet, t: usize) -> Result<bool, OracleError> {
    if !(2..=3).contains(&t) {
        return Err(OracleError::BadSwapSize { t });
    }
    verify_independent(g, s)?;
    let s_words = s.to_words();
    let outside: Vec<usize> = (0..g.n()).filter(|&v| !s.contains(v)).collect();
    let mut y = Vec::new();
    fn dfs(
        g: &Graph,
        outside: &[usize],
        start: usize,
        y: &mut Vec<usize>,
        t: usize,
        s_words: &[u64],
    ) -> bool {
        if !y.is_empty() {
            // |N(Y) ∩ s| < |Y| means swapping in Y wins
            let mut touched = vec![0u64; s_words.len()];
            for &v in y.iter() {
                for (tw, (rw, sw)) in touched.iter_mut().zip(g.row(v).iter().zip(s_words)) {
                    *tw |= rw & sw;
                }
            }
            if bits::count(&touched) < y.len() {
                return false;
            }
        }
        if y.len() == t {
            return true;
        }
        for (i, &v) in outside.iter().enumerate().skip(start) {
            if y.iter().any(|&u| g.has_edge(u, v)) {
                continue; // Y itself must stay independent
            }
            y.push(v);
            let ok = dfs(g, outside, i + 1, y, t, s_words);
            y.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    Ok(dfs(g, &outside, 0, &mut y, t, &s_words))
}
