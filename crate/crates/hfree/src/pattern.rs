//! Small fixed patterns and induced-copy search.
//!
//! A [`Pattern`] is a graph on at most [`MAX_PATTERN_VERTICES`] vertices,
//! optionally with a distinguished root vertex. Copies are always *induced*:
//! a copy of `h` in `g` is a vertex subset of `g` whose induced subgraph is
//! isomorphic to `h`. Counting is over unlabeled subsets, not embeddings, so
//! automorphisms of `h` never inflate a count.
//!
//! The search is a backtracking enumeration of host subsets in ascending
//! vertex order. A partial subset survives only while its induced subgraph
//! still embeds into the pattern; that prune is exact (an induced subgraph of
//! an induced copy always embeds), so enumeration visits only viable
//! branches and counts are exact up to the caller's cap.

use crate::graph::{Graph, GraphError, VertexSet};
use std::fmt;
use thiserror::Error;

/// Hard cap on pattern size; everything here is meant for small fixed `h`.
pub const MAX_PATTERN_VERTICES: usize = 10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern has {n} vertices, over the limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("pattern must have at least one vertex")]
    Empty,
    #[error("root {root} out of range for a pattern on {n} vertices")]
    BadRoot { root: usize, n: usize },
    #[error("operation requires a rooted pattern")]
    NoRoot,
    #[error("unknown pattern name {name:?}")]
    UnknownName { name: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A small pattern graph, optionally rooted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    graph: Graph,
    root: Option<usize>,
    name: Option<String>,
}

impl Pattern {
    pub fn new(graph: Graph, root: Option<usize>) -> Result<Self, PatternError> {
        if graph.n() == 0 {
            return Err(PatternError::Empty);
        }
        if graph.n() > MAX_PATTERN_VERTICES {
            return Err(PatternError::TooLarge {
                n: graph.n(),
                max: MAX_PATTERN_VERTICES,
            });
        }
        if let Some(r) = root {
            if r >= graph.n() {
                return Err(PatternError::BadRoot {
                    root: r,
                    n: graph.n(),
                });
            }
        }
        Ok(Pattern {
            graph,
            root,
            name: None,
        })
    }

    fn with_name(mut self, name: String) -> Self {
        self.name = Some(name);
        self
    }

    /// Returns the same pattern rooted at `r`.
    pub fn rooted(mut self, r: usize) -> Result<Self, PatternError> {
        if r >= self.graph.n() {
            return Err(PatternError::BadRoot {
                root: r,
                n: self.graph.n(),
            });
        }
        self.root = Some(r);
        Ok(self)
    }

    /// Looks a pattern up by name. Known names:
    /// `K<n>` (clique), `P<n>` (path), `C<n>` (cycle, n >= 3), `K<s>,<t>`
    /// (complete bipartite), `claw`, `fork`, and spiders `S<i>,<j>,<k>` (three
    /// legs with i, j, k edges joined at a center; braces as in `S_{1,1,2}`
    /// are accepted). An optional `@r` suffix roots the pattern at vertex `r`,
    /// e.g. `P3@0`.
    pub fn named(name: &str) -> Result<Self, PatternError> {
        let (base, root) = match name.split_once('@') {
            Some((b, r)) => {
                let root = r.parse::<usize>().map_err(|_| PatternError::UnknownName {
                    name: name.to_string(),
                })?;
                (b, Some(root))
            }
            None => (name, None),
        };
        let p = Self::named_unrooted(base)?;
        match root {
            Some(r) => p.rooted(r),
            None => Ok(p),
        }
    }

    fn named_unrooted(name: &str) -> Result<Self, PatternError> {
        let unknown = || PatternError::UnknownName {
            name: name.to_string(),
        };
        let build = |g: Graph| Pattern::new(g, None).map(|p| p.with_name(name.to_string()));
        match name {
            "claw" => return build(Graph::biclique(1, 3)),
            "fork" => {
                return build(Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap())
            }
            _ => {}
        }
        let (kind, rest) = name.split_at(1);
        // Spider names may brace their leg list: S_{i,j,k}.
        let rest = if kind == "S" {
            rest.strip_prefix("_{")
                .and_then(|r| r.strip_suffix('}'))
                .unwrap_or(rest)
        } else {
            rest
        };
        let parts: Vec<usize> = rest
            .split(',')
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| unknown())?;
        match (kind, parts.as_slice()) {
            ("K", [n]) if *n >= 1 => build(Graph::complete(*n)),
            ("K", [s, t]) if *s >= 1 && *t >= 1 => build(Graph::biclique(*s, *t)),
            ("P", [n]) if *n >= 1 => build(Graph::path(*n)),
            ("C", [n]) if *n >= 3 => build(Graph::cycle(*n)),
            ("S", [i, j, k]) => build(spider(*i, *j, *k)),
            _ => Err(unknown()),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// The pattern with its root removed; requires a root.
    pub(crate) fn minus_root(&self) -> Result<Graph, PatternError> {
        let r = self.root.ok_or(PatternError::NoRoot)?;
        let keep: Vec<usize> = (0..self.graph.n()).filter(|&v| v != r).collect();
        Ok(self.graph.induced(&keep).0)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{n}")?,
            None => write!(f, "pattern(n={}, m={})", self.graph.n(), self.graph.m())?,
        }
        if let Some(r) = self.root {
            write!(f, "@{r}")?;
        }
        Ok(())
    }
}

/// Three paths with `i`, `j`, `k` edges glued at a shared center (vertex 0).
/// A zero-length leg contributes nothing, so e.g. legs (0, j, k) give a path.
fn spider(i: usize, j: usize, k: usize) -> Graph {
    let mut edges = Vec::new();
    let mut next = 1;
    for len in [i, j, k] {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::from_edges(next, &edges).expect("spider construction is simple")
}

// ---------------------------------------------------------------------------
// induced embedding on <= 16 vertices
// ---------------------------------------------------------------------------

/// Adjacency of a tiny graph as bitmask rows; only used for pattern-sized
/// graphs and partial host subsets.
#[derive(Clone, Copy)]
struct Mini {
    n: usize,
    adj: [u16; 16],
}

impl Mini {
    fn of_graph(g: &Graph) -> Mini {
        debug_assert!(g.n() <= 16);
        let mut m = Mini {
            n: g.n(),
            adj: [0; 16],
        };
        for (u, v) in g.edges() {
            m.adj[u] |= 1 << v;
            m.adj[v] |= 1 << u;
        }
        m
    }

    /// Induced subgraph of `host` on `verts`, in the given vertex order.
    fn of_subset(host: &Graph, verts: &[usize]) -> Mini {
        debug_assert!(verts.len() <= 16);
        let mut m = Mini {
            n: verts.len(),
            adj: [0; 16],
        };
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if host.has_edge(u, v) {
                    m.adj[i] |= 1 << j;
                    m.adj[j] |= 1 << i;
                }
            }
        }
        m
    }

    fn deg(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }
}

/// Is there an injective map of `sub` into `into` preserving adjacency *and*
/// non-adjacency? With equal sizes this is an isomorphism test. `fixed`
/// pins sub vertex `fixed.0` to into vertex `fixed.1`.
fn embeds(sub: &Mini, into: &Mini, fixed: Option<(usize, usize)>) -> bool {
    if sub.n > into.n {
        return false;
    }
    let mut assign = [usize::MAX; 16];
    rec_embed(sub, into, 0, 0, &mut assign, fixed)
}

fn rec_embed(
    sub: &Mini,
    into: &Mini,
    pos: usize,
    used: u16,
    assign: &mut [usize; 16],
    fixed: Option<(usize, usize)>,
) -> bool {
    if pos == sub.n {
        return true;
    }
    for cand in 0..into.n {
        if used & (1 << cand) != 0 {
            continue;
        }
        if let Some((fs, ft)) = fixed {
            // the pinned target is reserved for the pinned source
            if (pos == fs) != (cand == ft) {
                continue;
            }
        }
        if into.deg(cand) < sub.deg(pos) {
            continue;
        }
        let ok = (0..pos).all(|p| {
            let in_sub = sub.adj[pos] >> p & 1 == 1;
            let in_into = into.adj[cand] >> assign[p] & 1 == 1;
            in_sub == in_into
        });
        if ok {
            assign[pos] = cand;
            if rec_embed(sub, into, pos + 1, used | 1 << cand, assign, fixed) {
                return true;
            }
        }
    }
    false
}

/// Isomorphism test for small graphs (both sides at most 16 vertices).
pub fn isomorphic(a: &Graph, b: &Graph) -> Result<bool, PatternError> {
    const MAX: usize = 16;
    if a.n() > MAX {
        return Err(PatternError::TooLarge { n: a.n(), max: MAX });
    }
    if b.n() > MAX {
        return Err(PatternError::TooLarge { n: b.n(), max: MAX });
    }
    if a.n() != b.n() || a.m() != b.m() {
        return Ok(false);
    }
    Ok(embeds(&Mini::of_graph(a), &Mini::of_graph(b), None))
}

// ---------------------------------------------------------------------------
// subset enumeration
// ---------------------------------------------------------------------------

struct SubsetSearch<'a> {
    host: &'a Graph,
    pat: Mini,
    k: usize,
    chosen: Vec<usize>,
    partial: Mini,
}

impl<'a> SubsetSearch<'a> {
    fn new(host: &'a Graph, pattern: &Graph, k: usize) -> Self {
        SubsetSearch {
            host,
            pat: Mini::of_graph(pattern),
            k,
            chosen: Vec::with_capacity(k),
            partial: Mini { n: 0, adj: [0; 16] },
        }
    }

    /// Visits every k-subset whose induced subgraph is isomorphic to the
    /// pattern, in lexicographic order, until `visit` returns `false`.
    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        self.dfs(0, visit);
    }

    fn dfs(&mut self, start: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let depth = self.chosen.len();
        if depth == self.k {
            return visit(&self.chosen);
        }
        let still_needed = self.k - depth;
        if self.host.n() < still_needed || start > self.host.n() - still_needed {
            return true;
        }
        for v in start..=self.host.n() - still_needed {
            // extend the partial adjacency matrix by v
            let mut row = 0u16;
            for (i, &u) in self.chosen.iter().enumerate() {
                if self.host.has_edge(u, v) {
                    row |= 1 << i;
                }
            }
            self.partial.adj[depth] = row;
            for i in 0..depth {
                if row >> i & 1 == 1 {
                    self.partial.adj[i] |= 1 << depth;
                }
            }
            self.partial.n = depth + 1;
            self.chosen.push(v);
            // exact prune: a subset of an induced copy embeds into the pattern
            let viable = embeds(&self.partial, &self.pat, None);
            let keep_going = !viable || self.dfs(v + 1, visit);
            self.chosen.pop();
            self.partial.n = depth;
            self.partial.adj[depth] = 0;
            for i in 0..depth {
                self.partial.adj[i] &= !(1 << depth);
            }
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// Does `host` contain an induced copy of `h`?
pub fn contains_induced(host: &Graph, h: &Pattern) -> bool {
    count_induced(host, h, 1) > 0
}

/// Number of vertex subsets of `host` inducing a copy of `h`, capped at
/// `cap` (the search stops as soon as the cap is reached).
pub fn count_induced(host: &Graph, h: &Pattern, cap: usize) -> usize {
    if cap == 0 || h.n() > host.n() {
        return 0;
    }
    let mut count = 0usize;
    let mut search = SubsetSearch::new(host, h.graph(), h.n());
    search.run(&mut |_subset| {
        count += 1;
        count < cap
    });
    count
}

/// A kernel plus the vertices that each complete it to a rooted copy of the
/// pattern: for every `x` in `extensions`, `kernel + x` induces the pattern
/// with `x` playing the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateWitness {
    pub kernel: VertexSet,
    pub extensions: VertexSet,
}

/// Finds the lexicographically first kernel (a subset inducing the pattern
/// minus its root) that at least `threshold` vertices extend to a rooted
/// copy. Returns `None` when no kernel qualifies.
pub fn find_candidates(
    host: &Graph,
    h1: &Pattern,
    threshold: usize,
) -> Result<Option<CandidateWitness>, PatternError> {
    let root = h1.root().ok_or(PatternError::NoRoot)?;
    let kernel_graph = h1.minus_root()?;
    let k = kernel_graph.n();
    let h1_mini = Mini::of_graph(h1.graph());
    let mut found: Option<CandidateWitness> = None;
    let mut search = SubsetSearch::new(host, &kernel_graph, k);
    search.run(&mut |kernel| {
        let mut extensions = Vec::new();
        let mut verts = kernel.to_vec();
        verts.push(0);
        for x in 0..host.n() {
            if kernel.binary_search(&x).is_ok() {
                continue;
            }
            *verts.last_mut().unwrap() = x;
            let sub = Mini::of_subset(host, &verts);
            // x sits at position k; it must land on the root
            if embeds(&sub, &h1_mini, Some((k, root))) {
                extensions.push(x);
            }
        }
        if extensions.len() >= threshold {
            found = Some(CandidateWitness {
                kernel: VertexSet::from_vec(host.n(), kernel.to_vec()).expect("kernel in range"),
                extensions: VertexSet::from_vec(host.n(), extensions).expect("extensions in range"),
            });
            return false; // first qualifying kernel wins
        }
        true
    });
    Ok(found)
}

/// Composes two patterns: the root of `h1` is replaced by all of `h2`, and
/// every former neighbor of the root becomes adjacent to every `h2` vertex.
///
/// Vertex order of the result: the non-root vertices of `h1` in their
/// original relative order, then the vertices of `h2`. The result is
/// unrooted.
pub fn substitute(h1: &Pattern, h2: &Pattern) -> Result<Pattern, PatternError> {
    let root = h1.root().ok_or(PatternError::NoRoot)?;
    let n1 = h1.n();
    let n2 = h2.n();
    let n = n1 - 1 + n2;
    if n > MAX_PATTERN_VERTICES {
        return Err(PatternError::TooLarge {
            n,
            max: MAX_PATTERN_VERTICES,
        });
    }
    // old h1 vertex -> new index, skipping the root
    let mut remap = vec![usize::MAX; n1];
    let mut next = 0;
    for (v, slot) in remap.iter_mut().enumerate() {
        if v != root {
            *slot = next;
            next += 1;
        }
    }
    let mut edges = Vec::new();
    for (u, v) in h1.graph().edges() {
        if u != root && v != root {
            edges.push((remap[u], remap[v]));
        }
    }
    for (x, y) in h2.graph().edges() {
        edges.push((n1 - 1 + x, n1 - 1 + y));
    }
    for u in h1.graph().neighbors(root) {
        for x in 0..n2 {
            edges.push((remap[u], n1 - 1 + x));
        }
    }
    let g = Graph::from_edges(n, &edges).expect("substitution preserves simplicity");
    Pattern::new(g, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(name: &str) -> Pattern {
        Pattern::named(name).unwrap()
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

    /// Independent counting oracle: plain enumeration of all k-subsets with a
    /// permutation-based isomorphism check. Only for tiny hosts.
    fn count_by_permutations(host: &Graph, h: &Graph) -> usize {
        let k = h.n();
        let mut subsets = vec![];
        enumerate_subsets(host.n(), k, &mut vec![], 0, &mut subsets);
        subsets
            .into_iter()
            .filter(|s| {
                let (sub, _) = host.induced(s);
                let mut perm: Vec<usize> = (0..k).collect();
                permutations_match(&sub, h, &mut perm, 0)
            })
            .count()
    }

    fn enumerate_subsets(
        n: usize,
        k: usize,
        cur: &mut Vec<usize>,
        start: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            enumerate_subsets(n, k, cur, v + 1, out);
            cur.pop();
        }
    }

    fn permutations_match(a: &Graph, b: &Graph, perm: &mut Vec<usize>, at: usize) -> bool {
        let k = perm.len();
        if at == k {
            return (0..k)
                .all(|u| (u + 1..k).all(|v| a.has_edge(u, v) == b.has_edge(perm[u], perm[v])));
        }
        for i in at..k {
            perm.swap(at, i);
            if permutations_match(a, b, perm, at + 1) {
                perm.swap(at, i);
                return true;
            }
            perm.swap(at, i);
        }
        false
    }

    #[test]
    fn registry_shapes() {
        assert_eq!(pat("K3").graph(), &Graph::complete(3));
        assert_eq!(pat("P5").graph(), &Graph::path(5));
        assert_eq!(pat("C6").graph(), &Graph::cycle(6));
        assert_eq!(pat("K2,3").graph(), &Graph::biclique(2, 3));
        assert_eq!(pat("claw").graph(), &Graph::biclique(1, 3));
        assert_eq!(pat("S1,1,1").graph(), &Graph::biclique(1, 3));
        assert_eq!(pat("fork").graph(), pat("S1,1,2").graph());
        assert_eq!(pat("S_{1,1,2}").graph(), pat("S1,1,2").graph());
        assert!(isomorphic(pat("S0,1,2").graph(), &Graph::path(4)).unwrap());
        assert_eq!(pat("P3@2").root(), Some(2));
        assert!(Pattern::named("K11").is_err());
        assert!(Pattern::named("C2").is_err());
        assert!(Pattern::named("claw@9").is_err());
        assert!(Pattern::named("X3").is_err());
    }

    #[test]
    fn contains_basics() {
        assert!(contains_induced(&Graph::complete(4), &pat("K3")));
        assert!(!contains_induced(&Graph::complete(3), &pat("P3")));
        assert!(contains_induced(&Graph::biclique(2, 2), &pat("C4")));
        assert!(!contains_induced(&Graph::cycle(5), &pat("K3")));
        assert!(contains_induced(&Graph::path(4), &pat("P4")));
        assert!(!contains_induced(&Graph::path(3), &pat("P4")));
    }

    #[test]
    fn count_small_cases() {
        assert_eq!(count_induced(&Graph::complete(4), &pat("K3"), 10), 4);
        assert_eq!(count_induced(&Graph::cycle(5), &pat("K3"), 10), 0);
        assert_eq!(count_induced(&Graph::cycle(5), &pat("P3"), 100), 5);
        assert_eq!(count_induced(&Graph::complete(4), &pat("K3"), 2), 2); // cap
        assert_eq!(count_induced(&Graph::complete(2), &pat("K3"), 5), 0); // host too small
    }

    #[test]
    fn petersen_has_twelve_induced_c5() {
        let p = petersen();
        let c5 = pat("C5");
        assert_eq!(count_by_permutations(&p, c5.graph()), 12);
        assert_eq!(count_induced(&p, &c5, 1000), 12);
    }

    #[test]
    fn count_agrees_with_permutation_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let shapes = ["K3", "P4", "C4", "claw", "P3"];
        for trial in 0..40 {
            let n = 4 + trial % 5;
            let mut edges = vec![];
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(0.45) {
                        edges.push((u, v));
                    }
                }
            }
            let host = Graph::from_edges(n, &edges).unwrap();
            for name in shapes {
                let h = pat(name);
                let fast = count_induced(&host, &h, usize::MAX);
                let slow = count_by_permutations(&host, h.graph());
                assert_eq!(fast, slow, "count mismatch on {name} (trial {trial})");
                assert_eq!(fast > 0, contains_induced(&host, &h));
            }
        }
    }

    #[test]
    fn find_candidates_on_star() {
        // Star with center 0: kernel {0,1} (an edge) is completed to a rooted
        // path by every other leaf.
        let host = Graph::star(4);
        let h1 = pat("P3@2");
        let w = find_candidates(&host, &h1, 3).unwrap().unwrap();
        assert_eq!(w.kernel.members(), &[0, 1]);
        assert_eq!(w.extensions.members(), &[2, 3, 4]);
    }

    #[test]
    fn find_candidates_none_and_errors() {
        let host = Graph::edgeless(5);
        assert_eq!(find_candidates(&host, &pat("K2@0"), 1).unwrap(), None);
        assert_eq!(
            find_candidates(&Graph::complete(2), &pat("K3@0"), 1).unwrap(),
            None
        );
        assert!(matches!(
            find_candidates(&host, &pat("K2"), 1),
            Err(PatternError::NoRoot)
        ));
    }

    #[test]
    fn find_candidates_on_clique() {
        let w = find_candidates(&Graph::complete(5), &pat("K3@0"), 3)
            .unwrap()
            .unwrap();
        assert_eq!(w.kernel.members(), &[0, 1]);
        assert_eq!(w.extensions.members(), &[2, 3, 4]);
        // every extension really induces the rooted pattern
        for x in w.extensions.iter() {
            let mut verts = w.kernel.members().to_vec();
            verts.push(x);
            verts.sort_unstable();
            let (sub, _) = Graph::complete(5).induced(&verts);
            assert!(isomorphic(&sub, &Graph::complete(3)).unwrap());
        }
    }

    #[test]
    fn substitution_shapes() {
        let k4 = substitute(&pat("K3@0"), &pat("K2")).unwrap();
        assert_eq!(k4.graph(), &Graph::complete(4));
        let k2 = substitute(&pat("K2@0"), &pat("K1")).unwrap();
        assert_eq!(k2.graph(), &Graph::complete(2));
        // middle-rooted path with two isolated vertices gives a 4-cycle
        let mid = Pattern::new(Graph::path(3), Some(1)).unwrap();
        let e2 = Pattern::new(Graph::edgeless(2), None).unwrap();
        let c4 = substitute(&mid, &e2).unwrap();
        assert_eq!(c4.graph(), &Graph::biclique(2, 2));
        assert_eq!(c4.root(), None);
    }

    #[test]
    fn substitution_size_checks() {
        assert!(substitute(&pat("K2"), &pat("K2")).is_err()); // no root
        let big = substitute(&pat("K7@0"), &pat("K5"));
        assert!(matches!(big, Err(PatternError::TooLarge { n: 11, .. })));
    }

    #[test]
    fn isomorphism_helper() {
        assert!(isomorphic(&Graph::cycle(5), &Graph::cycle(5).complement()).unwrap());
        assert!(!isomorphic(&Graph::path(4), &Graph::star(3)).unwrap());
        assert!(isomorphic(&Graph::biclique(2, 2), &Graph::cycle(4)).unwrap());
    }
}
