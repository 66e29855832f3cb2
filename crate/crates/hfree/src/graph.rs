//! Undirected simple graphs with bitset adjacency rows.
//!
//! Vertices are `0..n`. The adjacency matrix is stored as `n` rows of
//! `ceil(n/64)` words each, so neighborhood intersections, degree counts, and
//! independence checks are word-parallel. Graphs are immutable once built;
//! every transform returns a new graph.
//!
//! Indexing conventions used by the whole crate:
//! * every operation that derives a graph from another one documents its
//!   vertex numbering, and * `induced` returns the (strictly increasing)
//!   mapping from new indices back to old ones so results can be translated.

use std::fmt;

use thiserror::Error;

/// Construction errors. Graphs are simple: loops and parallel edges are
/// rejected, not normalized away.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    OutOfRange { v: usize, n: usize },
    #[error("graphs have different vertex counts ({a} vs {b})")]
    SizeMismatch { a: usize, b: usize },
    #[error("result would have {n} vertices, over the limit of {max}")]
    TooLarge { n: usize, max: usize },
}

// ---------------------------------------------------------------------------
// word-level helpers shared by the solver modules
// ---------------------------------------------------------------------------

pub(crate) mod bits {
    /// Number of 64-bit words needed for `n` bits.
    pub fn words_for(n: usize) -> usize {
        n.div_ceil(64)
    }

    pub fn get(row: &[u64], i: usize) -> bool {
        row[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(row: &mut [u64], i: usize) {
        row[i / 64] |= 1 << (i % 64);
    }

    pub fn clear(row: &mut [u64], i: usize) {
        row[i / 64] &= !(1 << (i % 64));
    }

    pub fn count(row: &[u64]) -> usize {
        row.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersection_count(a: &[u64], b: &[u64]) -> usize {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x & y).count_ones() as usize)
            .sum()
    }

    pub fn intersects(a: &[u64], b: &[u64]) -> bool {
        a.iter().zip(b).any(|(x, y)| x & y != 0)
    }

    /// Ascending indices of set bits.
    pub fn iter_ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
        row.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

// ---------------------------------------------------------------------------
// VertexSet
// ---------------------------------------------------------------------------

/// A set of vertices of some host graph: sorted, deduplicated, and bounded by
/// the host's vertex count. Witnesses (independent sets, cliques, kernels)
/// are always carried as `VertexSet`s so their host is unambiguous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    members: Vec<usize>,
    host_n: usize,
}

impl VertexSet {
    pub fn empty(host_n: usize) -> Self {
        VertexSet {
            members: Vec::new(),
            host_n,
        }
    }

    pub fn singleton(host_n: usize, v: usize) -> Result<Self, GraphError> {
        Self::from_vec(host_n, vec![v])
    }

    /// All vertices of the host.
    pub fn full(host_n: usize) -> Self {
        VertexSet {
            members: (0..host_n).collect(),
            host_n,
        }
    }

    /// Sorts and deduplicates; rejects out-of-range members.
    pub fn from_vec(host_n: usize, mut members: Vec<usize>) -> Result<Self, GraphError> {
        members.sort_unstable();
        members.dedup();
        if let Some(&v) = members.iter().find(|&&v| v >= host_n) {
            return Err(GraphError::OutOfRange { v, n: host_n });
        }
        Ok(VertexSet { members, host_n })
    }

    pub fn host_n(&self) -> usize {
        self.host_n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Members in ascending order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.host_n, other.host_n);
        let mut m = self.members.clone();
        m.extend_from_slice(&other.members);
        VertexSet::from_vec(self.host_n, m).expect("members already validated")
    }

    pub fn minus(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.host_n, other.host_n);
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&v| !other.contains(v))
            .collect();
        VertexSet {
            members,
            host_n: self.host_n,
        }
    }

    /// Set members as bitset words sized for the host.
    pub(crate) fn to_words(&self) -> Vec<u64> {
        let mut row = vec![0u64; bits::words_for(self.host_n)];
        for &v in &self.members {
            bits::set(&mut row, v);
        }
        row
    }

    /// Translates members through an index map (new index -> old index).
    /// Used to lift a result computed on an induced subgraph back to its host.
    pub fn mapped(&self, map: &[usize], new_host_n: usize) -> VertexSet {
        let members: Vec<usize> = self.members.iter().map(|&v| map[v]).collect();
        VertexSet::from_vec(new_host_n, members).expect("map must stay in range")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.iter() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

/// Immutable undirected simple graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    /// Row-major adjacency bits: row v occupies `bits[v*words..(v+1)*words]`.
    bits: Vec<u64>,
    m: usize,
}

/// `Debug` prints the edge list, which is short at the scales this crate
/// targets and far more legible than raw words.
impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges=[", self.n, self.m)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Self {
        let words = bits::words_for(n);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
            m: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::edgeless(n);
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Validating insertion; only used during construction.
    fn insert_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::OutOfRange { v: u, n: self.n });
        }
        if v >= self.n {
            return Err(GraphError::OutOfRange { v, n: self.n });
        }
        if u == v {
            return Err(GraphError::SelfLoop { v });
        }
        if self.has_edge(u, v) {
            let (u, v) = (u.min(v), u.max(v));
            return Err(GraphError::DuplicateEdge { u, v });
        }
        self.insert_edge_unchecked(u, v);
        Ok(())
    }

    fn insert_edge_unchecked(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n && !self.has_edge(u, v));
        let w = self.words;
        bits::set(&mut self.bits[u * w..(u + 1) * w], v);
        bits::set(&mut self.bits[v * w..(v + 1) * w], u);
        self.m += 1;
    }

    // -- named constructors --------------------------------------------------

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::edgeless(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge_unchecked(u, v);
            }
        }
        g
    }

    /// Cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Graph::edgeless(n);
        for v in 0..n {
            g.insert_edge_unchecked(v, (v + 1) % n);
        }
        g
    }

    /// Path `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::edgeless(n);
        for v in 1..n {
            g.insert_edge_unchecked(v - 1, v);
        }
        g
    }

    /// Complete bipartite graph: side A is `0..s`, side B is `s..s+t`.
    pub fn biclique(s: usize, t: usize) -> Self {
        let mut g = Graph::edgeless(s + t);
        for u in 0..s {
            for v in s..s + t {
                g.insert_edge_unchecked(u, v);
            }
        }
        g
    }

    /// Star with the center at vertex 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Graph::biclique(1, leaves)
    }

    // -- accessors -----------------------------------------------------------

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        bits::get(self.row(u), v)
    }

    pub fn degree(&self, v: usize) -> usize {
        bits::count(self.row(v))
    }

    /// Adjacency row of `v` as raw words.
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits::iter_ones(self.row(v))
    }

    /// Edges as `(u, v)` with `u < v`, ascending lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// True when no two members of `set` are adjacent.
    pub fn is_independent_set(&self, set: &VertexSet) -> bool {
        self.find_violating_edge(set).is_none()
    }

    /// First edge inside `set` (lexicographic), if any.
    pub fn find_violating_edge(&self, set: &VertexSet) -> Option<(usize, usize)> {
        debug_assert_eq!(set.host_n(), self.n);
        let members = set.members();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if self.has_edge(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let members = set.members();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// Connected components, each sorted ascending, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = vec![start];
            while let Some(u) = queue.pop() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    // -- transforms ----------------------------------------------------------

    /// Complement graph: same vertices, edges flipped.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::edgeless(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.insert_edge_unchecked(u, v);
                }
            }
        }
        g
    }

    /// Subgraph induced by `verts` (must be sorted, unique, in range).
    /// Returns the subgraph and the map from new index to old index; the map
    /// is strictly increasing, so relative vertex order is preserved.
    pub fn induced(&self, verts: &[usize]) -> (Graph, Vec<usize>) {
        debug_assert!(verts.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(verts.iter().all(|&v| v < self.n));
        let mut g = Graph::edgeless(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.insert_edge_unchecked(i, j);
                }
            }
        }
        (g, verts.to_vec())
    }

    /// Subgraph induced by a `VertexSet`.
    pub fn induced_by(&self, set: &VertexSet) -> (Graph, Vec<usize>) {
        self.induced(set.members())
    }

    /// Replaces every edge by a path with `2c` internal vertices, which shifts
    /// the independence number by exactly `c * m` and otherwise preserves it.
    ///
    /// Original vertices keep their indices. Edges are processed in sorted
    /// order; the j-th edge (0-based) gets internal vertices
    /// `n + 2cj .. n + 2cj + 2c - 1`, in path order from its lower endpoint.
    /// `c = 0` returns the graph unchanged.
    pub fn subdivide_even(&self, c: usize) -> Graph {
        if c == 0 {
            return self.clone();
        }
        let n2 = self.n + 2 * c * self.m;
        let mut g = Graph::edgeless(n2);
        let mut next = self.n;
        for (u, v) in self.edges() {
            let mut prev = u;
            for _ in 0..2 * c {
                g.insert_edge_unchecked(prev, next);
                prev = next;
                next += 1;
            }
            g.insert_edge_unchecked(prev, v);
        }
        debug_assert_eq!(next, n2);
        g
    }

    /// Lexicographic product: vertex `(u, x)` gets index `u * h.n() + x`;
    /// `(u, x)` and `(v, y)` are adjacent iff `uv` is an edge of `self`, or
    /// `u = v` and `xy` is an edge of `h`. The independence number of the
    /// product is the product of the independence numbers.
    pub fn lex_product(&self, h: &Graph) -> Result<Graph, GraphError> {
        const MAX: usize = 10_000;
        let n2 = self.n * h.n();
        if n2 > MAX {
            return Err(GraphError::TooLarge { n: n2, max: MAX });
        }
        let hn = h.n();
        let mut g = Graph::edgeless(n2);
        for u in 0..self.n {
            for (x, y) in h.edges() {
                g.insert_edge_unchecked(u * hn + x, u * hn + y);
            }
            for v in self.neighbors(u).filter(|&v| v > u) {
                for x in 0..hn {
                    for y in 0..hn {
                        g.insert_edge_unchecked(u * hn + x, v * hn + y);
                    }
                }
            }
        }
        Ok(g)
    }

    /// Graph on the same vertices keeping only edges present in both inputs.
    pub fn intersect(&self, other: &Graph) -> Result<Graph, GraphError> {
        if self.n != other.n {
            return Err(GraphError::SizeMismatch {
                a: self.n,
                b: other.n,
            });
        }
        let mut g = Graph::edgeless(self.n);
        for (u, v) in self.edges() {
            if other.has_edge(u, v) {
                g.insert_edge_unchecked(u, v);
            }
        }
        Ok(g)
    }

    // -- cycle metrics ---------------------------------------------------------

    /// Length of a shortest cycle, or `None` for acyclic graphs.
    pub fn girth(&self) -> Option<usize> {
        // BFS from every root; each non-tree edge (u, w) closes a walk of
        // length dist(u) + dist(w) + 1 that traverses that edge exactly once,
        // so it contains a cycle no longer than the walk. A shortest cycle
        // through the root is always detected at its middle edge with the
        // exact length, hence the minimum over all roots is exact.
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = Vec::with_capacity(self.n);
        for root in 0..self.n {
            dist.fill(usize::MAX);
            parent.fill(usize::MAX);
            queue.clear();
            dist[root] = 0;
            queue.push(root);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                for w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push(w);
                    } else if parent[u] != w {
                        let cand = dist[u] + dist[w] + 1;
                        if best.is_none_or(|b| cand < b) {
                            best = Some(cand);
                        }
                    }
                }
            }
        }
        best
    }

    /// Length of a shortest odd cycle, or `None` for bipartite graphs.
    pub fn odd_girth(&self) -> Option<usize> {
        // Same BFS sweep, but only edges joining two vertices at equal depth
        // matter: such an edge closes an odd walk of length 2*depth + 1, and
        // every odd closed walk contains an odd cycle no longer than itself.
        // Around a shortest odd cycle through the root the depth parity must
        // break at some edge, so the minimum over roots is exact.
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = Vec::with_capacity(self.n);
        for root in 0..self.n {
            dist.fill(usize::MAX);
            queue.clear();
            dist[root] = 0;
            queue.push(root);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                for w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push(w);
                    } else if dist[w] == dist[u] {
                        let cand = 2 * dist[u] + 1;
                        if best.is_none_or(|b| cand < b) {
                            best = Some(cand);
                        }
                    }
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

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
            edges.push((v, (v + 1) % 5)); // outer 5-cycle
            edges.push((v, v + 5)); // spoke
            edges.push((v + 5, (v + 2) % 5 + 5)); // inner pentagram
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 0)]),
            Err(GraphError::SelfLoop { v: 0 })
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { u: 0, v: 1 })
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::OutOfRange { v: 3, n: 3 })
        );
    }

    #[test]
    fn degrees_and_edges() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.neighbors(2).collect::<Vec<_>>(), vec![1, 3]);
    }

    #[test]
    fn complement_of_complete_is_edgeless() {
        let g = Graph::complete(3).complement();
        assert_eq!(g.m(), 0);
        assert_eq!(g.n(), 3);
    }

    #[test]
    fn complement_is_an_involution() {
        for seed in 0..20 {
            let g = gnp(1 + (seed as usize % 17), 0.4, seed);
            assert_eq!(g.complement().complement(), g);
        }
    }

    #[test]
    fn complement_of_cycle5_is_cycle5_shape() {
        // C5 is self-complementary: same degree sequence and girth.
        let c = Graph::cycle(5).complement();
        assert_eq!(c.m(), 5);
        assert!((0..5).all(|v| c.degree(v) == 2));
        assert_eq!(c.girth(), Some(5));
    }

    #[test]
    fn induced_preserves_relative_order() {
        let g = Graph::cycle(6);
        let (sub, map) = g.induced(&[1, 2, 4]);
        assert_eq!(map, vec![1, 2, 4]);
        assert_eq!(sub.m(), 1); // only 1-2 survives
        assert!(sub.has_edge(0, 1));
    }

    #[test]
    fn girth_basics() {
        assert_eq!(Graph::cycle(5).girth(), Some(5));
        assert_eq!(Graph::path(7).girth(), None);
        assert_eq!(Graph::complete(4).girth(), Some(3));
        assert_eq!(Graph::biclique(2, 3).girth(), Some(4));
        assert_eq!(petersen().girth(), Some(5));
    }

    #[test]
    fn odd_girth_basics() {
        assert_eq!(Graph::cycle(6).odd_girth(), None);
        assert_eq!(Graph::cycle(5).odd_girth(), Some(5));
        assert_eq!(petersen().odd_girth(), Some(5));
        assert_eq!(Graph::biclique(3, 3).odd_girth(), None);
    }

    #[test]
    fn odd_girth_never_below_girth() {
        for seed in 0..40 {
            let g = gnp(3 + (seed as usize % 14), 0.3, 1000 + seed);
            match (g.girth(), g.odd_girth()) {
                (None, og) => assert_eq!(og, None),
                (Some(gi), Some(og)) => {
                    assert!(og >= gi);
                    assert_eq!(og % 2, 1);
                }
                (Some(_), None) => {} // bipartite with cycles
            }
        }
    }

    #[test]
    fn subdivide_zero_is_identity() {
        let g = gnp(8, 0.5, 7);
        assert_eq!(g.subdivide_even(0), g);
    }

    #[test]
    fn subdivide_k2_once_gives_a_path_on_4() {
        // New vertices are appended, so the path visits indices as 0-2-3-1.
        let g = Graph::complete(2).subdivide_even(1);
        assert_eq!(g, Graph::from_edges(4, &[(0, 2), (2, 3), (1, 3)]).unwrap());
    }

    #[test]
    fn subdivide_triangle_once_is_c9() {
        let g = Graph::complete(3).subdivide_even(1);
        assert_eq!(g.n(), 9);
        assert_eq!(g.m(), 9);
        assert_eq!(g.girth(), Some(9));
        assert!((0..9).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn subdivision_keeps_graphs_simple() {
        for seed in 0..10 {
            let g = gnp(7, 0.5, 2000 + seed);
            for c in 0..3 {
                let s = g.subdivide_even(c);
                assert_eq!(s.n(), g.n() + 2 * c * g.m());
                assert_eq!(s.m(), g.m() * (2 * c + 1));
            }
        }
    }

    #[test]
    fn lex_product_with_k1_is_identity() {
        let g = gnp(9, 0.4, 3);
        let one = Graph::edgeless(1);
        assert_eq!(one.lex_product(&g).unwrap(), g);
        assert_eq!(g.lex_product(&one).unwrap(), g);
    }

    #[test]
    fn lex_product_sizes() {
        let g = Graph::cycle(5);
        let h = Graph::complete(2);
        let p = g.lex_product(&h).unwrap();
        assert_eq!(p.n(), 10);
        // each vertex blows into an edge; each original edge into a C4 of pairs
        assert_eq!(p.m(), 5 + 5 * 4);
        assert!(Graph::edgeless(200)
            .lex_product(&Graph::edgeless(200))
            .is_err());
    }

    #[test]
    fn intersect_requires_same_size_and_keeps_common_edges() {
        let c4 = Graph::cycle(4);
        let matching = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let i = c4.intersect(&matching).unwrap();
        assert_eq!(i, matching);
        assert!(c4.intersect(&Graph::complete(3)).is_err());
        assert_eq!(c4.intersect(&c4).unwrap(), c4);
    }

    #[test]
    fn components_are_sorted() {
        let g = Graph::from_edges(6, &[(4, 5), (0, 2)]).unwrap();
        assert_eq!(
            g.components(),
            vec![vec![0, 2], vec![1], vec![3], vec![4, 5]]
        );
    }

    #[test]
    fn vertex_set_basics() {
        let s = VertexSet::from_vec(10, vec![5, 1, 5, 3]).unwrap();
        assert_eq!(s.members(), &[1, 3, 5]);
        assert!(s.contains(3) && !s.contains(2));
        assert_eq!(s.to_string(), "1 3 5");
        assert!(VertexSet::from_vec(4, vec![4]).is_err());
        let t = VertexSet::from_vec(10, vec![3, 7]).unwrap();
        assert_eq!(s.union(&t).members(), &[1, 3, 5, 7]);
        assert_eq!(s.minus(&t).members(), &[1, 5]);
    }

    #[test]
    fn transforms_preserve_symmetry_and_simplicity() {
        // Spot-check the bit matrix directly on a seeded corpus.
        for seed in 0..15 {
            let g = gnp(10, 0.4, 3000 + seed);
            for t in [
                g.complement(),
                g.subdivide_even(1),
                g.lex_product(&Graph::path(2)).unwrap(),
            ] {
                for u in 0..t.n() {
                    assert!(!t.has_edge(u, u));
                    for v in 0..t.n() {
                        if v != u {
                            assert_eq!(t.has_edge(u, v), t.has_edge(v, u));
                        }
                    }
                }
                assert_eq!(t.edges().count(), t.m());
            }
        }
    }
}
