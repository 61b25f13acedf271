//! Simple undirected graphs with bitset adjacency, plus the basic invariants
//! used throughout the crate: degrees, neighbor-degree sums, pendant
//! stripping and cycle counting.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency is stored as one bitset row per vertex. Graphs with at most 64
/// vertices use a single word per row, which is what the enumeration and
/// canonical labeling hot paths rely on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Inserts the edge `uv`; inserting an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.set(u, v, true);
        self.set(v, u, true);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.set(u, v, false);
        self.set(v, u, false);
        Ok(())
    }

    /// Appends a new isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        let n = self.n + 1;
        let words = n.div_ceil(64).max(1);
        if words != self.words {
            let mut bits = vec![0; n * words];
            for v in 0..self.n {
                bits[v * words..v * words + self.words]
                    .copy_from_slice(&self.bits[v * self.words..(v + 1) * self.words]);
            }
            self.bits = bits;
            self.words = words;
        } else {
            self.bits.extend(std::iter::repeat_n(0, words));
        }
        self.n = n;
        n - 1
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    fn set(&mut self, u: usize, v: usize, on: bool) {
        let w = &mut self.bits[u * self.words + v / 64];
        if on {
            *w |= 1 << (v % 64);
        } else {
            *w &= !(1 << (v % 64));
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    /// Adjacency row of `v` as a single word. Only valid for `n <= 64`.
    pub fn row64(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.bits[v * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut h = Graph::new(self.n);
        for (u, v) in self.edges() {
            h.set(perm[u], perm[v], true);
            h.set(perm[v], perm[u], true);
        }
        h
    }

    /// Subgraph induced by `keep`; vertex `i` of the result is `keep[i]`.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut h = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for u in self.neighbors(v) {
                if index[u] != usize::MAX {
                    h.set(i, index[u], true);
                }
            }
        }
        h
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_count() == 1
    }

    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        count
    }

    pub fn is_regular(&self) -> bool {
        let mut d = (0..self.n).map(|v| self.degree(v));
        match d.next() {
            None => true,
            Some(first) => d.all(|x| x == first),
        }
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degree = self.degrees();
        let neighbor_degree_sum = (0..self.n)
            .map(|v| self.neighbors(v).map(|u| degree[u]).sum())
            .collect();
        DegreeProfile {
            degree,
            neighbor_degree_sum,
        }
    }

    /// `|E| - |V| + 1` for a connected graph.
    pub fn cyclomatic_number(&self) -> Result<i64> {
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(self.edge_count() as i64 - self.n as i64 + 1)
    }

    /// Degree-one vertices.
    pub fn pendant_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Repeatedly deletes pendant vertices until none is left.
    pub fn base(&self) -> Result<Base> {
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        let mut deg = self.degrees();
        let mut alive = vec![true; self.n];
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| deg[v] <= 1).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for u in self.neighbors(v) {
                if alive[u] {
                    deg[u] -= 1;
                    if deg[u] == 1 {
                        stack.push(u);
                    }
                }
            }
        }
        let map: Vec<usize> = (0..self.n).filter(|&v| alive[v]).collect();
        if map.is_empty() {
            return Err(Error::AcyclicBase);
        }
        Ok(Base {
            graph: self.induced_subgraph(&map),
            map,
        })
    }

    /// Number of distinct cycles (as edge sets), for cyclomatic number at most 3.
    ///
    /// Every cycle is a nonzero element of the cycle space, so the count is
    /// obtained by testing each nonempty combination of fundamental cycles
    /// for being a single cycle.
    pub fn count_cycles(&self) -> Result<usize> {
        let edges = self.edges();
        let c = edges.len() as i64 - self.n as i64 + self.component_count() as i64;
        if c > 3 {
            return Err(Error::UnsupportedCyclomatic(c));
        }
        let basis = self.fundamental_cycles(&edges);
        let mut count = 0;
        for mask in 1u32..(1 << basis.len()) {
            let mut set = vec![false; edges.len()];
            for (i, cyc) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for &e in cyc {
                        set[e] = !set[e];
                    }
                }
            }
            let chosen: Vec<(usize, usize)> = edges
                .iter()
                .zip(&set)
                .filter(|(_, &on)| on)
                .map(|(&e, _)| e)
                .collect();
            if is_single_cycle(&chosen) {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Fundamental cycles of a BFS spanning forest, as edge-index lists.
    fn fundamental_cycles(&self, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n];
        let mut depth = vec![0usize; self.n];
        let mut seen = vec![false; self.n];
        let mut tree = vec![false; edges.len()];
        let index = |u: usize, v: usize| {
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            edges.binary_search(&(a, b)).expect("edge present")
        };
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        parent[u] = v;
                        depth[u] = depth[v] + 1;
                        tree[index(u, v)] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        let mut cycles = Vec::new();
        for (e, &(u, v)) in edges.iter().enumerate() {
            if tree[e] {
                continue;
            }
            let mut cyc = vec![e];
            let (mut a, mut b) = (u, v);
            while a != b {
                if depth[a] >= depth[b] {
                    cyc.push(index(a, parent[a]));
                    a = parent[a];
                } else {
                    cyc.push(index(b, parent[b]));
                    b = parent[b];
                }
            }
            cycles.push(cyc);
        }
        cycles
    }
}

fn is_single_cycle(edges: &[(usize, usize)]) -> bool {
    if edges.len() < 3 {
        return false;
    }
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    if verts.len() != edges.len() {
        return false;
    }
    let pos = |x: usize| verts.binary_search(&x).unwrap();
    let mut deg = vec![0usize; verts.len()];
    let mut h = Graph::new(verts.len());
    for &(u, v) in edges {
        let (a, b) = (pos(u), pos(v));
        deg[a] += 1;
        deg[b] += 1;
        h.set(a, b, true);
        h.set(b, a, true);
    }
    deg.iter().all(|&d| d == 2) && h.is_connected()
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Per-vertex degree `d(v)` and neighbor-degree sum `S(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degree: Vec<usize>,
    pub neighbor_degree_sum: Vec<usize>,
}

/// Pendant-free core of a graph together with the map back to original ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Base {
    pub graph: Graph,
    /// `map[i]` is the id in the original graph of base vertex `i`.
    pub map: Vec<usize>,
}

/// Small named graphs used in tests and examples.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// `K_{1,k}` with center 0.
    pub fn star(k: usize) -> Graph {
        let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        Graph::from_edges(k + 1, &edges).unwrap()
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    /// Triangular prism `C3 x K2`.
    pub fn prism() -> Graph {
        Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap()
    }
}
