//! Internal paths and cycles, and classification of pendant-free tricyclic
//! graphs into the fifteen base shapes `T1`..`T15`.
//!
//! Suppressing the degree-2 vertices of a pendant-free tricyclic graph leaves
//! a multigraph on the branch vertices (degree at least 3) with one edge per
//! internal path and one loop per internal cycle. Every shape is stored as
//! such a multigraph whose edges are numbered slots; a concrete base is that
//! multigraph with slot `i` subdivided into a path of length `slots[i]`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SegmentKind {
    Path,
    Cycle,
}

/// Maximal chain `u0 u1 ... uk` with `d(u0), d(uk) >= 3` and all interior
/// vertices of degree 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InternalSegment {
    pub kind: SegmentKind,
    /// `vertices[0]` and `vertices[k]` are the endpoints; equal for cycles.
    pub vertices: Vec<usize>,
}

impl InternalSegment {
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        self.vertices[self.vertices.len() - 1]
    }

    pub fn interior(&self) -> &[usize] {
        &self.vertices[1..self.vertices.len() - 1]
    }
}

/// Internal paths and cycles of an arbitrary graph, judged by its own
/// degrees. Chains that run into a vertex of degree 1 are not internal and
/// are skipped.
pub fn degree2_chains(g: &Graph) -> Vec<InternalSegment> {
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut out = Vec::new();
    for u in 0..g.order() {
        if g.degree(u) < 3 {
            continue;
        }
        for w in g.neighbors(u) {
            if seen.contains(&(u, w)) {
                continue;
            }
            let mut vertices = vec![u, w];
            let (mut prev, mut cur) = (u, w);
            while g.degree(cur) == 2 {
                let next = g.neighbors(cur).find(|&x| x != prev).unwrap();
                prev = cur;
                cur = next;
                vertices.push(cur);
            }
            seen.insert((u, w));
            seen.insert((cur, prev));
            if g.degree(cur) < 3 {
                continue;
            }
            let kind = if cur == u {
                SegmentKind::Cycle
            } else {
                SegmentKind::Path
            };
            out.push(InternalSegment { kind, vertices });
        }
    }
    out
}

/// Decomposition of a pendant-free graph into internal segments.
pub fn internal_segments(base: &Graph) -> Result<Vec<InternalSegment>> {
    if let Some(&p) = base.pendant_vertices().first() {
        return Err(Error::HasPendant(p));
    }
    if (0..base.order()).all(|v| base.degree(v) < 3) {
        return Err(Error::NoBranchVertices);
    }
    Ok(degree2_chains(base))
}

/// Edge of a reduced multigraph; `u == v` for loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiEdge {
    pub u: usize,
    pub v: usize,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedMultigraph {
    /// Branch vertices of the base, in increasing order; multigraph vertex
    /// `i` is `branch[i]`.
    pub branch: Vec<usize>,
    pub edges: Vec<MultiEdge>,
}

impl ReducedMultigraph {
    pub fn degree(&self, i: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.u == i) as usize + (e.v == i) as usize)
            .sum()
    }
}

pub fn reduced_multigraph(base: &Graph) -> Result<ReducedMultigraph> {
    let segments = internal_segments(base)?;
    let branch: Vec<usize> = (0..base.order()).filter(|&v| base.degree(v) >= 3).collect();
    let index = |v: usize| branch.binary_search(&v).unwrap();
    let edges = segments
        .iter()
        .map(|s| MultiEdge {
            u: index(s.start()),
            v: index(s.end()),
            length: s.length(),
        })
        .collect();
    Ok(ReducedMultigraph { branch, edges })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ShapeId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10,
    T11,
    T12,
    T13,
    T14,
    T15,
}

impl fmt::Display for ShapeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl ShapeId {
    pub const ALL: [ShapeId; 15] = [
        ShapeId::T1,
        ShapeId::T2,
        ShapeId::T3,
        ShapeId::T4,
        ShapeId::T5,
        ShapeId::T6,
        ShapeId::T7,
        ShapeId::T8,
        ShapeId::T9,
        ShapeId::T10,
        ShapeId::T11,
        ShapeId::T12,
        ShapeId::T13,
        ShapeId::T14,
        ShapeId::T15,
    ];

    /// Slot list of the shape as `(branch, branch)` pairs.
    pub fn slots(self) -> &'static [(usize, usize)] {
        use ShapeId::*;
        match self {
            // u=0, v=1: loop r1 at u, paths k1, k2 between u and v, loop r3 at v.
            T1 => &[(0, 0), (0, 1), (0, 1), (1, 1)],
            // u=0, w=1, v=2.
            T2 => &[(0, 0), (0, 1), (0, 1), (1, 2), (2, 2)],
            T3 => &[(0, 0), (0, 0), (0, 0)],
            // u1=0, v1=1, u2=2, v2=3.
            T4 => &[(0, 1), (0, 1), (2, 0), (1, 3), (2, 2), (3, 3)],
            T5 => &[(0, 0), (0, 0), (0, 1), (1, 1)],
            // u=0 joined to v1, v2, v3, each carrying a loop.
            T6 => &[(1, 0), (0, 2), (0, 3), (1, 1), (2, 2), (3, 3)],
            // u=0, v1=1, v=2.
            T7 => &[(1, 1), (0, 0), (2, 2), (0, 1), (0, 2)],
            // u=0, v1=1, v2=2.
            T8 => &[(1, 2), (1, 2), (0, 1), (0, 2), (0, 0)],
            T9 => &[(0, 1), (0, 1), (0, 1), (0, 0)],
            // u=0, v=1, x=2.
            T10 => &[(0, 0), (0, 1), (1, 2), (1, 2), (1, 2)],
            // u1=0, u2=1, v1=2, v2=3.
            T11 => &[(2, 3), (2, 3), (2, 1), (3, 1), (0, 1), (0, 0)],
            T12 => &[(0, 1), (0, 1), (0, 1), (0, 1)],
            // u=0 of degree 4, v=1, w=2.
            T13 => &[(0, 1), (0, 1), (0, 2), (0, 2), (1, 2)],
            // u1=0, u2=1, v1=2, v2=3.
            T14 => &[(0, 1), (0, 1), (2, 3), (2, 3), (0, 2), (1, 3)],
            // v1..v4 = 0..3, the complete graph K4.
            T15 => &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (1, 3)],
        }
    }

    pub fn branch_count(self) -> usize {
        self.slots().iter().map(|&(u, v)| u.max(v)).max().unwrap() + 1
    }

    /// Number of distinct cycles of any base of this shape.
    pub fn cycle_count(self) -> usize {
        use ShapeId::*;
        match self {
            T1 | T2 | T3 | T4 | T5 | T6 | T7 => 3,
            T8 | T9 | T10 | T11 => 4,
            T12 | T13 | T14 => 6,
            T15 => 7,
        }
    }

    /// Whether `slots` gives a simple graph: loops need length at least 3 and
    /// parallel slots at most one length-1 member.
    pub fn valid_lengths(self, lengths: &[usize]) -> bool {
        let slots = self.slots();
        if lengths.len() != slots.len() || lengths.contains(&0) {
            return false;
        }
        for (i, &(u, v)) in slots.iter().enumerate() {
            if u == v && lengths[i] < 3 {
                return false;
            }
            for (j, &(x, y)) in slots.iter().enumerate().skip(i + 1) {
                let parallel = (u, v) == (x, y) || (u, v) == (y, x);
                if u != v && parallel && lengths[i] == 1 && lengths[j] == 1 {
                    return false;
                }
            }
        }
        true
    }
}

/// A classified base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseShape {
    pub shape: ShapeId,
    /// `branch[i]` is the base vertex playing the shape's branch vertex `i`.
    pub branch: Vec<usize>,
    /// Segment length per slot, lexicographically least over the shape's
    /// symmetries.
    pub lengths: Vec<usize>,
}

/// Classifies a connected pendant-free tricyclic graph.
pub fn classify_base(base: &Graph) -> Result<BaseShape> {
    if !base.is_connected() {
        return Err(Error::NotConnected);
    }
    let c = base.cyclomatic_number()?;
    if c != 3 {
        return Err(Error::NotTricyclicBase(format!("cyclomatic number {c}")));
    }
    let red = reduced_multigraph(base)?;
    for shape in ShapeId::ALL {
        if let Some((map, lengths)) = match_shape(shape, &red) {
            return Ok(BaseShape {
                shape,
                branch: map.iter().map(|&i| red.branch[i]).collect(),
                lengths,
            });
        }
    }
    Err(Error::NotTricyclicBase(format!(
        "no shape has reduced multigraph {:?}",
        red.edges
    )))
}

/// Best `(template vertex -> multigraph vertex, lengths)` over all matches.
fn match_shape(shape: ShapeId, red: &ReducedMultigraph) -> Option<(Vec<usize>, Vec<usize>)> {
    let slots = shape.slots();
    let k = shape.branch_count();
    if red.branch.len() != k || red.edges.len() != slots.len() {
        return None;
    }
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        let mut used = vec![false; red.edges.len()];
        let mut lengths = Vec::with_capacity(slots.len());
        assign_slots(slots, &perm, red, &mut used, &mut lengths, &mut |lens| {
            if best.as_ref().is_none_or(|(_, b)| lens < b.as_slice()) {
                best = Some((perm.clone(), lens.to_vec()));
            }
        });
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best
}

fn assign_slots(
    slots: &[(usize, usize)],
    perm: &[usize],
    red: &ReducedMultigraph,
    used: &mut [bool],
    lengths: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    let i = lengths.len();
    if i == slots.len() {
        visit(lengths);
        return;
    }
    let (a, b) = (perm[slots[i].0], perm[slots[i].1]);
    for (e, edge) in red.edges.iter().enumerate() {
        let fits = (edge.u, edge.v) == (a, b) || (edge.u, edge.v) == (b, a);
        if used[e] || !fits {
            continue;
        }
        used[e] = true;
        lengths.push(edge.length);
        assign_slots(slots, perm, red, used, lengths, visit);
        lengths.pop();
        used[e] = false;
    }
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A base built from a shape: branch vertex `i` is vertex `i`, and
/// `interiors[s]` lists the interior vertices of slot `s` in order from the
/// slot's first endpoint.
#[derive(Debug, Clone)]
pub struct RealizedBase {
    pub graph: Graph,
    pub interiors: Vec<Vec<usize>>,
}

pub fn realize_shape(shape: ShapeId, lengths: &[usize]) -> Result<RealizedBase> {
    if !shape.valid_lengths(lengths) {
        return Err(Error::InvalidParams(format!(
            "slot lengths {lengths:?} do not give a simple {shape} base"
        )));
    }
    let k = shape.branch_count();
    let mut g = Graph::new(k);
    let mut interiors = Vec::new();
    for (&(u, v), &len) in shape.slots().iter().zip(lengths) {
        let mut prev = u;
        let mut inner = Vec::new();
        for _ in 1..len {
            let x = g.add_vertex();
            g.add_edge(prev, x)?;
            inner.push(x);
            prev = x;
        }
        g.add_edge(prev, v)?;
        interiors.push(inner);
    }
    Ok(RealizedBase { graph: g, interiors })
}
