//! Canonical forms for graphs on at most 64 vertices.
//!
//! The search starts from the partition of vertices by degree, refines it to
//! an equitable partition, and individualizes vertices of the first
//! non-singleton cell until every cell is a singleton. Each leaf fixes a
//! labeling; the canonical form is the smallest relabeled adjacency over all
//! leaves. Vertices with identical neighborhoods are interchangeable, so only
//! one of each twin class is branched on.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;

/// Isomorphism-invariant key: the graph6 string of the canonically labeled
/// graph. Two graphs have equal keys iff they are isomorphic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn as_graph6(&self) -> &str {
        &self.0
    }

    pub fn to_graph(&self) -> Graph {
        graph6::decode(&self.0).expect("canonical forms are valid graph6")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.0)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    Ok(CanonicalForm(graph6::encode(&canonical_graph(g)?)))
}

/// `g` relabeled canonically.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let lab = canonical_labeling(g)?;
    Ok(g.relabel(&lab))
}

/// Permutation `lab` with `lab[v]` the canonical label of vertex `v`.
pub fn canonical_labeling(g: &Graph) -> Result<Vec<usize>> {
    let n = g.order();
    if n > 64 {
        return Err(Error::TooManyVertices(n));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let rows: Vec<u64> = (0..n).map(|v| g.row64(v)).collect();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut by_degree: Vec<(u32, usize)> = rows
        .iter()
        .enumerate()
        .map(|(v, r)| (r.count_ones(), v))
        .collect();
    by_degree.sort_unstable();
    for (d, v) in by_degree {
        match cells.last_mut() {
            Some(cell) if rows[cell[0]].count_ones() == d => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = Best {
        key: Vec::new(),
        lab: Vec::new(),
    };
    search(&rows, cells, &mut best);
    Ok(best.lab)
}

struct Best {
    key: Vec<u64>,
    lab: Vec<usize>,
}

fn cell_mask(cell: &[usize]) -> u64 {
    cell.iter().fold(0, |m, &v| m | 1 << v)
}

/// Splits cells by neighbor counts into every cell until nothing changes.
fn refine(rows: &[u64], cells: &mut Vec<Vec<usize>>) {
    loop {
        let masks: Vec<u64> = cells.iter().map(|c| cell_mask(c)).collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u8>, usize)> = cell
                .iter()
                .map(|&v| {
                    let sig = masks
                        .iter()
                        .map(|m| (rows[v] & m).count_ones() as u8)
                        .collect();
                    (sig, v)
                })
                .collect();
            keyed.sort_unstable();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        let stable = next.len() == cells.len();
        *cells = next;
        if stable {
            return;
        }
    }
}

fn search(rows: &[u64], mut cells: Vec<Vec<usize>>, best: &mut Best) {
    refine(rows, &mut cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let n = rows.len();
        let mut lab = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            lab[c[0]] = i;
        }
        let mut key = vec![0u64; n];
        for v in 0..n {
            let mut r = rows[v];
            let mut out = 0u64;
            while r != 0 {
                let u = r.trailing_zeros() as usize;
                r &= r - 1;
                out |= 1 << lab[u];
            }
            key[lab[v]] = out;
        }
        if best.lab.is_empty() || key < best.key {
            best.key = key;
            best.lab = lab;
        }
        return;
    };
    let cell = cells[target].clone();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cell {
        if tried.iter().any(|&u| are_twins(rows, u, v)) {
            continue;
        }
        tried.push(v);
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..target]);
        next.push(vec![v]);
        next.push(cell.iter().copied().filter(|&u| u != v).collect());
        next.extend_from_slice(&cells[target + 1..]);
        search(rows, next, best);
    }
}

/// Swapping `u` and `v` is an automorphism.
fn are_twins(rows: &[u64], u: usize, v: usize) -> bool {
    let bu = 1u64 << u;
    let bv = 1u64 << v;
    rows[u] & !bv == rows[v] & !bu
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use rand::prelude::*;
    use rand::rngs::StdRng;

    fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    fn random_perm(rng: &mut StdRng, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    }

    /// Tries every bijection.
    fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
        let n = g.order();
        if n != h.order() || g.edge_count() != h.edge_count() {
            return false;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if g.edges().iter().all(|&(u, v)| h.has_edge(perm[u], perm[v])) {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return false;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    #[test]
    fn relabeled_cycles_agree() {
        let c5 = named::cycle(5);
        let other = c5.relabel(&[3, 0, 4, 1, 2]);
        assert_ne!(c5, other);
        assert_eq!(canonical_form(&c5).unwrap(), canonical_form(&other).unwrap());
    }

    #[test]
    fn c6_and_prism_differ() {
        assert_ne!(
            canonical_form(&named::cycle(6)).unwrap(),
            canonical_form(&named::prism()).unwrap()
        );
    }

    #[test]
    fn random_relabelings_agree() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=12);
            let p = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let h = g.relabel(&random_perm(&mut rng, n));
            assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
            assert_eq!(canonical_graph(&g).unwrap(), canonical_graph(&h).unwrap());
        }
    }

    #[test]
    fn agrees_with_brute_force_on_random_corpus() {
        let mut rng = StdRng::seed_from_u64(11);
        let mut corpus = Vec::new();
        for _ in 0..120 {
            let n = rng.gen_range(1..=8);
            let p = rng.gen_range(0.2..0.7);
            let g = random_graph(&mut rng, n, p);
            corpus.push(g.relabel(&random_perm(&mut rng, n)));
            corpus.push(g);
        }
        for (i, g) in corpus.iter().enumerate() {
            for h in &corpus[i + 1..] {
                if g.order() != h.order() || g.edge_count() != h.edge_count() {
                    continue;
                }
                let same = canonical_form(g).unwrap() == canonical_form(h).unwrap();
                assert_eq!(same, brute_isomorphic(g, h), "{g:?} vs {h:?}");
            }
        }
    }

    #[test]
    fn symmetric_graphs_stay_fast() {
        let mut g = named::complete(4);
        for v in 0..4 {
            for _ in 0..6 {
                let p = g.add_vertex();
                g.add_edge(v, p).unwrap();
            }
        }
        let h = g.relabel(&(0..g.order()).rev().collect::<Vec<_>>());
        assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        assert!(canonical_form(&named::complete(30)).is_ok());
    }

    #[test]
    fn rejects_large_graphs() {
        assert_eq!(
            canonical_form(&named::cycle(65)),
            Err(Error::TooManyVertices(65))
        );
    }
}
