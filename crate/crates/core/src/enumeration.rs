//! Exhaustive generation of connected graphs and the verification harness.
//!
//! Connected graphs with `n` vertices and `m` edges are grown edge by edge:
//! trees by attaching leaves, then every graph with `m > n - 1` edges by
//! adding a non-edge to some connected graph with `m - 1` edges (deleting a
//! non-bridge edge shows every such graph arises). Each level is deduplicated
//! by canonical form, so the output is one representative per isomorphism
//! class, in canonical labeling, ordered by canonical form. Parents of a
//! level are processed in parallel and merged into an ordered set, so the
//! result does not depend on the number of threads.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalForm};
use crate::criterion::{lemma_checks, solve_ab, AbSolution, LemmaStatus};
use crate::error::{Error, Result};
use crate::families::family_forms;
use crate::graph::Graph;
use crate::spectral::{exact_main_count, q_spectrum_default};
use crate::structure::classify_base;

pub const DEFAULT_GUARD: usize = 12;
pub const GUARD_ENV: &str = "QMAIN_GUARD_N";

#[derive(Debug, Clone, Default)]
pub struct EnumOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    /// Skip the order guard.
    pub force: bool,
}

/// Largest order allowed without `force`, from `QMAIN_GUARD_N` if set.
pub fn guard() -> usize {
    std::env::var(GUARD_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_GUARD)
}

fn check_guard(n: usize, opts: &EnumOptions) -> Result<()> {
    let guard = guard();
    if !opts.force && n > guard {
        return Err(Error::GuardExceeded { n, guard });
    }
    if n > 64 {
        return Err(Error::TooManyVertices(n));
    }
    Ok(())
}

fn run<T: Send>(opts: &EnumOptions, f: impl FnOnce() -> T + Send) -> T {
    match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

type Level = BTreeMap<CanonicalForm, Graph>;

fn grow(parents: &Level, children: impl Fn(&Graph) -> Vec<Graph> + Sync) -> Level {
    parents
        .par_iter()
        .map(|(_, g)| {
            let mut local = Level::new();
            for h in children(g) {
                let key = canonical_form(&h).expect("order checked against 64");
                local.entry(key).or_insert_with_key(|k| k.to_graph());
            }
            local
        })
        .reduce(Level::new, |mut a, b| {
            a.extend(b);
            a
        })
}

fn trees(n: usize) -> Level {
    let mut level = Level::new();
    let k1 = Graph::new(1);
    level.insert(canonical_form(&k1).unwrap(), k1);
    for _ in 1..n {
        level = grow(&level, |g| {
            (0..g.order())
                .map(|v| {
                    let mut h = g.clone();
                    let leaf = h.add_vertex();
                    h.add_edge(v, leaf).unwrap();
                    h
                })
                .collect()
        });
    }
    level
}

fn add_one_edge(level: &Level) -> Level {
    grow(level, |g| {
        let n = g.order();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !g.has_edge(u, v) {
                    let mut h = g.clone();
                    h.add_edge(u, v).unwrap();
                    out.push(h);
                }
            }
        }
        out
    })
}

/// One graph per isomorphism class of connected graphs with `n` vertices and
/// `m` edges, canonically labeled and ordered by canonical form.
pub fn enumerate_connected(n: usize, m: usize, opts: &EnumOptions) -> Result<Vec<Graph>> {
    check_guard(n, opts)?;
    if n == 0 || m + 1 < n || m > n * (n - 1) / 2 {
        return Ok(Vec::new());
    }
    Ok(run(opts, || {
        let mut level = trees(n);
        for _ in n - 1..m {
            level = add_one_edge(&level);
        }
        level.into_values().collect()
    }))
}

/// Connected graphs of order `n` for every edge count, grouped by edge count
/// starting at `n - 1`.
pub fn enumerate_connected_all(n: usize, opts: &EnumOptions) -> Result<Vec<Vec<Graph>>> {
    check_guard(n, opts)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    Ok(run(opts, || {
        let mut out = Vec::new();
        let mut level = trees(n);
        loop {
            out.push(level.values().cloned().collect());
            if level.is_empty() || level.values().next().unwrap().edge_count() == n * (n - 1) / 2 {
                break;
            }
            level = add_one_edge(&level);
        }
        out
    }))
}

/// Connected graphs with `n` vertices and `n + 2` edges.
pub fn enumerate_tricyclic(n: usize, opts: &EnumOptions) -> Result<Vec<Graph>> {
    enumerate_connected(n, n + 2, opts)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub kind: String,
    pub graph6: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Positive {
    /// Canonical graph6.
    pub graph6: String,
    pub a: i64,
    pub b: i64,
    pub family: Option<String>,
    pub params: Option<String>,
}

/// Outcome of the per-graph checks shared by every harness.
#[derive(Debug, Clone, Default)]
struct GraphFindings {
    unique: bool,
    ab: Option<(i64, i64)>,
    main_count: usize,
    trace_rel_err: f64,
    violations: Vec<Violation>,
}

fn violation(kind: &str, g: &Graph, detail: impl Into<String>) -> Violation {
    Violation {
        kind: kind.to_string(),
        graph6: crate::graph6::encode(g),
        detail: detail.into(),
    }
}

/// Criterion against exact rank, regularity against a single main
/// eigenvalue, float spectrum against exact rank, trace, and, for positives,
/// the lemma checklist.
fn examine(g: &Graph) -> GraphFindings {
    let mut f = GraphFindings::default();
    let ab = solve_ab(g).expect("connected graphs on two or more vertices have edges");
    f.main_count = exact_main_count(g);
    f.unique = ab.is_unique();
    f.ab = ab.integers();
    if f.unique != (f.main_count == 2) {
        f.violations.push(violation(
            "criterion_vs_rank",
            g,
            format!("solve_ab {ab:?}, exact main count {}", f.main_count),
        ));
    }
    if g.is_regular() != (f.main_count == 1) {
        f.violations.push(violation(
            "regular_vs_rank",
            g,
            format!("regular {}, exact main count {}", g.is_regular(), f.main_count),
        ));
    }
    match q_spectrum_default(g) {
        Ok(spec) => {
            if spec.float_main_count() != f.main_count {
                f.violations.push(violation(
                    "float_vs_exact",
                    g,
                    format!("float {}, exact {}", spec.float_main_count(), f.main_count),
                ));
            }
            let trace = 2.0 * g.edge_count() as f64;
            f.trace_rel_err = (spec.eigenvalue_sum() - trace).abs() / trace.max(1.0);
            if f.trace_rel_err > 1e-8 {
                f.violations.push(violation(
                    "trace",
                    g,
                    format!("relative error {:e}", f.trace_rel_err),
                ));
            }
            let proj: f64 = spec.groups.iter().map(|x| x.projection_norm.powi(2)).sum();
            let n = g.order() as f64;
            if (proj - n).abs() / n > 1e-8 {
                f.violations.push(violation("projection", g, format!("sum {proj} != {n}")));
            }
        }
        Err(e) => f.violations.push(violation("eigensolver", g, e.to_string())),
    }
    if let AbSolution::Unique { .. } = ab {
        for check in lemma_checks(g, &ab) {
            if check.status == LemmaStatus::Fail {
                f.violations.push(violation(
                    &format!("lemma:{}", check.name),
                    g,
                    check.detail.unwrap_or_default(),
                ));
            }
        }
    }
    f
}

/// Exhaustive check over all connected graphs of one order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectedReport {
    pub n: usize,
    pub graphs: usize,
    pub regular: usize,
    pub two_main: usize,
    pub max_trace_rel_err: f64,
    pub violations: Vec<Violation>,
}

/// Checks regularity against one main eigenvalue and the criterion against
/// two, on every connected graph of order `n`.
pub fn check_connected(n: usize, opts: &EnumOptions) -> Result<ConnectedReport> {
    let graphs: Vec<Graph> = enumerate_connected_all(n, opts)?.into_iter().flatten().collect();
    let findings: Vec<(bool, GraphFindings)> = run(opts, || {
        graphs
            .par_iter()
            .filter(|g| g.edge_count() > 0)
            .map(|g| (g.is_regular(), examine(g)))
            .collect()
    });
    let mut violations: Vec<Violation> = findings
        .iter()
        .flat_map(|(_, f)| f.violations.iter().cloned())
        .collect();
    violations.sort();
    Ok(ConnectedReport {
        n,
        graphs: graphs.len(),
        regular: graphs.iter().filter(|g| g.is_regular()).count(),
        two_main: findings.iter().filter(|(_, f)| f.main_count == 2).count(),
        max_trace_rel_err: findings.iter().map(|(_, f)| f.trace_rel_err).fold(0.0, f64::max),
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub n: usize,
    /// Connected tricyclic graphs visited.
    pub tricyclic: usize,
    pub pendant_free: usize,
    pub positives: Vec<Positive>,
    /// Family instances of this order.
    pub family_instances: usize,
    /// Pendant-free graphs per base shape.
    pub shape_counts: BTreeMap<String, usize>,
    /// Pendant-free graphs per number of cycles.
    pub cycle_counts: BTreeMap<usize, usize>,
    pub max_trace_rel_err: f64,
    pub violations: Vec<Violation>,
}

impl EnumerationReport {
    pub fn positive_forms(&self) -> BTreeSet<&str> {
        self.positives.iter().map(|p| p.graph6.as_str()).collect()
    }
}

/// Verifies the characterization at one order: criterion against exact rank
/// on every tricyclic graph, positives against the family list, base
/// classification and cycle counts on every pendant-free graph, and the
/// lemma checklist on every positive.
pub fn verify_order(n: usize, opts: &EnumOptions) -> Result<EnumerationReport> {
    let graphs = enumerate_tricyclic(n, opts)?;
    let families = family_forms(n)?;
    struct Row {
        findings: GraphFindings,
        key: CanonicalForm,
        shape: Option<std::result::Result<String, String>>,
        cycles: Option<std::result::Result<usize, String>>,
    }
    let rows: Vec<Row> = run(opts, || {
        graphs
            .par_iter()
            .map(|g| {
                let findings = examine(g);
                let pendant_free = g.pendant_vertices().is_empty();
                let shape = pendant_free
                    .then(|| classify_base(g).map(|s| s.shape.to_string()).map_err(|e| e.to_string()));
                let cycles = pendant_free.then(|| g.count_cycles().map_err(|e| e.to_string()));
                Row {
                    findings,
                    key: canonical_form(g).expect("guarded order"),
                    shape,
                    cycles,
                }
            })
            .collect()
    });

    let mut report = EnumerationReport {
        n,
        tricyclic: graphs.len(),
        pendant_free: 0,
        positives: Vec::new(),
        family_instances: families.len(),
        shape_counts: BTreeMap::new(),
        cycle_counts: BTreeMap::new(),
        max_trace_rel_err: 0.0,
        violations: Vec::new(),
    };
    let mut seen_families = BTreeSet::new();
    for (g, row) in graphs.iter().zip(rows) {
        report.violations.extend(row.findings.violations);
        report.max_trace_rel_err = report.max_trace_rel_err.max(row.findings.trace_rel_err);
        if let Some(shape) = row.shape {
            report.pendant_free += 1;
            match shape {
                Ok(s) => *report.shape_counts.entry(s).or_default() += 1,
                Err(e) => report.violations.push(violation("base_unclassified", g, e)),
            }
        }
        match row.cycles {
            Some(Ok(c)) => {
                *report.cycle_counts.entry(c).or_default() += 1;
                if ![3, 4, 6, 7].contains(&c) {
                    report.violations.push(violation("cycle_count", g, format!("{c} cycles")));
                }
            }
            Some(Err(e)) => report.violations.push(violation("cycle_count", g, e)),
            None => {}
        }
        if !row.findings.unique {
            continue;
        }
        let Some((a, b)) = row.findings.ab else {
            report.violations.push(violation("non_integral_pair", g, ""));
            continue;
        };
        let family = families.get(&row.key);
        if family.is_none() {
            report
                .violations
                .push(violation("positive_without_family", g, format!("(a, b) = ({a}, {b})")));
        }
        if let Some(desc) = family {
            seen_families.insert(row.key.clone());
            if (desc.a, desc.b) != (a, b) {
                report.violations.push(violation(
                    "family_ab",
                    g,
                    format!("{} expects ({}, {}), found ({a}, {b})", desc.id, desc.a, desc.b),
                ));
            }
        }
        report.positives.push(Positive {
            graph6: row.key.as_graph6().to_string(),
            a,
            b,
            family: family.map(|d| d.id.to_string()),
            params: family.filter(|d| !d.params.0.is_empty()).map(|d| d.params.to_string()),
        });
    }
    for (key, desc) in &families {
        if !seen_families.contains(key) {
            report.violations.push(Violation {
                kind: "missing_family_instance".into(),
                graph6: key.as_graph6().to_string(),
                detail: format!("{} ({}) not found among positives", desc.id, desc.params),
            });
        }
    }
    report.violations.sort();
    Ok(report)
}

/// `verify_order` for every order from 4 to `n_max`.
pub fn verify_characterization(n_max: usize, opts: &EnumOptions) -> Result<Vec<EnumerationReport>> {
    check_guard(n_max, opts)?;
    (4..=n_max).map(|n| verify_order(n, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn opts() -> EnumOptions {
        EnumOptions::default()
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_connected(4, 6, &opts()).unwrap(), [named::complete(4)]);
        assert_eq!(enumerate_connected(4, 3, &opts()).unwrap().len(), 2);
        assert_eq!(enumerate_connected(4, 2, &opts()).unwrap().len(), 0);
        assert_eq!(enumerate_connected(1, 0, &opts()).unwrap().len(), 1);
        assert_eq!(enumerate_tricyclic(4, &opts()).unwrap().len(), 1);
    }

    #[test]
    fn connected_graph_counts() {
        // Numbers of connected graphs on 1..=7 vertices.
        for (n, expected) in [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112), (7, 853)] {
            let total: usize = enumerate_connected_all(n, &opts())
                .unwrap()
                .iter()
                .map(Vec::len)
                .sum();
            assert_eq!(total, expected, "n = {n}");
        }
    }

    #[test]
    fn output_is_independent_of_jobs() {
        let one = enumerate_tricyclic(7, &EnumOptions { jobs: Some(1), force: false }).unwrap();
        let four = enumerate_tricyclic(7, &EnumOptions { jobs: Some(4), force: false }).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn guard_blocks_large_orders() {
        assert_eq!(
            enumerate_connected(13, 15, &opts()),
            Err(Error::GuardExceeded { n: 13, guard: guard() })
        );
    }

    #[test]
    fn small_orders_verify() {
        let r = verify_order(4, &opts()).unwrap();
        assert!(r.positives.is_empty());
        assert!(r.violations.is_empty());
        let r = verify_order(5, &opts()).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        let ids: BTreeSet<_> = r.positives.iter().filter_map(|p| p.family.clone()).collect();
        assert!(ids.contains("G10"));
    }

    #[test]
    fn connected_order_five() {
        let r = check_connected(5, &opts()).unwrap();
        assert_eq!(r.graphs, 21);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
    }
}
