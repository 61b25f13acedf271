//! Acceptance suite. Prints one PASS/FAIL line per criterion.
//!
//! `cargo test --test acceptance` gates on the CI scope (completeness for
//! n <= 9). `cargo test --test acceptance -- --full` also gates on
//! completeness for n = 10 and exits with code 2 on a counterexample.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use rayon::prelude::*;

use qmain::canon::{canonical_form, is_isomorphic, CanonicalForm};
use qmain::criterion::{check_membership, k4_attachment_solutions, lemma_checks, solve_ab, AbSolution, LemmaStatus};
use qmain::enumeration::{enumerate_connected, enumerate_connected_all, enumerate_tricyclic, EnumOptions};
use qmain::families::{build_family, build_minimal, descriptor, family_forms, FamilyId, Params};
use qmain::graph6;
use qmain::spectral::{exact_main_count, q_spectrum_default};
use qmain::structure::{classify_base, realize_shape, reduced_multigraph};
use qmain::Graph;

const TRACE_REL_TOL: f64 = 1e-8;
const CONNECTED_MAX_N: usize = 7;
const TRICYCLIC_CRITERION_MAX_N: usize = 9;
const COMPLETENESS_CI_MAX_N: usize = 9;
const FULL_MAX_N: usize = 10;

/// `(family, a, b)` as listed in the two classification statements
/// (pendant-free G1..G27, with pendants G28..G41; G42 at a = 8).
const GOLDEN: [(u8, i64, i64); 42] = [
    (1, 8, -6), (2, 7, -4), (3, 9, -6), (4, 7, -5), (5, 6, -3), (6, 6, -3),
    (7, 8, -6), (8, 7, -5), (9, 6, -3), (10, 7, -2), (11, 8, -6), (12, 6, 0),
    (13, 7, -4), (14, 7, -4), (15, 6, -2), (16, 6, -2), (17, 5, 0), (18, 8, -7),
    (19, 7, -5), (20, 7, -5), (21, 6, -3), (22, 7, -4), (23, 8, -7), (24, 6, -2),
    (25, 7, -5), (26, 5, 0), (27, 6, -3), (28, 6, -1), (29, 6, -1), (30, 6, -1),
    (31, 6, -1), (32, 7, -2), (33, 6, -1), (34, 6, -2), (35, 6, -2), (36, 7, -1),
    (37, 8, -2), (38, 7, -2), (39, 7, -1), (40, 6, -1), (41, 6, -1), (42, 8, -3),
];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: &[String], ok_detail: String) -> Self {
        if failures.is_empty() {
            Outcome { pass: true, detail: ok_detail }
        } else {
            let mut detail = format!("{} failure(s)", failures.len());
            for f in failures.iter().take(10) {
                detail.push_str("\n    ");
                detail.push_str(f);
            }
            Outcome { pass: false, detail }
        }
    }
}

struct Corpus {
    /// Connected graphs by order, all edge counts.
    connected: BTreeMap<usize, Vec<Graph>>,
    /// Connected tricyclic graphs by order.
    tricyclic: BTreeMap<usize, Vec<Graph>>,
}

impl Corpus {
    fn build() -> Self {
        let opts = EnumOptions::default();
        let connected = (1..=CONNECTED_MAX_N)
            .map(|n| {
                let all = enumerate_connected_all(n, &opts).expect("within guard");
                (n, all.into_iter().flatten().collect())
            })
            .collect();
        let tricyclic = (4..=FULL_MAX_N)
            .map(|n| (n, enumerate_tricyclic(n, &opts).expect("within guard")))
            .collect();
        Corpus { connected, tricyclic }
    }

    fn tricyclic_up_to(&self, n_max: usize) -> impl Iterator<Item = &Graph> {
        self.tricyclic.range(..=n_max).flat_map(|(_, v)| v)
    }

    fn connected_graphs(&self) -> impl Iterator<Item = &Graph> {
        self.connected.values().flatten()
    }
}

fn regular_iff_one_main(c: &Corpus) -> Outcome {
    let graphs: Vec<&Graph> = c.connected_graphs().collect();
    let failures: Vec<String> = graphs
        .par_iter()
        .filter(|g| (exact_main_count(g) == 1) != g.is_regular())
        .map(|g| graph6::encode(g))
        .collect();
    let regular = graphs.iter().filter(|g| g.is_regular()).count();
    Outcome::new(
        &failures,
        format!("{} connected graphs n <= {CONNECTED_MAX_N}, {regular} regular", graphs.len()),
    )
}

fn criterion_iff_two_main(c: &Corpus) -> Outcome {
    let graphs: Vec<&Graph> = c
        .connected_graphs()
        .chain(c.tricyclic_up_to(TRICYCLIC_CRITERION_MAX_N))
        .collect();
    let failures: Vec<String> = graphs
        .par_iter()
        .filter_map(|g| {
            // K1 has no edge equations and a single main eigenvalue.
            let unique = solve_ab(g).is_ok_and(|ab| ab.is_unique());
            let two = exact_main_count(g) == 2;
            (unique != two).then(|| format!("{} unique={unique} two_main={two}", graph6::encode(g)))
        })
        .collect();
    let positives = graphs.iter().filter(|g| exact_main_count(g) == 2).count();
    Outcome::new(
        &failures,
        format!(
            "{} graphs (connected n <= {CONNECTED_MAX_N}, tricyclic n <= {TRICYCLIC_CRITERION_MAX_N}), {positives} with two main eigenvalues",
            graphs.len()
        ),
    )
}

fn golden_table() -> Outcome {
    let mut failures = Vec::new();
    for &(k, a, b) in &GOLDEN {
        let id = FamilyId::new(k).unwrap();
        let graph = if k == 42 {
            let params: Params = format!("a={a},b={b}").parse().unwrap();
            descriptor(id, &params).and_then(|d| build_family(&d))
        } else {
            build_minimal(id).map(|(_, g)| g)
        };
        match graph {
            Ok(g) => {
                let m = check_membership(&g, a, b);
                let mains = exact_main_count(&g);
                if !m.is_member() || mains != 2 {
                    failures.push(format!("{id}: residuals {:?}, main count {mains}", m.residuals));
                }
            }
            Err(e) => failures.push(format!("{id}: {e}")),
        }
    }
    Outcome::new(&failures, format!("{} families", GOLDEN.len()))
}

fn k4_diophantine() -> Outcome {
    let mut failures = Vec::new();
    let mut brute = Vec::new();
    for b in -10..=-1i64 {
        for a in 1..=50i64 {
            if a + b - 1 >= 4 && a * b + b * b + 3 * a + b == 6 {
                brute.push((a, b));
            }
        }
    }
    let expected: Vec<(i64, i64)> = (8..=50).map(|a| (a, -3)).collect();
    if brute != expected {
        failures.push(format!("brute-force solutions {brute:?}"));
    }
    if k4_attachment_solutions(-10..=-1, 1..=50) != brute {
        failures.push("library solver disagrees with brute force".into());
    }
    let id = FamilyId::new(42).unwrap();
    let g = descriptor(id, &"a=8,b=-3".parse().unwrap()).and_then(|d| build_family(&d));
    match g {
        Ok(g) if check_membership(&g, 8, -3).is_member() && exact_main_count(&g) == 2 => {}
        Ok(g) => failures.push(format!("a=8 instance {} fails the oracle", graph6::encode(&g))),
        Err(e) => failures.push(format!("a=8 instance: {e}")),
    }
    Outcome::new(&failures, format!("{} solutions, b = -3 and 8 <= a <= 50", brute.len()))
}

fn positives(graphs: &[Graph]) -> Vec<(&Graph, AbSolution)> {
    graphs
        .par_iter()
        .filter_map(|g| {
            let ab = solve_ab(g).expect("graphs have edges");
            ab.is_unique().then_some((g, ab))
        })
        .collect()
}

/// Symmetric difference of criterion positives and family instances at order `n`.
fn completeness_at(c: &Corpus, n: usize) -> Vec<String> {
    let found: BTreeSet<CanonicalForm> = positives(&c.tricyclic[&n])
        .into_iter()
        .map(|(g, _)| canonical_form(g).unwrap())
        .collect();
    let listed: BTreeSet<CanonicalForm> = family_forms(n).unwrap().into_keys().collect();
    let mut out: Vec<String> = found
        .difference(&listed)
        .map(|f| format!("n={n} positive not in any family: {f}"))
        .collect();
    out.extend(listed.difference(&found).map(|f| format!("n={n} family instance not found: {f}")));
    out
}

fn completeness(c: &Corpus, n_max: usize) -> Outcome {
    let failures: Vec<String> = (4..=n_max).flat_map(|n| completeness_at(c, n)).collect();
    let total: usize = (4..=n_max).map(|n| family_forms(n).unwrap().len()).sum();
    Outcome::new(&failures, format!("n <= {n_max}: {total} positives, all in the family list"))
}

fn lemma_suite(c: &Corpus) -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for graphs in c.tricyclic.values() {
        for (g, ab) in positives(graphs) {
            count += 1;
            let code = graph6::encode(g);
            match ab.integers() {
                Some((a, b)) if a > 0 && b <= 0 => {}
                _ => failures.push(format!("{code}: (a, b) not integral with a > 0, b <= 0: {ab:?}")),
            }
            for check in lemma_checks(g, &ab) {
                if check.status == LemmaStatus::Fail {
                    failures.push(format!("{code}: {} {}", check.name, check.detail.unwrap_or_default()));
                }
            }
        }
    }
    Outcome::new(&failures, format!("{count} positives n <= {FULL_MAX_N}, zero lemma failures"))
}

fn base_taxonomy(c: &Corpus) -> Outcome {
    let pendant_free: Vec<&Graph> = c
        .tricyclic_up_to(FULL_MAX_N)
        .filter(|g| g.pendant_vertices().is_empty())
        .collect();
    let results: Vec<Result<(String, usize), String>> = pendant_free
        .par_iter()
        .map(|g| {
            let code = graph6::encode(g);
            let shape = classify_base(g).map_err(|e| format!("{code}: {e}"))?;
            let rebuilt = realize_shape(shape.shape, &shape.lengths).map_err(|e| format!("{code}: {e}"))?;
            if !is_isomorphic(&rebuilt.graph, g).unwrap() {
                return Err(format!("{code}: classified {} {:?} does not rebuild it", shape.shape, shape.lengths));
            }
            let cycles = g.count_cycles().map_err(|e| format!("{code}: {e}"))?;
            if ![3, 4, 6, 7].contains(&cycles) || cycles != shape.shape.cycle_count() {
                return Err(format!("{code}: {cycles} cycles for {}", shape.shape));
            }
            let reduced = reduced_multigraph(g).map_err(|e| format!("{code}: {e}"))?;
            if reduced.branch.len() != shape.shape.branch_count() {
                return Err(format!("{code}: branch count mismatch"));
            }
            Ok((shape.shape.to_string(), cycles))
        })
        .collect();
    let mut failures = Vec::new();
    let mut shapes = BTreeSet::new();
    let mut cycles = BTreeSet::new();
    for r in results {
        match r {
            Ok((s, k)) => {
                shapes.insert(s);
                cycles.insert(k);
            }
            Err(e) => failures.push(e),
        }
    }
    Outcome::new(
        &failures,
        format!(
            "{} pendant-free graphs n <= {FULL_MAX_N}, {} shapes seen, cycle counts {cycles:?}",
            pendant_free.len(),
            shapes.len()
        ),
    )
}

fn numerical_cross_check(c: &Corpus) -> Outcome {
    let families: Vec<Graph> = GOLDEN
        .iter()
        .filter(|&&(k, ..)| k != 42)
        .map(|&(k, ..)| build_minimal(FamilyId::new(k).unwrap()).unwrap().1)
        .collect();
    let graphs: Vec<&Graph> = c
        .connected_graphs()
        .chain(c.tricyclic_up_to(FULL_MAX_N))
        .chain(families.iter())
        .collect();
    let results: Vec<Result<f64, String>> = graphs
        .par_iter()
        .map(|g| {
            let code = graph6::encode(g);
            let report = q_spectrum_default(g).map_err(|e| format!("{code}: {e}"))?;
            if report.float_main_count() != report.exact_main_count {
                return Err(format!(
                    "{code}: float {} exact {}",
                    report.float_main_count(),
                    report.exact_main_count
                ));
            }
            let trace = g.degrees().iter().sum::<usize>() as f64;
            let rel = (report.eigenvalue_sum() - trace).abs() / trace.max(1.0);
            if rel > TRACE_REL_TOL {
                return Err(format!("{code}: trace relative error {rel:e}"));
            }
            Ok(rel)
        })
        .collect();
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for r in results {
        match r {
            Ok(rel) => worst = worst.max(rel),
            Err(e) => failures.push(e),
        }
    }
    Outcome::new(&failures, format!("{} graphs, max trace relative error {worst:.1e}", graphs.len()))
}

/// Canonical forms of connected graphs on `n` labeled vertices by edge count,
/// found by testing every edge subset.
fn naive_connected_forms(n: usize) -> BTreeMap<usize, BTreeSet<CanonicalForm>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u64..1 << pairs.len())
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<usize, BTreeSet<CanonicalForm>>, mask| {
            let mut g = Graph::new(n);
            for (bit, &(i, j)) in pairs.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    g.add_edge(i, j).unwrap();
                }
            }
            if g.is_connected() {
                acc.entry(g.edge_count()).or_default().insert(canonical_form(&g).unwrap());
            }
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (m, forms) in b {
                a.entry(m).or_default().extend(forms);
            }
            a
        })
}

fn generator_soundness() -> Outcome {
    let opts = EnumOptions::default();
    let mut failures = Vec::new();
    let mut total = 0;
    for n in 1..=CONNECTED_MAX_N {
        let naive = naive_connected_forms(n);
        let max_m = n * n.saturating_sub(1) / 2;
        for m in 0..=max_m {
            let generated: BTreeSet<CanonicalForm> = enumerate_connected(n, m, &opts)
                .unwrap()
                .iter()
                .map(|g| canonical_form(g).unwrap())
                .collect();
            let oracle = naive.get(&m).cloned().unwrap_or_default();
            total += oracle.len();
            if generated != oracle {
                failures.push(format!(
                    "n={n} m={m}: generated {} oracle {}",
                    generated.len(),
                    oracle.len()
                ));
            }
        }
    }
    Outcome::new(&failures, format!("{total} isomorphism classes n <= {CONNECTED_MAX_N}, all edge counts"))
}

fn report(label: &str, gating: bool, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let status = match (outcome.pass, gating) {
        (true, _) => "PASS",
        (false, true) => "FAIL",
        (false, false) => "FAIL (not gating, pass --full to gate)",
    };
    println!(
        "{status} criterion {label}: {} [{:.1}s]",
        outcome.detail,
        start.elapsed().as_secs_f64()
    );
    outcome.pass || !gating
}

fn main() -> ExitCode {
    let full = std::env::args().any(|a| a == "--full");
    // libtest flags such as --list or --exact are not understood; listing
    // reports no tests so filters from `cargo test <name>` skip this target.
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let start = Instant::now();
    let corpus = Corpus::build();
    println!(
        "corpus: {} connected graphs n <= {CONNECTED_MAX_N}, {} tricyclic graphs n <= {FULL_MAX_N} [{:.1}s]",
        corpus.connected_graphs().count(),
        corpus.tricyclic_up_to(FULL_MAX_N).count(),
        start.elapsed().as_secs_f64()
    );
    let mut ok = true;
    ok &= report("1 (one main eigenvalue iff regular)", true, || regular_iff_one_main(&corpus));
    ok &= report("2 (unique (a,b) iff two main eigenvalues)", true, || criterion_iff_two_main(&corpus));
    ok &= report("3 (golden (a,b) table)", true, golden_table);
    ok &= report("4 (K4 attachment Diophantine family)", true, k4_diophantine);
    ok &= report("5 (completeness, n <= 9)", true, || completeness(&corpus, COMPLETENESS_CI_MAX_N));
    let complete_full = report("5 (completeness, n <= 10)", full, || completeness(&corpus, FULL_MAX_N));
    ok &= report("6 (lemma suite on positives)", true, || lemma_suite(&corpus));
    ok &= report("7 (base taxonomy)", true, || base_taxonomy(&corpus));
    ok &= report("8 (float vs exact main count, trace)", true, || numerical_cross_check(&corpus));
    ok &= report("9 (generator vs naive subset filter)", true, generator_soundness);
    if !complete_full {
        return ExitCode::from(2);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
