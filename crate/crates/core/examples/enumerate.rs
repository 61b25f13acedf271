//! Connected graphs by edge count, and the tricyclic graphs of one order
//! with exactly two Q-main eigenvalues.
//!
//!     cargo run --release --example enumerate -- 8

use qmain::criterion::solve_ab;
use qmain::enumeration::{enumerate_connected_all, enumerate_tricyclic, EnumOptions};
use qmain::families::match_family;
use qmain::graph6;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map_or(Ok(7), |s| s.parse())?;
    let opts = EnumOptions::default();
    if n <= 7 {
        let by_m = enumerate_connected_all(n, &opts)?;
        let counts: Vec<usize> = by_m.iter().map(Vec::len).collect();
        println!("connected graphs on {n} vertices by edge count from {}: {counts:?}", n - 1);
    }
    let tricyclic = enumerate_tricyclic(n, &opts)?;
    println!("{} connected tricyclic graphs on {n} vertices", tricyclic.len());
    for g in &tricyclic {
        if let Some((a, b)) = solve_ab(g)?.integers() {
            let family = match_family(g)?.map_or("-".to_string(), |d| d.id.to_string());
            println!("  {:<4} ({a}, {b}) {}", family, graph6::encode(g));
        }
    }
    Ok(())
}
