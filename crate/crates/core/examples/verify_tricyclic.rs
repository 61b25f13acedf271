//! Checks the tricyclic characterization at every order up to a bound.
//!
//!     cargo run --release --example verify_tricyclic -- 9
//!     cargo run --release --example verify_tricyclic -- 11 11

use qmain::enumeration::{verify_order, EnumOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n_max: usize = args.next().map_or(Ok(8), |s| s.parse())?;
    let n_min: usize = args.next().map_or(Ok(4), |s| s.parse())?;
    let opts = EnumOptions::default();
    let reports = (n_min..=n_max)
        .map(|n| verify_order(n, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    println!("{:>3} {:>9} {:>12} {:>9} {:>10}", "n", "tricyclic", "pendant-free", "positives", "violations");
    for r in &reports {
        println!(
            "{:>3} {:>9} {:>12} {:>9} {:>10}",
            r.n,
            r.tricyclic,
            r.pendant_free,
            r.positives.len(),
            r.violations.len()
        );
        for p in &r.positives {
            let family = p.family.as_deref().unwrap_or("?");
            let params = p.params.as_deref().map(|s| format!(" ({s})")).unwrap_or_default();
            println!("      {family}{params}: ({}, {}) {}", p.a, p.b, p.graph6);
        }
        for v in r.violations.iter().take(10) {
            println!("      violation {}: {} {}", v.kind, v.graph6, v.detail);
        }
    }
    if reports.iter().any(|r| !r.violations.is_empty()) {
        std::process::exit(2);
    }
    Ok(())
}
