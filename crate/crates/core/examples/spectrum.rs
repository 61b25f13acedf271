//! Q-spectrum of a few named graphs, with the main eigenvalues marked and
//! the float count compared against the exact walk-matrix rank.

use qmain::graph::named;
use qmain::spectral::{q_spectrum_default, signless_laplacian, walk_matrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let graphs = [
        ("P4", named::path(4)),
        ("C6", named::cycle(6)),
        ("K_{1,4}", named::star(4)),
        ("Petersen", named::petersen()),
        ("prism", named::prism()),
    ];
    for (name, g) in &graphs {
        let report = q_spectrum_default(g)?;
        println!("{name}: {} main (exact), {} main (float)", report.exact_main_count, report.float_main_count());
        for group in &report.groups {
            let mark = if group.is_main { "*" } else { " " };
            println!("  {mark} {:>9.5} x{}", group.value, group.multiplicity);
        }
    }
    let q = signless_laplacian(&named::path(4));
    println!("walk matrix of P4, by column:");
    for col in walk_matrix(&q) {
        println!("  {}", col.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
    }
    Ok(())
}
