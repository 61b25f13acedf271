//! Builds every family at its smallest parameters and checks each against
//! the membership and exact-rank oracles.

use qmain::families::{build_minimal, FamilyId};
use qmain::graph6;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:<4} {:<4} {:>3} {:>3} {:>3} {:>3}  {:<10} graph6", "id", "base", "a", "b", "n", "m", "params");
    for id in FamilyId::all() {
        let (d, g) = build_minimal(id)?;
        println!(
            "{:<4} {:<4} {:>3} {:>3} {:>3} {:>3}  {:<10} {}",
            id.to_string(),
            d.shape.to_string(),
            d.a,
            d.b,
            g.order(),
            g.edge_count(),
            d.params.to_string(),
            graph6::encode(&g)
        );
    }
    Ok(())
}
