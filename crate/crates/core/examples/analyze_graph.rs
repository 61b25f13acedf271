//! Full analysis of one graph given as graph6 (default: the star K_{1,4}).
//!
//!     cargo run --example analyze_graph -- 'I??Z@PP`_'

use qmain::cli::analyze_graph;
use qmain::graph6;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let input = std::env::args().nth(1).unwrap_or_else(|| "D?{".to_string());
    let g = graph6::decode(&input)?;
    let record = analyze_graph(1, &input, &g)?;
    println!("{}", serde_json::to_string_pretty(&record)?);
    Ok(())
}
