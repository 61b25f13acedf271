//! The degree criterion: a graph has exactly two Q-main eigenvalues when
//! a*d(v) + b = d(v)^2 + S(v) has a unique solution, S(v) being the sum of
//! the neighbor degrees.

use qmain::criterion::{check_membership, solve_ab, AbSolution};
use qmain::graph::named;
use qmain::spectral::exact_main_count;
use qmain::Graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut k4_pendant = named::complete(4);
    let p = k4_pendant.add_vertex();
    k4_pendant.add_edge(0, p)?;
    let graphs: [(&str, Graph); 5] = [
        ("K_{1,3}", named::star(3)),
        ("P4", named::path(4)),
        ("P5", named::path(5)),
        ("C5", named::cycle(5)),
        ("K4 + pendant", k4_pendant),
    ];
    for (name, g) in &graphs {
        let ab = solve_ab(g)?;
        let verdict = match &ab {
            AbSolution::Unique { a, b, .. } => format!("unique (a, b) = ({a}, {b})"),
            AbSolution::NoSolution => "no solution".to_string(),
            AbSolution::Underdetermined { degree } => format!("underdetermined, {degree}-regular"),
        };
        println!("{name:<13} {verdict:<32} main eigenvalues: {}", exact_main_count(g));
    }

    let c4 = named::cycle(4);
    let m = check_membership(&c4, 4, 0);
    println!("C4 against (4, 0): residuals {:?}", m.residuals);
    Ok(())
}
