//! Canonical forms: relabelings share a key, non-isomorphic graphs do not.

use qmain::canon::{canonical_form, is_isomorphic};
use qmain::graph::named;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let petersen = named::petersen();
    let shifted: Vec<usize> = (0..10).map(|v| (v * 3 + 1) % 10).collect();
    let relabeled = petersen.relabel(&shifted);
    println!("Petersen           {}", canonical_form(&petersen)?);
    println!("Petersen relabeled {}", canonical_form(&relabeled)?);
    println!("prism              {}", canonical_form(&named::prism())?);
    println!("isomorphic: {}", is_isomorphic(&petersen, &relabeled)?);
    println!("Petersen vs prism: {}", is_isomorphic(&petersen, &named::prism())?);
    Ok(())
}
