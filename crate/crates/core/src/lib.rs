//! Q-main eigenvalues of graphs: exact main-eigenvalue counts, the degree
//! criterion for exactly two main eigenvalues, base structure of tricyclic
//! graphs, the known families with two main eigenvalues, and exhaustive
//! enumeration to check the characterization.

pub mod canon;
pub mod cli;
pub mod criterion;
pub mod enumeration;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod spectral;
pub mod structure;

pub use error::{Error, Result};
pub use graph::Graph;
