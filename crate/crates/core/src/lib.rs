//! Exact spanning-tree counting and effective-resistance computations on
//! weighted multigraphs, with closed forms for complete and nearly complete
//! bipartite graphs and a verification harness that checks each closed form
//! against the linear-algebra and enumeration oracles.

pub mod error;
pub mod formulas;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod resistance;
pub mod spanning;
pub mod verify;

pub use error::{Error, Result};
pub use graph::Multigraph;
pub use linalg::{render, ExactMatrix, Rational};
pub use resistance::ResistorNetwork;
pub use spanning::{tau, tau_brute, tau_containing};
