//! Chain complexes of graded free modules, Koszul complexes, homology,
//! nullhomotopies, higher homotopies, minimization and cones.

pub mod chain;
pub mod homology;
pub mod homotopies;
pub mod koszul;
pub mod minimize;

pub use chain::{ChainComplex, ChainMap, Homotopy, MapSequence};
pub use homology::{exactness_window, homology, is_exact_at, nullhomotopy};
pub use homotopies::{higher_homotopies, koszul_dg_homotopies, multi_indices, HigherHomotopySystem};
pub use koszul::{koszul, KoszulComplex};
pub use minimize::{cone, minimize, Minimized};
