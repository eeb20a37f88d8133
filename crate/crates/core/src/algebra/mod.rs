//! Exact arithmetic kernel: fields, graded polynomial rings, Gröbner bases
//! for submodules of free modules, lifts, syzygies and resolutions.

pub mod field;
pub mod gb;
pub mod linalg;
pub mod matrix;
pub mod module;
pub mod mono;
pub mod ops;
pub mod poly;
pub mod ring;

pub use field::{Coeff, Field};
pub use matrix::Mat;
pub use module::{Ideal, Presentation};
pub use ops::{free_resolution, is_regular_sequence, lift, lift_matrix, syzygies, LiftSolver};
pub use poly::Poly;
pub use ring::{Ctx, PolyRing, RingCtx};
