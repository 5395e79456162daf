//! Exact-rational computations on a rational symplectic 4-manifold: curve classes,
//! toric models, Lie presentations, cohomology rings and inflation bookkeeping.

pub mod cli;
pub mod cohomology;
pub mod commalg;
pub mod homology;
pub mod inflation;
pub mod lie;
pub mod linalg;
pub mod ncalg;
pub mod rational;
pub mod series;
pub mod toric;
pub mod verify;
