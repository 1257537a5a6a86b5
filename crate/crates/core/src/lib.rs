//! Exact computations with finite-dimensional quiver representations over ℚ and prime fields:
//! Hom spaces, evaluation maps and their kernels, Auslander-Reiten translation, and
//! Krull-Schmidt decomposition for the Kronecker quiver.

#![allow(clippy::needless_range_loop)]

pub mod ar;
pub mod error;
pub mod io;
pub mod kronecker;
pub mod linalg;
pub mod quiver;
pub mod rep;
pub mod report;

pub use error::{Error, Result};
pub use kronecker::{Decomposition, IndecLabel, Param};
pub use linalg::{Field, Matrix, Scalar};
pub use quiver::Quiver;
pub use rep::{HomBasis, Morphism, Representation};
