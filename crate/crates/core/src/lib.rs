//! Design calculations for two adjacent, magnetically trapped matter-wave
//! interferometers shielded from each other by a grounded conducting plate.
//!
//! * [`entanglement`]: gravitational phases, the decohered two-qubit state,
//!   negativity and the PPT witness.
//! * [`em`]: dipole and Casimir-Polder backgrounds (sphere-sphere and
//!   sphere-plate).
//! * [`trapping`]: diamagnetic trap energy, the field and gradient the trap
//!   needs to keep a sphere off the plate, and a multipole trap profile.
//! * [`design`]: minimal superposition widths and parameter sweeps.
//!
//! All quantities are SI.

// `!(x > 0.0)` is how NaN gets rejected; index loops read better in the Jacobi sweep
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod design;
pub mod eigen;
pub mod em;
pub mod entanglement;
mod error;
pub mod roots;
pub mod trapping;
pub mod units;

pub use error::{Error, Result};
