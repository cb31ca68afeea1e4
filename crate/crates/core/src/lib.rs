//! Largest circles enclosing exactly `n` lattice points.
//!
//! For every `n` up to a bound the crate decides whether a largest circle
//! enclosing exactly `n` lattice points in its interior exists (`n` is
//! *maximally circlable*, MC) and computes the exact radius `R_n`, either the
//! radius of that circle or, for non-MC `n`, the least upper bound of all
//! `n`-enclosing radii. All geometric decisions are made on exact rationals.
//!
//! The pipeline is:
//!
//! 1. [`enumerate`] lists every lattice circle (three or more lattice points on
//!    the circumference) whose center lies in the key triangle, up to a radius
//!    bound from [`classify::radius_bound`].
//! 2. [`classify::build_rho_table`] keeps, for each interior count, the largest
//!    such circle.
//! 3. [`classify::classify`] scans the table upward and assigns MC status and
//!    `R_n`.

pub mod arith;
pub mod classify;
pub mod counting;
pub mod enumerate;
pub mod error;
pub mod io;
pub mod oracle;
pub mod special;
pub mod symmetry;

pub use arith::{rational_cmp, surd_normalize, Rational, SurdRadius};
pub use classify::{classify, Classification, RhoTable, Status};
pub use counting::{count_points, Circle, PointCount};
pub use enumerate::{CircleKey, LatticePoint};
pub use error::{ArithError, Error, Result};
