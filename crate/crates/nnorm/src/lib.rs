//! Planar packing geometry for the pseudo-norm N(x + iy) = √|xy| and its
//! dynamical applications.
//!
//! The library has two halves that meet at the golden ratio:
//!
//! * **Geometry** — admissible triangles and the closed-form area formula in
//!   their N-side-lengths, L∞-Delaunay triangulations built from empty
//!   axis-aligned squares, and point-packing certificates of the form
//!   `#Γ ≤ A/√5 + p/2 + 1` with exact equality detection on golden-lattice
//!   configurations ([`ngeom`], [`delaunay`], [`packing`]).
//! * **Dynamics** — interval exchange transformations, their ε_n minimal-gap
//!   sequences and Lagrange/Dirichlet constants, continued fractions and
//!   q‖qα‖ statistics for circle rotations, and Monte-Carlo recurrence
//!   experiments ([`iet`], [`rotation`], [`recurrence`]).
//!
//! Everything is generic over a [`scalar::Scalar`] coordinate type with two
//! implementations: exact elements of ℚ(√5) ([`exactnum::QF5`]) and plain
//! `f64` ([`scalar::F64`]). The exact path certifies equalities (the golden
//! lattice has determinant √5 and minimal N² exactly 1); the float path
//! scales to randomized experiments.
//!
//! ```
//! use nnorm::ngeom::golden_triple;
//! use nnorm::packing::{packing_bound_exact, Metric};
//!
//! // The golden triangle {0, (−1,1), (φ−1,φ)} meets the packing bound
//! // #Γ ≤ A/√5 + p/2 + 1 with exactly zero slack.
//! let report = packing_bound_exact(&golden_triple()).unwrap();
//! assert!(matches!(&report.slack, Metric::Field(s) if s.is_zero()));
//! assert!(report.equality);
//! ```

pub mod delaunay;
pub mod exactnum;
pub mod iet;
pub mod ngeom;
pub mod packing;
pub mod recurrence;
pub mod rotation;
pub mod scalar;

pub use exactnum::{Rational, Value, QF5};
pub use scalar::{Scalar, F64};
