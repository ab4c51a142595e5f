//! Exact combinatorics of skew semistandard tableaux under the type A crystal action.
//!
//! The cyclic element `cₙ = σ₁σ₂⋯σₙ₋₁` of the crystal reflection action cyclically rotates
//! tableau weights. [`csp`] checks cyclic sieving for ⟨cₙ⟩ against principal
//! specializations of skew Schur polynomials, using only integer arithmetic.

pub mod crystal;
pub mod csp;
pub mod packed;
pub mod qpoly;
pub mod shapes;
pub mod sweep;
pub mod tableau;

pub use crystal::{c_action, orbit, reflect, CrystalError, Orbit};
pub use csp::{CspError, CspReport, Scope, Verdict};
pub use qpoly::{Convention, QPolynomial};
pub use shapes::{Partition, ShapeError, SkewShape, WeakComposition};
pub use tableau::{Tableau, TableauError};
