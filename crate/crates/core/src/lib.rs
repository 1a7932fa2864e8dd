//! Factor-counting invariants of surfaces bounded by knots, with the
//! supporting polynomial algebra, braid calculus, Alexander polynomials and
//! grid-diagram knot Floer homology.

pub mod alexander;
pub mod braid;
pub mod gridhfk;
pub mod polyalg;
pub mod rimcalc;
