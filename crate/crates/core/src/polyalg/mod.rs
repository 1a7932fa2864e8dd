//! Laurent polynomials over GF(2), Z and Q, univariate factorization, and
//! the factor-counting function Ω on rings, modules and perturbed elements.

mod coeff;
mod factor;
mod laurent;
mod modp;
mod omega;
mod perturbed;
mod unimodular;
mod zassenhaus;

use thiserror::Error;

pub use coeff::{Coefficient, Ring};
pub use factor::{factor, Factorization, MAX_FACTOR_DEGREE};
pub use laurent::{Exponent, LaurentPoly};
pub use omega::{
    apply_unimodular, monomial_equivalent, omega_module, omega_ring, omega_substituted, poly_gcd,
    reduce_to_univariate, substitute_monomial, LineReduction, OmegaValue, SubstitutedOmega,
};
pub use perturbed::{is_projectively_integral, omega_perturbed, ExponentVector, PerturbedElement};
pub use unimodular::{vector_gcd, UnimodularMap};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("coefficient {value} is not in {ring}")]
    NotInRing { value: String, ring: Ring },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported: {0}")]
    UnsupportedRing(String),
    #[error("mixed coefficient rings {0} and {1}")]
    MixedRings(Ring, Ring),
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("vector {0:?} is not primitive")]
    NonPrimitiveVector(Vec<i64>),
    #[error("matrix is not unimodular: {0}")]
    NotUnimodular(String),
    #[error("degree {degree} exceeds the factorization cap {cap}")]
    DegreeTooLarge { degree: u64, cap: u64 },
    #[error("basis index {index} out of range for a basis of size {size}")]
    BasisIndexOutOfRange { index: usize, size: usize },
    #[error("element is not projectively integral")]
    NotProjectivelyIntegral,
    #[error("matrix is not invertible over GF(2)")]
    NotInvertible,
}
