//! Quadratic forms on finite abelian groups and their Gauss sums.
//!
//! ```
//! use gausslab::quadform::{gauss_sum, FiniteAbelianGroup, QuadraticForm};
//! use gausslab::CyclotomicNumber;
//! let g = FiniteAbelianGroup::new(&[2]).unwrap();
//! // Q(0) = 1, Q(1) = i.
//! let q = QuadraticForm::from_exponents(&g, 4, vec![0, 1]).unwrap();
//! let one_plus_i = &CyclotomicNumber::one(4) + &CyclotomicNumber::zeta(4, 1);
//! assert_eq!(gauss_sum(&q), one_plus_i);
//! ```

mod descriptor;
mod form;
mod gauss;
mod group;
mod random;

pub use descriptor::{FormDescriptor, ValueRepr};
pub use form::{BilinearPairing, Character, QuadraticForm};
pub use gauss::{
    char2_invariant, gauss_sum, radical_descent, recursive_gauss_eval, twist_gauss_identity, verify_gauss_sum_theorem,
    Char2Invariant, DescentOutcome, GaussSumCertificate, RadicalDescent, TwistCheck,
};
pub use group::FiniteAbelianGroup;
pub use random::random_nondegenerate;

use crate::limits::CapExceeded;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadError {
    #[error("not quadratic: B({x} + {y}, {z}) != B({x}, {z}) B({y}, {z})")]
    NotQuadratic { x: String, y: String, z: String },
    #[error("value at {key} is not a root of unity")]
    NotRootOfUnity { key: String },
    #[error("the form is degenerate")]
    Degenerate,
    #[error("Gauss sum theorem violated: {0}")]
    TheoremViolated(String),
    #[error("character is not of the form B(a, -)")]
    CharacterNotInImage,
    #[error("group is not an elementary abelian 2-group")]
    NotElementaryTwoGroup,
    #[error("no non-degenerate form found after bounded retries")]
    ConstructionFailed,
    #[error("bad form descriptor: {0}")]
    BadDescriptor(String),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}
