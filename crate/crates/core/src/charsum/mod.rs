//! Quadratic character data on `U = (F_q)^d` and their sums.
//!
//! A [`QuadDatum`] is a finite list of terms whose trace function
//! `t(x) = ψ(Tr P(x)) · ψ'(…)` is quadratic on `U(F_{q^n})` for every `n`.
//!
//! ```
//! use gausslab::charsum::{char_sum, geometric_kernel, QuadDatum, Term};
//! use gausslab::{CyclotomicNumber, FiniteField};
//! let f4 = FiniteField::new(2, 2, None).unwrap();
//! let x3 = QuadDatum::new(&f4, 1).unwrap().with_term(Term::Diag { j: 0, i: 1, a: f4.one() }).unwrap();
//! assert_eq!(char_sum(&x3, 2).unwrap(), CyclotomicNumber::from_int(2, -8));
//! assert_eq!(geometric_kernel(&x3).unwrap().r, 1);
//! ```

mod datum;
mod descriptor;
mod identities;
mod kernel;
mod pairing;

pub use datum::{char_sum, derive_pairing, trace_value, LevelEvaluator, QuadDatum, Term};
pub use descriptor::{DatumDescriptor, TermRepr};
pub use identities::{
    artin_schreier_reduce, clb_cocycle_identity_check, gos_rank, hasse_davenport_check, hasse_davenport_with_r,
    invariance_check, pullback_sum_identity, GosRank, HasseDavenportReport, HdOutcome, InvarianceReport, LinearMap,
    PullbackReport,
};
pub use kernel::{geometric_kernel, geometric_kernel_of, rational_kernel, GeometricKernel, MAX_KERNEL_DIMENSION};
pub use pairing::{canonical_quadratic, symbolic_pairing, PairingDatum};

use crate::fields::FieldError;
use crate::limits::CapExceeded;
use crate::quadform::QuadError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharSumError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error("bad term: {0}")]
    BadTerm(String),
    #[error("pairing is not symmetric at block ({j}, {k})")]
    NotSymmetric { j: usize, k: usize },
    #[error("pairing is degenerate: column {column} vanishes after elimination")]
    DegeneratePairing { column: usize },
    #[error("kernel has odd p-rank {log_size}")]
    OddKernel { log_size: u32 },
    #[error("kernel of p-rank {log_size} not split by degree {degree}")]
    SplittingFieldTooLarge { degree: u32, log_size: u32 },
    #[error("coordinate map {j} is not etale")]
    NotEtale { j: usize },
    #[error("generator {generator} is not invertible")]
    NotInvertible { generator: usize },
    #[error("canonical form needs a one-dimensional pairing")]
    NotOneDimensional,
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("reduced degree {degree} is divisible by p")]
    SwanDivisibleByP { degree: u64 },
}
