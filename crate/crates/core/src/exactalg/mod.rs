//! Exact arithmetic in cyclotomic fields and `Z[T]`.
//!
//! ```
//! use gausslab::exactalg::CyclotomicNumber;
//! let i = CyclotomicNumber::zeta(4, 1);
//! let one = CyclotomicNumber::one(4);
//! let g = &one + &i;
//! assert_eq!(g.abs_square(), CyclotomicNumber::from_int(4, 2));
//! assert_eq!(i.is_root_of_unity(), Some(4));
//! ```

mod cyclotomic;
mod intpoly;
mod serde_impl;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CyclotomicNumber};
pub use intpoly::{
    char_poly_power_sums, power_sums_to_char_poly, to_i64_coeffs, weil_certificate, IntPolynomial, WeilCertificate,
    DEFAULT_WEIL_BOUND,
};
pub use serde_impl::{parse_bigint, BigIntRepr};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order {order} exceeds the cap {cap}")]
    IncompatibleOrders { order: u64, cap: u64 },
    #[error("order {order} does not divide {target}")]
    NotADivisor { order: u32, target: u32 },
    #[error("elementary symmetric function e_{k} is not an integer")]
    NonIntegralElementarySymmetric { k: usize },
    #[error("divisor is not monic")]
    NotMonic,
}
