//! Finite fields, towers, length-two Witt vectors and additive polynomials.
//!
//! Elements of `F_{p^m}` are stored as their index `Σ c_i p^i` in the
//! canonical enumeration, where `c_i` is the coefficient of `ω^i` in the
//! polynomial basis. The prime subfield is the index range `0..p`.
//!
//! ```
//! use gausslab::fields::FiniteField;
//!
//! let f4 = FiniteField::new(2, 2, Some(&[1, 1, 1])).unwrap();
//! let w = f4.from_coeffs(&[0, 1]).unwrap();
//! assert_eq!(f4.mul(w, w), f4.add(w, f4.one()));
//! assert_eq!(f4.trace(w), 1);
//! ```

mod additive;
mod descriptor;
mod field;
mod poly;
mod tower;
mod witt;

pub use additive::{AdditivePolynomial, LaurentAdditive};
pub use descriptor::{ElementRepr, FieldDescriptor, WittRepr};
pub use field::{FieldElement, FieldError, FiniteField};
pub use poly::FieldPoly;
pub use tower::Tower;
pub use witt::{gamma_carry, CarryPolynomial, WittRing, WittVector2};

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
