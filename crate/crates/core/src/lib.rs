//! Exact arithmetic for quadratic character sums over finite fields.
//!
//! The crate is organised bottom-up:
//!
//! - [`fields`]: finite fields `F_{p^m}`, towers, length-two Witt vectors and
//!   additive polynomials.
//! - [`exactalg`]: exact cyclotomic numbers and integer polynomials (Newton
//!   identities, Weil certificates).
//! - [`quadform`]: quadratic forms on finite abelian groups and their Gauss sums.
//! - [`charsum`]: symbolic quadratic data on `(F_q)^d`, their trace functions,
//!   pairings, kernels and the Hasse–Davenport type identities.
//! - [`heisenberg`]: Heisenberg groups of alternating pairings and their
//!   Stone–von Neumann representations.
//! - [`varieties`]: Artin–Schreier curves, Witt endomorphisms and surfaces,
//!   with point counts and supersingularity certificates.
//! - [`cli`]: job descriptors, reports, the bundled corpus and the
//!   `gausslab` command dispatcher.
//!
//! Runnable walkthroughs live in `examples/`; `cargo run --example gauss_sums`
//! is a good first stop.

pub mod charsum;
pub mod cli;
pub mod exactalg;
pub mod fields;
pub mod heisenberg;
pub mod limits;
pub mod quadform;
pub mod varieties;

pub use exactalg::{CyclotomicNumber, IntPolynomial};
pub use fields::{AdditivePolynomial, FieldElement, FiniteField, Tower, WittRing, WittVector2};
pub use limits::CapExceeded;
pub use quadform::{FiniteAbelianGroup, QuadraticForm};
