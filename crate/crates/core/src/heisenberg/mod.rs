//! Heisenberg groups of alternating pairings and their Stone–von Neumann representations.
//!
//! ```
//! use gausslab::heisenberg::{build_group, check_faithful, stone_von_neumann, AlternatingPairing};
//! let h = build_group(&AlternatingPairing::standard(3).unwrap()).unwrap();
//! let rep = stone_von_neumann(&h, 1).unwrap();
//! assert_eq!((h.order(), rep.dim()), (27, 3));
//! assert!(rep.is_irreducible() && check_faithful(&rep));
//! ```

mod datum;
mod group;
mod pairing;
mod svn;

pub use datum::{datum_polynomial, heisenberg_from_datum, DatumHeisenberg, DeckCheck, MAX_DECK_POINTS};
pub use group::{build_group, HElement, HeisenbergCertificate, HeisenbergGroup};
pub use pairing::{darboux, AlternatingPairing, Darboux, PairingDescriptor};
pub use svn::{check_faithful, stone_von_neumann, stone_von_neumann_from_l, MonomialMatrix, SvNRepresentation};

use crate::charsum::CharSumError;
use crate::fields::FieldError;
use crate::limits::CapExceeded;
use crate::quadform::QuadError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HeisError {
    #[error("pairing is not alternating: e({x}, {x}) != 0")]
    NotAlternating { x: String },
    #[error("pairing is not biadditive at ({x}, {y})")]
    NotBilinear { x: String, y: String },
    #[error("pairing is not perfect: {witness} is in the radical")]
    NotPerfect { witness: String },
    #[error("bad pairing: {0}")]
    BadPairing(String),
    #[error("group check failed: {0}")]
    AxiomViolated(String),
    #[error("psi = {psi} is not injective on Z/{order}")]
    NonInjectiveCharacter { psi: u64, order: u64 },
    #[error("no additive g with g^p - g = b(., k) for kernel point {k}")]
    NoAdditiveSolution { k: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    CharSum(#[from] CharSumError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}
