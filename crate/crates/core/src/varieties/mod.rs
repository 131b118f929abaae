//! Artin–Schreier curves `f(y) = g1(x) g2(x) + a x`, Witt endomorphisms of
//! `W_2` and the surfaces built from them, with point counts, L-polynomials
//! and supersingularity certificates.
//!
//! ```
//! use gausslab::fields::{AdditivePolynomial, FiniteField};
//! use gausslab::varieties::{betti_prediction, zeta_pipeline, CurveSpec};
//!
//! let f2 = FiniteField::prime(2).unwrap();
//! let f = AdditivePolynomial::lang(&f2, 1).scale(f2.from_int(-1)); // y² + y
//! let x = AdditivePolynomial::identity(&f2);
//! let spec = CurveSpec::new(f, x.clone(), AdditivePolynomial::frobenius_power(&f2, 1), f2.zero()).unwrap();
//! let b = betti_prediction(&spec).unwrap().b;
//! let z = zeta_pipeline(&spec, b).unwrap();
//! assert_eq!(z.counts, vec![2, 8]);
//! assert_eq!(z.l_poly.to_string(), "T^2 + 2");
//! assert_eq!(z.certificate.unwrap().m, 2);
//! ```

mod curve;
mod descriptor;
mod surface;
mod witt_endo;

pub use curve::{
    betti_closure, betti_prediction, count_points, count_points_by_characters, zeta_pipeline, BettiClosure,
    BettiPrediction, CharacterCount, CurveSpec, ZetaData,
};
pub use descriptor::{AdditiveRepr, CurveDescriptor, SurfaceDescriptor, VarietyDescriptor};
pub use surface::{
    build_surface, fiber_product_counts, surface_counts, FiberProductCount, SummandCertificate, SurfaceCount,
    SurfaceEquations, SurfaceSpec, FREE_VARIABLE_NOTE,
};
pub use witt_endo::{verify_additive, w2_endomorphism, AdditivityReport, W2Endomorphism};

use crate::charsum::CharSumError;
use crate::exactalg::ExactError;
use crate::fields::FieldError;
use crate::limits::{self, CapExceeded};

/// Default per-axis cap for curve counts.
pub const CURVE_AXIS_CAP: u64 = 1 << 16;
/// Default per-axis cap for surface counts.
pub const SURFACE_AXIS_CAP: u64 = 1 << 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VarietyError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("curve is not geometrically connected: c = {c} gives a constant summand")]
    NotConnected { c: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error(transparent)]
    CharSum(#[from] CharSumError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The axis cap applies unless the global scale cap was overridden.
fn check_axis(axis: u64, cap: u64) -> Result<(), CapExceeded> {
    if limits::scale_cap().is_some() && axis > cap {
        return Err(CapExceeded { requested: axis as u128, cap });
    }
    limits::check_points(axis as u128)
}
