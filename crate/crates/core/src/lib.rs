//! Satake-angle statistics for non-CM elliptic curves and ingested
//! eigenvalue data.
//!
//! The crate has three layers:
//!
//! * an exact coefficient algebra at unramified places (Chebyshev
//!   polynomials of the second kind, symmetric-power Dirichlet
//!   coefficients, Rankin-Selberg products, Clebsch-Gordan identities),
//! * a data-production layer (segmented prime sieve, Legendre-symbol
//!   point counting, CSV ingestion, binary angle cache),
//! * an analysis layer (Sato-Tate measures, interval discrepancies,
//!   two-dimensional Selberg majorants/minorants in the Chebyshev-U
//!   basis, prime-sum decay harness, effective convergence bounds).
//!
//! All analytic code is generic over the scalar type through
//! [`scalar::Scalar`]; concrete `f64` aliases live at the crate root.
//! Roots of unity are kept as exact rational rotations so that
//! central-character bucketing is exact equality, never a float
//! comparison.

pub mod angles;
pub mod cache;
pub mod cg;
pub mod curves;
pub mod error;
pub mod ingest;
pub mod majorant;
pub mod parallel;
pub mod pnt;
pub mod points;
pub mod report;
pub mod roots;
pub mod sample;
pub mod satake;
pub mod sato_tate;
pub mod scalar;
pub mod sieve;
pub mod svg;

pub use error::{Error, Result};
pub use roots::RootOfUnity;
pub use scalar::Scalar;

/// Concrete aliases for the generic analytic types.
pub type SatakeLocal64 = satake::SatakeLocal<f64>;
pub type CoefficientValue64 = satake::CoefficientValue<f64>;
pub type LocalContext64 = cg::LocalContext<f64>;
pub type Interval64 = majorant::Interval<f64>;
pub type TrigPoly1D64 = majorant::TrigPoly1D<f64>;
pub type TrigPoly2D64 = majorant::TrigPoly2D<f64>;
pub type FourierPoly2D64 = majorant::FourierPoly2D<f64>;

/// Crate version string embedded in every emitted report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
