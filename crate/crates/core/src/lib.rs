//! Exact divisor-class calculus on compactified Hurwitz spaces of degree-`k`
//! covers of the line and on moduli spaces of curves, with certificates
//! that the canonical class of the Hurwitz space is big.
//!
//! The class algebra is generic over [`Scalar`]; the aliases below fix the
//! exact rational instantiation used by certificates and reports, and an
//! `f64` one for numerical cross-checks.

pub mod bigness;
pub mod divisor;
pub mod error;
pub mod hurwitz;
pub mod low_slope;
pub mod partitions;
pub mod pushpull;
pub mod scalar;
pub mod wire;

pub use bigness::{scan, verify_coarse, verify_stack, BignessCertificate, Mode, ScanRow, Verdict};
pub use divisor::{BasisLabel, DivisorClass, SpaceDescriptor};
pub use error::{Error, Result};
pub use hurwitz::HurwitzClass;
pub use low_slope::{DivisorRecipe, Hypothesis, RecipeName};
pub use partitions::{BoundaryIndex, Partition};
pub use pushpull::QuadraticClass;
pub use scalar::{Rational, Scalar};

pub type DivisorClassQ = DivisorClass<Rational>;
pub type DivisorClassF64 = DivisorClass<f64>;
pub type QuadraticClassQ = QuadraticClass<Rational>;
pub type QuadraticClassF64 = QuadraticClass<f64>;
pub type HurwitzClassQ = HurwitzClass<Rational>;
pub type HurwitzClassF64 = HurwitzClass<f64>;
pub type DivisorRecipeQ = DivisorRecipe<Rational>;
pub type DivisorRecipeF64 = DivisorRecipe<f64>;
