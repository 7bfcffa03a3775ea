//! Exact computer algebra for skeletal fusion category data.
//!
//! The crate keeps every computation exact: scalars live in the rationals,
//! cyclotomic fields, or prime fields, and equality always means equality.
//! On top of the scalar layer sit fusion rings, F-symbol tables with the
//! pentagon check, the string-diagram duality calculus (quantum traces,
//! squared norms, global dimension), pivotal/spherical/quadruple-dual
//! structure searches, Frobenius data with the window element and the
//! separability test, and a small planar bordism layer: a certified
//! rewrite engine, a word grammar, immersed-circle invariants, and framing
//! classes.

pub mod scalars;

pub mod fusion_ring;

pub mod category_data;

mod trees;

pub mod duality_calculus;

pub mod structures;

pub mod frobenius;

pub mod bordism;

pub mod examples;

pub mod io;

pub use category_data::{gauge_transform, FSymbolTable, Gauge, Hexa, PentagonViolation, TableError};
pub use duality_calculus::{
    gamma, global_dimension, quantum_trace, squared_norm, DualityChoices, DualityError,
    GammaDirection, MorphismScalar,
};
pub use frobenius::{frobenius_axioms_check, frobenius_data, separability_check, window_element};
pub use fusion_ring::{FusionRing, Label, RingError, FP_TOLERANCE};
pub use scalars::{FieldSpec, Scalar, ScalarError};
pub use structures::{
    double_dual_gauge, pivotal_structures, quadruple_dual_check, spherical_check,
    PivotalStructure, QuadrupleDualReport, SphericalReport,
};
