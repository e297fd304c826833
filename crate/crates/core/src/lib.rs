//! Exact symbolic exterior calculus for complex `(p,q)`-forms on a flat
//! local chart.
//!
//! Coefficients are polynomials in the independent Wirtinger symbols
//! `z1..zn, zb1..zbn` over the Gaussian rationals; nothing is evaluated in
//! floating point.

pub mod calculus;
pub mod dsl;
pub mod error;
pub mod form;
pub mod io;
pub mod metric;
pub mod obstruction;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod scenario;
pub mod star;

pub use calculus::{
    codifferential, dolbeault_del, dolbeault_delbar, exterior_d, harmonic_check, laplacian, HarmonicReport,
};
pub use error::{Error, Result};
pub use form::{Differential, Form, MultiIndex};
pub use metric::HermitianMetric;
pub use obstruction::{Direction, RealOrthogonalMatrix};
pub use poly::{Variable, WirtingerPolynomial};
pub use scalar::GaussianRational;
pub use star::{hodge_star, StarConvention};
