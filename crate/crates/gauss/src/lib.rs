//! Oscillatory Gauss-type measures on finite-dimensional Euclidean spaces:
//! regularized improper integrals by contour-rotated Gauss-Hermite quadrature
//! with extrapolation in the regulator, closed-form moments, and numerical
//! checks of the factorization and delta-reduction identities.

pub mod checks;
pub mod error;
pub mod hermite;
pub mod measure;
pub mod suite;

pub use checks::{
    delta_reduction_check, periodic_average, pexp_factorization_check, AffineForm, CheckStatus, DeltaConfig,
    DeltaReport, FourierMode, MatrixExpTrace, PeriodicFunction, PexpReport,
};
pub use error::{GaussError, Result};
pub use measure::{
    improper_integral_numeric, moment_closed_form, FnIntegrand, ImproperIntegral, Integrand, Moments, OscGaussMeasure,
    QuadratureOptions, DEFAULT_SCHEDULE,
};
pub use suite::{run_suite, SuiteReport};
