//! Rational approximation of the Fourier transform for functions with an
//! even real part and an odd imaginary part.
//!
//! Sampling the input against an exponential-decay multiplier turns the
//! truncated cosine-expansion of the sinc kernel into an approximation whose
//! transform is a sum of quartic-denominator rational terms with no
//! trigonometric factor in the frequency variable:
//!
//! ```text
//! F(nu) ~ sum_{m=1..M} (alpha_m + eta_m nu + beta_m nu^2 + theta_m nu^3)
//!                      / (kappa_m + lambda_m nu^2 + nu^4)
//! ```
//!
//! The crate computes the expansion coefficients from samples ([`coeffs`]),
//! evaluates the partial-fraction form and the time-domain reconstructions
//! ([`approx`]), collapses the sum into a single ratio of polynomials
//! ([`polyform`]), and verifies everything against analytic and quadrature
//! references ([`oracle`]).
//!
//! The partial-fraction form is the recommended evaluator; the collapsed
//! `P(nu)/Q(nu)` form exists for export to tools that expect a plain
//! polynomial ratio. All types are immutable values after construction and
//! evaluation functions are pure, so everything is safe to share across
//! threads.

pub mod approx;
pub mod coeffs;
mod dd;
pub mod oracle;
pub mod params;
pub mod polyform;
pub mod preset;
pub mod sampling;
mod textio;

pub use approx::{
    cosine_sinc, eval_baseline, eval_partial_fractions, reconstruct_time_domain, ApproxError,
    BaselineModel, PartialFractionModel,
};
pub use coeffs::{
    compute_baseline_coeffs, compute_even_coeffs, compute_mixed_coeffs, compute_mu,
    compute_odd_coeffs, export_coefficients, import_coefficients, BaselineCoefficients,
    CoeffError, ShiftedSamples, TermCoefficients,
};
pub use oracle::{
    analytic_reference, error_report, error_report_against, quadrature_ft, ErrorReport,
    OracleError, QuadratureFt,
};
pub use params::{ParamError, ParamSet};
pub use polyform::{
    collapse, eval_rational, export_rational, import_rational, poly_mul, PolyError, Polynomial,
    PrecisionNote, RationalPolynomial,
};
pub use preset::{all_presets, preset, Preset};
pub use sampling::{
    load_samples, sample_builtin, BuiltinFunction, BuiltinKind, Parity, SampleError,
    SampledFunction,
};
