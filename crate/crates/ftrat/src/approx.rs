//! Evaluation of the frequency-domain approximations and the time-domain
//! reconstructions.
//!
//! The partial-fraction form is the recommended evaluator: each term is a
//! ratio of a cubic (at most) over a strictly positive quartic, evaluated in
//! `nu^2` with fused multiply-adds and summed in fixed ascending term order,
//! so results are bit-reproducible and exactly even or odd in `nu` for pure
//! parity models.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::coeffs::{
    compute_baseline_coeffs, compute_even_coeffs, compute_mixed_coeffs, compute_odd_coeffs,
    BaselineCoefficients, CoeffError, ShiftedSamples, TermCoefficients,
};
use crate::params::ParamSet;
use crate::sampling::{Parity, SampledFunction};

#[derive(Debug, Error)]
pub enum ApproxError {
    #[error("|t| = {t} outside the validity interval [-{limit}, {limit}]")]
    OutsideInterval { t: f64, limit: f64 },
    #[error("reconstruction decay constant must be nonnegative, got {0}")]
    NegativeSigma(f64),
    #[error("time-domain reconstruction needs a pure parity, got mixed samples")]
    MixedReconstruction,
    #[error("model expects {expected} terms, got {got}")]
    TermCount { expected: usize, got: usize },
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// An M-term sum of quartic-denominator rational terms approximating the
/// transform of a sampled function.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractionModel {
    params: ParamSet,
    parity: Parity,
    terms: Vec<TermCoefficients>,
}

impl PartialFractionModel {
    /// Builds the model for a sampled function, dispatching on its parity.
    pub fn from_sampled(f: &SampledFunction) -> Result<Self, ApproxError> {
        let terms = match f.parity() {
            Parity::EvenReal => compute_even_coeffs(f)?,
            Parity::OddImaginary => compute_odd_coeffs(f)?,
            Parity::Mixed => compute_mixed_coeffs(f),
        };
        Ok(Self {
            params: *f.params(),
            parity: f.parity(),
            terms,
        })
    }

    /// Rebuilds a model from previously exported coefficients.
    pub fn from_parts(
        params: ParamSet,
        parity: Parity,
        terms: Vec<TermCoefficients>,
    ) -> Result<Self, ApproxError> {
        if terms.len() != params.terms() {
            return Err(ApproxError::TermCount {
                expected: params.terms(),
                got: terms.len(),
            });
        }
        Ok(Self { params, parity, terms })
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn terms(&self) -> &[TermCoefficients] {
        &self.terms
    }

    /// The approximated transform value at `nu`. Both numerator families are
    /// real, so the result is real; see [`PartialFractionModel::eval`] for the
    /// complex-typed variant used alongside the baseline comparator.
    pub fn eval_re(&self, nu: f64) -> f64 {
        let y = nu * nu;
        let mut acc = 0.0;
        for t in &self.terms {
            // numerator: (alpha + beta y) + nu (eta + theta y)
            let even = t.beta.mul_add(y, t.alpha);
            let odd = t.theta.mul_add(y, t.eta);
            let num = nu.mul_add(odd, even);
            // denominator: (y + lambda) y + kappa, strictly positive
            let den = y.mul_add(y + t.lambda, t.kappa);
            acc += num / den;
        }
        acc
    }

    /// Same as [`PartialFractionModel::eval_re`] with a zero imaginary part.
    pub fn eval(&self, nu: f64) -> Complex64 {
        Complex64::new(self.eval_re(nu), 0.0)
    }
}

/// Evaluates the partial-fraction approximation at `nu`.
pub fn eval_partial_fractions(model: &PartialFractionModel, nu: f64) -> Complex64 {
    model.eval(nu)
}

/// The prior one-sided method, kept as a comparison baseline. Unlike the
/// partial-fraction form it carries the unit-modulus factor `e^(2 pi i nu a)`
/// and therefore is not a ratio of polynomials in `nu`.
#[derive(Clone, Debug, PartialEq)]
pub struct BaselineModel {
    params: ParamSet,
    shift: f64,
    imaginary_input: bool,
    terms: Vec<BaselineCoefficients>,
}

impl BaselineModel {
    /// Computes baseline coefficients over `terms` summation terms from
    /// samples on the shifted one-sided grid.
    pub fn build(samples: &ShiftedSamples, terms: usize) -> Self {
        Self {
            params: *samples.params(),
            shift: samples.shift(),
            imaginary_input: samples.imaginary(),
            terms: compute_baseline_coeffs(samples, terms),
        }
    }

    pub fn terms(&self) -> &[BaselineCoefficients] {
        &self.terms
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// Evaluates the baseline approximation at `nu`, including the
    /// trigonometric multiplier that undoes the grid shift.
    pub fn eval(&self, nu: f64) -> Complex64 {
        let s = Complex64::new(self.params.sigma(), 2.0 * PI * nu);
        let s2 = s * s;
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            acc += (t.a_term * s + t.b_term) / (t.freq * t.freq + s2);
        }
        let phase = 2.0 * PI * nu * self.shift;
        let multiplier = Complex64::new(phase.cos(), phase.sin());
        let out = multiplier * acc;
        if self.imaginary_input {
            Complex64::new(-out.im, out.re)
        } else {
            out
        }
    }
}

/// Evaluates the baseline approximation; see [`BaselineModel::eval`].
pub fn eval_baseline(model: &BaselineModel, nu: f64) -> Complex64 {
    model.eval(nu)
}

/// Truncated cosine-sum approximation of `sinc(pi t / step)`:
/// the mean of `cos(mu_m t)` over the term frequencies. Only valid on
/// `|t| <= terms * step`; outside that interval the sum is a periodic
/// artifact and is rejected.
pub fn cosine_sinc(t: f64, params: &ParamSet) -> Result<f64, ApproxError> {
    let limit = params.terms() as f64 * params.step();
    if t.abs() > limit {
        return Err(ApproxError::OutsideInterval { t, limit });
    }
    let m_total = params.terms() as f64;
    let mut acc = 0.0;
    for m in 1..=params.terms() {
        let mu = PI * (m as f64 - 0.5) / (m_total * params.step());
        acc += (mu * t).cos();
    }
    Ok(acc / m_total)
}

/// Time-domain reconstruction from the samples.
///
/// With `damped = false` this evaluates the bare double cosine sum with
/// `e^(sigma n h)`-weighted samples, which approximates `f(t) e^(sigma t)` on
/// `|t| <= terms * step` (and is rejected outside). With `damped = true` the
/// result is multiplied by `e^(-sigma t)`, approximating `f(t)` itself; the
/// damping suppresses the periodic copies, so any `t` is accepted.
///
/// `sigma` is passed explicitly (rather than read from the parameters) so the
/// undamped `sigma = 0` case can be reproduced; it must be nonnegative. The
/// reconstruction applies to the parity-active channel: the real part for
/// even-real samples, the imaginary part for odd-imaginary ones (the function
/// value there is `i` times the returned number).
pub fn reconstruct_time_domain(
    f: &SampledFunction,
    t: f64,
    sigma: f64,
    damped: bool,
) -> Result<f64, ApproxError> {
    if sigma < 0.0 || sigma.is_nan() {
        return Err(ApproxError::NegativeSigma(sigma));
    }
    let p = f.params();
    let limit = p.terms() as f64 * p.step();
    if !damped && t.abs() > limit {
        return Err(ApproxError::OutsideInterval { t, limit });
    }
    let imaginary = match f.parity() {
        Parity::EvenReal => false,
        Parity::OddImaginary => true,
        Parity::Mixed => return Err(ApproxError::MixedReconstruction),
    };
    let w: Vec<f64> = p
        .indices()
        .map(|n| {
            let v = f.value(n);
            let c = if imaginary { v.im } else { v.re };
            c * (sigma * p.time(n)).exp()
        })
        .collect();
    let m_total = p.terms() as f64;
    let mut acc = 0.0;
    for m in 1..=p.terms() {
        let mu = PI * (m as f64 - 0.5) / (m_total * p.step());
        for (i, n) in p.indices().enumerate() {
            acc += w[i] * (mu * (t - p.time(n))).cos();
        }
    }
    acc /= m_total;
    Ok(if damped { (-sigma * t).exp() * acc } else { acc })
}
