use thiserror::Error;

/// Errors from run-parameter validation.
#[derive(Debug, Error)]
pub enum ParamError {
    #[error("term count must be at least 1")]
    ZeroTerms,
    #[error("half sample count must be at least 1")]
    ZeroHalfCount,
    #[error("sampling step must be positive and finite, got {0}")]
    BadStep(f64),
    #[error("decay constant sigma must be positive and finite, got {0}")]
    BadSigma(f64),
    #[error("declared width must be positive and finite, got {0}")]
    BadWidth(f64),
}

/// Parameters governing one approximation run: the number of expansion terms,
/// the sampling grid and the decay constant.
///
/// `sigma <= 0` is rejected. At `sigma = 0` every quartic denominator factors
/// as `(nu^2 - mu^2/(4 pi^2))^2` and has real roots, so the frequency-domain
/// forms are undefined on parts of the real axis. Time-domain reconstruction,
/// which stays well defined without damping, takes its decay constant as a
/// separate argument instead of reading it from here.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamSet {
    terms: usize,
    half_count: usize,
    step: f64,
    sigma: f64,
    declared_width: Option<f64>,
}

impl ParamSet {
    /// Validates and builds a parameter set. `terms` is the number of
    /// expansion terms, `half_count` the half sample count (samples run over
    /// `-half_count..=half_count`), `step` the grid spacing and `sigma` the
    /// decay constant.
    pub fn new(terms: usize, half_count: usize, step: f64, sigma: f64) -> Result<Self, ParamError> {
        if terms == 0 {
            return Err(ParamError::ZeroTerms);
        }
        if half_count == 0 {
            return Err(ParamError::ZeroHalfCount);
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(ParamError::BadStep(step));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(ParamError::BadSigma(sigma));
        }
        Ok(Self {
            terms,
            half_count,
            step,
            sigma,
            declared_width: None,
        })
    }

    /// Attaches the effective width `2*tau` of the input function, i.e. the
    /// span outside of which its tail integrals are negligible. Used only for
    /// the coverage query; no automatic width detection is attempted.
    pub fn with_declared_width(mut self, width: f64) -> Result<Self, ParamError> {
        if !(width.is_finite() && width > 0.0) {
            return Err(ParamError::BadWidth(width));
        }
        self.declared_width = Some(width);
        Ok(self)
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    pub fn half_count(&self) -> usize {
        self.half_count
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn declared_width(&self) -> Option<f64> {
        self.declared_width
    }

    /// Length of the sampled interval, `2 * half_count * step`.
    pub fn span(&self) -> f64 {
        2.0 * self.half_count as f64 * self.step
    }

    /// Whether the sampled span covers the given function width.
    pub fn covers_width(&self, width: f64) -> bool {
        self.span() >= width
    }

    /// Coverage of the declared width, if one was declared.
    pub fn covers_declared_width(&self) -> Option<bool> {
        self.declared_width.map(|w| self.covers_width(w))
    }

    /// Grid time for a signed sample index.
    pub fn time(&self, n: i64) -> f64 {
        n as f64 * self.step
    }

    /// Signed sample indices in fixed ascending order.
    pub fn indices(&self) -> impl Iterator<Item = i64> {
        let n = self.half_count as i64;
        -n..=n
    }
}
