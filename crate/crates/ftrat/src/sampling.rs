//! Input functions and their sampled form.
//!
//! Everything downstream consumes a [`SampledFunction`]: complex values
//! `f(n*step)` on the symmetric grid `n = -half_count..=half_count`, tagged
//! with the symmetry class of the function. Only functions whose real part is
//! even and whose imaginary part is odd are supported; the tag records which
//! of the two components (or both) is present.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use thiserror::Error;

use crate::params::ParamSet;
use crate::textio::fmt_f64;

/// Relative parity tolerance: violations up to this factor times the largest
/// sample magnitude are accepted when validating externally supplied data.
pub const PARITY_TOLERANCE: f64 = 1e-9;

/// Symmetry class of an input function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// Real-valued with `f(-t) = f(t)`; imaginary part identically zero.
    EvenReal,
    /// Purely imaginary with `Im f(-t) = -Im f(t)`; real part identically zero.
    OddImaginary,
    /// Even real part plus odd imaginary part.
    Mixed,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Parity::EvenReal => "even-real",
            Parity::OddImaginary => "odd-imaginary",
            Parity::Mixed => "mixed",
        };
        f.write_str(s)
    }
}

impl Parity {
    pub(crate) fn parse(s: &str) -> Option<Parity> {
        match s {
            "even-real" => Some(Parity::EvenReal),
            "odd-imaginary" => Some(Parity::OddImaginary),
            "mixed" => Some(Parity::Mixed),
            _ => None,
        }
    }
}

/// The four built-in test functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinKind {
    /// `1/((2t)^(2k) + 1)`, a smooth stand-in for the unit rectangular pulse.
    RectSmooth,
    /// `i*t/((2t)^(2k) + 1)`, the odd companion of the smooth pulse.
    TRectSmooth,
    /// `sqrt(pi) * exp(-(pi t)^2)`.
    Gauss,
    /// `i * pi^(3/2) * t * exp(-(pi t)^2)`.
    TGauss,
}

/// A built-in function together with its pulse smoothing exponent `k`
/// (only meaningful for the rectangular family).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuiltinFunction {
    kind: BuiltinKind,
    smoothing: u32,
}

/// Default smoothing exponent for the rectangular family.
pub const DEFAULT_SMOOTHING: u32 = 35;

impl BuiltinFunction {
    pub fn new(kind: BuiltinKind) -> Self {
        Self {
            kind,
            smoothing: DEFAULT_SMOOTHING,
        }
    }

    /// Overrides the smoothing exponent `k >= 1` of `(2t)^(2k)`.
    pub fn with_smoothing(mut self, k: u32) -> Self {
        assert!(k >= 1, "smoothing exponent must be at least 1");
        self.smoothing = k;
        self
    }

    pub fn kind(&self) -> BuiltinKind {
        self.kind
    }

    pub fn smoothing(&self) -> u32 {
        self.smoothing
    }

    pub fn parity(&self) -> Parity {
        match self.kind {
            BuiltinKind::RectSmooth | BuiltinKind::Gauss => Parity::EvenReal,
            BuiltinKind::TRectSmooth | BuiltinKind::TGauss => Parity::OddImaginary,
        }
    }

    /// Effective width `2*tau` outside of which the tails are negligible:
    /// 1.2 for the rectangular family and 4.0 for the Gaussian family (the
    /// Gaussian is below 1e-16 of its peak beyond `|t| = 2`).
    pub fn default_width(&self) -> f64 {
        match self.kind {
            BuiltinKind::RectSmooth | BuiltinKind::TRectSmooth => 1.2,
            BuiltinKind::Gauss | BuiltinKind::TGauss => 4.0,
        }
    }

    /// Evaluates the function at `t`.
    pub fn eval(&self, t: f64) -> Complex64 {
        self.eval_tracked(t).0
    }

    /// Evaluates at `t`, also reporting whether the pulse power overflowed
    /// and the value was saturated to zero (the function underflows there
    /// anyway).
    fn eval_tracked(&self, t: f64) -> (Complex64, bool) {
        match self.kind {
            BuiltinKind::RectSmooth => {
                let (p, sat) = smooth_pulse(t, self.smoothing);
                (Complex64::new(p, 0.0), sat)
            }
            BuiltinKind::TRectSmooth => {
                let (p, sat) = smooth_pulse(t, self.smoothing);
                (Complex64::new(0.0, t * p), sat)
            }
            BuiltinKind::Gauss => {
                let x = std::f64::consts::PI * t;
                (
                    Complex64::new(std::f64::consts::PI.sqrt() * (-x * x).exp(), 0.0),
                    false,
                )
            }
            BuiltinKind::TGauss => {
                let x = std::f64::consts::PI * t;
                let scale = std::f64::consts::PI * std::f64::consts::PI.sqrt();
                (Complex64::new(0.0, scale * t * (-x * x).exp()), false)
            }
        }
    }
}

/// `1/((2t)^(2k) + 1)`, saturating to 0 when the power overflows.
fn smooth_pulse(t: f64, k: u32) -> (f64, bool) {
    let p = (2.0 * t).powi(2 * k as i32);
    if p.is_infinite() {
        (0.0, true)
    } else {
        (1.0 / (p + 1.0), false)
    }
}

/// Errors from building or loading sampled data.
#[derive(Debug, Error)]
pub enum SampleError {
    #[error("expected {expected} sample rows, found {got}")]
    RowCount { expected: usize, got: usize },
    #[error("row {row}: grid time {got} does not match expected {expected}")]
    GridMismatch { row: usize, expected: f64, got: f64 },
    #[error(
        "{parity} parity violated at n = {worst_n}: |violation| = {magnitude:.3e} exceeds tolerance {tolerance:.3e}"
    )]
    ParityViolation {
        parity: Parity,
        worst_n: i64,
        magnitude: f64,
        tolerance: f64,
    },
    #[error("row {row}: cannot parse '{content}'")]
    Parse { row: usize, content: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Complex samples of an input function on the symmetric grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction {
    params: ParamSet,
    samples: Vec<Complex64>,
    parity: Parity,
    saturated: usize,
}

impl SampledFunction {
    /// Wraps externally produced values, checking length and parity.
    pub fn from_values(
        params: ParamSet,
        samples: Vec<Complex64>,
        parity: Parity,
    ) -> Result<Self, SampleError> {
        let expected = 2 * params.half_count() + 1;
        if samples.len() != expected {
            return Err(SampleError::RowCount {
                expected,
                got: samples.len(),
            });
        }
        verify_parity(&samples, params.half_count() as i64, parity)?;
        Ok(Self {
            params,
            samples,
            parity,
            saturated: 0,
        })
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn values(&self) -> &[Complex64] {
        &self.samples
    }

    /// Sample at signed grid index `n` in `-half_count..=half_count`.
    pub fn value(&self, n: i64) -> Complex64 {
        let half = self.params.half_count() as i64;
        assert!(n.abs() <= half, "sample index {n} out of range");
        self.samples[(n + half) as usize]
    }

    /// Number of samples saturated to zero because of pulse-power overflow.
    pub fn saturation_count(&self) -> usize {
        self.saturated
    }

    /// Largest sample magnitude.
    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Writes the samples as `t,re,im` rows at full round-trip precision.
    pub fn write_samples(&self, path: &Path) -> Result<(), SampleError> {
        let io_err = |source| SampleError::Io {
            path: path.display().to_string(),
            source,
        };
        let mut out = BufWriter::new(File::create(path).map_err(io_err)?);
        let write = (|| -> std::io::Result<()> {
            writeln!(out, "# t,re,im")?;
            for n in self.params.indices() {
                let v = self.value(n);
                writeln!(
                    out,
                    "{},{},{}",
                    fmt_f64(self.params.time(n)),
                    fmt_f64(v.re),
                    fmt_f64(v.im)
                )?;
            }
            out.flush()
        })();
        write.map_err(io_err)
    }
}

/// Samples a built-in function on the grid defined by `params`.
///
/// Values are computed once per `|n|` and mirrored, so the parity invariants
/// hold bit for bit. If no width was declared in `params`, the function's
/// default width is attached.
pub fn sample_builtin(function: &BuiltinFunction, params: &ParamSet) -> SampledFunction {
    let params = if params.declared_width().is_none() {
        params
            .with_declared_width(function.default_width())
            .expect("builtin widths are valid")
    } else {
        *params
    };
    let half = params.half_count() as i64;
    let len = 2 * params.half_count() + 1;
    let mut samples = vec![Complex64::new(0.0, 0.0); len];
    let mut saturated = 0usize;
    for n in 0..=half {
        let (v, sat) = function.eval_tracked(params.time(n));
        if sat {
            saturated += if n == 0 { 1 } else { 2 };
        }
        samples[(half + n) as usize] = v;
        if n > 0 {
            let mirrored = match function.parity() {
                Parity::EvenReal => v,
                Parity::OddImaginary => -v,
                Parity::Mixed => unreachable!("builtins are even-real or odd-imaginary"),
            };
            samples[(half - n) as usize] = mirrored;
        }
    }
    SampledFunction {
        params,
        samples,
        parity: function.parity(),
        saturated,
    }
}

/// Loads samples from a `t,re,im` text file (one optional leading line
/// starting with `#`), validating row count, grid times and parity.
pub fn load_samples(
    path: &Path,
    params: &ParamSet,
    parity: Parity,
) -> Result<SampledFunction, SampleError> {
    let io_err = |source| SampleError::Io {
        path: path.display().to_string(),
        source,
    };
    let reader = BufReader::new(File::open(path).map_err(io_err)?);
    let mut rows: Vec<(f64, Complex64)> = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(io_err)?;
        let trimmed = line.trim();
        if trimmed.is_empty() || (i == 0 && trimmed.starts_with('#')) {
            continue;
        }
        let mut fields = trimmed.split(',').map(str::trim);
        let parsed = (|| {
            let t: f64 = fields.next()?.parse().ok()?;
            let re: f64 = fields.next()?.parse().ok()?;
            let im: f64 = fields.next()?.parse().ok()?;
            if fields.next().is_some() {
                return None;
            }
            Some((t, Complex64::new(re, im)))
        })();
        match parsed {
            Some(row) => rows.push(row),
            None => {
                return Err(SampleError::Parse {
                    row: i + 1,
                    content: trimmed.to_string(),
                })
            }
        }
    }

    let expected = 2 * params.half_count() + 1;
    if rows.len() != expected {
        return Err(SampleError::RowCount {
            expected,
            got: rows.len(),
        });
    }
    for (i, (n, (t, _))) in params.indices().zip(rows.iter()).enumerate() {
        let want = params.time(n);
        let tol = 1e-12 * want.abs().max(params.step());
        if (t - want).abs() > tol {
            return Err(SampleError::GridMismatch {
                row: i + 1,
                expected: want,
                got: *t,
            });
        }
    }
    let samples: Vec<Complex64> = rows.into_iter().map(|(_, v)| v).collect();
    SampledFunction::from_values(*params, samples, parity)
}

/// Checks the declared parity within [`PARITY_TOLERANCE`] of the largest
/// sample magnitude, reporting the worst offending index on failure.
fn verify_parity(samples: &[Complex64], half: i64, parity: Parity) -> Result<(), SampleError> {
    let at = |n: i64| samples[(n + half) as usize];
    let max_abs = samples.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let tolerance = PARITY_TOLERANCE * max_abs;
    let mut worst = 0.0f64;
    let mut worst_n = 0i64;
    let mut check = |violation: f64, n: i64| {
        if violation > worst {
            worst = violation;
            worst_n = n;
        }
    };
    for n in 0..=half {
        let (a, b) = (at(n), at(-n));
        match parity {
            Parity::EvenReal => {
                check((a.re - b.re).abs(), n);
                check(a.im.abs(), n);
                check(b.im.abs(), -n);
            }
            Parity::OddImaginary => {
                check((a.im + b.im).abs(), n);
                check(a.re.abs(), n);
                check(b.re.abs(), -n);
            }
            Parity::Mixed => {
                check((a.re - b.re).abs(), n);
                check((a.im + b.im).abs(), n);
            }
        }
    }
    if worst > tolerance {
        Err(SampleError::ParityViolation {
            parity,
            worst_n,
            magnitude: worst,
            tolerance,
        })
    } else {
        Ok(())
    }
}
