//! Expansion coefficients of the rational forms.
//!
//! For a sampled function with even real part the transform is approximated
//! by `sum_m (alpha_m + beta_m nu^2) / (kappa_m + lambda_m nu^2 + nu^4)`, and
//! for an odd imaginary part by `sum_m (eta_m nu + theta_m nu^3) / (...)` with
//! the same denominators. With `w_n = f(n h) e^(sigma n h)` and
//! `mu_m = pi (m - 1/2) / (terms * h)`:
//!
//! ```text
//! alpha_m = (mu^2 + sigma^2) / (8 M pi^4) * sum_n Re w_n (sigma cos(n h mu) + mu sin(n h mu))
//! beta_m  = 1 / (2 M pi^2)               * sum_n Re w_n (sigma cos(n h mu) - mu sin(n h mu))
//! eta_m   = 1 / (4 M pi^3)  * sum_n Im w_n ((sigma^2 - mu^2) cos(n h mu) + 2 sigma mu sin(n h mu))
//! theta_m = 1 / (M pi)      * sum_n Im w_n cos(n h mu)
//! kappa_m = (mu^2 + sigma^2)^2 / (16 pi^4)
//! lambda_m = (sigma^2 - mu^2) / (2 pi^2)
//! ```
//!
//! Note the `eta` weight uses `(sigma^2 - mu^2)`, the grouping consistent with
//! the quadrature cross-checks in this crate; the sign pattern is verified by
//! the oracle tests. The sum over `n` always runs from `-half_count` upward so
//! repeated runs are bit-identical. For `sigma > 0` every denominator is
//! strictly positive on the real axis, since
//! `lambda^2 - 4 kappa = -sigma^2 mu^2 / pi^4 < 0`.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

use crate::params::{ParamError, ParamSet};
use crate::sampling::{BuiltinFunction, Parity, SampledFunction};
use crate::textio::{fmt_f64, split_kv};

/// Per-term coefficients of the partial-fraction forms. `index` is the
/// 1-based term number.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TermCoefficients {
    pub index: usize,
    pub alpha: f64,
    pub beta: f64,
    pub eta: f64,
    pub theta: f64,
    pub kappa: f64,
    pub lambda: f64,
    pub mu: f64,
}

#[derive(Debug, Error)]
pub enum CoeffError {
    #[error("expected {expected} parity, got {got}")]
    ParityMismatch { expected: &'static str, got: Parity },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path} line {line}: {message}")]
    Format {
        path: String,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// Angular frequency of term `m` (1-based): `pi (m - 1/2) / (terms * step)`.
/// Strictly increasing in `m` and bounded by `pi / step`.
pub fn compute_mu(m: usize, params: &ParamSet) -> f64 {
    assert!(
        (1..=params.terms()).contains(&m),
        "term index {m} out of 1..={}",
        params.terms()
    );
    PI * (m as f64 - 0.5) / (params.terms() as f64 * params.step())
}

/// Denominator coefficients shared by both parities; they depend only on the
/// run parameters, not on the samples.
fn kappa_lambda(mu: f64, sigma: f64) -> (f64, f64) {
    let s2 = sigma * sigma;
    let m2 = mu * mu;
    let kappa = (m2 + s2) * (m2 + s2) / (16.0 * PI.powi(4));
    let lambda = (s2 - m2) / (2.0 * PI * PI);
    (kappa, lambda)
}

/// Samples with the decay factor folded in: `f(n h) * e^(sigma n h)`,
/// real or imaginary channel, in ascending `n` order.
fn damped_channel(f: &SampledFunction, imaginary: bool) -> Vec<f64> {
    let p = f.params();
    p.indices()
        .map(|n| {
            let v = f.value(n);
            let c = if imaginary { v.im } else { v.re };
            c * (p.sigma() * p.time(n)).exp()
        })
        .collect()
}

fn even_family(f: &SampledFunction, out: &mut [TermCoefficients]) {
    let p = *f.params();
    let (sigma, h, m_total) = (p.sigma(), p.step(), p.terms() as f64);
    let w = damped_channel(f, false);
    for t in out.iter_mut() {
        let mu = t.mu;
        let mut acc_a = 0.0;
        let mut acc_b = 0.0;
        for (i, n) in p.indices().enumerate() {
            let (s, c) = (n as f64 * h * mu).sin_cos();
            acc_a += w[i] * (sigma * c + mu * s);
            acc_b += w[i] * (sigma * c - mu * s);
        }
        t.alpha = (mu * mu + sigma * sigma) * acc_a / (8.0 * m_total * PI.powi(4));
        t.beta = acc_b / (2.0 * m_total * PI * PI);
    }
}

fn odd_family(f: &SampledFunction, out: &mut [TermCoefficients]) {
    let p = *f.params();
    let (sigma, h, m_total) = (p.sigma(), p.step(), p.terms() as f64);
    let w = damped_channel(f, true);
    for t in out.iter_mut() {
        let mu = t.mu;
        let diff = sigma * sigma - mu * mu;
        let cross = 2.0 * sigma * mu;
        let mut acc_e = 0.0;
        let mut acc_t = 0.0;
        for (i, n) in p.indices().enumerate() {
            let (s, c) = (n as f64 * h * mu).sin_cos();
            acc_e += w[i] * (diff * c + cross * s);
            acc_t += w[i] * c;
        }
        t.eta = acc_e / (4.0 * m_total * PI.powi(3));
        t.theta = acc_t / (m_total * PI);
    }
}

fn skeleton(params: &ParamSet) -> Vec<TermCoefficients> {
    (1..=params.terms())
        .map(|m| {
            let mu = compute_mu(m, params);
            let (kappa, lambda) = kappa_lambda(mu, params.sigma());
            TermCoefficients {
                index: m,
                alpha: 0.0,
                beta: 0.0,
                eta: 0.0,
                theta: 0.0,
                kappa,
                lambda,
                mu,
            }
        })
        .collect()
}

/// Coefficients for an even-real input; `eta` and `theta` stay zero.
pub fn compute_even_coeffs(f: &SampledFunction) -> Result<Vec<TermCoefficients>, CoeffError> {
    if f.parity() != Parity::EvenReal {
        return Err(CoeffError::ParityMismatch {
            expected: "even-real",
            got: f.parity(),
        });
    }
    let mut out = skeleton(f.params());
    even_family(f, &mut out);
    Ok(out)
}

/// Coefficients for an odd-imaginary input; `alpha` and `beta` stay zero.
pub fn compute_odd_coeffs(f: &SampledFunction) -> Result<Vec<TermCoefficients>, CoeffError> {
    if f.parity() != Parity::OddImaginary {
        return Err(CoeffError::ParityMismatch {
            expected: "odd-imaginary",
            got: f.parity(),
        });
    }
    let mut out = skeleton(f.params());
    odd_family(f, &mut out);
    Ok(out)
}

/// Both numerator families, for inputs carrying an even real part and an odd
/// imaginary part at once.
pub fn compute_mixed_coeffs(f: &SampledFunction) -> Vec<TermCoefficients> {
    let mut out = skeleton(f.params());
    even_family(f, &mut out);
    odd_family(f, &mut out);
    out
}

/// Coefficients of the prior one-sided method used as a comparison baseline.
/// `index` is 1-based; `freq` values are strictly increasing.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BaselineCoefficients {
    pub index: usize,
    pub a_term: f64,
    pub b_term: f64,
    pub freq: f64,
}

/// Real samples on the shifted one-sided grid `t = n*step - shift` for
/// `n = 0..=half_count`, the input the baseline method consumes.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftedSamples {
    params: ParamSet,
    shift: f64,
    values: Vec<f64>,
    imaginary: bool,
}

impl ShiftedSamples {
    /// Samples a built-in on the shifted grid. For the odd (imaginary)
    /// built-ins the imaginary channel is taken and the flag records that the
    /// evaluated transform must be multiplied by `i`.
    pub fn from_builtin(function: &BuiltinFunction, params: &ParamSet, shift: f64) -> Self {
        let imaginary = function.parity() == Parity::OddImaginary;
        let values = (0..=params.half_count() as i64)
            .map(|n| {
                let v = function.eval(params.time(n) - shift);
                if imaginary {
                    v.im
                } else {
                    v.re
                }
            })
            .collect();
        Self {
            params: *params,
            shift,
            values,
            imaginary,
        }
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn imaginary(&self) -> bool {
        self.imaginary
    }
}

/// Baseline expansion coefficients over `terms` summation terms:
/// `freq_m = pi (2m - 1) / (2 * terms * step)` and the `a`/`b` weights are
/// one-sided damped cosine/sine sums over the shifted samples.
pub fn compute_baseline_coeffs(
    samples: &ShiftedSamples,
    terms: usize,
) -> Vec<BaselineCoefficients> {
    assert!(terms >= 1, "baseline needs at least one term");
    let p = samples.params();
    let (sigma, h) = (p.sigma(), p.step());
    let w: Vec<f64> = samples
        .values()
        .iter()
        .enumerate()
        .map(|(n, v)| v * (sigma * n as f64 * h).exp())
        .collect();
    (1..=terms)
        .map(|m| {
            let freq = PI * (2.0 * m as f64 - 1.0) / (2.0 * terms as f64 * h);
            let mut acc_a = 0.0;
            let mut acc_b = 0.0;
            for (n, wn) in w.iter().enumerate() {
                let (s, c) = (freq * n as f64 * h).sin_cos();
                acc_a += wn * c;
                acc_b += wn * freq * s;
            }
            BaselineCoefficients {
                index: m,
                a_term: acc_a / terms as f64,
                b_term: acc_b / terms as f64,
                freq,
            }
        })
        .collect()
}

const COEFF_HEADER: &str = "# term coefficients v1";
const COEFF_COLUMNS: &str = "m alpha beta eta theta kappa lambda mu";

/// Writes a round-trippable text record of the run parameters and all
/// per-term coefficients.
pub fn write_coefficients<W: Write>(
    mut out: W,
    params: &ParamSet,
    parity: Parity,
    terms: &[TermCoefficients],
) -> std::io::Result<()> {
    writeln!(out, "{COEFF_HEADER}")?;
    writeln!(out, "terms = {}", params.terms())?;
    writeln!(out, "half_count = {}", params.half_count())?;
    writeln!(out, "step = {}", fmt_f64(params.step()))?;
    writeln!(out, "sigma = {}", fmt_f64(params.sigma()))?;
    if let Some(w) = params.declared_width() {
        writeln!(out, "declared_width = {}", fmt_f64(w))?;
    }
    writeln!(out, "parity = {parity}")?;
    writeln!(out, "{COEFF_COLUMNS}")?;
    for t in terms {
        writeln!(
            out,
            "{} {} {} {} {} {} {} {}",
            t.index,
            fmt_f64(t.alpha),
            fmt_f64(t.beta),
            fmt_f64(t.eta),
            fmt_f64(t.theta),
            fmt_f64(t.kappa),
            fmt_f64(t.lambda),
            fmt_f64(t.mu)
        )?;
    }
    Ok(())
}

/// File-path convenience around [`write_coefficients`].
pub fn export_coefficients(
    path: &Path,
    params: &ParamSet,
    parity: Parity,
    terms: &[TermCoefficients],
) -> Result<(), CoeffError> {
    let io_err = |source| CoeffError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut out = BufWriter::new(File::create(path).map_err(io_err)?);
    write_coefficients(&mut out, params, parity, terms)
        .and_then(|_| out.flush())
        .map_err(io_err)
}

/// Reads back a coefficient export.
pub fn import_coefficients(
    path: &Path,
) -> Result<(ParamSet, Parity, Vec<TermCoefficients>), CoeffError> {
    let io_err = |source| CoeffError::Io {
        path: path.display().to_string(),
        source,
    };
    let fmt_err = |line: usize, message: String| CoeffError::Format {
        path: path.display().to_string(),
        line,
        message,
    };
    let reader = BufReader::new(File::open(path).map_err(io_err)?);

    let mut terms_n: Option<usize> = None;
    let mut half: Option<usize> = None;
    let mut step: Option<f64> = None;
    let mut sigma: Option<f64> = None;
    let mut width: Option<f64> = None;
    let mut parity: Option<Parity> = None;
    let mut rows: Vec<TermCoefficients> = Vec::new();
    let mut in_table = false;

    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(io_err)?;
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if trimmed == COEFF_COLUMNS {
            in_table = true;
            continue;
        }
        if !in_table {
            let (k, v) =
                split_kv(trimmed).ok_or_else(|| fmt_err(lineno, "expected key = value".into()))?;
            let bad = |what: &str| fmt_err(lineno, format!("cannot parse {what} '{v}'"));
            match k {
                "terms" => terms_n = Some(v.parse().map_err(|_| bad("terms"))?),
                "half_count" => half = Some(v.parse().map_err(|_| bad("half_count"))?),
                "step" => step = Some(v.parse().map_err(|_| bad("step"))?),
                "sigma" => sigma = Some(v.parse().map_err(|_| bad("sigma"))?),
                "declared_width" => width = Some(v.parse().map_err(|_| bad("declared_width"))?),
                "parity" => {
                    parity = Some(
                        Parity::parse(v).ok_or_else(|| fmt_err(lineno, format!("unknown parity '{v}'")))?,
                    )
                }
                other => return Err(fmt_err(lineno, format!("unknown key '{other}'"))),
            }
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 8 {
            return Err(fmt_err(lineno, format!("expected 8 columns, got {}", fields.len())));
        }
        let parse = |s: &str| -> Result<f64, CoeffError> {
            s.parse().map_err(|_| fmt_err(lineno, format!("cannot parse '{s}'")))
        };
        rows.push(TermCoefficients {
            index: fields[0]
                .parse()
                .map_err(|_| fmt_err(lineno, format!("cannot parse index '{}'", fields[0])))?,
            alpha: parse(fields[1])?,
            beta: parse(fields[2])?,
            eta: parse(fields[3])?,
            theta: parse(fields[4])?,
            kappa: parse(fields[5])?,
            lambda: parse(fields[6])?,
            mu: parse(fields[7])?,
        });
    }

    let missing = |what: &str| fmt_err(0, format!("missing {what}"));
    let mut params = ParamSet::new(
        terms_n.ok_or_else(|| missing("terms"))?,
        half.ok_or_else(|| missing("half_count"))?,
        step.ok_or_else(|| missing("step"))?,
        sigma.ok_or_else(|| missing("sigma"))?,
    )?;
    if let Some(w) = width {
        params = params.with_declared_width(w)?;
    }
    let parity = parity.ok_or_else(|| missing("parity"))?;
    if rows.len() != params.terms() {
        return Err(fmt_err(
            0,
            format!("expected {} term rows, got {}", params.terms(), rows.len()),
        ));
    }
    Ok((params, parity, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{sample_builtin, BuiltinKind};
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn rect_preset_params() -> ParamSet {
        ParamSet::new(32, 28, 0.04, 2.7).unwrap()
    }

    #[test]
    fn mu_reference_values() {
        // pi/2.56, frozen from an independent high-precision evaluation.
        let mu1 = compute_mu(1, &rect_preset_params());
        assert!((mu1 - 1.227184630308513).abs() < 1e-15, "got {mu1}");
        // m = 1, terms = 1, step = pi gives exactly 1/2.
        let p = ParamSet::new(1, 1, std::f64::consts::PI, 1.0).unwrap();
        assert_eq!(compute_mu(1, &p), 0.5);
    }

    #[test]
    fn mu_is_increasing_and_bounded() {
        let p = rect_preset_params();
        let mut prev = 0.0;
        for m in 1..=32 {
            let mu = compute_mu(m, &p);
            assert!(mu > prev);
            prev = mu;
        }
        assert!(prev < PI / p.step());
    }

    #[test]
    fn kappa_reference_value() {
        // ((mu_1^2 + 2.7^2)^2) / (16 pi^4), frozen from an independent
        // high-precision evaluation.
        let co = compute_even_coeffs(&sample_builtin(
            &BuiltinFunction::new(BuiltinKind::RectSmooth),
            &rect_preset_params(),
        ))
        .unwrap();
        assert!((co[0].kappa - 0.049641992201996755).abs() < 1e-15);
        assert!(co.iter().all(|t| t.kappa > 0.0));
    }

    #[test]
    fn lambda_changes_sign_across_terms() {
        let co = compute_even_coeffs(&sample_builtin(
            &BuiltinFunction::new(BuiltinKind::RectSmooth),
            &rect_preset_params(),
        ))
        .unwrap();
        assert!(co[0].lambda > 0.0, "sigma^2 > mu_1^2 here");
        assert!(co[31].lambda < 0.0, "mu_32 dominates sigma");
        assert!((co[0].lambda - 0.29302176906382127).abs() < 1e-15);
    }

    #[test]
    fn discriminant_identity_holds() {
        // lambda^2 - 4 kappa = -sigma^2 mu^2 / pi^4, to 1e-12 relative.
        for (terms, half, h, sg) in [(32, 28, 0.04, 2.7), (32, 28, 0.04, 3.0), (16, 23, 0.119, 6.9)] {
            let p = ParamSet::new(terms, half, h, sg).unwrap();
            for t in skeleton(&p) {
                let lhs = t.lambda * t.lambda - 4.0 * t.kappa;
                let rhs = -(sg * sg) * t.mu * t.mu / PI.powi(4);
                assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
            }
        }
    }

    #[test]
    fn zero_samples_give_zero_numerators() {
        let p = rect_preset_params();
        let zeros = vec![Complex64::new(0.0, 0.0); 57];
        let even = SampledFunction::from_values(p, zeros.clone(), Parity::EvenReal).unwrap();
        for t in compute_even_coeffs(&even).unwrap() {
            assert_eq!(t.alpha, 0.0);
            assert_eq!(t.beta, 0.0);
        }
        let odd = SampledFunction::from_values(p, zeros, Parity::OddImaginary).unwrap();
        for t in compute_odd_coeffs(&odd).unwrap() {
            assert_eq!(t.eta, 0.0);
            assert_eq!(t.theta, 0.0);
        }
    }

    #[test]
    fn parity_mismatch_is_rejected() {
        let f = sample_builtin(&BuiltinFunction::new(BuiltinKind::TRectSmooth), &rect_preset_params());
        assert!(matches!(
            compute_even_coeffs(&f),
            Err(CoeffError::ParityMismatch { .. })
        ));
        let g = sample_builtin(&BuiltinFunction::new(BuiltinKind::RectSmooth), &rect_preset_params());
        assert!(matches!(
            compute_odd_coeffs(&g),
            Err(CoeffError::ParityMismatch { .. })
        ));
    }

    #[test]
    fn denominators_do_not_depend_on_samples() {
        let p = ParamSet::new(32, 28, 0.04, 3.0).unwrap();
        let even = compute_even_coeffs(&sample_builtin(
            &BuiltinFunction::new(BuiltinKind::RectSmooth),
            &p,
        ))
        .unwrap();
        let odd = compute_odd_coeffs(&sample_builtin(
            &BuiltinFunction::new(BuiltinKind::TRectSmooth),
            &p,
        ))
        .unwrap();
        for (a, b) in even.iter().zip(odd.iter()) {
            assert_eq!(a.kappa.to_bits(), b.kappa.to_bits());
            assert_eq!(a.lambda.to_bits(), b.lambda.to_bits());
            assert_eq!(a.mu.to_bits(), b.mu.to_bits());
        }
    }

    #[test]
    fn mixed_coeffs_populate_both_families() {
        let p = rect_preset_params();
        let values: Vec<Complex64> = p
            .indices()
            .map(|n| {
                let t = p.time(n);
                Complex64::new((-t * t).exp(), t * (-t * t).exp())
            })
            .collect();
        let f = SampledFunction::from_values(p, values, Parity::Mixed).unwrap();
        let co = compute_mixed_coeffs(&f);
        assert!(co.iter().any(|t| t.alpha != 0.0));
        assert!(co.iter().any(|t| t.eta != 0.0));
    }

    #[test]
    fn baseline_frequency_ladder() {
        let p = rect_preset_params();
        let s = ShiftedSamples::from_builtin(
            &BuiltinFunction::new(BuiltinKind::RectSmooth),
            &p,
            p.half_count() as f64 * p.step() / 2.0,
        );
        let co = compute_baseline_coeffs(&s, 32);
        assert_eq!(co.len(), 32);
        // freq_1 = pi / (2 * terms * step)
        assert!((co[0].freq - PI / (2.0 * 32.0 * 0.04)).abs() < 1e-15);
        for w in co.windows(2) {
            assert!(w[1].freq > w[0].freq);
        }
    }

    #[test]
    fn baseline_zero_samples_give_zero_weights() {
        let p = rect_preset_params();
        let s = ShiftedSamples {
            params: p,
            shift: 0.0,
            values: vec![0.0; p.half_count() + 1],
            imaginary: false,
        };
        for c in compute_baseline_coeffs(&s, 8) {
            assert_eq!(c.a_term, 0.0);
            assert_eq!(c.b_term, 0.0);
        }
    }

    #[test]
    fn export_import_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("coeffs.txt");
        let f = sample_builtin(&BuiltinFunction::new(BuiltinKind::Gauss), &ParamSet::new(16, 23, 0.119, 6.9).unwrap());
        let co = compute_even_coeffs(&f).unwrap();
        export_coefficients(&path, f.params(), f.parity(), &co).unwrap();
        let (params, parity, back) = import_coefficients(&path).unwrap();
        assert_eq!(&params, f.params());
        assert_eq!(parity, Parity::EvenReal);
        assert_eq!(back, co);
    }

    proptest! {
        // Scaling the samples scales the numerator coefficients linearly and
        // leaves the denominators untouched. Power-of-two scalars commute
        // with every floating-point operation, so there the match is bitwise;
        // general scalars are checked against a magnitude-scaled tolerance.
        #[test]
        fn coefficients_are_linear_in_samples(c in -100.0f64..100.0, k in -8i32..=8) {
            let p = ParamSet::new(8, 10, 0.1, 2.0).unwrap();
            let f = sample_builtin(&BuiltinFunction::new(BuiltinKind::RectSmooth), &p);
            let base = compute_even_coeffs(&f).unwrap();
            let scale = base
                .iter()
                .map(|t| t.alpha.abs().max(t.beta.abs()))
                .fold(0.0, f64::max);

            let pow2 = f64::powi(2.0, k);
            let exact_values: Vec<Complex64> = f.values().iter().map(|v| v * pow2).collect();
            let exact =
                SampledFunction::from_values(*f.params(), exact_values, Parity::EvenReal).unwrap();
            for (b, g) in base.iter().zip(compute_even_coeffs(&exact).unwrap().iter()) {
                prop_assert_eq!(g.alpha.to_bits(), (pow2 * b.alpha).to_bits());
                prop_assert_eq!(g.beta.to_bits(), (pow2 * b.beta).to_bits());
            }

            let scaled_values: Vec<Complex64> = f.values().iter().map(|v| v * c).collect();
            let scaled =
                SampledFunction::from_values(*f.params(), scaled_values, Parity::EvenReal).unwrap();
            let tol = 1e-11 * (c.abs() + 1.0) * scale;
            for (b, g) in base.iter().zip(compute_even_coeffs(&scaled).unwrap().iter()) {
                prop_assert!((g.alpha - c * b.alpha).abs() <= tol);
                prop_assert!((g.beta - c * b.beta).abs() <= tol);
                prop_assert_eq!(g.kappa.to_bits(), b.kappa.to_bits());
                prop_assert_eq!(g.lambda.to_bits(), b.lambda.to_bits());
            }
        }
    }
}
