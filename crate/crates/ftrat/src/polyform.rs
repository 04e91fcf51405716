//! Collapse of the partial-fraction model into a single ratio of polynomials
//! `P(nu) / Q(nu)` in the monomial basis.
//!
//! `Q` is the product of all per-term quartics (degree `4M`, even powers
//! only, strictly positive on the real axis) and `P` collects the numerators
//! times the complementary quartic products (degree at most `4M - 1`). The
//! partial-fraction model remains the recommended evaluator; the collapsed
//! form exists for export and interoperability.
//!
//! Products are taken over a balanced pairwise tree, which keeps the rounding
//! growth logarithmic in the term count, and every convolution is accumulated
//! with error-free transformations. For more than 16 terms the coefficients
//! of the collapsed form are kept and evaluated as double-double `hi + lo`
//! pairs: the monomial basis at that size is conditioned far beyond what a
//! single `f64` per coefficient can represent, and the extended limbs are
//! what keeps the collapsed form usable over the plot range.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

use crate::approx::PartialFractionModel;
use crate::dd::{two_prod, two_sum, Dd};
use crate::params::{ParamError, ParamSet};
use crate::sampling::Parity;
use crate::textio::{fmt_f64, split_kv};

/// Term count above which the collapsed coefficients carry extension limbs.
pub const EXTENDED_THRESHOLD: usize = 16;

/// Dense real polynomial in the monomial basis; `coeffs[k]` multiplies
/// `x^k`. Trailing zeros are trimmed, and the zero polynomial is a single
/// zero coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![0.0] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs == [0.0]
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Compensated Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        comp_horner(&self.coeffs, x)
    }
}

/// Coefficient convolution with error-free-transformation accumulation;
/// `deg(a*b) = deg a + deg b` for nonzero inputs.
pub fn poly_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero();
    }
    let (ca, cb) = (a.coeffs(), b.coeffs());
    let mut out = vec![0.0; ca.len() + cb.len() - 1];
    for (k, slot) in out.iter_mut().enumerate() {
        // Dot2-style compensated dot product over the anti-diagonal.
        let mut s = 0.0;
        let mut comp = 0.0;
        let lo = k.saturating_sub(cb.len() - 1);
        let hi = k.min(ca.len() - 1);
        for i in lo..=hi {
            let (p, pe) = two_prod(ca[i], cb[k - i]);
            let (t, se) = two_sum(s, p);
            s = t;
            comp += pe + se;
        }
        *slot = s + comp;
    }
    Polynomial::new(out)
}

/// Horner scheme with a compensation term, giving close to twice-working-
/// precision results. Coefficients ascend from the constant term.
fn comp_horner(coeffs: &[f64], x: f64) -> f64 {
    let Some((&last, rest)) = coeffs.split_last() else {
        return 0.0;
    };
    let mut s = last;
    let mut e = 0.0f64;
    for &c in rest.iter().rev() {
        let (p, pe) = two_prod(s, x);
        let (t, se) = two_sum(p, c);
        s = t;
        e = e.mul_add(x, pe + se);
    }
    s + e
}

/// Arithmetic used during the collapse, recorded on the result. `Extended`
/// means the stored coefficients carry `hi + lo` extension limbs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrecisionNote {
    Standard,
    Extended,
}

impl PrecisionNote {
    fn as_str(self) -> &'static str {
        match self {
            PrecisionNote::Standard => "standard",
            PrecisionNote::Extended => "extended",
        }
    }
}

/// The collapsed single-ratio form, plus the run parameters it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalPolynomial {
    p: Polynomial,
    q: Polynomial,
    p_lo: Vec<f64>,
    q_lo: Vec<f64>,
    precision: PrecisionNote,
    params: ParamSet,
    parity: Parity,
}

#[derive(Debug, Error)]
pub enum PolyError {
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

impl RationalPolynomial {
    pub fn p(&self) -> &Polynomial {
        &self.p
    }

    pub fn q(&self) -> &Polynomial {
        &self.q
    }

    pub fn precision(&self) -> PrecisionNote {
        self.precision
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Extension limb of `p[k]`; zero in standard precision.
    pub fn p_lo(&self, k: usize) -> f64 {
        self.p_lo.get(k).copied().unwrap_or(0.0)
    }

    /// Extension limb of `q[k]`; zero in standard precision.
    pub fn q_lo(&self, k: usize) -> f64 {
        self.q_lo.get(k).copied().unwrap_or(0.0)
    }

    fn p_dd(&self) -> Vec<Dd> {
        self.p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, &hi)| Dd { hi, lo: self.p_lo(k) })
            .collect()
    }

    fn q_dd(&self) -> Vec<Dd> {
        self.q
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, &hi)| Dd { hi, lo: self.q_lo(k) })
            .collect()
    }
}

/// Dense polynomial over double-double coefficients, used only during the
/// collapse and extended evaluation.
#[derive(Clone, Debug)]
struct DdPoly {
    coeffs: Vec<Dd>,
}

impl DdPoly {
    fn quartic(kappa: f64, lambda: f64) -> Self {
        Self {
            coeffs: vec![
                Dd::from_f64(kappa),
                Dd::ZERO,
                Dd::from_f64(lambda),
                Dd::ZERO,
                Dd::from_f64(1.0),
            ],
        }
    }

    fn mul(&self, other: &DdPoly) -> DdPoly {
        let mut out = vec![Dd::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(a.mul(b));
            }
        }
        DdPoly { coeffs: out }
    }

    fn add_assign(&mut self, other: &DdPoly) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Dd::ZERO);
        }
        for (slot, &b) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            *slot = slot.add(b);
        }
    }
}

/// Balanced pairwise product of the given polynomials.
fn product_tree(items: &[DdPoly]) -> DdPoly {
    match items.len() {
        0 => DdPoly {
            coeffs: vec![Dd::from_f64(1.0)],
        },
        1 => items[0].clone(),
        n => {
            let (left, right) = items.split_at(n / 2);
            product_tree(left).mul(&product_tree(right))
        }
    }
}

/// Collapses the model into a single ratio `P(nu) / Q(nu)`.
///
/// `Q` is built as the balanced product of the per-term quartics and `P` as
/// the sum over terms of numerator times the product of the other quartics,
/// so `P/Q` equals the partial-fraction sum identically in exact arithmetic.
/// Above [`EXTENDED_THRESHOLD`] terms the result keeps extension limbs and is
/// marked [`PrecisionNote::Extended`].
pub fn collapse(model: &PartialFractionModel) -> RationalPolynomial {
    let terms = model.terms();
    let quartics: Vec<DdPoly> = terms
        .iter()
        .map(|t| DdPoly::quartic(t.kappa, t.lambda))
        .collect();
    let q = product_tree(&quartics);

    let mut p = DdPoly {
        coeffs: vec![Dd::ZERO; 4 * terms.len()],
    };
    for (m, t) in terms.iter().enumerate() {
        let mut numerator = vec![
            Dd::from_f64(t.alpha),
            Dd::from_f64(t.eta),
            Dd::from_f64(t.beta),
            Dd::from_f64(t.theta),
        ];
        while numerator.len() > 1 && numerator.last().is_some_and(|c| c.is_zero()) {
            numerator.pop();
        }
        let numerator = DdPoly { coeffs: numerator };
        let others: Vec<DdPoly> = quartics
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != m)
            .map(|(_, qq)| qq.clone())
            .collect();
        p.add_assign(&numerator.mul(&product_tree(&others)));
    }

    // Trim structurally zero leading entries of P.
    let mut p_coeffs = p.coeffs;
    while p_coeffs.len() > 1 && p_coeffs.last().is_some_and(|c| c.is_zero()) {
        p_coeffs.pop();
    }

    let extended = terms.len() > EXTENDED_THRESHOLD;
    let split = |coeffs: &[Dd]| -> (Vec<f64>, Vec<f64>) {
        if extended {
            (
                coeffs.iter().map(|c| c.hi).collect(),
                coeffs.iter().map(|c| c.lo).collect(),
            )
        } else {
            (coeffs.iter().map(|c| c.to_f64()).collect(), Vec::new())
        }
    };
    let (p_hi, p_lo) = split(&p_coeffs);
    let (q_hi, q_lo) = split(&q.coeffs);
    RationalPolynomial {
        // Raw vectors: hi limbs of trimmed dd coefficients may still end in
        // a rounding-level zero, which Polynomial::new would drop.
        p: Polynomial { coeffs: p_hi },
        q: Polynomial { coeffs: q_hi },
        p_lo,
        q_lo,
        precision: if extended {
            PrecisionNote::Extended
        } else {
            PrecisionNote::Standard
        },
        params: *model.params(),
        parity: model.parity(),
    }
}

/// Splits ascending coefficients into even and odd powers of `x`, so the
/// value is `even(x^2) + x * odd(x^2)`. Evaluating through the square keeps
/// pure-parity results exactly symmetric or antisymmetric in `x`.
fn split_even_odd<T: Copy>(coeffs: &[T]) -> (Vec<T>, Vec<T>) {
    let even = coeffs.iter().copied().step_by(2).collect();
    let odd = coeffs.iter().copied().skip(1).step_by(2).collect();
    (even, odd)
}

fn dd_horner(coeffs: &[Dd], x: Dd) -> Dd {
    let Some((&last, rest)) = coeffs.split_last() else {
        return Dd::ZERO;
    };
    let mut acc = last;
    for &c in rest.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Beyond this value of `nu^2` the direct Horner sweep risks overflow for
/// large degrees and evaluation switches to reversed coefficients in
/// `1/nu^2`.
const REVERSED_EVAL_THRESHOLD: f64 = 1e3;

/// Evaluates the collapsed form at `nu`: Horner sweeps of `P` and `Q` (in
/// `nu^2`, with the precision the coefficients were stored at) and one
/// division. `Q` has no real roots, so the result is always finite.
pub fn eval_rational(r: &RationalPolynomial, nu: f64) -> f64 {
    let y = nu * nu;
    if y > REVERSED_EVAL_THRESHOLD {
        return eval_reversed(r, nu);
    }
    match r.precision {
        PrecisionNote::Standard => {
            let (pe, po) = split_even_odd(r.p.coeffs());
            let (qe, _) = split_even_odd(r.q.coeffs());
            let num = nu.mul_add(comp_horner(&po, y), comp_horner(&pe, y));
            num / comp_horner(&qe, y)
        }
        PrecisionNote::Extended => {
            let (pe, po) = split_even_odd(&r.p_dd());
            let (qe, _) = split_even_odd(&r.q_dd());
            let ydd = Dd::from_f64(y);
            let num = dd_horner(&pe, ydd).add(dd_horner(&po, ydd).mul_f64(nu));
            num.div(dd_horner(&qe, ydd)).to_f64()
        }
    }
}

/// Far-tail evaluation through reversed coefficients in `u = 1/nu^2`:
/// `E(y) = y^d * rev(E)(u)`, so the ratio needs only nonnegative powers of
/// `u` and never overflows.
fn eval_reversed(r: &RationalPolynomial, nu: f64) -> f64 {
    let y = nu * nu;
    let u = 1.0 / y;
    let rev = |mut v: Vec<Dd>| {
        v.reverse();
        v
    };
    let (pe, po) = split_even_odd(&r.p_dd());
    let (qe, _) = split_even_odd(&r.q_dd());
    let (dpe, dpo, dqe) = (
        pe.len().saturating_sub(1),
        po.len().saturating_sub(1),
        qe.len() - 1,
    );
    let udd = Dd::from_f64(u);
    let e_scaled = dd_horner(&rev(pe), udd).to_f64();
    let o_scaled = dd_horner(&rev(po), udd).to_f64();
    let q_scaled = dd_horner(&rev(qe), udd).to_f64();
    (e_scaled * u.powi((dqe - dpe) as i32) + nu * o_scaled * u.powi((dqe - dpo) as i32)) / q_scaled
}

const RATIONAL_HEADER: &str = "# rational form v1";

/// Writes the collapsed form: parameters, degrees, then one line per stored
/// coefficient. `q` lines carry even indices only (the odd coefficients are
/// structurally zero); extended-precision coefficients carry a second limb.
pub fn write_rational<W: Write>(out: &mut W, r: &RationalPolynomial) -> std::io::Result<()> {
    writeln!(out, "{RATIONAL_HEADER}")?;
    writeln!(out, "terms = {}", r.params.terms())?;
    writeln!(out, "half_count = {}", r.params.half_count())?;
    writeln!(out, "step = {}", fmt_f64(r.params.step()))?;
    writeln!(out, "sigma = {}", fmt_f64(r.params.sigma()))?;
    if let Some(w) = r.params.declared_width() {
        writeln!(out, "declared_width = {}", fmt_f64(w))?;
    }
    writeln!(out, "parity = {}", r.parity)?;
    writeln!(out, "precision = {}", r.precision.as_str())?;
    writeln!(out, "deg_p = {}", r.p.degree())?;
    writeln!(out, "deg_q = {}", r.q.degree())?;
    let extended = r.precision == PrecisionNote::Extended;
    for (k, &hi) in r.p.coeffs().iter().enumerate() {
        if extended {
            writeln!(out, "p {k} {} {}", fmt_f64(hi), fmt_f64(r.p_lo(k)))?;
        } else {
            writeln!(out, "p {k} {}", fmt_f64(hi))?;
        }
    }
    for (k, &hi) in r.q.coeffs().iter().enumerate().step_by(2) {
        if extended {
            writeln!(out, "q {k} {} {}", fmt_f64(hi), fmt_f64(r.q_lo(k)))?;
        } else {
            writeln!(out, "q {k} {}", fmt_f64(hi))?;
        }
    }
    Ok(())
}

/// File-path convenience around [`write_rational`].
pub fn export_rational(r: &RationalPolynomial, path: &Path) -> Result<(), PolyError> {
    let io_err = |source| PolyError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut out = BufWriter::new(File::create(path).map_err(io_err)?);
    write_rational(&mut out, r).and_then(|_| out.flush()).map_err(io_err)
}

/// Reads back a rational-form export.
pub fn import_rational(path: &Path) -> Result<RationalPolynomial, PolyError> {
    let io_err = |source| PolyError::Io {
        path: path.display().to_string(),
        source,
    };
    let fmt_err = |line: usize, message: String| PolyError::Format {
        path: path.display().to_string(),
        line,
        message,
    };
    let reader = BufReader::new(File::open(path).map_err(io_err)?);

    let mut terms: Option<usize> = None;
    let mut half: Option<usize> = None;
    let mut step: Option<f64> = None;
    let mut sigma: Option<f64> = None;
    let mut width: Option<f64> = None;
    let mut parity: Option<Parity> = None;
    let mut precision: Option<PrecisionNote> = None;
    let mut deg_p: Option<usize> = None;
    let mut deg_q: Option<usize> = None;
    let mut p_rows: Vec<(usize, f64, f64)> = Vec::new();
    let mut q_rows: Vec<(usize, f64, f64)> = Vec::new();

    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(io_err)?;
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if trimmed.starts_with("p ") || trimmed.starts_with("q ") {
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if !(3..=4).contains(&fields.len()) {
                return Err(fmt_err(lineno, "expected 'p|q <k> <hi> [<lo>]'".into()));
            }
            let k: usize = fields[1]
                .parse()
                .map_err(|_| fmt_err(lineno, format!("bad index '{}'", fields[1])))?;
            let hi: f64 = fields[2]
                .parse()
                .map_err(|_| fmt_err(lineno, format!("bad value '{}'", fields[2])))?;
            let lo: f64 = if fields.len() == 4 {
                fields[3]
                    .parse()
                    .map_err(|_| fmt_err(lineno, format!("bad value '{}'", fields[3])))?
            } else {
                0.0
            };
            if fields[0] == "p" {
                p_rows.push((k, hi, lo));
            } else {
                if !k.is_multiple_of(2) {
                    return Err(fmt_err(lineno, format!("odd q index {k}")));
                }
                q_rows.push((k, hi, lo));
            }
            continue;
        }
        let (key, v) =
            split_kv(trimmed).ok_or_else(|| fmt_err(lineno, "expected key = value".into()))?;
        let bad = |what: &str| fmt_err(lineno, format!("cannot parse {what} '{v}'"));
        match key {
            "terms" => terms = Some(v.parse().map_err(|_| bad("terms"))?),
            "half_count" => half = Some(v.parse().map_err(|_| bad("half_count"))?),
            "step" => step = Some(v.parse().map_err(|_| bad("step"))?),
            "sigma" => sigma = Some(v.parse().map_err(|_| bad("sigma"))?),
            "declared_width" => width = Some(v.parse().map_err(|_| bad("declared_width"))?),
            "parity" => {
                parity = Some(
                    Parity::parse(v).ok_or_else(|| fmt_err(lineno, format!("unknown parity '{v}'")))?,
                )
            }
            "precision" => {
                precision = Some(match v {
                    "standard" => PrecisionNote::Standard,
                    "extended" => PrecisionNote::Extended,
                    _ => return Err(fmt_err(lineno, format!("unknown precision '{v}'"))),
                })
            }
            "deg_p" => deg_p = Some(v.parse().map_err(|_| bad("deg_p"))?),
            "deg_q" => deg_q = Some(v.parse().map_err(|_| bad("deg_q"))?),
            other => return Err(fmt_err(lineno, format!("unknown key '{other}'"))),
        }
    }

    let missing = |what: &str| fmt_err(0, format!("missing {what}"));
    let mut params = ParamSet::new(
        terms.ok_or_else(|| missing("terms"))?,
        half.ok_or_else(|| missing("half_count"))?,
        step.ok_or_else(|| missing("step"))?,
        sigma.ok_or_else(|| missing("sigma"))?,
    )?;
    if let Some(w) = width {
        params = params.with_declared_width(w)?;
    }
    let parity = parity.ok_or_else(|| missing("parity"))?;
    let precision = precision.ok_or_else(|| missing("precision"))?;
    let deg_p = deg_p.ok_or_else(|| missing("deg_p"))?;
    let deg_q = deg_q.ok_or_else(|| missing("deg_q"))?;

    let assemble = |rows: &[(usize, f64, f64)], deg: usize, dense: bool| -> Result<(Vec<f64>, Vec<f64>), PolyError> {
        let mut hi = vec![0.0; deg + 1];
        let mut lo = vec![0.0; deg + 1];
        let expected = if dense { deg + 1 } else { deg / 2 + 1 };
        if rows.len() != expected {
            return Err(fmt_err(0, format!("expected {expected} coefficient rows, got {}", rows.len())));
        }
        for &(k, h, l) in rows {
            if k > deg {
                return Err(fmt_err(0, format!("coefficient index {k} beyond degree {deg}")));
            }
            hi[k] = h;
            lo[k] = l;
        }
        Ok((hi, lo))
    };
    let (p_hi, p_lo) = assemble(&p_rows, deg_p, true)?;
    let (q_hi, q_lo) = assemble(&q_rows, deg_q, false)?;
    let extended = precision == PrecisionNote::Extended;
    Ok(RationalPolynomial {
        p: Polynomial { coeffs: p_hi },
        q: Polynomial { coeffs: q_hi },
        p_lo: if extended { p_lo } else { Vec::new() },
        q_lo: if extended { q_lo } else { Vec::new() },
        precision,
        params,
        parity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::PartialFractionModel;
    use crate::coeffs::TermCoefficients;
    use crate::sampling::{sample_builtin, BuiltinFunction, BuiltinKind};
    use std::f64::consts::PI;

    fn preset_model(kind: BuiltinKind) -> PartialFractionModel {
        let (terms, half, h, sg) = match kind {
            BuiltinKind::RectSmooth => (32, 28, 0.04, 2.7),
            BuiltinKind::TRectSmooth => (32, 28, 0.04, 3.0),
            BuiltinKind::Gauss => (16, 23, 0.119, 6.9),
            BuiltinKind::TGauss => (16, 23, 0.119, 5.9),
        };
        let p = ParamSet::new(terms, half, h, sg).unwrap();
        PartialFractionModel::from_sampled(&sample_builtin(&BuiltinFunction::new(kind), &p)).unwrap()
    }

    #[test]
    fn poly_mul_difference_of_squares() {
        let a = Polynomial::new(vec![1.0, 1.0]);
        let b = Polynomial::new(vec![1.0, -1.0]);
        assert_eq!(poly_mul(&a, &b).coeffs(), &[1.0, 0.0, -1.0]);
    }

    #[test]
    fn poly_mul_annihilates_on_zero() {
        let a = Polynomial::new(vec![3.0, 0.0, 2.0]);
        let z = Polynomial::zero();
        assert!(poly_mul(&a, &z).is_zero());
        assert_eq!(Polynomial::new(vec![0.0, 0.0, 0.0]), Polynomial::zero());
    }

    #[test]
    fn quartic_product_structure() {
        let (k1, l1, k2, l2) = (0.3, -1.5, 2.0, 0.25);
        let q1 = Polynomial::new(vec![k1, 0.0, l1, 0.0, 1.0]);
        let q2 = Polynomial::new(vec![k2, 0.0, l2, 0.0, 1.0]);
        let prod = poly_mul(&q1, &q2);
        assert_eq!(prod.degree(), 8);
        assert_eq!(prod.coeff(0), k1 * k2);
        for k in (1..8).step_by(2) {
            assert_eq!(prod.coeff(k), 0.0);
        }
    }

    #[test]
    fn single_term_collapse_is_the_term_itself() {
        let params = ParamSet::new(1, 2, 0.5, 1.0).unwrap();
        let term = TermCoefficients {
            index: 1,
            alpha: 0.7,
            beta: -0.2,
            eta: 0.0,
            theta: 0.0,
            kappa: 0.9,
            lambda: -0.4,
            mu: 1.0,
        };
        let model = PartialFractionModel::from_parts(params, Parity::EvenReal, vec![term]).unwrap();
        let r = collapse(&model);
        assert_eq!(r.precision(), PrecisionNote::Standard);
        assert_eq!(r.p().coeffs(), &[0.7, 0.0, -0.2]);
        assert_eq!(r.q().coeffs(), &[0.9, 0.0, -0.4, 0.0, 1.0]);
        // at nu = 0 the value is alpha/kappa
        assert_eq!(eval_rational(&r, 0.0), 0.7 / 0.9);
        for nu in [-2.0, -0.3, 0.1, 1.7] {
            let pf = model.eval_re(nu);
            let rt = eval_rational(&r, nu);
            assert_eq!(pf.to_bits(), rt.to_bits(), "nu={nu}: {pf} vs {rt}");
        }
    }

    #[test]
    fn collapse_degrees_and_zero_structure() {
        for kind in [
            BuiltinKind::RectSmooth,
            BuiltinKind::TRectSmooth,
            BuiltinKind::Gauss,
            BuiltinKind::TGauss,
        ] {
            let model = preset_model(kind);
            let m = model.params().terms();
            let r = collapse(&model);
            assert_eq!(r.q().degree(), 4 * m, "{kind:?}");
            assert_eq!(r.q().coeff(4 * m), 1.0, "monic product of monic quartics");
            assert!(r.p().degree() < 4 * m, "{kind:?}");
            for k in (1..=r.q().degree()).step_by(2) {
                assert_eq!(r.q().coeff(k), 0.0);
                assert_eq!(r.q_lo(k), 0.0);
            }
            match model.parity() {
                Parity::EvenReal => {
                    for k in (1..=r.p().degree()).step_by(2) {
                        assert_eq!(r.p().coeff(k), 0.0, "{kind:?} odd p coeff {k}");
                    }
                }
                Parity::OddImaginary => {
                    for k in (0..=r.p().degree()).step_by(2) {
                        assert_eq!(r.p().coeff(k), 0.0, "{kind:?} even p coeff {k}");
                    }
                }
                Parity::Mixed => unreachable!(),
            }
            let expected = if m > EXTENDED_THRESHOLD {
                PrecisionNote::Extended
            } else {
                PrecisionNote::Standard
            };
            assert_eq!(r.precision(), expected);
        }
    }

    #[test]
    fn collapse_agrees_with_partial_fractions_on_the_grid() {
        for kind in [
            BuiltinKind::RectSmooth,
            BuiltinKind::TRectSmooth,
            BuiltinKind::Gauss,
            BuiltinKind::TGauss,
        ] {
            let model = preset_model(kind);
            let r = collapse(&model);
            let tol_rel = if model.params().terms() > 16 { 1e-6 } else { 1e-10 };
            let mut max_f = 0.0f64;
            let mut worst = 0.0f64;
            for i in 0..1000 {
                let nu = -2.0 * PI + 4.0 * PI * i as f64 / 999.0;
                let pf = model.eval_re(nu);
                max_f = max_f.max(pf.abs());
                worst = worst.max((eval_rational(&r, nu) - pf).abs());
            }
            assert!(
                worst <= tol_rel * max_f,
                "{kind:?}: {worst:e} > {tol_rel:e} * {max_f}"
            );
        }
    }

    #[test]
    fn collapsed_rect_form_tracks_the_analytic_reference() {
        // model error (<= 2.5e-3) plus collapse error stays within twice the
        // model bound
        let r = collapse(&preset_model(BuiltinKind::RectSmooth));
        for i in 0..1000 {
            let nu = -2.0 * PI + 4.0 * PI * i as f64 / 999.0;
            let want = crate::oracle::analytic_reference(BuiltinKind::RectSmooth, nu);
            assert!((eval_rational(&r, nu) - want).abs() <= 2.0 * 2.5e-3);
        }
    }

    #[test]
    fn rational_eval_keeps_parity() {
        let even = collapse(&preset_model(BuiltinKind::RectSmooth));
        let odd = collapse(&preset_model(BuiltinKind::TRectSmooth));
        for i in 0..200 {
            let nu = -2.0 * PI + 4.0 * PI * i as f64 / 199.0;
            assert_eq!(
                eval_rational(&even, nu).to_bits(),
                eval_rational(&even, -nu).to_bits()
            );
            if nu != 0.0 {
                assert_eq!(
                    eval_rational(&odd, nu).to_bits(),
                    (-eval_rational(&odd, -nu)).to_bits()
                );
            }
        }
        assert_eq!(eval_rational(&odd, 0.0), 0.0);
    }

    #[test]
    fn q_stays_positive_on_a_dense_grid() {
        // Positivity is a property of the stored representation: the
        // extended form needs its lo limbs (the hi half alone carries ~1e26
        // of condition-number noise at 32 terms).
        for kind in [BuiltinKind::RectSmooth, BuiltinKind::Gauss] {
            let r = collapse(&preset_model(kind));
            let q_value: Box<dyn Fn(f64) -> f64> = match r.precision() {
                PrecisionNote::Standard => {
                    let (qe, _) = split_even_odd(r.q().coeffs());
                    Box::new(move |y| comp_horner(&qe, y))
                }
                PrecisionNote::Extended => {
                    let (qe, _) = split_even_odd(&r.q_dd());
                    Box::new(move |y| dd_horner(&qe, Dd::from_f64(y)).to_f64())
                }
            };
            for i in 0..10_001 {
                let nu = -2.0 * PI + 4.0 * PI * i as f64 / 10_000.0;
                assert!(q_value(nu * nu) > 0.0, "{kind:?} at nu = {nu}");
            }
        }
    }

    #[test]
    fn far_tail_eval_is_finite_and_tiny() {
        for kind in [BuiltinKind::RectSmooth, BuiltinKind::TRectSmooth] {
            let r = collapse(&preset_model(kind));
            for nu in [50.0, 1e3, 1e6, -1e3] {
                let v = eval_rational(&r, nu);
                assert!(v.is_finite(), "{kind:?} at {nu}");
                assert!(v.abs() < 1e-2, "{kind:?} at {nu}: {v}");
            }
        }
    }

    #[test]
    fn export_import_round_trip_evaluates_bitwise() {
        let dir = tempfile::tempdir().unwrap();
        for kind in [BuiltinKind::RectSmooth, BuiltinKind::Gauss, BuiltinKind::TGauss] {
            let r = collapse(&preset_model(kind));
            let path = dir.path().join("rational.txt");
            export_rational(&r, &path).unwrap();
            let back = import_rational(&path).unwrap();
            assert_eq!(back, r);
            for nu in [-6.1, -1.0, 0.0, 0.37, 2.0 * PI] {
                assert_eq!(
                    eval_rational(&back, nu).to_bits(),
                    eval_rational(&r, nu).to_bits()
                );
            }
            // the q section stores ceil((deg_q + 1) / 2) even-index entries
            let text = std::fs::read_to_string(&path).unwrap();
            let q_lines = text.lines().filter(|l| l.starts_with("q ")).count();
            assert_eq!(q_lines, r.q().degree() / 2 + 1);
            assert!(text.contains(&format!("deg_q = {}", r.q().degree())));
            assert!(text.contains(&format!("deg_p = {}", r.p().degree())));
        }
    }

    // Exact-arithmetic oracle: for a small synthetic model the collapse is
    // reproduced in rational arithmetic and compared per coefficient.
    #[test]
    fn collapse_matches_exact_rational_arithmetic() {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        use num_traits::cast::ToPrimitive;

        let big = |i: i64| BigRational::from_integer(BigInt::from(i));
        let to_f = |r: &BigRational| r.to_f64().unwrap();

        // three synthetic terms with small integer coefficients
        let ints: [[i64; 6]; 3] = [
            // alpha eta beta theta kappa lambda
            [1, 2, -1, 3, 2, -3],
            [-2, 1, 4, -1, 5, 1],
            [3, -2, 2, 2, 7, -2],
        ];
        let params = ParamSet::new(3, 1, 1.0, 1.0).unwrap();
        let terms: Vec<TermCoefficients> = ints
            .iter()
            .enumerate()
            .map(|(i, v)| TermCoefficients {
                index: i + 1,
                alpha: v[0] as f64,
                eta: v[1] as f64,
                beta: v[2] as f64,
                theta: v[3] as f64,
                kappa: v[4] as f64,
                lambda: v[5] as f64,
                mu: 1.0 + i as f64,
            })
            .collect();
        let model = PartialFractionModel::from_parts(params, Parity::Mixed, terms).unwrap();
        let r = collapse(&model);

        let mul = |a: &[BigRational], b: &[BigRational]| {
            let mut out = vec![big(0); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        };
        let quartics: Vec<Vec<BigRational>> = ints
            .iter()
            .map(|v| vec![big(v[4]), big(0), big(v[5]), big(0), big(1)])
            .collect();
        let q_exact = mul(&mul(&quartics[0], &quartics[1]), &quartics[2]);
        let mut p_exact = vec![big(0); 12];
        for (m, v) in ints.iter().enumerate() {
            let numerator = vec![big(v[0]), big(v[1]), big(v[2]), big(v[3])];
            let mut others = vec![big(1)];
            for (j, q) in quartics.iter().enumerate() {
                if j != m {
                    others = mul(&others, q);
                }
            }
            for (k, c) in mul(&numerator, &others).into_iter().enumerate() {
                p_exact[k] += c;
            }
        }

        assert_eq!(r.q().degree(), 12);
        for (k, exact) in q_exact.iter().enumerate() {
            let want = to_f(exact);
            let got = r.q().coeff(k);
            assert!(
                (got - want).abs() <= 1e-12 * want.abs().max(1.0),
                "q[{k}]: {got} vs {want}"
            );
        }
        for (k, exact) in p_exact.iter().enumerate() {
            let want = to_f(exact);
            let got = r.p().coeff(k);
            assert!(
                (got - want).abs() <= 1e-12 * want.abs().max(1.0),
                "p[{k}]: {got} vs {want}"
            );
        }
    }
}
