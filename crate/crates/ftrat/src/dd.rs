//! Double-double arithmetic and error-free transformations.
//!
//! The collapsed polynomial coefficients span dozens of decades and their
//! monomial form is badly conditioned at the upper end of the plot range, so
//! the collapse pipeline carries roughly 32 significant digits as unevaluated
//! `hi + lo` pairs. Only addition, multiplication and division are needed.

/// Error-free sum: returns `(fl(a+b), err)` with `a + b = fl(a+b) + err`.
#[inline]
pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Error-free sum assuming `|a| >= |b|` or `a == 0`.
#[inline]
pub(crate) fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// Error-free product via fused multiply-add.
#[inline]
pub(crate) fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// An unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Normalizes a raw pair into canonical form.
    #[inline]
    pub fn renorm(hi: f64, lo: f64) -> Dd {
        let (h, l) = quick_two_sum(hi, lo);
        Dd { hi: h, lo: l }
    }

    /// Nearest `f64`; in canonical form this is just `hi`.
    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn add(self, o: Dd) -> Dd {
        let (s0, e0) = two_sum(self.hi, o.hi);
        let (s1, e1) = two_sum(self.lo, o.lo);
        let (hi, lo) = quick_two_sum(s0, e0 + s1);
        Dd::renorm(hi, lo + e1)
    }

    #[inline]
    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        Dd::renorm(p, e)
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let (p, e) = two_prod(self.hi, x);
        Dd::renorm(p, e + self.lo * x)
    }

    /// Quotient via two Newton-style correction terms.
    #[inline]
    pub fn div(self, o: Dd) -> Dd {
        let q0 = self.hi / o.hi;
        let r = self.add(o.mul_f64(q0).neg());
        let q1 = r.hi / o.hi;
        let r2 = r.add(o.mul_f64(q1).neg());
        let q2 = r2.hi / o.hi;
        let (hi, lo) = quick_two_sum(q0, q1);
        Dd::renorm(hi, lo + q2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eft_identities() {
        let (s, e) = two_sum(1.0, 1e-20);
        assert_eq!(s, 1.0);
        assert_eq!(e, 1e-20);
        let (p, e) = two_prod(1.0 + 2f64.powi(-30), 1.0 + 2f64.powi(-30));
        assert_eq!(p, 1.0 + 2f64.powi(-29));
        assert_eq!(e, 2f64.powi(-60));
    }

    #[test]
    fn dd_carries_sub_ulp_information() {
        let a = Dd::from_f64(1.0).add(Dd::from_f64(1e-25));
        assert_eq!(a.hi, 1.0);
        assert_eq!(a.lo, 1e-25);
        let b = a.add(Dd::from_f64(-1.0));
        assert_eq!(b.to_f64(), 1e-25);
    }

    #[test]
    fn dd_product_is_nearly_exact() {
        // (1 + 2^-40)^2 = 1 + 2^-39 + 2^-80, representable as hi + lo.
        let x = Dd::from_f64(1.0 + 2f64.powi(-40));
        let sq = x.mul(x);
        assert_eq!(sq.hi, 1.0 + 2f64.powi(-39));
        assert_eq!(sq.lo, 2f64.powi(-80));
    }

    #[test]
    fn dd_division_round_trips() {
        let a = Dd::renorm(std::f64::consts::PI, 1.2246467991473532e-16);
        let b = Dd::from_f64(3.0).add(Dd::from_f64(2f64.powi(-45)));
        let q = a.div(b);
        let back = q.mul(b);
        let err = back.add(a.neg());
        assert!(err.to_f64().abs() < 1e-30);
    }
}
