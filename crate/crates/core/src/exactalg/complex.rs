//! Arbitrary-precision complex numbers and evaluation of rational functions.
//!
//! Every operation rounds to nearest, ties to even, at the working precision.

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use num_bigint::{BigInt, Sign as BigSign};

use super::laurent::LaurentPoly;
use super::ratfn::RationalFn;
use crate::error::{Result, SkeinError};

pub const RM: RoundingMode = RoundingMode::ToEven;

/// Converts to the nearest `f64` (up to double rounding).
pub fn bigfloat_to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if x.is_zero() {
        return 0.0;
    }
    let Some((words, _, sign, exp, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let wbits = (std::mem::size_of::<Word>() * 8) as i32;
    // Mantissa is normalized to [1/2, 1) with the most significant word last.
    let mut m = 0.0f64;
    let mut scale = 1.0f64;
    for w in words.iter().rev().take(128 / wbits as usize + 1) {
        scale *= 2f64.powi(-wbits);
        m += (*w as f64) * scale;
    }
    let v = m * 2f64.powi(exp);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// Converts an arbitrary integer exactly when it fits the precision.
pub fn bigint_to_bigfloat(c: &BigInt, p: usize) -> BigFloat {
    let (s, digits) = c.to_u64_digits();
    let base = BigFloat::from_u64(u64::MAX, p).add(&BigFloat::from_u64(1, p), p, RM);
    let mut acc = BigFloat::from_u64(0, p);
    for d in digits.iter().rev() {
        acc = acc.mul(&base, p, RM).add(&BigFloat::from_u64(*d, p), p, RM);
    }
    if s == BigSign::Minus {
        acc.neg()
    } else {
        acc
    }
}

#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Self { re, im }
    }

    pub fn zero(p: usize) -> Self {
        Self::from_f64(0.0, 0.0, p)
    }

    pub fn one(p: usize) -> Self {
        Self::from_f64(1.0, 0.0, p)
    }

    pub fn from_f64(re: f64, im: f64, p: usize) -> Self {
        Self {
            re: BigFloat::from_f64(re, p),
            im: BigFloat::from_f64(im, p),
        }
    }

    /// `e^{iπ num/den}`.
    pub fn exp_i_pi(num: i64, den: i64, p: usize, cc: &mut Consts) -> Self {
        let wp = p + 64;
        let pi = cc.pi(wp, RM);
        let t = pi
            .mul(&BigFloat::from_i64(num, wp), wp, RM)
            .div(&BigFloat::from_i64(den, wp), wp, RM);
        let mut re = t.cos(wp, RM, cc);
        let mut im = t.sin(wp, RM, cc);
        re.set_precision(p, RM).ok();
        im.set_precision(p, RM).ok();
        Self { re, im }
    }

    pub fn add(&self, o: &Self, p: usize) -> Self {
        Self {
            re: self.re.add(&o.re, p, RM),
            im: self.im.add(&o.im, p, RM),
        }
    }

    pub fn sub(&self, o: &Self, p: usize) -> Self {
        Self {
            re: self.re.sub(&o.re, p, RM),
            im: self.im.sub(&o.im, p, RM),
        }
    }

    pub fn mul(&self, o: &Self, p: usize) -> Self {
        let re = self.re.mul(&o.re, p, RM).sub(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.re.mul(&o.im, p, RM).add(&self.im.mul(&o.re, p, RM), p, RM);
        Self { re, im }
    }

    pub fn scale(&self, s: &BigFloat, p: usize) -> Self {
        Self {
            re: self.re.mul(s, p, RM),
            im: self.im.mul(s, p, RM),
        }
    }

    pub fn norm_sq(&self, p: usize) -> BigFloat {
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self, p: usize) -> BigFloat {
        self.norm_sq(p).sqrt(p, RM)
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn div(&self, o: &Self, p: usize) -> Self {
        let d = o.norm_sq(p);
        let n = self.mul(&o.conj(), p);
        Self {
            re: n.re.div(&d, p, RM),
            im: n.im.div(&d, p, RM),
        }
    }

    pub fn powi(&self, k: i64, p: usize) -> Self {
        let base = if k < 0 { Self::one(p).div(self, p) } else { self.clone() };
        let mut n = k.unsigned_abs();
        let mut b = base;
        let mut r = Self::one(p);
        while n > 0 {
            if n & 1 == 1 {
                r = r.mul(&b, p);
            }
            b = b.mul(&b, p);
            n >>= 1;
        }
        r
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (bigfloat_to_f64(&self.re), bigfloat_to_f64(&self.im))
    }

    /// Distance to another value, rounded to `f64`.
    pub fn dist_f64(&self, o: &Self, p: usize) -> f64 {
        bigfloat_to_f64(&self.sub(o, p).abs(p))
    }
}

/// Evaluates a Laurent polynomial by Horner's rule.
pub fn eval_laurent(f: &LaurentPoly, z: &BigComplex, p: usize) -> BigComplex {
    let Some(low) = f.min_exp() else {
        return BigComplex::zero(p);
    };
    let high = f.max_exp().unwrap();
    let mut acc = BigComplex::zero(p);
    let mut terms = f.terms().iter().rev().peekable();
    let mut e = high;
    loop {
        acc = acc.mul(z, p);
        if let Some((te, tc)) = terms.peek() {
            if *te == e {
                acc.re = acc.re.add(&bigint_to_bigfloat(tc, p), p, RM);
                terms.next();
            }
        }
        if e == low {
            break;
        }
        e -= 1;
    }
    acc.mul(&z.powi(low, p), p)
}

/// Evaluates `f` at `z` with `precision_bits` of working precision.
///
/// Fails with a pole error when the denominator's magnitude is below
/// `2^{-precision/2}`.
pub fn eval_complex(f: &RationalFn, z: &BigComplex, precision_bits: usize) -> Result<BigComplex> {
    if precision_bits < 53 {
        return Err(SkeinError::InvalidParams("precision must be at least 53 bits".into()));
    }
    let p = precision_bits + 32;
    let num = eval_laurent(f.numerator(), z, p);
    let den = eval_laurent(&f.denominator(), z, p);
    let mag = bigfloat_to_f64(&den.abs(p));
    if mag < 2f64.powi(-(precision_bits as i32) / 2) {
        return Err(SkeinError::Pole(format!("denominator vanishes at working precision ({mag:e})")));
    }
    let mut v = num.div(&den, p);
    v.re.set_precision(precision_bits, RM).ok();
    v.im.set_precision(precision_bits, RM).ok();
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::CycloMonomial;

    #[test]
    fn evaluate_a_at_sixth_root() {
        let mut cc = Consts::new().unwrap();
        let z = BigComplex::exp_i_pi(1, 3, 128, &mut cc);
        let v = eval_complex(&RationalFn::monomial(1, 1), &z, 128).unwrap();
        assert!(v.dist_f64(&z, 128) < 1e-35);
    }

    #[test]
    fn evaluate_at_i() {
        let f = RationalFn::from_poly(LaurentPoly::from_terms([(2, 1i64), (-2, 1)]));
        let z = BigComplex::from_f64(0.0, 1.0, 128);
        let (re, im) = eval_complex(&f, &z, 128).unwrap().to_f64();
        assert!((re + 2.0).abs() < 1e-30 && im.abs() < 1e-30);
    }

    #[test]
    fn pole_detected() {
        let f = CycloMonomial::phi(4).inv().to_ratfn();
        let z = BigComplex::from_f64(0.0, 1.0, 128);
        assert!(matches!(eval_complex(&f, &z, 128), Err(SkeinError::Pole(_))));
    }

    #[test]
    fn big_integers_convert() {
        let c: BigInt = "-123456789012345678901234567890".parse().unwrap();
        let v = bigfloat_to_f64(&bigint_to_bigfloat(&c, 128));
        assert!((v + 1.2345678901234568e29).abs() < 1e14);
    }
}
