//! Integer Laurent polynomials in the variable `A`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::SkeinError;

/// An element of `Z[A, A^-1]`.
///
/// Terms are kept sorted by exponent with no zero coefficients, so derived
/// equality is equality of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i64, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * A^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: vec![(exp, c)],
            }
        }
    }

    /// The variable `A` itself.
    pub fn a() -> Self {
        Self::monomial(1, 1)
    }

    /// `A^exp`.
    pub fn a_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// summing repeated exponents.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut v: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i64, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    /// Builds from a dense coefficient vector whose first entry is the
    /// coefficient of `A^low`.
    pub fn from_dense(low: i64, coeffs: Vec<BigInt>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (low + i as i64, c))
            .collect();
        Self { terms }
    }

    /// Dense coefficients starting at `min_exp`. Empty for zero.
    pub fn to_dense(&self) -> (i64, Vec<BigInt>) {
        let Some(low) = self.min_exp() else {
            return (0, Vec::new());
        };
        let len = (self.max_exp().unwrap() - low + 1) as usize;
        let mut v = vec![BigInt::zero(); len];
        for (e, c) in &self.terms {
            v[(e - low) as usize] = c.clone();
        }
        (low, v)
    }

    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// True for `c * A^k`, including constants.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.terms.len() == 1 && self.terms[0].0 == 0)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    /// `max_exp - min_exp`, zero for the zero polynomial.
    pub fn span(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.last().map(|t| &t.1)
    }

    pub fn trailing_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|t| &t.1)
    }

    /// The involution `A -> A^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// Exact division of every coefficient by `d`; panics if inexact.
    pub fn div_scalar(&self, d: &BigInt) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let (q, r) = c.div_rem(d);
                    assert!(r.is_zero(), "inexact scalar division");
                    (*e, q)
                })
                .collect(),
        }
    }

    /// The non-negative gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Splits off the monomial unit: returns `(sign, k, p)` with
    /// `self = sign * A^k * p`, where `p` has minimum exponent zero and a
    /// positive leading coefficient. Panics on zero.
    pub fn split_unit(&self) -> (i8, i64, LaurentPoly) {
        let low = self.min_exp().expect("split_unit on zero");
        let sign: i8 = if self.leading_coeff().unwrap().is_negative() { -1 } else { 1 };
        let mut p = self.shift(-low);
        if sign < 0 {
            p = -p;
        }
        (sign, low, p)
    }

    /// Exact quotient `self / divisor` over `Z[A^±1]`, or `None` when the
    /// divisor does not divide.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.is_monomial() {
            let (e, c) = &divisor.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (se, sc) in &self.terms {
                let (q, r) = sc.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                terms.push((se - e, q));
            }
            return Some(Self { terms });
        }
        if self.span() < divisor.span() {
            return None;
        }
        let (dlow, d) = divisor.to_dense();
        let (slow, mut s) = self.to_dense();
        let dn = d.len();
        let lead = &d[dn - 1];
        let qlen = s.len() - dn + 1;
        let mut q = vec![BigInt::zero(); qlen];
        let small = small_divisor(&d);
        for i in (0..qlen).rev() {
            let top = &s[i + dn - 1];
            if top.is_zero() {
                continue;
            }
            let (qi, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            match &small {
                Some(ds) => {
                    for (j, dj) in ds.iter().enumerate() {
                        if *dj != 0 {
                            s[i + j] -= &qi * *dj;
                        }
                    }
                }
                None => {
                    for (j, dj) in d.iter().enumerate() {
                        if !dj.is_zero() {
                            s[i + j] -= &qi * dj;
                        }
                    }
                }
            }
            q[i] = qi;
        }
        if s[..dn - 1].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(slow - dlow, q))
    }

    /// Evaluates at a complex point in double precision.
    pub fn eval_f64(&self, re: f64, im: f64) -> (f64, f64) {
        // Horner over the dense range, then multiply by z^low.
        let Some(low) = self.min_exp() else {
            return (0.0, 0.0);
        };
        let (mut ar, mut ai) = (0.0f64, 0.0f64);
        let mut iter = self.terms.iter().rev().peekable();
        let mut e = self.max_exp().unwrap();
        while e >= low {
            let c = match iter.peek() {
                Some((te, tc)) if *te == e => {
                    iter.next();
                    tc.to_f64().unwrap_or(f64::INFINITY)
                }
                _ => 0.0,
            };
            let nr = ar * re - ai * im + c;
            let ni = ar * im + ai * re;
            ar = nr;
            ai = ni;
            if e == low {
                break;
            }
            e -= 1;
        }
        let (pr, pi) = complex_powi(re, im, low);
        (ar * pr - ai * pi, ar * pi + ai * pr)
    }

    /// Sum of absolute values of coefficients, as a float.
    pub fn l1_norm_f64(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.abs().to_f64().unwrap_or(f64::INFINITY)).sum()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
    }
}

fn complex_powi(re: f64, im: f64, n: i64) -> (f64, f64) {
    let (mut br, mut bi) = if n < 0 {
        let d = re * re + im * im;
        (re / d, -im / d)
    } else {
        (re, im)
    };
    let mut n = n.unsigned_abs();
    let (mut rr, mut ri) = (1.0, 0.0);
    while n > 0 {
        if n & 1 == 1 {
            let t = rr * br - ri * bi;
            ri = rr * bi + ri * br;
            rr = t;
        }
        let t = br * br - bi * bi;
        bi = 2.0 * br * bi;
        br = t;
        n >>= 1;
    }
    (rr, ri)
}

fn small_divisor(d: &[BigInt]) -> Option<Vec<i64>> {
    d.iter().map(|c| c.to_i64().filter(|v| v.unsigned_abs() < (1 << 31))).collect()
}

fn fits_i128_product(a: &LaurentPoly, b: &LaurentPoly) -> Option<(Vec<i64>, Vec<i64>)> {
    let conv = |p: &LaurentPoly| -> Option<(Vec<i64>, u64)> {
        let (low, d) = p.to_dense();
        let _ = low;
        let mut m = 0u64;
        let mut v = Vec::with_capacity(d.len());
        for c in d {
            let x = c.to_i64()?;
            m = m.max(x.unsigned_abs());
            v.push(x);
        }
        Some((v, m))
    };
    let (va, ma) = conv(a)?;
    let (vb, mb) = conv(b)?;
    let bound = (ma as u128).checked_mul(mb as u128)?.checked_mul(va.len().min(vb.len()) as u128)?;
    if bound < (1u128 << 126) {
        Some((va, vb))
    } else {
        None
    }
}

fn mul_polys(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() || b.is_zero() {
        return LaurentPoly::zero();
    }
    if a.is_monomial() || b.is_monomial() {
        let (m, p) = if a.is_monomial() { (a, b) } else { (b, a) };
        let (e, c) = &m.terms[0];
        return LaurentPoly {
            terms: p.terms.iter().map(|(pe, pc)| (pe + e, pc * c)).collect(),
        };
    }
    let low = a.min_exp().unwrap() + b.min_exp().unwrap();
    let len = (a.span() + b.span() + 1) as usize;
    if let Some((va, vb)) = fits_i128_product(a, b) {
        let mut acc = vec![0i128; len];
        for (i, x) in va.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            let x = *x as i128;
            for (j, y) in vb.iter().enumerate() {
                if *y != 0 {
                    acc[i + j] += x * (*y as i128);
                }
            }
        }
        return LaurentPoly::from_dense(low, acc.into_iter().map(BigInt::from).collect());
    }
    let mut acc = vec![BigInt::zero(); len];
    let alow = a.min_exp().unwrap();
    let blow = b.min_exp().unwrap();
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            acc[(ea - alow + eb - blow) as usize] += ca * cb;
        }
    }
    LaurentPoly::from_dense(low, acc)
}

fn add_polys(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let ord = match (a.terms.get(i), b.terms.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Less => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let (e, c) = &b.terms[j];
                out.push((*e, if negate_b { -c } else { c.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    &a.terms[i].1 - &b.terms[j].1
                } else {
                    &a.terms[i].1 + &b.terms[j].1
                };
                if !c.is_zero() {
                    out.push((a.terms[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    LaurentPoly { terms: out }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_polys(self, rhs, false)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        add_polys(&self, &rhs, false)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = add_polys(self, rhs, false);
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_polys(self, rhs, true)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        add_polys(&self, &rhs, true)
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = add_polys(self, rhs, true);
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        mul_polys(self, rhs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        mul_polys(&self, &rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -(self.clone())
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

/// Canonical text form: `coeff*A^exp` terms in increasing exponent order
/// joined by ` + `, or `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*A^{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = SkeinError;

    /// Parses the canonical text form (term order is not required).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let bad = || SkeinError::Parse(format!("bad Laurent polynomial: {s:?}"));
        let mut terms = Vec::new();
        for part in s.split(" + ") {
            let (c, e) = part.trim().split_once("*A^").ok_or_else(bad)?;
            let c: BigInt = c.parse().map_err(|_| bad())?;
            let e: i64 = e.parse().map_err(|_| bad())?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn add_cancels_to_monomial() {
        let x = p(&[(1, 1), (-1, 1)]);
        let y = p(&[(-1, -1)]);
        assert_eq!(&x + &y, LaurentPoly::a());
    }

    #[test]
    fn bar_negates_exponents() {
        let x = p(&[(2, 1), (-5, 3)]);
        assert_eq!(x.bar(), p(&[(-2, 1), (5, 3)]));
    }

    #[test]
    fn difference_of_squares() {
        let x = p(&[(2, 1), (-2, 1)]);
        let y = p(&[(2, 1), (-2, -1)]);
        assert_eq!(&x * &y, p(&[(4, 1), (-4, -1)]));
    }

    #[test]
    fn text_form_round_trips() {
        let x = p(&[(-2, -1), (2, -1)]);
        assert_eq!(x.to_string(), "-1*A^-2 + -1*A^2");
        assert_eq!(x.to_string().parse::<LaurentPoly>().unwrap(), x);
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a4m1 = p(&[(4, 1), (0, -1)]);
        let am1 = p(&[(1, 1), (0, -1)]);
        assert_eq!(a4m1.div_exact(&am1).unwrap(), p(&[(3, 1), (2, 1), (1, 1), (0, 1)]));
        assert!(a4m1.div_exact(&p(&[(1, 1), (0, 2)])).is_none());
        assert_eq!(a4m1.shift(-7).div_exact(&am1.shift(3)).unwrap().min_exp(), Some(-10));
    }

    #[test]
    fn big_coefficients_use_bigint_path() {
        let big = LaurentPoly::from_terms([(0, BigInt::from(1u64 << 62)), (1, BigInt::from(1u64 << 62))]);
        let sq = &big * &big;
        assert_eq!(sq.coeff(1), BigInt::from(2) * BigInt::from(1u128 << 124));
    }

    #[test]
    fn eval_at_i() {
        let x = p(&[(2, 1), (-2, 1)]);
        let (re, im) = x.eval_f64(0.0, 1.0);
        assert!((re + 2.0).abs() < 1e-12 && im.abs() < 1e-12);
    }
}
