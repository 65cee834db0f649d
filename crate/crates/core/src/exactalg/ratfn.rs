//! Rational functions in `A` with a factored denominator.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::cyclomono::CycloMonomial;
use super::cyclotomic::{
    cyclotomic, cyclotomic_product, divide_out, euler_phi, is_unit_in_R, split_cyclotomic, UnitCertificate,
};
use super::gcd::poly_gcd;
use super::laurent::LaurentPoly;
use crate::error::{Result, SkeinError};

/// An element of `Q(A)`, stored as `num / (∏ Φ_n^{e_n} · rest)`.
///
/// Normal form:
/// - `num` and the denominator are coprime;
/// - `rest` has no cyclotomic factor, minimum exponent zero and a positive
///   leading coefficient (it is `1` for every element of the localized ring);
/// - monomial units `±A^k` live in `num`.
///
/// The expanded denominator therefore has nonzero constant term and
/// positive leading coefficient, and the normal form is unique.
#[derive(Clone)]
pub struct RationalFn {
    num: LaurentPoly,
    cyc: BTreeMap<u32, u32>,
    rest: LaurentPoly,
}

impl Default for RationalFn {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFn {
    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            cyc: BTreeMap::new(),
            rest: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            cyc: BTreeMap::new(),
            rest: LaurentPoly::one(),
        }
    }

    /// `c * A^k`.
    pub fn monomial(c: i64, k: i64) -> Self {
        Self::from_poly(LaurentPoly::monomial(c, k))
    }

    /// Builds `num / den`, normalizing fully.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(SkeinError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (sign, k, cyc, rest) = split_cyclotomic(&den);
        let num = num.shift(-k);
        let num = if sign < 0 { -num } else { num };
        Ok(Self::normalize(num, cyc, rest))
    }

    /// Numerator and cyclotomic denominator exponents already known to be coprime.
    pub(crate) fn from_parts_reduced(num: LaurentPoly, cyc: BTreeMap<u32, u32>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        Self {
            num,
            cyc,
            rest: LaurentPoly::one(),
        }
    }

    /// `num / (∏ Φ_n^{e_n} · rest)` where `rest` is cyclotomic-free.
    pub(crate) fn from_split_denominator(num: LaurentPoly, cyc: BTreeMap<u32, u32>, rest: LaurentPoly) -> Self {
        Self::normalize(num, cyc, rest)
    }

    /// `num / ∏ Φ_n^{e_n}`, cancelling common cyclotomic factors.
    pub fn from_cyclotomic_denominator(num: LaurentPoly, cyc: BTreeMap<u32, u32>) -> Self {
        Self::normalize(num, cyc, LaurentPoly::one())
    }

    fn normalize(mut num: LaurentPoly, cyc: BTreeMap<u32, u32>, rest: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mut out_cyc = BTreeMap::new();
        for (n, e) in cyc {
            let (m, q) = divide_out(&num, n, e);
            num = q;
            if e > m {
                out_cyc.insert(n, e - m);
            }
        }
        let mut rest = rest;
        if !rest.is_one() {
            let g = poly_gcd(&num, &rest);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                rest = rest.div_exact(&g).expect("gcd divides denominator");
            }
            let (sign, k, r) = rest.split_unit();
            num = num.shift(-k);
            if sign < 0 {
                num = -num;
            }
            rest = r;
        }
        Self {
            num,
            cyc: out_cyc,
            rest,
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    /// The expanded denominator.
    pub fn denominator(&self) -> LaurentPoly {
        &cyclotomic_product(&self.cyc) * &self.rest
    }

    /// Cyclotomic exponents of the denominator.
    pub fn denominator_cyclotomics(&self) -> &BTreeMap<u32, u32> {
        &self.cyc
    }

    /// The non-cyclotomic part of the denominator (`1` inside the localized ring).
    pub fn denominator_rest(&self) -> &LaurentPoly {
        &self.rest
    }

    /// True when the denominator is a unit of the localized ring, i.e. the
    /// value lies in `R`.
    pub fn is_r_integral(&self) -> bool {
        self.rest.is_one()
    }

    /// Certificate that `self` is a unit of `R`: the numerator's unit
    /// certificate, the denominator being a product of cyclotomics already.
    pub fn unit_certificate(&self) -> Result<Option<UnitCertificate>> {
        if self.is_zero() {
            return Err(SkeinError::DivisionByZero);
        }
        if !self.rest.is_one() {
            return Ok(None);
        }
        is_unit_in_R(&self.num)
    }

    pub fn is_unit_in_r(&self) -> bool {
        matches!(self.unit_certificate(), Ok(Some(_)))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.cyc.is_empty() && self.rest.is_one()
    }

    /// `Some(p)` when the value is a Laurent polynomial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        (self.cyc.is_empty() && self.rest.is_one()).then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(SkeinError::DivisionByZero);
        }
        let (sign, k, cyc, rest) = split_cyclotomic(&self.num);
        let mut num = (&cyclotomic_product(&self.cyc) * &self.rest).shift(-k);
        if sign < 0 {
            num = -num;
        }
        // `rest` may carry integer content that must be kept coprime with `num`.
        Ok(Self::normalize(num, cyc, rest))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Multiplies by a cyclotomic monomial without expanding factors that cancel.
    pub fn mul_mono(&self, m: &CycloMonomial) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut cyc = self.cyc.clone();
        let mut num = self.num.shift(m.apow);
        if m.sign < 0 {
            num = -num;
        }
        for (n, e) in &m.exps {
            if *e > 0 {
                let mut e = *e as u32;
                if let Some(d) = cyc.get_mut(n) {
                    let c = (*d).min(e);
                    *d -= c;
                    e -= c;
                    if *d == 0 {
                        cyc.remove(n);
                    }
                }
                if e > 0 {
                    let phi = cyclotomic(*n);
                    for _ in 0..e {
                        num = &num * &*phi;
                    }
                }
            } else {
                let want = (-e) as u32;
                let (got, q) = divide_out(&num, *n, want);
                num = q;
                if want > got {
                    *cyc.entry(*n).or_insert(0) += want - got;
                }
            }
        }
        Self {
            num,
            cyc,
            rest: self.rest.clone(),
        }
    }

    pub fn div_mono(&self, m: &CycloMonomial) -> Self {
        self.mul_mono(&m.inv())
    }

    /// The involution `A -> A^-1`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        // Φ_n(A^-1) = A^-φ(n) Φ_n(A) for n >= 2, and Φ_1(A^-1) = -A^-1 Φ_1(A).
        let mut shift = 0i64;
        let mut negate = false;
        for (n, e) in &self.cyc {
            shift += euler_phi(*n) as i64 * *e as i64;
            if *n == 1 && e % 2 == 1 {
                negate = !negate;
            }
        }
        let (sign, k, rest) = self.rest.bar().split_unit();
        if sign < 0 {
            negate = !negate;
        }
        let mut num = self.num.bar().shift(shift - k);
        if negate {
            num = -num;
        }
        Self {
            num,
            cyc: self.cyc.clone(),
            rest,
        }
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Sums many terms over one common denominator, normalizing once.
    pub fn sum<I: IntoIterator<Item = RationalFn>>(terms: I) -> Self {
        let mut fast: Vec<RationalFn> = Vec::new();
        let mut slow = Self::zero();
        for t in terms {
            if t.is_zero() {
                continue;
            }
            if t.rest.is_one() {
                fast.push(t);
            } else {
                slow = &slow + &t;
            }
        }
        if fast.is_empty() {
            return slow;
        }
        if fast.len() == 1 {
            return &slow + &fast[0];
        }
        let mut lcm: BTreeMap<u32, u32> = BTreeMap::new();
        for t in &fast {
            for (n, e) in &t.cyc {
                let v = lcm.entry(*n).or_insert(0);
                *v = (*v).max(*e);
            }
        }
        let mut powers: BTreeMap<(u32, u32), LaurentPoly> = BTreeMap::new();
        let mut num = LaurentPoly::zero();
        for t in &fast {
            let mut term = t.num.clone();
            for (n, e) in &lcm {
                let have = t.cyc.get(n).copied().unwrap_or(0);
                let k = e - have;
                if k > 0 {
                    let pw = powers
                        .entry((*n, k))
                        .or_insert_with(|| cyclotomic(*n).pow(k));
                    term = &term * pw;
                }
            }
            num += &term;
        }
        let summed = Self::normalize(num, lcm, LaurentPoly::one());
        &slow + &summed
    }

    /// Double-precision evaluation at a complex point.
    pub fn eval_f64(&self, re: f64, im: f64) -> (f64, f64) {
        let (nr, ni) = self.num.eval_f64(re, im);
        let (mut dr, mut di) = self.rest.eval_f64(re, im);
        for (n, e) in &self.cyc {
            let (pr, pi) = cyclotomic(*n).eval_f64(re, im);
            for _ in 0..*e {
                let t = dr * pr - di * pi;
                di = dr * pi + di * pr;
                dr = t;
            }
        }
        let d = dr * dr + di * di;
        ((nr * dr + ni * di) / d, (ni * dr - nr * di) / d)
    }

    /// `(numerator, denominator)` in the canonical text form.
    pub fn to_text_parts(&self) -> (String, String) {
        (self.num.to_string(), self.denominator().to_string())
    }

    pub fn from_text_parts(num: &str, den: &str) -> Result<Self> {
        Self::new(num.parse()?, den.parse()?)
    }

    fn add_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let mut lcm = self.cyc.clone();
        for (n, e) in &rhs.cyc {
            let v = lcm.entry(*n).or_insert(0);
            *v = (*v).max(*e);
        }
        let cof = |cyc: &BTreeMap<u32, u32>| {
            let mut diff = BTreeMap::new();
            for (n, e) in &lcm {
                let k = e - cyc.get(n).copied().unwrap_or(0);
                if k > 0 {
                    diff.insert(*n, k);
                }
            }
            cyclotomic_product(&diff)
        };
        let mut a = &self.num * &cof(&self.cyc);
        let mut b = &rhs.num * &cof(&rhs.cyc);
        let rest = if self.rest.is_one() && rhs.rest.is_one() {
            LaurentPoly::one()
        } else if self.rest == rhs.rest {
            self.rest.clone()
        } else {
            let g = poly_gcd(&self.rest, &rhs.rest);
            let ra = self.rest.div_exact(&g).unwrap();
            let rb = rhs.rest.div_exact(&g).unwrap();
            a = &a * &rb;
            b = &b * &ra;
            &ra * &rhs.rest
        };
        Self::normalize(&a + &b, lcm, rest)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut na = self.num.clone();
        let mut nb = rhs.num.clone();
        let mut cyc = BTreeMap::new();
        let mut cb = rhs.cyc.clone();
        for (n, e) in &rhs.cyc {
            let (m, q) = divide_out(&na, *n, *e);
            na = q;
            if m == *e {
                cb.remove(n);
            } else {
                cb.insert(*n, e - m);
            }
        }
        let mut ca = self.cyc.clone();
        for (n, e) in &self.cyc {
            let (m, q) = divide_out(&nb, *n, *e);
            nb = q;
            if m == *e {
                ca.remove(n);
            } else {
                ca.insert(*n, e - m);
            }
        }
        for (n, e) in ca.into_iter().chain(cb) {
            *cyc.entry(n).or_insert(0) += e;
        }
        let num = &na * &nb;
        if self.rest.is_one() && rhs.rest.is_one() {
            return Self {
                num,
                cyc,
                rest: LaurentPoly::one(),
            };
        }
        let rest = &self.rest * &rhs.rest;
        Self::normalize(num, BTreeMap::new(), rest).with_cyc(cyc)
    }

    fn with_cyc(mut self, cyc: BTreeMap<u32, u32>) -> Self {
        if !self.is_zero() {
            self.cyc = cyc;
        }
        self
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        if self.cyc == other.cyc && self.rest == other.rest {
            return self.num == other.num;
        }
        &self.num * &other.denominator() == &other.num * &self.denominator()
    }
}

impl Eq for RationalFn {}

impl<'a> Add<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        self.add_impl(rhs)
    }
}

impl Add for RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: RationalFn) -> RationalFn {
        self.add_impl(&rhs)
    }
}

impl<'a> Sub<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self.add_impl(&-rhs)
    }
}

impl Sub for RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: RationalFn) -> RationalFn {
        self.add_impl(&-rhs)
    }
}

impl<'a> Mul<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        self.mul_impl(rhs)
    }
}

impl Mul for RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: RationalFn) -> RationalFn {
        self.mul_impl(&rhs)
    }
}

/// Panics on division by zero; use [`RationalFn::checked_div`] to handle it.
impl<'a> Div<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn div(self, rhs: &RationalFn) -> RationalFn {
        self.checked_div(rhs).expect("division by the zero function")
    }
}

impl Div for RationalFn {
    type Output = RationalFn;
    fn div(self, rhs: RationalFn) -> RationalFn {
        &self / &rhs
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            cyc: self.cyc.clone(),
            rest: self.rest.clone(),
        }
    }
}

impl Neg for RationalFn {
    type Output = RationalFn;
    fn neg(mut self) -> RationalFn {
        self.num = -self.num;
        self
    }
}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for RationalFn {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<&CycloMonomial> for RationalFn {
    fn from(m: &CycloMonomial) -> Self {
        m.to_ratfn()
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_laurent() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "({}) / ({})", self.num, self.denominator()),
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFn({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn p(t: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(t.iter().copied())
    }

    fn q(n: &[(i64, i64)], d: &[(i64, i64)]) -> RationalFn {
        RationalFn::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn partial_fractions_add() {
        let x = q(&[(0, 1)], &[(1, 1), (0, -1)]);
        let y = q(&[(0, 1)], &[(1, 1), (0, 1)]);
        assert_eq!(&x + &y, q(&[(1, 2)], &[(2, 1), (0, -1)]));
    }

    #[test]
    fn self_quotient_is_one() {
        let f = q(&[(3, 2), (0, -1)], &[(2, 1), (0, 5)]);
        assert!((&f / &f).is_one());
    }

    #[test]
    fn cross_multiplication_equality() {
        let lhs = RationalFn::from_poly(p(&[(2, 1), (-2, -1)]));
        let rhs = q(&[(4, 1), (0, -1)], &[(2, 1)]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn denominator_sign_and_constant() {
        let f = q(&[(0, 1)], &[(1, -1), (0, 1)]);
        let den = f.denominator();
        assert!(den.leading_coeff().unwrap() > &BigInt::zero());
        assert_eq!(den.min_exp(), Some(0));
        assert_eq!(f.numerator(), &p(&[(0, -1)]));
    }

    #[test]
    fn non_cyclotomic_denominator() {
        let f = q(&[(1, 1)], &[(2, 2), (0, 1)]);
        assert!(!f.is_r_integral());
        let g = &f * &RationalFn::from_poly(p(&[(2, 2), (0, 1)]));
        assert_eq!(g, RationalFn::from_poly(p(&[(1, 1)])));
        assert!(g.is_r_integral());
    }

    #[test]
    fn rational_content() {
        let half = q(&[(0, 1)], &[(0, 2)]);
        let two = RationalFn::from_int(2);
        assert!((&half * &two).is_one());
        assert_eq!(&half + &half, RationalFn::one());
    }

    #[test]
    fn bar_is_involutive_and_multiplicative() {
        let f = q(&[(3, 2), (0, -1)], &[(2, 1), (0, 5)]);
        let g = RationalFn::from_cyclotomic_denominator(p(&[(5, 1), (1, 1)]), [(1, 2), (6, 1)].into());
        assert_eq!(f.bar().bar(), f);
        assert_eq!(g.bar().bar(), g);
        assert_eq!((&f * &g).bar(), &f.bar() * &g.bar());
        let (re, im) = g.bar().eval_f64(0.3, 0.4);
        let (re2, im2) = g.eval_f64(0.3 / 0.25, -0.4 / 0.25);
        assert!((re - re2).abs() < 1e-9 && (im - im2).abs() < 1e-9);
    }

    #[test]
    fn sum_matches_fold() {
        let terms: Vec<RationalFn> = (1..6)
            .map(|k| CycloMonomial::qfact(k).inv().to_ratfn().mul_mono(&CycloMonomial::signed_a_pow(1, k as i64)))
            .collect();
        let folded = terms.iter().fold(RationalFn::zero(), |acc, t| &acc + t);
        assert_eq!(RationalFn::sum(terms), folded);
    }

    #[test]
    fn mono_multiplication_cancels() {
        let q3 = CycloMonomial::qint(3);
        let f = q3.inv().to_ratfn();
        assert!(f.mul_mono(&q3).is_one());
        assert_eq!(f.inv().unwrap(), q3.to_ratfn());
    }
}
