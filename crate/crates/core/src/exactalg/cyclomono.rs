use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul};

use super::cyclotomic::cyclotomic;
use super::laurent::LaurentPoly;
use super::ratfn::RationalFn;

/// A signed product `± A^k ∏ Φ_n^{e_n}` with integer exponents `e_n`.
///
/// Quantum integers, their factorials, loop values and theta values all
/// have this shape, so products and quotients of them stay exact and cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloMonomial {
    pub sign: i8,
    pub apow: i64,
    pub exps: BTreeMap<u32, i32>,
}

impl CycloMonomial {
    pub fn one() -> Self {
        Self {
            sign: 1,
            apow: 0,
            exps: BTreeMap::new(),
        }
    }

    pub fn signed_a_pow(sign: i8, apow: i64) -> Self {
        Self {
            sign,
            apow,
            exps: BTreeMap::new(),
        }
    }

    pub fn phi(n: u32) -> Self {
        let mut exps = BTreeMap::new();
        exps.insert(n, 1);
        Self { sign: 1, apow: 0, exps }
    }

    /// `[n] = (A^{2n} - A^{-2n}) / (A^2 - A^{-2})
    ///      = A^{-2(n-1)} ∏_{d | 4n, d ∤ 4} Φ_d`.
    pub fn qint(n: u32) -> Self {
        assert!(n >= 1, "[0] = 0 is not a unit");
        let mut m = Self::signed_a_pow(1, -2 * (n as i64 - 1));
        let four_n = 4 * n;
        for d in 1..=four_n {
            if four_n % d == 0 && 4 % d != 0 {
                m.exps.insert(d, 1);
            }
        }
        m
    }

    /// `[n]! = ∏_{j <= n} [j]`.
    pub fn qfact(n: u32) -> Self {
        let mut m = Self::one();
        for j in 2..=n {
            m = &m * &Self::qint(j);
        }
        m
    }

    /// `Δ_n = (-1)^n [n + 1]`.
    pub fn delta(n: u32) -> Self {
        let mut m = Self::qint(n + 1);
        if n % 2 == 1 {
            m.sign = -m.sign;
        }
        m
    }

    pub fn neg(&self) -> Self {
        let mut m = self.clone();
        m.sign = -m.sign;
        m
    }

    pub fn inv(&self) -> Self {
        Self {
            sign: self.sign,
            apow: -self.apow,
            exps: self.exps.iter().map(|(n, e)| (*n, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i32) -> Self {
        Self {
            sign: if k % 2 == 0 { 1 } else { self.sign },
            apow: self.apow * k as i64,
            exps: self
                .exps
                .iter()
                .map(|(n, e)| (*n, e * k))
                .filter(|(_, e)| *e != 0)
                .collect(),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.exps.is_empty()
    }

    /// Numerator `±A^k ∏_{e>0} Φ_n^e` and denominator exponents `{n: -e}` for `e < 0`.
    pub fn split(&self) -> (LaurentPoly, BTreeMap<u32, u32>) {
        let mut num = LaurentPoly::monomial(self.sign as i64, self.apow);
        let mut den = BTreeMap::new();
        for (n, e) in &self.exps {
            if *e > 0 {
                let phi = cyclotomic(*n);
                for _ in 0..*e {
                    num = &num * &*phi;
                }
            } else {
                den.insert(*n, (-e) as u32);
            }
        }
        (num, den)
    }

    pub fn to_ratfn(&self) -> RationalFn {
        let (num, den) = self.split();
        RationalFn::from_parts_reduced(num, den)
    }

    /// Expanded Laurent polynomial; `None` if a denominator remains.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        let (num, den) = self.split();
        den.is_empty().then_some(num)
    }

    pub fn eval_f64(&self, re: f64, im: f64) -> (f64, f64) {
        self.to_ratfn().eval_f64(re, im)
    }
}

impl<'a> Mul<&'a CycloMonomial> for &'a CycloMonomial {
    type Output = CycloMonomial;
    fn mul(self, rhs: &CycloMonomial) -> CycloMonomial {
        let mut exps = self.exps.clone();
        for (n, e) in &rhs.exps {
            let v = exps.entry(*n).or_insert(0);
            *v += e;
            if *v == 0 {
                exps.remove(n);
            }
        }
        CycloMonomial {
            sign: self.sign * rhs.sign,
            apow: self.apow + rhs.apow,
            exps,
        }
    }
}

impl Mul for CycloMonomial {
    type Output = CycloMonomial;
    fn mul(self, rhs: CycloMonomial) -> CycloMonomial {
        &self * &rhs
    }
}

impl<'a> Div<&'a CycloMonomial> for &'a CycloMonomial {
    type Output = CycloMonomial;
    fn div(self, rhs: &CycloMonomial) -> CycloMonomial {
        self * &rhs.inv()
    }
}

impl Div for CycloMonomial {
    type Output = CycloMonomial;
    fn div(self, rhs: CycloMonomial) -> CycloMonomial {
        &self / &rhs
    }
}

impl fmt::Debug for CycloMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}A^{}", if self.sign < 0 { "-" } else { "" }, self.apow)?;
        for (n, e) in &self.exps {
            write!(f, "·Φ{n}^{e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qint_matches_quotient() {
        for n in 1..9u32 {
            let expect = LaurentPoly::from_terms((0..n as i64).map(|j| (2 * (n as i64 - 1) - 4 * j, 1i64)));
            assert_eq!(CycloMonomial::qint(n).to_laurent().unwrap(), expect);
        }
    }

    #[test]
    fn delta_one() {
        let d = CycloMonomial::delta(1).to_laurent().unwrap();
        assert_eq!(d, LaurentPoly::from_terms([(2, -1i64), (-2, -1)]));
    }

    #[test]
    fn inverse_cancels() {
        let m = CycloMonomial::qfact(5);
        assert_eq!(&m / &m, CycloMonomial::one());
    }
}
