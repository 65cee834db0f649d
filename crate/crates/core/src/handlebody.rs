//! The trivalent basis `(a, b, c)` of the genus-2 handlebody skein module.
//!
//! The spine is two loops labelled `a` and `c` joined by an edge labelled
//! `b`; the vertex triples are `(a, a, b)` and `(b, c, c)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Result, SkeinError};
use crate::exactalg::{CycloMonomial, RationalFn};
use crate::recoupling::{delta_mono, theta_mono};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisTriple {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

/// The five spanning elements, in increasing order.
pub const GENERATORS: [BasisTriple; 5] = [
    BasisTriple { a: 0, b: 0, c: 0 },
    BasisTriple { a: 1, b: 0, c: 0 },
    BasisTriple { a: 0, b: 0, c: 1 },
    BasisTriple { a: 1, b: 0, c: 1 },
    BasisTriple { a: 0, b: 0, c: 2 },
];

impl BasisTriple {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a < 0 || b < 0 || c < 0 || b % 2 != 0 || b > 2 * a || b > 2 * c || a.max(c) > u32::MAX as i64 / 4 {
            return Err(SkeinError::InvalidTriple(a, b, c));
        }
        Ok(Self {
            a: a as u32,
            b: b as u32,
            c: c as u32,
        })
    }

    /// Unchecked construction for labels already known to be valid.
    pub const fn t(a: u32, b: u32, c: u32) -> Self {
        Self { a, b, c }
    }

    pub fn is_valid(a: i64, b: i64, c: i64) -> bool {
        Self::new(a, b, c).is_ok()
    }

    /// `(c, b, a)`: the 180° rotation exchanging the two handles.
    pub fn mirror(self) -> Self {
        Self {
            a: self.c,
            b: self.b,
            c: self.a,
        }
    }

    pub fn is_generator(self) -> bool {
        GENERATORS.contains(&self)
    }

    /// The sort key `(max(a, c), a, c, b)` of the well-founded order.
    pub fn order_key(self) -> (u32, u32, u32, u32) {
        (self.a.max(self.c), self.a, self.c, self.b)
    }

    /// Class in `H_1(M; Z_2) = Z_2 ⊕ Z_2`.
    pub fn h1_class(self) -> (u8, u8) {
        ((self.a % 2) as u8, (self.c % 2) as u8)
    }

    /// `<<a,b,c>> = θ(a,a,b) θ(b,c,c) / (Δ_a Δ_b Δ_c)` as a cyclotomic monomial.
    pub fn norm_mono(self) -> CycloMonomial {
        let t1 = theta_mono(self.a, self.a, self.b).expect("valid triple");
        let t2 = theta_mono(self.b, self.c, self.c).expect("valid triple");
        let d = &(&delta_mono(self.a) * &delta_mono(self.b)) * &delta_mono(self.c);
        &(&t1 * &t2) / &d
    }

    pub fn norm_sq(self) -> RationalFn {
        self.norm_mono().to_ratfn()
    }

    /// The reduction case for a non-generator, or `None` for generators.
    pub fn case(self) -> Option<u8> {
        let BasisTriple { a: x, b: y, c: z } = self;
        if self.is_generator() {
            None
        } else if y >= 2 {
            Some(1)
        } else if x >= 1 && z >= 1 && x != z {
            Some(2)
        } else if x >= 2 && z == 0 {
            Some(3)
        } else if x == 0 && z > 2 {
            Some(4)
        } else if x >= 2 && z == x {
            Some(5)
        } else {
            None
        }
    }
}

pub fn order_less(s: BasisTriple, t: BasisTriple) -> bool {
    s.order_key() < t.order_key()
}

impl Ord for BasisTriple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for BasisTriple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// A finitely supported combination of basis triples; keys iterate in the
/// well-founded order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SkeinVector {
    terms: BTreeMap<BasisTriple, RationalFn>,
}

impl SkeinVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(t: BasisTriple) -> Self {
        let mut v = Self::new();
        v.add_term(t, RationalFn::one());
        v
    }

    pub fn add_term(&mut self, t: BasisTriple, c: RationalFn) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(e) => {
                *e = &*e + &c;
                if e.is_zero() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    pub fn get(&self, t: BasisTriple) -> RationalFn {
        self.terms.get(&t).cloned().unwrap_or_else(RationalFn::zero)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&BasisTriple, &RationalFn)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<BasisTriple> {
        self.terms.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &RationalFn) -> Self {
        let mut out = Self::new();
        for (t, v) in &self.terms {
            out.add_term(*t, v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, v) in &other.terms {
            out.add_term(*t, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RationalFn::from_int(-1)))
    }

    /// Relabels every triple `(a,b,c) -> (c,b,a)`.
    pub fn mirror(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(t, v)| (t.mirror(), v.clone())).collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&RationalFn) -> RationalFn) -> Self {
        let mut out = Self::new();
        for (t, v) in &self.terms {
            out.add_term(*t, f(v));
        }
        out
    }

    /// Serializes as `{"terms":[{"a","b","c","coeff":{"num","den"}}]}` in increasing order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(t, v)| {
                let (num, den) = v.to_text_parts();
                json!({"a": t.a, "b": t.b, "c": t.c, "coeff": {"num": num, "den": den}})
            })
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| SkeinError::Parse(format!("skein vector JSON: {m}"));
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        let mut out = Self::new();
        for t in terms {
            let label = |k: &str| t.get(k).and_then(Value::as_i64).ok_or_else(|| bad(k));
            let triple = BasisTriple::new(label("a")?, label("b")?, label("c")?)?;
            let coeff = t.get("coeff").ok_or_else(|| bad("coeff"))?;
            let part = |k: &str| coeff.get(k).and_then(Value::as_str).ok_or_else(|| bad(k));
            out.add_term(triple, RationalFn::from_text_parts(part("num")?, part("den")?)?);
        }
        Ok(out)
    }
}

impl FromIterator<(BasisTriple, RationalFn)> for SkeinVector {
    fn from_iter<I: IntoIterator<Item = (BasisTriple, RationalFn)>>(iter: I) -> Self {
        let mut v = Self::new();
        for (t, c) in iter {
            v.add_term(t, c);
        }
        v
    }
}

/// `<v, w> = Σ_t bar(v_t) w_t <<t>>`; the basis is orthogonal.
pub fn inner_product(v: &SkeinVector, w: &SkeinVector) -> RationalFn {
    let terms = v.iter().filter_map(|(t, x)| {
        w.terms
            .get(t)
            .map(|y| (&x.bar() * y).mul_mono(&t.norm_mono()))
    });
    RationalFn::sum(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recoupling::qint;

    const T: fn(u32, u32, u32) -> BasisTriple = BasisTriple::t;

    #[test]
    fn validity() {
        assert!(BasisTriple::new(1, 2, 1).is_ok());
        assert!(BasisTriple::new(1, 1, 1).is_err());
        assert!(BasisTriple::new(0, 2, 3).is_err());
        assert!(BasisTriple::new(-1, 0, 0).is_err());
    }

    #[test]
    fn norms() {
        assert!(T(0, 0, 0).norm_sq().is_one());
        assert!(T(1, 0, 1).norm_sq().is_one());
        let q2 = RationalFn::from_poly(qint(2));
        let expect = &RationalFn::from_poly(qint(3)) / &(&q2 * &q2);
        assert_eq!(T(1, 2, 1).norm_sq(), expect);
    }

    #[test]
    fn grading() {
        assert_eq!(T(0, 0, 1).h1_class(), (0, 1));
        assert_eq!(T(1, 0, 1).h1_class(), (1, 1));
        assert_eq!(T(2, 2, 4).h1_class(), (0, 0));
    }

    #[test]
    fn ordering() {
        assert!(order_less(T(1, 0, 0), T(0, 0, 2)));
        assert!(order_less(T(1, 0, 2), T(2, 0, 1)));
        assert!(order_less(T(1, 0, 1), T(1, 2, 1)));
        let mut all = Vec::new();
        for a in 0..=6 {
            for c in 0..=6 {
                for b in (0..=2 * a.min(c)).step_by(2) {
                    all.push(T(a, b, c));
                }
            }
        }
        for &s in &all {
            for &t in &all {
                let n = [order_less(s, t), order_less(t, s), s == t].iter().filter(|x| **x).count();
                assert_eq!(n, 1);
            }
        }
    }

    #[test]
    fn inner_products() {
        let e = SkeinVector::basis(T(0, 0, 0));
        assert!(inner_product(&e, &e).is_one());
        assert!(inner_product(&SkeinVector::basis(T(1, 0, 1)), &SkeinVector::basis(T(0, 0, 2))).is_zero());
        let v = SkeinVector::basis(T(1, 0, 1)).scale(&RationalFn::monomial(1, 1));
        assert_eq!(inner_product(&v, &SkeinVector::basis(T(1, 0, 1))), RationalFn::monomial(1, -1));
    }

    #[test]
    fn json_round_trip() {
        let mut v = SkeinVector::new();
        v.add_term(T(2, 2, 1), RationalFn::new("1*A^3".parse().unwrap(), "1*A^0 + 1*A^2".parse().unwrap()).unwrap());
        v.add_term(T(0, 0, 1), RationalFn::from_int(-2));
        let j = v.to_json();
        assert_eq!(j["terms"][0]["c"], 1);
        assert_eq!(SkeinVector::from_json(&j).unwrap(), v);
    }
}
