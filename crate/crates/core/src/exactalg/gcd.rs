//! Polynomial gcd over `Z`: heuristic evaluation/interpolation first,
//! primitive remainder sequences as the fallback.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;

type Dense = Vec<BigInt>;

fn trim(v: &mut Dense) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(v: &[BigInt]) -> Dense {
    let c = content(v);
    if c.is_zero() {
        return Vec::new();
    }
    let neg = v.last().unwrap().is_negative();
    v.iter()
        .map(|x| {
            let q = x / &c;
            if neg {
                -q
            } else {
                q
            }
        })
        .collect()
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Dense {
    let mut r: Dense = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        trim(&mut r);
    }
    r
}

fn prs_gcd(a: &[BigInt], b: &[BigInt]) -> Dense {
    let (mut a, mut b) = if a.len() >= b.len() {
        (primitive(a), primitive(b))
    } else {
        (primitive(b), primitive(a))
    };
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    a
}

fn eval_at(v: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in v.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn interpolate(mut g: BigInt, xi: &BigInt) -> Dense {
    let half = xi >> 1;
    let mut out = Vec::new();
    while !g.is_zero() {
        let mut d = g.mod_floor(xi);
        if d > half {
            d -= xi;
        }
        g = (g - &d) / xi;
        out.push(d);
    }
    out
}

fn divides(a: &[BigInt], g: &[BigInt]) -> bool {
    let pa = LaurentPoly::from_dense(0, a.to_vec());
    let pg = LaurentPoly::from_dense(0, g.to_vec());
    pa.div_exact(&pg).is_some()
}

fn heuristic_gcd(a: &[BigInt], b: &[BigInt]) -> Option<Dense> {
    let max_abs = |v: &[BigInt]| v.iter().map(|c| c.abs()).max().unwrap_or_default();
    let mut xi: BigInt = BigInt::from(2) * max_abs(a).min(max_abs(b)) + 29;
    let deg = a.len().max(b.len()) as u64;
    for _ in 0..6 {
        if xi.bits() * deg > 200_000 {
            return None;
        }
        let gamma = eval_at(a, &xi).gcd(&eval_at(b, &xi));
        let g = primitive(&interpolate(gamma, &xi));
        if !g.is_empty() && divides(a, &g) && divides(b, &g) {
            return Some(g);
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// Greatest common divisor of two polynomials up to units of `Z[A^±1]`.
///
/// The result has minimum exponent zero, positive leading coefficient and
/// content equal to the gcd of the input contents.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return normalize_unit(b);
    }
    if b.is_zero() {
        return normalize_unit(a);
    }
    let ca = a.content();
    let cb = b.content();
    let c = ca.gcd(&cb);
    if a.is_monomial() || b.is_monomial() {
        return LaurentPoly::constant(c);
    }
    let (_, da) = a.to_dense();
    let (_, db) = b.to_dense();
    let pa = primitive(&da);
    let pb = primitive(&db);
    let g = heuristic_gcd(&pa, &pb).unwrap_or_else(|| prs_gcd(&pa, &pb));
    let g = LaurentPoly::from_dense(0, g);
    if c.is_one() {
        g
    } else {
        g.scale(&c)
    }
}

fn normalize_unit(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return LaurentPoly::zero();
    }
    p.split_unit().2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(t.iter().copied())
    }

    #[test]
    fn common_linear_factor() {
        let f = p(&[(1, 1), (0, -1)]);
        let a = &f * &p(&[(2, 1), (0, 3)]);
        let b = &f * &p(&[(1, 5), (0, 7)]);
        assert_eq!(poly_gcd(&a, &b), f);
    }

    #[test]
    fn coprime_and_content() {
        let a = p(&[(2, 4), (0, 2)]);
        let b = p(&[(1, 6), (0, 6)]);
        assert_eq!(poly_gcd(&a, &b), p(&[(0, 2)]));
    }

    #[test]
    fn laurent_shift_ignored() {
        let f = p(&[(3, 2), (0, 1)]);
        let a = (&f * &f).shift(-9);
        let b = (&f * &p(&[(1, 1), (0, 1)])).shift(4);
        assert_eq!(poly_gcd(&a, &b), f);
    }

    #[test]
    fn prs_agrees_with_heuristic() {
        let f = p(&[(4, 3), (1, -2), (0, 5)]);
        let a = &f * &p(&[(3, 1), (0, -7)]);
        let b = &f * &p(&[(2, 11), (1, 1), (0, 1)]);
        let (_, da) = a.to_dense();
        let (_, db) = b.to_dense();
        assert_eq!(LaurentPoly::from_dense(0, prs_gcd(&da, &db)), f);
        assert_eq!(poly_gcd(&a, &b), f);
    }
}
