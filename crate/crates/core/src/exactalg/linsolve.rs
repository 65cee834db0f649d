//! Exact linear systems over `Q(A)` by fraction-free (Bareiss) elimination.

use std::collections::BTreeMap;

use super::cyclotomic::{cyclotomic_product, split_cyclotomic};
use super::gcd::poly_gcd;
use super::laurent::LaurentPoly;
use super::ratfn::RationalFn;
use crate::error::{Result, SkeinError};

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub x: Vec<RationalFn>,
    pub det: RationalFn,
}

/// Least common multiple of the denominators in a row, as a polynomial.
fn row_scale(row: &[&RationalFn]) -> LaurentPoly {
    let mut cyc: BTreeMap<u32, u32> = BTreeMap::new();
    let mut rest = LaurentPoly::one();
    for f in row {
        for (n, e) in f.denominator_cyclotomics() {
            let v = cyc.entry(*n).or_insert(0);
            *v = (*v).max(*e);
        }
        let r = f.denominator_rest();
        if !r.is_one() {
            let g = poly_gcd(&rest, r);
            rest = &rest * &r.div_exact(&g).unwrap();
        }
    }
    &cyclotomic_product(&cyc) * &rest
}

fn to_poly(f: &RationalFn, scale: &LaurentPoly) -> LaurentPoly {
    let v = f * &RationalFn::from_poly(scale.clone());
    v.as_laurent().cloned().expect("row scale clears denominators")
}

/// Fraction-free elimination of an `n x m` polynomial matrix (`m >= n`).
/// Pivots on the first nonzero entry at or below the diagonal. Returns the
/// reduced matrix and the sign of the row permutation, or `None` if singular.
fn bareiss(mut a: Vec<Vec<LaurentPoly>>) -> Option<(Vec<Vec<LaurentPoly>>, i8)> {
    let n = a.len();
    let m = a.first().map_or(0, |r| r.len());
    let mut sign = 1i8;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        let piv = (k..n).find(|&r| !a[r][k].is_zero())?;
        if piv != k {
            a.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..m {
                let t = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = LaurentPoly::zero();
        }
        prev = a[k][k].clone();
    }
    Some((a, sign))
}

fn check_square(m: &[Vec<RationalFn>]) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(SkeinError::Dimension(format!("matrix is not square ({n} rows)")));
    }
    Ok(n)
}

/// Determinant of a square matrix over `Q(A)`.
pub fn determinant(m: &[Vec<RationalFn>]) -> Result<RationalFn> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(RationalFn::one());
    }
    let mut scale_prod = LaurentPoly::one();
    let mut rows = Vec::with_capacity(n);
    for r in m {
        let s = row_scale(&r.iter().collect::<Vec<_>>());
        rows.push(r.iter().map(|f| to_poly(f, &s)).collect());
        scale_prod = &scale_prod * &s;
    }
    match bareiss(rows) {
        None => Ok(RationalFn::zero()),
        Some((u, sign)) => {
            let d = u[n - 1][n - 1].clone();
            let d = if sign < 0 { -d } else { d };
            RationalFn::new(d, scale_prod)
        }
    }
}

/// Solves `M x = b` exactly and returns `x` together with `det(M)`.
///
/// Each row of `[M | b]` is scaled by the lcm of its denominators, the
/// polynomial system is reduced by Bareiss elimination, and fraction-free
/// back substitution yields `y = det · x` with polynomial entries.
pub fn solve_linear_system(m: &[Vec<RationalFn>], b: &[RationalFn]) -> Result<Solution> {
    let n = check_square(m)?;
    if b.len() != n {
        return Err(SkeinError::Dimension(format!("rhs has length {}, expected {n}", b.len())));
    }
    if n == 0 {
        return Ok(Solution {
            x: Vec::new(),
            det: RationalFn::one(),
        });
    }
    let mut scale_prod = LaurentPoly::one();
    let mut rows = Vec::with_capacity(n);
    for (r, bi) in m.iter().zip(b) {
        let mut refs: Vec<&RationalFn> = r.iter().collect();
        refs.push(bi);
        let s = row_scale(&refs);
        rows.push(refs.iter().map(|f| to_poly(f, &s)).collect::<Vec<_>>());
        scale_prod = &scale_prod * &s;
    }
    let Some((u, sign)) = bareiss(rows) else {
        return Err(SkeinError::Singular(format!("{n}x{n} system has zero determinant")));
    };
    let d = u[n - 1][n - 1].clone();
    let mut y = vec![LaurentPoly::zero(); n];
    for i in (0..n).rev() {
        let mut acc = &d * &u[i][n];
        for j in i + 1..n {
            acc -= &(&u[i][j] * &y[j]);
        }
        y[i] = acc.div_exact(&u[i][i]).expect("fraction-free back substitution is exact");
    }
    let (dsign, k, cyc, rest) = split_cyclotomic(&d);
    let x = y
        .into_iter()
        .map(|yi| {
            let mut num = yi.shift(-k);
            if dsign < 0 {
                num = -num;
            }
            RationalFn::from_split_denominator(num, cyc.clone(), rest.clone())
        })
        .collect();
    let det_poly = if sign < 0 { -d } else { d };
    let det = RationalFn::new(det_poly, scale_prod)?;
    Ok(Solution { x, det })
}

/// Returns `M x - b`, for residual checks.
pub fn residual(m: &[Vec<RationalFn>], x: &[RationalFn], b: &[RationalFn]) -> Vec<RationalFn> {
    m.iter()
        .zip(b)
        .map(|(row, bi)| {
            let terms = row.iter().zip(x).map(|(a, xi)| a * xi).chain(std::iter::once(-bi));
            RationalFn::sum(terms)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(k: i64) -> RationalFn {
        RationalFn::monomial(1, k)
    }

    #[test]
    fn identity_system() {
        let id = vec![vec![RationalFn::one(), RationalFn::zero()], vec![RationalFn::zero(), RationalFn::one()]];
        let b = vec![a(3), RationalFn::from_int(-2)];
        let s = solve_linear_system(&id, &b).unwrap();
        assert_eq!(s.x, b);
        assert!(s.det.is_one());
    }

    #[test]
    fn upper_triangular() {
        let m = vec![vec![a(1), RationalFn::one()], vec![RationalFn::zero(), a(1)]];
        let b = vec![RationalFn::one(), a(1)];
        let s = solve_linear_system(&m, &b).unwrap();
        assert_eq!(s.x, vec![RationalFn::zero(), RationalFn::one()]);
        assert_eq!(s.det, a(2));
    }

    #[test]
    fn needs_pivot_swap_and_fractions() {
        let half = RationalFn::new(LaurentPoly::one(), LaurentPoly::from_terms([(1, 1i64), (0, 1)])).unwrap();
        let m = vec![vec![RationalFn::zero(), half.clone()], vec![a(2), RationalFn::from_int(3)]];
        let b = vec![RationalFn::one(), a(-1)];
        let s = solve_linear_system(&m, &b).unwrap();
        assert!(residual(&m, &s.x, &b).iter().all(|r| r.is_zero()));
        assert_eq!(s.det, -(&half * &a(2)));
        assert_eq!(determinant(&m).unwrap(), s.det);
    }

    #[test]
    fn singular_reported() {
        let m = vec![vec![a(1), a(2)], vec![a(0), a(1)]];
        assert!(matches!(
            solve_linear_system(&m, &[RationalFn::one(), RationalFn::one()]),
            Err(SkeinError::Singular(_))
        ));
        assert!(determinant(&m).unwrap().is_zero());
    }
}
