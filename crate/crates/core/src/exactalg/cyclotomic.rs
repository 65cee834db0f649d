//! Cyclotomic polynomials, unit detection in the localized ring
//! `R = Z[A^±1][(A^n - 1)^-1]`, and cyclotomic factor extraction.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::laurent::LaurentPoly;
use crate::error::{Result, SkeinError};

fn phi_table() -> &'static RwLock<Vec<Option<Arc<LaurentPoly>>>> {
    static TABLE: OnceLock<RwLock<Vec<Option<Arc<LaurentPoly>>>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(Vec::new()))
}

/// The `n`-th cyclotomic polynomial `Φ_n(A)`, via
/// `Φ_n = (A^n - 1) / ∏_{d | n, d < n} Φ_d`.
///
/// Values are cached in a process-wide table that only ever grows; the
/// cache is not observable.
pub fn cyclotomic(n: u32) -> Arc<LaurentPoly> {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(Some(p)) = phi_table().read().unwrap().get(n as usize) {
        return p.clone();
    }
    let mut prod = LaurentPoly::one();
    for d in 1..n {
        if n % d == 0 {
            prod = &prod * &*cyclotomic(d);
        }
    }
    let an1 = LaurentPoly::from_terms([(n as i64, 1i64), (0, -1)]);
    let phi = Arc::new(an1.div_exact(&prod).expect("divide-out recurrence is exact"));
    let mut table = phi_table().write().unwrap();
    if table.len() <= n as usize {
        table.resize(n as usize + 1, None);
    }
    table[n as usize] = Some(phi.clone());
    phi
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A prime `p ≡ 1 (mod n)` together with a primitive `n`-th root of unity
/// in `F_p`. If `Φ_n` divides `f` over `Z` then `f(ω) ≡ 0 (mod p)`, so a
/// nonzero residue proves non-divisibility.
#[derive(Clone, Copy, Debug)]
struct ModRoot {
    p: u64,
    omega: u64,
}

fn mod_root(n: u32) -> ModRoot {
    static CACHE: OnceLock<RwLock<BTreeMap<u32, ModRoot>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(BTreeMap::new()));
    if let Some(r) = cache.read().unwrap().get(&n) {
        return *r;
    }
    let n64 = n as u64;
    let mut k = (1u64 << 61) / n64;
    let p = loop {
        let cand = k * n64 + 1;
        if is_prime_u64(cand) {
            break cand;
        }
        k += 1;
    };
    let qs = prime_factors(n64);
    let mut g = 2u64;
    let omega = loop {
        let w = pow_mod(g, (p - 1) / n64, p);
        if qs.iter().all(|q| pow_mod(w, n64 / q, p) != 1) {
            break w;
        }
        g += 1;
    };
    let root = ModRoot { p, omega };
    cache.write().unwrap().insert(n, root);
    root
}

fn residue(c: &BigInt, p: u64) -> u64 {
    if let Some(v) = c.to_i64() {
        return v.rem_euclid(p as i64) as u64;
    }
    let pb = BigInt::from(p);
    let r = ((c % &pb) + &pb) % &pb;
    r.to_u64().unwrap()
}

/// Fast necessary test for `Φ_n | f`; `false` is a proof of non-divisibility.
pub fn may_divide(f: &LaurentPoly, n: u32) -> bool {
    if f.is_zero() {
        return true;
    }
    let ModRoot { p, omega } = mod_root(n);
    let low = f.min_exp().unwrap();
    let mut acc = 0u64;
    let mut power = 1u64;
    let mut last = low;
    // Sum c_e * ω^(e - low) walking the sparse terms upward.
    for (e, c) in f.terms() {
        power = mul_mod(power, pow_mod(omega, (e - last) as u64, p), p);
        last = *e;
        acc = (acc + mul_mod(residue(c, p), power, p)) % p;
    }
    acc == 0
}

/// Divides out `Φ_n` as often as possible, returning the multiplicity
/// removed (at most `limit`) and the cofactor.
pub fn divide_out(f: &LaurentPoly, n: u32, limit: u32) -> (u32, LaurentPoly) {
    let mut cur = f.clone();
    let mut count = 0;
    if f.is_zero() {
        return (0, cur);
    }
    let phi = cyclotomic(n);
    while count < limit && cur.span() >= phi.span() && may_divide(&cur, n) {
        match cur.div_exact(&phi) {
            Some(q) => {
                cur = q;
                count += 1;
            }
            None => break,
        }
    }
    (count, cur)
}

/// Upper bound on `n` with `φ(n) <= s`, from
/// `φ(n) > n / (e^γ ln ln n + 3 / ln ln n)` for `n >= 3`.
pub fn phi_inverse_bound(s: u64) -> u64 {
    if s < 2 {
        return 6;
    }
    let g = |n: f64| {
        let ll = n.ln().ln().max(1.0);
        1.781_072_418 * ll + 3.0 / ll
    };
    let mut n = (s as f64) * 2.0 + 30.0;
    for _ in 0..50 {
        let next = (s as f64) * g(n) + 30.0;
        if (next - n).abs() < 1.0 {
            break;
        }
        n = next;
    }
    (n * 1.05) as u64 + 30
}

fn totients_upto(limit: usize) -> Vec<u32> {
    let mut phi: Vec<u32> = (0..=limit as u32).collect();
    for i in 2..=limit {
        if phi[i] == i as u32 {
            let mut j = i;
            while j <= limit {
                phi[j] -= phi[j] / i as u32;
                j += i;
            }
        }
    }
    phi
}

/// Certificate that a Laurent polynomial is a unit of `R`:
/// `f = sign * A^monomial_power * ∏ Φ_n` over `cyclotomic_indices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCertificate {
    pub sign: i8,
    pub monomial_power: i64,
    /// Sorted multiset of cyclotomic indices.
    pub cyclotomic_indices: Vec<u32>,
}

impl UnitCertificate {
    pub fn reconstruct(&self) -> LaurentPoly {
        let mut p = LaurentPoly::monomial(self.sign as i64, self.monomial_power);
        for n in &self.cyclotomic_indices {
            p = &p * &*cyclotomic(*n);
        }
        p
    }

    pub fn factors(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for n in &self.cyclotomic_indices {
            *m.entry(*n).or_insert(0) += 1;
        }
        m
    }
}

/// The documented default trial-division limit: `2 * span^2 + 2`.
pub fn default_n_max(f: &LaurentPoly) -> u64 {
    let s = f.span() as u64;
    2 * s * s + 2
}

/// Decides whether `f` is a unit in `R`, with the default `N_max`.
#[allow(non_snake_case)]
pub fn is_unit_in_R(f: &LaurentPoly) -> Result<Option<UnitCertificate>> {
    is_unit_in_r_with_bound(f, default_n_max(f))
}

/// Decides whether `f` is a unit in `R` by stripping `±A^k` and trial
/// dividing by `Φ_n` for `n = 1..=n_max`. Indices whose degree `φ(n)`
/// already exceeds the remaining span are skipped since they cannot divide.
pub fn is_unit_in_r_with_bound(f: &LaurentPoly, n_max: u64) -> Result<Option<UnitCertificate>> {
    if f.is_zero() {
        return Err(SkeinError::DivisionByZero);
    }
    let (sign, k, mut rest) = f.split_unit();
    let mut indices = Vec::new();
    let limit = n_max.min(phi_inverse_bound(rest.span() as u64)) as usize;
    let phis = totients_upto(limit.max(1));
    for n in 1..=limit {
        if rest.is_monomial() {
            break;
        }
        if phis[n] as i64 > rest.span() {
            continue;
        }
        let (m, q) = divide_out(&rest, n as u32, u32::MAX);
        for _ in 0..m {
            indices.push(n as u32);
        }
        rest = q;
    }
    if !rest.is_monomial() {
        return Ok(None);
    }
    // Cofactor is now c * A^j with j = 0 because every Φ_n has nonzero constant term.
    let (e, c) = &rest.terms()[0];
    if !c.abs().is_one() {
        return Ok(None);
    }
    let sign = if c.is_negative() { -sign } else { sign };
    Ok(Some(UnitCertificate {
        sign,
        monomial_power: k + e,
        cyclotomic_indices: indices,
    }))
}

/// Splits a nonzero polynomial as `sign * A^k * ∏ Φ_n^{e_n} * rest`, where
/// `rest` has no cyclotomic factor, minimum exponent zero and positive
/// leading coefficient.
pub fn split_cyclotomic(f: &LaurentPoly) -> (i8, i64, BTreeMap<u32, u32>, LaurentPoly) {
    let (sign, k, mut rest) = f.split_unit();
    let mut cyc = BTreeMap::new();
    if rest.is_monomial() {
        return (sign, k, cyc, rest);
    }
    let limit = phi_inverse_bound(rest.span() as u64) as usize;
    let phis = totients_upto(limit);
    for n in 1..=limit {
        if rest.is_monomial() {
            break;
        }
        if phis[n] as i64 > rest.span() {
            continue;
        }
        let (m, q) = divide_out(&rest, n as u32, u32::MAX);
        if m > 0 {
            cyc.insert(n as u32, m);
            rest = q;
        }
    }
    (sign, k, cyc, rest)
}

/// `∏ Φ_n^{e_n}` expanded.
pub fn cyclotomic_product(factors: &BTreeMap<u32, u32>) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for (n, e) in factors {
        let phi = cyclotomic(*n);
        for _ in 0..*e {
            p = &p * &*phi;
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).to_string(), "-1*A^0 + 1*A^1");
        assert_eq!(cyclotomic(2).to_string(), "1*A^0 + 1*A^1");
        assert_eq!(*cyclotomic(12), LaurentPoly::from_terms([(4, 1i64), (2, -1), (0, 1)]));
        assert_eq!(cyclotomic(105).span(), euler_phi(105) as i64);
        assert!(cyclotomic(105).terms().iter().any(|(_, c)| c == &BigInt::from(-2)));
    }

    #[test]
    fn unit_detection() {
        let cert = is_unit_in_R(&LaurentPoly::a_pow(5)).unwrap().unwrap();
        assert_eq!((cert.sign, cert.monomial_power), (1, 5));
        assert!(cert.cyclotomic_indices.is_empty());

        let a4m1 = LaurentPoly::from_terms([(4, 1i64), (0, -1)]);
        let cert = is_unit_in_R(&a4m1).unwrap().unwrap();
        assert_eq!(cert.cyclotomic_indices, vec![1, 2, 4]);
        assert_eq!(cert.reconstruct(), a4m1);

        let c1 = LaurentPoly::from_terms([(2, 1i64), (-2, -1)]);
        let cert = is_unit_in_R(&c1).unwrap().unwrap();
        assert_eq!(cert.reconstruct(), c1);

        let not_unit = LaurentPoly::from_terms([(1, 1i64), (0, 2)]);
        assert!(is_unit_in_R(&not_unit).unwrap().is_none());
        assert!(is_unit_in_R(&LaurentPoly::constant(2)).unwrap().is_none());
        assert!(is_unit_in_R(&LaurentPoly::zero()).is_err());
    }

    #[test]
    fn negative_unit_sign() {
        let f = -(&*cyclotomic(1) * &LaurentPoly::a_pow(-3));
        let cert = is_unit_in_R(&f).unwrap().unwrap();
        assert_eq!(cert.reconstruct(), f);
    }

    #[test]
    fn modular_screen_never_rejects_a_factor() {
        for n in 1..60u32 {
            let f = &*cyclotomic(n) * &LaurentPoly::from_terms([(3, 7i64), (0, -5)]);
            assert!(may_divide(&f, n));
        }
    }

    #[test]
    fn split_recovers_factors() {
        let g = LaurentPoly::from_terms([(2, 3i64), (0, 1)]);
        let f = &(&*cyclotomic(6) * &*cyclotomic(6)) * &(&g * &LaurentPoly::a_pow(-4));
        let (sign, k, cyc, rest) = split_cyclotomic(&f);
        assert_eq!((sign, k), (1, -4));
        assert_eq!(cyc.get(&6), Some(&2));
        assert_eq!(rest, g);
    }

    #[test]
    fn phi_bound_is_sound() {
        let phis = totients_upto(5000);
        for s in [1u64, 2, 4, 10, 40, 100] {
            let b = phi_inverse_bound(s);
            for n in (b as usize + 1)..5000 {
                assert!(phis[n] as u64 > s, "phi({n}) <= {s} beyond bound {b}");
            }
        }
    }
}
