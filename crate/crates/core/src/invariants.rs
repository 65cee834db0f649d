//! Exact arithmetic in `Q(ζ_{2r})` and the level-`r` invariants of the
//! quaternionic manifold with the skeins `(0,0,0)`, `(0,0,1)`, `(0,0,2)`.

use std::fmt;

use astro_float::{BigFloat, Consts};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, SkeinError};
use crate::exactalg::complex::{bigint_to_bigfloat, RM};
use crate::exactalg::{cyclotomic, BigComplex, LaurentPoly, RationalFn};
use crate::recoupling::delta;

type Dense = Vec<BigInt>;

fn trim(p: &mut Dense) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigInt], b: &[BigInt]) -> Dense {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Remainder modulo a monic polynomial.
fn rem_monic(mut p: Dense, m: &[BigInt]) -> Dense {
    let d = m.len() - 1;
    trim(&mut p);
    while p.len() > d {
        let k = p.len() - 1 - d;
        let c = p.pop().unwrap();
        for (i, mi) in m[..d].iter().enumerate() {
            p[k + i] -= &c * mi;
        }
        trim(&mut p);
    }
    p
}

/// Pseudo-division: `lc(b)^{deg a - deg b + 1} a = q b + rem`.
fn pseudo_divmod(a: &[BigInt], b: &[BigInt]) -> (Dense, Dense) {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r: Dense = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len().saturating_sub(db).max(1)];
    let steps = a.len() as i64 - db as i64 + 1;
    if steps <= 0 {
        return (Vec::new(), r);
    }
    for k in (0..a.len() - db).rev() {
        for c in q.iter_mut() {
            *c *= lc;
        }
        let t = if r.len() > k + db { r[k + db].clone() } else { BigInt::zero() };
        for c in r.iter_mut() {
            *c *= lc;
        }
        if !t.is_zero() {
            q[k] += &t;
            for (i, bi) in b.iter().enumerate() {
                r[k + i] -= &t * bi;
            }
        }
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

/// An element `Σ coeffs[k] ζ^k / den` of `Q(ζ_{2r})`, with `deg < φ(2r)`,
/// `den > 0` and `gcd(content, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNum {
    r: u32,
    coeffs: Dense,
    den: BigInt,
}

fn check_level(r: u32) -> Result<()> {
    if r < 3 || r % 2 == 0 {
        return Err(SkeinError::InvalidParams(format!("level r = {r} must be odd and at least 3")));
    }
    Ok(())
}

impl CyclotomicNum {
    fn modulus(r: u32) -> Dense {
        let (low, c) = cyclotomic(2 * r).to_dense();
        debug_assert_eq!(low, 0);
        c
    }

    fn build(r: u32, coeffs: Dense, den: BigInt) -> Self {
        let mut coeffs = rem_monic(coeffs, &Self::modulus(r));
        let mut den = den;
        if den.is_negative() {
            den = -den;
            coeffs.iter_mut().for_each(|c| *c = -&*c);
        }
        let g = content(&coeffs).gcd(&den);
        if coeffs.is_empty() {
            den = BigInt::one();
        } else if !g.is_one() {
            coeffs.iter_mut().for_each(|c| *c /= &g);
            den /= &g;
        }
        Self { r, coeffs, den }
    }

    pub fn zero(r: u32) -> Self {
        Self {
            r,
            coeffs: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn one(r: u32) -> Self {
        Self::from_int(r, 1)
    }

    pub fn from_int(r: u32, c: i64) -> Self {
        Self::build(r, vec![BigInt::from(c)], BigInt::one())
    }

    /// `ζ_{2r}^k`.
    pub fn zeta_pow(r: u32, k: i64) -> Self {
        let e = k.rem_euclid(2 * r as i64) as usize;
        let mut c = vec![BigInt::zero(); e + 1];
        c[e] = BigInt::one();
        Self::build(r, c, BigInt::one())
    }

    /// The image of a Laurent polynomial under `A -> ζ_{2r}`.
    pub fn from_laurent(r: u32, f: &LaurentPoly) -> Self {
        let n = 2 * r as i64;
        let mut c = vec![BigInt::zero(); n as usize];
        for (e, v) in f.terms() {
            c[e.rem_euclid(n) as usize] += v;
        }
        Self::build(r, c, BigInt::one())
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_level(&self, o: &Self) {
        assert_eq!(self.r, o.r, "mixing different cyclotomic fields");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_level(o);
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut c = vec![BigInt::zero(); n];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[i] += x * &o.den;
        }
        for (i, y) in o.coeffs.iter().enumerate() {
            c[i] += y * &self.den;
        }
        Self::build(self.r, c, &self.den * &o.den)
    }

    pub fn neg(&self) -> Self {
        Self {
            r: self.r,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_level(o);
        Self::build(self.r, poly_mul(&self.coeffs, &o.coeffs), &self.den * &o.den)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm over a
    /// primitive pseudo-remainder sequence.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(SkeinError::DivisionByZero);
        }
        let m = Self::modulus(self.r);
        let (mut r0, mut s0): (Dense, Dense) = (m, Vec::new());
        let (mut r1, mut s1): (Dense, Dense) = (self.coeffs.clone(), vec![BigInt::one()]);
        // Invariant: r_i ≡ s_i · coeffs (mod Φ_{2r}).
        while r1.len() > 1 {
            let (q, rem) = pseudo_divmod(&r0, &r1);
            let scale = r1.last().unwrap().pow((r0.len() - r1.len() + 1) as u32);
            let s0_scaled: Dense = s0.iter().map(|c| c * &scale).collect();
            let mut s2 = poly_sub(&s0_scaled, &poly_mul(&q, &s1));
            let mut r2 = rem;
            if r2.is_empty() {
                return Err(SkeinError::NotAUnit);
            }
            let g = content(&r2).gcd(&content(&s2));
            if !g.is_one() && !g.is_zero() {
                r2.iter_mut().for_each(|c| *c /= &g);
                s2.iter_mut().for_each(|c| *c /= &g);
            }
            s2 = rem_monic(s2, &Self::modulus(self.r));
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // s1 · coeffs ≡ r1[0], so self^{-1} = den · s1 / r1[0].
        let c = r1[0].clone();
        let num: Dense = s1.iter().map(|x| x * &self.den).collect();
        Ok(Self::build(self.r, num, c))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// The embedding `ζ -> e^{iπ/r}`.
    pub fn to_complex(&self, precision_bits: usize) -> BigComplex {
        let p = precision_bits + 32;
        let mut cc = Consts::new().expect("constants cache");
        let z = BigComplex::exp_i_pi(1, self.r as i64, p, &mut cc);
        let mut acc = BigComplex::zero(p);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&z, p);
            acc.re = acc.re.add(&bigint_to_bigfloat(c, p), p, RM);
        }
        let d: BigFloat = bigint_to_bigfloat(&self.den, p);
        let mut out = BigComplex::new(acc.re.div(&d, p, RM), acc.im.div(&d, p, RM));
        out.re.set_precision(precision_bits, RM).ok();
        out.im.set_precision(precision_bits, RM).ok();
        out
    }
}

impl fmt::Debug for CyclotomicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclotomicNum(r={}, {})", self.r, self)
    }
}

/// Coefficient vector in the power basis, over the common denominator.
impl fmt::Display for CyclotomicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", cs.join(", "))?;
        if !self.den.is_one() {
            write!(f, " / {}", self.den)?;
        }
        Ok(())
    }
}

/// Evaluates `f` at `A = ζ_{2r}`.
pub fn eval_at_root(f: &RationalFn, r: u32) -> Result<CyclotomicNum> {
    check_level(r)?;
    if f.denominator_cyclotomics().contains_key(&(2 * r)) {
        return Err(SkeinError::Pole(format!("denominator vanishes at the primitive {}th root of unity", 2 * r)));
    }
    let num = CyclotomicNum::from_laurent(r, f.numerator());
    if f.is_r_integral() && f.denominator_cyclotomics().is_empty() {
        return Ok(num);
    }
    num.div(&CyclotomicNum::from_laurent(r, &f.denominator()))
}

#[derive(Clone, Debug)]
pub struct QuantumContext {
    pub r: u32,
    /// `Δ_i` for `0 <= i <= (r-3)/2`.
    pub omega_coeffs: Vec<LaurentPoly>,
    pub omega_bracket: CyclotomicNum,
    pub eta_sq: CyclotomicNum,
    pub kappa6: CyclotomicNum,
}

pub fn quantum_context(r: u32) -> Result<QuantumContext> {
    check_level(r)?;
    let omega_coeffs: Vec<LaurentPoly> = (0..=(r - 3) / 2).map(delta).collect();
    let omega_bracket = omega_coeffs.iter().fold(CyclotomicNum::zero(r), |acc, d| {
        let v = CyclotomicNum::from_laurent(r, d);
        acc.add(&v.mul(&v))
    });
    let eta_sq = omega_bracket.inv()?;
    let ri = r as i64;
    let kappa6 = CyclotomicNum::zeta_pow(r, -6 - ri * (ri + 1) / 2);
    Ok(QuantumContext {
        r,
        omega_coeffs,
        omega_bracket,
        eta_sq,
        kappa6,
    })
}

/// How the half-twist coefficient `λ_α^{ii}` enters the channel sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelSign {
    /// `λ_α^{ii}` exactly as in the closed form.
    Literal,
    /// `(-1)^{α/2} λ_α^{ii}`: the opposite orientation of the crossing.
    Oriented,
}

/// The convention under which the identities hold.
pub const CHANNEL_SIGN: ChannelSign = ChannelSign::Oriented;

/// `(-A)^{i(i+2)} Δ_i λ_α^{ii}` as a Laurent polynomial, for even `α`.
fn channel_term(i: u32, alpha: u32, sign: ChannelSign) -> LaurentPoly {
    let (i, a) = (i as i64, alpha as i64);
    let twist_sign = if i % 2 == 0 { 1 } else { -1 };
    let lam_sign = if (i - a / 2) % 2 == 0 { 1 } else { -1 };
    let orient = match sign {
        ChannelSign::Oriented if (a / 2) % 2 == 1 => -1,
        _ => 1,
    };
    let e = i * (i + 2) + (2 * i * (i + 2) - a * (a + 2)) / 2;
    &delta(i as u32) * &LaurentPoly::monomial(twist_sign * lam_sign * orient, e)
}

/// `I_r(M, (0,0,c))` for `c ∈ {0, 1, 2}` under a given sign convention.
pub fn invariant_sum_with(r: u32, c: u32, sign: ChannelSign) -> Result<CyclotomicNum> {
    check_level(r)?;
    let top = (r - 3) / 2;
    let f = match c {
        0 => (0..=top).fold(LaurentPoly::zero(), |acc, i| &acc + &channel_term(i, 0, sign)),
        2 => (1..=top).fold(LaurentPoly::zero(), |acc, i| &acc + &channel_term(i, 2, sign)),
        1 => &channel_term(top, r - 3, sign) * &delta(r - 2),
        _ => return Err(SkeinError::InvalidParams(format!("skein (0,0,{c}) is not one of (0,0,0), (0,0,1), (0,0,2)"))),
    };
    Ok(CyclotomicNum::from_laurent(r, &f))
}

pub fn invariant_sum(r: u32, c: u32) -> Result<CyclotomicNum> {
    invariant_sum_with(r, c, CHANNEL_SIGN)
}

/// `Σ_{k=1}^{r-1} (-1)^k A^{2k^2+2k}`.
pub fn gauss_side(r: u32) -> CyclotomicNum {
    let f = LaurentPoly::from_terms((1..r as i64).map(|k| (2 * k * k + 2 * k, if k % 2 == 0 { 1i64 } else { -1 })));
    CyclotomicNum::from_laurent(r, &f)
}

/// `(-1)^{(r-1)/2} A^{-2} / (A^2 + 1)`.
pub fn closed_form_001(r: u32) -> Result<CyclotomicNum> {
    check_level(r)?;
    let sign = if ((r - 1) / 2) % 2 == 0 { 1 } else { -1 };
    let den = LaurentPoly::from_terms([(0, 1i64), (2, 1)]);
    eval_at_root(&RationalFn::new(LaurentPoly::monomial(sign, -2), den)?, r)
}

#[derive(Clone, Debug)]
pub struct PropReport {
    pub r: u32,
    /// `(1 - A^4) I_r(M) = Σ_{k=1}^{r-1} (-1)^k A^{2k^2+2k}`.
    pub gauss_identity: bool,
    /// `A^4 I_r(M,(0,0,2)) = I_r(M) - 1`.
    pub twist_identity: bool,
    pub closed_form_001: bool,
    pub nonzero_001: bool,
}

impl PropReport {
    pub fn passed(&self) -> bool {
        self.gauss_identity && self.twist_identity && self.closed_form_001 && self.nonzero_001
    }
}

pub fn prop_checks_with(r: u32, sign: ChannelSign) -> Result<PropReport> {
    let i0 = invariant_sum_with(r, 0, sign)?;
    let i1 = invariant_sum_with(r, 1, sign)?;
    let i2 = invariant_sum_with(r, 2, sign)?;
    let a4 = CyclotomicNum::zeta_pow(r, 4);
    let one = CyclotomicNum::one(r);
    Ok(PropReport {
        r,
        gauss_identity: one.sub(&a4).mul(&i0) == gauss_side(r),
        twist_identity: a4.mul(&i2) == i0.sub(&one),
        closed_form_001: i1 == closed_form_001(r)?,
        nonzero_001: !i1.is_zero(),
    })
}

pub fn prop_checks(r: u32) -> Result<PropReport> {
    prop_checks_with(r, CHANNEL_SIGN)
}
