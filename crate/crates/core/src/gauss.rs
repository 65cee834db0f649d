//! Incomplete Gauss sums, Fresnel integrals, Lehmer's disk and the mod-16
//! sign scan of `(1 - A_r^4) I_r(M)`.

use std::f64::consts::{PI, SQRT_2};
use std::fmt::Write as _;

use astro_float::{BigFloat, Consts};
use rayon::prelude::*;

use crate::error::{Result, SkeinError};
use crate::exactalg::complex::{bigfloat_to_f64, RM};
use crate::exactalg::BigComplex;
use crate::invariants::{invariant_sum, CyclotomicNum};

pub const DEFAULT_PRECISION: usize = 192;
pub const DEFAULT_THRESHOLD: f64 = 1e-10;

/// `ζ_N^{j} = e^{2πi j / N}`.
fn zeta(n: u64, j: u64, p: usize, cc: &mut Consts) -> BigComplex {
    BigComplex::exp_i_pi(2 * (j % n) as i64, n as i64, p, cc)
}

fn two_over_sqrt(n: u64, p: usize) -> BigFloat {
    BigFloat::from_u64(2, p).div(&BigFloat::from_u64(n, p).sqrt(p, RM), p, RM)
}

fn check_gauss_args(n: u64, m: u64) -> Result<()> {
    if n == 0 || m >= n {
        return Err(SkeinError::InvalidParams(format!("g_N(m) needs N >= 1 and 0 <= m < N, got N={n}, m={m}")));
    }
    Ok(())
}

/// `g_N(m) = (2/√N) Σ_{k=0}^{m} ζ_N^{k²}` by direct summation.
pub fn gauss_sum(n: u64, m: u64, precision_bits: usize) -> Result<BigComplex> {
    check_gauss_args(n, m)?;
    let p = precision_bits + 16;
    let mut cc = Consts::new().expect("constants cache");
    let mut acc = BigComplex::zero(p);
    for k in 0..=m {
        acc = acc.add(&zeta(n, (k * k) % n, p, &mut cc), p);
    }
    Ok(acc.scale(&two_over_sqrt(n, p), p))
}

/// The same sum accumulated from `k = m` down to `0`.
pub fn gauss_sum_reversed(n: u64, m: u64, precision_bits: usize) -> Result<BigComplex> {
    check_gauss_args(n, m)?;
    let p = precision_bits + 16;
    let mut cc = Consts::new().expect("constants cache");
    let mut acc = BigComplex::zero(p);
    for k in (0..=m).rev() {
        acc = acc.add(&zeta(n, (k * k) % n, p, &mut cc), p);
    }
    Ok(acc.scale(&two_over_sqrt(n, p), p))
}

/// `(1 - A_r^4) I_r(M)` from the Gauss-sum side:
/// `ζ_{16r}^{-(r+2)²} (ζ_{16r}^{9r²} - 2√r (2 g_{16r}(r-1) - g_{4r}((r-1)/2))) - 1`.
pub fn gauss_route(r: u64, precision_bits: usize) -> Result<BigComplex> {
    if r < 3 || r % 2 == 0 {
        return Err(SkeinError::InvalidParams(format!("r = {r} must be odd and at least 3")));
    }
    let p = precision_bits + 16;
    let mut cc = Consts::new().expect("constants cache");
    let lead = zeta(16 * r, (9 * r * r) % (16 * r), p, &mut cc);
    let g1 = gauss_sum(16 * r, r - 1, p)?;
    let g2 = gauss_sum(4 * r, (r - 1) / 2, p)?;
    let two = BigFloat::from_u64(2, p);
    let inner = g1.scale(&two, p).sub(&g2, p);
    let coef = two.mul(&BigFloat::from_u64(r, p).sqrt(p, RM), p, RM);
    let n = 16 * r;
    let rot = zeta(n, n - ((r + 2) * (r + 2)) % n, p, &mut cc);
    Ok(rot.mul(&lead.sub(&inner.scale(&coef, p), p), p).sub(&BigComplex::one(p), p))
}

/// `Σ_{k=1}^{r-1} (-1)^k ζ_{2r}^{2k²+2k}` summed numerically.
pub fn invariant_side(r: u64, precision_bits: usize) -> BigComplex {
    let p = precision_bits + 16;
    let mut cc = Consts::new().expect("constants cache");
    let mut acc = BigComplex::zero(p);
    for k in 1..r {
        let e = (2 * k * k + 2 * k) % (2 * r);
        let t = BigComplex::exp_i_pi(e as i64, r as i64, p, &mut cc);
        acc = if k % 2 == 0 { acc.add(&t, p) } else { acc.sub(&t, p) };
    }
    acc
}

/// `|LHS - RHS|` of the van Wamelen identity, with
/// `LHS = Σ_{k=1}^{r-1} (-1)^k ζ_{2r}^{2k²+2k} + 1`.
pub fn van_wamelen_residual(r: u64, precision_bits: usize) -> Result<f64> {
    let p = precision_bits + 16;
    let rhs = gauss_route(r, precision_bits)?.add(&BigComplex::one(p), p);
    let lhs = invariant_side(r, precision_bits).add(&BigComplex::one(p), p);
    Ok(lhs.dist_f64(&rhs, p))
}

/// Fresnel integrals `(C(u), S(u))` with kernel `πt²/2`, by power series.
pub fn fresnel(u: f64) -> (f64, f64) {
    let x = PI / 2.0 * u * u;
    let (mut c, mut s) = (0.0, 0.0);
    // term_n = (-1)^n x^{2n} / (2n)!  and  (-1)^n x^{2n+1} / (2n+1)!
    let mut even = 1.0;
    for n in 0..60 {
        let odd = even * x / (2 * n + 1) as f64;
        let tc = even / (4 * n + 1) as f64;
        let ts = odd / (4 * n + 3) as f64;
        c += tc;
        s += ts;
        if tc.abs() < 1e-18 && ts.abs() < 1e-18 {
            break;
        }
        even = -odd * x / (2 * n + 2) as f64;
    }
    (u * c, u * s)
}

/// Center `(C(√2), S(√2) - 1/(√2π))` of Lehmer's disk.
pub fn lehmer_center() -> (f64, f64) {
    let (c, s) = fresnel(SQRT_2);
    (c, s - 1.0 / (SQRT_2 * PI))
}

pub fn lehmer_radius(n: u64) -> f64 {
    1.0 / (SQRT_2 * PI) + 101.0 / (40.0 * (n as f64).sqrt())
}

#[derive(Clone, Debug, PartialEq)]
pub struct LehmerCircle {
    pub center: (f64, f64),
    pub radius: f64,
}

pub fn lehmer_circle(n: u64) -> LehmerCircle {
    LehmerCircle {
        center: lehmer_center(),
        radius: lehmer_radius(n),
    }
}

#[derive(Clone, Debug)]
pub struct LehmerRow {
    pub n: u64,
    pub m_range: (u64, u64),
    pub radius: f64,
    pub max_distance: f64,
    pub violations: Vec<u64>,
}

/// Every `g_N(m)` for `0 <= m <= m_max`, by running prefix sums.
pub fn gauss_path(n: u64, m_max: u64, precision_bits: usize) -> Result<Vec<(f64, f64)>> {
    check_gauss_args(n, m_max)?;
    let p = precision_bits + 16;
    let mut cc = Consts::new().expect("constants cache");
    let scale = two_over_sqrt(n, p);
    let mut acc = BigComplex::zero(p);
    let mut out = Vec::with_capacity(m_max as usize + 1);
    for k in 0..=m_max {
        acc = acc.add(&zeta(n, (k * k) % n, p, &mut cc), p);
        out.push(acc.scale(&scale, p).to_f64());
    }
    Ok(out)
}

/// Checks `|g_N(m) - center| <= radius` for `√(N/2) <= m <= N/4`.
pub fn lehmer_scan(ns: &[u64], precision_bits: usize) -> Result<Vec<LehmerRow>> {
    if let Some(n) = ns.iter().find(|&&n| n < 100) {
        return Err(SkeinError::InvalidParams(format!("Lehmer's bound needs N >= 100, got {n}")));
    }
    let (cx, cy) = lehmer_center();
    ns.par_iter()
        .map(|&n| {
            let lo = ((n as f64) / 2.0).sqrt().ceil() as u64;
            let hi = n / 4;
            let path = gauss_path(n, hi, precision_bits)?;
            let radius = lehmer_radius(n);
            let mut max_distance: f64 = 0.0;
            let mut violations = Vec::new();
            for m in lo..=hi {
                let (x, y) = path[m as usize];
                let d = ((x - cx).powi(2) + (y - cy).powi(2)).sqrt();
                max_distance = max_distance.max(d);
                if d > radius {
                    violations.push(m);
                }
            }
            Ok(LehmerRow {
                n,
                m_range: (lo, hi),
                radius,
                max_distance,
                violations,
            })
        })
        .collect()
}

/// `θ = arcsin(3R/√(h²+k²))` and `φ = arctan(k/h)` in degrees, with
/// `(h, k)` the Lehmer center and `R = 1/(√2π) + 0.0001`.
pub fn angle_constants() -> (f64, f64) {
    let (h, k) = lehmer_center();
    let r = 1.0 / (SQRT_2 * PI) + 0.0001;
    let theta = (3.0 * r / (h * h + k * k).sqrt()).asin().to_degrees();
    let phi = (k / h).atan().to_degrees();
    (theta, phi)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub r: u64,
    pub r_mod_16: u64,
    pub re: f64,
    pub im: f64,
    /// `Im((1 - A_r^4) I_r(M) + 1)`.
    pub im_shifted: f64,
    pub sign: i8,
    /// Distance between the exact and the Gauss-sum routes.
    pub route_gap: f64,
}

impl ScanRow {
    /// `|im_shifted|` fell below the zero threshold.
    pub fn flagged(&self) -> bool {
        self.sign == 0
    }
}

/// `(1 - A_r^4) I_r(M)` computed exactly in `Q(ζ_{2r})`.
pub fn exact_route(r: u32) -> Result<CyclotomicNum> {
    let i0 = invariant_sum(r, 0)?;
    let one = CyclotomicNum::one(r);
    Ok(one.sub(&CyclotomicNum::zeta_pow(r, 4)).mul(&i0))
}

pub fn scan_row(r: u64, precision_bits: usize, threshold: f64) -> Result<ScanRow> {
    let exact = exact_route(r as u32)?.to_complex(precision_bits);
    let gauss = gauss_route(r, precision_bits)?;
    let route_gap = exact.dist_f64(&gauss, precision_bits + 16);
    let (re, im) = exact.to_f64();
    let im_shifted = bigfloat_to_f64(&exact.add(&BigComplex::one(precision_bits), precision_bits).im);
    let sign = if im_shifted.abs() < threshold {
        0
    } else if im_shifted > 0.0 {
        1
    } else {
        -1
    };
    Ok(ScanRow {
        r,
        r_mod_16: r % 16,
        re,
        im,
        im_shifted,
        sign,
        route_gap,
    })
}

/// One row per odd `r` in `[r_min, r_max]`, ordered by `r`.
pub fn sign_scan(r_min: u64, r_max: u64, precision_bits: usize, threshold: f64) -> Result<Vec<ScanRow>> {
    if r_min > r_max || r_min % 2 == 0 || r_max % 2 == 0 || r_min < 3 {
        return Err(SkeinError::InvalidParams(format!("scan range [{r_min}, {r_max}] must have odd ends >= 3")));
    }
    let rs: Vec<u64> = (r_min..=r_max).step_by(2).collect();
    rs.par_iter().map(|&r| scan_row(r, precision_bits, threshold)).collect()
}

/// The least `r0` such that every row with `r >= r0` follows the pattern
/// `sign = +1` for `r ≡ 1 (16)` and `sign = -1` for `r ≡ 9 (16)`.
pub fn empirical_threshold(rows: &[ScanRow]) -> Option<u64> {
    let breaks = |row: &ScanRow| match row.r_mod_16 {
        1 => row.sign != 1,
        9 => row.sign != -1,
        _ => false,
    };
    let last_bad = rows.iter().filter(|row| breaks(row)).map(|row| row.r).max();
    match last_bad {
        None => rows.first().map(|row| row.r),
        Some(b) => rows.iter().map(|row| row.r).find(|&r| r > b),
    }
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("r,rmod16,re,im,im_shifted,sign\n");
    for row in rows {
        writeln!(
            out,
            "{},{},{:.15e},{:.15e},{:.15e},{}",
            row.r, row.r_mod_16, row.re, row.im, row.im_shifted, row.sign
        )
        .unwrap();
    }
    out
}

fn class_color(rmod16: u64) -> &'static str {
    match rmod16 {
        1 => "#d62728",
        3 => "#ff7f0e",
        5 => "#bcbd22",
        7 => "#2ca02c",
        9 => "#17becf",
        11 => "#1f77b4",
        13 => "#9467bd",
        _ => "#e377c2",
    }
}

/// A scatter plot of `(re, im)` colored by `r mod 16`, as SVG 1.1.
pub fn scan_svg(rows: &[ScanRow]) -> String {
    let (w, h, pad) = (640.0, 480.0, 50.0);
    let xs = rows.iter().map(|r| r.re);
    let ys = rows.iter().map(|r| r.im);
    let (x0, x1) = xs.fold((0.0f64, 0.0f64), |(a, b), v| (a.min(v), b.max(v)));
    let (y0, y1) = ys.fold((0.0f64, 0.0f64), |(a, b), v| (a.min(v), b.max(v)));
    let sx = |v: f64| pad + (v - x0) / (x1 - x0).max(1e-9) * (w - 2.0 * pad - 90.0);
    let sy = |v: f64| h - pad - (v - y0) / (y1 - y0).max(1e-9) * (h - 2.0 * pad);
    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#).unwrap();
    writeln!(s, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#, sx(x0), sy(0.0), sx(x1), sy(0.0)).unwrap();
    writeln!(s, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#, sx(0.0), sy(y0), sx(0.0), sy(y1)).unwrap();
    writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="12">Re</text>"#, sx(x1) - 20.0, sy(0.0) - 6.0).unwrap();
    writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="12">Im</text>"#, sx(0.0) + 6.0, sy(y1) + 12.0).unwrap();
    for row in rows {
        writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{}"><title>r={}</title></circle>"#,
            sx(row.re),
            sy(row.im),
            class_color(row.r_mod_16),
            row.r
        )
        .unwrap();
    }
    for (i, c) in (1..16).step_by(2).enumerate() {
        let y = pad + 18.0 * i as f64;
        writeln!(s, r#"<circle cx="{:.2}" cy="{y:.2}" r="4" fill="{}"/>"#, w - 80.0, class_color(c)).unwrap();
        writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="12">r ≡ {c} (16)</text>"#, w - 70.0, y + 4.0).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(z: &BigComplex, re: f64, im: f64, tol: f64) -> bool {
        let (a, b) = z.to_f64();
        (a - re).abs() < tol && (b - im).abs() < tol
    }

    #[test]
    fn small_gauss_sums() {
        assert!(close(&gauss_sum(4, 0, 128).unwrap(), 1.0, 0.0, 1e-30));
        for n in [16, 48, 160] {
            assert!(close(&gauss_sum(n, n - 1, 128).unwrap(), 2.0, 2.0, 1e-25), "N={n}");
        }
        let z = |j: f64| (2.0 * PI * j / 16.0).sin_cos();
        let expect = [0.0, 1.0, 4.0, 9.0].iter().fold((0.0, 0.0), |acc, j| {
            let (s, c) = z(*j);
            (acc.0 + c / 2.0, acc.1 + s / 2.0)
        });
        assert!(close(&gauss_sum(16, 3, 128).unwrap(), expect.0, expect.1, 1e-14));
        assert!(gauss_sum(8, 8, 64).is_err());
    }

    #[test]
    fn summation_order_stable() {
        let p = 128;
        let a = gauss_sum(97, 60, p).unwrap();
        let b = gauss_sum_reversed(97, 60, p).unwrap();
        assert!(a.dist_f64(&b, p) < 2f64.powi(-(p as i32) + 12));
    }

    #[test]
    fn van_wamelen_small() {
        assert!(van_wamelen_residual(3, 128).unwrap() < 1e-30);
        assert!(van_wamelen_residual(25, 128).unwrap() < 1e-30);
    }

    #[test]
    fn fresnel_and_disk() {
        let (h, k) = lehmer_center();
        assert!((h - 0.529).abs() < 1e-3 && (k - 0.489).abs() < 1e-3);
        assert!((lehmer_radius(100) - 0.4776).abs() < 1e-4);
        let (c1, s1) = fresnel(1.0);
        assert!((c1 - 0.779_893_400_376_822_8).abs() < 1e-13);
        assert!((s1 - 0.438_259_147_390_354_8).abs() < 1e-13);
    }

    #[test]
    fn angles() {
        let (t, p) = angle_constants();
        assert!((t - 69.7078).abs() < 5e-5, "{t}");
        assert!((p - 42.7495).abs() < 5e-5, "{p}");
    }

    #[test]
    fn scan_signs() {
        let rows = sign_scan(97, 105, 128, DEFAULT_THRESHOLD).unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[0].sign, 1);
        assert_eq!(rows[4].sign, -1);
        assert!(rows.iter().all(|r| r.route_gap < 1e-20));
        let csv = scan_csv(&rows);
        assert!(csv.starts_with("r,rmod16,re,im,im_shifted,sign\n97,1,"));
        assert!(scan_svg(&rows).contains("<svg"));
    }

    #[test]
    fn lehmer_rejects_small_n() {
        assert!(lehmer_scan(&[64], 128).is_err());
        let rows = lehmer_scan(&[100], 128).unwrap();
        assert!(rows[0].violations.is_empty());
    }
}
