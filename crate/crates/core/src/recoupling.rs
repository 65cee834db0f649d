//! Closed-form recoupling coefficients of Temperley-Lieb theory.
//!
//! Tetrahedral slot convention: `tet(a, b, c, d, e, f)` is the network whose
//! four trivalent vertices carry the triples `(a,d,e)`, `(b,c,e)`, `(a,b,f)`
//! and `(c,d,f)`. Opposite edge pairs are `{a,c}`, `{b,d}` and `{e,f}`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::exactalg::{CycloMonomial, LaurentPoly, RationalFn};

/// `[k]`, `[k]!` and `Δ_k` together.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumBasics {
    pub qint: LaurentPoly,
    pub qfact: RationalFn,
    pub delta: LaurentPoly,
}

pub fn quantum_basics(k: u32) -> QuantumBasics {
    QuantumBasics {
        qint: qint(k),
        qfact: CycloMonomial::qfact(k).to_ratfn(),
        delta: delta(k),
    }
}

/// `[k] = (A^{2k} - A^{-2k}) / (A^2 - A^{-2})`; `[0] = 0`.
pub fn qint(k: u32) -> LaurentPoly {
    if k == 0 {
        return LaurentPoly::zero();
    }
    LaurentPoly::from_terms((0..k as i64).map(|j| (2 * (k as i64 - 1) - 4 * j, 1i64)))
}

/// `Δ_n = (-1)^n [n + 1]`, the value of an `n`-labelled unknot.
pub fn delta(n: u32) -> LaurentPoly {
    let q = qint(n + 1);
    if n % 2 == 1 {
        -q
    } else {
        q
    }
}

pub fn delta_mono(n: u32) -> CycloMonomial {
    CycloMonomial::delta(n)
}

pub fn admissible(a: u32, b: u32, c: u32) -> bool {
    (a + b + c) % 2 == 0 && a.abs_diff(b) <= c && c <= a + b
}

/// Admissible at level `r`: additionally `a + b + c <= 2r - 4` and every label `<= r - 2`.
pub fn r_admissible(a: u32, b: u32, c: u32, r: u32) -> bool {
    admissible(a, b, c) && r >= 2 && a + b + c + 4 <= 2 * r && a.max(b).max(c) + 2 <= r
}

/// `θ(a, b, c)` as a cyclotomic monomial, `None` when inadmissible.
pub fn theta_mono(a: u32, b: u32, c: u32) -> Option<CycloMonomial> {
    if !admissible(a, b, c) {
        return None;
    }
    let i = (a + b - c) / 2;
    let j = (b + c - a) / 2;
    let k = (a + c - b) / 2;
    let f = CycloMonomial::qfact;
    let mut m = &(&(&f(i + j + k + 1) * &f(i)) * &f(j)) * &f(k);
    m = &m / &(&(&f(i + j) * &f(j + k)) * &f(i + k));
    if (i + j + k) % 2 == 1 {
        m = m.neg();
    }
    Some(m)
}

/// `θ(a, b, c)`; zero when inadmissible.
pub fn theta(a: u32, b: u32, c: u32) -> RationalFn {
    theta_mono(a, b, c).map_or_else(RationalFn::zero, |m| m.to_ratfn())
}

/// `λ_c^{ab} = (-1)^{(a+b-c)/2} A^{(a(a+2) + b(b+2) - c(c+2))/2}`.
pub fn lambda_mono(c: u32, a: u32, b: u32) -> Option<CycloMonomial> {
    if !admissible(a, b, c) {
        return None;
    }
    let (a, b, c) = (a as i64, b as i64, c as i64);
    let sign = if ((a + b - c) / 2) % 2 == 0 { 1 } else { -1 };
    Some(CycloMonomial::signed_a_pow(sign, (a * (a + 2) + b * (b + 2) - c * (c + 2)) / 2))
}

/// `λ_c^{ab}` as a signed monomial; zero when inadmissible.
pub fn lambda(c: u32, a: u32, b: u32) -> LaurentPoly {
    lambda_mono(c, a, b).map_or_else(LaurentPoly::zero, |m| m.to_laurent().unwrap())
}

/// The full-twist eigenvalue `(-A)^{a(a+2)}`.
pub fn twist(a: u32) -> LaurentPoly {
    let e = a as i64 * (a as i64 + 2);
    LaurentPoly::monomial(if e % 2 == 0 { 1 } else { -1 }, e)
}

/// `Δ_i / θ(a, b, i)`, zero when inadmissible.
pub fn fusion_coeff(a: u32, b: u32, i: u32) -> RationalFn {
    match theta_mono(a, b, i) {
        Some(t) => (&delta_mono(i) / &t).to_ratfn(),
        None => RationalFn::zero(),
    }
}

/// The four vertex triples of `tet(a,b,c,d,e,f)`.
pub fn tet_faces(l: [u32; 6]) -> [[u32; 3]; 4] {
    let [a, b, c, d, e, f] = l;
    [[a, d, e], [b, c, e], [a, b, f], [c, d, f]]
}

pub fn tet_admissible(l: [u32; 6]) -> bool {
    tet_faces(l).iter().all(|t| admissible(t[0], t[1], t[2]))
}

const FACE_SLOTS: [[usize; 3]; 4] = [[0, 3, 4], [1, 2, 4], [0, 1, 5], [2, 3, 5]];

fn edge_slot(i: usize, j: usize) -> usize {
    *FACE_SLOTS[i].iter().find(|s| FACE_SLOTS[j].contains(s)).unwrap()
}

/// The 24 slot permutations induced by the tetrahedral symmetry group.
pub fn tet_symmetries() -> &'static [[usize; 6]] {
    static SYMS: OnceLock<Vec<[usize; 6]>> = OnceLock::new();
    SYMS.get_or_init(|| {
        let mut out = Vec::new();
        let mut perm = [0usize, 1, 2, 3];
        permutations(&mut perm, 0, &mut |s| {
            let mut map = [0usize; 6];
            for i in 0..4 {
                for j in i + 1..4 {
                    map[edge_slot(i, j)] = edge_slot(s[i], s[j]);
                }
            }
            out.push(map);
        });
        out
    })
}

fn permutations(p: &mut [usize; 4], k: usize, f: &mut impl FnMut(&[usize; 4])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Applies a slot permutation: the label in slot `s` moves to slot `map[s]`.
pub fn permute_tet(l: [u32; 6], map: &[usize; 6]) -> [u32; 6] {
    let mut out = [0; 6];
    for s in 0..6 {
        out[map[s]] = l[s];
    }
    out
}

fn tet_cache() -> &'static Mutex<HashMap<[u32; 6], RationalFn>> {
    static CACHE: OnceLock<Mutex<HashMap<[u32; 6], RationalFn>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `tet(a, b, c, d, e, f)`; zero unless all four vertex triples are admissible.
///
/// Results are memoized under the lexicographically least symmetric image.
pub fn tet(a: u32, b: u32, c: u32, d: u32, e: u32, f: u32) -> RationalFn {
    let l = [a, b, c, d, e, f];
    if !tet_admissible(l) {
        return RationalFn::zero();
    }
    let key = tet_symmetries().iter().map(|m| permute_tet(l, m)).min().unwrap();
    if let Some(v) = tet_cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = tet_uncached(key);
    tet_cache().lock().unwrap().insert(key, v.clone());
    v
}

/// The single-sum closed form:
/// `tet = (I!/E!) Σ_{max a_i <= s <= min b_j} (-1)^s [s+1]! / (∏ [s-a_i]! ∏ [b_j-s]!)`
/// with `a_i` the vertex half-sums, `b_j` the half-sums over pairs of
/// opposite edges, `I! = ∏_{i,j} [b_j - a_i]!` and `E! = ∏ [label]!`.
pub fn tet_uncached(l: [u32; 6]) -> RationalFn {
    if !tet_admissible(l) {
        return RationalFn::zero();
    }
    let [a, b, c, d, e, f] = l;
    let ai = [(a + d + e) / 2, (b + c + e) / 2, (a + b + f) / 2, (c + d + f) / 2];
    let bj = [(b + d + e + f) / 2, (a + c + e + f) / 2, (a + b + c + d) / 2];
    let qf = CycloMonomial::qfact;
    let mut pref = CycloMonomial::one();
    for x in ai {
        for y in bj {
            pref = &pref * &qf(y - x);
        }
    }
    for x in l {
        pref = &pref / &qf(x);
    }
    let lo = *ai.iter().max().unwrap();
    let hi = *bj.iter().min().unwrap();
    let terms = (lo..=hi).map(|s| {
        let mut m = qf(s + 1);
        for x in ai {
            m = &m / &qf(s - x);
        }
        for y in bj {
            m = &m / &qf(y - s);
        }
        if s % 2 == 1 {
            m = m.neg();
        }
        m.to_ratfn()
    });
    RationalFn::sum(terms).mul_mono(&pref)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(t: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(t.iter().copied())
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(qint(1), LaurentPoly::one());
        assert_eq!(qint(3), lp(&[(4, 1), (0, 1), (-4, 1)]));
        assert_eq!(delta(1), lp(&[(2, -1), (-2, -1)]));
        let qb = quantum_basics(3);
        assert_eq!(qb.qfact, RationalFn::from_poly(&qint(2) * &qint(3)));
    }

    #[test]
    fn admissibility() {
        assert!(admissible(1, 1, 2));
        assert!(!admissible(1, 1, 1));
        assert!(r_admissible(2, 2, 2, 5));
        assert!(!r_admissible(2, 2, 4, 5));
    }

    #[test]
    fn theta_values() {
        assert!(theta(0, 0, 0).is_one());
        assert_eq!(theta(1, 1, 0), RationalFn::from_poly(delta(1)));
        assert_eq!(theta(1, 1, 2), RationalFn::from_poly(lp(&[(4, 1), (0, 1), (-4, 1)])));
        assert!(theta(1, 1, 1).is_zero());
    }

    #[test]
    fn theta_symmetric_and_loop() {
        for a in 0..7 {
            for b in 0..7 {
                for c in 0..7 {
                    let t = theta(a, b, c);
                    assert_eq!(t, theta(b, c, a));
                    assert_eq!(t, theta(b, a, c));
                }
            }
        }
        for a in 0..=12 {
            assert_eq!(theta(a, a, 0), RationalFn::from_poly(delta(a)));
        }
    }

    #[test]
    fn lambda_and_twist() {
        assert_eq!(twist(1), lp(&[(3, -1)]));
        assert_eq!(lambda(0, 1, 1), lp(&[(3, -1)]));
        assert_eq!(lambda(2, 1, 1), lp(&[(-1, 1)]));
        for (a, b, c) in [(1, 1, 0), (2, 1, 1), (3, 2, 3), (4, 2, 2)] {
            let prod = &lambda(c, a, b) * &lambda(c, b, a);
            let e = (a * (a + 2) + b * (b + 2)) as i64 - (c * (c + 2)) as i64;
            assert_eq!(prod, LaurentPoly::a_pow(e));
        }
    }

    #[test]
    fn fusion_coefficients() {
        assert_eq!(fusion_coeff(1, 1, 0), RationalFn::from_poly(delta(1)).inv().unwrap());
        assert!(fusion_coeff(1, 1, 1).is_zero());
        assert!(fusion_coeff(1, 1, 2).is_one());
    }

    #[test]
    fn tet_degenerate_cases() {
        assert!(tet(0, 0, 0, 0, 0, 0).is_one());
        // A zero edge forces its neighbours together and leaves a theta net.
        for (x, y, z) in [(1, 1, 2), (2, 1, 1), (2, 2, 2), (3, 1, 2)] {
            if admissible(x, y, z) {
                assert_eq!(tet(x, x, y, y, z, 0), theta(x, y, z), "{x} {y} {z}");
            }
        }
    }

    #[test]
    fn tet_symmetry_group() {
        assert_eq!(tet_symmetries().len(), 24);
        let mut seen = std::collections::HashSet::new();
        for m in tet_symmetries() {
            assert!(seen.insert(*m));
        }
        for l in [[1, 1, 1, 1, 2, 2], [2, 1, 1, 2, 1, 1], [2, 2, 2, 2, 2, 2], [3, 1, 2, 2, 1, 2]] {
            if !tet_admissible(l) {
                continue;
            }
            let v = tet_uncached(l);
            for m in tet_symmetries() {
                assert_eq!(tet_uncached(permute_tet(l, m)), v);
            }
        }
    }
}
