//! Brute-force Temperley-Lieb oracle.
//!
//! Morphisms `m -> n` are linear combinations of crossingless matchings of
//! `m + n` boundary points: points `0..m` run left to right along the
//! bottom, points `m..m+n` left to right along the top. Stacking diagrams
//! and removing each closed loop with the factor `δ = -A^2 - A^-2`
//! evaluates every closed network built from Jones-Wenzl idempotents,
//! independently of the closed forms in [`crate::recoupling`].

use std::collections::HashMap;

use crate::error::{Result, SkeinError};
use crate::exactalg::{LaurentPoly, RationalFn};
use crate::recoupling::admissible;

/// A crossingless perfect matching; `partner[p]` is the point joined to `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanarMatching {
    pub src: usize,
    pub tgt: usize,
    pub partner: Vec<u8>,
}

impl PlanarMatching {
    pub fn identity(n: usize) -> Self {
        let mut partner = vec![0u8; 2 * n];
        for i in 0..n {
            partner[i] = (n + i) as u8;
            partner[n + i] = i as u8;
        }
        Self { src: n, tgt: n, partner }
    }

    /// Boundary points in cyclic order: bottom left to right, then top right to left.
    fn cyclic_order(&self) -> Vec<usize> {
        (0..self.src).chain((self.src..self.src + self.tgt).rev()).collect()
    }

    /// Checks that the pairing is an involution without fixed points and
    /// that no two arcs cross.
    pub fn is_planar(&self) -> bool {
        let n = self.partner.len();
        if n != self.src + self.tgt {
            return false;
        }
        for p in 0..n {
            let q = self.partner[p] as usize;
            if q >= n || q == p || self.partner[q] as usize != p {
                return false;
            }
        }
        let order = self.cyclic_order();
        let mut pos = vec![0usize; n];
        for (i, p) in order.iter().enumerate() {
            pos[*p] = i;
        }
        let mut stack = Vec::new();
        for p in order {
            let q = self.partner[p] as usize;
            if pos[q] > pos[p] {
                stack.push(p);
            } else if stack.pop() != Some(q) {
                return false;
            }
        }
        true
    }

    pub fn flip(&self) -> Self {
        let (m, n) = (self.src, self.tgt);
        let to_new = |p: usize| if p < m { n + p } else { p - m };
        let mut partner = vec![0u8; m + n];
        for p in 0..m + n {
            partner[to_new(p)] = to_new(self.partner[p] as usize) as u8;
        }
        Self { src: n, tgt: m, partner }
    }
}

/// All crossingless matchings from `m` bottom points to `n` top points.
pub fn all_matchings(m: usize, n: usize) -> Vec<PlanarMatching> {
    let total = m + n;
    if total % 2 == 1 {
        return Vec::new();
    }
    let order: Vec<usize> = (0..m).chain((m..m + n).rev()).collect();
    let mut out = Vec::new();
    let mut partner = vec![u8::MAX; total];
    fn rec(order: &[usize], partner: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        let Some(first) = order.first() else {
            out.push(partner.clone());
            return;
        };
        // `first` pairs with an element at odd offset so both sides have even size.
        for k in (1..order.len()).step_by(2) {
            let other = order[k];
            partner[*first] = other as u8;
            partner[other] = *first as u8;
            let inner = order[1..k].to_vec();
            let outer = order[k + 1..].to_vec();
            let mut inner_results = Vec::new();
            rec(&inner, partner, &mut inner_results);
            for ir in inner_results {
                let mut p2 = ir;
                rec(&outer, &mut p2, out);
            }
        }
    }
    let mut raw = Vec::new();
    rec(&order, &mut partner, &mut raw);
    for p in raw {
        out.push(PlanarMatching { src: m, tgt: n, partner: p });
    }
    out
}

/// Number of planar matchings on `2n` points.
pub fn catalan(n: u64) -> u64 {
    let mut c = 1u64;
    for k in 0..n {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

/// A morphism of the Temperley-Lieb category over `Q(A)`.
#[derive(Clone, Debug)]
pub struct TLElement {
    pub src: usize,
    pub tgt: usize,
    pub combo: HashMap<PlanarMatching, RationalFn>,
}

impl PartialEq for TLElement {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src
            && self.tgt == other.tgt
            && self.combo.len() == other.combo.len()
            && self.combo.iter().all(|(k, v)| other.combo.get(k) == Some(v))
    }
}

fn loop_value() -> LaurentPoly {
    LaurentPoly::from_terms([(2, -1i64), (-2, -1)])
}

fn delta_pow(k: usize, cache: &mut Vec<LaurentPoly>) -> &LaurentPoly {
    while cache.len() <= k {
        let next = match cache.last() {
            None => LaurentPoly::one(),
            Some(p) => p * &loop_value(),
        };
        cache.push(next);
    }
    &cache[k]
}

/// Stacks `g` on top of `f` (`f: a -> b`, `g: b -> c`). Returns the
/// resulting matching and the number of closed loops.
fn compose_matchings(f: &PlanarMatching, g: &PlanarMatching) -> (PlanarMatching, usize) {
    let (a, b, c) = (f.src, f.tgt, g.tgt);
    let mut partner = vec![0u8; a + c];
    let mut seen_mid = vec![false; b];
    // Walk from an external point until another external point is reached.
    let walk = |start_in_f: bool, idx: usize, seen_mid: &mut Vec<bool>| -> usize {
        let mut in_f = start_in_f;
        let mut p = idx;
        loop {
            if in_f {
                let q = f.partner[p] as usize;
                if q < a {
                    return q;
                }
                let mid = q - a;
                seen_mid[mid] = true;
                in_f = false;
                p = mid;
            } else {
                let q = g.partner[p] as usize;
                if q >= b {
                    return a + (q - b);
                }
                seen_mid[q] = true;
                in_f = true;
                p = a + q;
            }
        }
    };
    for i in 0..a {
        partner[i] = walk(true, i, &mut seen_mid) as u8;
    }
    for k in 0..c {
        partner[a + k] = walk(false, b + k, &mut seen_mid) as u8;
    }
    let mut loops = 0;
    for s in 0..b {
        if seen_mid[s] {
            continue;
        }
        loops += 1;
        let mut mid = s;
        loop {
            seen_mid[mid] = true;
            // From middle point `mid`, go through g back to the middle.
            let q = g.partner[mid] as usize;
            seen_mid[q] = true;
            // Then through f from its top point q.
            let r = f.partner[a + q] as usize - a;
            if r == s {
                break;
            }
            mid = r;
        }
    }
    (PlanarMatching { src: a, tgt: c, partner }, loops)
}

impl TLElement {
    pub fn zero(src: usize, tgt: usize) -> Self {
        Self {
            src,
            tgt,
            combo: HashMap::new(),
        }
    }

    pub fn from_matching(m: PlanarMatching) -> Self {
        let (src, tgt) = (m.src, m.tgt);
        let mut combo = HashMap::new();
        combo.insert(m, RationalFn::one());
        Self { src, tgt, combo }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_matching(PlanarMatching::identity(n))
    }

    /// Nested caps joining `2i` bottom points (`i -> 0`... as a morphism `2i -> 0`).
    pub fn nested_caps(i: usize) -> Self {
        let partner = (0..2 * i).map(|j| (2 * i - 1 - j) as u8).collect();
        Self::from_matching(PlanarMatching {
            src: 2 * i,
            tgt: 0,
            partner,
        })
    }

    pub fn nested_cups(i: usize) -> Self {
        Self::nested_caps(i).flip()
    }

    /// The hook `e_i` on `n` strands (`1 <= i < n`), joining strands `i` and `i+1`.
    pub fn hook(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n);
        let mut m = PlanarMatching::identity(n);
        let (l, r) = (i - 1, i);
        m.partner[l] = r as u8;
        m.partner[r] = l as u8;
        m.partner[n + l] = (n + r) as u8;
        m.partner[n + r] = (n + l) as u8;
        Self::from_matching(m)
    }

    pub fn is_zero(&self) -> bool {
        self.combo.is_empty()
    }

    pub fn scale(&self, c: &RationalFn) -> Self {
        if c.is_zero() {
            return Self::zero(self.src, self.tgt);
        }
        Self {
            src: self.src,
            tgt: self.tgt,
            combo: self.combo.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.src != other.src || self.tgt != other.tgt {
            return Err(SkeinError::Dimension("tangle boundary mismatch".into()));
        }
        let mut combo = self.combo.clone();
        for (k, v) in &other.combo {
            let e = combo.entry(k.clone()).or_insert_with(RationalFn::zero);
            *e = &*e + v;
            if e.is_zero() {
                combo.remove(k);
            }
        }
        Ok(Self {
            src: self.src,
            tgt: self.tgt,
            combo,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&RationalFn::from_int(-1)))
    }

    /// `g ∘ f`: `self` stacked on top of `f`.
    pub fn compose(&self, f: &Self) -> Result<Self> {
        if f.tgt != self.src {
            return Err(SkeinError::Dimension(format!(
                "cannot compose {}->{} after {}->{}",
                self.src, self.tgt, f.src, f.tgt
            )));
        }
        let mut powers = Vec::new();
        let mut acc: HashMap<PlanarMatching, Vec<RationalFn>> = HashMap::new();
        for (df, cf) in &f.combo {
            for (dg, cg) in &self.combo {
                let (d, loops) = compose_matchings(df, dg);
                let mut c = cf * cg;
                if loops > 0 {
                    c = &c * &RationalFn::from_poly(delta_pow(loops, &mut powers).clone());
                }
                acc.entry(d).or_default().push(c);
            }
        }
        let combo = acc
            .into_iter()
            .map(|(k, v)| (k, RationalFn::sum(v)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Ok(Self {
            src: f.src,
            tgt: self.tgt,
            combo,
        })
    }

    /// Places `other` to the right of `self`.
    pub fn tensor(&self, other: &Self) -> Self {
        let (a, b, c, d) = (self.src, self.tgt, other.src, other.tgt);
        let map_l = |p: usize| if p < a { p } else { a + c + (p - a) };
        let map_r = |p: usize| if p < c { a + p } else { a + c + b + (p - c) };
        let mut combo = HashMap::new();
        for (m1, c1) in &self.combo {
            for (m2, c2) in &other.combo {
                let mut partner = vec![0u8; a + b + c + d];
                for p in 0..a + b {
                    partner[map_l(p)] = map_l(m1.partner[p] as usize) as u8;
                }
                for p in 0..c + d {
                    partner[map_r(p)] = map_r(m2.partner[p] as usize) as u8;
                }
                let m = PlanarMatching {
                    src: a + c,
                    tgt: b + d,
                    partner,
                };
                combo.insert(m, c1 * c2);
            }
        }
        Self {
            src: a + c,
            tgt: b + d,
            combo,
        }
    }

    /// Upside-down reflection.
    pub fn flip(&self) -> Self {
        Self {
            src: self.tgt,
            tgt: self.src,
            combo: self.combo.iter().map(|(k, v)| (k.flip(), v.clone())).collect(),
        }
    }

    /// Planar closure of an endomorphism, joining bottom `i` to top `i` on the right.
    pub fn trace(&self) -> Result<RationalFn> {
        if self.src != self.tgt {
            return Err(SkeinError::Dimension("trace needs an endomorphism".into()));
        }
        let n = self.src;
        let mut powers = Vec::new();
        let mut terms = Vec::new();
        for (m, c) in &self.combo {
            let mut seen = vec![false; 2 * n];
            let mut loops = 0;
            for s in 0..2 * n {
                if seen[s] {
                    continue;
                }
                loops += 1;
                let mut p = s;
                loop {
                    seen[p] = true;
                    let q = m.partner[p] as usize;
                    seen[q] = true;
                    let closed = if q < n { q + n } else { q - n };
                    if closed == s {
                        break;
                    }
                    p = closed;
                }
            }
            terms.push(c * &RationalFn::from_poly(delta_pow(loops, &mut powers).clone()));
        }
        Ok(RationalFn::sum(terms))
    }
}

/// Size limits for the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCaps {
    pub jw: u32,
    pub tet_total: u32,
    pub theta_total: u32,
}

impl Default for OracleCaps {
    fn default() -> Self {
        Self {
            jw: 8,
            tet_total: 8,
            theta_total: 12,
        }
    }
}

/// Builds Jones-Wenzl idempotents by the recursion
/// `f_{n+1} = f_n ⊗ 1 - (Δ_{n-1}/Δ_n) (f_n ⊗ 1) e_n (f_n ⊗ 1)`, with the
/// loop values themselves obtained as traces of earlier idempotents.
pub struct Oracle {
    caps: OracleCaps,
    jw: Vec<TLElement>,
    loops: Vec<RationalFn>,
}

impl Default for Oracle {
    fn default() -> Self {
        Self::new(OracleCaps::default())
    }
}

impl Oracle {
    pub fn new(caps: OracleCaps) -> Self {
        Self {
            caps,
            jw: vec![TLElement::identity(0), TLElement::identity(1)],
            loops: Vec::new(),
        }
    }

    pub fn caps(&self) -> OracleCaps {
        self.caps
    }

    pub fn jones_wenzl(&mut self, n: u32) -> Result<TLElement> {
        if n > self.caps.jw {
            return Err(SkeinError::CapExceeded(format!("f_{n} exceeds strand cap {}", self.caps.jw)));
        }
        while self.jw.len() <= n as usize {
            let k = self.jw.len() - 1;
            let fk1 = self.jw[k].tensor(&TLElement::identity(1));
            let hook = TLElement::hook(k + 1, k);
            let sandwich = fk1.compose(&hook.compose(&fk1)?)?;
            let ratio = &self.loop_of(k as u32 - 1)? / &self.loop_of(k as u32)?;
            let next = fk1.sub(&sandwich.scale(&ratio))?;
            self.jw.push(next);
        }
        Ok(self.jw[n as usize].clone())
    }

    fn loop_of(&mut self, n: u32) -> Result<RationalFn> {
        while self.loops.len() <= n as usize {
            let k = self.loops.len() as u32;
            let f = self.jones_wenzl(k)?;
            self.loops.push(f.trace()?);
        }
        Ok(self.loops[n as usize].clone())
    }

    /// `Y_{a,b -> c}`: the trivalent vertex as a morphism `a + b -> c`.
    pub fn vertex(&mut self, a: u32, b: u32, c: u32) -> Result<TLElement> {
        let i = ((a + b - c) / 2) as usize;
        let middle = TLElement::identity(a as usize - i)
            .tensor(&TLElement::nested_caps(i))
            .tensor(&TLElement::identity(b as usize - i));
        let fa_fb = self.jones_wenzl(a)?.tensor(&self.jones_wenzl(b)?);
        self.jones_wenzl(c)?.compose(&middle.compose(&fa_fb)?)
    }

    /// `Y^†_{c -> a,b}`, the reflected vertex.
    pub fn covertex(&mut self, c: u32, a: u32, b: u32) -> Result<TLElement> {
        Ok(self.vertex(a, b, c)?.flip())
    }

    pub fn delta(&mut self, n: u32) -> Result<RationalFn> {
        self.jones_wenzl(n)?.trace()
    }

    pub fn theta(&mut self, a: u32, b: u32, c: u32) -> Result<RationalFn> {
        if a + b + c > self.caps.theta_total {
            return Err(SkeinError::CapExceeded(format!(
                "theta total {} exceeds {}",
                a + b + c,
                self.caps.theta_total
            )));
        }
        if !admissible(a, b, c) {
            return Ok(RationalFn::zero());
        }
        self.vertex(a, b, c)?.compose(&self.covertex(c, a, b)?)?.trace()
    }

    /// The tetrahedral network with vertices `(a,d,e)`, `(b,c,e)`, `(a,b,f)`, `(c,d,f)`,
    /// closed as `tr_f(Y_{d,c→f} (1_d ⊗ Y_{e,b→c}) (Y†_{a→d,e} ⊗ 1_b) Y†_{f→a,b})`.
    pub fn tet(&mut self, l: [u32; 6]) -> Result<RationalFn> {
        let total: u32 = l.iter().sum();
        if total > self.caps.tet_total {
            return Err(SkeinError::CapExceeded(format!("tet total {total} exceeds {}", self.caps.tet_total)));
        }
        let [a, b, c, d, e, f] = l;
        if !crate::recoupling::tet_admissible(l) {
            return Ok(RationalFn::zero());
        }
        let split_f = self.covertex(f, a, b)?;
        let split_a = self.covertex(a, d, e)?.tensor(&TLElement::identity(b as usize));
        let merge_eb = TLElement::identity(d as usize).tensor(&self.vertex(e, b, c)?);
        let merge_dc = self.vertex(d, c, f)?;
        merge_dc
            .compose(&merge_eb.compose(&split_a.compose(&split_f)?)?)?
            .trace()
    }

    /// `λ_c^{ab}` as `tr(Y_{a,b→c} X_{b,a} Y†_{c→b,a}) / θ(a,b,c)`, where the
    /// crossing `X_{b,a}` carries the left bundle over the right one and
    /// each elementary crossing resolves as `A^{-1}·1 + A·e_i`.
    pub fn lambda(&mut self, c: u32, a: u32, b: u32) -> Result<RationalFn> {
        if a + b + c > self.caps.theta_total {
            return Err(SkeinError::CapExceeded(format!("lambda total {} exceeds cap", a + b + c)));
        }
        if !admissible(a, b, c) {
            return Ok(RationalFn::zero());
        }
        let n = (a + b) as usize;
        let mut x = TLElement::identity(n);
        // Strand k of the left bundle (rightmost first) passes over all of the right bundle.
        for k in (0..b as usize).rev() {
            for j in k + 1..=k + a as usize {
                x = crossing(n, j).compose(&x)?;
            }
        }
        let closed = self.vertex(a, b, c)?.compose(&x.compose(&self.covertex(c, b, a)?)?)?.trace()?;
        let th = self.theta(a, b, c)?;
        closed.checked_div(&th)
    }
}

/// Resolution of the elementary crossing between strands `j` and `j+1`.
pub fn crossing(n: usize, j: usize) -> TLElement {
    TLElement::identity(n)
        .scale(&RationalFn::monomial(1, -1))
        .add(&TLElement::hook(n, j).scale(&RationalFn::monomial(1, 1)))
        .expect("same boundary")
}

/// Kinds of closed network the oracle evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NetworkKind {
    Theta,
    Tet,
    Lambda,
    Delta,
}

/// Dispatches on the network kind; label layouts are `[a,b,c]` for theta,
/// `[c,a,b]` for lambda, `[n]` for delta and six tet slots.
pub fn evaluate_network(oracle: &mut Oracle, kind: NetworkKind, labels: &[u32]) -> Result<RationalFn> {
    let need = match kind {
        NetworkKind::Theta | NetworkKind::Lambda => 3,
        NetworkKind::Tet => 6,
        NetworkKind::Delta => 1,
    };
    if labels.len() != need {
        return Err(SkeinError::InvalidParams(format!("{kind:?} takes {need} labels")));
    }
    match kind {
        NetworkKind::Theta => oracle.theta(labels[0], labels[1], labels[2]),
        NetworkKind::Lambda => oracle.lambda(labels[0], labels[1], labels[2]),
        NetworkKind::Delta => oracle.delta(labels[0]),
        NetworkKind::Tet => oracle.tet([labels[0], labels[1], labels[2], labels[3], labels[4], labels[5]]),
    }
}

#[derive(Clone, Debug, Default)]
pub struct OracleReport {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares Δ, θ, λ and tet closed forms with diagram evaluation for every
/// label set whose total is at most `cap`.
pub fn verify_against_oracle(cap: u32) -> Result<OracleReport> {
    let mut oracle = Oracle::new(OracleCaps {
        jw: cap,
        tet_total: cap,
        theta_total: cap.max(2),
    });
    let mut report = OracleReport::default();
    let perturbed = crate::fault::enabled();
    let check = |name: String, diagram: RationalFn, closed: RationalFn, report: &mut OracleReport| {
        let closed = if perturbed && report.checked == 0 { &closed + &RationalFn::one() } else { closed };
        report.checked += 1;
        if diagram != closed {
            report.mismatches.push(name);
        }
    };
    for n in 0..=cap {
        check(format!("delta({n})"), oracle.delta(n)?, RationalFn::from_poly(crate::recoupling::delta(n)), &mut report);
    }
    for a in 0..=cap {
        for b in 0..=cap - a {
            for c in 0..=cap - a - b {
                if !admissible(a, b, c) {
                    continue;
                }
                check(format!("theta({a},{b},{c})"), oracle.theta(a, b, c)?, crate::recoupling::theta(a, b, c), &mut report);
                let lam = RationalFn::from_poly(crate::recoupling::lambda(c, a, b));
                check(format!("lambda({c};{a},{b})"), oracle.lambda(c, a, b)?, lam, &mut report);
            }
        }
    }
    let mut labels = Vec::new();
    tet_labels(cap, &mut Vec::new(), &mut labels);
    for l in labels {
        let [a, b, c, d, e, f] = l;
        check(format!("tet{l:?}"), oracle.tet(l)?, crate::recoupling::tet(a, b, c, d, e, f), &mut report);
    }
    Ok(report)
}

fn tet_labels(budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<[u32; 6]>) {
    if prefix.len() == 6 {
        let l: [u32; 6] = prefix.as_slice().try_into().unwrap();
        if crate::recoupling::tet_admissible(l) {
            out.push(l);
        }
        return;
    }
    for v in 0..=budget {
        prefix.push(v);
        tet_labels(budget - v, prefix, out);
        prefix.pop();
    }
}
