//! Rewriting any basis triple in terms of the five generators.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde_json::Value;

use crate::error::{Result, SkeinError};
use crate::exactalg::{solve_linear_system, RationalFn};
use crate::handlebody::{order_less, BasisTriple, SkeinVector, GENERATORS};
use crate::relations::{case_system, relation_vector, RelationId};

/// A combination of the generators `(0,0,0), (1,0,0), (0,0,1), (1,0,1), (0,0,2)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ReducedElement {
    coords: SkeinVector,
}

impl ReducedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_vector(v: SkeinVector) -> Result<Self> {
        if let Some(t) = v.support().into_iter().find(|t| !t.is_generator()) {
            return Err(SkeinError::InvalidParams(format!("{t} is not a generator")));
        }
        Ok(Self { coords: v })
    }

    pub fn coord(&self, g: BasisTriple) -> RationalFn {
        self.coords.get(g)
    }

    pub fn as_vector(&self) -> &SkeinVector {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    /// Whether every generator carrying a nonzero coordinate has `class`.
    pub fn is_homogeneous(&self, class: (u8, u8)) -> bool {
        self.coords.support().iter().all(|g| g.h1_class() == class)
    }

    /// Whether every coordinate lies in the localized ring.
    pub fn is_r_integral(&self) -> bool {
        self.coords.iter().all(|(_, c)| c.is_r_integral())
    }

    pub fn to_json(&self) -> Value {
        self.coords.to_json()
    }
}

fn memo() -> &'static Mutex<HashMap<BasisTriple, SkeinVector>> {
    static MEMO: OnceLock<Mutex<HashMap<BasisTriple, SkeinVector>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn reduce_raw(t: BasisTriple) -> Result<SkeinVector> {
    if t.is_generator() {
        return Ok(SkeinVector::basis(t));
    }
    if let Some(v) = memo().lock().unwrap().get(&t) {
        return Ok(v.clone());
    }
    let case_id = t.case().ok_or(SkeinError::InvalidTriple(t.a as i64, t.b as i64, t.c as i64))?;
    let sys = case_system(case_id, t)?;
    let n = sys.highest_terms.len();
    let transpose: Vec<Vec<RationalFn>> = (0..n).map(|j| (0..n).map(|i| sys.matrix[i][j].clone()).collect()).collect();
    let pos = sys.highest_terms.iter().position(|h| *h == t).expect("target is a highest term");
    let e: Vec<RationalFn> = (0..n).map(|i| if i == pos { RationalFn::one() } else { RationalFn::zero() }).collect();
    let w = solve_linear_system(&transpose, &e).map_err(|err| match err {
        SkeinError::Singular(_) => SkeinError::Singular(format!("case {case_id} matrix for {t} via {:?}", sys.relation_ids)),
        other => other,
    })?;

    // t = -Σ_i w_i rest_i, collected per lesser triple before recursing.
    let mut lesser = SkeinVector::new();
    for (wi, rest) in w.x.iter().zip(&sys.rests) {
        if wi.is_zero() {
            continue;
        }
        for (k, v) in rest.iter() {
            if !order_less(*k, t) {
                return Err(SkeinError::InvalidParams(format!("case {case_id} for {t} leaves non-lesser term {k}")));
            }
            lesser.add_term(*k, -(wi * v));
        }
    }
    let mut out = SkeinVector::new();
    for (k, c) in lesser.iter().rev() {
        for (g, cg) in reduce_raw(*k)?.iter() {
            out.add_term(*g, c * cg);
        }
    }
    memo().lock().unwrap().insert(t, out.clone());
    Ok(out)
}

pub fn reduce(t: BasisTriple) -> Result<ReducedElement> {
    Ok(ReducedElement { coords: reduce_raw(t)? })
}

/// The linear extension of `reduce`.
pub fn reduce_vector(v: &SkeinVector) -> Result<ReducedElement> {
    let mut out = SkeinVector::new();
    for (t, c) in v.iter().rev() {
        for (g, cg) in reduce_raw(*t)?.iter() {
            out.add_term(*g, c * cg);
        }
    }
    Ok(ReducedElement { coords: out })
}

#[derive(Clone, Debug, Default)]
pub struct ConsistencyReport {
    pub checked: usize,
    pub failures: Vec<(RelationId, ReducedElement)>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Reduces every relation with parameters at most `max` and records nonzero residues.
pub fn relation_consistency(max: u32) -> Result<ConsistencyReport> {
    relation_consistency_for(&RelationId::grid(max))
}

pub fn relation_consistency_for(ids: &[RelationId]) -> Result<ConsistencyReport> {
    let mut report = ConsistencyReport::default();
    for id in ids {
        let residue = reduce_vector(&relation_vector(*id)?)?;
        report.checked += 1;
        if !residue.is_zero() {
            report.failures.push((*id, residue));
        }
    }
    Ok(report)
}

/// All basis triples with every label at most `max`.
pub fn triples_upto(max: u32) -> Vec<BasisTriple> {
    let mut out = Vec::new();
    for a in 0..=max {
        for c in 0..=max {
            for b in (0..=(2 * a.min(c)).min(max)).step_by(2) {
                out.push(BasisTriple::t(a, b, c));
            }
        }
    }
    out.sort();
    out
}

pub fn generators() -> &'static [BasisTriple; 5] {
    &GENERATORS
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: fn(u32, u32, u32) -> BasisTriple = BasisTriple::t;

    #[test]
    fn generators_fixed() {
        for g in GENERATORS {
            assert_eq!(reduce(g).unwrap().as_vector(), &SkeinVector::basis(g));
        }
        assert!(reduce_vector(&SkeinVector::new()).unwrap().is_zero());
        let v = SkeinVector::basis(T(0, 0, 1)).add(&SkeinVector::basis(T(1, 0, 0)));
        assert_eq!(reduce_vector(&v).unwrap().as_vector(), &v);
    }

    #[test]
    fn case_one_step() {
        let r = reduce(T(1, 2, 1)).unwrap();
        assert_eq!(r.as_vector().support(), vec![T(1, 0, 1)]);
        let rel = relation_vector(RelationId::R1 { alpha: 1, beta: 0, gamma: 0 }).unwrap();
        let expect = -(&rel.get(T(1, 0, 1)) / &rel.get(T(1, 2, 1)));
        assert_eq!(r.coord(T(1, 0, 1)), expect);
    }

    #[test]
    fn case_five_lands_on_even_generators() {
        let r = reduce(T(2, 0, 2)).unwrap();
        assert!(r.is_homogeneous((0, 0)));
        assert!(!r.is_zero());
        assert!(r.is_r_integral());
    }

    #[test]
    fn slide_three_vanishes() {
        let v = relation_vector(RelationId::R3 { alpha: 1, gamma: 1 }).unwrap();
        assert!(reduce_vector(&v).unwrap().is_zero());
    }

    #[test]
    fn small_grid_consistent() {
        let report = relation_consistency(2).unwrap();
        assert!(report.passed(), "{:?}", report.failures.iter().map(|f| f.0).collect::<Vec<_>>());
    }

    #[test]
    fn idempotent() {
        for t in triples_upto(3) {
            let r = reduce(t).unwrap();
            assert_eq!(reduce_vector(r.as_vector()).unwrap(), r);
        }
    }
}
