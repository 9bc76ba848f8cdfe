//! Periodic orbits of polynomial maps on `Z[a]`.

use std::collections::HashMap;

use serde::Serialize;

use super::SearchError;
use crate::chabauty::{certify_no_exceptional_units, CertifyOutcome};
use crate::numfield::{self, FieldElement, NumberField, Splitting};

/// Cycle lengths of polynomial maps on `Z_3` (order).
pub const ORDER_CYCLE_LENGTHS: [u32; 6] = [1, 2, 3, 4, 6, 9];

/// Orbit points with more decimal digits than this count as escaped.
pub const DEFAULT_HEIGHT_DIGITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub points: Vec<FieldElement>,
    pub length: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EscapeReason {
    MaxIterations,
    HeightExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CycleOutcome {
    Cycle(Orbit),
    Escaped {
        reason: EscapeReason,
        iterations: usize,
    },
}

fn check_element(
    field: &NumberField,
    x: &FieldElement,
    what: &'static str,
) -> Result<(), SearchError> {
    if x.coords().len() != field.degree() {
        return Err(SearchError::DimensionMismatch {
            got: x.coords().len(),
            expected: field.degree(),
        });
    }
    if !x.is_integral() {
        return Err(SearchError::NotIntegral(what));
    }
    Ok(())
}

fn apply(field: &NumberField, map: &[FieldElement], x: &FieldElement) -> FieldElement {
    map.iter()
        .rev()
        .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

/// Iterates `x -> map(x)` from `seed`, where `map` lists coefficients in
/// ascending degree, and returns the periodic part once a point recurs.
pub fn detect_cycle(
    field: &NumberField,
    map: &[FieldElement],
    seed: &FieldElement,
    max_iter: usize,
    height_digits: usize,
) -> Result<CycleOutcome, SearchError> {
    for c in map {
        check_element(field, c, "map coefficient")?;
    }
    check_element(field, seed, "seed")?;
    let mut seen: HashMap<FieldElement, usize> = HashMap::new();
    let mut path = Vec::new();
    let mut x = seed.clone();
    for step in 0..=max_iter {
        if let Some(&start) = seen.get(&x) {
            let points = path.split_off(start);
            return Ok(CycleOutcome::Cycle(Orbit {
                length: points.len(),
                points,
            }));
        }
        if x.height().to_string().len() > height_digits {
            return Ok(CycleOutcome::Escaped {
                reason: EscapeReason::HeightExceeded,
                iterations: step,
            });
        }
        seen.insert(x.clone(), path.len());
        path.push(x.clone());
        x = apply(field, map, &x);
    }
    Ok(CycleOutcome::Escaped {
        reason: EscapeReason::MaxIterations,
        iterations: max_iter,
    })
}

/// The pair `e1 + e2 = 1` extracted from a 3-cycle `a0 -> a1 -> a2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreeCycleUnits {
    pub e1: FieldElement,
    pub e2: FieldElement,
    pub e1_is_unit: bool,
    pub e2_is_unit: bool,
}

impl ThreeCycleUnits {
    pub fn both_units(&self) -> bool {
        self.e1_is_unit && self.e2_is_unit
    }
}

/// `e1 = -(a1 - a2)/(a0 - a1)` and `e2 = -(a2 - a0)/(a0 - a1)`. For a genuine
/// 3-cycle of an integral polynomial these are exceptional units, because
/// `a - b` divides `f(a) - f(b)`.
pub fn units_from_3cycle(
    field: &NumberField,
    a0: &FieldElement,
    a1: &FieldElement,
    a2: &FieldElement,
) -> Result<ThreeCycleUnits, SearchError> {
    if a0 == a1 || a1 == a2 || a0 == a2 {
        return Err(SearchError::DegenerateTriple);
    }
    let d01 = field.sub(a0, a1);
    let e1 = field.neg(&field.div(&field.sub(a1, a2), &d01)?);
    let e2 = field.neg(&field.div(&field.sub(a2, a0), &d01)?);
    Ok(ThreeCycleUnits {
        e1_is_unit: field.is_unit(&e1),
        e2_is_unit: field.is_unit(&e2),
        e1,
        e2,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum NoBoundReason {
    /// 3 does not split completely, so `Z[a]` has no embedding into `Z_3`.
    NoEmbedding,
    /// The splitting decision needs more than the precision cap.
    Inconclusive { required: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CycleBound {
    /// Every cycle length of a polynomial map on `Z[a]` lies in `lengths`.
    Lengths {
        lengths: Vec<u32>,
        certified: bool,
    },
    NoBound(NoBoundReason),
}

/// Possible cycle lengths for polynomial maps on the order `Z[a]` of
/// `Q[x]/(g)`.
pub fn cycle_bound(g: &crate::polyint::IntPoly) -> Result<CycleBound, SearchError> {
    match numfield::splitting(g, 3)? {
        Splitting::NotSplit { .. } => return Ok(CycleBound::NoBound(NoBoundReason::NoEmbedding)),
        Splitting::Inconclusive { required } => {
            return Ok(CycleBound::NoBound(NoBoundReason::Inconclusive {
                required,
            }))
        }
        Splitting::Split(_) => {}
    }
    let certified = matches!(
        certify_no_exceptional_units(g)?,
        CertifyOutcome::Certificate(_)
    );
    let lengths = ORDER_CYCLE_LENGTHS
        .iter()
        .copied()
        .filter(|n| !certified || n % 3 != 0)
        .collect();
    Ok(CycleBound::Lengths { lengths, certified })
}
