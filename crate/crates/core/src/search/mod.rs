//! Census of minimal polynomials of exceptional units whose field has `p`
//! split completely, plus the polynomial-dynamics consequences.

pub mod dynamics;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::chabauty::ChabautyError;
use crate::numfield::{self, FieldError, SplitDecision};
use crate::padic::is_prime;
use crate::polyint::{is_irreducible, IntPoly};

pub use dynamics::{
    cycle_bound, detect_cycle, units_from_3cycle, CycleBound, CycleOutcome, EscapeReason,
    NoBoundReason, Orbit, ThreeCycleUnits, DEFAULT_HEIGHT_DIGITS, ORDER_CYCLE_LENGTHS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("degree and height must both be at least 1")]
    EmptyRange,
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("two points of the triple coincide")]
    DegenerateTriple,
    #[error("{0} must be integral")]
    NotIntegral(&'static str),
    #[error("elements belong to a field of degree {expected}, got {got} coordinates")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("could not build thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Chabauty(#[from] ChabautyError),
}

/// Monic irreducible `g` with `g(0), g(1)` in `{1, -1}`: the minimal
/// polynomial of an exceptional unit `a`, since `Nm(a) = (-1)^d g(0)` and
/// `Nm(1 - a) = g(1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidatePoly {
    pub poly: IntPoly,
    pub degree: usize,
    #[serde(serialize_with = "serialize_display")]
    pub height: BigInt,
}

fn serialize_display<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

impl CandidatePoly {
    fn new(poly: IntPoly) -> Self {
        CandidatePoly {
            degree: poly.degree().expect("monic"),
            height: poly.height(),
            poly,
        }
    }

    /// `(Nm(a), Nm(1 - a))`.
    pub fn witness_norms(&self) -> (i64, i64) {
        let sign = if self.degree.is_multiple_of(2) { 1 } else { -1 };
        let g0 = i64::try_from(self.poly.coeff(0)).expect("constant term is +-1");
        let g1 = i64::try_from(self.poly.evaluate_i64(1)).expect("g(1) is +-1");
        (sign * g0, g1)
    }
}

/// Monic degree-`d` polynomials with `|coefficients| <= h`, `g(0) = +-1` and
/// `g(1) = +-1`, before the irreducibility filter, in lexicographic order of
/// the ascending coefficient tuple.
fn shaped_polys(d: usize, h: i64) -> impl Iterator<Item = IntPoly> {
    let free = d.saturating_sub(2);
    let mut tuples: Vec<Vec<i64>> = Vec::new();
    if d >= 2 {
        let mut middle = vec![-h; free];
        for a0 in [-1i64, 1] {
            middle.iter_mut().for_each(|c| *c = -h);
            loop {
                let s: i64 = middle.iter().sum();
                for target in [-1i64, 1] {
                    // 1 + a0 + s + last = target
                    let last = target - 1 - a0 - s;
                    if last.abs() <= h {
                        let mut t = Vec::with_capacity(d + 1);
                        t.push(a0);
                        t.extend_from_slice(&middle);
                        t.push(last);
                        t.push(1);
                        tuples.push(t);
                    }
                }
                if !advance(&mut middle, h) {
                    break;
                }
            }
        }
    }
    tuples.into_iter().map(|t| IntPoly::from_i64s(&t))
}

/// Odometer step over `[-h, h]^n`, last position fastest.
fn advance(digits: &mut [i64], h: i64) -> bool {
    for c in digits.iter_mut().rev() {
        if *c < h {
            *c += 1;
            return true;
        }
        *c = -h;
    }
    false
}

/// Every [`CandidatePoly`] of degree `d` and height at most `h`.
pub fn enumerate_candidates(d: usize, h: u32) -> impl Iterator<Item = CandidatePoly> {
    shaped_polys(d, h as i64)
        .filter(|g| is_irreducible(g).expect("monic of positive degree"))
        .map(CandidatePoly::new)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub degree: usize,
    pub height: u32,
    pub prime: u32,
    /// Polynomials with the unit shape, before the irreducibility test.
    pub scanned: usize,
    pub candidates: usize,
    pub hits: Vec<CandidatePoly>,
    /// Candidates whose splitting could not be decided at the precision cap.
    pub inconclusive: Vec<IntPoly>,
}

enum Verdict {
    Reducible,
    Split(CandidatePoly),
    NotSplit,
    Inconclusive(IntPoly),
}

/// Candidates of degree `d`, height `<= h`, in whose field `p` splits
/// completely. `jobs` worker threads share the scan; the output order does
/// not depend on `jobs`.
pub fn search_split_exceptional(
    d: usize,
    h: u32,
    p: u32,
    jobs: usize,
) -> Result<SearchReport, SearchError> {
    if d == 0 || h == 0 {
        return Err(SearchError::EmptyRange);
    }
    if !is_prime(p) {
        return Err(SearchError::NotPrime(p));
    }
    let polys: Vec<IntPoly> = shaped_polys(d, h as i64).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| SearchError::ThreadPool(e.to_string()))?;
    let verdicts: Vec<Result<Verdict, SearchError>> = pool.install(|| {
        polys
            .par_iter()
            .map(|g| {
                if !is_irreducible(g).expect("monic of positive degree") {
                    return Ok(Verdict::Reducible);
                }
                Ok(match numfield::splits_completely(g, p)? {
                    SplitDecision::Split => Verdict::Split(CandidatePoly::new(g.clone())),
                    SplitDecision::NotSplit => Verdict::NotSplit,
                    SplitDecision::Inconclusive => Verdict::Inconclusive(g.clone()),
                })
            })
            .collect()
    });
    let mut report = SearchReport {
        degree: d,
        height: h,
        prime: p,
        scanned: polys.len(),
        candidates: 0,
        hits: Vec::new(),
        inconclusive: Vec::new(),
    };
    for v in verdicts {
        match v? {
            Verdict::Reducible => {}
            Verdict::Split(c) => {
                report.candidates += 1;
                report.hits.push(c);
            }
            Verdict::NotSplit => report.candidates += 1,
            Verdict::Inconclusive(g) => {
                report.candidates += 1;
                report.inconclusive.push(g);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn csvs(it: impl Iterator<Item = CandidatePoly>) -> Vec<String> {
        it.map(|c| c.poly.to_csv()).collect()
    }

    /// Literal scan of the whole coefficient box.
    fn brute_candidates(d: usize, h: i64) -> Vec<String> {
        let mut out = Vec::new();
        let mut lower = vec![-h; d];
        loop {
            let mut c = lower.clone();
            c.push(1);
            let g = IntPoly::from_i64s(&c);
            let g0 = g.evaluate_i64(0);
            let g1 = g.evaluate_i64(1);
            let unit = |x: &BigInt| x == &BigInt::from(1) || x == &BigInt::from(-1);
            if unit(&g0) && unit(&g1) && is_irreducible(&g).unwrap() {
                out.push(g.to_csv());
            }
            if !advance(&mut lower, h) {
                break;
            }
        }
        out
    }

    #[test]
    fn quadratic_height_one() {
        // x^2 - x + 1 qualifies too: its roots are primitive sixth roots of unity
        assert_eq!(
            csvs(enumerate_candidates(2, 1)),
            vec!["-1,-1,1", "-1,1,1", "1,-1,1"]
        );
    }

    #[test]
    fn no_linear_candidates() {
        assert_eq!(enumerate_candidates(1, 2).count(), 0);
    }

    #[test]
    fn enumeration_matches_box_scan() {
        for (d, h) in [(2, 3), (3, 2), (4, 1), (3, 3)] {
            assert_eq!(
                csvs(enumerate_candidates(d, h as u32)),
                brute_candidates(d, h),
                "d={d} H={h}"
            );
        }
    }

    #[test]
    fn candidates_have_no_root_mod_2() {
        for c in enumerate_candidates(4, 3) {
            assert!(crate::polyint::roots_mod_p(&c.poly, 2).is_empty());
            let (n0, n1) = c.witness_norms();
            assert!(n0.abs() == 1 && n1.abs() == 1);
        }
    }

    #[test]
    fn cubic_family_member_is_a_hit() {
        let g = IntPoly::from_i64s(&[1, -42, 39, 1]);
        assert!(enumerate_candidates(3, 45).any(|c| c.poly == g));
        let report = search_split_exceptional(3, 45, 3, 2).unwrap();
        assert!(report.hits.iter().any(|c| c.poly == g));
        let hit = report.hits.iter().find(|c| c.poly == g).unwrap();
        assert_eq!(hit.witness_norms(), (-1, -1));
    }

    #[test]
    fn quadratic_census_is_empty() {
        let report = search_split_exceptional(2, 10, 3, 1).unwrap();
        assert!(report.hits.is_empty());
        assert!(report.inconclusive.is_empty());
        assert!(report.candidates > 0);
    }

    #[test]
    fn parallel_order_is_deterministic() {
        let a = search_split_exceptional(3, 12, 3, 1).unwrap();
        let b = search_split_exceptional(3, 12, 3, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn invalid_parameters() {
        assert_eq!(
            search_split_exceptional(0, 3, 3, 1),
            Err(SearchError::EmptyRange)
        );
        assert_eq!(
            search_split_exceptional(2, 3, 4, 1),
            Err(SearchError::NotPrime(4))
        );
    }
}
