//! 3-adic certificates that a number field has no exceptional units, and
//! diagnostics for the case `3 | d` where the argument breaks down.
//!
//! For units `u, v` with `-u - v = 1` and `3` split completely, every
//! embedding `u_i` is a one-unit and `f(n) = prod (1 + u_i^n) - (-1)^d`
//! vanishes at `n = 1`. Expanding `f` through `exp(n log u_i)` pins
//! `v_3(f(1))` to `v_3(a_0)`, which is `1` exactly when `3` does not
//! divide `d`.

pub mod series;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::numfield::{self, EmbeddingSet, FieldElement, FieldError, NumberField, Splitting};
use crate::padic::{int_valuation, PadicError, PadicInt, Valuation};
use crate::polyint::IntPoly;

pub use series::{
    build_series, strassmann_bound, valuation_ledger, ChabautySeries, StrassmannReport,
    ValuationLedger, DEFAULT_ORDER,
};

/// The prime the whole argument runs at.
pub const PRIME: u32 = 3;

pub const CONCLUSION: &str = "E_K = ∅";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChabautyError {
    #[error("no logarithms supplied")]
    NoLogs,
    #[error("logarithm {index} is not divisible by p")]
    LogNotDivisibleByP { index: usize },
    #[error("logarithms do not sum to zero")]
    UnbalancedLogs,
    #[error("embedding {index} of the unit is not congruent to 1 mod 3")]
    NotOneUnitEmbedding { index: usize },
    #[error("unit norm is not 1")]
    NormNotOne,
    #[error("element is not a unit of Z[a]")]
    NotAUnit,
    #[error("3 does not split completely")]
    NotSplit,
    #[error("splitting undecided below precision {required}")]
    Inconclusive { required: u32 },
    #[error("minimal coefficient valuation is not separated from the tail bound")]
    PrecisionInsufficient,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

/// `v_3(2^d - (-1)^d)`, the valuation of `a_0`.
pub fn a0_valuation(d: usize) -> u32 {
    let sign = if d.is_multiple_of(2) { 1 } else { -1 };
    let a0 = num_traits::pow(BigInt::from(2), d) - sign;
    int_valuation(&a0, PRIME).expect("2^d differs from +-1 for d >= 1")
}

/// `log u_i` for each embedding of a one-unit `u` of norm 1.
pub fn unit_logs(
    field: &NumberField,
    set: &EmbeddingSet,
    u: &FieldElement,
) -> Result<Vec<PadicInt>, ChabautyError> {
    let images = numfield::embed(field, u, set)?;
    let mut logs = Vec::with_capacity(images.len());
    for (index, image) in images.iter().enumerate() {
        logs.push(
            image
                .log_unit()
                .map_err(|_| ChabautyError::NotOneUnitEmbedding { index })?,
        );
    }
    if field.norm(u) != BigRational::one() {
        return Err(ChabautyError::NormNotOne);
    }
    let total = logs
        .iter()
        .fold(set.roots[0].sibling(&BigInt::from(0)), |acc, l| &acc + l);
    if !total.is_zero() {
        return Err(ChabautyError::UnbalancedLogs);
    }
    Ok(logs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypothesisFailure {
    DegreeDivisibleBy3,
    NotSplit,
}

impl HypothesisFailure {
    pub fn as_str(self) -> &'static str {
        match self {
            HypothesisFailure::DegreeDivisibleBy3 => "DegreeDivisibleBy3",
            HypothesisFailure::NotSplit => "NotSplit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub poly: IntPoly,
    pub degree: usize,
    pub roots: Vec<PadicInt>,
    /// `v_3(2^d - (-1)^d)`, always 1.
    pub key_valuation: u32,
    pub precision: u32,
    pub conclusion: &'static str,
    pub proof: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertifyOutcome {
    Certificate(Certificate),
    HypothesisFail(HypothesisFailure),
    Inconclusive { required: u32 },
}

/// Decides whether the argument applies to `Q[x]/(g)` and, if so, issues a
/// certificate that the field has no exceptional units.
pub fn certify_no_exceptional_units(g: &IntPoly) -> Result<CertifyOutcome, ChabautyError> {
    let field = NumberField::new(g.clone())?;
    let d = field.degree();
    if d % 3 == 0 {
        return Ok(CertifyOutcome::HypothesisFail(
            HypothesisFailure::DegreeDivisibleBy3,
        ));
    }
    let set = match numfield::splitting(g, PRIME)? {
        Splitting::Split(set) => set,
        Splitting::NotSplit { .. } => {
            return Ok(CertifyOutcome::HypothesisFail(HypothesisFailure::NotSplit))
        }
        Splitting::Inconclusive { required } => {
            return Ok(CertifyOutcome::Inconclusive { required })
        }
    };
    let key_valuation = a0_valuation(d);
    if key_valuation != 1 {
        return Ok(CertifyOutcome::HypothesisFail(
            HypothesisFailure::DegreeDivisibleBy3,
        ));
    }
    let proof = vec![
        format!("3 does not divide d = {d}"),
        format!(
            "3 splits completely: {d} Hensel-certified roots of g in Z_3 (v3(disc) = {})",
            set.disc_valuation
        ),
        "suppose -u - v = 1 with u, v units; write u_i, v_i for their images in Z_3".into(),
        "u_i and v_i are 3-adic units; u_i = 2 mod 3 would give v_i = -1 - u_i = 0 mod 3, so u_i = 1 mod 3"
            .into(),
        "Nm(u) = prod u_i is +-1 and 1 mod 3, so Nm(u) = 1 and sum log u_i = 0".into(),
        "f(n) = prod (1 + u_i^n) - (-1)^d = sum a_j n^j vanishes at n = 1".into(),
        "a_1 = a_3 = 0, v3(a_2) >= 2 and v3(a_j) >= 3 for j >= 4, so v3(f(1)) = v3(a_0) if v3(a_0) < 2"
            .into(),
        format!("v3(a_0) = v3(2^{d} - (-1)^{d}) = 1, so f(1) != 0"),
    ];
    Ok(CertifyOutcome::Certificate(Certificate {
        poly: g.clone(),
        degree: d,
        roots: set.roots,
        key_valuation,
        precision: set.precision,
        conclusion: CONCLUSION,
        proof,
    }))
}

/// How a unit was turned into one whose embeddings are all `1 mod 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    AsGiven,
    /// Every embedding was `-1 mod 3`.
    Negated,
    /// Embeddings had mixed signs mod 3.
    Squared,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnosis {
    pub poly: IntPoly,
    pub degree: usize,
    pub normalization: Normalization,
    pub unit: FieldElement,
    pub roots: Vec<PadicInt>,
    pub logs: Vec<PadicInt>,
    pub log_square_sum_valuation: Valuation,
    pub series: ChabautySeries,
    pub ledger: ValuationLedger,
    pub strassmann: StrassmannReport,
}

impl Diagnosis {
    pub fn reduced_display(&self) -> String {
        self.strassmann.reduced_display(PRIME)
    }
}

/// Runs the series machinery on a concrete unit of `Q[x]/(g)` at precision
/// `precision`.
pub fn analyze_unit(
    g: &IntPoly,
    u: &FieldElement,
    precision: u32,
) -> Result<Diagnosis, ChabautyError> {
    let field = NumberField::new(g.clone())?;
    if u.coords().len() != field.degree() {
        return Err(FieldError::DimensionMismatch {
            got: u.coords().len(),
            degree: field.degree(),
        }
        .into());
    }
    if !field.is_unit(u) {
        return Err(ChabautyError::NotAUnit);
    }
    let set = match numfield::padic_roots(g, PRIME, precision)? {
        Splitting::Split(set) => set,
        Splitting::NotSplit { .. } => return Err(ChabautyError::NotSplit),
        Splitting::Inconclusive { required } => {
            return Err(ChabautyError::Inconclusive { required })
        }
    };
    let images = numfield::embed(&field, u, &set)?;
    let residues: Vec<u32> = images.iter().map(|x| x.digits()[0]).collect();
    let (normalization, unit) = if residues.iter().all(|&r| r == 1) {
        (Normalization::AsGiven, u.clone())
    } else if residues.iter().all(|&r| r == 2) {
        (Normalization::Negated, field.neg(u))
    } else {
        (Normalization::Squared, field.mul(u, u))
    };
    let logs = unit_logs(&field, &set, &unit)?;
    let square_sum = logs
        .iter()
        .fold(set.roots[0].sibling(&BigInt::from(0)), |acc, l| {
            &acc + &(l * l)
        });
    let series = build_series(&logs, DEFAULT_ORDER)?;
    let ledger = valuation_ledger(&series);
    let strassmann = strassmann_bound(&series)?;
    Ok(Diagnosis {
        poly: g.clone(),
        degree: field.degree(),
        normalization,
        unit,
        roots: set.roots,
        logs,
        log_square_sum_valuation: square_sum.valuation(),
        series,
        ledger,
        strassmann,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn split_cubic_field() -> (IntPoly, NumberField, FieldElement) {
        let g = poly(&[3, 2, 3, 1]);
        let k = NumberField::new(g.clone()).unwrap();
        let w = k.parse_element("1,0,1").unwrap();
        let u = k.neg(&k.mul(&w, &w));
        (g, k, u)
    }

    #[test]
    fn a0_valuation_small_cases() {
        assert_eq!(a0_valuation(1), 1);
        assert_eq!(a0_valuation(2), 1);
        assert_eq!(a0_valuation(3), 2);
        assert_eq!(a0_valuation(9), 3);
    }

    #[test]
    fn certificate_for_quadratic() {
        let out = certify_no_exceptional_units(&poly(&[-3, 1, 1])).unwrap();
        let CertifyOutcome::Certificate(c) = out else {
            panic!("expected certificate, got {out:?}");
        };
        assert_eq!(c.degree, 2);
        assert_eq!(c.key_valuation, 1);
        let residues: Vec<u32> = c.roots.iter().map(|r| r.digits()[0]).collect();
        assert_eq!(residues, vec![0, 2]);
        assert_eq!(c.conclusion, "E_K = ∅");
    }

    #[test]
    fn hypothesis_failures() {
        assert_eq!(
            certify_no_exceptional_units(&poly(&[1, -42, 39, 1])).unwrap(),
            CertifyOutcome::HypothesisFail(HypothesisFailure::DegreeDivisibleBy3)
        );
        assert_eq!(
            certify_no_exceptional_units(&poly(&[-1, -1, 1])).unwrap(),
            CertifyOutcome::HypothesisFail(HypothesisFailure::NotSplit)
        );
        assert_eq!(
            certify_no_exceptional_units(&poly(&[1, 1, 1])).unwrap(),
            CertifyOutcome::HypothesisFail(HypothesisFailure::NotSplit)
        );
    }

    #[test]
    fn split_cubic_field_logs_mod_27() {
        let (g, k, u) = split_cubic_field();
        let Splitting::Split(set) = numfield::padic_roots(&g, 3, 8).unwrap() else {
            panic!("3 splits in this field");
        };
        let minus_u = k.neg(&u);
        let logs = unit_logs(&k, &set, &minus_u).unwrap();
        let mod27: BTreeSet<u32> = logs
            .iter()
            .map(|l| u32::try_from(l.lift() % 27u32).unwrap())
            .collect();
        assert_eq!(mod27, BTreeSet::from([12, 18, 24]));
        // u itself is -1 mod 3 in every embedding
        assert!(matches!(
            unit_logs(&k, &set, &u),
            Err(ChabautyError::NotOneUnitEmbedding { index: 0 })
        ));
    }

    #[test]
    fn split_cubic_field_diagnosis() {
        let (g, _, u) = split_cubic_field();
        let diag = analyze_unit(&g, &u, 8).unwrap();
        assert_eq!(diag.normalization, Normalization::Negated);
        assert_eq!(diag.log_square_sum_valuation, Valuation::Exact(2));
        assert_eq!(diag.ledger.valuations[0], Valuation::Exact(2));
        assert_eq!(diag.ledger.valuations[2], Valuation::Exact(2));
        assert!(!diag.ledger.rules_out_zero_at_one);
        assert_eq!(diag.strassmann.bound, 2);
        assert_eq!(diag.strassmann.hensel_simple_roots, 2);
        assert_eq!(diag.reduced_display(), "1 - n^2");
    }

    #[test]
    fn trivial_unit_diagnosis() {
        let g = poly(&[-3, 1, 1]);
        let k = NumberField::new(g.clone()).unwrap();
        let diag = analyze_unit(&g, &k.one(), 8).unwrap();
        assert_eq!(diag.series.coefficients[0].lift(), BigInt::from(3));
        assert!(diag.series.coefficients[1..].iter().all(PadicInt::is_zero));
        assert_eq!(diag.strassmann.bound, 0);
    }

    #[test]
    fn quadratic_fundamental_unit_is_squared() {
        // 2 + a has norm -1 and embeddings 2 and 1 mod 3
        let g = poly(&[-3, 1, 1]);
        let k = NumberField::new(g.clone()).unwrap();
        let u = k.parse_element("2,1").unwrap();
        let diag = analyze_unit(&g, &u, 8).unwrap();
        assert_eq!(diag.normalization, Normalization::Squared);
        assert_eq!(diag.ledger.constant_valuation, Valuation::Exact(1));
        assert!(diag.ledger.rules_out_zero_at_one);
        assert_eq!(diag.strassmann.bound, 0);
        assert_eq!(diag.strassmann.hensel_simple_roots, 0);
    }

    #[test]
    fn analyze_rejects_bad_input() {
        let g = poly(&[-3, 1, 1]);
        let k = NumberField::new(g.clone()).unwrap();
        assert_eq!(
            analyze_unit(&g, &k.from_i64(2), 8),
            Err(ChabautyError::NotAUnit)
        );
        let inert = poly(&[-1, -1, 1]);
        let k2 = NumberField::new(inert.clone()).unwrap();
        assert_eq!(
            analyze_unit(&inert, &k2.generator(), 8),
            Err(ChabautyError::NotSplit)
        );
    }

    #[test]
    fn cubic_family_unit_is_not_ruled_out() {
        // a is an exceptional unit of this cubic; the ledger must not claim f(1) != 0
        let g = poly(&[1, -42, 39, 1]);
        let k = NumberField::new(g.clone()).unwrap();
        let diag = analyze_unit(&g, &k.generator(), 8).unwrap();
        assert_eq!(diag.ledger.constant_valuation, Valuation::Exact(2));
        assert!(!diag.ledger.rules_out_zero_at_one);
    }
}
