//! The power series `f(n) = prod (1 + exp(n l_i)) - (-1)^d` and its audits.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::ChabautyError;
use crate::padic::{factorial_valuation, PadicInt, Valuation};

pub const DEFAULT_ORDER: usize = 8;

/// Truncation of `f(n) = sum a_j n^j` at order `J` with coefficients in
/// `Z/p^N` and a certified lower bound on `v_p(a_j)` for every `j > J`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChabautySeries {
    pub degree: usize,
    pub order: usize,
    pub precision: u32,
    pub coefficients: Vec<PadicInt>,
    pub tail_bound: u32,
}

impl ChabautySeries {
    pub fn prime(&self) -> u32 {
        self.coefficients[0].prime()
    }

    pub fn coefficient(&self, j: usize) -> &PadicInt {
        &self.coefficients[j]
    }

    /// Truncated sum at an integer argument; agrees with `f(n)` modulo
    /// `p^min(N, tail_bound)`.
    pub fn evaluate(&self, n: &BigInt) -> PadicInt {
        let x = self.coefficients[0].sibling(n);
        self.coefficients
            .iter()
            .rev()
            .fold(x.sibling(&BigInt::zero()), |acc, c| &(&acc * &x) + c)
    }
}

/// Expands `prod_i (2 + sum_{k>=1} l_i^k n^k / k!) - (-1)^d` up to `n^order`.
pub fn build_series(logs: &[PadicInt], order: usize) -> Result<ChabautySeries, ChabautyError> {
    let first = logs.first().ok_or(ChabautyError::NoLogs)?;
    let p = first.prime();
    let precision = logs.iter().map(PadicInt::precision).min().unwrap();
    let logs: Vec<PadicInt> = logs.iter().map(|l| l.with_precision(precision)).collect();
    if let Some(i) = logs
        .iter()
        .position(|l| l.valuation() == Valuation::Exact(0))
    {
        return Err(ChabautyError::LogNotDivisibleByP { index: i });
    }
    let zero = first.with_precision(precision).sibling(&BigInt::zero());
    let total = logs.iter().fold(zero.clone(), |acc, l| &acc + l);
    if !total.is_zero() {
        return Err(ChabautyError::UnbalancedLogs);
    }

    let modulus = zero.modulus();
    let mut product = vec![BigInt::one()];
    for l in &logs {
        let mut factor = Vec::with_capacity(order + 1);
        factor.push(BigInt::from(2));
        let mut fact = BigInt::one();
        for k in 1..=order as u64 {
            fact *= k;
            factor.push(l.power_over(k, &fact).lift());
        }
        let mut next = vec![BigInt::zero(); (product.len() + order).min(order + 1)];
        for (i, a) in product.iter().enumerate() {
            for (j, b) in factor.iter().enumerate() {
                if i + j <= order {
                    next[i + j] = (&next[i + j] + a * b) % &modulus;
                }
            }
        }
        product = next;
    }
    product.resize(order + 1, BigInt::zero());
    let d = logs.len();
    product[0] -= if d.is_multiple_of(2) { 1 } else { -1 };
    let coefficients = product.iter().map(|c| zero.sibling(c)).collect();

    let min_log_valuation = logs.iter().filter_map(|l| l.valuation().exact()).min();
    let tail_bound = match min_log_valuation {
        None => precision,
        Some(a) => tail_valuation_bound(d, order, a, p).min(precision),
    };
    Ok(ChabautySeries {
        degree: d,
        order,
        precision,
        coefficients,
        tail_bound,
    })
}

/// `min_{j > order}` of the least `sum_i (k_i a - v_p(k_i!))` over
/// `k_1 + ... + k_d = j`, which bounds `v_p(a_j)` from below when every log
/// has valuation `>= a`.
fn tail_valuation_bound(d: usize, order: usize, a: u32, p: u32) -> u32 {
    let a = a as i64;
    // each nonzero part costs at least (k + 1) / 2, so j beyond 2*(order + 64)
    // cannot beat anything found below it
    let limit = 2 * (order + 64);
    let phi: Vec<i64> = (0..=limit)
        .map(|k| k as i64 * a - factorial_valuation(k as u64, p) as i64)
        .collect();
    let mut best = phi.clone();
    for _ in 1..d {
        let mut next = vec![i64::MAX; limit + 1];
        for (j, &b) in best.iter().enumerate() {
            for (k, &c) in phi.iter().enumerate().take(limit + 1 - j) {
                next[j + k] = next[j + k].min(b + c);
            }
        }
        best = next;
    }
    best[order + 1..]
        .iter()
        .copied()
        .min()
        .unwrap_or(i64::MAX)
        .max(0) as u32
}

/// Outcome of auditing the coefficients against the inequalities that
/// drive the non-existence argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationLedger {
    pub valuations: Vec<Valuation>,
    pub tail_bound: u32,
    /// `a_1 = a_3 = 0` at working precision.
    pub odd_terms_vanish: bool,
    /// `v(a_2) >= 2`.
    pub quadratic_at_least_2: bool,
    /// `v(a_j) >= 3` for `4 <= j <= J` and for the tail.
    pub higher_at_least_3: bool,
    pub constant_valuation: Valuation,
    /// `v(a_0) = 1`: together with the other checks, `f(1) != 0`.
    pub constant_valuation_is_one: bool,
    pub rules_out_zero_at_one: bool,
}

pub fn valuation_ledger(series: &ChabautySeries) -> ValuationLedger {
    let valuations: Vec<Valuation> = series
        .coefficients
        .iter()
        .map(PadicInt::valuation)
        .collect();
    let at = |j: usize| valuations.get(j).copied();
    let vanishes = |j: usize| at(j).is_none_or(|v| !v.is_exact());
    let odd_terms_vanish = vanishes(1) && vanishes(3);
    let quadratic_at_least_2 = at(2).is_none_or(|v| v.lower_bound() >= 2);
    let higher_at_least_3 =
        valuations.iter().skip(4).all(|v| v.lower_bound() >= 3) && series.tail_bound >= 3;
    let constant_valuation = valuations[0];
    let constant_valuation_is_one = constant_valuation == Valuation::Exact(1);
    ValuationLedger {
        tail_bound: series.tail_bound,
        odd_terms_vanish,
        quadratic_at_least_2,
        higher_at_least_3,
        constant_valuation,
        constant_valuation_is_one,
        rules_out_zero_at_one: odd_terms_vanish
            && quadratic_at_least_2
            && higher_at_least_3
            && constant_valuation_is_one,
        valuations,
    }
}

/// Zero count of `f` on `Z_p`: Strassmann's upper bound and the number of
/// simple roots of the content-reduced series mod `p`, each of which lifts to
/// exactly one zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrassmannReport {
    pub min_valuation: u32,
    pub bound: usize,
    /// `(a_j / p^m) mod p` for `j <= J`.
    pub reduced: Vec<u32>,
    pub hensel_simple_roots: usize,
    /// The bounds agree, so the zero count is exactly `bound`.
    pub exact: bool,
}

impl StrassmannReport {
    /// Ascending rendering with balanced residues, e.g. `1 - n^2`.
    pub fn reduced_display(&self, p: u32) -> String {
        let terms = self.reduced.iter().enumerate().map(|(j, &c)| {
            let c = c as i64;
            let balanced = if 2 * c > p as i64 { c - p as i64 } else { c };
            (j, BigInt::from(balanced))
        });
        crate::polyint::render_terms(terms, "n")
    }
}

pub fn strassmann_bound(series: &ChabautySeries) -> Result<StrassmannReport, ChabautyError> {
    let p = series.prime();
    let min_valuation = series
        .coefficients
        .iter()
        .filter_map(|c| c.valuation().exact())
        .min()
        .ok_or(ChabautyError::PrecisionInsufficient)?;
    if series.tail_bound <= min_valuation {
        return Err(ChabautyError::PrecisionInsufficient);
    }
    let bound = series
        .coefficients
        .iter()
        .rposition(|c| c.valuation() == Valuation::Exact(min_valuation))
        .expect("minimum is attained");
    let pb = BigInt::from(p);
    let scale = num_traits::pow(pb.clone(), min_valuation as usize);
    let reduced: Vec<u32> = series
        .coefficients
        .iter()
        .map(|c| {
            if c.valuation().lower_bound() > min_valuation {
                0
            } else {
                let r: BigInt = (c.lift() / &scale) % &pb;
                u32::try_from(r).expect("residue below p")
            }
        })
        .collect();
    let eval = |coeffs: &[u64], n: u64| {
        coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * n + c) % p as u64)
    };
    let poly: Vec<u64> = reduced.iter().map(|&c| c as u64).collect();
    let deriv: Vec<u64> = poly
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, &c)| (j as u64 % p as u64) * c % p as u64)
        .collect();
    let hensel_simple_roots = (0..p as u64)
        .filter(|&n| eval(&poly, n) == 0 && eval(&deriv, n) != 0)
        .count();
    Ok(StrassmannReport {
        min_valuation,
        bound,
        reduced,
        hensel_simple_roots,
        exact: hensel_simple_roots == bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: i64, n: u32) -> PadicInt {
        PadicInt::from_i64(3, n, v).unwrap()
    }

    #[test]
    fn rational_field_series_is_constant_three() {
        let s = build_series(&[z(0, 8)], DEFAULT_ORDER).unwrap();
        assert_eq!(s.coefficients[0], z(3, 8));
        assert!(s.coefficients[1..].iter().all(PadicInt::is_zero));
        let st = strassmann_bound(&s).unwrap();
        assert_eq!(st.bound, 0);
        assert_eq!(st.hensel_simple_roots, 0);
    }

    #[test]
    fn cubic_constant_term_and_quadratic_coefficient() {
        let s = build_series(&[z(3, 5), z(3, 5), z(-6, 5)], DEFAULT_ORDER).unwrap();
        assert_eq!(s.coefficients[0], z(9, 5));
        assert_eq!(s.coefficients[2], z(54, 5));
        assert!(s.coefficients[1].is_zero() && s.coefficients[3].is_zero());
    }

    #[test]
    fn quadratic_ledger() {
        let s = build_series(&[z(3, 8), z(-3, 8)], DEFAULT_ORDER).unwrap();
        let ledger = valuation_ledger(&s);
        assert_eq!(ledger.constant_valuation, Valuation::Exact(1));
        assert_eq!(ledger.valuations[2], Valuation::Exact(2));
        assert!(ledger.odd_terms_vanish && ledger.quadratic_at_least_2 && ledger.higher_at_least_3);
        assert!(ledger.rules_out_zero_at_one);
    }

    #[test]
    fn injected_odd_coefficient_is_flagged() {
        let mut s = build_series(&[z(3, 8), z(-3, 8)], DEFAULT_ORDER).unwrap();
        s.coefficients[1] = z(9, 8);
        let ledger = valuation_ledger(&s);
        assert!(!ledger.odd_terms_vanish);
        assert!(!ledger.rules_out_zero_at_one);
    }

    #[test]
    fn strassmann_on_a_two_zero_series() {
        // a0 = 9, a2 = -9 * 7, tail >= 3
        let mut coefficients = vec![z(0, 8); 9];
        coefficients[0] = z(9, 8);
        coefficients[2] = z(-63, 8);
        coefficients[4] = z(27, 8);
        let s = ChabautySeries {
            degree: 3,
            order: 8,
            precision: 8,
            coefficients,
            tail_bound: 3,
        };
        let st = strassmann_bound(&s).unwrap();
        assert_eq!(st.bound, 2);
        assert_eq!(st.reduced_display(3), "1 - n^2");
        assert_eq!(st.hensel_simple_roots, 2);
        assert!(st.exact);
    }

    #[test]
    fn strassmann_needs_separated_tail() {
        let s = ChabautySeries {
            degree: 2,
            order: 2,
            precision: 8,
            coefficients: vec![z(27, 8), z(0, 8), z(0, 8)],
            tail_bound: 3,
        };
        assert_eq!(
            strassmann_bound(&s),
            Err(ChabautyError::PrecisionInsufficient)
        );
    }

    #[test]
    fn input_validation() {
        assert_eq!(build_series(&[], 8), Err(ChabautyError::NoLogs));
        assert_eq!(
            build_series(&[z(3, 8), z(3, 8)], 8),
            Err(ChabautyError::UnbalancedLogs)
        );
        assert_eq!(
            build_series(&[z(1, 8), z(-1, 8)], 8),
            Err(ChabautyError::LogNotDivisibleByP { index: 0 })
        );
    }

    #[test]
    fn tail_bound_matches_exhaustive_partition_search() {
        // brute force over all compositions of j into d parts
        fn brute(d: usize, j: usize, a: i64) -> i64 {
            fn rec(d: usize, j: usize, a: i64) -> i64 {
                if d == 0 {
                    return if j == 0 { 0 } else { i64::MAX / 4 };
                }
                (0..=j)
                    .map(|k| {
                        k as i64 * a - factorial_valuation(k as u64, 3) as i64
                            + rec(d - 1, j - k, a)
                    })
                    .min()
                    .unwrap()
            }
            rec(d, j, a)
        }
        for d in 1..=4 {
            for order in [2usize, 4, 8] {
                let expected = (order + 1..=order + 12)
                    .map(|j| brute(d, j, 1))
                    .min()
                    .unwrap();
                assert_eq!(
                    tail_valuation_bound(d, order, 1, 3) as i64,
                    expected,
                    "d={d} J={order}"
                );
            }
        }
        assert!(tail_valuation_bound(8, 4, 1, 3) >= 3);
    }
}
