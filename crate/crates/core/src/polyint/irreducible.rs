//! Irreducibility of monic integer polynomials at desk scale.
//!
//! A degree-`k` monic factor is searched for only when the distinct-degree
//! factorizations modulo a handful of small primes leave `k` possible. Linear
//! factors are found by the rational root test; higher-degree factors by an
//! exhaustive Kronecker search: a monic factor `h` of degree `k` is fixed by
//! its values at `k` integer points, each of which must divide the value of
//! `g` there. Candidates are pruned by the root bound before trial division.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{discriminant, reduce_mod_small, IntPoly, PolyError};

const SIEVE_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
const SIEVE_ROUNDS: usize = 6;

pub fn is_irreducible(g: &IntPoly) -> Result<bool, PolyError> {
    let d = match g.degree() {
        None => return Err(PolyError::ZeroPolynomial),
        Some(_) if !g.is_monic() => return Err(PolyError::NonMonic),
        Some(0) => return Err(PolyError::Constant),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(true);
    }
    if discriminant(g)?.is_zero() {
        // repeated factor
        return Ok(false);
    }
    let candidates = possible_factor_degrees(g, d);
    for k in candidates {
        let found = if k == 1 {
            has_rational_root(g)
        } else {
            has_monic_factor_of_degree(g, k)
        };
        if found {
            return Ok(false);
        }
    }
    Ok(true)
}

fn has_rational_root(g: &IntPoly) -> bool {
    let a0 = g.coeff(0);
    if a0.is_zero() {
        return true;
    }
    let Some(n) = a0.abs().to_u64() else {
        return has_monic_factor_of_degree(g, 1);
    };
    divisors(n).into_iter().any(|r| {
        let r = BigInt::from(r);
        g.evaluate(&r).is_zero() || g.evaluate(&-r).is_zero()
    })
}

/// Factor degrees in `1..=d/2` compatible with every sieve prime.
fn possible_factor_degrees(g: &IntPoly, d: usize) -> Vec<usize> {
    let mut possible: BTreeSet<usize> = (1..=d / 2).collect();
    let mut rounds = 0;
    for &p in &SIEVE_PRIMES {
        if rounds == SIEVE_ROUNDS || possible.is_empty() {
            break;
        }
        let f = reduce_mod_small(g, p);
        let df = modp::derivative(&f, p);
        if modp::degree(&modp::gcd(f.clone(), df, p)) != Some(0) {
            continue;
        }
        let mut sums = BTreeSet::from([0usize]);
        for deg in modp::distinct_degree_pattern(&f, p) {
            let shifted: Vec<usize> = sums.iter().map(|s| s + deg).collect();
            sums.extend(shifted);
        }
        possible.retain(|k| sums.contains(k));
        rounds += 1;
    }
    possible.into_iter().collect()
}

/// Divisors of `n > 0` by trial division.
fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn divisor_count(n: u64) -> usize {
    let mut count = 1;
    let mut m = n;
    let mut q = 2u64;
    while q * q <= m {
        let mut e = 0;
        while m.is_multiple_of(q) {
            m /= q;
            e += 1;
        }
        count *= e + 1;
        q += 1;
    }
    if m > 1 {
        count *= 2;
    }
    count
}

// values larger than this are not worth factoring by trial division
const MAX_POINT_VALUE: u64 = 1 << 50;

fn has_monic_factor_of_degree(g: &IntPoly, k: usize) -> bool {
    // evaluation points with small nonzero |g(t)|, fewest divisors first
    let mut pts: Vec<(i64, u64)> = (0..=64i64)
        .flat_map(|t| if t == 0 { vec![0] } else { vec![t, -t] })
        .filter_map(|t| {
            let v = g.evaluate_i64(t).abs().to_u64()?;
            (v != 0 && v <= MAX_POINT_VALUE).then_some((t, v))
        })
        .collect();
    pts.sort_by_key(|&(_, v)| v);
    pts.truncate(k + 8);
    let mut scored: Vec<(usize, i64, u64)> = pts
        .into_iter()
        .map(|(t, v)| (divisor_count(v), t, v))
        .collect();
    scored.sort();
    if scored.len() < k {
        // no usable points; g has at most d integer roots so this is unreachable
        // for k <= 64, but stay conservative
        return false;
    }
    let chosen: Vec<(i64, u64)> = scored[..k].iter().map(|&(_, t, v)| (t, v)).collect();

    let basis = LagrangeBasis::new(&chosen.iter().map(|&(t, _)| t).collect::<Vec<_>>());
    let options: Vec<Vec<BigInt>> = chosen
        .iter()
        .map(|&(_, v)| {
            divisors(v)
                .into_iter()
                .flat_map(|q| [BigInt::from(q), -BigInt::from(q)])
                .collect()
        })
        .collect();
    let bounds = coefficient_bounds(g, k);

    let mut idx = vec![0usize; k];
    loop {
        let targets: Vec<BigInt> = chosen
            .iter()
            .zip(&idx)
            .zip(&options)
            .map(|((&(t, _), &i), opts)| &opts[i] - BigInt::from(t).pow(k as u32))
            .collect();
        if let Some(h) = basis.interpolate_monic(&targets, k, &bounds) {
            let (_, rem) = g.div_rem_monic(&h);
            if rem.is_zero() {
                return true;
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == k {
                return false;
            }
            idx[pos] += 1;
            if idx[pos] < options[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// `|h_j| <= C(k, j) B^{k-j}` for a monic degree-`k` factor, where `B` is the
/// Cauchy root bound `1 + max |a_i|`.
fn coefficient_bounds(g: &IntPoly, k: usize) -> Vec<BigInt> {
    let d = g.degree().unwrap();
    let cauchy = BigInt::one()
        + g.coeffs()[..d]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
    (0..k)
        .map(|j| binomial(k, j) * cauchy.pow((k - j) as u32))
        .collect()
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Integer-scaled Lagrange basis on fixed nodes: `den * L_j(x)` has integer
/// coefficients for every `j`.
struct LagrangeBasis {
    den: BigInt,
    scaled: Vec<Vec<BigInt>>,
}

impl LagrangeBasis {
    fn new(nodes: &[i64]) -> Self {
        let k = nodes.len();
        let mut numerators = Vec::with_capacity(k);
        let mut weights = Vec::with_capacity(k);
        for (j, &tj) in nodes.iter().enumerate() {
            let mut num = IntPoly::constant(BigInt::one());
            let mut w = BigInt::one();
            for (i, &ti) in nodes.iter().enumerate() {
                if i != j {
                    num = &num * &IntPoly::linear_root(BigInt::from(ti));
                    w *= tj - ti;
                }
            }
            numerators.push(num);
            weights.push(w);
        }
        let den = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w));
        let scaled = numerators
            .iter()
            .zip(&weights)
            .map(|(num, w)| {
                let f = &den / w;
                (0..k).map(|c| num.coeff(c) * &f).collect()
            })
            .collect();
        Self { den, scaled }
    }

    /// The monic `x^k + r(x)` with `r(t_j) = targets[j]`, if integral and
    /// within bounds.
    fn interpolate_monic(
        &self,
        targets: &[BigInt],
        k: usize,
        bounds: &[BigInt],
    ) -> Option<IntPoly> {
        let mut coeffs = Vec::with_capacity(k + 1);
        for c in 0..k {
            let mut acc = BigInt::zero();
            for (row, target) in self.scaled.iter().zip(targets) {
                acc += &row[c] * target;
            }
            let (q, r) = acc.div_rem(&self.den);
            if !r.is_zero() || q.abs() > bounds[c] {
                return None;
            }
            coeffs.push(q);
        }
        coeffs.push(BigInt::one());
        Some(IntPoly::new(coeffs))
    }
}

/// Polynomials over `F_p` as ascending coefficient vectors, trimmed.
mod modp {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn degree(a: &[u64]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    fn inv(a: u64, p: u64) -> u64 {
        // Fermat
        let mut result = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        result
    }

    pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| (i as u64 % p) * c % p)
                .collect(),
        )
    }

    pub fn rem(a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a);
        let db = degree(b).expect("nonzero divisor");
        let lead_inv = inv(b[db], p);
        while let Some(da) = degree(&a) {
            if da < db {
                break;
            }
            let c = a[da] * lead_inv % p;
            for (i, &bc) in b[..=db].iter().enumerate() {
                let idx = da - db + i;
                a[idx] = (a[idx] + p - c * bc % p) % p;
            }
            a = trim(a);
        }
        a
    }

    fn div(a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a);
        let db = degree(b).expect("nonzero divisor");
        let lead_inv = inv(b[db], p);
        let mut q = vec![0u64; a.len().saturating_sub(db).max(1)];
        while let Some(da) = degree(&a) {
            if da < db {
                break;
            }
            let c = a[da] * lead_inv % p;
            q[da - db] = c;
            for (i, &bc) in b[..=db].iter().enumerate() {
                let idx = da - db + i;
                a[idx] = (a[idx] + p - c * bc % p) % p;
            }
            a = trim(a);
        }
        trim(q)
    }

    fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(out, m, p)
    }

    fn pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut result = rem(vec![1], m, p);
        let mut b = rem(base.to_vec(), m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        result
    }

    pub fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
        a = trim(a);
        b = trim(b);
        while !b.is_empty() {
            let r = rem(a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| {
                    let x = a.get(i).copied().unwrap_or(0);
                    let y = b.get(i).copied().unwrap_or(0);
                    (x + p - y) % p
                })
                .collect(),
        )
    }

    /// Degrees of the irreducible factors of a squarefree `f` over `F_p`.
    pub fn distinct_degree_pattern(f: &[u64], p: u64) -> Vec<usize> {
        let mut f = trim(f.to_vec());
        let x = vec![0, 1];
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut i = 1;
        while degree(&f).is_some_and(|df| df >= 2 * i) {
            h = pow_mod(&h, p, &f, p);
            let g = gcd(f.clone(), sub(&h, &x, p), p);
            let dg = degree(&g).unwrap_or(0);
            if dg > 0 {
                out.extend(std::iter::repeat_n(i, dg / i));
                f = div(f, &g, p);
                h = rem(h, &f, p);
            }
            i += 1;
        }
        if let Some(df) = degree(&f) {
            if df > 0 {
                out.push(df);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    /// Literal bounded search: every monic `h` of degree `1..=d/2` with
    /// `|h_j| <= C(k,j) B^{k-j}`, tested by division. Only usable for tiny
    /// inputs, which is what makes it a trustworthy oracle.
    fn brute_force_irreducible(g: &IntPoly) -> bool {
        let d = g.degree().unwrap();
        for k in 1..=d / 2 {
            let bounds: Vec<i64> = coefficient_bounds(g, k)
                .iter()
                .map(|b| b.to_i64().unwrap())
                .collect();
            let mut h: Vec<i64> = bounds.iter().map(|b| -b).collect();
            loop {
                let mut c = h.clone();
                c.push(1);
                let (_, r) = g.div_rem_monic(&p(&c));
                if r.is_zero() {
                    return false;
                }
                let mut pos = 0;
                loop {
                    if pos == k {
                        break;
                    }
                    h[pos] += 1;
                    if h[pos] <= bounds[pos] {
                        break;
                    }
                    h[pos] = -bounds[pos];
                    pos += 1;
                }
                if pos == k {
                    break;
                }
            }
        }
        true
    }

    #[test]
    fn examples() {
        assert!(is_irreducible(&p(&[1, -42, 39, 1])).unwrap());
        assert!(!is_irreducible(&p(&[-1, 0, 1])).unwrap());
        assert!(is_irreducible(&p(&[1, 1, -4, 1])).unwrap());
        assert!(is_irreducible(&p(&[5, 1])).unwrap());
        // (x^2 + x + 1)(x^2 - x - 1) has no rational roots
        let q = &p(&[1, 1, 1]) * &p(&[-1, -1, 1]);
        assert!(!is_irreducible(&q).unwrap());
        // x^4 + 1 is irreducible but reducible modulo every prime
        assert!(is_irreducible(&p(&[1, 0, 0, 0, 1])).unwrap());
        assert!(!is_irreducible(&p(&[0, 0, 1])).unwrap());
        assert_eq!(is_irreducible(&p(&[1, 2])), Err(PolyError::NonMonic));
    }

    #[test]
    fn large_coefficient_products_are_found() {
        let a = p(&[1_000_003, -7, 0, 1]);
        let b = p(&[-999_983, 11, 1, 0, 1]);
        assert!(is_irreducible(&a).unwrap());
        assert!(is_irreducible(&b).unwrap());
        assert!(!is_irreducible(&(&a * &b)).unwrap());
        let c = p(&[17, -3, 1]);
        assert!(!is_irreducible(&(&c * &p(&[-2, 5, 0, 1]))).unwrap());
    }

    #[test]
    fn distinct_degree_pattern_small_cases() {
        // x^2 + 1 over F_3 is irreducible; over F_5 it splits
        assert_eq!(modp::distinct_degree_pattern(&[1, 0, 1], 3), vec![2]);
        assert_eq!(modp::distinct_degree_pattern(&[1, 0, 1], 5), vec![1, 1]);
        // x^3 - x = x(x - 1)(x + 1) over F_3
        assert_eq!(
            modp::distinct_degree_pattern(&[0, 2, 0, 1], 3),
            vec![1, 1, 1]
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn agrees_with_bounded_search(c in prop::collection::vec(-3i64..=3, 1..=4)) {
            let mut c = c;
            c.push(1);
            let g = p(&c);
            prop_assert_eq!(is_irreducible(&g).unwrap(), brute_force_irreducible(&g));
        }

        #[test]
        fn products_are_reducible(a in prop::collection::vec(-4i64..=4, 1..=3), b in prop::collection::vec(-4i64..=4, 1..=3)) {
            let (mut a, mut b) = (a, b);
            a.push(1);
            b.push(1);
            prop_assert!(!is_irreducible(&(&p(&a) * &p(&b))).unwrap());
        }
    }
}
