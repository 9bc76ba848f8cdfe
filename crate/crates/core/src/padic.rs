//! Truncated p-adic integers.
//!
//! A [`PadicInt`] is an element of `Z/p^N` carrying its prime and absolute
//! precision `N`. Binary operations take the minimum precision of the
//! operands. A zero residue has valuation "at least `N`", never an exact
//! value, so finite precision can never be mistaken for an exact claim.
//!
//! The logarithm and exponential sum their defining series up to a
//! truncation index derived from certified lower bounds on the valuation of
//! the remaining terms, so the results are exact modulo `p^N`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub const DEFAULT_PRIME: u32 = 3;
pub const DEFAULT_PRECISION: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("element is not a unit (valuation {0})")]
    NonUnit(Valuation),
    #[error("logarithm needs an element congruent to 1 mod p")]
    NotOneUnit,
    #[error("exponential series diverges for an input of valuation 0")]
    DivergentInput,
    #[error("logarithm and exponential are only supported for odd primes, got {0}")]
    UnsupportedPrime(u32),
    #[error("denominator divisible by p = {0}")]
    DenominatorNotCoprime(u32),
}

/// p-adic valuation of a truncated element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Valuation {
    Exact(u32),
    /// Residue is zero at precision `N`; the true valuation is `>= N`.
    AtLeast(u32),
}

impl Valuation {
    /// The certified lower bound (the exact value when known).
    pub fn lower_bound(self) -> u32 {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }

    pub fn exact(self) -> Option<u32> {
        match self {
            Valuation::Exact(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Valuation::Exact(_))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// Trial-division primality for the small primes used as parameters.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exponent of `p` in a nonzero integer; `None` for zero.
pub fn int_valuation(x: &BigInt, p: u32) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut x = x.clone();
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

/// `v_p(n!)` via Legendre's formula `(n - s_p(n)) / (p - 1)`.
pub fn factorial_valuation(n: u64, p: u32) -> u64 {
    let p = p as u64;
    let mut digit_sum = 0;
    let mut m = n;
    while m > 0 {
        digit_sum += m % p;
        m /= p;
    }
    (n - digit_sum) / (p - 1)
}

fn floor_log(k: u64, p: u32) -> u64 {
    let mut e = 0;
    let mut q = k;
    while q >= p as u64 {
        q /= p as u64;
        e += 1;
    }
    e
}

pub(crate) fn pow_big(p: u32, n: u32) -> BigUint {
    num_traits::pow(BigUint::from(p), n as usize)
}

/// Inverse of `a` modulo `m`, if it exists.
pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let egcd = a.mod_floor(m).extended_gcd(m);
    if !egcd.gcd.is_one() {
        return None;
    }
    Some(egcd.x.mod_floor(m))
}

/// An element of `Z/p^N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicInt {
    prime: u32,
    precision: u32,
    residue: BigUint,
}

impl PadicInt {
    pub fn new(prime: u32, precision: u32, value: &BigInt) -> Result<Self, PadicError> {
        if !is_prime(prime) {
            return Err(PadicError::NotPrime(prime));
        }
        if precision == 0 {
            return Err(PadicError::ZeroPrecision);
        }
        Ok(Self::reduce(prime, precision, value))
    }

    pub fn from_i64(prime: u32, precision: u32, value: i64) -> Result<Self, PadicError> {
        Self::new(prime, precision, &BigInt::from(value))
    }

    /// `num / den` with `den` coprime to `p`.
    pub fn from_ratio(
        prime: u32,
        precision: u32,
        num: &BigInt,
        den: &BigInt,
    ) -> Result<Self, PadicError> {
        let modulus = BigInt::from(pow_big(prime, precision));
        let inv = mod_inverse(den, &modulus).ok_or(PadicError::DenominatorNotCoprime(prime))?;
        Self::new(prime, precision, &(num * inv))
    }

    // Caller guarantees a valid prime and precision.
    pub(crate) fn reduce(prime: u32, precision: u32, value: &BigInt) -> Self {
        let modulus = BigInt::from(pow_big(prime, precision));
        let residue = value
            .mod_floor(&modulus)
            .to_biguint()
            .expect("mod_floor is non-negative");
        Self {
            prime,
            precision,
            residue,
        }
    }

    pub fn zero(prime: u32, precision: u32) -> Result<Self, PadicError> {
        Self::from_i64(prime, precision, 0)
    }

    pub fn one(prime: u32, precision: u32) -> Result<Self, PadicError> {
        Self::from_i64(prime, precision, 1)
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    /// Canonical representative in `[0, p^N)` as a signed integer.
    pub fn lift(&self) -> BigInt {
        BigInt::from_biguint(Sign::Plus, self.residue.clone())
    }

    /// Representative in `(-p^N/2, p^N/2]`.
    pub fn lift_balanced(&self) -> BigInt {
        let m = self.modulus();
        let r = self.lift();
        if &r * 2 > m {
            r - m
        } else {
            r
        }
    }

    pub fn modulus(&self) -> BigInt {
        BigInt::from(pow_big(self.prime, self.precision))
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        let precision = precision.clamp(1, self.precision);
        Self::reduce(self.prime, precision, &self.lift())
    }

    /// Same prime and precision, new value.
    pub fn sibling(&self, value: &BigInt) -> Self {
        Self::reduce(self.prime, self.precision, value)
    }

    pub fn valuation(&self) -> Valuation {
        match int_valuation(&self.lift(), self.prime) {
            None => Valuation::AtLeast(self.precision),
            Some(v) => Valuation::Exact(v),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Valuation::Exact(0)
    }

    /// Base-p digits `d_0, ..., d_{N-1}`.
    pub fn digits(&self) -> Vec<u32> {
        let p = BigUint::from(self.prime);
        let mut r = self.residue.clone();
        (0..self.precision)
            .map(|_| {
                let (q, d) = r.div_rem(&p);
                r = q;
                d.to_u32().expect("digit below p")
            })
            .collect()
    }

    pub fn invert(&self) -> Result<Self, PadicError> {
        if !self.is_unit() {
            return Err(PadicError::NonUnit(self.valuation()));
        }
        let inv = mod_inverse(&self.lift(), &self.modulus()).expect("unit has an inverse");
        Ok(self.sibling(&inv))
    }

    pub fn pow_int(&self, n: i64) -> Result<Self, PadicError> {
        let base = if n < 0 { self.invert()? } else { self.clone() };
        let e = BigUint::from(n.unsigned_abs());
        let r = self.residue_pow(&base.residue, &e);
        Ok(Self {
            prime: self.prime,
            precision: self.precision,
            residue: r,
        })
    }

    fn residue_pow(&self, base: &BigUint, e: &BigUint) -> BigUint {
        base.modpow(e, &pow_big(self.prime, self.precision))
    }

    fn check_odd_prime(&self) -> Result<(), PadicError> {
        if self.prime < 3 {
            return Err(PadicError::UnsupportedPrime(self.prime));
        }
        Ok(())
    }

    /// `self^k / m` for `v(self) >= 1`.
    ///
    /// Every quotient used by the log and exp series satisfies
    /// `v_p(m) <= v_p(k) + (k - 1) v(self)`, which makes the result depend only
    /// on `self mod p^N`. The power is computed with `v_p(m)` extra digits and
    /// the exact power of `p` is divided out before inverting the unit part.
    pub(crate) fn power_over(&self, k: u64, m: &BigInt) -> Self {
        debug_assert!(k >= 1 && !m.is_zero());
        let e = int_valuation(m, self.prime).expect("nonzero divisor");
        let pe = BigInt::from(pow_big(self.prime, e));
        let unit = m / &pe;
        let wide = pow_big(self.prime, self.precision + e);
        let t = BigInt::from(self.residue.modpow(&BigUint::from(k), &wide));
        debug_assert!((&t % &pe).is_zero());
        let modulus = self.modulus();
        let inv = mod_inverse(&unit, &modulus).expect("unit part is invertible");
        self.sibling(&((t / pe) * inv))
    }

    /// p-adic logarithm of a one-unit.
    ///
    /// Sums `(-1)^{k+1} t^k / k` with `t = u - 1` while the term bound
    /// `k v(t) - floor(log_p k)` is below `N`; the bound is nondecreasing in
    /// `k`, so every omitted term vanishes mod `p^N`.
    pub fn log_unit(&self) -> Result<Self, PadicError> {
        self.check_odd_prime()?;
        let t = self - &self.sibling(&BigInt::one());
        let a = match t.valuation() {
            Valuation::AtLeast(_) => return Ok(t),
            Valuation::Exact(0) => return Err(PadicError::NotOneUnit),
            Valuation::Exact(a) => a as u64,
        };
        let n = self.precision as u64;
        let mut sum = BigInt::zero();
        let mut k = 1u64;
        while k * a - floor_log(k, self.prime) < n {
            let term = t.power_over(k, &BigInt::from(k)).lift();
            if k % 2 == 1 {
                sum += term;
            } else {
                sum -= term;
            }
            k += 1;
        }
        Ok(self.sibling(&sum))
    }

    /// p-adic exponential for `v(x) >= 1`.
    ///
    /// Sums `x^k / k!` while the lower bound `k v(x) - floor((k-1)/(p-1))`
    /// (which never exceeds `k v(x) - v_p(k!)`) stays below `N`.
    pub fn exp_small(&self) -> Result<Self, PadicError> {
        self.check_odd_prime()?;
        let a = match self.valuation() {
            Valuation::AtLeast(_) => return Ok(self.sibling(&BigInt::one())),
            Valuation::Exact(0) => return Err(PadicError::DivergentInput),
            Valuation::Exact(a) => a as u64,
        };
        let n = self.precision as u64;
        let pm1 = (self.prime - 1) as u64;
        let mut sum = BigInt::one();
        let mut factorial = BigInt::one();
        let mut k = 1u64;
        while k * a - (k - 1) / pm1 < n {
            factorial *= k;
            sum += self.power_over(k, &factorial).lift();
            k += 1;
        }
        Ok(self.sibling(&sum))
    }

    fn assert_compatible(&self, other: &Self) -> u32 {
        assert_eq!(
            self.prime, other.prime,
            "p-adic operands must share the same prime"
        );
        self.precision.min(other.precision)
    }
}

impl fmt::Display for PadicInt {
    /// `d0 + d1*p + d2*p^2 + ... + O(p^N)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prime;
        for (i, d) in self.digits().iter().enumerate() {
            match i {
                0 => write!(f, "{d}")?,
                1 => write!(f, " + {d}*{p}")?,
                _ => write!(f, " + {d}*{p}^{i}")?,
            }
        }
        write!(f, " + O({p}^{})", self.precision)
    }
}

impl serde::Serialize for PadicInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'a> Add<&'a PadicInt> for &'a PadicInt {
    type Output = PadicInt;
    fn add(self, rhs: &PadicInt) -> PadicInt {
        let n = self.assert_compatible(rhs);
        PadicInt::reduce(self.prime, n, &(self.lift() + rhs.lift()))
    }
}

impl<'a> Sub<&'a PadicInt> for &'a PadicInt {
    type Output = PadicInt;
    fn sub(self, rhs: &PadicInt) -> PadicInt {
        let n = self.assert_compatible(rhs);
        PadicInt::reduce(self.prime, n, &(self.lift() - rhs.lift()))
    }
}

impl<'a> Mul<&'a PadicInt> for &'a PadicInt {
    type Output = PadicInt;
    fn mul(self, rhs: &PadicInt) -> PadicInt {
        let n = self.assert_compatible(rhs);
        PadicInt::reduce(self.prime, n, &(self.lift() * rhs.lift()))
    }
}

impl Neg for &PadicInt {
    type Output = PadicInt;
    fn neg(self) -> PadicInt {
        self.sibling(&-self.lift())
    }
}

impl Add for PadicInt {
    type Output = PadicInt;
    fn add(self, rhs: PadicInt) -> PadicInt {
        &self + &rhs
    }
}

impl Sub for PadicInt {
    type Output = PadicInt;
    fn sub(self, rhs: PadicInt) -> PadicInt {
        &self - &rhs
    }
}

impl Mul for PadicInt {
    type Output = PadicInt;
    fn mul(self, rhs: PadicInt) -> PadicInt {
        &self * &rhs
    }
}

impl Neg for PadicInt {
    type Output = PadicInt;
    fn neg(self) -> PadicInt {
        -&self
    }
}
