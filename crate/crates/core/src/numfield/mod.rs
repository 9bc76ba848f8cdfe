//! Number fields `Q[x]/(g)` for monic irreducible `g`.
//!
//! Elements are rational coordinate vectors in the power basis
//! `1, a, ..., a^{d-1}` of the generator `a`. Integrality means membership
//! in the order `Z[a]`, which stands in for the ring of integers throughout.

mod embedding;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::padic::PadicError;
use crate::polyint::{self, IntPoly, PolyError};

pub use embedding::{
    embed, padic_roots, splits_completely, splitting, EmbeddingSet, HenselMargin, SplitDecision,
    Splitting, PRECISION_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("defining polynomial must be monic")]
    NotMonic,
    #[error("defining polynomial {0} is not irreducible")]
    NotIrreducible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element has {got} coordinates but the field has degree {degree}")]
    DimensionMismatch { got: usize, degree: usize },
    #[error("element denominator is divisible by {0}")]
    DenominatorNotCoprime(u32),
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    defining: IntPoly,
    degree: usize,
}

/// `sum c_i a^i` in the power basis of its field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// All coordinates are integers, i.e. the element lies in `Z[a]`.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(BigRational::is_integer)
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// `(h, den)` with `self = h(a) / den` and `h` integral.
    pub fn integer_form(&self) -> (IntPoly, BigInt) {
        let den = self.denominator();
        let h = self
            .coords
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        (IntPoly::new(h), den)
    }

    /// Largest absolute numerator or denominator, for height caps.
    pub fn height(&self) -> BigInt {
        self.coords
            .iter()
            .flat_map(|c| [c.numer().abs(), c.denom().clone()])
            .max()
            .unwrap_or_default()
    }
}

impl fmt::Display for FieldElement {
    /// `c0 + c1*a + c2*a^2`, zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Arithmetic on coefficient vectors in `Q[x]`.
mod qpoly {
    use super::*;

    pub fn trim(mut a: Vec<BigRational>) -> Vec<BigRational> {
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
        a
    }

    pub fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        let zero = BigRational::zero();
        trim(
            (0..n)
                .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r = trim(a.to_vec());
        let b = trim(b.to_vec());
        let db = b.len() - 1;
        let lead = b[db].clone();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![BigRational::zero(); r.len() - db];
        while r.len() > db {
            let dr = r.len() - 1;
            let c = &r[dr] / &lead;
            for (j, bc) in b.iter().enumerate() {
                r[dr - db + j] -= &c * bc;
            }
            q[dr - db] = c;
            r.pop();
            r = trim(r);
        }
        (trim(q), r)
    }

    /// `s` with `s * a = gcd(a, b)`, normalized so the gcd is monic.
    pub fn inverse_factor(
        a: &[BigRational],
        b: &[BigRational],
    ) -> (Vec<BigRational>, Vec<BigRational>) {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![BigRational::one()], Vec::new());
        while !r1.is_empty() {
            let (q, r) = div_rem(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let lead = r0.last().cloned().unwrap_or_else(BigRational::one);
        let scale = |v: Vec<BigRational>| v.into_iter().map(|c| c / &lead).collect();
        (scale(s0), scale(r0))
    }
}

impl NumberField {
    pub fn new(defining: IntPoly) -> Result<Self, FieldError> {
        if !defining.is_monic() {
            return Err(FieldError::NotMonic);
        }
        if !polyint::is_irreducible(&defining)? {
            return Err(FieldError::NotIrreducible(defining.to_csv()));
        }
        let degree = defining.degree().expect("monic");
        Ok(Self { defining, degree })
    }

    /// `Q` presented as `Q[x]/(x)`.
    pub fn rationals() -> Self {
        Self {
            defining: IntPoly::from_i64s(&[0, 1]),
            degree: 1,
        }
    }

    pub fn defining(&self) -> &IntPoly {
        &self.defining
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Reduces an arbitrary coefficient vector modulo the defining polynomial.
    fn reduce(&self, mut c: Vec<BigRational>) -> FieldElement {
        let d = self.degree;
        let g = self.defining.coeffs();
        for i in (d..c.len()).rev() {
            let top = std::mem::take(&mut c[i]);
            if top.is_zero() {
                continue;
            }
            for (j, gj) in g[..d].iter().enumerate() {
                c[i - d + j] -= &top * BigRational::from_integer(gj.clone());
            }
        }
        c.resize(d, BigRational::zero());
        FieldElement { coords: c }
    }

    pub fn element(&self, coords: Vec<BigRational>) -> Result<FieldElement, FieldError> {
        if coords.len() > self.degree {
            return Err(FieldError::DimensionMismatch {
                got: coords.len(),
                degree: self.degree,
            });
        }
        Ok(self.reduce(coords))
    }

    pub fn from_integer(&self, c: BigInt) -> FieldElement {
        self.reduce(vec![BigRational::from_integer(c)])
    }

    pub fn from_i64(&self, c: i64) -> FieldElement {
        self.from_integer(BigInt::from(c))
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    /// The class of `x`.
    pub fn generator(&self) -> FieldElement {
        self.reduce(vec![BigRational::zero(), BigRational::one()])
    }

    /// Parses comma-separated power-basis coordinates (`"1,-1"` is `1 - a`);
    /// each coordinate may be an integer or a fraction `p/q`.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement, FieldError> {
        let mut coords = Vec::new();
        let mut offset = 0;
        for field in text.split(',') {
            let trimmed = field.trim();
            let position = offset + (field.len() - field.trim_start().len());
            let c = trimmed
                .parse::<BigRational>()
                .map_err(|_| FieldError::Parse {
                    position,
                    message: format!("invalid rational {trimmed:?}"),
                })?;
            coords.push(c);
            offset += field.len() + 1;
        }
        self.element(coords)
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        FieldElement {
            coords: x.coords.iter().zip(&y.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        FieldElement {
            coords: x.coords.iter().zip(&y.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        FieldElement {
            coords: x.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let mut out = vec![BigRational::zero(); 2 * self.degree - 1];
        for (i, a) in x.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coords.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        self.reduce(out)
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement, FieldError> {
        if x.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let g: Vec<BigRational> = self
            .defining
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (s, gcd) = qpoly::inverse_factor(&x.coords, &g);
        debug_assert!(gcd.len() == 1, "irreducible modulus gives a unit gcd");
        Ok(self.reduce(s))
    }

    pub fn div(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &FieldElement, mut e: u32) -> FieldElement {
        let mut result = self.one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    /// `Nm(x) = Res(g, h) / den^d` for `x = h(a) / den`.
    pub fn norm(&self, x: &FieldElement) -> BigRational {
        let (h, den) = x.integer_form();
        let res = polyint::resultant(&self.defining, &h).expect("defining polynomial is monic");
        let scale = num_traits::pow(den, self.degree);
        BigRational::new(res, scale)
    }

    /// `x` and `1 - x` are both integral with norm `+-1`.
    pub fn is_exceptional_unit(&self, x: &FieldElement) -> bool {
        is_unit_norm(&self.norm(x))
            && x.is_integral()
            && is_unit_norm(&self.norm(&self.sub(&self.one(), x)))
    }

    /// Integral with norm `+-1`.
    pub fn is_unit(&self, x: &FieldElement) -> bool {
        x.is_integral() && is_unit_norm(&self.norm(x))
    }
}

pub(crate) fn is_unit_norm(n: &BigRational) -> bool {
    n.is_integer() && n.numer().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn golden() -> NumberField {
        NumberField::new(IntPoly::from_i64s(&[-1, -1, 1])).unwrap()
    }

    fn el(k: &NumberField, c: &[i64]) -> FieldElement {
        k.element(
            c.iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        )
        .unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_examples() {
        let k = golden();
        let a = k.generator();
        assert_eq!(k.mul(&a, &a), el(&k, &[1, 1]));
        let one_minus_a = k.sub(&k.one(), &a);
        assert_eq!(k.mul(&a, &one_minus_a), el(&k, &[-1]));
        let a_plus_one = k.add(&a, &k.one());
        assert_eq!(k.div(&a_plus_one, &a).unwrap(), a);
        assert_eq!(k.div(&a, &k.zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn integrality_examples() {
        let k = golden();
        let a = k.generator();
        assert!(a.is_integral());
        let half_a = k.element(vec![q(0, 1), q(1, 2)]).unwrap();
        assert!(!half_a.is_integral());
        // (a1 - a2) / (a0 - a1) for (0, 1, a)
        let (a0, a1, a2) = (k.zero(), k.one(), a.clone());
        let r = k.div(&k.sub(&a1, &a2), &k.sub(&a0, &a1)).unwrap();
        assert!(r.is_integral());
        // (1 - a) / (0 - 1) = a - 1
        assert_eq!(r, k.sub(&a, &k.one()));
    }

    #[test]
    fn norm_examples() {
        let k = NumberField::new(IntPoly::from_i64s(&[1, 1, -4, 1])).unwrap();
        let a = k.generator();
        assert_eq!(k.norm(&a), q(-1, 1));
        assert_eq!(k.norm(&k.sub(&k.one(), &a)), q(-1, 1));
        assert_eq!(golden().norm(&golden().from_i64(2)), q(4, 1));
        // Nm(a/2) = Nm(a) / 8
        let half = k.element(vec![q(0, 1), q(1, 2)]).unwrap();
        assert_eq!(k.norm(&half), q(-1, 8));
    }

    #[test]
    fn exceptional_unit_examples() {
        let k = NumberField::new(IntPoly::from_i64s(&[1, 1, -4, 1])).unwrap();
        assert!(k.is_exceptional_unit(&k.generator()));
        assert!(golden().is_exceptional_unit(&golden().generator()));
        assert!(!k.is_exceptional_unit(&k.from_i64(2)));
        assert!(
            !NumberField::rationals().is_exceptional_unit(&NumberField::rationals().from_i64(-1))
        );
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            NumberField::new(IntPoly::from_i64s(&[-1, 0, 1])),
            Err(FieldError::NotIrreducible("-1,0,1".into()))
        );
        assert_eq!(
            NumberField::new(IntPoly::from_i64s(&[1, 2])),
            Err(FieldError::NotMonic)
        );
        let k = golden();
        assert!(matches!(
            k.parse_element("1,2,3"),
            Err(FieldError::DimensionMismatch { got: 3, degree: 2 })
        ));
        assert!(matches!(
            k.parse_element("1,z"),
            Err(FieldError::Parse { position: 2, .. })
        ));
        assert_eq!(k.parse_element("1/2,-1").unwrap().to_string(), "1/2 - a");
    }

    #[test]
    fn rendering() {
        let k = NumberField::new(IntPoly::from_i64s(&[3, 2, 3, 1])).unwrap();
        assert_eq!(k.parse_element("-1,0,-1").unwrap().to_string(), "-1 - a^2");
        assert_eq!(
            k.parse_element("0,3,1/2").unwrap().to_string(),
            "3*a + 1/2*a^2"
        );
        assert_eq!(k.zero().to_string(), "0");
    }

    fn cubic_field() -> NumberField {
        NumberField::new(IntPoly::from_i64s(&[3, 2, 3, 1])).unwrap()
    }

    fn element3() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-9i64..=9, 3)
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(x in element3(), y in element3()) {
            let k = cubic_field();
            let (x, y) = (el(&k, &x), el(&k, &y));
            prop_assert_eq!(k.norm(&k.mul(&x, &y)), k.norm(&x) * k.norm(&y));
        }

        #[test]
        fn inverse_round_trips(x in element3()) {
            let k = cubic_field();
            let x = el(&k, &x);
            prop_assume!(!x.is_zero());
            prop_assert_eq!(k.mul(&x, &k.inv(&x).unwrap()), k.one());
        }

        #[test]
        fn exceptional_units_are_symmetric(x in prop::collection::vec(-3i64..=3, 2)) {
            let k = golden();
            let x = el(&k, &x);
            let y = k.sub(&k.one(), &x);
            prop_assert_eq!(k.is_exceptional_unit(&x), k.is_exceptional_unit(&y));
        }
    }
}
