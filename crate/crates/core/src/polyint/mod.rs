//! Dense integer polynomials.
//!
//! Coefficients are stored in ascending order and kept trimmed, so the
//! zero polynomial is the empty list and the degree is always
//! `len - 1`. The canonical text form is the comma-separated ascending
//! coefficient list (`"1,-42,39,1"` is `x^3 + 39x^2 - 42x + 1`).

mod irreducible;
mod newton;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

pub use irreducible::is_irreducible;
pub use newton::{newton_polygon, NewtonPolygon, Segment};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("polynomial is constant")]
    Constant,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("rescaled polynomial has non-integral coefficients")]
    NonIntegralResult,
    #[error("invalid rescaling parameters: {0}")]
    InvalidRescale(&'static str),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x - t`
    pub fn linear_root(t: BigInt) -> Self {
        Self::new(vec![-t, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Max absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    pub fn evaluate(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn evaluate_i64(&self, t: i64) -> BigInt {
        self.evaluate(&BigInt::from(t))
    }

    /// Value mod `m`, in `[0, m)`.
    pub fn evaluate_mod(&self, t: &BigInt, m: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| (acc * t + c).mod_floor(m))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * i)
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Division by a monic divisor; exact over the integers.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = std::mem::take(&mut rem[i]);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs[..dd].iter().enumerate() {
                rem[i - dd + j] -= &c * dc;
            }
            quot[i - dd] = c;
        }
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// `m^{-d} g(a x + b)`, where `a = m` keeps the result monic.
    pub fn affine_rescale(&self, a: &BigInt, b: &BigInt, m: &BigInt) -> Result<IntPoly, PolyError> {
        if m.is_zero() {
            return Err(PolyError::InvalidRescale("m must be nonzero"));
        }
        if a != m {
            return Err(PolyError::InvalidRescale("a must equal m"));
        }
        if !self.is_monic() {
            return Err(PolyError::NonMonic);
        }
        let d = self.degree().expect("monic polynomial is nonzero");
        let inner = IntPoly::new(vec![b.clone(), a.clone()]);
        let composed = self.coeffs.iter().rev().fold(IntPoly::zero(), |acc, c| {
            &(&acc * &inner) + &IntPoly::constant(c.clone())
        });
        let scale = num_traits::pow(m.clone(), d);
        let mut out = Vec::with_capacity(d + 1);
        for c in composed.coeffs {
            let (q, r) = c.div_rem(&scale);
            if !r.is_zero() {
                return Err(PolyError::NonIntegralResult);
            }
            out.push(q);
        }
        Ok(IntPoly::new(out))
    }

    /// Canonical ascending coefficient list; `"0"` for the zero polynomial.
    pub fn to_csv(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Conventional descending rendering in the given variable.
    pub fn render(&self, var: &str) -> String {
        render_terms(self.coeffs.iter().cloned().enumerate().rev(), var)
    }
}

/// Renders `(power, coefficient)` terms, highest first, as `x^2 - 3x + 1`.
pub(crate) fn render_terms(terms: impl Iterator<Item = (usize, BigInt)>, var: &str) -> String {
    let mut out = String::new();
    for (i, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_csv())
    }
}

impl FromStr for IntPoly {
    type Err = PolyError;

    fn from_str(text: &str) -> Result<Self, PolyError> {
        let mut coeffs = Vec::new();
        let mut offset = 0;
        let mut last_offset = 0;
        for field in text.split(',') {
            let trimmed = field.trim();
            let position = offset + (field.len() - field.trim_start().len());
            if trimmed.is_empty() {
                return Err(PolyError::Parse {
                    position,
                    message: "empty coefficient".into(),
                });
            }
            let c = trimmed.parse::<BigInt>().map_err(|_| PolyError::Parse {
                position,
                message: format!("invalid integer {trimmed:?}"),
            })?;
            coeffs.push(c);
            last_offset = position;
            offset += field.len() + 1;
        }
        if coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            return Err(PolyError::Parse {
                position: last_offset,
                message: "leading coefficient is zero".into(),
            });
        }
        Ok(IntPoly::new(coeffs))
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub(crate) fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn check_monic_nonconstant(g: &IntPoly) -> Result<usize, PolyError> {
    match g.degree() {
        None => Err(PolyError::ZeroPolynomial),
        Some(_) if !g.is_monic() => Err(PolyError::NonMonic),
        Some(0) => Err(PolyError::Constant),
        Some(d) => Ok(d),
    }
}

/// `Res(g, h) = prod h(alpha_i)` over the roots of the monic `g`, as the
/// Sylvester determinant.
pub fn resultant(g: &IntPoly, h: &IntPoly) -> Result<BigInt, PolyError> {
    let m = check_monic_nonconstant(g)?;
    let n = match h.degree() {
        None => return Ok(BigInt::zero()),
        Some(n) => n,
    };
    let size = m + n;
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    // descending coefficients, shifted one column per row
    for i in 0..n {
        for (j, c) in g.coeffs.iter().rev().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in h.coeffs.iter().rev().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    Ok(bareiss_determinant(rows))
}

/// `(-1)^{d(d-1)/2} Res(g, g')` for monic `g`.
pub fn discriminant(g: &IntPoly) -> Result<BigInt, PolyError> {
    let d = check_monic_nonconstant(g)?;
    let r = resultant(g, &g.derivative())?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -r } else { r })
}

/// A root of `g` modulo a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RootModP {
    pub residue: u64,
    pub simple: bool,
}

/// All roots of `g` in `F_p` by exhaustive scan.
pub fn roots_mod_p(g: &IntPoly, p: u32) -> Vec<RootModP> {
    let pm = BigInt::from(p);
    let dg = g.derivative();
    (0..p as u64)
        .filter_map(|r| {
            let t = BigInt::from(r);
            if !g.evaluate_mod(&t, &pm).is_zero() {
                return None;
            }
            let simple = !dg.evaluate_mod(&t, &pm).is_zero();
            Some(RootModP { residue: r, simple })
        })
        .collect()
}

/// Coefficients reduced into `[0, p)`, for small-prime work.
pub(crate) fn reduce_mod_small(g: &IntPoly, p: u64) -> Vec<u64> {
    let pm = BigInt::from(p);
    g.coeffs
        .iter()
        .map(|c| c.mod_floor(&pm).to_u64().expect("residue below p"))
        .collect()
}
