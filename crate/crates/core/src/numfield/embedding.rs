//! Certified embeddings of `Z[a]` into `Z_p`.
//!
//! Roots of `g` in `Z_p` are found by breadth-first lifting of residue
//! classes. A class `r mod p^k` is certified as soon as
//! `v(g(r)) > 2 v(g'(r))` and `k > v(g'(r))`: it then holds exactly one root.
//! Every root of a squarefree `g` is certified by level `v_p(disc g) + 1`,
//! so the certified count at that level is the exact number of roots in
//! `Z_p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::{FieldElement, FieldError, NumberField};
use crate::padic::{int_valuation, is_prime, mod_inverse, pow_big, PadicInt, DEFAULT_PRECISION};
use crate::polyint::{self, IntPoly};

/// Splitting decisions never raise the precision beyond this.
pub const PRECISION_CAP: u32 = 64;

/// Hensel data recorded when a root's residue class was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HenselMargin {
    /// Lifting level `k` of the certified class `r mod p^k`.
    pub level: u32,
    /// `v_p(g(r))`; `None` when `r` is an exact integer root.
    pub value_valuation: Option<u32>,
    pub derivative_valuation: u32,
}

/// The `d` roots of `g` in `Z_p`, sorted by their base-p digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingSet {
    pub prime: u32,
    pub precision: u32,
    pub roots: Vec<PadicInt>,
    pub margins: Vec<HenselMargin>,
    /// Minimal `v_p(r_i - r_j)`; `None` in degree 1.
    pub separation: Option<u32>,
    pub disc_valuation: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Splitting {
    Split(EmbeddingSet),
    /// Fewer than `d` roots in `Z_p`.
    NotSplit {
        roots_found: usize,
    },
    /// The precision cannot separate the roots; `required` would.
    Inconclusive {
        required: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitDecision {
    Split,
    NotSplit,
    Inconclusive,
}

impl Splitting {
    pub fn decision(&self) -> SplitDecision {
        match self {
            Splitting::Split(_) => SplitDecision::Split,
            Splitting::NotSplit { .. } => SplitDecision::NotSplit,
            Splitting::Inconclusive { .. } => SplitDecision::Inconclusive,
        }
    }
}

/// Roots of the monic irreducible `g` in `Z_p` at precision `precision`.
pub fn padic_roots(g: &IntPoly, p: u32, precision: u32) -> Result<Splitting, FieldError> {
    let field = NumberField::new(g.clone())?;
    lift_roots(field.defining(), p, precision)
}

/// [`padic_roots`] with precision `max(8, v_p(disc) + 2)`, capped at
/// [`PRECISION_CAP`].
pub fn splitting(g: &IntPoly, p: u32) -> Result<Splitting, FieldError> {
    let field = NumberField::new(g.clone())?;
    split_field(&field, p)
}

pub(crate) fn split_field(field: &NumberField, p: u32) -> Result<Splitting, FieldError> {
    let g = field.defining();
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    let disc = polyint::discriminant(g)?;
    let delta = int_valuation(&disc, p).expect("irreducible polynomials are separable");
    let precision = DEFAULT_PRECISION.max(delta + 2);
    if precision > PRECISION_CAP {
        return Ok(Splitting::Inconclusive {
            required: precision,
        });
    }
    lift_roots(g, p, precision)
}

/// Whether `p` splits completely in `Q[x]/(g)`.
pub fn splits_completely(g: &IntPoly, p: u32) -> Result<SplitDecision, FieldError> {
    Ok(splitting(g, p)?.decision())
}

/// Branch lifting for a monic separable `g`.
pub(crate) fn lift_roots(g: &IntPoly, p: u32, precision: u32) -> Result<Splitting, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    let d = g.degree().expect("monic");
    let disc = polyint::discriminant(g)?;
    let delta = int_valuation(&disc, p).expect("separable polynomial");
    if precision < delta + 2 {
        return Ok(Splitting::Inconclusive {
            required: delta + 2,
        });
    }
    let dg = g.derivative();
    let pb = BigInt::from(p);

    let mut live: Vec<BigInt> = (0..p)
        .map(BigInt::from)
        .filter(|r| g.evaluate_mod(r, &pb).is_zero())
        .collect();
    let mut certified: Vec<(BigInt, HenselMargin)> = Vec::new();
    let last_level = delta + 1;
    for level in 1..=last_level {
        let modulus = BigInt::from(pow_big(p, level));
        let next_modulus = &modulus * &pb;
        let mut next = Vec::new();
        for r in live {
            let value_valuation = int_valuation(&g.evaluate(&r), p);
            let derivative_valuation = int_valuation(&dg.evaluate(&r), p);
            if let Some(e) = derivative_valuation {
                let hensel = value_valuation.is_none_or(|v| v > 2 * e);
                if hensel && level > e {
                    certified.push((
                        r,
                        HenselMargin {
                            level,
                            value_valuation,
                            derivative_valuation: e,
                        },
                    ));
                    continue;
                }
            }
            if level < last_level {
                for t in 0..p {
                    let child = &r + &modulus * t;
                    if g.evaluate_mod(&child, &next_modulus).is_zero() {
                        next.push(child);
                    }
                }
            }
        }
        live = next;
    }

    if certified.len() != d {
        return Ok(Splitting::NotSplit {
            roots_found: certified.len(),
        });
    }

    let mut pairs: Vec<(PadicInt, HenselMargin)> = certified
        .into_iter()
        .map(|(r, m)| {
            (
                refine_root(g, &dg, r, m.derivative_valuation, p, precision),
                m,
            )
        })
        .collect();
    pairs.sort_by_key(|(root, _)| root.digits());
    let (roots, margins): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();

    let separation = roots
        .iter()
        .enumerate()
        .flat_map(|(i, a)| roots[i + 1..].iter().map(move |b| (a - b).valuation()))
        .map(|v| v.lower_bound())
        .min();
    debug_assert!(separation.is_none_or(|s| s <= delta));

    Ok(Splitting::Split(EmbeddingSet {
        prime: p,
        precision,
        roots,
        margins,
        separation,
        disc_valuation: delta,
    }))
}

/// Newton iteration from a certified approximation until the root is known
/// modulo `p^precision`: `v(root - r) = v(g(r)) - e` once Hensel holds.
fn refine_root(
    g: &IntPoly,
    dg: &IntPoly,
    mut r: BigInt,
    e: u32,
    p: u32,
    precision: u32,
) -> PadicInt {
    let target = precision + e;
    let work = BigInt::from(pow_big(p, target + 1));
    let pe = BigInt::from(pow_big(p, e));
    loop {
        let value = g.evaluate(&r);
        if int_valuation(&value, p).is_none_or(|v| v >= target) {
            break;
        }
        let unit = dg.evaluate(&r) / &pe;
        let inv = mod_inverse(&unit, &work).expect("g'(r)/p^e is a unit");
        let step = (value / &pe * inv).mod_floor(&work);
        r = (r - step).mod_floor(&work);
    }
    PadicInt::reduce(p, precision, &r)
}

/// Images of `x` under every embedding in `set`.
pub fn embed(
    field: &NumberField,
    x: &FieldElement,
    set: &EmbeddingSet,
) -> Result<Vec<PadicInt>, FieldError> {
    let coords = x
        .coords()
        .iter()
        .map(|c| PadicInt::from_ratio(set.prime, set.precision, c.numer(), c.denom()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| FieldError::DenominatorNotCoprime(set.prime))?;
    debug_assert_eq!(coords.len(), field.degree());
    Ok(set
        .roots
        .iter()
        .map(|root| {
            coords
                .iter()
                .rev()
                .fold(root.sibling(&BigInt::zero()), |acc, c| &(&acc * root) + c)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn residues_mod_p(set: &EmbeddingSet) -> Vec<u32> {
        set.roots.iter().map(|r| r.digits()[0]).collect()
    }

    #[test]
    fn quadratic_with_two_roots_at_three() {
        let Splitting::Split(set) = padic_roots(&poly(&[-3, 1, 1]), 3, 6).unwrap() else {
            panic!("x^2 + x - 3 splits at 3");
        };
        assert_eq!(residues_mod_p(&set), vec![0, 2]);
        let g = poly(&[-3, 1, 1]);
        for r in &set.roots {
            assert!(g.evaluate_mod(&r.lift(), &r.modulus()).is_zero());
        }
    }

    #[test]
    fn five_splits_in_the_cubic_field() {
        let Splitting::Split(set) = padic_roots(&poly(&[1, 1, -4, 1]), 5, 6).unwrap() else {
            panic!("5 splits");
        };
        assert_eq!(residues_mod_p(&set), vec![2, 3, 4]);
    }

    #[test]
    fn inert_and_ramified_cases() {
        assert_eq!(
            padic_roots(&poly(&[-1, -1, 1]), 3, 8).unwrap(),
            Splitting::NotSplit { roots_found: 0 }
        );
        // x^2 + x + 1 = (x - 1)^2 mod 3, ramified
        assert_eq!(
            splits_completely(&poly(&[1, 1, 1]), 3).unwrap(),
            SplitDecision::NotSplit
        );
        assert_eq!(
            splits_completely(&poly(&[1, 1, -4, 1]), 3).unwrap(),
            SplitDecision::NotSplit
        );
    }

    #[test]
    fn repeated_residue_still_splits() {
        // the cubic reduces to (x + 1)^3 mod 3 yet splits after rescaling
        let g = poly(&[1, -42, 39, 1]);
        assert_eq!(splits_completely(&g, 3).unwrap(), SplitDecision::Split);
        let Splitting::Split(set) = splitting(&g, 3).unwrap() else {
            unreachable!()
        };
        let mod9: Vec<u32> = set
            .roots
            .iter()
            .map(|r| r.digits()[0] + 3 * r.digits()[1])
            .collect();
        assert_eq!(mod9, vec![2, 5, 8]);
    }

    #[test]
    fn degree_one_always_splits() {
        assert_eq!(
            splits_completely(&poly(&[-1, 1]), 7).unwrap(),
            SplitDecision::Split
        );
    }

    #[test]
    fn low_precision_is_inconclusive() {
        // disc(x^2 - 3x + 9) = -27
        assert_eq!(
            padic_roots(&poly(&[9, -3, 1]), 3, 4).unwrap(),
            Splitting::Inconclusive { required: 5 }
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(
            padic_roots(&poly(&[-1, 0, 1]), 3, 8),
            Err(FieldError::NotIrreducible(_))
        ));
        assert_eq!(
            splits_completely(&poly(&[-3, 1, 1]), 4),
            Err(FieldError::NotPrime(4))
        );
    }

    #[test]
    fn embeddings_of_generator_and_constants() {
        let k = NumberField::new(poly(&[3, 2, 3, 1])).unwrap();
        let Splitting::Split(set) = split_field(&k, 3).unwrap() else {
            panic!("3 splits in z^3 + 3z^2 + 2z + 3");
        };
        assert_eq!(embed(&k, &k.generator(), &set).unwrap(), set.roots);
        let c = embed(&k, &k.from_i64(5), &set).unwrap();
        assert!(c.iter().all(|x| x.lift() == BigInt::from(5)));
        let third = k
            .element(vec![BigRational::new(1.into(), 3.into())])
            .unwrap();
        assert_eq!(
            embed(&k, &third, &set),
            Err(FieldError::DenominatorNotCoprime(3))
        );
    }

    #[test]
    fn product_of_images_is_the_norm() {
        let k = NumberField::new(poly(&[3, 2, 3, 1])).unwrap();
        let Splitting::Split(set) = split_field(&k, 3).unwrap() else {
            unreachable!()
        };
        // u = -(z^2 + 1)^2
        let w = k.parse_element("1,0,1").unwrap();
        let u = k.neg(&k.mul(&w, &w));
        let images = embed(&k, &u, &set).unwrap();
        let product = images
            .iter()
            .skip(1)
            .fold(images[0].clone(), |acc, x| &acc * x);
        let norm = k.norm(&u);
        assert_eq!(norm, BigRational::from_integer((-1).into()));
        assert_eq!(product, product.sibling(&norm.to_integer()));
    }

    fn cubic() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-12i64..=12, 3)
    }

    proptest! {
        #[test]
        fn embedding_is_a_ring_homomorphism(x in cubic(), y in cubic()) {
            let k = NumberField::new(poly(&[3, 2, 3, 1])).unwrap();
            let Splitting::Split(set) = split_field(&k, 3).unwrap() else { unreachable!() };
            let to = |c: &[i64]| k.element(c.iter().map(|&v| BigRational::from_integer(v.into())).collect()).unwrap();
            let (x, y) = (to(&x), to(&y));
            let ex = embed(&k, &x, &set).unwrap();
            let ey = embed(&k, &y, &set).unwrap();
            let exy = embed(&k, &k.mul(&x, &y), &set).unwrap();
            let sum = embed(&k, &k.add(&x, &y), &set).unwrap();
            for i in 0..3 {
                prop_assert_eq!(&exy[i], &(&ex[i] * &ey[i]));
                prop_assert_eq!(&sum[i], &(&ex[i] + &ey[i]));
            }
        }
    }
}
