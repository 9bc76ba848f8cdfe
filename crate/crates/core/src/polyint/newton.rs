use num_rational::Rational64;
use serde::Serialize;

use super::{IntPoly, PolyError};
use crate::padic::int_valuation;

/// One edge of a Newton polygon: `length` roots of valuation `slope`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Segment {
    #[serde(serialize_with = "ser_ratio")]
    pub slope: Rational64,
    pub length: usize,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Lower convex hull of `(i, v_p(a_i))`, reported as root valuations.
///
/// Slopes are the negated hull slopes, sorted strictly increasing.
/// `zero_roots` counts the factor `x^k` stripped before the hull is taken.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub prime: u32,
    pub segments: Vec<Segment>,
    pub zero_roots: usize,
}

impl NewtonPolygon {
    pub fn total_length(&self) -> usize {
        self.segments.iter().map(|s| s.length).sum()
    }
}

pub fn newton_polygon(g: &IntPoly, p: u32) -> Result<NewtonPolygon, PolyError> {
    if g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let points: Vec<(i64, i64)> = g
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| int_valuation(c, p).map(|v| (i as i64, v as i64)))
        .collect();
    let zero_roots = points[0].0 as usize;

    // monotone chain, dropping collinear interior points
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }

    let mut segments: Vec<Segment> = hull
        .windows(2)
        .map(|w| {
            let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            Segment {
                slope: Rational64::new(-dy, dx),
                length: dx as usize,
            }
        })
        .collect();
    segments.reverse();
    Ok(NewtonPolygon {
        prime: p,
        segments,
        zero_roots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seg(num: i64, den: i64, length: usize) -> Segment {
        Segment {
            slope: Rational64::new(num, den),
            length,
        }
    }

    #[test]
    fn examples() {
        let np = newton_polygon(&IntPoly::from_i64s(&[27, 3, 1, 1]), 3).unwrap();
        assert_eq!(np.segments, vec![seg(0, 1, 1), seg(1, 1, 1), seg(2, 1, 1)]);
        let np = newton_polygon(&IntPoly::from_i64s(&[-3, 1]), 3).unwrap();
        assert_eq!(np.segments, vec![seg(1, 1, 1)]);
        let np = newton_polygon(&IntPoly::from_i64s(&[-9, 0, 1]), 3).unwrap();
        assert_eq!(np.segments, vec![seg(1, 1, 2)]);
        assert_eq!(
            newton_polygon(&IntPoly::zero(), 3),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn fractional_slope_and_zero_roots() {
        // x^2 (x^2 - 3): two roots of valuation 1/2 plus a double root at 0
        let np = newton_polygon(&IntPoly::from_i64s(&[0, 0, -3, 0, 1]), 3).unwrap();
        assert_eq!(np.segments, vec![seg(1, 2, 2)]);
        assert_eq!(np.zero_roots, 2);
    }

    #[test]
    fn staircase_pattern_has_unit_segments() {
        // v_3(a_{d-i}) = i(i-1)/2 gives slopes 0, 1, ..., d-1
        for d in 1..=7usize {
            let mut c = vec![0i64; d + 1];
            for i in 0..=d {
                let v = (i * i.saturating_sub(1) / 2) as u32;
                c[d - i] = 3i64.pow(v) * if i % 2 == 0 { 1 } else { 2 };
            }
            let np = newton_polygon(&IntPoly::from_i64s(&c), 3).unwrap();
            let expected: Vec<Segment> = (0..d as i64).map(|s| seg(s, 1, 1)).collect();
            assert_eq!(np.segments, expected, "d = {d}");
        }
    }

    proptest! {
        #[test]
        fn lengths_cover_nonzero_roots(c in prop::collection::vec(-30i64..=30, 2..8)) {
            let g = IntPoly::from_i64s(&c);
            prop_assume!(!g.is_zero());
            let np = newton_polygon(&g, 3).unwrap();
            prop_assert_eq!(np.total_length() + np.zero_roots, g.degree().unwrap());
            for w in np.segments.windows(2) {
                prop_assert!(w[0].slope < w[1].slope);
            }
        }
    }
}
