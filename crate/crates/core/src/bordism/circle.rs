//! Exact turning numbers of closed polygons and the framed circle invariant.
//!
//! The turning number is computed without any floating point: walking the
//! cyclic sequence of edge directions, we count signed crossings of the
//! positive x-ray by the direction path.  Each consecutive pair of
//! directions moves along the shorter circular arc (reversals are rejected),
//! so the crossing count is the winding number of the direction loop.

use num::rational::BigRational;
use num::{Signed, Zero};
use thiserror::Error;

/// Which side of the curve the normal framing points to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalSide {
    Left,
    Right,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircleError {
    #[error("a closed polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("edge {index} has zero length")]
    ZeroEdge { index: usize },
    #[error("edges {index} and {next} reverse direction exactly; the turn is undefined")]
    Reversal { index: usize, next: usize },
}

pub type PlanePoint = (BigRational, BigRational);

fn edge_directions(vertices: &[PlanePoint]) -> Result<Vec<PlanePoint>, CircleError> {
    if vertices.len() < 3 {
        return Err(CircleError::TooFewVertices(vertices.len()));
    }
    let n = vertices.len();
    let mut dirs = Vec::with_capacity(n);
    for i in 0..n {
        let (x0, y0) = &vertices[i];
        let (x1, y1) = &vertices[(i + 1) % n];
        let d = (x1 - x0, y1 - y0);
        if d.0.is_zero() && d.1.is_zero() {
            return Err(CircleError::ZeroEdge { index: i });
        }
        dirs.push(d);
    }
    Ok(dirs)
}

/// Signed crossing of the positive x-ray as the direction turns from `u`
/// to `v` along the shorter arc.
fn ray_crossing(u: &PlanePoint, v: &PlanePoint) -> i64 {
    let cross = &u.0 * &v.1 - &u.1 * &v.0;
    if cross.is_positive() {
        // counterclockwise: enters the upper half (ray inclusive) from below
        let enters = v.1.is_positive() || (v.1.is_zero() && v.0.is_positive());
        if u.1.is_negative() && enters {
            return 1;
        }
    } else if cross.is_negative() {
        // clockwise: leaves the upper half (ray inclusive) strictly downward
        let leaves = u.1.is_positive() || (u.1.is_zero() && u.0.is_positive());
        if leaves && v.1.is_negative() {
            return -1;
        }
    }
    0
}

/// Exact turning number of a closed polygonal curve.
pub fn turning_number(vertices: &[PlanePoint]) -> Result<i64, CircleError> {
    let dirs = edge_directions(vertices)?;
    let n = dirs.len();
    let mut total = 0i64;
    for i in 0..n {
        let u = &dirs[i];
        let v = &dirs[(i + 1) % n];
        let cross = &u.0 * &v.1 - &u.1 * &v.0;
        let dot = &u.0 * &v.0 + &u.1 * &v.1;
        if cross.is_zero() && !dot.is_positive() {
            return Err(CircleError::Reversal { index: i, next: (i + 1) % n });
        }
        total += ray_crossing(u, v);
    }
    Ok(total)
}

/// Invariant of a normally framed immersed circle: the turning number,
/// negated when the framing points right.
pub fn circle_invariant(vertices: &[PlanePoint], side: NormalSide) -> Result<i64, CircleError> {
    let sign = match side {
        NormalSide::Left => 1,
        NormalSide::Right => -1,
    };
    Ok(sign * turning_number(vertices)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn pt(x: i64, y: i64) -> PlanePoint {
        (
            BigRational::from_integer(BigInt::from(x)),
            BigRational::from_integer(BigInt::from(y)),
        )
    }

    #[test]
    fn squares() {
        let ccw = [pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)];
        assert_eq!(turning_number(&ccw).unwrap(), 1);
        let cw = [pt(0, 0), pt(0, 1), pt(1, 1), pt(1, 0)];
        assert_eq!(turning_number(&cw).unwrap(), -1);
    }

    #[test]
    fn figure_eight_is_zero() {
        let bow = [pt(1, 1), pt(1, -1), pt(-1, 1), pt(-1, -1)];
        assert_eq!(turning_number(&bow).unwrap(), 0);
    }

    #[test]
    fn repeated_square_multiplies_the_turning() {
        let mut v = Vec::new();
        for _ in 0..3 {
            v.extend_from_slice(&[pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]);
        }
        assert_eq!(turning_number(&v).unwrap(), 3);
    }

    #[test]
    fn ray_tangencies_do_not_miscount() {
        // direction dips down onto the positive ray and back up
        let upper = [pt(0, 0), pt(1, 1), pt(2, 1), pt(3, 2)];
        assert_eq!(turning_number(&upper).unwrap(), 0);
        // direction rises onto the positive ray and back down
        let lower = [pt(0, 0), pt(1, -1), pt(2, -1), pt(3, -2)];
        assert_eq!(turning_number(&lower).unwrap(), 0);
    }

    #[test]
    fn framing_side_flips_the_sign() {
        let ccw = [pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)];
        assert_eq!(circle_invariant(&ccw, NormalSide::Left).unwrap(), 1);
        assert_eq!(circle_invariant(&ccw, NormalSide::Right).unwrap(), -1);
    }

    #[test]
    fn degenerate_polygons_are_rejected() {
        assert_eq!(turning_number(&[pt(0, 0), pt(1, 0)]).unwrap_err(), CircleError::TooFewVertices(2));
        let zero = [pt(0, 0), pt(0, 0), pt(1, 1)];
        assert_eq!(turning_number(&zero).unwrap_err(), CircleError::ZeroEdge { index: 0 });
        let spike = [pt(0, 0), pt(2, 0), pt(1, 0)];
        assert!(matches!(turning_number(&spike).unwrap_err(), CircleError::Reversal { .. }));
    }
}
