//! Exact convex hulls of finite point sets.
//!
//! The algorithms run on any exact ordered ring. Plane models use them on
//! integer coordinates scaled by a common denominator, which avoids the gcd
//! work of rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Zero};

use super::Point2;

pub(crate) trait Planar: Clone + Ord {
    type Coord: Clone + Ord + Num;

    fn x(&self) -> &Self::Coord;
    fn y(&self) -> &Self::Coord;
}

impl Planar for Point2 {
    type Coord = BigRational;

    fn x(&self) -> &BigRational {
        &self.x
    }

    fn y(&self) -> &BigRational {
        &self.y
    }
}

/// A point with integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct LatticePoint {
    pub(crate) x: BigInt,
    pub(crate) y: BigInt,
}

impl Planar for LatticePoint {
    type Coord = BigInt;

    fn x(&self) -> &BigInt {
        &self.x
    }

    fn y(&self) -> &BigInt {
        &self.y
    }
}

fn turn<P: Planar>(a: &P, b: &P, c: &P) -> P::Coord {
    (b.x().clone() - a.x().clone()) * (c.y().clone() - a.y().clone())
        - (b.y().clone() - a.y().clone()) * (c.x().clone() - a.x().clone())
}

/// `(b - a) × (c - a)`: positive for a left turn.
pub fn orientation(a: &Point2, b: &Point2, c: &Point2) -> BigRational {
    turn(a, b, c)
}

pub(crate) fn hull_of<P: Planar>(points: &[P]) -> Vec<P> {
    let mut pts: Vec<P> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let zero = P::Coord::zero();
    let mut lower: Vec<P> = Vec::with_capacity(pts.len());
    for p in &pts {
        while lower.len() >= 2 && turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= zero {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<P> = Vec::with_capacity(pts.len());
    for p in pts.iter().rev() {
        while upper.len() >= 2 && turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= zero {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Strict hull vertices in counter-clockwise order, starting from the
/// lexicographically smallest point. Collinear boundary points are dropped;
/// a degenerate hull comes back as one point or a segment's two endpoints.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    hull_of(points)
}

fn on_segment<P: Planar>(p: &P, a: &P, b: &P) -> bool {
    let between = |v: &P::Coord, s: &P::Coord, t: &P::Coord| (s <= v && v <= t) || (t <= v && v <= s);
    turn(a, b, p).is_zero() && between(p.x(), a.x(), b.x()) && between(p.y(), a.y(), b.y())
}

pub(crate) fn inside<P: Planar>(p: &P, hull: &[P]) -> bool {
    match hull {
        [] => false,
        [a] => p == a,
        [a, b] => on_segment(p, a, b),
        _ => {
            let zero = P::Coord::zero();
            (0..hull.len()).all(|i| turn(&hull[i], &hull[(i + 1) % hull.len()], p) >= zero)
        }
    }
}

/// Membership of `p` in a hull returned by [`convex_hull`]; boundary counts.
pub fn in_hull_vertices(p: &Point2, hull: &[Point2]) -> bool {
    inside(p, hull)
}

/// Whether `p` lies in the convex hull of `points`.
pub fn point_in_hull(p: &Point2, points: &[Point2]) -> bool {
    in_hull_vertices(p, &convex_hull(points))
}
