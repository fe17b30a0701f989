//! Finite point sets in the plane with exact rational coordinates.
//!
//! A plane model's convex sets are the traces of ordinary convex hulls on its
//! points. Extreme points are read off the hull directly, so the (possibly
//! exponential) geometry never has to be listed to evaluate formulas.

mod embed;
mod hull;
mod svg;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::convexity::ConvexGeometry;
use crate::formula::{OneStep, UnknownLetter, Valuation};
use crate::morphism::{check_valuation_law, truth_table, MorphismError, PointMap, TruthReport};
use crate::semantics::{AbstractModel, ConditionalModel};
use crate::worldset::WorldSet;

pub use embed::{
    choose_directions, embed, verify_embedding, Embedding, EmbeddingError, EmbeddingFailure, DEFAULT_PRECISION,
};
pub use hull::{convex_hull, in_hull_vertices, orientation, point_in_hull};
pub use svg::render_svg;

use hull::{hull_of, inside, LatticePoint};

/// Largest point set [`plane_geometry`] will list explicitly.
pub const PLANE_GEOMETRY_LIMIT: usize = 15;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error("duplicate point id `{0}`")]
    DuplicateId(String),
    #[error("points `{0}` and `{1}` have the same coordinates")]
    DuplicatePoint(String, String),
    #[error("valuation of `{0}` does not match the number of points")]
    ValuationWidth(String),
    #[error("{found} points exceed the limit of {max} for listing the geometry")]
    SizeGuard { found: usize, max: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("`{0}` is not a rational number")]
pub struct RationalParseError(pub String);

/// Parses `"n"`, `"n/d"` or a decimal literal such as `"-2.45"` exactly.
pub fn parse_rational(text: &str) -> Result<BigRational, RationalParseError> {
    let err = || RationalParseError(text.to_string());
    let s = text.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| err())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(num, den));
    }
    let (negative, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let mantissa = BigInt::from_str(&format!("{int}{frac}0")).map_err(|_| err())? / 10;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let value = BigRational::new(mantissa, scale);
    Ok(if negative { -value } else { value })
}

/// Canonical text for a rational: `"n"` or `"n/d"`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A point with exact coordinates, ordered by `x` then `y`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point2 {
    pub fn new(x: BigRational, y: BigRational) -> Point2 {
        Point2 { x, y }
    }

    pub fn from_integers(x: i64, y: i64) -> Point2 {
        Point2::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    /// Parses two coordinates with [`parse_rational`].
    pub fn parse(x: &str, y: &str) -> Result<Point2, RationalParseError> {
        Ok(Point2::new(parse_rational(x)?, parse_rational(y)?))
    }

    pub fn dot(&self, other: &Point2) -> BigRational {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn scale(&self, k: &BigRational) -> Point2 {
        Point2::new(&self.x * k, &self.y * k)
    }
}

impl fmt::Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

/// Labeled distinct points with a valuation over their indices.
#[derive(Clone, PartialEq, Eq)]
pub struct PlaneModel {
    ids: Vec<String>,
    points: Vec<Point2>,
    valuation: Valuation,
    /// The points scaled by a common denominator; hulls are computed here.
    lattice: Vec<LatticePoint>,
}

impl fmt::Debug for PlaneModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PlaneModel")
            .field("ids", &self.ids)
            .field("points", &self.points)
            .field("valuation", &self.valuation)
            .finish()
    }
}

fn to_lattice(points: &[Point2]) -> Vec<LatticePoint> {
    let scale = points
        .iter()
        .flat_map(|p| [p.x.denom(), p.y.denom()])
        .fold(BigInt::one(), |acc, d| acc.lcm(d));
    let scaled = |v: &BigRational| v.numer() * (&scale / v.denom());
    points
        .iter()
        .map(|p| LatticePoint {
            x: scaled(&p.x),
            y: scaled(&p.y),
        })
        .collect()
}

impl PlaneModel {
    pub fn new(points: Vec<(String, Point2)>, valuation: Valuation) -> Result<PlaneModel, PlaneError> {
        let mut ids = HashSet::new();
        let mut seen = std::collections::HashMap::new();
        for (id, p) in &points {
            if !ids.insert(id.as_str()) {
                return Err(PlaneError::DuplicateId(id.clone()));
            }
            if let Some(other) = seen.insert(p, id) {
                return Err(PlaneError::DuplicatePoint(other.to_string(), id.clone()));
            }
        }
        for (letter, set) in &valuation {
            if set.width() != points.len() {
                return Err(PlaneError::ValuationWidth(letter.clone()));
            }
        }
        let (ids, points): (Vec<String>, Vec<Point2>) = points.into_iter().unzip();
        let lattice = to_lattice(&points);
        Ok(PlaneModel {
            ids,
            points,
            valuation,
            lattice,
        })
    }

    /// Same points with another valuation.
    pub fn with_valuation(&self, valuation: Valuation) -> Result<PlaneModel, PlaneError> {
        for (letter, set) in &valuation {
            if set.width() != self.points.len() {
                return Err(PlaneError::ValuationWidth(letter.clone()));
            }
        }
        Ok(PlaneModel {
            ids: self.ids.clone(),
            points: self.points.clone(),
            valuation,
            lattice: self.lattice.clone(),
        })
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn points_of(&self, set: &WorldSet) -> Vec<Point2> {
        set.iter().map(|i| self.points[i].clone()).collect()
    }

    /// The points whose coordinates lie in the hull of `set`.
    pub fn hull_trace(&self, set: &WorldSet) -> WorldSet {
        let hull = self.hull_vertices(set);
        WorldSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&i| set.contains(i) || inside(&self.lattice[i], &hull)),
        )
    }

    fn hull_vertices(&self, set: &WorldSet) -> Vec<LatticePoint> {
        let pts: Vec<LatticePoint> = set.iter().map(|i| self.lattice[i].clone()).collect();
        hull_of(&pts)
    }
}

impl ConditionalModel for PlaneModel {
    fn width(&self) -> usize {
        self.points.len()
    }

    fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    fn extreme_points(&self, set: &WorldSet) -> WorldSet {
        plane_extreme_points(self, set)
    }
}

/// The members of `set` that are vertices of its hull.
///
/// Points are distinct, so a member lies outside the hull of the others
/// exactly when it is a strict vertex.
pub fn plane_extreme_points(m: &PlaneModel, set: &WorldSet) -> WorldSet {
    let hull = m.hull_vertices(set);
    WorldSet::from_indices(m.len(), set.iter().filter(|&i| hull.contains(&m.lattice[i])))
}

/// Lists the relative convexity of the points.
pub fn plane_geometry(m: &PlaneModel) -> Result<ConvexGeometry, PlaneError> {
    let n = m.len();
    if n > PLANE_GEOMETRY_LIMIT {
        return Err(PlaneError::SizeGuard {
            found: n,
            max: PLANE_GEOMETRY_LIMIT,
        });
    }
    let family = (0..1u64 << n)
        .map(|mask| WorldSet::from_mask(n, mask))
        .filter(|set| m.hull_trace(set) == *set)
        .collect();
    Ok(ConvexGeometry::from_family(m.ids.clone(), family))
}

/// Evaluates with extreme points taken from the plane hull.
pub fn eval_plane(m: &PlaneModel, f: &OneStep) -> Result<bool, UnknownLetter> {
    m.holds(f)
}

/// Evaluates each formula in the plane model and in `m`, after checking that
/// `r` is a strong morphism of models from the plane model to `m`.
pub fn compare_plane_truth(
    r: &PointMap,
    plane: &PlaneModel,
    m: &AbstractModel,
    formulas: &[OneStep],
) -> Result<TruthReport, MorphismError> {
    match verify_embedding(m.geometry(), plane, r) {
        Ok(()) => {}
        Err(EmbeddingFailure::GroundSetMismatch) => return Err(MorphismError::GroundSetMismatch),
        Err(failure) => {
            return Err(MorphismError::PreconditionFailed(format!(
                "map is not a strong morphism: {failure:?}"
            )))
        }
    }
    check_valuation_law(r, plane.valuation(), m.valuation())?;
    truth_table(plane, m, formulas)
}
