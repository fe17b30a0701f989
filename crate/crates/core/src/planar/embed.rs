//! Placement of a finite convex geometry on rays in the plane.
//!
//! Each of the `m` chains of a decomposition gets a direction `d_j`; world
//! `w` is placed on every ray at distance `s + r_j(w)`, where `r_j(w)` is its
//! rank in chain `j` counted from the top. The map sending each placed point
//! back to its world is a strong morphism onto the geometry, and
//! [`verify_embedding`] re-checks this exactly.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};
use thiserror::Error;

use super::{point_in_hull, PlaneModel, Point2};
use crate::convexity::ConvexGeometry;
use crate::decomposition::{decompose, DecompositionError, LinearOrder};
use crate::formula::Valuation;
use crate::morphism::PointMap;
use crate::worldset::WorldSet;

/// Default bound on the denominators of the half-angle tangents.
pub const DEFAULT_PRECISION: u64 = 10_000;

const MAX_ATTEMPTS: usize = 16;

/// Largest ground set whose embedding [`verify_embedding`] will check.
const VERIFY_LIMIT: usize = 20;

/// Why a map from plane points to a geometry is not a strong morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbeddingFailure {
    /// The universal image of the hull trace of `preimage_of` is not convex.
    NotMorphism { preimage_of: WorldSet, image: WorldSet },
    /// A convex set that is not the universal image of any hull trace.
    NotStrong { missing: WorldSet },
    /// The map does not go from the model's points to the geometry's worlds.
    GroundSetMismatch,
    TooLarge { worlds: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error("chain does not order the ground set")]
    ChainMismatch,
    #[error("embedding failed verification: {0:?}")]
    Verification(EmbeddingFailure),
}

/// The output of [`embed`].
#[derive(Clone, Debug)]
pub struct Embedding {
    pub chains: Vec<LinearOrder>,
    pub directions: Vec<Point2>,
    /// The safety margin `s`.
    pub safety: BigRational,
    /// `ranks[j][w]`, counted from the top of chain `j`.
    pub ranks: Vec<Vec<usize>>,
    /// Points `w@j`, chain-major, without a valuation.
    pub model: PlaneModel,
    /// Sends each point to the world it represents.
    pub owner: PointMap,
    /// Denominator bound that produced the directions.
    pub precision: u64,
}

impl Embedding {
    /// Distance of each point from the origin along its ray.
    pub fn radii(&self) -> Vec<Vec<BigRational>> {
        self.ranks
            .iter()
            .map(|ranks| ranks.iter().map(|&r| &self.safety + BigRational::from_integer(r.into())).collect())
            .collect()
    }
}

fn rational_near(value: f64, precision: u64) -> BigRational {
    let scaled = (value * precision as f64).round();
    let numer = BigInt::from_f64(scaled).expect("finite tangent");
    BigRational::new(numer, BigInt::from(precision))
}

/// `m` exact rational unit vectors close to the angles `2πj/m`, `j = 1..m`.
pub fn choose_directions(m: usize, precision: u64) -> Vec<Point2> {
    assert!(m >= 2, "at least two directions are needed");
    let mut precision = precision.max(1);
    loop {
        let dirs: Vec<Point2> = (1..=m).map(|j| direction(j, m, precision)).collect();
        let distinct = (0..m).all(|i| (i + 1..m).all(|k| dirs[i] != dirs[k]));
        if distinct && point_in_hull(&Point2::from_integers(0, 0), &dirs) {
            return dirs;
        }
        precision = precision.saturating_mul(2);
    }
}

fn direction(j: usize, m: usize, precision: u64) -> Point2 {
    if j == m {
        return Point2::from_integers(1, 0);
    }
    if 2 * j == m {
        return Point2::from_integers(-1, 0);
    }
    let half = PI * j as f64 / m as f64;
    let t = rational_near(half.tan(), precision);
    let one = BigRational::one();
    let denom = &one + &t * &t;
    Point2::new((&one - &t * &t) / &denom, (&t + &t) / denom)
}

/// `max(0, c) · n / (1 - c)` with `c` the largest pairwise dot product.
fn safety_margin(dirs: &[Point2], n: usize) -> BigRational {
    let mut c: Option<BigRational> = None;
    for i in 0..dirs.len() {
        for k in 0..dirs.len() {
            if i != k {
                let d = dirs[i].dot(&dirs[k]);
                if c.as_ref().is_none_or(|c| d > *c) {
                    c = Some(d);
                }
            }
        }
    }
    let c = c.expect("at least two directions");
    if !c.is_positive() {
        return BigRational::zero();
    }
    BigRational::from_integer(n.into()) * &c / (BigRational::one() - c)
}

/// Places `g` in the plane. Without `chains`, a decomposition is computed; a
/// single chain is used twice.
pub fn embed(g: &ConvexGeometry, chains: Option<&[LinearOrder]>, precision: u64) -> Result<Embedding, EmbeddingError> {
    if !g.contains_empty() {
        return Err(DecompositionError::EmptySetRequired.into());
    }
    let n = g.size();
    let mut chains = match chains {
        Some(c) => c.to_vec(),
        None => decompose(g)?,
    };
    if chains.iter().any(|c| c.len() != n) {
        return Err(EmbeddingError::ChainMismatch);
    }
    if chains.is_empty() {
        chains.push(LinearOrder::from_bottom((0..n).collect()).expect("identity order"));
    }
    if chains.len() == 1 {
        chains.push(chains[0].clone());
    }
    let m = chains.len();
    let ranks: Vec<Vec<usize>> = chains.iter().map(LinearOrder::ranks_from_top).collect();
    let mut precision = precision.max(1);
    let mut last_failure = None;
    for _ in 0..MAX_ATTEMPTS {
        let directions = choose_directions(m, precision);
        let safety = safety_margin(&directions, n);
        let mut points = Vec::with_capacity(m * n);
        let mut image = Vec::with_capacity(m * n);
        for (j, d) in directions.iter().enumerate() {
            for w in 0..n {
                let radius = &safety + BigRational::from_integer(ranks[j][w].into());
                points.push((format!("{}@{}", g.worlds()[w], j + 1), d.scale(&radius)));
                image.push(w);
            }
        }
        let model = PlaneModel::new(points, Valuation::new()).expect("embedded points are distinct");
        let owner = PointMap::new(model.ids().to_vec(), g.worlds().to_vec(), image).expect("owners are worlds");
        match verify_embedding(g, &model, &owner) {
            Ok(()) => {
                return Ok(Embedding {
                    chains,
                    directions,
                    safety,
                    ranks,
                    model,
                    owner,
                    precision,
                })
            }
            Err(failure) => last_failure = Some(failure),
        }
        precision = precision.saturating_mul(2);
    }
    Err(EmbeddingError::Verification(last_failure.expect("at least one attempt")))
}

/// Checks that `r` is a strong morphism from the relative convexity of the
/// model's points onto `g`.
///
/// For `Y ⊆ W` let `T(Y)` be the hull trace of `r⁻¹(Y)`. Every convex `C`
/// with `∀r(C) = Y` contains `T(Y)`, so `∀r(T(Y)) = Y` for every `Y` that is
/// an image at all. Hence `r` is a morphism iff every `∀r(T(Y))` is convex,
/// and strong iff in addition `D = ∀r(T(D))` for every convex `D`.
pub fn verify_embedding(g: &ConvexGeometry, model: &PlaneModel, r: &PointMap) -> Result<(), EmbeddingFailure> {
    if r.source() != model.ids() || r.target() != g.worlds() {
        return Err(EmbeddingFailure::GroundSetMismatch);
    }
    let n = g.size();
    if n > VERIFY_LIMIT {
        return Err(EmbeddingFailure::TooLarge { worlds: n });
    }
    let trace_image = |y: &WorldSet| r.universal_image(&model.hull_trace(&r.preimage(y)));
    for mask in 0..1u64 << n {
        let y = WorldSet::from_mask(n, mask);
        let image = trace_image(&y);
        if !g.is_convex(&image) {
            return Err(EmbeddingFailure::NotMorphism { preimage_of: y, image });
        }
    }
    for d in g.sets() {
        if trace_image(d) != *d {
            return Err(EmbeddingFailure::NotStrong { missing: d.clone() });
        }
    }
    Ok(())
}
