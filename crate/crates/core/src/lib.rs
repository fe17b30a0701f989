//! Preferential conditional logic over finite convex geometries.
//!
//! The crate parses one-step conditional formulas, evaluates them in models
//! built on finite convex geometries, checks morphisms between geometries,
//! decomposes geometries into linear orders and realizes every finite
//! geometry as a finite point set in the plane with exact rational
//! coordinates.

pub mod convexity;
pub mod decomposition;
pub mod formula;
pub mod morphism;
pub mod pipeline;
pub mod planar;
pub mod semantics;
pub mod solver;
pub mod worldset;

pub use convexity::{ConvexGeometry, GeometryError, Poset};
pub use decomposition::{decompose, LinearOrder};
pub use formula::{parse, OneStep, ParsedFormula, Prop, Valuation};
pub use morphism::{check_morphism, PointMap};
pub use planar::{PlaneModel, Point2};
pub use semantics::{AbstractModel, Clause, ConditionalModel};
pub use worldset::WorldSet;
