//! Finite convex geometries given as explicit families of convex sets.

mod enumerate;
mod poset;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::worldset::WorldSet;

pub use enumerate::{enumerate_geometries, Enumeration, MAX_ENUMERATION_SIZE};
pub use poset::{Poset, PosetError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("world `{0}` is listed twice")]
    DuplicateWorld(String),
    #[error("set over {found} positions in a ground set of {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("the full ground set is not convex")]
    MissingGround,
    #[error("intersection of convex sets {first:?} and {second:?} is not convex")]
    NotIntersectionClosed { first: WorldSet, second: WorldSet },
    #[error("anti-exchange fails for convex set {convex:?} and worlds {x}, {y}")]
    AntiExchange { convex: WorldSet, x: usize, y: usize },
    #[error("geometries are over different ground sets")]
    GroundSetMismatch,
    #[error("enumeration is bounded at {max} worlds, got {requested}")]
    BoundExceeded { requested: usize, max: usize },
}

/// A finite ground set of named worlds together with its convex sets.
///
/// The family is kept sorted and deduplicated, so structural equality is
/// equality of labels and families.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConvexGeometry {
    worlds: Vec<String>,
    sets: Vec<WorldSet>,
}

impl fmt::Debug for ConvexGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<Vec<&str>> = self
            .sets
            .iter()
            .map(|s| s.iter().map(|i| self.worlds[i].as_str()).collect())
            .collect();
        f.debug_struct("ConvexGeometry")
            .field("worlds", &self.worlds)
            .field("sets", &sets)
            .finish()
    }
}

impl ConvexGeometry {
    /// Checks the convex-geometry axioms and builds the geometry.
    ///
    /// The ground set must be convex, the family closed under pairwise
    /// intersection, and anti-exchange must hold. The empty set may or may
    /// not be a member.
    pub fn validate(worlds: Vec<String>, family: Vec<WorldSet>) -> Result<ConvexGeometry, GeometryError> {
        let n = worlds.len();
        let mut seen = HashSet::new();
        for w in &worlds {
            if !seen.insert(w.as_str()) {
                return Err(GeometryError::DuplicateWorld(w.clone()));
            }
        }
        for set in &family {
            if set.width() != n {
                return Err(GeometryError::WidthMismatch { expected: n, found: set.width() });
            }
        }
        let geometry = ConvexGeometry::from_family(worlds, family);
        if !geometry.sets.iter().any(WorldSet::is_full) {
            return Err(GeometryError::MissingGround);
        }
        geometry.check_intersections()?;
        geometry.check_anti_exchange()?;
        Ok(geometry)
    }

    /// Sorts and deduplicates without checking the axioms.
    pub(crate) fn from_family(worlds: Vec<String>, family: Vec<WorldSet>) -> ConvexGeometry {
        let sets: BTreeSet<WorldSet> = family.into_iter().collect();
        ConvexGeometry {
            worlds,
            sets: sets.into_iter().collect(),
        }
    }

    /// Builds a geometry whose family is known to satisfy the axioms;
    /// re-validated in debug builds.
    pub(crate) fn trusted(worlds: Vec<String>, family: Vec<WorldSet>) -> ConvexGeometry {
        let geometry = ConvexGeometry::from_family(worlds, family);
        debug_assert!(
            ConvexGeometry::validate(geometry.worlds.clone(), geometry.sets.clone()).is_ok(),
            "constructed family violates the convex-geometry axioms"
        );
        geometry
    }

    fn check_intersections(&self) -> Result<(), GeometryError> {
        let members: HashSet<&WorldSet> = self.sets.iter().collect();
        for (i, a) in self.sets.iter().enumerate() {
            for b in &self.sets[i + 1..] {
                if !members.contains(&a.intersection(b)) {
                    return Err(GeometryError::NotIntersectionClosed {
                        first: a.clone(),
                        second: b.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    // Given intersection closure, anti-exchange at C fails for x, y exactly
    // when hull(C + x) = hull(C + y).
    fn check_anti_exchange(&self) -> Result<(), GeometryError> {
        for c in &self.sets {
            let outside: Vec<usize> = c.complement().to_vec();
            let hulls: Vec<WorldSet> = outside.iter().map(|&x| self.hull(&c.with(x))).collect();
            for i in 0..outside.len() {
                for j in i + 1..outside.len() {
                    if hulls[i] == hulls[j] {
                        return Err(GeometryError::AntiExchange {
                            convex: c.clone(),
                            x: outside[i],
                            y: outside[j],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The discrete geometry, in which every subset is convex.
    pub fn discrete(worlds: Vec<String>) -> ConvexGeometry {
        let n = worlds.len();
        assert!(n <= 20, "discrete geometry over {n} worlds is too large to list");
        let family = (0..1u64 << n).map(|m| WorldSet::from_mask(n, m)).collect();
        ConvexGeometry::from_family(worlds, family)
    }

    /// The geometry whose only convex set is the ground set.
    pub fn trivial(worlds: Vec<String>) -> ConvexGeometry {
        let n = worlds.len();
        ConvexGeometry::from_family(worlds, vec![WorldSet::full(n)])
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn size(&self) -> usize {
        self.worlds.len()
    }

    /// The convex sets, ordered by size then members.
    pub fn sets(&self) -> &[WorldSet] {
        &self.sets
    }

    pub fn is_convex(&self, set: &WorldSet) -> bool {
        self.sets.binary_search(set).is_ok()
    }

    pub fn contains_empty(&self) -> bool {
        self.sets.first().is_some_and(WorldSet::is_empty)
    }

    pub fn index_of(&self, world: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w == world)
    }

    /// The set of named worlds; `None` if a name is not in the ground set.
    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Option<WorldSet> {
        let mut set = WorldSet::empty(self.size());
        for name in names {
            set.insert(self.index_of(name.as_ref())?);
        }
        Some(set)
    }

    pub fn names_of(&self, set: &WorldSet) -> Vec<String> {
        set.iter().map(|i| self.worlds[i].clone()).collect()
    }

    /// Same family over new world labels.
    pub fn relabel(&self, worlds: Vec<String>) -> ConvexGeometry {
        assert_eq!(worlds.len(), self.size(), "relabeling must keep the ground-set size");
        ConvexGeometry {
            worlds,
            sets: self.sets.clone(),
        }
    }

    /// The least convex set containing `set`.
    pub fn hull(&self, set: &WorldSet) -> WorldSet {
        let mut out = WorldSet::full(self.size());
        for c in &self.sets {
            if set.is_subset(c) {
                out.intersect_with(c);
            }
        }
        out
    }

    /// `{x in set | x not in hull(set - x)}`.
    pub fn extreme_points(&self, set: &WorldSet) -> WorldSet {
        WorldSet::from_indices(
            self.size(),
            set.iter().filter(|&x| !self.hull(&set.without(x)).contains(x)),
        )
    }

    /// The intersection of all convex sets: the impossible worlds.
    pub fn impossible(&self) -> WorldSet {
        self.hull(&WorldSet::empty(self.size()))
    }

    /// Complements of the convex sets.
    pub fn feasible_sets(&self) -> Vec<WorldSet> {
        self.sets.iter().map(WorldSet::complement).collect()
    }

    /// The traces `C ∩ X` of the convex sets, as a geometry on the worlds in `X`.
    pub fn relative(&self, subset: &WorldSet) -> ConvexGeometry {
        let keep = subset.to_vec();
        let worlds = keep.iter().map(|&i| self.worlds[i].clone()).collect();
        let family = self
            .sets
            .iter()
            .map(|c| WorldSet::from_indices(keep.len(), (0..keep.len()).filter(|&k| c.contains(keep[k]))))
            .collect();
        ConvexGeometry::validate(worlds, family).expect("relative convexity is a convex geometry")
    }

    /// The up-closed sets of a partial order.
    pub fn upsets(poset: &Poset) -> ConvexGeometry {
        let n = poset.len();
        let mut found: HashSet<WorldSet> = HashSet::new();
        let mut stack = vec![WorldSet::empty(n)];
        found.insert(WorldSet::empty(n));
        while let Some(u) = stack.pop() {
            for x in u.complement().iter() {
                // x can be added once everything strictly above it is present
                if poset.up_set(x).without(x).is_subset(&u) {
                    let next = u.with(x);
                    if found.insert(next.clone()) {
                        stack.push(next);
                    }
                }
            }
        }
        ConvexGeometry::validate(poset.elements().to_vec(), found.into_iter().collect())
            .expect("upsets of a partial order form a convex geometry")
    }

    /// `{C ∩ D | C in self, D in other}` over a shared ground set.
    pub fn join(&self, other: &ConvexGeometry) -> Result<ConvexGeometry, GeometryError> {
        if self.worlds != other.worlds {
            return Err(GeometryError::GroundSetMismatch);
        }
        let mut family = HashSet::new();
        for c in &self.sets {
            for d in &other.sets {
                family.insert(c.intersection(d));
            }
        }
        Ok(ConvexGeometry::validate(self.worlds.clone(), family.into_iter().collect())
            .expect("join of convex geometries is a convex geometry"))
    }
}
