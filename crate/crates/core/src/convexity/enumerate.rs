//! Exhaustive enumeration of convex geometries on a small canonical ground set.
//!
//! Subsets are decided in order of decreasing size. A subset is forced into
//! the family when it is the intersection of two members already chosen;
//! otherwise both branches are explored. Because every strict superset of a
//! subset is decided before it, anti-exchange at that subset can be checked
//! the moment it is added, which prunes most of the closure systems.

use super::{ConvexGeometry, GeometryError};
use crate::worldset::WorldSet;

/// Largest ground set [`enumerate_geometries`] accepts.
pub const MAX_ENUMERATION_SIZE: usize = 5;

/// Streams every convex geometry on the worlds `w0 .. w{n-1}` exactly once.
pub fn enumerate_geometries(n: usize, require_empty: bool) -> Result<Enumeration, GeometryError> {
    if n > MAX_ENUMERATION_SIZE {
        return Err(GeometryError::BoundExceeded {
            requested: n,
            max: MAX_ENUMERATION_SIZE,
        });
    }
    let full = (1u64 << n) - 1;
    let mut order: Vec<u64> = (0..full).collect();
    order.sort_by_key(|&m| (std::cmp::Reverse(m.count_ones()), m));
    Ok(Enumeration {
        n,
        require_empty,
        order,
        stack: vec![Frame {
            next: 0,
            family: 1 << full,
            required: 0,
        }],
    })
}

#[derive(Clone, Copy)]
struct Frame {
    next: usize,
    // bit `m` set when subset mask `m` is a member
    family: u64,
    // intersections of members that are not yet decided
    required: u64,
}

pub struct Enumeration {
    n: usize,
    require_empty: bool,
    order: Vec<u64>,
    stack: Vec<Frame>,
}

impl Enumeration {
    fn members(family: u64) -> impl Iterator<Item = u64> {
        (0..64u64).filter(move |m| family & (1 << m) != 0)
    }

    fn hull(&self, family: u64, set: u64) -> u64 {
        Self::members(family)
            .filter(|&c| c & set == set)
            .fold((1 << self.n) - 1, |acc, c| acc & c)
    }

    /// Anti-exchange at `set`, using only its (already decided) supersets.
    fn anti_exchange_at(&self, family: u64, set: u64) -> bool {
        let mut hulls = Vec::with_capacity(self.n);
        for x in 0..self.n {
            if set & (1 << x) == 0 {
                let h = self.hull(family, set | (1 << x));
                if hulls.contains(&h) {
                    return false;
                }
                hulls.push(h);
            }
        }
        true
    }

    fn include(&self, frame: Frame, set: u64) -> Option<Frame> {
        let family = frame.family | (1 << set);
        if !self.anti_exchange_at(family, set) {
            return None;
        }
        let mut required = frame.required;
        for c in Self::members(frame.family) {
            let meet = c & set;
            if meet != set {
                required |= 1 << meet;
            }
        }
        Some(Frame {
            next: frame.next + 1,
            family,
            required,
        })
    }

    fn build(&self, family: u64) -> Option<ConvexGeometry> {
        let worlds = (0..self.n).map(|i| format!("w{i}")).collect();
        let sets = Self::members(family).map(|m| WorldSet::from_mask(self.n, m)).collect();
        ConvexGeometry::validate(worlds, sets).ok()
    }
}

impl Iterator for Enumeration {
    type Item = ConvexGeometry;

    fn next(&mut self) -> Option<ConvexGeometry> {
        while let Some(frame) = self.stack.pop() {
            if frame.next == self.order.len() {
                if let Some(g) = self.build(frame.family) {
                    return Some(g);
                }
                continue;
            }
            let set = self.order[frame.next];
            let forced = frame.required & (1 << set) != 0 || (set == 0 && self.require_empty);
            if !forced {
                self.stack.push(Frame {
                    next: frame.next + 1,
                    ..frame
                });
            }
            if let Some(child) = self.include(frame, set) {
                self.stack.push(child);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_world() {
        assert_eq!(enumerate_geometries(1, false).unwrap().count(), 2);
        assert_eq!(enumerate_geometries(1, true).unwrap().count(), 1);
    }

    #[test]
    fn two_worlds() {
        assert_eq!(enumerate_geometries(2, false).unwrap().count(), 6);
        assert_eq!(enumerate_geometries(2, true).unwrap().count(), 3);
    }

    #[test]
    fn empty_ground_set() {
        let all: Vec<_> = enumerate_geometries(0, false).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].sets(), &[WorldSet::empty(0)]);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(
            enumerate_geometries(6, false),
            Err(GeometryError::BoundExceeded { requested: 6, max: 5 })
        ));
    }

    #[test]
    fn every_emitted_geometry_is_distinct_and_valid() {
        let all: Vec<_> = enumerate_geometries(3, false).unwrap().collect();
        let distinct: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), all.len());
        for g in &all {
            assert!(ConvexGeometry::validate(g.worlds().to_vec(), g.sets().to_vec()).is_ok());
        }
    }
}
