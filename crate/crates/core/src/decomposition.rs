//! Decomposition of a convex geometry into linear orders.
//!
//! The upsets of a shelling order are convex, and the join of the upset
//! convexities of all shelling orders is the geometry itself. `decompose`
//! keeps a greedy subfamily of the shelling orders whose join already
//! reaches the geometry.

use std::collections::HashSet;

use thiserror::Error;

use crate::convexity::{ConvexGeometry, Poset};
use crate::worldset::WorldSet;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("the empty set must be convex")]
    EmptySetRequired,
    #[error("not a permutation of the ground set")]
    NotAPermutation,
    #[error("shelling orders exhausted before the join reached the geometry")]
    Internal,
}

/// A linear order on the ground set, stored bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearOrder(Vec<usize>);

impl LinearOrder {
    /// `order` lists every index below `order.len()` once, bottom first.
    pub fn from_bottom(order: Vec<usize>) -> Result<LinearOrder, DecompositionError> {
        let mut seen = vec![false; order.len()];
        for &x in &order {
            if x >= order.len() || std::mem::replace(&mut seen[x], true) {
                return Err(DecompositionError::NotAPermutation);
            }
        }
        Ok(LinearOrder(order))
    }

    /// Resolves names against `worlds`, bottom first.
    pub fn from_names<S: AsRef<str>>(worlds: &[String], order: &[S]) -> Result<LinearOrder, DecompositionError> {
        let indices = order
            .iter()
            .map(|name| worlds.iter().position(|w| w == name.as_ref()))
            .collect::<Option<Vec<_>>>()
            .ok_or(DecompositionError::NotAPermutation)?;
        if indices.len() != worlds.len() {
            return Err(DecompositionError::NotAPermutation);
        }
        LinearOrder::from_bottom(indices)
    }

    pub fn bottom_to_top(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self, worlds: &[String]) -> Vec<String> {
        self.0.iter().map(|&i| worlds[i].clone()).collect()
    }

    /// Rank counted from the top: the top element has rank 1.
    pub fn ranks_from_top(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut ranks = vec![0; n];
        for (pos, &x) in self.0.iter().enumerate() {
            ranks[x] = n - pos;
        }
        ranks
    }

    pub fn to_poset(&self, worlds: &[String]) -> Poset {
        let covers: Vec<(usize, usize)> = self.0.windows(2).map(|w| (w[0], w[1])).collect();
        Poset::from_covers(worlds.to_vec(), &covers).expect("a chain is a partial order")
    }

    /// The upsets `{x_i, .., x_n}` of the order.
    pub fn upsets(&self) -> Vec<WorldSet> {
        let n = self.0.len();
        (0..=n)
            .map(|i| WorldSet::from_indices(n, self.0[i..].iter().copied()))
            .collect()
    }

    /// The smallest upset containing `set`.
    pub fn up_closure(&self, set: &WorldSet) -> WorldSet {
        match self.0.iter().position(|&x| set.contains(x)) {
            Some(i) => WorldSet::from_indices(self.0.len(), self.0[i..].iter().copied()),
            None => WorldSet::empty(self.0.len()),
        }
    }

    pub fn upset_geometry(&self, worlds: &[String]) -> ConvexGeometry {
        ConvexGeometry::trusted(worlds.to_vec(), self.upsets())
    }
}

/// The join of the upset convexities of `chains` on `worlds`.
pub fn join_chains(worlds: &[String], chains: &[LinearOrder]) -> ConvexGeometry {
    let mut family: HashSet<WorldSet> = HashSet::from([WorldSet::full(worlds.len())]);
    for chain in chains {
        family = join_family(&family, &chain.upsets());
    }
    ConvexGeometry::trusted(worlds.to_vec(), family.into_iter().collect())
}

/// `⋂_j ↑_j set`, which equals `set` exactly when `set` is convex in the join.
pub fn chain_hull(chains: &[LinearOrder], set: &WorldSet) -> WorldSet {
    chains.iter().fold(WorldSet::full(set.width()), |acc, chain| &acc & &chain.up_closure(set))
}

fn join_family(family: &HashSet<WorldSet>, upsets: &[WorldSet]) -> HashSet<WorldSet> {
    family
        .iter()
        .flat_map(|c| upsets.iter().map(move |u| c.intersection(u)))
        .collect()
}

/// Every shelling order of `g`, bottom to top, in lexicographic order.
pub fn shelling_orders(g: &ConvexGeometry) -> Result<ShellingOrders<'_>, DecompositionError> {
    if !g.contains_empty() {
        return Err(DecompositionError::EmptySetRequired);
    }
    let n = g.size();
    Ok(ShellingOrders {
        geometry: g,
        prefix: Vec::with_capacity(n),
        stack: vec![Candidates::new(g, WorldSet::full(n))],
        done: false,
    })
}

struct Candidates {
    remaining: WorldSet,
    extreme: Vec<usize>,
    next: usize,
}

impl Candidates {
    fn new(g: &ConvexGeometry, remaining: WorldSet) -> Candidates {
        let extreme = g.extreme_points(&remaining).to_vec();
        Candidates {
            remaining,
            extreme,
            next: 0,
        }
    }
}

/// Depth-first stream of shelling orders; each step removes an extreme point
/// of the worlds not yet placed.
pub struct ShellingOrders<'a> {
    geometry: &'a ConvexGeometry,
    prefix: Vec<usize>,
    stack: Vec<Candidates>,
    done: bool,
}

impl Iterator for ShellingOrders<'_> {
    type Item = LinearOrder;

    fn next(&mut self) -> Option<LinearOrder> {
        if self.done {
            return None;
        }
        if self.geometry.size() == 0 {
            self.done = true;
            return Some(LinearOrder(Vec::new()));
        }
        while let Some(top) = self.stack.last_mut() {
            if top.next == top.extreme.len() {
                self.stack.pop();
                self.prefix.pop();
                continue;
            }
            let x = top.extreme[top.next];
            top.next += 1;
            let rest = top.remaining.without(x);
            self.prefix.push(x);
            if rest.is_empty() {
                let order = LinearOrder(self.prefix.clone());
                self.prefix.pop();
                return Some(order);
            }
            let candidates = Candidates::new(self.geometry, rest);
            self.stack.push(candidates);
        }
        self.done = true;
        None
    }
}

/// A list of chains whose upset convexities join to exactly `g`.
///
/// Shelling orders are scanned lexicographically; an order is kept when it
/// adds at least one new set to the running join.
pub fn decompose(g: &ConvexGeometry) -> Result<Vec<LinearOrder>, DecompositionError> {
    let target: HashSet<WorldSet> = g.sets().iter().cloned().collect();
    let mut family: HashSet<WorldSet> = HashSet::from([WorldSet::full(g.size())]);
    let mut chains = Vec::new();
    for order in shelling_orders(g)? {
        if family.len() == target.len() {
            break;
        }
        let joined = join_family(&family, &order.upsets());
        if joined.len() > family.len() {
            family = joined;
            chains.push(order);
        }
    }
    if family != target {
        return Err(DecompositionError::Internal);
    }
    Ok(chains)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn two_chain_has_one_shelling() {
        let g = Poset::chain(names(&["a", "b"]));
        let geometry = ConvexGeometry::upsets(&g);
        let orders: Vec<_> = shelling_orders(&geometry).unwrap().collect();
        assert_eq!(orders, vec![LinearOrder(vec![0, 1])]);
        assert_eq!(decompose(&geometry).unwrap(), orders);
    }

    #[test]
    fn discrete_pair_has_both_orders() {
        let g = ConvexGeometry::discrete(names(&["a", "b"]));
        let orders: Vec<_> = shelling_orders(&g).unwrap().collect();
        assert_eq!(orders, vec![LinearOrder(vec![0, 1]), LinearOrder(vec![1, 0])]);
    }

    #[test]
    fn discrete_triple_decomposes() {
        let worlds = names(&["a", "b", "c"]);
        let g = ConvexGeometry::discrete(worlds.clone());
        let chains = decompose(&g).unwrap();
        assert_eq!(join_chains(&worlds, &chains), g);
        assert_eq!(join_chains(&worlds, &chains).sets().len(), 8);
    }

    #[test]
    fn empty_set_is_required() {
        let g = ConvexGeometry::trivial(names(&["a"]));
        assert_eq!(shelling_orders(&g).err(), Some(DecompositionError::EmptySetRequired));
        assert_eq!(decompose(&g), Err(DecompositionError::EmptySetRequired));
    }

    #[test]
    fn ranks_count_from_the_top() {
        let order = LinearOrder::from_bottom(vec![2, 0, 1]).unwrap();
        assert_eq!(order.ranks_from_top(), vec![2, 1, 3]);
        assert!(LinearOrder::from_bottom(vec![0, 0]).is_err());
    }

    #[test]
    fn chain_hull_recovers_convex_sets() {
        let worlds = names(&["a", "b", "c"]);
        let g = ConvexGeometry::discrete(worlds);
        let chains = decompose(&g).unwrap();
        for m in 0..8u64 {
            let x = WorldSet::from_mask(3, m);
            assert_eq!(chain_hull(&chains, &x), x);
        }
    }

    #[test]
    fn empty_ground_set() {
        let g = ConvexGeometry::discrete(Vec::new());
        assert_eq!(shelling_orders(&g).unwrap().count(), 1);
        assert!(decompose(&g).unwrap().is_empty());
    }
}
