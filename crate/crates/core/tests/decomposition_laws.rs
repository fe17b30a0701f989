mod common;

use std::collections::BTreeSet;

use condgeo::convexity::enumerate_geometries;
use condgeo::decomposition::{chain_hull, join_chains, shelling_orders, DecompositionError};
use condgeo::{decompose, ConvexGeometry, LinearOrder, Poset, WorldSet};

use common::{names, running_chains, running_example, running_worlds};

fn with_empty(max: usize) -> impl Iterator<Item = ConvexGeometry> {
    (1..=max).flat_map(|n| enumerate_geometries(n, true).unwrap())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn is_shelling(g: &ConvexGeometry, order: &[usize]) -> bool {
    (0..order.len()).all(|i| {
        let rest = WorldSet::from_indices(g.size(), order[i..].iter().copied());
        g.extreme_points(&rest).contains(order[i])
    })
}

#[test]
fn shelling_stream_is_exactly_the_shelling_permutations() {
    for g in with_empty(4) {
        let emitted: Vec<Vec<usize>> = shelling_orders(&g).unwrap().map(|o| o.bottom_to_top().to_vec()).collect();
        let unique: BTreeSet<Vec<usize>> = emitted.iter().cloned().collect();
        assert_eq!(unique.len(), emitted.len(), "duplicate order for {g:?}");
        let expected: BTreeSet<Vec<usize>> = permutations(g.size()).into_iter().filter(|p| is_shelling(&g, p)).collect();
        assert_eq!(unique, expected, "{g:?}");
        let factorial: usize = (1..=g.size()).product();
        assert!(!emitted.is_empty() && emitted.len() <= factorial);
        let mut sorted = emitted.clone();
        sorted.sort();
        assert_eq!(sorted, emitted, "stream is lexicographic");
        for o in &emitted {
            let upsets = LinearOrder::from_bottom(o.clone()).unwrap().upset_geometry(g.worlds());
            ConvexGeometry::validate(g.worlds().to_vec(), upsets.sets().to_vec()).unwrap();
        }
    }
}

#[test]
fn decomposition_joins_back_to_the_geometry() {
    for g in with_empty(4) {
        let chains = decompose(&g).unwrap();
        assert_eq!(join_chains(g.worlds(), &chains), g);
        for mask in 0..1u64 << g.size() {
            let x = WorldSet::from_mask(g.size(), mask);
            assert_eq!(g.is_convex(&x), chain_hull(&chains, &x) == x);
            assert_eq!(chain_hull(&chains, &x), g.hull(&x));
        }
    }
}

#[test]
fn chain_geometries_have_one_shelling_order() {
    for n in 1..=5 {
        let worlds: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
        let order: Vec<usize> = (0..n).rev().collect();
        let g = ConvexGeometry::upsets(&LinearOrder::from_bottom(order.clone()).unwrap().to_poset(&worlds));
        let all: Vec<LinearOrder> = shelling_orders(&g).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].bottom_to_top(), &order[..]);
        assert_eq!(decompose(&g).unwrap(), all);
    }
}

#[test]
fn two_chain_and_discrete_examples() {
    let chain = ConvexGeometry::upsets(&Poset::chain(names(&["a", "b"])));
    let orders: Vec<Vec<String>> = shelling_orders(&chain).unwrap().map(|o| o.names(chain.worlds())).collect();
    assert_eq!(orders, vec![names(&["a", "b"])]);

    let discrete = ConvexGeometry::discrete(names(&["a", "b"]));
    assert_eq!(shelling_orders(&discrete).unwrap().count(), 2);

    let three = ConvexGeometry::discrete(names(&["a", "b", "c"]));
    let chains = decompose(&three).unwrap();
    assert_eq!(join_chains(three.worlds(), &chains).sets().len(), 8);
}

#[test]
fn running_example_decomposes() {
    let m = running_example();
    let g = m.geometry();
    let stream: Vec<LinearOrder> = shelling_orders(g).unwrap().collect();
    for chain in running_chains() {
        assert!(stream.contains(&chain), "{:?}", chain.names(&running_worlds()));
    }
    assert_eq!(&join_chains(g.worlds(), &running_chains()), g);
    assert_eq!(&join_chains(g.worlds(), &decompose(g).unwrap()), g);
}

#[test]
fn empty_set_is_required() {
    let g = ConvexGeometry::trivial(names(&["a"]));
    assert!(matches!(shelling_orders(&g), Err(DecompositionError::EmptySetRequired)));
    assert_eq!(decompose(&g), Err(DecompositionError::EmptySetRequired));
}
