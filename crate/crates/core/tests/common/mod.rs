#![allow(dead_code)]

use condgeo::formula::{BinOp, OneStep, Prop, Valuation};
use condgeo::planar::{PlaneModel, Point2};
use condgeo::{AbstractModel, ConvexGeometry, LinearOrder, WorldSet};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

pub fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

pub const ALPHA: &str = "(T ~> p) & (q ~> p) & (~(p <-> q) ~> p) & ~(~q ~> p) & ~((p <-> q) ~> p) & ~(~p ~> ~q)";

pub const ALPHA_CONJUNCTS: [&str; 6] = [
    "T ~> p",
    "q ~> p",
    "~(p <-> q) ~> p",
    "~(~q ~> p)",
    "~((p <-> q) ~> p)",
    "~(~p ~> ~q)",
];

pub fn running_worlds() -> Vec<String> {
    names(&["pq", "p~q", "~pq", "~p~q"])
}

pub fn running_example() -> AbstractModel {
    let sets: &[&[usize]] = &[
        &[],
        &[2],
        &[3],
        &[0, 2],
        &[1, 2],
        &[2, 3],
        &[0, 2, 3],
        &[1, 2, 3],
        &[0, 1, 2, 3],
    ];
    let family = sets.iter().map(|s| WorldSet::from_indices(4, s.iter().copied())).collect();
    let geometry = ConvexGeometry::validate(running_worlds(), family).unwrap();
    let mut valuation = Valuation::new();
    valuation.insert("p".into(), WorldSet::from_indices(4, [0, 1]));
    valuation.insert("q".into(), WorldSet::from_indices(4, [0, 2]));
    AbstractModel::new(geometry, valuation).unwrap()
}

/// The three chains drawn for the running example, bottom to top.
pub fn running_chains() -> Vec<LinearOrder> {
    let worlds = running_worlds();
    [
        ["p~q", "~p~q", "pq", "~pq"],
        ["pq", "~p~q", "p~q", "~pq"],
        ["pq", "p~q", "~pq", "~p~q"],
    ]
    .iter()
    .map(|c| LinearOrder::from_names(&worlds, c).unwrap())
    .collect()
}

pub fn five_points() -> PlaneModel {
    let pts = [
        ("x", "0", "5"),
        ("y", "4", "5"),
        ("z", "2.4", "3"),
        ("u", "1.9", "4.3"),
        ("v", "1.2", "1.5"),
    ];
    let points = pts
        .iter()
        .map(|(id, x, y)| (id.to_string(), Point2::parse(x, y).unwrap()))
        .collect();
    let mut valuation = Valuation::new();
    valuation.insert("p".into(), WorldSet::from_indices(5, [0, 2, 3]));
    valuation.insert("q".into(), WorldSet::from_indices(5, [0, 1, 3]));
    valuation.insert("r".into(), WorldSet::from_indices(5, [0, 1, 2]));
    PlaneModel::new(points, valuation).unwrap()
}

fn bin_op() -> impl Strategy<Value = BinOp> {
    prop_oneof![
        Just(BinOp::And),
        Just(BinOp::Or),
        Just(BinOp::Implies),
        Just(BinOp::Iff)
    ]
}

pub fn prop_over(letters: &'static [&'static str]) -> impl Strategy<Value = Prop> {
    let leaf = prop_oneof![
        4 => proptest::sample::select(letters).prop_map(Prop::letter),
        1 => Just(Prop::Top),
        1 => Just(Prop::Bot),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Prop::not),
            (bin_op(), inner.clone(), inner).prop_map(|(op, a, b)| Prop::Bin(op, Box::new(a), Box::new(b))),
        ]
    })
}

pub fn one_step_over(letters: &'static [&'static str]) -> impl Strategy<Value = OneStep> {
    let leaf = (prop_over(letters), prop_over(letters)).prop_map(|(a, c)| OneStep::cond(a, c));
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(OneStep::not),
            (bin_op(), inner.clone(), inner).prop_map(|(op, a, b)| OneStep::Bin(op, Box::new(a), Box::new(b))),
        ]
    })
}

/// A random valuation of `letters` over `n` worlds.
pub fn valuation_from_masks(letters: &[&str], n: usize, masks: &[u64]) -> Valuation {
    letters
        .iter()
        .zip(masks)
        .map(|(l, &m)| (l.to_string(), WorldSet::from_mask(n, m & ((1u64 << n) - 1))))
        .collect()
}

/// The axiom and derived schemata with `a, b, c` substituted for the three
/// schematic letters.
pub fn schemata(a: &Prop, b: &Prop, c: &Prop) -> Vec<(&'static str, OneStep)> {
    let cond = |x: &Prop, y: &Prop| OneStep::cond(x.clone(), y.clone());
    let and = Prop::and;
    let or = Prop::or;
    vec![
        ("Id", cond(a, a)),
        (
            "And",
            OneStep::implies(OneStep::and(cond(a, b), cond(a, c)), cond(a, &and(b.clone(), c.clone()))),
        ),
        (
            "CM",
            OneStep::implies(OneStep::and(cond(a, b), cond(a, c)), cond(&and(a.clone(), c.clone()), b)),
        ),
        (
            "Or",
            OneStep::implies(OneStep::and(cond(a, b), cond(c, b)), cond(&or(a.clone(), c.clone()), b)),
        ),
        (
            "WCM",
            OneStep::implies(cond(a, &and(b.clone(), c.clone())), cond(&and(a.clone(), b.clone()), c)),
        ),
        (
            "S",
            OneStep::implies(
                cond(&and(a.clone(), b.clone()), c),
                cond(a, &or(Prop::not(b.clone()), c.clone())),
            ),
        ),
        (
            "CCut",
            OneStep::implies(OneStep::and(cond(a, b), cond(&and(a.clone(), b.clone()), c)), cond(a, c)),
        ),
        (
            "CCut'",
            OneStep::implies(OneStep::and(cond(a, b), cond(b, c)), cond(&or(a.clone(), b.clone()), c)),
        ),
    ]
}

/// `{C ∪ impossible | C ∈ g}` over the same worlds: a geometry whose
/// impossible worlds include `impossible`.
pub fn with_impossible(g: &ConvexGeometry, impossible: &WorldSet) -> ConvexGeometry {
    let family = g.sets().iter().map(|c| c | impossible).collect();
    ConvexGeometry::validate(g.worlds().to_vec(), family).unwrap()
}

/// A random geometry on `n` worlds: a join of random chains, with some
/// worlds made impossible.
pub fn random_geometry(n: usize, orders: &[Vec<usize>], impossible: u64) -> ConvexGeometry {
    let worlds: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
    let chains: Vec<LinearOrder> = orders
        .iter()
        .map(|o| LinearOrder::from_bottom(o.clone()).unwrap())
        .collect();
    let joined = condgeo::decomposition::join_chains(&worlds, &chains);
    let mask = impossible & ((1u64 << n) - 1);
    // keep at least one possible world most of the time
    let mask = if mask.count_ones() as usize == n { 0 } else { mask };
    with_impossible(&joined, &WorldSet::from_mask(n, mask))
}

pub fn random_geometry_strategy(max: usize) -> impl Strategy<Value = ConvexGeometry> {
    (1..=max).prop_flat_map(|n| {
        let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
        (
            prop::collection::vec(perm, 1..=3),
            prop_oneof![3 => Just(0u64), 1 => any::<u64>()],
        )
            .prop_map(move |(orders, imp)| random_geometry(n, &orders, imp))
    })
}

pub const GAMMA_1: &str = "((p | q) ~> p) | ((p | q) ~> q)";
pub const GAMMA_2: &str = "((p | q | r) ~> p | q) | ((p | q | r) ~> p | r) | ((p | q | r) ~> q | r)";
pub const DELTA_2: &str = "((p | q | r) ~> s) -> ((p | q) ~> s) | ((p | r) ~> s) | ((q | r) ~> s)";

/// Instances of the schemata over two letters.
pub fn two_letter_pool() -> Vec<Prop> {
    ["p", "q", "~q", "p & q", "p | ~q", "T"]
        .iter()
        .map(|t| condgeo::formula::parse_prop(t).unwrap())
        .collect()
}

fn cross(o: &Point2, a: &Point2, b: &Point2) -> BigRational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

fn on_segment(p: &Point2, a: &Point2, b: &Point2) -> bool {
    if a == b {
        return p == a;
    }
    if !cross(a, b, p).is_zero() {
        return false;
    }
    let t = (&p.x - &a.x) * (&b.x - &a.x) + (&p.y - &a.y) * (&b.y - &a.y);
    let len = (&b.x - &a.x) * (&b.x - &a.x) + (&b.y - &a.y) * (&b.y - &a.y);
    t >= BigRational::zero() && t <= len
}

fn in_triangle(p: &Point2, a: &Point2, b: &Point2, c: &Point2) -> bool {
    let det = cross(a, b, c);
    if det.is_zero() {
        return false;
    }
    let weights = [cross(p, b, c) / &det, cross(a, p, c) / &det, cross(a, b, p) / &det];
    debug_assert_eq!(weights.iter().fold(BigRational::zero(), |s, w| s + w), BigRational::one());
    weights.iter().all(|w| *w >= BigRational::zero())
}

/// Membership by exact barycentric coordinates over every subset of at most
/// three points, which suffices in the plane.
pub fn caratheodory(p: &Point2, pts: &[Point2]) -> bool {
    let n = pts.len();
    (0..n).any(|i| {
        pts[i] == *p
            || (i + 1..n).any(|j| {
                on_segment(p, &pts[i], &pts[j]) || (j + 1..n).any(|k| in_triangle(p, &pts[i], &pts[j], &pts[k]))
            })
    })
}
