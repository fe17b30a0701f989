//! Validity checking by exhaustive model enumeration and random search.
//!
//! With at most two letters, every non-valid formula already fails in a
//! model whose worlds are the assignments to its letters, so enumerating all
//! geometries on those worlds decides validity outright. The class-relative
//! searches are exhaustive only up to their size bound.

mod compiled;
mod search;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use thiserror::Error;

use crate::convexity::{enumerate_geometries, ConvexGeometry, Poset, MAX_ENUMERATION_SIZE};
use crate::decomposition::LinearOrder;
use crate::formula::{OneStep, Valuation};
use crate::planar::{PlaneModel, Point2};
use crate::semantics::{AbstractModel, ConditionalModel};
use crate::worldset::WorldSet;

use compiled::Compiled;

pub use search::{find_countermodel, DEFAULT_BUDGET, DEFAULT_SEED};

/// Most letters [`decide_validity_small`] accepts.
pub const MAX_SMALL_LETTERS: usize = 2;
pub const MAX_LINE_POINTS: usize = 8;
pub const MAX_CHAIN_WORLDS: usize = 8;
pub const MAX_POSET_WORLDS: usize = 5;

/// Refuses searches with more candidate models than this.
const MAX_SEARCH_SPACE: u128 = 1 << 36;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("{found} letters exceed the limit of {max}")]
    TooManyLetters { found: usize, max: usize },
    #[error("bound {requested} exceeds the limit of {max}")]
    BoundExceeded { requested: usize, max: usize },
    #[error("search space of {0} models is too large")]
    SearchTooLarge(u128),
    #[error("countermodel failed re-verification")]
    Internal,
}

/// A class of finite models, with its size bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelClass {
    /// Every convex geometry on at most this many worlds.
    AllGeometries(usize),
    /// Finite point sets on a line with at most this many points.
    LineModels(usize),
    /// Upsets of a linear order on at most this many worlds.
    ChainUpsets(usize),
    /// Upsets of a partial order on at most this many worlds.
    PosetUpsets(usize),
}

/// A finite point set on a line, given by the letters true at each point
/// from left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineModel {
    pub letters: Vec<String>,
    pub profiles: Vec<BTreeSet<String>>,
}

impl LineModel {
    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    pub fn valuation(&self) -> Valuation {
        self.letters
            .iter()
            .map(|l| {
                let set = WorldSet::from_indices(self.len(), (0..self.len()).filter(|&i| self.profiles[i].contains(l)));
                (l.clone(), set)
            })
            .collect()
    }

    /// Points `x0, x1, ..` at `(i, 0)`.
    pub fn to_plane(&self) -> PlaneModel {
        let points = (0..self.len())
            .map(|i| (format!("x{i}"), Point2::from_integers(i as i64, 0)))
            .collect();
        PlaneModel::new(points, self.valuation()).expect("line points are distinct")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Countermodel {
    Abstract(AbstractModel),
    Line(LineModel),
}

impl Countermodel {
    pub fn holds(&self, f: &OneStep) -> bool {
        let result = match self {
            Countermodel::Abstract(m) => m.holds(f),
            Countermodel::Line(l) => l.to_plane().holds(f),
        };
        result.expect("countermodels value every letter of the formula")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// No model in the searched space falsifies the formula. `exhaustive`
    /// means the search covered enough models to establish validity outright.
    Valid { exhaustive: bool },
    Countermodel(Countermodel),
    /// Random search ran out of budget.
    Unknown { budget: u64 },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid { .. })
    }

    pub fn countermodel(&self) -> Option<&Countermodel> {
        match self {
            Verdict::Countermodel(c) => Some(c),
            _ => None,
        }
    }
}

fn emit(f: &OneStep, c: Countermodel) -> Result<Verdict, SolverError> {
    if c.holds(f) {
        return Err(SolverError::Internal);
    }
    Ok(Verdict::Countermodel(c))
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn masks_to_valuation(letters: &[String], masks: &[u64], n: usize) -> Valuation {
    letters
        .iter()
        .zip(masks)
        .map(|(l, &m)| (l.clone(), WorldSet::from_mask(n, m)))
        .collect()
}

fn canonical_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("w{i}")).collect()
}

/// Extreme points of every subset of a small geometry, indexed by mask.
fn extreme_table(g: &ConvexGeometry) -> Vec<u64> {
    let n = g.size();
    let members: Vec<u64> = g.sets().iter().map(WorldSet::to_mask).collect();
    let full = full_mask(n);
    let hull: Vec<u64> = (0..=full)
        .map(|x| members.iter().filter(|&&c| c & x == x).fold(full, |acc, &c| acc & c))
        .collect();
    (0..=full)
        .map(|x| {
            (0..n)
                .filter(|&i| x & (1 << i) != 0 && hull[(x & !(1 << i)) as usize] & (1 << i) == 0)
                .fold(0, |acc, i| acc | 1 << i)
        })
        .collect()
}

/// Every geometry on `n` canonical worlds with its extreme-point table,
/// computed once per process.
fn geometries_with_tables(n: usize) -> &'static [(ConvexGeometry, Vec<u64>)] {
    static CACHE: [OnceLock<Vec<(ConvexGeometry, Vec<u64>)>>; MAX_ENUMERATION_SIZE + 1] =
        [const { OnceLock::new() }; MAX_ENUMERATION_SIZE + 1];
    CACHE[n].get_or_init(|| {
        enumerate_geometries(n, false)
            .expect("within the enumeration bound")
            .map(|g| {
                let table = extreme_table(&g);
                (g, table)
            })
            .collect()
    })
}

fn check_space(models: u128) -> Result<(), SolverError> {
    if models > MAX_SEARCH_SPACE {
        return Err(SolverError::SearchTooLarge(models));
    }
    Ok(())
}

fn pow(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

/// The assignment worlds over `letters`: world `i` makes letter `j` true iff
/// bit `k-1-j` of `i` is clear, so world 0 makes every letter true.
fn assignment_worlds(letters: &[String]) -> (Vec<String>, Vec<u64>) {
    let k = letters.len();
    let n = 1usize << k;
    let names = (0..n)
        .map(|i| {
            if k == 0 {
                return "w".to_string();
            }
            letters
                .iter()
                .enumerate()
                .map(|(j, l)| {
                    if i & (1 << (k - 1 - j)) == 0 {
                        l.clone()
                    } else {
                        format!("~{l}")
                    }
                })
                .collect()
        })
        .collect();
    let masks = (0..k)
        .map(|j| (0..n).filter(|i| i & (1 << (k - 1 - j)) == 0).fold(0u64, |acc, i| acc | 1 << i))
        .collect();
    (names, masks)
}

/// Decides validity of a formula over at most two letters.
///
/// Every convex geometry on the assignment worlds of the formula's letters is
/// checked under the canonical valuation; the answer is exact.
pub fn decide_validity_small(f: &OneStep) -> Result<Verdict, SolverError> {
    let compiled = Compiled::new(f);
    let k = compiled.letters.len();
    if k > MAX_SMALL_LETTERS {
        return Err(SolverError::TooManyLetters {
            found: k,
            max: MAX_SMALL_LETTERS,
        });
    }
    let (names, masks) = assignment_worlds(&compiled.letters);
    let n = names.len();
    for (g, table) in geometries_with_tables(n) {
        if !compiled.holds(&masks, n, |x| table[x as usize]) {
            let valuation = masks_to_valuation(&compiled.letters, &masks, n);
            let model = AbstractModel::new(g.relabel(names), valuation).expect("widths agree");
            return emit(f, Countermodel::Abstract(model));
        }
    }
    Ok(Verdict::Valid { exhaustive: true })
}

/// Searches a bounded model class exhaustively.
pub fn decide_class_validity(f: &OneStep, class: ModelClass) -> Result<Verdict, SolverError> {
    let compiled = Compiled::new(f);
    match class {
        ModelClass::AllGeometries(bound) => all_geometries(f, &compiled, bound),
        ModelClass::LineModels(bound) => line_models(f, &compiled, bound),
        ModelClass::ChainUpsets(bound) => chain_upsets(f, &compiled, bound),
        ModelClass::PosetUpsets(bound) => poset_upsets(f, &compiled, bound),
    }
}

fn bounded(requested: usize, max: usize) -> Result<(), SolverError> {
    if requested > max {
        return Err(SolverError::BoundExceeded { requested, max });
    }
    Ok(())
}

/// Steps `digits` through every value in base `base`; false after the last.
fn advance(digits: &mut [u64], base: u64) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn all_geometries(f: &OneStep, compiled: &Compiled, bound: usize) -> Result<Verdict, SolverError> {
    bounded(bound, MAX_ENUMERATION_SIZE)?;
    let k = compiled.letters.len();
    check_space(pow(1 << bound, k).saturating_mul(62_067))?;
    for n in 1..=bound {
        let full = full_mask(n);
        for (g, table) in geometries_with_tables(n) {
            let mut masks = vec![0u64; k];
            loop {
                if !compiled.holds(&masks, n, |x| table[x as usize]) {
                    let valuation = masks_to_valuation(&compiled.letters, &masks, n);
                    let model = AbstractModel::new(g.clone(), valuation).expect("widths agree");
                    return emit(f, Countermodel::Abstract(model));
                }
                if !advance(&mut masks, full + 1) {
                    break;
                }
            }
        }
    }
    // the assignment worlds fit within the bound, so the search is complete
    let exhaustive = k < usize::BITS as usize && bound >= 1 << k;
    Ok(Verdict::Valid { exhaustive })
}

/// Letter masks over positions for a sequence of profiles (bit `j` of a
/// profile is letter `j`).
fn profile_masks(profiles: &[u64], k: usize) -> Vec<u64> {
    (0..k)
        .map(|j| {
            profiles
                .iter()
                .enumerate()
                .filter(|(_, &p)| p & (1 << j) != 0)
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect()
}

fn profile_sets(letters: &[String], profiles: &[u64]) -> Vec<BTreeSet<String>> {
    profiles
        .iter()
        .map(|&p| {
            letters
                .iter()
                .enumerate()
                .filter(|(j, _)| p & (1 << j) != 0)
                .map(|(_, l)| l.clone())
                .collect()
        })
        .collect()
}

fn line_extreme(x: u64) -> u64 {
    if x == 0 {
        0
    } else {
        (1 << x.trailing_zeros()) | (1 << (63 - x.leading_zeros()))
    }
}

fn line_models(f: &OneStep, compiled: &Compiled, bound: usize) -> Result<Verdict, SolverError> {
    bounded(bound, MAX_LINE_POINTS)?;
    let k = compiled.letters.len();
    if k >= 32 {
        return Err(SolverError::SearchTooLarge(u128::MAX));
    }
    let base = 1u64 << k;
    check_space(pow(base as u128, bound))?;
    for len in 1..=bound {
        let mut seq = vec![0u64; len];
        loop {
            // a line and its mirror image satisfy the same formulas
            let mirrored = seq.iter().rev().copied().collect::<Vec<_>>();
            if seq <= mirrored {
                let masks = profile_masks(&seq, k);
                if !compiled.holds(&masks, len, line_extreme) {
                    let line = LineModel {
                        letters: compiled.letters.clone(),
                        profiles: profile_sets(&compiled.letters, &seq),
                    };
                    return emit(f, Countermodel::Line(line));
                }
            }
            if !advance(&mut seq, base) {
                break;
            }
        }
    }
    Ok(Verdict::Valid { exhaustive: false })
}

/// Calls `visit` with every arrangement of distinct values below `base`
/// of length `len`.
fn for_each_arrangement(base: u64, len: usize, visit: &mut impl FnMut(&[u64]) -> bool) -> bool {
    fn go(base: u64, len: usize, prefix: &mut Vec<u64>, visit: &mut impl FnMut(&[u64]) -> bool) -> bool {
        if prefix.len() == len {
            return visit(prefix);
        }
        for v in 0..base {
            if !prefix.contains(&v) {
                prefix.push(v);
                let go_on = go(base, len, prefix, visit);
                prefix.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
    go(base, len, &mut Vec::with_capacity(len), visit)
}

fn chain_upsets(f: &OneStep, compiled: &Compiled, bound: usize) -> Result<Verdict, SolverError> {
    bounded(bound, MAX_CHAIN_WORLDS)?;
    let k = compiled.letters.len();
    if k >= 32 {
        return Err(SolverError::SearchTooLarge(u128::MAX));
    }
    let base = 1u64 << k;
    // A world above another with the same letters is never minimal in any
    // extension, so chains of distinct profiles cover every chain model.
    let longest = bound.min(base as usize);
    check_space(pow(base as u128, longest))?;
    let mut found = None;
    for len in 1..=longest {
        for_each_arrangement(base, len, &mut |seq| {
            let masks = profile_masks(seq, k);
            // bottom first: the minimal member is the lowest set bit
            if compiled.holds(&masks, seq.len(), |x| x & x.wrapping_neg()) {
                return true;
            }
            found = Some(seq.to_vec());
            false
        });
        if let Some(seq) = found {
            let names = canonical_names(seq.len());
            let order = LinearOrder::from_bottom((0..seq.len()).collect()).expect("identity order");
            let valuation = masks_to_valuation(&compiled.letters, &profile_masks(&seq, k), seq.len());
            let model = AbstractModel::new(order.upset_geometry(&names), valuation).expect("widths agree");
            return emit(f, Countermodel::Abstract(model));
        }
    }
    Ok(Verdict::Valid { exhaustive: false })
}

/// Strict down-sets of every naturally labeled partial order on `n`
/// elements: `i < j` in the order implies `i < j` as numbers.
pub(crate) fn natural_posets(n: usize) -> Vec<Vec<u64>> {
    fn go(n: usize, downs: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let j = downs.len();
        if j == n {
            out.push(downs.clone());
            return;
        }
        for s in 0..1u64 << j {
            let closed = (0..j).filter(|&i| s & (1 << i) != 0).all(|i| downs[i] & !s == 0);
            if closed {
                downs.push(s);
                go(n, downs, out);
                downs.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::with_capacity(n), &mut out);
    out
}

fn poset_upsets(f: &OneStep, compiled: &Compiled, bound: usize) -> Result<Verdict, SolverError> {
    bounded(bound, MAX_POSET_WORLDS)?;
    let k = compiled.letters.len();
    check_space(pow(1 << bound, k).saturating_mul(357))?;
    for n in 1..=bound {
        let full = full_mask(n);
        for downs in natural_posets(n) {
            let minimal = |x: u64| {
                (0..n)
                    .filter(|&i| x & (1 << i) != 0 && downs[i] & x == 0)
                    .fold(0u64, |acc, i| acc | 1 << i)
            };
            let mut masks = vec![0u64; k];
            loop {
                if !compiled.holds(&masks, n, minimal) {
                    let names = canonical_names(n);
                    let covers: Vec<(usize, usize)> = (0..n)
                        .flat_map(|j| (0..n).map(move |i| (i, j)))
                        .filter(|&(i, j)| downs[j] & (1 << i) != 0)
                        .collect();
                    let poset = Poset::from_covers(names, &covers).expect("natural labels are acyclic");
                    let valuation = masks_to_valuation(&compiled.letters, &masks, n);
                    let model = AbstractModel::new(ConvexGeometry::upsets(&poset), valuation).expect("widths agree");
                    return emit(f, Countermodel::Abstract(model));
                }
                if !advance(&mut masks, full + 1) {
                    break;
                }
            }
        }
    }
    Ok(Verdict::Valid { exhaustive: false })
}
