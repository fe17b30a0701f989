//! Seeded random search for countermodels among joins of chains.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::compiled::Compiled;
use super::{canonical_names, emit, masks_to_valuation, Countermodel, SolverError, Verdict};
use crate::decomposition::{join_chains, LinearOrder};
use crate::formula::OneStep;
use crate::semantics::AbstractModel;

pub const DEFAULT_BUDGET: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 0;

const MAX_WORLDS: usize = 6;
const MAX_CHAINS: usize = 3;

/// `suffix[i]`: the worlds at position `i` or higher in a bottom-first order.
fn suffixes(order: &[usize]) -> Vec<u64> {
    let mut out = vec![0u64; order.len() + 1];
    for i in (0..order.len()).rev() {
        out[i] = out[i + 1] | 1 << order[i];
    }
    out
}

fn chain_hull(chains: &[(Vec<usize>, Vec<u64>)], full: u64, set: u64) -> u64 {
    chains.iter().fold(full, |acc, (order, suffix)| {
        match order.iter().position(|&x| set & (1 << x) != 0) {
            Some(i) => acc & suffix[i],
            None => 0,
        }
    })
}

/// Random models on at most six worlds whose geometry is the join of up to
/// three random chains, with each letter true at a world with a per-letter
/// random probability. Deterministic for a fixed seed; any countermodel is
/// re-checked with the reference evaluator before it is returned.
pub fn find_countermodel(f: &OneStep, budget: u64, seed: u64) -> Result<Verdict, SolverError> {
    let compiled = Compiled::new(f);
    let k = compiled.letters.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        // half of the samples use the largest size, where rarer patterns fit
        let n = if rng.random_bool(0.5) {
            MAX_WORLDS
        } else {
            rng.random_range(1..=MAX_WORLDS)
        };
        let m = rng.random_range(1..=MAX_CHAINS);
        let full = (1u64 << n) - 1;
        let chains: Vec<(Vec<usize>, Vec<u64>)> = (0..m)
            .map(|_| {
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut rng);
                let suffix = suffixes(&order);
                (order, suffix)
            })
            .collect();
        // a fresh density per letter reaches sparse and dense extensions alike
        let masks: Vec<u64> = (0..k)
            .map(|_| {
                let density: f64 = rng.random();
                (0..n).filter(|_| rng.random_bool(density)).fold(0u64, |acc, i| acc | 1 << i)
            })
            .collect();
        let extreme = |x: u64| {
            (0..n)
                .filter(|&i| x & (1 << i) != 0 && chain_hull(&chains, full, x & !(1 << i)) & (1 << i) == 0)
                .fold(0u64, |acc, i| acc | 1 << i)
        };
        if !compiled.holds(&masks, n, extreme) {
            let names = canonical_names(n);
            let orders: Vec<LinearOrder> = chains
                .iter()
                .map(|(order, _)| LinearOrder::from_bottom(order.clone()).expect("shuffled identity"))
                .collect();
            let geometry = join_chains(&names, &orders);
            let valuation = masks_to_valuation(&compiled.letters, &masks, n);
            let model = AbstractModel::new(geometry, valuation).expect("widths agree");
            return emit(f, Countermodel::Abstract(model));
        }
    }
    Ok(Verdict::Unknown { budget })
}
