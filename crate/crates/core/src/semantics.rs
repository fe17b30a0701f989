//! Truth of one-step formulas in finite models.
//!
//! Truth is global to a model: there is no world of evaluation. A
//! conditional `φ ~> ψ` holds when every extreme point of `⟦φ⟧` satisfies
//! `ψ`; the two set-family clauses are kept alongside for cross-checking.

use thiserror::Error;

use crate::convexity::{ConvexGeometry, Poset};
use crate::formula::{extension, OneStep, Prop, UnknownLetter, Valuation};
use crate::worldset::WorldSet;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("valuation of `{letter}` is over {found} worlds, expected {expected}")]
    ValuationWidth {
        letter: String,
        expected: usize,
        found: usize,
    },
}

/// Which of the equivalent clauses decides a conditional.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Clause {
    /// For every convex `C` missing part of `⟦φ⟧` there is a convex `D ⊇ C`
    /// still missing part of `⟦φ⟧` with `⟦φ⟧ ⊆ D ∪ ⟦ψ⟧`.
    General,
    /// The dual of `General` over the feasible sets.
    Feasible,
    /// `ex(⟦φ⟧) ⊆ ⟦ψ⟧`.
    #[default]
    Extreme,
}

/// Anything with a valuation and an extreme-point operator.
pub trait ConditionalModel {
    fn width(&self) -> usize;

    fn valuation(&self) -> &Valuation;

    fn extreme_points(&self, set: &WorldSet) -> WorldSet;

    fn extension(&self, f: &Prop) -> Result<WorldSet, UnknownLetter> {
        extension(f, self.width(), self.valuation())
    }

    fn holds_conditional(&self, antecedent: &Prop, consequent: &Prop) -> Result<bool, UnknownLetter> {
        let ant = self.extension(antecedent)?;
        let cons = self.extension(consequent)?;
        Ok(self.extreme_points(&ant).is_subset(&cons))
    }

    fn holds(&self, f: &OneStep) -> Result<bool, UnknownLetter> {
        f.evaluate(&mut |a, c| self.holds_conditional(a, c))
    }
}

fn check_widths(width: usize, valuation: &Valuation) -> Result<(), ModelError> {
    for (letter, set) in valuation {
        if set.width() != width {
            return Err(ModelError::ValuationWidth {
                letter: letter.clone(),
                expected: width,
                found: set.width(),
            });
        }
    }
    Ok(())
}

/// A convex geometry with a valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractModel {
    geometry: ConvexGeometry,
    valuation: Valuation,
}

impl AbstractModel {
    pub fn new(geometry: ConvexGeometry, valuation: Valuation) -> Result<AbstractModel, ModelError> {
        check_widths(geometry.size(), &valuation)?;
        Ok(AbstractModel { geometry, valuation })
    }

    pub fn geometry(&self) -> &ConvexGeometry {
        &self.geometry
    }

    pub fn into_parts(self) -> (ConvexGeometry, Valuation) {
        (self.geometry, self.valuation)
    }
}

impl ConditionalModel for AbstractModel {
    fn width(&self) -> usize {
        self.geometry.size()
    }

    fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    fn extreme_points(&self, set: &WorldSet) -> WorldSet {
        self.geometry.extreme_points(set)
    }
}

/// A partial order with a valuation, read with minimal-element semantics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetModel {
    poset: Poset,
    valuation: Valuation,
}

impl PosetModel {
    pub fn new(poset: Poset, valuation: Valuation) -> Result<PosetModel, ModelError> {
        check_widths(poset.len(), &valuation)?;
        Ok(PosetModel { poset, valuation })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// The same model over the upset convexity of the order.
    pub fn to_abstract(&self) -> AbstractModel {
        AbstractModel {
            geometry: ConvexGeometry::upsets(&self.poset),
            valuation: self.valuation.clone(),
        }
    }
}

impl ConditionalModel for PosetModel {
    fn width(&self) -> usize {
        self.poset.len()
    }

    fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    fn extreme_points(&self, set: &WorldSet) -> WorldSet {
        self.poset.minimal(set)
    }
}

fn general_clause(geometry: &ConvexGeometry, ant: &WorldSet, cons: &WorldSet) -> bool {
    let sets = geometry.sets();
    sets.iter().filter(|c| !ant.is_subset(c)).all(|c| {
        sets.iter()
            .any(|d| c.is_subset(d) && !ant.is_subset(d) && ant.is_subset(&d.union(cons)))
    })
}

fn feasible_clause(geometry: &ConvexGeometry, ant: &WorldSet, cons: &WorldSet) -> bool {
    let feasible = geometry.feasible_sets();
    feasible.iter().filter(|f| !f.is_disjoint(ant)).all(|f| {
        feasible.iter().any(|g| {
            let meet = g.intersection(ant);
            g.is_subset(f) && !meet.is_empty() && meet.is_subset(cons)
        })
    })
}

pub fn eval_conditional(
    model: &AbstractModel,
    antecedent: &Prop,
    consequent: &Prop,
    clause: Clause,
) -> Result<bool, UnknownLetter> {
    let ant = model.extension(antecedent)?;
    let cons = model.extension(consequent)?;
    Ok(match clause {
        Clause::General => general_clause(&model.geometry, &ant, &cons),
        Clause::Feasible => feasible_clause(&model.geometry, &ant, &cons),
        Clause::Extreme => model.geometry.extreme_points(&ant).is_subset(&cons),
    })
}

/// Evaluates with the extreme-point clause.
pub fn eval_one_step(model: &AbstractModel, f: &OneStep) -> Result<bool, UnknownLetter> {
    eval_one_step_with(model, f, Clause::Extreme)
}

pub fn eval_one_step_with(model: &AbstractModel, f: &OneStep, clause: Clause) -> Result<bool, UnknownLetter> {
    f.evaluate(&mut |a, c| eval_conditional(model, a, c, clause))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_one_step;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    pub(crate) fn running_example() -> AbstractModel {
        let sets: &[&[usize]] = &[&[], &[2], &[3], &[0, 2], &[1, 2], &[2, 3], &[0, 2, 3], &[1, 2, 3], &[0, 1, 2, 3]];
        let family = sets.iter().map(|s| WorldSet::from_indices(4, s.iter().copied())).collect();
        let geometry = ConvexGeometry::validate(names(&["pq", "p~q", "~pq", "~p~q"]), family).unwrap();
        let mut valuation = Valuation::new();
        valuation.insert("p".into(), WorldSet::from_indices(4, [0, 1]));
        valuation.insert("q".into(), WorldSet::from_indices(4, [0, 2]));
        AbstractModel::new(geometry, valuation).unwrap()
    }

    const ALPHA: &str = "(T ~> p) & (q ~> p) & (~(p <-> q) ~> p) & ~(~q ~> p) & ~((p <-> q) ~> p) & ~(~p ~> ~q)";

    #[test]
    fn alpha_holds_in_running_example() {
        let m = running_example();
        let alpha = parse_one_step(ALPHA).unwrap();
        for clause in [Clause::General, Clause::Feasible, Clause::Extreme] {
            assert!(eval_one_step_with(&m, &alpha, clause).unwrap());
        }
        assert!(m.holds(&alpha).unwrap());
    }

    #[test]
    fn identity_conditional_holds() {
        let m = running_example();
        assert!(eval_one_step(&m, &parse_one_step("p ~> p").unwrap()).unwrap());
    }

    #[test]
    fn impossible_antecedent_entails_falsum() {
        let geometry =
            ConvexGeometry::validate(names(&["a", "b"]), vec![WorldSet::full(2), WorldSet::singleton(2, 1)]).unwrap();
        let mut valuation = Valuation::new();
        valuation.insert("p".into(), WorldSet::singleton(2, 1));
        let m = AbstractModel::new(geometry, valuation).unwrap();
        let f = parse_one_step("p ~> F").unwrap();
        for clause in [Clause::General, Clause::Feasible, Clause::Extreme] {
            assert!(eval_one_step_with(&m, &f, clause).unwrap());
        }
    }

    #[test]
    fn valuation_width_is_checked() {
        let mut valuation = Valuation::new();
        valuation.insert("p".into(), WorldSet::empty(3));
        let err = AbstractModel::new(ConvexGeometry::trivial(names(&["a"])), valuation).unwrap_err();
        assert!(matches!(err, ModelError::ValuationWidth { expected: 1, found: 3, .. }));
    }

    #[test]
    fn missing_letter_is_an_error() {
        let m = running_example();
        assert!(eval_one_step(&m, &parse_one_step("r ~> p").unwrap()).is_err());
    }
}
