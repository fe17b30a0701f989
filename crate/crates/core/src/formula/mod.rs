//! The two-layer conditional language: propositional formulas, and Boolean
//! combinations of conditionals whose operands are propositional.

mod parse;
mod render;

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::worldset::WorldSet;

pub use parse::{parse, parse_one_step, parse_prop, ParseError};

/// Letter name → set of worlds where the letter holds.
pub type Valuation = BTreeMap<String, WorldSet>;

/// Binary Boolean connectives shared by both layers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    And,
    Or,
    Implies,
    Iff,
}

impl BinOp {
    pub fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BinOp::And => a && b,
            BinOp::Or => a || b,
            BinOp::Implies => !a || b,
            BinOp::Iff => a == b,
        }
    }
}

/// A formula of classical propositional logic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Prop {
    Letter(String),
    Top,
    Bot,
    Not(Box<Prop>),
    Bin(BinOp, Box<Prop>, Box<Prop>),
}

impl Prop {
    pub fn letter(name: impl Into<String>) -> Prop {
        Prop::Letter(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Prop) -> Prop {
        Prop::Not(Box::new(f))
    }

    pub fn and(a: Prop, b: Prop) -> Prop {
        Prop::Bin(BinOp::And, Box::new(a), Box::new(b))
    }

    pub fn or(a: Prop, b: Prop) -> Prop {
        Prop::Bin(BinOp::Or, Box::new(a), Box::new(b))
    }

    pub fn implies(a: Prop, b: Prop) -> Prop {
        Prop::Bin(BinOp::Implies, Box::new(a), Box::new(b))
    }

    pub fn iff(a: Prop, b: Prop) -> Prop {
        Prop::Bin(BinOp::Iff, Box::new(a), Box::new(b))
    }

    pub fn collect_letters(&self, out: &mut BTreeSet<String>) {
        match self {
            Prop::Letter(name) => {
                out.insert(name.clone());
            }
            Prop::Top | Prop::Bot => {}
            Prop::Not(f) => f.collect_letters(out),
            Prop::Bin(_, a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
        }
    }

    pub fn letters(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    /// Truth value under a classical assignment.
    pub fn holds(&self, assignment: &dyn Fn(&str) -> bool) -> bool {
        match self {
            Prop::Letter(name) => assignment(name),
            Prop::Top => true,
            Prop::Bot => false,
            Prop::Not(f) => !f.holds(assignment),
            Prop::Bin(op, a, b) => op.apply(a.holds(assignment), b.holds(assignment)),
        }
    }
}

/// A Boolean combination of conditionals over propositional formulas.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OneStep {
    Cond(Prop, Prop),
    Not(Box<OneStep>),
    Bin(BinOp, Box<OneStep>, Box<OneStep>),
}

impl OneStep {
    pub fn cond(antecedent: Prop, consequent: Prop) -> OneStep {
        OneStep::Cond(antecedent, consequent)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: OneStep) -> OneStep {
        OneStep::Not(Box::new(f))
    }

    pub fn and(a: OneStep, b: OneStep) -> OneStep {
        OneStep::Bin(BinOp::And, Box::new(a), Box::new(b))
    }

    pub fn or(a: OneStep, b: OneStep) -> OneStep {
        OneStep::Bin(BinOp::Or, Box::new(a), Box::new(b))
    }

    pub fn implies(a: OneStep, b: OneStep) -> OneStep {
        OneStep::Bin(BinOp::Implies, Box::new(a), Box::new(b))
    }

    pub fn iff(a: OneStep, b: OneStep) -> OneStep {
        OneStep::Bin(BinOp::Iff, Box::new(a), Box::new(b))
    }

    /// Left-nested conjunction of `parts`; panics on an empty list.
    pub fn conjunction(parts: impl IntoIterator<Item = OneStep>) -> OneStep {
        parts.into_iter().reduce(OneStep::and).expect("empty conjunction")
    }

    pub fn letters(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.for_each_conditional(&mut |a, c| {
            a.collect_letters(&mut out);
            c.collect_letters(&mut out);
        });
        out
    }

    pub fn for_each_conditional<'a>(&'a self, visit: &mut impl FnMut(&'a Prop, &'a Prop)) {
        match self {
            OneStep::Cond(a, c) => visit(a, c),
            OneStep::Not(f) => f.for_each_conditional(visit),
            OneStep::Bin(_, a, b) => {
                a.for_each_conditional(visit);
                b.for_each_conditional(visit);
            }
        }
    }

    /// Evaluates the Boolean structure, delegating each conditional to `cond`.
    pub fn evaluate<E>(&self, cond: &mut impl FnMut(&Prop, &Prop) -> Result<bool, E>) -> Result<bool, E> {
        Ok(match self {
            OneStep::Cond(a, c) => cond(a, c)?,
            OneStep::Not(f) => !f.evaluate(cond)?,
            OneStep::Bin(op, a, b) => {
                let left = a.evaluate(cond)?;
                let right = b.evaluate(cond)?;
                op.apply(left, right)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Level0(Prop),
    Level1(OneStep),
}

/// A formula together with the letters occurring in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedFormula {
    formula: Formula,
    letters: BTreeSet<String>,
}

impl ParsedFormula {
    pub fn new(formula: Formula) -> Self {
        let letters = match &formula {
            Formula::Level0(p) => p.letters(),
            Formula::Level1(f) => f.letters(),
        };
        Self { formula, letters }
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn into_formula(self) -> Formula {
        self.formula
    }

    pub fn letters(&self) -> &BTreeSet<String> {
        &self.letters
    }

    pub fn is_one_step(&self) -> bool {
        matches!(self.formula, Formula::Level1(_))
    }
}

impl From<OneStep> for ParsedFormula {
    fn from(f: OneStep) -> Self {
        ParsedFormula::new(Formula::Level1(f))
    }
}

impl From<Prop> for ParsedFormula {
    fn from(p: Prop) -> Self {
        ParsedFormula::new(Formula::Level0(p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("letter `{0}` has no value in the valuation")]
pub struct UnknownLetter(pub String);

/// The set of worlds (out of `width`) where `f` holds under `valuation`.
pub fn extension(f: &Prop, width: usize, valuation: &Valuation) -> Result<WorldSet, UnknownLetter> {
    Ok(match f {
        Prop::Letter(name) => {
            let set = valuation.get(name).ok_or_else(|| UnknownLetter(name.clone()))?;
            assert_eq!(set.width(), width, "valuation of `{name}` has the wrong width");
            set.clone()
        }
        Prop::Top => WorldSet::full(width),
        Prop::Bot => WorldSet::empty(width),
        Prop::Not(g) => extension(g, width, valuation)?.complement(),
        Prop::Bin(op, a, b) => {
            let a = extension(a, width, valuation)?;
            let b = extension(b, width, valuation)?;
            match op {
                BinOp::And => a.intersection(&b),
                BinOp::Or => a.union(&b),
                BinOp::Implies => a.complement().union(&b),
                BinOp::Iff => a.intersection(&b).union(&a.union(&b).complement()),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn running_valuation() -> Valuation {
        // worlds: 0 = pq, 1 = p~q, 2 = ~pq, 3 = ~p~q
        let mut v = Valuation::new();
        v.insert("p".into(), WorldSet::from_indices(4, [0, 1]));
        v.insert("q".into(), WorldSet::from_indices(4, [0, 2]));
        v
    }

    #[test]
    fn exclusive_or_on_running_example() {
        let f = Prop::not(Prop::iff(Prop::letter("p"), Prop::letter("q")));
        let ext = extension(&f, 4, &running_valuation()).unwrap();
        assert_eq!(ext, WorldSet::from_indices(4, [1, 2]));
    }

    #[test]
    fn top_is_everything() {
        let ext = extension(&Prop::Top, 4, &running_valuation()).unwrap();
        assert!(ext.is_full());
        assert!(extension(&Prop::Bot, 4, &running_valuation()).unwrap().is_empty());
    }

    #[test]
    fn disjunctive_antecedent() {
        // x, y, z, u, v
        let mut v = Valuation::new();
        v.insert("p".into(), WorldSet::from_indices(5, [0, 2, 3]));
        v.insert("q".into(), WorldSet::from_indices(5, [0, 1, 3]));
        let ext = extension(&Prop::or(Prop::letter("p"), Prop::letter("q")), 5, &v).unwrap();
        assert_eq!(ext.to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn unknown_letter_is_reported() {
        let err = extension(&Prop::letter("r"), 4, &running_valuation()).unwrap_err();
        assert_eq!(err, UnknownLetter("r".into()));
    }

    #[test]
    fn one_step_letters_and_conditionals() {
        let f = OneStep::and(
            OneStep::cond(Prop::Top, Prop::letter("p")),
            OneStep::not(OneStep::cond(Prop::letter("q"), Prop::letter("r"))),
        );
        assert_eq!(f.letters().into_iter().collect::<Vec<_>>(), vec!["p", "q", "r"]);
        let mut n = 0;
        f.for_each_conditional(&mut |_, _| n += 1);
        assert_eq!(n, 2);
    }
}
