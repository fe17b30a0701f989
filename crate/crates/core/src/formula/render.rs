//! ASCII rendering with the parentheses needed to parse back to the same tree.
//!
//! Compound operands of `~>` are always parenthesized; everywhere else only
//! where precedence or associativity requires it.

use std::fmt::{self, Display, Formatter, Write};

use super::{BinOp, Formula, OneStep, ParsedFormula, Prop};

const BOTTOM: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const ATOM: u8 = 4;

fn level(op: BinOp) -> u8 {
    match op {
        BinOp::And => AND,
        BinOp::Or => OR,
        BinOp::Implies | BinOp::Iff => BOTTOM,
    }
}

fn symbol(op: BinOp) -> &'static str {
    match op {
        BinOp::And => " & ",
        BinOp::Or => " | ",
        BinOp::Implies => " -> ",
        BinOp::Iff => " <-> ",
    }
}

fn wrapped(f: &mut Formatter<'_>, paren: bool, inner: &dyn Display) -> fmt::Result {
    if paren {
        write!(f, "({inner})")
    } else {
        write!(f, "{inner}")
    }
}

fn binary(
    f: &mut Formatter<'_>,
    op: BinOp,
    (lhs, lhs_level): (&dyn Display, u8),
    (rhs, rhs_level): (&dyn Display, u8),
) -> fmt::Result {
    let own = level(op);
    let (left_paren, right_paren) = if own == BOTTOM {
        (lhs_level == BOTTOM, rhs_level == BOTTOM)
    } else {
        (lhs_level < own, rhs_level <= own)
    };
    wrapped(f, left_paren, lhs)?;
    f.write_str(symbol(op))?;
    wrapped(f, right_paren, rhs)
}

impl Prop {
    fn level(&self) -> u8 {
        match self {
            Prop::Bin(op, ..) => level(*op),
            _ => ATOM,
        }
    }
}

impl OneStep {
    fn level(&self) -> u8 {
        match self {
            OneStep::Cond(..) => BOTTOM,
            OneStep::Bin(op, ..) => level(*op),
            OneStep::Not(_) => ATOM,
        }
    }
}

impl Display for Prop {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Prop::Letter(name) => f.write_str(name),
            Prop::Top => f.write_char('T'),
            Prop::Bot => f.write_char('F'),
            Prop::Not(g) => {
                f.write_char('~')?;
                wrapped(f, g.level() < ATOM, g)
            }
            Prop::Bin(op, a, b) => binary(f, *op, (a, a.level()), (b, b.level())),
        }
    }
}

impl Display for OneStep {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            OneStep::Cond(a, c) => {
                wrapped(f, a.level() < ATOM, a)?;
                f.write_str(" ~> ")?;
                wrapped(f, c.level() < ATOM, c)
            }
            OneStep::Not(g) => {
                f.write_char('~')?;
                wrapped(f, g.level() < ATOM, g)
            }
            OneStep::Bin(op, a, b) => binary(f, *op, (a, a.level()), (b, b.level())),
        }
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Level0(p) => p.fmt(f),
            Formula::Level1(g) => g.fmt(f),
        }
    }
}

impl Display for ParsedFormula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        self.formula().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    #[test]
    fn conditional_with_disjunctive_antecedent() {
        let f = OneStep::cond(Prop::or(Prop::letter("p"), Prop::letter("q")), Prop::letter("r"));
        assert_eq!(f.to_string(), "(p | q) ~> r");
    }

    #[test]
    fn negated_conditional() {
        let f = OneStep::not(OneStep::cond(Prop::Top, Prop::letter("r")));
        assert_eq!(f.to_string(), "~(T ~> r)");
    }

    #[test]
    fn associativity_parentheses() {
        let (p, q, r) = (Prop::letter("p"), Prop::letter("q"), Prop::letter("r"));
        let left = Prop::and(Prop::and(p.clone(), q.clone()), r.clone());
        let right = Prop::and(p.clone(), Prop::and(q.clone(), r.clone()));
        assert_eq!(left.to_string(), "p & q & r");
        assert_eq!(right.to_string(), "p & (q & r)");
        assert_eq!(Prop::and(Prop::or(p, q), r).to_string(), "(p | q) & r");
    }

    #[test]
    fn golden_corpus_is_stable() {
        let corpus = [
            "(p | q) ~> r",
            "(~p | ~q) ~> ~p",
            "T ~> (q <-> r)",
            "~(T ~> r)",
            "(T ~> p) & (q ~> p) & (~(p <-> q) ~> p) & ~(~q ~> p) & ~((p <-> q) ~> p) & ~(~p ~> ~q)",
            "(p ~> q) & (p ~> r) -> ((p & r) ~> q)",
            "((p | q | r) ~> s) -> ((p | q) ~> s) | ((p | r) ~> s) | ((q | r) ~> s)",
            "p & ~~q | F",
            "(p -> q) <-> (~q -> ~p)",
        ];
        for text in corpus {
            let parsed = parse(text).unwrap();
            assert_eq!(parsed.to_string(), text);
        }
    }
}
