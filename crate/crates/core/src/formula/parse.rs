use std::fmt;

use thiserror::Error;

use super::{BinOp, Formula, OneStep, ParsedFormula, Prop};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: found {found}, expected one of {}", .expected.join(", "))]
    Syntax {
        position: usize,
        found: String,
        expected: Vec<&'static str>,
    },
    #[error("conditional at position {position} occurs inside the operand of another conditional")]
    Nesting { position: usize },
    #[error("`{symbol}` at position {position} occurs outside every conditional")]
    MixedLevel { symbol: String, position: usize },
    #[error("expected a {expected} formula")]
    WrongLevel { expected: &'static str },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Letter(String),
    Top,
    Bot,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Cond,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Letter(name) => write!(f, "letter `{name}`"),
            Tok::Top => f.write_str("`T`"),
            Tok::Bot => f.write_str("`F`"),
            Tok::Not => f.write_str("`~`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Implies => f.write_str("`->`"),
            Tok::Iff => f.write_str("`<->`"),
            Tok::Cond => f.write_str("`~>`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let bad = |position: usize, found: String| ParseError::Syntax {
        position,
        found,
        expected: vec!["letter", "T", "F", "~", "(", ")", "&", "|", "->", "<->", "~>"],
    };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '¬' => Tok::Not,
            '→' => Tok::Implies,
            '↔' => Tok::Iff,
            '⇝' => Tok::Cond,
            '⊤' => Tok::Top,
            '⊥' => Tok::Bot,
            '~' => {
                if chars.get(i + 1) == Some(&'>') {
                    i += 1;
                    Tok::Cond
                } else {
                    Tok::Not
                }
            }
            '-' => {
                if chars.get(i + 1) != Some(&'>') {
                    return Err(bad(start, "`-`".into()));
                }
                i += 1;
                Tok::Implies
            }
            '<' => {
                if chars.get(i + 1) != Some(&'-') || chars.get(i + 2) != Some(&'>') {
                    return Err(bad(start, "`<`".into()));
                }
                i += 2;
                Tok::Iff
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                i = j - 1;
                if c.is_ascii_lowercase() {
                    Tok::Letter(word)
                } else if word == "T" {
                    Tok::Top
                } else if word == "F" {
                    Tok::Bot
                } else {
                    return Err(bad(start, format!("`{word}`")));
                }
            }
            other => return Err(bad(start, format!("`{other}`"))),
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

/// Untyped syntax tree; conditionals may still be arbitrarily placed.
enum Raw {
    Letter(String, usize),
    Top(usize),
    Bot(usize),
    Not(Box<Raw>),
    Bin(BinOp, Box<Raw>, Box<Raw>),
    Cond(Box<Raw>, Box<Raw>, usize),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

const OPERAND: &[&str] = &["letter", "T", "F", "~", "("];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn position(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        ParseError::Syntax {
            position: self.position(),
            found: self.peek().to_string(),
            expected: expected.to_vec(),
        }
    }

    // bottom := disj (("~>" | "->" | "<->") disj)?
    fn bottom(&mut self) -> Result<Raw, ParseError> {
        let lhs = self.disjunction()?;
        let (tok, at) = match self.peek() {
            Tok::Cond | Tok::Implies | Tok::Iff => self.bump(),
            _ => return Ok(lhs),
        };
        let rhs = self.disjunction()?;
        if matches!(self.peek(), Tok::Cond | Tok::Implies | Tok::Iff) {
            // the bottom tier does not associate
            return Err(self.error(&[")", "end of input", "&", "|"]));
        }
        Ok(match tok {
            Tok::Cond => Raw::Cond(Box::new(lhs), Box::new(rhs), at),
            Tok::Implies => Raw::Bin(BinOp::Implies, Box::new(lhs), Box::new(rhs)),
            _ => Raw::Bin(BinOp::Iff, Box::new(lhs), Box::new(rhs)),
        })
    }

    fn disjunction(&mut self) -> Result<Raw, ParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = Raw::Bin(BinOp::Or, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Raw, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Raw::Bin(BinOp::And, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Raw, ParseError> {
        if *self.peek() == Tok::Not {
            self.bump();
            return Ok(Raw::Not(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Raw, ParseError> {
        match self.peek().clone() {
            Tok::Letter(name) => {
                let (_, at) = self.bump();
                Ok(Raw::Letter(name, at))
            }
            Tok::Top => Ok(Raw::Top(self.bump().1)),
            Tok::Bot => Ok(Raw::Bot(self.bump().1)),
            Tok::LParen => {
                self.bump();
                let inner = self.bottom()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&[")", "&", "|", "->", "<->", "~>"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(OPERAND)),
        }
    }
}

fn first_conditional(raw: &Raw) -> Option<usize> {
    match raw {
        Raw::Letter(..) | Raw::Top(_) | Raw::Bot(_) => None,
        Raw::Not(f) => first_conditional(f),
        Raw::Bin(_, a, b) => first_conditional(a).or_else(|| first_conditional(b)),
        Raw::Cond(_, _, at) => Some(*at),
    }
}

fn check_nesting(raw: &Raw) -> Result<(), ParseError> {
    match raw {
        Raw::Letter(..) | Raw::Top(_) | Raw::Bot(_) => Ok(()),
        Raw::Not(f) => check_nesting(f),
        Raw::Bin(_, a, b) => {
            check_nesting(a)?;
            check_nesting(b)
        }
        Raw::Cond(a, b, _) => match first_conditional(a).or_else(|| first_conditional(b)) {
            Some(position) => Err(ParseError::Nesting { position }),
            None => Ok(()),
        },
    }
}

fn to_prop(raw: Raw) -> Prop {
    match raw {
        Raw::Letter(name, _) => Prop::Letter(name),
        Raw::Top(_) => Prop::Top,
        Raw::Bot(_) => Prop::Bot,
        Raw::Not(f) => Prop::not(to_prop(*f)),
        Raw::Bin(op, a, b) => Prop::Bin(op, Box::new(to_prop(*a)), Box::new(to_prop(*b))),
        Raw::Cond(..) => unreachable!("conditionals are rejected before conversion"),
    }
}

fn to_one_step(raw: Raw) -> Result<OneStep, ParseError> {
    match raw {
        Raw::Letter(name, position) => Err(ParseError::MixedLevel { symbol: name, position }),
        Raw::Top(position) => Err(ParseError::MixedLevel { symbol: "T".into(), position }),
        Raw::Bot(position) => Err(ParseError::MixedLevel { symbol: "F".into(), position }),
        Raw::Not(f) => Ok(OneStep::not(to_one_step(*f)?)),
        Raw::Bin(op, a, b) => Ok(OneStep::Bin(
            op,
            Box::new(to_one_step(*a)?),
            Box::new(to_one_step(*b)?),
        )),
        Raw::Cond(a, b, _) => Ok(OneStep::Cond(to_prop(*a), to_prop(*b))),
    }
}

/// Parses formula text.
///
/// ASCII connectives are `~ & | -> <-> ~>` with constants `T` and `F`;
/// the Unicode forms `¬ ∧ ∨ → ↔ ⇝ ⊤ ⊥` are accepted as aliases. `~` binds
/// tightest, then `&`, then `|`; `~>`, `->` and `<->` share the lowest tier
/// and must be parenthesized when chained.
pub fn parse(text: &str) -> Result<ParsedFormula, ParseError> {
    let mut parser = Parser { toks: lex(text)?, pos: 0 };
    let raw = parser.bottom()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error(&["end of input", "&", "|", "->", "<->", "~>"]));
    }
    check_nesting(&raw)?;
    let formula = if first_conditional(&raw).is_some() {
        Formula::Level1(to_one_step(raw)?)
    } else {
        Formula::Level0(to_prop(raw))
    };
    Ok(ParsedFormula::new(formula))
}

pub fn parse_one_step(text: &str) -> Result<OneStep, ParseError> {
    match parse(text)?.into_formula() {
        Formula::Level1(f) => Ok(f),
        Formula::Level0(_) => Err(ParseError::WrongLevel { expected: "conditional" }),
    }
}

pub fn parse_prop(text: &str) -> Result<Prop, ParseError> {
    match parse(text)?.into_formula() {
        Formula::Level0(p) => Ok(p),
        Formula::Level1(_) => Err(ParseError::WrongLevel { expected: "propositional" }),
    }
}
