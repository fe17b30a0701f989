//! One-step formulas compiled to bitmask form for the search loops.
//!
//! Worlds are bit positions of a `u64`, letters are indices into a letter
//! table, and every distinct conditional is evaluated once per model.

use crate::formula::{BinOp, OneStep, Prop};

enum MaskProp {
    Letter(usize),
    Top,
    Bot,
    Not(Box<MaskProp>),
    Bin(BinOp, Box<MaskProp>, Box<MaskProp>),
}

impl MaskProp {
    fn compile(p: &Prop, letters: &[String]) -> MaskProp {
        match p {
            Prop::Letter(name) => MaskProp::Letter(
                letters
                    .iter()
                    .position(|l| l == name)
                    .expect("letter table covers the formula"),
            ),
            Prop::Top => MaskProp::Top,
            Prop::Bot => MaskProp::Bot,
            Prop::Not(a) => MaskProp::Not(Box::new(MaskProp::compile(a, letters))),
            Prop::Bin(op, a, b) => MaskProp::Bin(
                *op,
                Box::new(MaskProp::compile(a, letters)),
                Box::new(MaskProp::compile(b, letters)),
            ),
        }
    }

    fn eval(&self, masks: &[u64], full: u64) -> u64 {
        match self {
            MaskProp::Letter(i) => masks[*i],
            MaskProp::Top => full,
            MaskProp::Bot => 0,
            MaskProp::Not(a) => full & !a.eval(masks, full),
            MaskProp::Bin(op, a, b) => {
                let (x, y) = (a.eval(masks, full), b.eval(masks, full));
                full & match op {
                    BinOp::And => x & y,
                    BinOp::Or => x | y,
                    BinOp::Implies => !x | y,
                    BinOp::Iff => !(x ^ y),
                }
            }
        }
    }
}

enum Skeleton {
    Cond(usize),
    Not(Box<Skeleton>),
    Bin(BinOp, Box<Skeleton>, Box<Skeleton>),
}

impl Skeleton {
    fn eval(&self, truth: u64) -> bool {
        match self {
            Skeleton::Cond(i) => truth & (1 << i) != 0,
            Skeleton::Not(a) => !a.eval(truth),
            Skeleton::Bin(op, a, b) => op.apply(a.eval(truth), b.eval(truth)),
        }
    }
}

pub(crate) struct Compiled {
    pub letters: Vec<String>,
    conds: Vec<(MaskProp, MaskProp)>,
    skeleton: Skeleton,
}

impl Compiled {
    pub fn new(f: &OneStep) -> Compiled {
        let letters: Vec<String> = f.letters().into_iter().collect();
        let mut seen: Vec<(Prop, Prop)> = Vec::new();
        let skeleton = Compiled::skeleton(f, &mut seen);
        assert!(seen.len() <= 64, "too many distinct conditionals");
        let conds = seen
            .iter()
            .map(|(a, c)| (MaskProp::compile(a, &letters), MaskProp::compile(c, &letters)))
            .collect();
        Compiled {
            letters,
            conds,
            skeleton,
        }
    }

    fn skeleton(f: &OneStep, seen: &mut Vec<(Prop, Prop)>) -> Skeleton {
        match f {
            OneStep::Cond(a, c) => {
                let key = (a.clone(), c.clone());
                let idx = match seen.iter().position(|k| *k == key) {
                    Some(i) => i,
                    None => {
                        seen.push(key);
                        seen.len() - 1
                    }
                };
                Skeleton::Cond(idx)
            }
            OneStep::Not(a) => Skeleton::Not(Box::new(Compiled::skeleton(a, seen))),
            OneStep::Bin(op, a, b) => Skeleton::Bin(
                *op,
                Box::new(Compiled::skeleton(a, seen)),
                Box::new(Compiled::skeleton(b, seen)),
            ),
        }
    }

    /// Truth of the formula given letter masks over `width` worlds and an
    /// extreme-point operator on masks.
    pub fn holds(&self, masks: &[u64], width: usize, extreme: impl Fn(u64) -> u64) -> bool {
        let full = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
        let mut truth = 0u64;
        for (i, (a, c)) in self.conds.iter().enumerate() {
            if extreme(a.eval(masks, full)) & !c.eval(masks, full) == 0 {
                truth |= 1 << i;
            }
        }
        self.skeleton.eval(truth)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_one_step;

    #[test]
    fn repeated_conditionals_share_a_slot() {
        let f = parse_one_step("(p ~> q) & ~(p ~> q) | (q ~> p)").unwrap();
        let c = Compiled::new(&f);
        assert_eq!(c.conds.len(), 2);
        // two worlds, every subset is convex: extreme points are the set itself
        assert!(c.holds(&[0b01, 0b01], 2, |x| x));
        assert!(!c.holds(&[0b01, 0b11], 2, |x| x));
    }
}
