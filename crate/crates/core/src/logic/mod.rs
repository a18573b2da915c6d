//! The two-layer formula language.
//!
//! Black formulas are three-valued Łukasiewicz formulas over arguments; they are
//! only reachable from the white (dynamic modal) layer through `◆`.

mod parse;

use std::fmt;

use crate::argsem::{ArgSet, Labelling};
use crate::ids::ArgumentId;

pub use parse::{parse_black, parse_formula, ParseError, ParseErrorKind};

/// A Łukasiewicz truth value in `{0, ½, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TruthValue {
    False,
    Half,
    True,
}

impl TruthValue {
    fn halves(self) -> i8 {
        match self {
            TruthValue::False => 0,
            TruthValue::Half => 1,
            TruthValue::True => 2,
        }
    }

    fn from_halves(h: i8) -> Self {
        match h {
            0 => TruthValue::False,
            1 => TruthValue::Half,
            2 => TruthValue::True,
            _ => unreachable!("truth value out of range: {h}/2"),
        }
    }

    /// `1 − v`
    pub fn negate(self) -> Self {
        Self::from_halves(2 - self.halves())
    }

    /// `min{1, 1 − (v₁ − v₂)}`
    pub fn implies(self, other: Self) -> Self {
        Self::from_halves((2 - (self.halves() - other.halves())).min(2))
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.halves()) / 2.0
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue::False => "0",
            TruthValue::Half => "1/2",
            TruthValue::True => "1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BlackFormula {
    Atom(ArgumentId),
    Neg(Box<BlackFormula>),
    Implies(Box<BlackFormula>, Box<BlackFormula>),
}

impl BlackFormula {
    pub fn atom(p: ArgumentId) -> Self {
        BlackFormula::Atom(p)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        BlackFormula::Neg(Box::new(self))
    }

    pub fn implies(self, other: Self) -> Self {
        BlackFormula::Implies(Box::new(self), Box::new(other))
    }

    /// Łukasiewicz disjunction `(α → β) → β`.
    pub fn or(self, other: Self) -> Self {
        self.implies(other.clone()).implies(other)
    }

    /// Łukasiewicz conjunction `¬(¬α ∨ ¬β)`.
    pub fn and(self, other: Self) -> Self {
        self.not().or(other.not()).not()
    }

    pub fn atoms(&self, out: &mut ArgSet) {
        match self {
            BlackFormula::Atom(p) => {
                out.insert(*p);
            }
            BlackFormula::Neg(a) => a.atoms(out),
            BlackFormula::Implies(a, b) => {
                a.atoms(out);
                b.atoms(out);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WhiteFormula {
    /// `◆α`: some labelling of the current state makes `α` true.
    BlackDiamond(BlackFormula),
    Neg(Box<WhiteFormula>),
    And(Box<WhiteFormula>, Box<WhiteFormula>),
    /// `⟨p⟩φ`: some update with `p` leads to a state satisfying `φ`.
    UpdateDiamond(ArgumentId, Box<WhiteFormula>),
    /// `◊φ`: some update with some argument leads to a state satisfying `φ`.
    ExistsDiamond(Box<WhiteFormula>),
}

impl WhiteFormula {
    pub fn diamond(alpha: BlackFormula) -> Self {
        WhiteFormula::BlackDiamond(alpha)
    }

    /// `■α = ¬◆¬α`
    pub fn black_box(alpha: BlackFormula) -> Self {
        WhiteFormula::BlackDiamond(alpha.not()).not()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        WhiteFormula::Neg(Box::new(self))
    }

    pub fn and(self, other: Self) -> Self {
        WhiteFormula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Self) -> Self {
        self.not().and(other.not()).not()
    }

    pub fn implies(self, other: Self) -> Self {
        self.and(other.not()).not()
    }

    pub fn iff(self, other: Self) -> Self {
        self.clone().implies(other.clone()).and(other.implies(self))
    }

    pub fn update(p: ArgumentId, body: Self) -> Self {
        WhiteFormula::UpdateDiamond(p, Box::new(body))
    }

    /// `[p]φ = ¬⟨p⟩¬φ`
    pub fn update_box(p: ArgumentId, body: Self) -> Self {
        Self::update(p, body.not()).not()
    }

    pub fn exists(body: Self) -> Self {
        WhiteFormula::ExistsDiamond(Box::new(body))
    }

    /// `□φ = ¬◊¬φ`
    pub fn forall(body: Self) -> Self {
        Self::exists(body.not()).not()
    }
}

/// `π̄(α)`; arguments outside the labelling's domain are valued ½.
pub fn eval_black(lab: &Labelling, alpha: &BlackFormula) -> TruthValue {
    match alpha {
        BlackFormula::Atom(p) => {
            if lab.in_set.contains(p) {
                TruthValue::True
            } else if lab.out_set.contains(p) {
                TruthValue::False
            } else {
                TruthValue::Half
            }
        }
        BlackFormula::Neg(a) => eval_black(lab, a).negate(),
        BlackFormula::Implies(a, b) => eval_black(lab, a).implies(eval_black(lab, b)),
    }
}

/// Deepest nesting of `⟨p⟩` and `◊`.
pub fn white_depth(phi: &WhiteFormula) -> usize {
    match phi {
        WhiteFormula::BlackDiamond(_) => 0,
        WhiteFormula::Neg(f) => white_depth(f),
        WhiteFormula::And(f, g) => white_depth(f).max(white_depth(g)),
        WhiteFormula::UpdateDiamond(_, f) | WhiteFormula::ExistsDiamond(f) => 1 + white_depth(f),
    }
}

/// Arguments occurring inside black subformulas.
pub fn black_atoms(phi: &WhiteFormula) -> ArgSet {
    let mut out = ArgSet::new();
    collect_white(phi, &mut |node| {
        if let WhiteFormula::BlackDiamond(alpha) = node {
            alpha.atoms(&mut out);
        }
    });
    out
}

/// Arguments used as `⟨p⟩` / `[p]` indices.
pub fn modal_args(phi: &WhiteFormula) -> ArgSet {
    let mut out = ArgSet::new();
    collect_white(phi, &mut |node| {
        if let WhiteFormula::UpdateDiamond(p, _) = node {
            out.insert(*p);
        }
    });
    out
}

fn collect_white(phi: &WhiteFormula, visit: &mut impl FnMut(&WhiteFormula)) {
    visit(phi);
    match phi {
        WhiteFormula::BlackDiamond(_) => {}
        WhiteFormula::Neg(f) | WhiteFormula::UpdateDiamond(_, f) | WhiteFormula::ExistsDiamond(f) => {
            collect_white(f, visit)
        }
        WhiteFormula::And(f, g) => {
            collect_white(f, visit);
            collect_white(g, visit);
        }
    }
}

impl fmt::Display for BlackFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlackFormula::Atom(p) => write!(f, "{p}"),
            BlackFormula::Neg(a) => write!(f, "~{a}"),
            BlackFormula::Implies(a, b) => write!(f, "({a} -> {b})"),
        }
    }
}

/// Concrete syntax accepted by [`parse_formula`]. Binary connectives are fully
/// parenthesised and the box abbreviations are recovered where they match, so
/// printing then parsing yields the same tree.
impl fmt::Display for WhiteFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WhiteFormula::Neg(inner) => match inner.as_ref() {
                WhiteFormula::BlackDiamond(BlackFormula::Neg(a)) => write!(f, "[[ {a} ]]"),
                WhiteFormula::UpdateDiamond(p, body) => match body.as_ref() {
                    WhiteFormula::Neg(b) => write!(f, "[{p}] {b}"),
                    _ => write!(f, "~{inner}"),
                },
                WhiteFormula::ExistsDiamond(body) => match body.as_ref() {
                    WhiteFormula::Neg(b) => write!(f, "A* {b}"),
                    _ => write!(f, "~{inner}"),
                },
                _ => write!(f, "~{inner}"),
            },
            WhiteFormula::BlackDiamond(a) => write!(f, "<< {a} >>"),
            WhiteFormula::And(a, b) => write!(f, "({a} & {b})"),
            WhiteFormula::UpdateDiamond(p, body) => write!(f, "<{p}> {body}"),
            WhiteFormula::ExistsDiamond(body) => write!(f, "E* {body}"),
        }
    }
}
