//! Model checking at states of the deliberative Kripke model.
//!
//! `◊` nominally ranges over an unbounded argument universe. The checker
//! evaluates it over a finite quantifier domain: the `d(φ)`-vicinity of the
//! formula's black atoms, every argument the formula updates with explicitly,
//! the arguments already present in the state, and a pool of fresh arguments
//! that no view mentions. Arguments outside that set carry no view edges
//! after shrinking, so they behave exactly like some unused fresh argument.
//! [`oracle_check`] is the brute-force counterpart used to validate this.
//!
//! The reduction relies on `◆α` depending only on the components that meet
//! `α`'s atoms, which holds only when every framework has an extension. For
//! semantics without that guarantee (stable) nothing is shrunk and `◊` ranges
//! over the whole basis universe plus the fresh pool.

mod bisim;
mod oracle;
mod tree;

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::argsem::{labellings, ArgSet, EdgeSet, SemanticsKind};
use crate::basis::{shrink_with_stats, update_set, vicinity, Basis, ShrinkStats, State};
use crate::ids::ArgumentId;
use crate::logic::{black_atoms, eval_black, modal_args, white_depth, BlackFormula, TruthValue, WhiteFormula};

pub use bisim::n_bisimilar;
pub use oracle::{oracle_check, oracle_universe};
pub use tree::{children, unfold_tree, TreeNode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("fresh-argument pool of size {pool} is smaller than the formula's white depth {depth}")]
    PoolExhausted { pool: usize, depth: usize },
}

#[derive(Debug, Clone, Default)]
pub struct CheckConfig {
    pub semantics: SemanticsKind,
    /// Defaults to the formula's white depth.
    pub fresh_pool_size: Option<usize>,
    /// Replaces the computed quantifier domain entirely.
    pub quantifier_domain_override: Option<ArgSet>,
    /// Cache results per (state, subformula) within one call.
    pub memoize: bool,
}

impl CheckConfig {
    pub fn new(semantics: SemanticsKind) -> Self {
        CheckConfig {
            semantics,
            ..Default::default()
        }
    }

    pub fn memoized(mut self) -> Self {
        self.memoize = true;
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CheckStats {
    pub states_visited: u64,
    pub successors_enumerated: u64,
    pub memo_hits: u64,
}

/// One step of a satisfying deliberative timeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub argument: ArgumentId,
    pub chosen_edge_set: EdgeSet,
    pub substate: State,
    /// The formula that holds at `substate`.
    pub subformula: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Witness>,
}

/// `◆α` at `q`: some labelling of `q` gives `α` the value 1.
pub fn black_sat(q: &State, sem: SemanticsKind, alpha: &BlackFormula) -> bool {
    labellings(&q.framework(), sem)
        .iter()
        .any(|lab| eval_black(lab, alpha) == TruthValue::True)
}

/// The finite set `◊` ranges over when checking `phi` at the root.
pub fn quantifier_domain(basis: &Basis, phi: &WhiteFormula, cfg: &CheckConfig) -> ArgSet {
    domain_at(basis, phi, cfg, &State::root())
}

fn domain_at(basis: &Basis, phi: &WhiteFormula, cfg: &CheckConfig, q: &State) -> ArgSet {
    if let Some(domain) = &cfg.quantifier_domain_override {
        return domain.clone();
    }
    let depth = white_depth(phi);
    let mut domain = if cfg.semantics.always_has_extension() {
        vicinity(basis, &black_atoms(phi), depth)
    } else {
        basis.universe()
    };
    domain.extend(modal_args(phi));
    domain.extend(q.args.iter().copied());
    let pool = cfg.fresh_pool_size.unwrap_or(depth);
    let universe = basis.universe();
    domain.extend(
        (0..)
            .map(ArgumentId::fresh)
            .filter(|f| !q.args.contains(f) && !universe.contains(f))
            .take(pool),
    );
    domain
}

fn check_pool(phi: &WhiteFormula, cfg: &CheckConfig) -> Result<(), CheckError> {
    let depth = white_depth(phi);
    match cfg.fresh_pool_size {
        Some(pool) if cfg.quantifier_domain_override.is_none() && pool < depth => {
            Err(CheckError::PoolExhausted { pool, depth })
        }
        _ => Ok(()),
    }
}

/// Evaluation state for one top-level check.
pub struct Checker<'a> {
    basis: &'a Basis,
    semantics: SemanticsKind,
    domain: ArgSet,
    memo: Option<HashMap<(State, *const WhiteFormula), bool>>,
    stats: CheckStats,
}

impl<'a> Checker<'a> {
    pub fn new(basis: &'a Basis, phi: &WhiteFormula, q: &State, cfg: &CheckConfig) -> Result<Self, CheckError> {
        check_pool(phi, cfg)?;
        Ok(Checker {
            basis,
            semantics: cfg.semantics,
            domain: domain_at(basis, phi, cfg, q),
            memo: cfg.memoize.then(HashMap::new),
            stats: CheckStats::default(),
        })
    }

    pub fn domain(&self) -> &ArgSet {
        &self.domain
    }

    pub fn stats(&self) -> CheckStats {
        self.stats
    }

    pub fn eval(&mut self, q: &State, phi: &WhiteFormula) -> bool {
        let key = (q.clone(), phi as *const WhiteFormula);
        if let Some(&hit) = self.memo.as_ref().and_then(|m| m.get(&key)) {
            self.stats.memo_hits += 1;
            return hit;
        }
        self.stats.states_visited += 1;
        let value = match phi {
            WhiteFormula::BlackDiamond(alpha) => black_sat(q, self.semantics, alpha),
            WhiteFormula::Neg(f) => !self.eval(q, f),
            WhiteFormula::And(f, g) => self.eval(q, f) && self.eval(q, g),
            WhiteFormula::UpdateDiamond(p, f) => self.step(q, *p, f).is_some(),
            WhiteFormula::ExistsDiamond(f) => self.exists_step(q, f).is_some(),
        };
        if let Some(memo) = self.memo.as_mut() {
            memo.insert(key, value);
        }
        value
    }

    /// First event for `p` whose successor satisfies `body`.
    fn step(&mut self, q: &State, p: ArgumentId, body: &WhiteFormula) -> Option<(EdgeSet, State)> {
        let mut seen = BTreeSet::new();
        for x in update_set(self.basis, q, p) {
            let mut next = q.clone();
            next.args.insert(p);
            next.edges.extend(x.iter().copied());
            if !seen.insert(next.clone()) {
                continue;
            }
            self.stats.successors_enumerated += 1;
            if self.eval(&next, body) {
                return Some((x, next));
            }
        }
        None
    }

    fn exists_step(&mut self, q: &State, body: &WhiteFormula) -> Option<(ArgumentId, EdgeSet, State)> {
        let domain: Vec<ArgumentId> = self.domain.iter().copied().collect();
        domain
            .into_iter()
            .find_map(|p| self.step(q, p, body).map(|(x, s)| (p, x, s)))
    }

    /// Witness records for the existential choices that make `phi` true at `q`.
    /// Empty when `phi` is false or holds without any existential step.
    pub fn trace(&mut self, q: &State, phi: &WhiteFormula) -> Vec<Witness> {
        if !self.eval(q, phi) {
            return Vec::new();
        }
        match phi {
            WhiteFormula::BlackDiamond(_) => Vec::new(),
            WhiteFormula::And(f, g) => {
                let mut out = self.trace(q, f);
                out.extend(self.trace(q, g));
                out
            }
            WhiteFormula::Neg(inner) => match inner.as_ref() {
                WhiteFormula::Neg(f) => self.trace(q, f),
                _ => Vec::new(),
            },
            WhiteFormula::UpdateDiamond(p, f) => {
                let (x, next) = self.step(q, *p, f).expect("formula holds");
                vec![self.record(*p, x, next, f)]
            }
            WhiteFormula::ExistsDiamond(f) => {
                let (p, x, next) = self.exists_step(q, f).expect("formula holds");
                vec![self.record(p, x, next, f)]
            }
        }
    }

    fn record(&mut self, argument: ArgumentId, x: EdgeSet, substate: State, f: &WhiteFormula) -> Witness {
        let children = self.trace(&substate, f);
        Witness {
            argument,
            chosen_edge_set: x,
            substate,
            subformula: f.to_string(),
            children,
        }
    }
}

/// Truth of `phi` at state `q` of the model induced by `basis`.
pub fn check(basis: &Basis, phi: &WhiteFormula, q: &State, cfg: &CheckConfig) -> Result<bool, CheckError> {
    Ok(Checker::new(basis, phi, q, cfg)?.eval(q, phi))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootCheck {
    pub verdict: bool,
    pub shrink: ShrinkStats,
    pub stats: CheckStats,
    pub domain_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<Witness>>,
}

/// Truth of `phi` at `(∅, ∅)`, checked on the basis shrunk to `phi`'s vicinity
/// when the semantics allows it.
pub fn check_at_root(basis: &Basis, phi: &WhiteFormula, cfg: &CheckConfig) -> Result<bool, CheckError> {
    Ok(check_at_root_detailed(basis, phi, cfg, false)?.verdict)
}

pub fn check_at_root_detailed(
    basis: &Basis,
    phi: &WhiteFormula,
    cfg: &CheckConfig,
    with_trace: bool,
) -> Result<RootCheck, CheckError> {
    let (shrunk, shrink) = if cfg.semantics.always_has_extension() {
        shrink_with_stats(basis, phi)
    } else {
        let unchanged = ShrinkStats {
            vicinity_size: basis.universe().len(),
            edges_kept: basis.edge_count(),
            edges_dropped: 0,
        };
        (basis.clone(), unchanged)
    };
    let root = State::root();
    let mut checker = Checker::new(&shrunk, phi, &root, cfg)?;
    let verdict = checker.eval(&root, phi);
    let trace = with_trace.then(|| checker.trace(&root, phi));
    Ok(RootCheck {
        verdict,
        shrink,
        stats: checker.stats(),
        domain_size: checker.domain().len(),
        trace,
    })
}
