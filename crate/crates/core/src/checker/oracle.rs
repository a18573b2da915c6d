//! Brute-force reference semantics over an explicit finite universe.
//!
//! No shrinking and no quantifier-domain reasoning: `◊` ranges over the whole
//! universe, and successor states are enumerated directly as every edge set
//! `E'` with `q_E ∪ lower ⊆ E' ⊆ upper`, which is the same family as
//! `{q_E ∪ X | X faithful}` since `q_E` already lies below `upper`.

use crate::argsem::{labellings, ArgSet, Edge, SemanticsKind};
use crate::basis::{Basis, State};
use crate::ids::ArgumentId;
use crate::logic::{black_atoms, eval_black, modal_args, TruthValue, WhiteFormula};

pub fn oracle_check(basis: &Basis, phi: &WhiteFormula, q: &State, universe: &ArgSet, sem: SemanticsKind) -> bool {
    match phi {
        WhiteFormula::BlackDiamond(alpha) => labellings(&q.framework(), sem)
            .iter()
            .any(|lab| eval_black(lab, alpha) == TruthValue::True),
        WhiteFormula::Neg(f) => !oracle_check(basis, f, q, universe, sem),
        WhiteFormula::And(f, g) => {
            oracle_check(basis, f, q, universe, sem) && oracle_check(basis, g, q, universe, sem)
        }
        WhiteFormula::UpdateDiamond(p, f) => next_states(basis, q, *p)
            .iter()
            .any(|s| oracle_check(basis, f, s, universe, sem)),
        WhiteFormula::ExistsDiamond(f) => universe.iter().any(|&p| {
            next_states(basis, q, p)
                .iter()
                .any(|s| oracle_check(basis, f, s, universe, sem))
        }),
    }
}

fn next_states(basis: &Basis, q: &State, p: ArgumentId) -> Vec<State> {
    let mut args = q.args.clone();
    args.insert(p);
    let views: Vec<_> = basis.views().values().collect();
    let mut forced = q.edges.clone();
    let mut optional: Vec<Edge> = Vec::new();
    for &x in &args {
        for &y in &args {
            let endorsed = views.iter().filter(|v| v.contains(&(x, y))).count();
            if endorsed == views.len() {
                forced.insert((x, y));
            } else if endorsed > 0 && !q.edges.contains(&(x, y)) {
                optional.push((x, y));
            }
        }
    }
    (0u64..1 << optional.len())
        .map(|mask| {
            let mut edges = forced.clone();
            edges.extend(optional.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e));
            State {
                args: args.clone(),
                edges,
            }
        })
        .collect()
}

/// Basis universe, every argument of `phi`, and `pool` fresh arguments.
pub fn oracle_universe(basis: &Basis, phi: &WhiteFormula, pool: usize) -> ArgSet {
    let mut universe = basis.universe();
    universe.extend(black_atoms(phi));
    universe.extend(modal_args(phi));
    universe.extend((0..pool).map(ArgumentId::fresh));
    universe
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::successors;
    use crate::basis::tests::{crossing_basis, example_basis, set};
    use crate::checker::{check_at_root, CheckConfig};
    use crate::ids::arg;
    use crate::logic::parse_formula;
    use std::collections::BTreeSet;

    #[test]
    fn direct_enumeration_matches_successors() {
        let b = example_basis();
        let mut frontier = vec![State::root()];
        for p in ["p", "q", "p"] {
            let mut next = Vec::new();
            for q in &frontier {
                let a: BTreeSet<State> = next_states(&b, q, arg(p)).into_iter().collect();
                let c: BTreeSet<State> = successors(&b, q, arg(p)).into_iter().collect();
                assert_eq!(a, c);
                next.extend(a);
            }
            frontier = next;
        }
    }

    #[test]
    fn worked_example_under_oracle() {
        let b = example_basis();
        for text in ["<p>[[p]]", "E* [[p]]", "[p] E* [[q]]", "~[p] E* <<p>>", "<p> E* [[~p]]", "E* E* (<<p>> & <<q>>)"] {
            let phi = parse_formula(text).unwrap();
            let universe = oracle_universe(&b, &phi, 2);
            assert!(oracle_check(&b, &phi, &State::root(), &universe, SemanticsKind::Preferred), "{text}");
        }
    }

    #[test]
    fn isolated_arguments_only() {
        // empty views: every state is a set of unattacked arguments
        let b = Basis::from_views([("a", BTreeSet::new())]).unwrap();
        let universe = set(&["p", "q"]);
        let sem = SemanticsKind::Preferred;
        assert!(!oracle_check(&b, &parse_formula("<<p>>").unwrap(), &State::root(), &universe, sem));
        assert!(oracle_check(&b, &parse_formula("<p> <<p>>").unwrap(), &State::root(), &universe, sem));
        assert!(oracle_check(&b, &parse_formula("A* <<p | ~p | q>>").unwrap(), &State::root(), &universe, sem));
        assert!(!oracle_check(&b, &parse_formula("E* <<~p>>").unwrap(), &State::root(), &universe, sem));
    }

    #[test]
    fn agrees_with_checker_on_crossing_basis() {
        let b = crossing_basis();
        for text in ["[q]<p>[[p]]", "<p>[q][[p]]", "E* [[p]]", "A* E* <<q>>", "E* A* [[~q]]"] {
            let phi = parse_formula(text).unwrap();
            let universe = oracle_universe(&b, &phi, crate::logic::white_depth(&phi));
            let sem = SemanticsKind::Preferred;
            assert_eq!(
                oracle_check(&b, &phi, &State::root(), &universe, sem),
                check_at_root(&b, &phi, &CheckConfig::new(sem)).unwrap(),
                "{text}"
            );
        }
    }
}
