//! Agents' views and the deliberative state space built from them.

mod io;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::argsem::{ArgSet, Edge, EdgeSet, Framework};
use crate::ids::{ArgumentId, NameError};
use crate::logic::{black_atoms, white_depth, WhiteFormula};

pub use io::{parse_basis, parse_basis_json, parse_basis_lines, BasisFile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisError {
    #[error("a basis needs at least one agent")]
    NoAgents,
    #[error("universe does not contain argument `{0}` used by some view")]
    MissingEndpoint(ArgumentId),
    #[error("invalid basis JSON: {0}")]
    Json(String),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error(transparent)]
    Name(#[from] NameError),
}

/// One attack graph per agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    views: BTreeMap<String, EdgeSet>,
    /// Arguments with no view edges that still belong to the universe.
    isolated: ArgSet,
}

impl Basis {
    pub fn new(views: BTreeMap<String, EdgeSet>, isolated: impl IntoIterator<Item = ArgumentId>) -> Result<Self, BasisError> {
        if views.is_empty() {
            return Err(BasisError::NoAgents);
        }
        Ok(Basis::normalized(views, isolated.into_iter().collect()))
    }

    fn normalized(views: BTreeMap<String, EdgeSet>, mut isolated: ArgSet) -> Self {
        for &(x, y) in views.values().flatten() {
            isolated.remove(&x);
            isolated.remove(&y);
        }
        Basis { views, isolated }
    }

    /// Convenience constructor from `(agent, edges)` pairs.
    pub fn from_views<A, E>(views: impl IntoIterator<Item = (A, E)>) -> Result<Self, BasisError>
    where
        A: Into<String>,
        E: IntoIterator<Item = Edge>,
    {
        let views = views
            .into_iter()
            .map(|(a, e)| (a.into(), e.into_iter().collect()))
            .collect();
        Basis::new(views, [])
    }

    pub fn agents(&self) -> impl Iterator<Item = &str> {
        self.views.keys().map(String::as_str)
    }

    pub fn views(&self) -> &BTreeMap<String, EdgeSet> {
        &self.views
    }

    pub fn view(&self, agent: &str) -> Option<&EdgeSet> {
        self.views.get(agent)
    }

    /// Every argument mentioned by a view, plus declared isolated ones.
    pub fn universe(&self) -> ArgSet {
        let mut out = self.isolated.clone();
        for &(x, y) in self.views.values().flatten() {
            out.insert(x);
            out.insert(y);
        }
        out
    }

    pub fn union_view(&self) -> EdgeSet {
        self.views.values().flatten().copied().collect()
    }

    pub fn intersection_view(&self) -> EdgeSet {
        let mut views = self.views.values();
        let first = views.next().expect("basis has an agent").clone();
        views.fold(first, |acc, v| acc.intersection(v).copied().collect())
    }

    /// `(⋂ₐ V_a|args, ⋃ₐ V_a|args)`
    pub fn bounds(&self, args: &ArgSet) -> (EdgeSet, EdgeSet) {
        let mut restricted = self.views.values().map(|v| restrict(v, args));
        let first = restricted.next().expect("basis has an agent");
        let (lower, upper) = restricted.fold((first.clone(), first), |(lo, up), v| {
            (lo.intersection(&v).copied().collect(), up.union(&v).copied().collect())
        });
        (lower, upper)
    }

    pub fn edge_count(&self) -> usize {
        self.views.values().map(BTreeSet::len).sum()
    }
}

/// A partial consensus `(q_S, q_E)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct State {
    pub args: ArgSet,
    pub edges: EdgeSet,
}

impl State {
    /// `(∅, ∅)`
    pub fn root() -> Self {
        State::default()
    }

    /// Whether the state is a point of the model induced by `basis`.
    pub fn is_valid(&self, basis: &Basis) -> bool {
        let endpoints_ok = self
            .edges
            .iter()
            .all(|(x, y)| self.args.contains(x) && self.args.contains(y));
        let (lower, upper) = basis.bounds(&self.args);
        endpoints_ok && lower.is_subset(&self.edges) && self.edges.is_subset(&upper)
    }

    pub fn framework(&self) -> Framework {
        Framework::new(self.args.clone(), self.edges.clone()).expect("state edges lie within its arguments")
    }

    /// Componentwise inclusion.
    pub fn is_substate_of(&self, other: &State) -> bool {
        self.args.is_subset(&other.args) && self.edges.is_subset(&other.edges)
    }
}

pub fn restrict(edges: &EdgeSet, args: &ArgSet) -> EdgeSet {
    edges
        .iter()
        .filter(|(x, y)| args.contains(x) && args.contains(y))
        .copied()
        .collect()
}

/// Every set between `lower` and `upper`, in binary-counter order over the
/// free edges.
fn between(lower: &EdgeSet, upper: &EdgeSet) -> Vec<EdgeSet> {
    let free: Vec<Edge> = upper.difference(lower).copied().collect();
    assert!(free.len() < 32, "too many undecided edges ({}) to enumerate", free.len());
    (0u32..1 << free.len())
        .map(|mask| {
            let mut x = lower.clone();
            x.extend(free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e));
            x
        })
        .collect()
}

/// The faithful events for adding `p` to `q`: all `X` with
/// `⋂ₐ V_a|S∪{p} ⊆ X ⊆ ⋃ₐ V_a|S∪{p}`.
///
/// `X` may relate old arguments to each other, not only to `p`.
pub fn update_set(basis: &Basis, q: &State, p: ArgumentId) -> Vec<EdgeSet> {
    let mut args = q.args.clone();
    args.insert(p);
    let (lower, upper) = basis.bounds(&args);
    between(&lower, &upper)
}

/// Distinct states `(q_S ∪ {p}, q_E ∪ X)` for every faithful event `X`.
pub fn successors(basis: &Basis, q: &State, p: ArgumentId) -> Vec<State> {
    let mut seen = BTreeSet::new();
    update_set(basis, q, p)
        .into_iter()
        .filter_map(|x| {
            let mut next = q.clone();
            next.args.insert(p);
            next.edges.extend(x);
            seen.insert(next.clone()).then_some(next)
        })
        .collect()
}

/// Complete assents over a finite `universe`: edge sets between the
/// intersection and the union of all views.
pub fn complete_assents(basis: &Basis, universe: &ArgSet) -> Result<Vec<EdgeSet>, BasisError> {
    let endpoints = basis.union_view().into_iter().flat_map(|(x, y)| [x, y]);
    if let Some(missing) = endpoints.into_iter().find(|p| !universe.contains(p)) {
        return Err(BasisError::MissingEndpoint(missing));
    }
    let (lower, upper) = basis.bounds(universe);
    Ok(between(&lower, &upper))
}

/// Arguments within undirected distance `n` of `phi` in the union view.
pub fn vicinity(basis: &Basis, phi: &ArgSet, n: usize) -> ArgSet {
    let mut neighbours: BTreeMap<ArgumentId, Vec<ArgumentId>> = BTreeMap::new();
    for (x, y) in basis.union_view() {
        neighbours.entry(x).or_default().push(y);
        neighbours.entry(y).or_default().push(x);
    }
    let mut reached = phi.clone();
    let mut frontier: VecDeque<(ArgumentId, usize)> = phi.iter().map(|&p| (p, 0)).collect();
    while let Some((p, dist)) = frontier.pop_front() {
        if dist == n {
            continue;
        }
        for &next in neighbours.get(&p).into_iter().flatten() {
            if reached.insert(next) {
                frontier.push_back((next, dist + 1));
            }
        }
    }
    reached
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShrinkStats {
    pub vicinity_size: usize,
    pub edges_kept: usize,
    pub edges_dropped: usize,
}

/// Restricts every view to the edges inside the `d(φ)`-vicinity of `φ`'s
/// black atoms. The vicinity is computed once, from the union view.
pub fn shrink(basis: &Basis, phi: &WhiteFormula) -> Basis {
    shrink_with_stats(basis, phi).0
}

pub fn shrink_with_stats(basis: &Basis, phi: &WhiteFormula) -> (Basis, ShrinkStats) {
    let region = vicinity(basis, &black_atoms(phi), white_depth(phi));
    let views: BTreeMap<String, EdgeSet> = basis
        .views
        .iter()
        .map(|(a, v)| (a.clone(), restrict(v, &region)))
        .collect();
    let shrunk = Basis::normalized(views, basis.universe());
    let kept = shrunk.edge_count();
    let stats = ShrinkStats {
        vicinity_size: region.len(),
        edges_kept: kept,
        edges_dropped: basis.edge_count() - kept,
    };
    (shrunk, stats)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::ids::arg;
    use crate::logic::parse_formula;
    use proptest::prelude::*;

    pub(crate) fn set(names: &[&str]) -> ArgSet {
        names.iter().map(|n| arg(n)).collect()
    }

    pub(crate) fn edges(pairs: &[(&str, &str)]) -> EdgeSet {
        pairs.iter().map(|(x, y)| (arg(x), arg(y))).collect()
    }

    /// The two-agent example: `a` sees `p` attack itself, `b` sees `q` attack
    /// itself, both see the mutual attack.
    pub(crate) fn example_basis() -> Basis {
        Basis::from_views([
            ("a", edges(&[("p", "p"), ("p", "q"), ("q", "p")])),
            ("b", edges(&[("q", "q"), ("p", "q"), ("q", "p")])),
        ])
        .unwrap()
    }

    pub(crate) fn crossing_basis() -> Basis {
        Basis::from_views([("a", edges(&[("p", "q")])), ("b", edges(&[("q", "p")]))]).unwrap()
    }

    fn state(args: &[&str], pairs: &[(&str, &str)]) -> State {
        State { args: set(args), edges: edges(pairs) }
    }

    #[test]
    fn restrict_examples() {
        let e = edges(&[("p", "q"), ("q", "r")]);
        assert_eq!(restrict(&e, &set(&["p", "q"])), edges(&[("p", "q")]));
        assert!(restrict(&e, &ArgSet::new()).is_empty());
        assert_eq!(restrict(&edges(&[("p", "p")]), &set(&["p"])), edges(&[("p", "p")]));
    }

    #[test]
    fn update_set_examples() {
        let b = crossing_basis();
        assert_eq!(update_set(&b, &State::root(), arg("p")), vec![EdgeSet::new()]);

        let got: BTreeSet<EdgeSet> = update_set(&b, &state(&["p"], &[]), arg("q")).into_iter().collect();
        let want: BTreeSet<EdgeSet> = [
            edges(&[]),
            edges(&[("p", "q")]),
            edges(&[("q", "p")]),
            edges(&[("p", "q"), ("q", "p")]),
        ]
        .into();
        assert_eq!(got, want);

        let single = Basis::from_views([("a", edges(&[("p", "q"), ("q", "r")]))]).unwrap();
        assert_eq!(update_set(&single, &state(&["p"], &[]), arg("q")).len(), 1);
    }

    #[test]
    fn successors_of_root_in_example() {
        let got: BTreeSet<State> = successors(&example_basis(), &State::root(), arg("p")).into_iter().collect();
        let want: BTreeSet<State> = [state(&["p"], &[]), state(&["p"], &[("p", "p")])].into();
        assert_eq!(got, want);
    }

    #[test]
    fn settled_and_fresh_successors() {
        let single = Basis::from_views([("a", edges(&[("p", "q")]))]).unwrap();
        let q = state(&["p", "q"], &[("p", "q")]);
        assert_eq!(successors(&single, &q, arg("p")), vec![q.clone()]);

        let fresh = successors(&single, &q, arg("zz"));
        assert_eq!(fresh, vec![state(&["p", "q", "zz"], &[("p", "q")])]);
    }

    #[test]
    fn complete_assent_examples() {
        let b = crossing_basis();
        assert_eq!(complete_assents(&b, &set(&["p", "q"])).unwrap().len(), 4);
        assert_eq!(complete_assents(&b, &set(&["p"])), Err(BasisError::MissingEndpoint(arg("q"))));

        let single = Basis::from_views([("a", edges(&[("p", "q")]))]).unwrap();
        assert_eq!(complete_assents(&single, &set(&["p", "q"])).unwrap(), vec![edges(&[("p", "q")])]);

        let shared = edges(&[("p", "q"), ("q", "q")]);
        let same = Basis::from_views([("a", shared.clone()), ("b", shared.clone())]).unwrap();
        assert_eq!(complete_assents(&same, &set(&["p", "q"])).unwrap(), vec![shared]);
    }

    #[test]
    fn vicinity_examples() {
        let b = Basis::from_views([("a", edges(&[("p", "q"), ("q", "p"), ("r", "s")]))]).unwrap();
        assert_eq!(vicinity(&b, &set(&["p"]), 1), set(&["p", "q"]));
        assert_eq!(vicinity(&b, &set(&["p"]), 0), set(&["p"]));

        let chain = Basis::from_views([("a", edges(&[("p", "q"), ("q", "r"), ("r", "s")]))]).unwrap();
        assert_eq!(vicinity(&chain, &set(&["s"]), 2), set(&["q", "r", "s"]));
    }

    #[test]
    fn shrink_examples() {
        let b = Basis::from_views([
            ("a", edges(&[("p", "q"), ("q", "p")])),
            ("b", edges(&[("r", "s")])),
        ])
        .unwrap();
        let shrunk = shrink(&b, &parse_formula("<<p>>").unwrap());
        assert!(shrunk.views().values().all(BTreeSet::is_empty));
        assert_eq!(shrunk.universe(), b.universe());

        let eq1 = example_basis();
        let phi = parse_formula("E* [[p]]").unwrap();
        assert_eq!(shrink(&eq1, &phi).views(), eq1.views());

        // depth 0 keeps the self-attack on p and nothing else
        let (shrunk, stats) = shrink_with_stats(&eq1, &parse_formula("<<p>>").unwrap());
        assert_eq!(shrunk.view("a").unwrap(), &edges(&[("p", "p")]));
        assert!(shrunk.view("b").unwrap().is_empty());
        assert_eq!(stats, ShrinkStats { vicinity_size: 1, edges_kept: 1, edges_dropped: 5 });
    }

    #[test]
    fn shrink_with_foreign_atoms_empties_views() {
        // every << >> mentions an atom, so the empty-vicinity case is a formula
        // whose atoms lie outside the basis universe
        let phi = parse_formula("E* <<zz -> zz>>").unwrap();
        let shrunk = shrink(&example_basis(), &phi);
        assert!(shrunk.views().values().all(BTreeSet::is_empty));
    }

    fn arb_basis(max_args: usize, max_agents: usize) -> impl Strategy<Value = Basis> {
        (1..=max_args, 1..=max_agents).prop_flat_map(|(n, m)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), n * n), m).prop_map(move |views| {
                let names: Vec<ArgumentId> = (0..n).map(|i| arg(&format!("u{i}"))).collect();
                let views = views.into_iter().enumerate().map(|(a, bits)| {
                    let e: EdgeSet = bits
                        .iter()
                        .enumerate()
                        .filter(|(_, &b)| b)
                        .map(|(k, _)| (names[k / n], names[k % n]))
                        .collect();
                    (format!("g{a}"), e)
                });
                Basis::from_views(views).unwrap()
            })
        })
    }

    fn reach(b: &Basis, from: &[State], p: ArgumentId) -> BTreeSet<State> {
        from.iter().flat_map(|q| successors(b, q, p)).collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn successors_are_valid_and_monotone(b in arb_basis(3, 3), picks in proptest::collection::vec(0usize..4, 1..4)) {
            let mut frontier = vec![State::root()];
            for pick in picks {
                let p = arg(&format!("u{pick}"));
                let mut next = Vec::new();
                for q in &frontier {
                    for s in successors(&b, q, p) {
                        prop_assert!(s.is_valid(&b));
                        prop_assert!(q.is_substate_of(&s));
                        next.push(s);
                    }
                }
                frontier = next;
            }
        }

        #[test]
        fn updates_commute(b in arb_basis(3, 3), i in 0usize..3, j in 0usize..3) {
            let (p, q) = (arg(&format!("u{i}")), arg(&format!("u{j}")));
            let root = [State::root()];
            let pq = reach(&b, &reach(&b, &root, p).into_iter().collect::<Vec<_>>(), q);
            let qp = reach(&b, &reach(&b, &root, q).into_iter().collect::<Vec<_>>(), p);
            prop_assert_eq!(pq, qp);
        }

        #[test]
        fn repeated_update_is_single_update(b in arb_basis(3, 3), i in 0usize..3, j in 0usize..3) {
            let (p, q) = (arg(&format!("u{i}")), arg(&format!("u{j}")));
            let base: Vec<State> = reach(&b, &[State::root()], q).into_iter().collect();
            let once = reach(&b, &base, p);
            let twice = reach(&b, &once.iter().cloned().collect::<Vec<_>>(), p);
            prop_assert!(twice.is_subset(&once));
        }

        #[test]
        fn update_count_is_power_of_two(b in arb_basis(3, 3), i in 0usize..3) {
            let p = arg(&format!("u{i}"));
            let q = State { args: set(&["u0"]), edges: b.bounds(&set(&["u0"])).0 };
            let mut args = q.args.clone();
            args.insert(p);
            let (lower, upper) = b.bounds(&args);
            prop_assert_eq!(update_set(&b, &q, p).len(), 1 << (upper.len() - lower.len()));
            if b.views().len() == 1 {
                prop_assert_eq!(update_set(&b, &q, p).len(), 1);
            }
        }

        #[test]
        fn vicinity_is_monotone(b in arb_basis(5, 2), seed in 0usize..5, n in 0usize..4) {
            let phi = set(&[&format!("u{seed}")]);
            let small = vicinity(&b, &phi, n);
            prop_assert!(small.is_subset(&vicinity(&b, &phi, n + 1)));
            let bigger = {
                let mut s = phi.clone();
                s.insert(arg("u0"));
                s
            };
            prop_assert!(small.is_subset(&vicinity(&b, &bigger, n)));
            let all = b.universe().len();
            prop_assert_eq!(vicinity(&b, &phi, all), vicinity(&b, &phi, all + 3));
        }

        #[test]
        fn shrink_is_idempotent(b in arb_basis(4, 3), seed in 0usize..4, depth in 0usize..3) {
            let mut body = format!("<<u{seed}>>");
            for _ in 0..depth {
                body = format!("E* {body}");
            }
            let phi = parse_formula(&body).unwrap();
            let once = shrink(&b, &phi);
            prop_assert_eq!(shrink(&once, &phi), once);
        }
    }
}
