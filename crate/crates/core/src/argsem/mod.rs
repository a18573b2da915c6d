//! Abstract argumentation frameworks and their extension semantics.

mod apx;
mod semantics;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::ids::{ArgumentId, NameError};

pub use apx::{parse_apx, write_apx};
pub use semantics::{
    acceptance, admissible_sets, check_normality, extensions, labellings, Acceptance, Labelling,
    SemanticsKind, UnknownSemantics,
};

pub type ArgSet = BTreeSet<ArgumentId>;
/// An attack `(attacker, attacked)`.
pub type Edge = (ArgumentId, ArgumentId);
pub type EdgeSet = BTreeSet<Edge>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArgsemError {
    #[error("argument `{0}` is not a node of the framework")]
    NotInFramework(ArgumentId),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Name(#[from] NameError),
}

/// A finite attack graph `(S, E)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Framework {
    nodes: ArgSet,
    edges: EdgeSet,
}

impl Framework {
    pub fn new(nodes: ArgSet, edges: EdgeSet) -> Result<Self, ArgsemError> {
        if let Some(&(x, y)) = edges
            .iter()
            .find(|(x, y)| !nodes.contains(x) || !nodes.contains(y))
        {
            let missing = if nodes.contains(&x) { y } else { x };
            return Err(ArgsemError::NotInFramework(missing));
        }
        Ok(Framework { nodes, edges })
    }

    /// Builds a framework whose nodes are exactly the endpoints of `edges`
    /// plus `isolated`.
    pub fn from_edges(edges: impl IntoIterator<Item = Edge>, isolated: impl IntoIterator<Item = ArgumentId>) -> Self {
        let edges: EdgeSet = edges.into_iter().collect();
        let mut nodes: ArgSet = isolated.into_iter().collect();
        for &(x, y) in &edges {
            nodes.insert(x);
            nodes.insert(y);
        }
        Framework { nodes, edges }
    }

    pub fn nodes(&self) -> &ArgSet {
        &self.nodes
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn add_argument(&mut self, p: ArgumentId) {
        self.nodes.insert(p);
    }

    pub fn add_attack(&mut self, attacker: ArgumentId, attacked: ArgumentId) -> Result<(), ArgsemError> {
        for p in [attacker, attacked] {
            if !self.nodes.contains(&p) {
                return Err(ArgsemError::NotInFramework(p));
            }
        }
        self.edges.insert((attacker, attacked));
        Ok(())
    }

    fn check_members(&self, args: &ArgSet) -> Result<(), ArgsemError> {
        match args.iter().find(|p| !self.nodes.contains(p)) {
            Some(&p) => Err(ArgsemError::NotInFramework(p)),
            None => Ok(()),
        }
    }

    /// `E⁻(args)`: every node with an attack into `args`.
    pub fn attackers(&self, args: &ArgSet) -> Result<ArgSet, ArgsemError> {
        self.check_members(args)?;
        Ok(self
            .edges
            .iter()
            .filter(|(_, y)| args.contains(y))
            .map(|&(x, _)| x)
            .collect())
    }

    /// `E⁺(args)`: every node attacked by some member of `args`.
    pub fn targets(&self, args: &ArgSet) -> Result<ArgSet, ArgsemError> {
        self.check_members(args)?;
        Ok(self
            .edges
            .iter()
            .filter(|(x, _)| args.contains(x))
            .map(|&(_, y)| y)
            .collect())
    }

    /// The sub-framework induced by `keep`.
    pub fn induced(&self, keep: &ArgSet) -> Framework {
        Framework {
            nodes: self.nodes.intersection(keep).copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|(x, y)| keep.contains(x) && keep.contains(y))
                .copied()
                .collect(),
        }
    }

    /// Weakly connected components, ordered by their smallest member.
    pub fn components(&self) -> Vec<Framework> {
        let mut adjacency: BTreeMap<ArgumentId, Vec<ArgumentId>> =
            self.nodes.iter().map(|&p| (p, Vec::new())).collect();
        for &(x, y) in &self.edges {
            adjacency.get_mut(&x).unwrap().push(y);
            adjacency.get_mut(&y).unwrap().push(x);
        }

        let mut seen = ArgSet::new();
        let mut components = Vec::new();
        // BTreeSet iteration visits seeds in ascending order, so each component
        // is discovered from its smallest member.
        for &seed in &self.nodes {
            if seen.contains(&seed) {
                continue;
            }
            let mut members = ArgSet::new();
            let mut stack = vec![seed];
            seen.insert(seed);
            while let Some(p) = stack.pop() {
                members.insert(p);
                for &n in &adjacency[&p] {
                    if seen.insert(n) {
                        stack.push(n);
                    }
                }
            }
            components.push(self.induced(&members));
        }
        components
    }

    /// `C(q, Φ)`: the union of all components that meet `phi`.
    pub fn components_containing(&self, phi: &ArgSet) -> Framework {
        let mut out = Framework::default();
        for c in self.components() {
            if c.nodes.iter().any(|p| phi.contains(p)) {
                out.nodes.extend(c.nodes);
                out.edges.extend(c.edges);
            }
        }
        out
    }
}

/// `{a,b,c}` in name order.
pub fn format_set(set: &ArgSet) -> String {
    let mut names: Vec<&str> = set.iter().map(|p| p.name()).collect();
    names.sort_unstable();
    format!("{{{}}}", names.join(","))
}
