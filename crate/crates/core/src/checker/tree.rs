//! Unfolding of the model into a tree of update sequences.

use crate::argsem::{ArgSet, EdgeSet, Framework};
use crate::basis::{update_set, Basis, State};
use crate::ids::ArgumentId;

/// A sequence of events `(p₁, X₁); …; (pₖ, Xₖ)` labelled by the framework it
/// builds up from `(∅, ∅)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeNode {
    pub path: Vec<(ArgumentId, EdgeSet)>,
    pub frame: Framework,
}

impl TreeNode {
    pub fn root() -> Self {
        TreeNode {
            path: Vec::new(),
            frame: Framework::default(),
        }
    }

    pub fn state(&self) -> State {
        State {
            args: self.frame.nodes().clone(),
            edges: self.frame.edges().clone(),
        }
    }

    pub fn depth(&self) -> usize {
        self.path.len()
    }
}

/// One child per argument of `universe` and per faithful event for it, in
/// argument order then binary-counter order.
pub fn children(basis: &Basis, node: &TreeNode, universe: &ArgSet) -> Vec<TreeNode> {
    let state = node.state();
    let mut out = Vec::new();
    for &p in universe {
        for x in update_set(basis, &state, p) {
            let mut path = node.path.clone();
            path.push((p, x.clone()));
            let mut args = state.args.clone();
            args.insert(p);
            let mut edges = state.edges.clone();
            edges.extend(x);
            let frame = Framework::new(args, edges).expect("events stay within the enlarged domain");
            out.push(TreeNode { path, frame });
        }
    }
    out
}

/// Every sequence of at most `depth` events over `universe`, root first.
pub fn unfold_tree(basis: &Basis, depth: usize, universe: &ArgSet) -> Vec<TreeNode> {
    let mut all = vec![TreeNode::root()];
    let mut layer = vec![TreeNode::root()];
    for _ in 0..depth {
        layer = layer.iter().flat_map(|n| children(basis, n, universe)).collect();
        all.extend(layer.iter().cloned());
    }
    all
}
