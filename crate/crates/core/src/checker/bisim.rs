//! Bounded bisimulation game between two unfoldings.

use std::collections::HashMap;

use super::tree::{children, TreeNode};
use crate::argsem::{ArgSet, Framework};
use crate::basis::{Basis, State};

struct Game<'a> {
    left: &'a Basis,
    right: &'a Basis,
    phi: &'a ArgSet,
    universe: &'a ArgSet,
    memo: HashMap<(State, State, usize), bool>,
}

impl Game<'_> {
    /// Whether the pair can be placed in `Z_rounds`.
    fn related(&mut self, x: &TreeNode, y: &TreeNode, rounds: usize) -> bool {
        // Subtrees below a node depend only on its frame, so states key the memo.
        let key = (x.state(), y.state(), rounds);
        if let Some(&known) = self.memo.get(&key) {
            return known;
        }
        let value = self.same_components(&x.frame, &y.frame) && (rounds == 0 || self.moves_match(x, y, rounds));
        self.memo.insert(key, value);
        value
    }

    fn same_components(&self, a: &Framework, b: &Framework) -> bool {
        a.components_containing(self.phi) == b.components_containing(self.phi)
    }

    /// Forth and back over `R(p)` for every `p` in the universe. Matching moves
    /// with the same argument also matches every `R(∃)` move, since `R(∃)` is
    /// the union of the `R(p)`.
    fn moves_match(&mut self, x: &TreeNode, y: &TreeNode, rounds: usize) -> bool {
        let xs = children(self.left, x, self.universe);
        let ys = children(self.right, y, self.universe);
        let label = |n: &TreeNode| n.path.last().expect("child has an event").0;
        let forth = xs
            .iter()
            .all(|u| ys.iter().any(|v| label(u) == label(v) && self.related(u, v, rounds - 1)));
        forth
            && ys
                .iter()
                .all(|v| xs.iter().any(|u| label(u) == label(v) && self.related(u, v, rounds - 1)))
    }
}

fn node_for(state: &State) -> TreeNode {
    TreeNode {
        path: Vec::new(),
        frame: state.framework(),
    }
}

/// Whether `(left, q1)` and `(right, q2)` are `n`-bisimilar modulo `phi`,
/// with update moves drawn from `universe`.
pub fn n_bisimilar(
    left: &Basis,
    q1: &State,
    right: &Basis,
    q2: &State,
    n: usize,
    phi: &ArgSet,
    universe: &ArgSet,
) -> bool {
    let mut game = Game {
        left,
        right,
        phi,
        universe,
        memo: HashMap::new(),
    };
    game.related(&node_for(q1), &node_for(q2), n)
}
