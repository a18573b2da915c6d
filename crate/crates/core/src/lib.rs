//! Deliberative dynamic logic over multi-agent argumentation.
//!
//! Agents each hold a view of which arguments attack which. Deliberation
//! adds arguments one at a time together with a faithful choice of attacks:
//! an attack endorsed by every agent must be adopted, and one endorsed by no
//! agent must not be. Formulas talk about the frameworks reachable this way
//! and are checked at the empty starting state.
//!
//! * [`argsem`]: frameworks, extension semantics and labellings.
//! * [`logic`]: formulas, their parser and three-valued evaluation.
//! * [`basis`]: views, faithful updates, vicinities and shrinking.
//! * [`checker`]: the model checker, a brute-force oracle, tree unfolding
//!   and a bounded bisimulation game.

pub mod argsem;
pub mod basis;
pub mod checker;
pub mod ids;
pub mod logic;
pub mod probe;
pub mod random;

pub use argsem::{Framework, SemanticsKind};
pub use basis::{Basis, State};
pub use checker::{check, check_at_root, CheckConfig};
pub use ids::ArgumentId;
pub use logic::{parse_formula, WhiteFormula};
