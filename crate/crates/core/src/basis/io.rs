//! Basis files: JSON, or one `agent: attacker -> attacked` per line.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Basis, BasisError};
use crate::argsem::{ArgSet, EdgeSet};
use crate::ids::ArgumentId;

/// Serialized form: `{"agents": {"a": [["p","q"]]}, "arguments": ["r"]}`.
///
/// `arguments` lists universe members that no view mentions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisFile {
    pub agents: BTreeMap<String, Vec<(ArgumentId, ArgumentId)>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arguments: Vec<ArgumentId>,
}

impl From<&Basis> for BasisFile {
    fn from(basis: &Basis) -> Self {
        let mentioned: ArgSet = basis.union_view().into_iter().flat_map(|(x, y)| [x, y]).collect();
        BasisFile {
            agents: basis
                .views()
                .iter()
                .map(|(a, v)| (a.clone(), v.iter().copied().collect()))
                .collect(),
            arguments: basis.universe().difference(&mentioned).copied().collect(),
        }
    }
}

impl TryFrom<BasisFile> for Basis {
    type Error = BasisError;

    fn try_from(file: BasisFile) -> Result<Self, BasisError> {
        let views = file
            .agents
            .into_iter()
            .map(|(a, edges)| (a, edges.into_iter().collect::<EdgeSet>()))
            .collect();
        Basis::new(views, file.arguments)
    }
}

impl Basis {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&BasisFile::from(self)).expect("basis serializes")
    }
}

pub fn parse_basis_json(text: &str) -> Result<Basis, BasisError> {
    let file: BasisFile = serde_json::from_str(text).map_err(|e| BasisError::Json(e.to_string()))?;
    Basis::try_from(file)
}

/// Line format. `agent:` alone declares an agent with an empty view; `#` and
/// `%` start comments.
pub fn parse_basis_lines(text: &str) -> Result<Basis, BasisError> {
    let mut views: BTreeMap<String, EdgeSet> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split(['#', '%']).next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| BasisError::Line { line: idx + 1, message };
        let (agent, rest) = line
            .split_once(':')
            .ok_or_else(|| err(format!("expected `agent: attacker -> attacked`, found `{line}`")))?;
        let agent = agent.trim();
        if agent.is_empty() {
            return Err(err("missing agent name".into()));
        }
        let view = views.entry(agent.to_string()).or_default();
        let rest = rest.trim();
        if rest.is_empty() {
            continue;
        }
        let (x, y) = rest
            .split_once("->")
            .ok_or_else(|| err(format!("expected `attacker -> attacked`, found `{rest}`")))?;
        let x = ArgumentId::new(x.trim()).map_err(|e| err(e.to_string()))?;
        let y = ArgumentId::new(y.trim()).map_err(|e| err(e.to_string()))?;
        view.insert((x, y));
    }
    Basis::new(views, [])
}

/// Picks the format from the first non-blank character.
pub fn parse_basis(text: &str) -> Result<Basis, BasisError> {
    if text.trim_start().starts_with('{') {
        parse_basis_json(text)
    } else {
        parse_basis_lines(text)
    }
}
