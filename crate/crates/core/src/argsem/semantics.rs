use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{ArgSet, Framework};
use crate::ids::ArgumentId;

/// Extension-based argumentation semantics.
///
/// The usual Dung semantics. Grounded is the least fixed point of the
/// defence function.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemanticsKind {
    Admissible,
    Complete,
    Grounded,
    #[default]
    Preferred,
    Stable,
}

impl SemanticsKind {
    pub const ALL: [SemanticsKind; 5] = [
        SemanticsKind::Admissible,
        SemanticsKind::Complete,
        SemanticsKind::Grounded,
        SemanticsKind::Preferred,
        SemanticsKind::Stable,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SemanticsKind::Admissible => "admissible",
            SemanticsKind::Complete => "complete",
            SemanticsKind::Grounded => "grounded",
            SemanticsKind::Preferred => "preferred",
            SemanticsKind::Stable => "stable",
        }
    }

    /// Whether every framework has at least one extension. Stable semantics
    /// does not: a single self-attacking argument anywhere removes them all.
    pub fn always_has_extension(self) -> bool {
        !matches!(self, SemanticsKind::Stable)
    }
}

impl fmt::Display for SemanticsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown semantics `{0}` (expected admissible, complete, grounded, preferred or stable)")]
pub struct UnknownSemantics(pub String);

impl FromStr for SemanticsKind {
    type Err = UnknownSemantics;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SemanticsKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| UnknownSemantics(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Acceptance {
    Skeptical,
    Credulous,
}

/// A three-valued labelling: `in_set` is valued 1, `out_set` 0 and everything
/// else (including arguments outside `domain`) ½.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labelling {
    pub in_set: ArgSet,
    pub out_set: ArgSet,
    pub domain: ArgSet,
}

impl Labelling {
    /// Labels `extension` in and everything it attacks out.
    pub fn from_extension(fw: &Framework, extension: ArgSet) -> Self {
        let out_set = fw
            .edges()
            .iter()
            .filter(|(x, _)| extension.contains(x))
            .map(|&(_, y)| y)
            .collect();
        Labelling {
            in_set: extension,
            out_set,
            domain: fw.nodes().clone(),
        }
    }

    /// The labelling that leaves every argument undecided.
    pub fn undecided(domain: ArgSet) -> Self {
        Labelling {
            in_set: ArgSet::new(),
            out_set: ArgSet::new(),
            domain,
        }
    }
}

type Mask = u64;

/// Framework re-indexed densely so that argument sets become bitmasks.
struct Dense {
    ids: Vec<ArgumentId>,
    attackers_of: Vec<Mask>,
    targets_of: Vec<Mask>,
    all: Mask,
}

impl Dense {
    fn new(fw: &Framework) -> Self {
        let ids: Vec<ArgumentId> = fw.nodes().iter().copied().collect();
        assert!(
            ids.len() <= 64,
            "extension enumeration supports at most 64 arguments, got {}",
            ids.len()
        );
        let pos = |p: &ArgumentId| ids.binary_search(p).unwrap();
        let mut attackers_of = vec![0; ids.len()];
        let mut targets_of = vec![0; ids.len()];
        for (x, y) in fw.edges() {
            let (i, j) = (pos(x), pos(y));
            attackers_of[j] |= 1 << i;
            targets_of[i] |= 1 << j;
        }
        let all = if ids.len() == 64 { Mask::MAX } else { (1 << ids.len()) - 1 };
        Dense {
            ids,
            attackers_of,
            targets_of,
            all,
        }
    }

    fn fold(&self, set: Mask, table: &[Mask]) -> Mask {
        bits(set).fold(0, |acc, i| acc | table[i])
    }

    fn attackers(&self, set: Mask) -> Mask {
        self.fold(set, &self.attackers_of)
    }

    fn targets(&self, set: Mask) -> Mask {
        self.fold(set, &self.targets_of)
    }

    fn admissible(&self, set: Mask) -> bool {
        let plus = self.targets(set);
        plus & set == 0 && self.attackers(set) & !plus == 0
    }

    /// Arguments all of whose attackers are attacked by `set`.
    fn defended(&self, set: Mask) -> Mask {
        let plus = self.targets(set);
        (0..self.ids.len())
            .filter(|&i| self.attackers_of[i] & !plus == 0)
            .fold(0, |acc, i| acc | 1 << i)
    }

    /// Every conflict-free set, found by backtracking.
    fn conflict_free(&self) -> Vec<Mask> {
        let mut out = Vec::new();
        self.extend_conflict_free(0, 0, &mut out);
        out
    }

    fn extend_conflict_free(&self, next: usize, current: Mask, out: &mut Vec<Mask>) {
        if next == self.ids.len() {
            out.push(current);
            return;
        }
        self.extend_conflict_free(next + 1, current, out);
        let bit = 1 << next;
        let clashes = self.attackers_of[next] & (current | bit) != 0 || self.targets_of[next] & current != 0;
        if !clashes {
            self.extend_conflict_free(next + 1, current | bit, out);
        }
    }

    fn admissible_sets(&self) -> Vec<Mask> {
        self.conflict_free().into_iter().filter(|&s| self.admissible(s)).collect()
    }

    fn grounded(&self) -> Mask {
        let mut current = 0;
        loop {
            let next = self.defended(current);
            if next == current {
                return current;
            }
            current = next;
        }
    }

    fn extensions(&self, sem: SemanticsKind) -> Vec<Mask> {
        match sem {
            SemanticsKind::Admissible => self.admissible_sets(),
            SemanticsKind::Complete => self
                .admissible_sets()
                .into_iter()
                .filter(|&s| self.defended(s) & !s == 0)
                .collect(),
            SemanticsKind::Grounded => vec![self.grounded()],
            SemanticsKind::Preferred => {
                let admissible = self.admissible_sets();
                admissible
                    .iter()
                    .copied()
                    .filter(|&s| !admissible.iter().any(|&t| t != s && t & s == s))
                    .collect()
            }
            SemanticsKind::Stable => self
                .conflict_free()
                .into_iter()
                .filter(|&s| (s | self.targets(s)) == self.all)
                .collect(),
        }
    }

    fn to_set(&self, mask: Mask) -> ArgSet {
        bits(mask).map(|i| self.ids[i]).collect()
    }
}

fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// All sets `A` with `E⁻(A) ⊆ E⁺(A) ⊆ S∖A`.
pub fn admissible_sets(fw: &Framework) -> BTreeSet<ArgSet> {
    extensions(fw, SemanticsKind::Admissible)
}

pub fn extensions(fw: &Framework, sem: SemanticsKind) -> BTreeSet<ArgSet> {
    let dense = Dense::new(fw);
    dense.extensions(sem).into_iter().map(|m| dense.to_set(m)).collect()
}

/// One labelling per extension, in extension order.
pub fn labellings(fw: &Framework, sem: SemanticsKind) -> Vec<Labelling> {
    extensions(fw, sem)
        .into_iter()
        .map(|ext| Labelling::from_extension(fw, ext))
        .collect()
}

pub fn acceptance(fw: &Framework, sem: SemanticsKind, p: ArgumentId, mode: Acceptance) -> bool {
    let exts = extensions(fw, sem);
    match mode {
        Acceptance::Skeptical => exts.iter().all(|e| e.contains(&p)),
        Acceptance::Credulous => exts.iter().any(|e| e.contains(&p)),
    }
}

/// Whether the extensions of `fw` are exactly the unions obtained by choosing
/// one extension of each connected component.
pub fn check_normality(sem: SemanticsKind, fw: &Framework) -> bool {
    let whole = extensions(fw, sem);
    let mut unions: BTreeSet<ArgSet> = BTreeSet::from([ArgSet::new()]);
    for component in fw.components() {
        let local = extensions(&component, sem);
        unions = unions
            .iter()
            .flat_map(|u| local.iter().map(move |e| u.union(e).copied().collect()))
            .collect();
    }
    whole == unions
}
