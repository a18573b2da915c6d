//! Seeded generators for bases and formulas.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::argsem::{EdgeSet, Framework};
use crate::basis::Basis;
use crate::ids::{arg, ArgumentId};
use crate::logic::{BlackFormula, WhiteFormula};

/// Probability that any given ordered pair is an attack in a generated view.
pub const EDGE_DENSITY: f64 = 0.4;

/// Arguments `a1..ak`.
pub fn argument_names(count: usize) -> Vec<ArgumentId> {
    (1..=count).map(|i| arg(&format!("a{i}"))).collect()
}

fn random_edges<R: Rng>(rng: &mut R, args: &[ArgumentId], density: f64) -> EdgeSet {
    let mut edges = EdgeSet::new();
    for &x in args {
        for &y in args {
            if rng.gen_bool(density) {
                edges.insert((x, y));
            }
        }
    }
    edges
}

/// `agents` views over `a1..a{args}`, each pair sampled independently. Every
/// argument belongs to the universe even if no view mentions it.
pub fn random_basis<R: Rng>(rng: &mut R, args: usize, agents: usize) -> Basis {
    let names = argument_names(args);
    let views: BTreeMap<String, EdgeSet> = (1..=agents.max(1))
        .map(|i| (format!("ag{i}"), random_edges(rng, &names, EDGE_DENSITY)))
        .collect();
    Basis::new(views, names).expect("at least one agent")
}

pub fn random_framework<R: Rng>(rng: &mut R, nodes: usize) -> Framework {
    let names = argument_names(nodes);
    Framework::from_edges(random_edges(rng, &names, EDGE_DENSITY), names)
}

pub fn random_black<R: Rng>(rng: &mut R, atoms: &[ArgumentId], size: usize) -> BlackFormula {
    if size == 0 || rng.gen_bool(0.35) {
        return BlackFormula::atom(*atoms.choose(rng).expect("non-empty atom pool"));
    }
    match rng.gen_range(0..3) {
        0 => random_black(rng, atoms, size - 1).not(),
        1 => random_black(rng, atoms, size - 1).implies(random_black(rng, atoms, size - 1)),
        _ => {
            let a = random_black(rng, atoms, size - 1);
            if rng.gen_bool(0.5) {
                a.and(random_black(rng, atoms, size - 1))
            } else {
                a.or(random_black(rng, atoms, size - 1))
            }
        }
    }
}

/// A white formula of depth at most `max_depth` over `atoms`.
pub fn random_formula<R: Rng>(rng: &mut R, atoms: &[ArgumentId], max_depth: usize) -> WhiteFormula {
    random_white(rng, atoms, max_depth, 3)
}

fn random_white<R: Rng>(rng: &mut R, atoms: &[ArgumentId], depth: usize, size: usize) -> WhiteFormula {
    let leaf = |rng: &mut R| {
        let alpha = random_black(rng, atoms, 2);
        if rng.gen_bool(0.5) {
            WhiteFormula::diamond(alpha)
        } else {
            WhiteFormula::black_box(alpha)
        }
    };
    if size == 0 || rng.gen_bool(0.25) {
        return leaf(rng);
    }
    let choices = if depth == 0 { 2 } else { 6 };
    match rng.gen_range(0..choices) {
        0 => random_white(rng, atoms, depth, size - 1).not(),
        1 => random_white(rng, atoms, depth, size - 1).and(random_white(rng, atoms, depth, size - 1)),
        2 => WhiteFormula::exists(random_white(rng, atoms, depth - 1, size - 1)),
        3 => WhiteFormula::forall(random_white(rng, atoms, depth - 1, size - 1)),
        4 => {
            let p = *atoms.choose(rng).unwrap();
            WhiteFormula::update(p, random_white(rng, atoms, depth - 1, size - 1))
        }
        _ => {
            let p = *atoms.choose(rng).unwrap();
            WhiteFormula::update_box(p, random_white(rng, atoms, depth - 1, size - 1))
        }
    }
}
