//! Instance testing of the dynamic-layer validity schemata at `(∅, ∅)`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::argsem::SemanticsKind;
use crate::basis::{Basis, BasisFile};
use crate::checker::{check_at_root, CheckConfig, CheckError};
use crate::ids::ArgumentId;
use crate::logic::WhiteFormula;
use crate::random::{argument_names, random_basis, random_formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Schema {
    /// `⟨p⟩⟨q⟩φ ↔ ⟨q⟩⟨p⟩φ`
    UpdatesCommute,
    /// `⟨p⟩[q]φ → [q]⟨p⟩φ`
    DiamondBoxSwap,
    /// `◊□φ → □◊φ`
    Confluence,
    /// `⟨p⟩⟨p⟩φ → ⟨p⟩φ`
    RepeatedUpdate,
    /// `[q]⟨p⟩φ → ⟨p⟩[q]φ`, which is *not* valid. Only used to exercise the
    /// counterexample path.
    BoxDiamondSwap,
}

impl Schema {
    pub const VALID: [Schema; 4] = [
        Schema::UpdatesCommute,
        Schema::DiamondBoxSwap,
        Schema::Confluence,
        Schema::RepeatedUpdate,
    ];

    pub fn instantiate(self, p: ArgumentId, q: ArgumentId, body: &WhiteFormula) -> WhiteFormula {
        let phi = body.clone();
        let upd = WhiteFormula::update;
        let bx = WhiteFormula::update_box;
        match self {
            Schema::UpdatesCommute => upd(p, upd(q, phi.clone())).iff(upd(q, upd(p, phi))),
            Schema::DiamondBoxSwap => upd(p, bx(q, phi.clone())).implies(bx(q, upd(p, phi))),
            Schema::Confluence => WhiteFormula::exists(WhiteFormula::forall(phi.clone()))
                .implies(WhiteFormula::forall(WhiteFormula::exists(phi))),
            Schema::RepeatedUpdate => upd(p, upd(p, phi.clone())).implies(upd(p, phi)),
            Schema::BoxDiamondSwap => bx(q, upd(p, phi.clone())).implies(upd(p, bx(q, phi))),
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Schema::UpdatesCommute => "<p><q>phi <-> <q><p>phi",
            Schema::DiamondBoxSwap => "<p>[q]phi -> [q]<p>phi",
            Schema::Confluence => "E* A* phi -> A* E* phi",
            Schema::RepeatedUpdate => "<p><p>phi -> <p>phi",
            Schema::BoxDiamondSwap => "[q]<p>phi -> <p>[q]phi",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ProbeConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_args: usize,
    pub max_agents: usize,
    /// Maximum white depth of the random `φ` bodies.
    pub body_depth: usize,
    pub semantics: SemanticsKind,
    pub schemata: Vec<Schema>,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            seed: 0,
            trials: 200,
            max_args: 4,
            max_agents: 3,
            body_depth: 1,
            semantics: SemanticsKind::Preferred,
            schemata: Schema::VALID.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub schema: Schema,
    pub schema_text: String,
    pub p: ArgumentId,
    pub q: ArgumentId,
    pub body: String,
    pub formula: String,
    pub basis: BasisFile,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeOutcome {
    pub trials: usize,
    pub instances: usize,
    pub counterexample: Option<Counterexample>,
}

/// A single trial: one random basis, then one random body and argument pair
/// per schema.
pub struct Trial {
    pub basis: Basis,
    pub instances: Vec<(Schema, ArgumentId, ArgumentId, WhiteFormula)>,
}

pub fn generate_trial(cfg: &ProbeConfig, index: usize) -> Trial {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index as u64));
    let args = rng.gen_range(1..=cfg.max_args.max(1));
    let agents = rng.gen_range(1..=cfg.max_agents.max(1));
    let basis = random_basis(&mut rng, args, agents);
    let names = argument_names(args);
    let instances = cfg
        .schemata
        .iter()
        .map(|&schema| {
            let p = *names.choose(&mut rng).unwrap();
            let q = *names.choose(&mut rng).unwrap();
            (schema, p, q, random_formula(&mut rng, &names, cfg.body_depth))
        })
        .collect();
    Trial { basis, instances }
}

/// Runs trials in order and stops at the first instance that is false at the
/// root.
pub fn run_probe(cfg: &ProbeConfig) -> Result<ProbeOutcome, CheckError> {
    let check_cfg = CheckConfig::new(cfg.semantics).memoized();
    let mut instances = 0;
    for index in 0..cfg.trials {
        let trial = generate_trial(cfg, index);
        for (schema, p, q, body) in &trial.instances {
            instances += 1;
            let formula = schema.instantiate(*p, *q, body);
            if !check_at_root(&trial.basis, &formula, &check_cfg)? {
                return Ok(ProbeOutcome {
                    trials: index + 1,
                    instances,
                    counterexample: Some(Counterexample {
                        trial: index,
                        schema: *schema,
                        schema_text: schema.to_string(),
                        p: *p,
                        q: *q,
                        body: body.to_string(),
                        formula: formula.to_string(),
                        basis: BasisFile::from(&trial.basis),
                    }),
                });
            }
        }
    }
    Ok(ProbeOutcome {
        trials: cfg.trials,
        instances,
        counterexample: None,
    })
}
