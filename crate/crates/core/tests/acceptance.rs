//! Acceptance criteria. Each test prints one PASS/FAIL line; run with
//! `cargo test -p ddl-core --test acceptance -- --nocapture` to see them.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use ddl_core::argsem::{admissible_sets, check_normality, extensions, ArgSet, Framework, Labelling, SemanticsKind};
use ddl_core::basis::{shrink, Basis};
use ddl_core::checker::{check_at_root, n_bisimilar, oracle_check, oracle_universe, CheckConfig};
use ddl_core::ids::{arg, ArgumentId};
use ddl_core::logic::{black_atoms, eval_black, modal_args, parse_formula, white_depth, TruthValue};
use ddl_core::probe::{run_probe, ProbeConfig};
use ddl_core::random::{argument_names, random_basis, random_black, random_formula, random_framework};
use ddl_core::State;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PREFERRED: SemanticsKind = SemanticsKind::Preferred;

fn report(id: u32, name: &str, passed: bool, elapsed: Duration, limit: Duration) {
    let within = elapsed < limit;
    let verdict = if passed && within { "PASS" } else { "FAIL" };
    println!("[{verdict}] criterion {id}: {name} ({elapsed:.2?}, limit {limit:.0?})");
    assert!(passed, "criterion {id} ({name}) failed");
    assert!(within, "criterion {id} ({name}) took {elapsed:?}, limit {limit:?}");
}

fn set(names: &[&str]) -> ArgSet {
    names.iter().map(|n| arg(n)).collect()
}

fn pairs(list: &[(&str, &str)]) -> BTreeSet<(ArgumentId, ArgumentId)> {
    list.iter().map(|(x, y)| (arg(x), arg(y))).collect()
}

fn example_basis() -> Basis {
    Basis::from_views([
        ("a", pairs(&[("p", "p"), ("p", "q"), ("q", "p")])),
        ("b", pairs(&[("q", "q"), ("p", "q"), ("q", "p")])),
    ])
    .unwrap()
}

fn crossing_basis() -> Basis {
    Basis::from_views([("a", pairs(&[("p", "q")])), ("b", pairs(&[("q", "p")]))]).unwrap()
}

#[test]
fn criterion_1_mutual_attack_extensions() {
    let start = Instant::now();
    let fw = Framework::from_edges(pairs(&[("p", "q"), ("q", "p")]), []);
    let admissible = admissible_sets(&fw);
    let preferred = extensions(&fw, PREFERRED);
    let elapsed = start.elapsed();
    let want_adm: BTreeSet<ArgSet> = [set(&[]), set(&["p"]), set(&["q"])].into();
    let want_pref: BTreeSet<ArgSet> = [set(&["p"]), set(&["q"])].into();
    report(
        1,
        "mutual attack: admissible = {∅,{p},{q}}, preferred = {{p},{q}}",
        admissible == want_adm && preferred == want_pref,
        elapsed,
        Duration::from_millis(10),
    );
}

#[test]
fn criterion_2_worked_example() {
    let start = Instant::now();
    let b = example_basis();
    let formulas = ["<p>[[p]]", "E* [[p]]", "[p] E* [[q]]", "~[p] E* <<p>>", "<p> E* [[~p]]", "E* E* (<<p>> & <<q>>)"];
    let mut all = true;
    for text in formulas {
        let phi = parse_formula(text).unwrap();
        let checked = check_at_root(&b, &phi, &CheckConfig::new(PREFERRED)).unwrap();
        let mut universe = set(&["p", "q"]);
        universe.extend([ArgumentId::fresh(0), ArgumentId::fresh(1)]);
        let oracle = oracle_check(&b, &phi, &State::root(), &universe, PREFERRED);
        println!("    {text:<24} checker={checked} oracle={oracle}");
        all &= checked && oracle;
    }
    report(2, "six worked-example formulas true at the root", all, start.elapsed(), Duration::from_secs(5));
}

#[test]
fn criterion_3_non_validity_witness() {
    let start = Instant::now();
    let b = crossing_basis();
    let holds = |text: &str| check_at_root(&b, &parse_formula(text).unwrap(), &CheckConfig::new(PREFERRED)).unwrap();
    let a = holds("[q]<p>[[p]]");
    let c = holds("[p]<q>[[q]]");
    let converse = holds("<p>[q][[p]]");
    println!("    [q]<p>[[p]]={a} [p]<q>[[q]]={c} <p>[q][[p]]={converse}");
    report(
        3,
        "crossing basis separates [q]<p>phi from <p>[q]phi",
        a && c && !converse,
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_4_validity_schemata() {
    let start = Instant::now();
    let cfg = ProbeConfig {
        seed: 2017,
        trials: 200,
        max_args: 4,
        max_agents: 3,
        body_depth: 1,
        ..Default::default()
    };
    let outcome = run_probe(&cfg).unwrap();
    if let Some(cx) = &outcome.counterexample {
        println!("    counterexample: {}", serde_json::to_string(cx).unwrap());
    }
    println!("    {} trials, {} instances", outcome.trials, outcome.instances);
    report(
        4,
        "validity schemata hold on 200 random bases",
        outcome.counterexample.is_none() && outcome.instances == 800,
        start.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_5_shrink_soundness() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut mismatches = Vec::new();
    let mut trues = 0;
    for _ in 0..100 {
        let args = rng.gen_range(1..=5);
        let agents = rng.gen_range(1..=3);
        let b = random_basis(&mut rng, args, agents);
        let phi = random_formula(&mut rng, &argument_names(args), 2);
        let checked = check_at_root(&b, &phi, &CheckConfig::new(PREFERRED).memoized()).unwrap();
        let universe = oracle_universe(&b, &phi, white_depth(&phi));
        let oracle = oracle_check(&b, &phi, &State::root(), &universe, PREFERRED);
        trues += usize::from(oracle);
        if checked != oracle {
            mismatches.push(format!("{phi} on {}", b.to_json()));
        }
    }
    for m in &mismatches {
        println!("    mismatch: {m}");
    }
    println!("    {trues}/100 instances true");
    report(
        5,
        "shrunk checker agrees with brute-force oracle on 100 instances",
        mismatches.is_empty(),
        start.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_6_shrink_bisimulation() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    for _ in 0..25 {
        let args = rng.gen_range(1..=4);
        let agents = rng.gen_range(1..=3);
        let b = random_basis(&mut rng, args, agents);
        let phi = random_formula(&mut rng, &argument_names(args), 2);
        let depth = white_depth(&phi);
        let mut universe = b.universe();
        universe.extend(modal_args(&phi));
        universe.extend((0..depth).map(ArgumentId::fresh));
        let root = State::root();
        if !n_bisimilar(&b, &root, &shrink(&b, &phi), &root, depth, &black_atoms(&phi), &universe) {
            failures.push(format!("{phi} on {}", b.to_json()));
        }
    }
    for f in &failures {
        println!("    not bisimilar: {f}");
    }
    report(
        6,
        "basis and its shrink are d(phi)-bisimilar modulo the black atoms",
        failures.is_empty(),
        start.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_7_normality() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    for _ in 0..200 {
        let nodes = rng.gen_range(0..=6);
        let fw = random_framework(&mut rng, nodes);
        for sem in SemanticsKind::ALL {
            if !check_normality(sem, &fw) {
                failures.push(format!("{sem} on {fw:?}"));
            }
        }
    }
    for f in &failures {
        println!("    not normal: {f}");
    }
    report(
        7,
        "all five semantics are normal on 200 random frameworks",
        failures.is_empty(),
        start.elapsed(),
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_8_lukasiewicz_laws() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let atoms = argument_names(4);
    let mut failures = 0;
    for _ in 0..1000 {
        let mut lab = Labelling::undecided(atoms.iter().copied().collect());
        for &p in &atoms {
            match rng.gen_range(0..3) {
                0 => lab.out_set.insert(p),
                1 => lab.in_set.insert(p),
                _ => false,
            };
        }
        let size = rng.gen_range(0..5);
        let alpha = random_black(&mut rng, &atoms, size);
        let double_neg = eval_black(&lab, &alpha.clone().not().not()) == eval_black(&lab, &alpha);
        let self_impl = eval_black(&lab, &alpha.clone().implies(alpha)) == TruthValue::True;
        failures += usize::from(!(double_neg && self_impl));
    }
    report(
        8,
        "double negation and self-implication on 1000 random pairs",
        failures == 0,
        start.elapsed(),
        Duration::from_secs(5),
    );
}
