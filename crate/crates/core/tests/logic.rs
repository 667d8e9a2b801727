//! Integration tests for the calculi: randomly generated derivations must
//! check and be sound, search results must re-validate, and countermodels
//! must really falsify.

mod common;

use std::sync::OnceLock;

use dbakit::logic::{
    check_proof, falsifying_env, find_countermodel, parse_hypersequent, parse_script, schema, schemas_for,
    search_proof, Binding, Hypersequent, ProofScript, ProofSearchConfig, ProofSearchOutcome, Rule, ScriptLine,
    Sequent, System,
};
use dbakit::term::{eval_term, Sort};
use dbakit::{classify, FiniteAlgebra, Term};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Contextual models (for L) and pure double Boolean algebras (for HL) of
/// at most 20 elements.
fn models(system: System) -> &'static [(String, FiniteAlgebra)] {
    static L: OnceLock<Vec<(String, FiniteAlgebra)>> = OnceLock::new();
    static HL: OnceLock<Vec<(String, FiniteAlgebra)>> = OnceLock::new();
    let cell = if system == System::L { &L } else { &HL };
    cell.get_or_init(|| {
        common::small_dbas(20)
            .into_iter()
            .filter(|(_, a)| {
                let c = classify(a);
                if system == System::L {
                    c.is_contextual
                } else {
                    c.is_pure
                }
            })
            .collect()
    })
}

fn valid_everywhere(h: &Hypersequent, system: System) -> Option<String> {
    models(system).iter().find_map(|(name, alg)| {
        falsifying_env(alg, h).map(|env| format!("{h} fails in {name} at {env:?}"))
    })
}

fn random_term(rng: &mut ChaCha8Rng, system: System, depth: usize) -> Term {
    let leaf = |rng: &mut ChaCha8Rng| match (system, rng.gen_range(0..6)) {
        (_, 0) => Term::Top,
        (_, 1) => Term::Bot,
        (System::L, k) => Term::var(["x", "y", "z", "x"][k - 2]),
        (System::HL, k) => {
            let (name, sort) = [("p", Sort::Object), ("q", Sort::Object), ("P", Sort::Property), ("Q", Sort::Property)][k - 2];
            Term::sorted_var(name, sort)
        }
    };
    if depth == 0 || rng.gen_bool(0.4) {
        return leaf(rng);
    }
    match rng.gen_range(0..4) {
        0 => Term::neg(random_term(rng, system, depth - 1)),
        1 => Term::opp(random_term(rng, system, depth - 1)),
        2 => Term::meet(random_term(rng, system, depth - 1), random_term(rng, system, depth - 1)),
        _ => Term::join(random_term(rng, system, depth - 1), random_term(rng, system, depth - 1)),
    }
}

fn random_axiom(rng: &mut ChaCha8Rng, system: System) -> (Sequent, Rule) {
    let all: Vec<_> = schemas_for(system).collect();
    let ax = all.choose(rng).expect("schemas exist");
    let mut bind = Binding::new();
    for m in ax.metavariables() {
        let t = match m.as_str() {
            "p" => Term::sorted_var(["p", "q"][rng.gen_range(0..2)], Sort::Object),
            "P" => Term::sorted_var(["P", "Q"][rng.gen_range(0..2)], Sort::Property),
            _ => random_term(rng, system, 2),
        };
        bind.insert(m, t);
    }
    (ax.instantiate(&bind), Rule::Axiom(ax.id.to_string()))
}

fn unary(rule: &Rule, s: &Sequent, c: Term) -> Sequent {
    let (a, b) = (s.lhs.clone(), s.rhs.clone());
    match rule {
        Rule::MeetR => Sequent::new(Term::meet(a, c.clone()), Term::meet(b, c)),
        Rule::MeetL => Sequent::new(Term::meet(c.clone(), a), Term::meet(c, b)),
        Rule::JoinR => Sequent::new(Term::join(a, c.clone()), Term::join(b, c)),
        Rule::JoinL => Sequent::new(Term::join(c.clone(), a), Term::join(c, b)),
        Rule::Neg => Sequent::new(Term::neg(b), Term::neg(a)),
        Rule::Opp => Sequent::new(Term::opp(b), Term::opp(a)),
        _ => unreachable!("not a unary logical rule"),
    }
}

/// Build a derivation forwards by applying randomly chosen rules.
fn random_derivation(seed: u64, system: System, steps: usize) -> ProofScript {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines: Vec<ScriptLine> = Vec::new();
    let push = |lines: &mut Vec<ScriptLine>, comps: Vec<Sequent>, rule: Rule, premises: Vec<usize>| {
        let index = lines.len() + 1;
        lines.push(ScriptLine { index, hyper: Hypersequent::new(comps).expect("nonempty"), rule, premises });
    };
    while lines.len() < steps {
        let choice = if lines.is_empty() { 0 } else { rng.gen_range(0..10) };
        let pick = rng.gen_range(0..lines.len().max(1));
        match choice {
            0 | 1 => {
                let (s, rule) = random_axiom(&mut rng, system);
                push(&mut lines, vec![s], rule, vec![]);
            }
            2 => {
                let t = random_term(&mut rng, system, 2);
                push(&mut lines, vec![Sequent::new(t.clone(), t)], Rule::IdAxiom, vec![]);
            }
            3..=5 => {
                let rule = [Rule::MeetR, Rule::MeetL, Rule::JoinR, Rule::JoinL, Rule::Neg, Rule::Opp].choose(&mut rng).unwrap().clone();
                let mut comps = lines[pick].hyper.components().to_vec();
                let k = rng.gen_range(0..comps.len());
                comps[k] = unary(&rule, &comps[k], random_term(&mut rng, system, 1));
                let premise = vec![lines[pick].index];
                push(&mut lines, comps, rule, premise);
            }
            6 | 7 => {
                // Any cut between existing lines whose formulas meet.
                let mut options = Vec::new();
                for (a, la) in lines.iter().enumerate() {
                    for (b, lb) in lines.iter().enumerate() {
                        for (i, s) in la.hyper.components().iter().enumerate() {
                            for (j, t) in lb.hyper.components().iter().enumerate() {
                                if s.rhs == t.lhs {
                                    options.push((a, b, i, j));
                                }
                            }
                        }
                    }
                }
                let Some(&(a, b, i, j)) = options.choose(&mut rng) else { continue };
                let (p1, p2) = (lines[a].hyper.components(), lines[b].hyper.components());
                let mut comps = p1[..i].to_vec();
                comps.extend_from_slice(&p2[..j]);
                comps.push(Sequent::new(p1[i].lhs.clone(), p2[j].rhs.clone()));
                comps.extend_from_slice(&p1[i + 1..]);
                comps.extend_from_slice(&p2[j + 1..]);
                let premises = vec![lines[a].index, lines[b].index];
                push(&mut lines, comps, Rule::Cut, premises);
            }
            _ if system == System::L => continue,
            8 => {
                let t = random_term(&mut rng, system, 2);
                push(&mut lines, vec![Sequent::new(t.clone(), Term::meet(t.clone(), t.clone())), Sequent::new(Term::join(t.clone(), t.clone()), t)], Rule::Sp, vec![]);
            }
            _ => {
                let mut comps = lines[pick].hyper.components().to_vec();
                let premise = vec![lines[pick].index];
                if comps.len() > 1 && rng.gen_bool(0.5) {
                    let k = rng.gen_range(0..comps.len() - 1);
                    if comps[k] == comps[k + 1] {
                        comps.remove(k + 1);
                        push(&mut lines, comps, Rule::Ec, premise);
                    } else {
                        comps.swap(k, k + 1);
                        push(&mut lines, comps, Rule::Ee, premise);
                    }
                } else {
                    let extra = if rng.gen_bool(0.5) {
                        comps[rng.gen_range(0..comps.len())].clone()
                    } else {
                        Sequent::new(random_term(&mut rng, system, 1), random_term(&mut rng, system, 1))
                    };
                    comps.push(extra);
                    push(&mut lines, comps, Rule::Ew, premise);
                }
            }
        }
    }
    ProofScript { system, lines }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_l_derivations_check_and_are_sound(seed in any::<u64>(), steps in 1usize..12) {
        let script = random_derivation(seed, System::L, steps);
        prop_assert!(check_proof(&script).is_ok(), "{}", script);
        for line in &script.lines {
            prop_assert_eq!(valid_everywhere(&line.hyper, System::L), None);
        }
    }

    #[test]
    fn generated_hl_derivations_check_and_are_sound(seed in any::<u64>(), steps in 1usize..12) {
        let script = random_derivation(seed, System::HL, steps);
        prop_assert!(check_proof(&script).is_ok(), "{}", script);
        for line in &script.lines {
            prop_assert_eq!(valid_everywhere(&line.hyper, System::HL), None);
        }
    }

    #[test]
    fn scripts_print_and_parse_back(seed in any::<u64>(), hl in any::<bool>()) {
        let system = if hl { System::HL } else { System::L };
        let script = random_derivation(seed, system, 8);
        prop_assert_eq!(parse_script(&script.to_string()).unwrap(), script);
    }

    /// Replacing a conclusion by a refutable sequent must be caught.
    #[test]
    fn checker_rejects_unsound_conclusions(seed in any::<u64>(), steps in 1usize..8) {
        let mut script = random_derivation(seed, System::L, steps);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xbad);
        let bogus = Sequent::new(random_term(&mut rng, System::L, 2), random_term(&mut rng, System::L, 2));
        let h = Hypersequent::single(bogus);
        prop_assume!(valid_everywhere(&h, System::L).is_some());
        script.lines.last_mut().unwrap().hyper = h;
        prop_assert!(check_proof(&script).is_err());
    }

    /// Proofs found by search check, and their goals have no countermodel.
    #[test]
    fn search_results_revalidate(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let goal = Hypersequent::single(Sequent::new(random_term(&mut rng, System::L, 2), random_term(&mut rng, System::L, 2)));
        let cfg = ProofSearchConfig { depth: 3, max_nodes: 3_000 };
        if let ProofSearchOutcome::Found { script, .. } = search_proof(&goal, System::L, cfg, &[]) {
            prop_assert!(check_proof(&script).is_ok(), "{}", script);
            prop_assert_eq!(script.conclusion(), Some(&goal));
            prop_assert_eq!(valid_everywhere(&goal, System::L), None);
        }
    }

    /// A countermodel's assignment really falsifies the goal.
    #[test]
    fn countermodels_falsify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = Sequent::new(random_term(&mut rng, System::L, 2), random_term(&mut rng, System::L, 2));
        if let Some(cm) = find_countermodel(&Hypersequent::single(s.clone()), System::L, models(System::L)) {
            let l = eval_term(&cm.algebra, &s.lhs, &cm.env).unwrap();
            let r = eval_term(&cm.algebra, &s.rhs, &cm.env).unwrap();
            prop_assert!(!cm.algebra.below(l, r));
        }
    }

    /// Every L axiom instance over sorted variables is an HL axiom at depth 0.
    #[test]
    fn hl_subsumes_l_axioms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for ax in schemas_for(System::L) {
            let bind: Binding = ax.metavariables().into_iter().map(|m| (m, random_term(&mut rng, System::HL, 2))).collect();
            let goal = Hypersequent::single(ax.instantiate(&bind));
            let out = search_proof(&goal, System::HL, ProofSearchConfig { depth: 0, max_nodes: 100 }, &[]);
            match out {
                ProofSearchOutcome::Found { depth, script, .. } => {
                    prop_assert_eq!(depth, 0);
                    prop_assert!(check_proof(&script).is_ok());
                }
                other => prop_assert!(false, "{} not found: {:?}", goal, other),
            }
        }
    }

    /// Cutting the two halves of a split equivalence gives reflexivity on
    /// either side.
    #[test]
    fn split_equivalences_round_trip_by_cut(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for lr in schemas_for(System::L).filter(|s| s.id.ends_with(".lr")) {
            let rl = schema(&lr.id.replace(".lr", ".rl")).expect("paired schema");
            let bind: Binding = lr.metavariables().into_iter().map(|m| (m, random_term(&mut rng, System::L, 2))).collect();
            let (a, b) = (lr.instantiate(&bind), rl.instantiate(&bind));
            prop_assert_eq!(&a.rhs, &b.lhs);
            let text = format!(
                "system: L\n1: {a}  axiom({})\n2: {b}  axiom({})\n3: {} => {}  cut 1 2\n4: {} => {}  cut 2 1\n",
                lr.id, rl.id, a.lhs, a.lhs, b.lhs, b.lhs
            );
            let script = parse_script(&text).unwrap();
            prop_assert!(check_proof(&script).is_ok(), "{}", text);
        }
    }
}

#[test]
fn sq_turns_mutual_bounds_into_a_sequent() {
    // With both sides equal to x the four premises are identity instances.
    let text = "system: L
1: x & x => x & x  id-axiom
2: x | x => x | x  id-axiom
3: x => x  sq 1 1 2 2
";
    check_proof(&parse_script(text).unwrap()).unwrap();
    let bad = "system: L
1: x & x => x & x  id-axiom
2: x | x => x | x  id-axiom
3: x => y  sq 1 1 2 2
";
    assert!(check_proof(&parse_script(bad).unwrap()).is_err());
}

#[test]
fn hl_only_axioms_are_sound_on_pure_models() {
    for ax in schemas_for(System::HL).filter(|s| s.hl_only) {
        let bind: Binding = ax
            .metavariables()
            .into_iter()
            .map(|m| {
                let sort = if m == "P" { Sort::Property } else { Sort::Object };
                let t = Term::sorted_var(&m, sort);
                (m, t)
            })
            .collect();
        let h = Hypersequent::single(ax.instantiate(&bind));
        assert_eq!(valid_everywhere(&h, System::HL), None, "{}", ax.id);
    }
}

#[test]
fn sp_needs_purity() {
    let sp = parse_hypersequent("x => x & x ; x | x => x", System::L).unwrap();
    for (name, alg) in models(System::HL) {
        assert!(falsifying_env(alg, &sp).is_none(), "{name}");
    }
    let impure: Vec<_> = common::fca_corpus().into_iter().filter(|(_, a)| !classify(a).is_pure).collect();
    assert!(find_countermodel(&sp, System::L, &impure).is_some());
}
