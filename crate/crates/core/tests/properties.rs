//! Property tests for the algebra kernel, terms, file formats and model search.

mod common;

use std::collections::BTreeMap;

use dbakit::axioms::{check_suite, satisfies_equation, suite, SuiteId, Verdict};
use dbakit::format::{parse_algebra, parse_context, render_algebra, render_context};
use dbakit::fca::FormalContext;
use dbakit::search::{enumerate_algebras, for_each_candidate, SearchSpec};
use dbakit::term::{eval_term, Equation};
use dbakit::{classify, parse_term, Elem, FiniteAlgebra, Term};
use proptest::prelude::*;

fn algebra_strategy(max: usize) -> impl Strategy<Value = FiniteAlgebra> {
    (1..=max).prop_flat_map(|n| {
        (
            prop::collection::vec(0..n, n * n),
            prop::collection::vec(0..n, n * n),
            prop::collection::vec(0..n, n),
            prop::collection::vec(0..n, n),
            0..n,
            0..n,
        )
            .prop_map(move |(meet, join, neg, opp, top, bot)| {
                FiniteAlgebra::new(FiniteAlgebra::index_names(n), meet, join, neg, opp, top, bot).unwrap()
            })
    })
}

fn term_strategy() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::Top),
        Just(Term::Bot),
        prop::sample::select(vec!["x", "y", "z"]).prop_map(Term::var),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::neg),
            inner.clone().prop_map(Term::opp),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::meet(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Term::join(a, b)),
        ]
    })
}

/// Oracle: every assignment, evaluated through the tree interpreter.
fn holds_everywhere(alg: &FiniteAlgebra, eq: &Equation) -> bool {
    let vars = eq.variables();
    let n = alg.size();
    (0..n.pow(vars.len() as u32)).all(|code| {
        let env: BTreeMap<String, Elem> =
            vars.iter().enumerate().map(|(i, v)| (v.clone(), code / n.pow(i as u32) % n)).collect();
        eval_term(alg, &eq.lhs, &env).unwrap() == eval_term(alg, &eq.rhs, &env).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn algebra_text_round_trips(alg in algebra_strategy(4)) {
        prop_assert_eq!(parse_algebra(&render_algebra(&alg)).unwrap(), alg);
    }

    #[test]
    fn term_display_round_trips(t in term_strategy()) {
        prop_assert_eq!(parse_term(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn compiled_checker_agrees_with_the_interpreter(alg in algebra_strategy(3), l in term_strategy(), r in term_strategy()) {
        let eq = Equation::new("random", l, r);
        prop_assert_eq!(satisfies_equation(&alg, &eq).holds(), holds_everywhere(&alg, &eq));
    }

    #[test]
    fn reported_witnesses_really_fail(alg in algebra_strategy(3)) {
        for id in SuiteId::ALL {
            let report = check_suite(&alg, id);
            for (eq_id, verdict) in &report.verdicts {
                let eq = suite(id).equation(eq_id).unwrap();
                match verdict {
                    Verdict::Holds => prop_assert!(holds_everywhere(&alg, eq)),
                    Verdict::Fails(w) => {
                        let env = w.to_env();
                        prop_assert_ne!(eval_term(&alg, &eq.lhs, &env).unwrap(), eval_term(&alg, &eq.rhs, &env).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn class_flags_are_consistent(alg in algebra_strategy(3)) {
        let c = classify(&alg);
        prop_assert!(!c.is_contextual || c.is_dba);
        prop_assert!(!c.is_fully_contextual || c.is_contextual);
        prop_assert_eq!(c.is_dba, c.is_dcore, "the two suites disagree on a small algebra");
        prop_assert!(!c.is_dcore || c.is_generalized_dcore);
        let pure = alg.elements().all(|x| alg.meet(x, x) == x || alg.join(x, x) == x);
        prop_assert_eq!(c.is_pure, pure);
    }

    #[test]
    fn context_text_round_trips(g in 0usize..4, m in 0usize..4, bits in any::<u64>()) {
        let ctx = FormalContext::numbered(g, m, bits).unwrap();
        prop_assert_eq!(parse_context(&render_context(&ctx)).unwrap(), ctx);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// The pruned search returns exactly the models a plain sweep finds.
    #[test]
    fn pruned_search_matches_a_sweep(
        suite_id in prop::sample::select(SuiteId::ALL.to_vec()),
        fail_mask in any::<u32>(),
    ) {
        let ids: Vec<String> = suite(suite_id).equations.iter().map(|e| e.id.clone()).collect();
        let must_fail: Vec<String> = ids.iter().enumerate().filter(|(i, _)| fail_mask >> (i % 32) & 1 == 1 && *i % 5 == 0).map(|(_, s)| s.clone()).collect();
        let mut spec = SearchSpec::new(2, Some(suite_id));
        spec.must_fail = must_fail.clone();
        let mut pruned = Vec::new();
        let summary = enumerate_algebras(&spec, |a| pruned.push(a.clone())).unwrap();
        prop_assert!(summary.complete);
        let mut swept = Vec::new();
        for_each_candidate(2, |a| {
            let report = check_suite(a, suite_id);
            let failed: Vec<&str> = report.failed_ids();
            let ok = failed.iter().all(|f| must_fail.iter().any(|m| m == f))
                && must_fail.iter().all(|m| failed.contains(&m.as_str()));
            if ok {
                swept.push(a.clone());
            }
        });
        pruned.sort_by_key(render_algebra);
        swept.sort_by_key(render_algebra);
        prop_assert_eq!(pruned, swept);
    }
}

#[test]
fn quasi_order_is_reflexive_and_transitive_on_corpus_dbas() {
    for (name, alg) in common::small_dbas(64) {
        let below = |x, y| alg.below(x, y);
        for x in alg.elements() {
            assert!(below(x, x), "{name}");
            for y in alg.elements() {
                if !below(x, y) {
                    continue;
                }
                for z in alg.elements() {
                    assert!(!below(y, z) || below(x, z), "{name}: transitivity");
                }
            }
        }
    }
}
