//! Model corpus shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use std::collections::BTreeSet;

use dbakit::axioms::{passes_suite, SuiteId};
use dbakit::constructions::{glued_sum, powerset_boolean};
use dbakit::fca::{protoconcept_algebra, semiconcept_subalgebra, FormalContext};
use dbakit::fixtures::builtin_fixtures;
use dbakit::format::render_algebra;
use dbakit::FiniteAlgebra;

/// Every context with at most `max` objects and at most `max` attributes.
pub fn all_contexts(max: usize) -> Vec<FormalContext> {
    (0..=max).flat_map(|g| (0..=max).flat_map(move |m| FormalContext::all_of_shape(g, m))).collect()
}

/// One context per isomorphism class, same shapes as [`all_contexts`].
pub fn context_classes(max: usize) -> Vec<FormalContext> {
    (0..=max).flat_map(|g| (0..=max).flat_map(move |m| FormalContext::representatives_of_shape(g, m))).collect()
}

fn shape(ctx: &FormalContext) -> String {
    format!("{}x{}", ctx.n_objects(), ctx.n_attributes())
}

/// Protoconcept algebras and their semiconcept subalgebras of one context
/// per isomorphism class up to 3×3, without repeated tables.
pub fn fca_corpus() -> Vec<(String, FiniteAlgebra)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (k, ctx) in context_classes(3).into_iter().enumerate() {
        let proto = protoconcept_algebra(&ctx);
        let semi = semiconcept_subalgebra(&proto);
        for (kind, alg) in [("proto", proto.algebra), ("semi", semi.algebra)] {
            if seen.insert(render_algebra(&alg)) {
                out.push((format!("{kind}-{}-{k}", shape(&ctx)), alg));
            }
        }
    }
    out
}

/// Glued sums of powerset algebras with 0, 1, 2 and 4 atoms.
pub fn glued_sum_corpus() -> Vec<(String, FiniteAlgebra)> {
    let mut out = Vec::new();
    for kp in [0, 1, 2, 4] {
        for kq in [0, 1, 2, 4] {
            let (p, q) = (powerset_boolean(kp).unwrap(), powerset_boolean(kq).unwrap());
            out.push((format!("glued-{kp}+{kq}"), glued_sum(&p, &q).unwrap()));
        }
    }
    out
}

/// Built-in fixtures, the FCA corpus and the glued sums.
pub fn corpus() -> Vec<(String, FiniteAlgebra)> {
    let mut out: Vec<(String, FiniteAlgebra)> =
        builtin_fixtures().into_iter().map(|(n, a)| (n.to_string(), a)).collect();
    out.extend(fca_corpus());
    out.extend(glued_sum_corpus());
    out
}

/// Members of [`corpus`] that pass DBA23 and have at most `max` elements.
pub fn small_dbas(max: usize) -> Vec<(String, FiniteAlgebra)> {
    corpus().into_iter().filter(|(_, a)| a.size() <= max && passes_suite(a, SuiteId::Dba23)).collect()
}
