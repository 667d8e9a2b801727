//! The sequent calculus L, sound and complete for contextual algebras, and
//! the hypersequent calculus HL for pure ones: syntax, proof scripts and
//! their checker, backward proof search and countermodel search.
//!
//! Hypersequents are read disjunctively: φ₁ ⇒ ψ₁ ; … ; φₙ ⇒ ψₙ holds in an
//! algebra when every assignment satisfies at least one component.

mod check;
mod schema;
mod scripts;
mod search;
mod semantics;
mod syntax;

pub use check::{check_proof, check_proof_with, parse_script, CheckFailure, ProofScript, Rule, ScriptLine};
pub use schema::{axiom_match, axiom_schemas, schema, schemas_for, AxiomSchema, Binding};
pub use scripts::{fixture_proof_text, fixture_proofs};
pub use search::{lemma_library, search_proof, Lemma, ProofSearchConfig, ProofSearchOutcome};
pub use semantics::{
    check_class, eval_sequent, falsifying_env, find_countermodel, is_true_in, models_from, unsound_env, Countermodel,
    ModelSource, SemanticsError,
};
pub use syntax::{parse_hypersequent, parse_sequent, Hypersequent, Sequent, System};

/// Schematic instances of the L rules over metavariables `a`, `b`, `c`:
/// (rule, premises, conclusion).
pub fn rule_schemas() -> Vec<(Rule, Vec<Sequent>, Sequent)> {
    let s = |t: &str| parse_sequent(t, System::L).expect("rule text parses");
    vec![
        (Rule::Cut, vec![s("a => b"), s("b => c")], s("a => c")),
        (Rule::MeetR, vec![s("a => b")], s("a & c => b & c")),
        (Rule::MeetL, vec![s("a => b")], s("c & a => c & b")),
        (Rule::JoinR, vec![s("a => b")], s("a | c => b | c")),
        (Rule::JoinL, vec![s("a => b")], s("c | a => c | b")),
        (Rule::Neg, vec![s("a => b")], s("~b => ~a")),
        (Rule::Opp, vec![s("a => b")], s("!b => !a")),
        (Rule::Sq, vec![s("a & b => a & a"), s("a & a => a & b"), s("a | b => b | b"), s("b | b => a | b")], s("a => b")),
    ]
}
