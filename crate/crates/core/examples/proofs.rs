//! Check the bundled derivations, search for two more, and refute a
//! sequent that has no derivation.

use dbakit::logic::{
    check_proof, find_countermodel, fixture_proofs, models_from, parse_hypersequent, search_proof, Lemma,
    ModelSource, ProofSearchConfig, ProofSearchOutcome, System,
};

fn main() {
    for (name, script) in fixture_proofs() {
        let verdict = if check_proof(&script).is_ok() { "valid" } else { "INVALID" };
        println!("{name}: {verdict}, {} lines", script.lines.len());
    }

    let pool = [Lemma::fixture("lemma-idem-meet").unwrap()];
    for goal in ["~(x & x) => ~x", "x & y => y & x"] {
        let h = parse_hypersequent(goal, System::L).unwrap();
        match search_proof(&h, System::L, ProofSearchConfig::default(), &pool) {
            ProofSearchOutcome::Found { script, depth, .. } => println!("\n{goal} at depth {depth}:\n{script}"),
            ProofSearchOutcome::NotFound { nodes, .. } => println!("\n{goal}: not found after {nodes} goals"),
        }
    }

    let h = parse_hypersequent("T => T & T", System::L).unwrap();
    let models = models_from(ModelSource::Fixtures).unwrap();
    if let Some(cm) = find_countermodel(&h, System::L, &models) {
        println!("T => T & T fails in {}", cm.model);
    }
}
