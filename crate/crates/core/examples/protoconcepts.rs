//! Protoconcepts, semiconcepts and concepts of a small context, and the
//! class of the algebras they form.

use dbakit::classify;
use dbakit::fca::{enumerate_pairs, protoconcept_algebra, semiconcept_subalgebra, PairKind};
use dbakit::format::parse_context;

const CONTEXT: &str = "\
objects: duck frog fish
attributes: swims flies
XX
X.
X.
";

fn main() {
    let ctx = parse_context(CONTEXT).expect("valid context");
    for kind in [PairKind::Concept, PairKind::Semiconcept, PairKind::Protoconcept] {
        let pairs = enumerate_pairs(&ctx, kind);
        let names: Vec<String> = pairs.iter().map(|p| ctx.pair_name(p.extent, p.intent)).collect();
        println!("{kind} ({}): {}", pairs.len(), names.join(" "));
    }
    let proto = protoconcept_algebra(&ctx);
    let semi = semiconcept_subalgebra(&proto);
    let (p, s) = (classify(&proto.algebra), classify(&semi.algebra));
    println!("protoconcept algebra: dba={} fully_contextual={} pure={}", p.is_dba, p.is_fully_contextual, p.is_pure);
    println!("semiconcept algebra: dba={} pure={}", s.is_dba, s.is_pure);
}
