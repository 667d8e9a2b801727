//! Glue two powerset algebras, classify the result and rebuild it from its
//! Boolean parts through embedding-retraction pairs.

use dbakit::classify;
use dbakit::constructions::{
    build_from_boolean_pair, canonical_pairs, check_theorem_conditions, glued_sum, powerset_boolean, TheoremVersion,
};
use dbakit::format::render_algebra;

fn main() {
    let (p, q) = (powerset_boolean(2).unwrap(), powerset_boolean(1).unwrap());
    let alg = glued_sum(&p, &q).unwrap();
    print!("{}", render_algebra(&alg));
    let c = classify(&alg);
    println!("dba={} pure={} trivial={}", c.is_dba, c.is_pure, c.is_trivial);

    let (pp, qq) = canonical_pairs(&alg).unwrap();
    let report = check_theorem_conditions(&pp, &qq, TheoremVersion::New).unwrap();
    println!("conditions on the Boolean parts: {}", if report.passes() { "hold" } else { "fail" });
    let rebuilt = build_from_boolean_pair(&pp, &qq).unwrap();
    println!("rebuilt algebra has {} elements, dba={}", rebuilt.size(), classify(&rebuilt).is_dba);
}
