//! Primary filters and ideals of a protoconcept algebra, its standard
//! context, and the checks on h(x) = (F_x, I_x).

use dbakit::fca::{protoconcept_algebra, FormalContext};
use dbakit::format::render_context;
use dbakit::representation::{derivation_identity_failures, representation, verify_clopen_characterization};

fn main() {
    let ctx = FormalContext::numbered(2, 2, 0b0110).unwrap();
    let alg = protoconcept_algebra(&ctx).algebra;
    let rep = representation(&alg).unwrap();
    println!(
        "{} elements, {} primary filters, {} primary ideals",
        alg.size(),
        rep.delta.filters.len(),
        rep.delta.ideals.len()
    );
    print!("{}", render_context(&rep.delta.context));
    println!("derivation identities: {} failures", derivation_identity_failures(&alg, &rep).len());
    println!("homomorphism={} injective={} isomorphism={}", rep.homomorphism, rep.injective, rep.is_isomorphism());
    let v = verify_clopen_characterization(&alg).unwrap();
    println!("clopen characterization: {}", if v.passes() { "holds" } else { "fails" });
}
