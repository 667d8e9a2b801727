//! Check the built-in algebras against every axiom suite and print the
//! first failing assignment of each violated axiom.

use dbakit::axioms::{check_suite, SuiteId};
use dbakit::fixtures::builtin_fixtures;

fn main() {
    for (name, alg) in builtin_fixtures() {
        println!("{name} ({} elements)", alg.size());
        for suite in SuiteId::ALL {
            let report = check_suite(&alg, suite);
            if report.passes() {
                println!("  {suite}: all {} axioms hold", report.verdicts.len());
            } else {
                let fails: Vec<String> = report.failures().map(|(id, w)| format!("{id} at {}", w.display(&alg))).collect();
                println!("  {suite}: {}", fails.join(", "));
            }
        }
    }
}
