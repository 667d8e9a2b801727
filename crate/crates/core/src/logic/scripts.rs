//! Named derivations in L. Each `(b)` item is the order dual of its `(a)`
//! item. Steps that combine several rules are written out one rule per line.

use super::check::{parse_script, ProofScript};

const LEMMA_IDEM_MEET: &str = "\
system: L
1: x & y => ~~(x & y)                      axiom(dneg.rl)
2: ~((x & y) & (x & y)) => ~(x & y)        axiom(neg-idem)
3: ~~(x & y) => ~~((x & y) & (x & y))      neg 2
4: ~~((x & y) & (x & y)) => (x & y) & (x & y)  axiom(dneg.lr)
5: ~~(x & y) => (x & y) & (x & y)          cut 3 4
6: x & y => (x & y) & (x & y)              cut 1 5
";

const LEMMA_IDEM_JOIN: &str = "\
system: L
1: !!(x | y) => x | y                      axiom(dopp.lr)
2: !(x | y) => !((x | y) | (x | y))        axiom(opp-idem)
3: !!((x | y) | (x | y)) => !!(x | y)      opp 2
4: (x | y) | (x | y) => !!((x | y) | (x | y))  axiom(dopp.rl)
5: (x | y) | (x | y) => !!(x | y)          cut 4 3
6: (x | y) | (x | y) => x | y              cut 5 1
";

const THM_COMM_MEET: &str = "\
system: L
1: x & y => x                              axiom(meet-elim-l)
2: x & y => y                              axiom(meet-elim-r)
3: (x & y) & (x & y) => y & (x & y)        meetR 2
4: y & (x & y) => y & x                    meetL 1
5: (x & y) & (x & y) => y & x              cut 3 4
6: x & y => (x & y) & (x & y)              lemma(lemma-idem-meet)
7: x & y => y & x                          cut 6 5
";

const THM_COMM_JOIN: &str = "\
system: L
1: x => y | x                              axiom(join-intro-r)
2: y => y | x                              axiom(join-intro-l)
3: x | y => (y | x) | y                    joinR 1
4: (y | x) | y => (y | x) | (y | x)        joinL 2
5: x | y => (y | x) | (y | x)              cut 3 4
6: (y | x) | (y | x) => y | x              lemma(lemma-idem-join)
7: x | y => y | x                          cut 5 6
";

const THM_NEG_MONOTONE: &str = "\
system: L
1: x & x => x                              axiom(meet-elim-l)
2: ~x => ~(x & x)                          neg 1
";

const THM_OPP_MONOTONE: &str = "\
system: L
1: x => x | x                              axiom(join-intro-l)
2: !(x | x) => !x                          opp 1
";

const THM_3A: &str = "\
system: L
1: x & (x | y) => x                        axiom(meet-elim-l)
2: x & (x | y) => x                        axiom(meet-elim-l)
3: (x & (x | y)) & (x & (x | y)) => x & (x & (x | y))  meetR 1
4: x & (x & (x | y)) => x & x              meetL 2
5: (x & (x | y)) & (x & (x | y)) => x & x  cut 3 4
6: x & (x | y) => (x & (x | y)) & (x & (x | y))  lemma(lemma-idem-meet)
7: x & (x | y) => x & x                    cut 6 5
";

const THM_3B: &str = "\
system: L
1: x => x | (x & y)                        axiom(join-intro-l)
2: x => x | (x & y)                        axiom(join-intro-l)
3: x | x => x | (x | (x & y))              joinL 1
4: x | (x | (x & y)) => (x | (x & y)) | (x | (x & y))  joinR 2
5: x | x => (x | (x & y)) | (x | (x & y))  cut 3 4
6: (x | (x & y)) | (x | (x & y)) => x | (x & y)  lemma(lemma-idem-join)
7: x | x => x | (x & y)                    cut 5 6
";

const SOURCES: &[(&str, &str)] = &[
    ("lemma-idem-meet", LEMMA_IDEM_MEET),
    ("lemma-idem-join", LEMMA_IDEM_JOIN),
    ("thm-comm-meet", THM_COMM_MEET),
    ("thm-comm-join", THM_COMM_JOIN),
    ("thm-neg-monotone", THM_NEG_MONOTONE),
    ("thm-opp-monotone", THM_OPP_MONOTONE),
    ("thm-3a", THM_3A),
    ("thm-3b", THM_3B),
];

/// The named scripts, in a fixed order.
pub fn fixture_proofs() -> Vec<(&'static str, ProofScript)> {
    SOURCES.iter().map(|&(name, text)| (name, parse_script(text).expect("fixture script parses"))).collect()
}

/// Source text of a named script.
pub fn fixture_proof_text(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
