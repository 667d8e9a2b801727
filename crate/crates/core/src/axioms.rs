//! Axiom suites, equation checking with deterministic witnesses, and the
//! catalog of identities derivable from the 13-axiom D-core system.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::algebra::{Elem, FiniteAlgebra};
use crate::term::Equation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteId {
    /// The 23 identities defining a double Boolean algebra.
    Dba23,
    /// The 13-identity D-core system.
    Dcore13,
    /// D-core without the absorption pair 3a/3b.
    Gdcore11,
    /// Boolean-algebra laws over ⊓, ⊔, ¬, ⊥, ⊤.
    Boolean,
}

impl SuiteId {
    pub const ALL: [SuiteId; 4] = [SuiteId::Dba23, SuiteId::Dcore13, SuiteId::Gdcore11, SuiteId::Boolean];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Dba23 => "DBA23",
            SuiteId::Dcore13 => "DCORE13",
            SuiteId::Gdcore11 => "GDCORE11",
            SuiteId::Boolean => "BOOLEAN",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown axiom suite `{0}` (expected dba, dcore, gdcore or boolean)")]
pub struct UnknownSuite(pub String);

impl FromStr for SuiteId {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<SuiteId, UnknownSuite> {
        match s.to_ascii_lowercase().as_str() {
            "dba" | "dba23" => Ok(SuiteId::Dba23),
            "dcore" | "dcore13" => Ok(SuiteId::Dcore13),
            "gdcore" | "gdcore11" => Ok(SuiteId::Gdcore11),
            "boolean" | "bool" => Ok(SuiteId::Boolean),
            _ => Err(UnknownSuite(s.to_string())),
        }
    }
}

const DBA23: &[(&str, &str)] = &[
    ("1a", "(x & x) & y = x & y"),
    ("1b", "(x | x) | y = x | y"),
    ("2a", "x & y = y & x"),
    ("2b", "x | y = y | x"),
    ("3a", "~(x & x) = ~x"),
    ("3b", "!(x | x) = !x"),
    ("4a", "x & (x | y) = x & x"),
    ("4b", "x | (x & y) = x | x"),
    ("5a", "x & vee(y, z) = vee(x & y, x & z)"),
    ("5b", "x | wedge(y, z) = wedge(x | y, x | z)"),
    ("6a", "x & vee(x, y) = x & x"),
    ("6b", "x | wedge(x, y) = x | x"),
    ("7a", "~~(x & y) = x & y"),
    ("7b", "!!(x | y) = x | y"),
    ("8a", "x & ~x = F"),
    ("8b", "x | !x = T"),
    ("9a", "~T = F"),
    ("9b", "!F = T"),
    ("10a", "x & (y & z) = (x & y) & z"),
    ("10b", "x | (y | z) = (x | y) | z"),
    ("11a", "~F = T & T"),
    ("11b", "!T = F | F"),
    ("12", "(x & x) | (x & x) = (x | x) & (x | x)"),
];

const DCORE13: &[(&str, &str)] = &[
    ("1a", "x & y = y & x"),
    ("1b", "x | y = y | x"),
    ("2a", "~(x & x) = ~x"),
    ("2b", "!(x | x) = !x"),
    ("3a", "x & (x | y) = x & x"),
    ("3b", "x | (x & y) = x | x"),
    ("4a", "x & vee(y, z) = vee(x & y, x & z)"),
    ("4b", "x | wedge(y, z) = wedge(x | y, x | z)"),
    ("5a", "~~(x & y) = x & y"),
    ("5b", "!!(x | y) = x | y"),
    ("6a", "x & ~x = F"),
    ("6b", "x | !x = T"),
    ("7", "(x & x) | (x & x) = (x | x) & (x | x)"),
];

const BOOLEAN: &[(&str, &str)] = &[
    ("comm-meet", "x & y = y & x"),
    ("comm-join", "x | y = y | x"),
    ("assoc-meet", "x & (y & z) = (x & y) & z"),
    ("assoc-join", "x | (y | z) = (x | y) | z"),
    ("absorb-meet", "x & (x | y) = x"),
    ("absorb-join", "x | (x & y) = x"),
    ("dist-meet", "x & (y | z) = (x & y) | (x & z)"),
    ("dist-join", "x | (y & z) = (x | y) & (x | z)"),
    ("compl-meet", "x & ~x = F"),
    ("compl-join", "x | ~x = T"),
    ("bound-top", "x & T = x"),
    ("bound-bot", "x | F = x"),
];

/// Derived identities as (group, [(⊓-form, ⊔-form)]). Items are numbered
/// within their group and the dual forms get suffixes `a` and `b`.
const CATALOG: &[(&str, &[(&str, &str)])] = &[
    (
        "negation",
        &[
            ("x & x = ~~x", "x | x = !!x"),
            ("(x & y) & (x & y) = x & y", "(x | y) | (x | y) = x | y"),
            ("~(x & vee(y, z)) = ~(x & y) & ~(x & z)", "!(x | wedge(y, z)) = !(x | y) | !(x | z)"),
            ("vee(x, x) = x & x", "wedge(x, x) = x | x"),
            ("~~~x = ~x", "!!!x = !x"),
            ("~x & ~x = ~x", "!x | !x = !x"),
        ],
    ),
    (
        "recovered-axioms",
        &[
            ("(x & x) & y = x & y", "(x | x) | y = x | y"),
            ("~T = F", "!F = T"),
            ("~F = T & T", "!T = F | F"),
        ],
    ),
    (
        "de-morgan",
        &[
            ("~(x & y) = vee(~x, ~y)", "!(x | y) = wedge(!x, !y)"),
            ("~vee(x, y) = ~x & ~y", "!wedge(x, y) = !x | !y"),
        ],
    ),
    (
        "bounds",
        &[
            ("x & T = x & x", "x | F = x | x"),
            ("~x & T = ~x", "!x | F = !x"),
            ("(x & y) & T = x & y", "(x | y) | F = x | y"),
            ("~x & ~F = ~x", "!x | !T = !x"),
            ("vee(x, F) = x & x", "wedge(x, T) = x | x"),
            ("vee(~x, F) = ~x", "wedge(!x, T) = !x"),
            ("vee(x & y, F) = x & y", "wedge(x | y, T) = x | y"),
            ("x & vee(y, T) = x & vee(x, y)", "x | wedge(y, F) = x | wedge(x, y)"),
            ("F & F = F", "T | T = T"),
            ("(F & ~x) & x = F", "(T | !x) | x = T"),
            ("(F & x) & ~x = F", "(T | x) | !x = T"),
            ("F & !x = F", "T | ~x = T"),
            ("F & ~!x = F", "T | !~x = T"),
        ],
    ),
    (
        "bound-shift",
        &[
            ("x | (F | y) = x | y", "x & (T & y) = x & y"),
            ("(F & x) | y = F | y", "(T | x) & y = T & y"),
            ("(F & x) & (F | y) = F & x", "(T | x) | (T & y) = T | x"),
            ("(F & x) & ~(x & ~y) = (F & x) & y", "(T | x) | !(x | !y) = (T | x) | y"),
        ],
    ),
    (
        "bound-absorb",
        &[
            ("F & ~(~x & !y) = F & x", "T | !(!x | ~y) = T | x"),
            ("x & ~(~x & ~y) = x & ~(~y & ~T)", "x | !(!x | !y) = x | !(!y | !F)"),
            ("x & ~(~y & ~(x | z)) = x & ~(F & ~y)", "x | !(!y | !(x & z)) = x | !(T | !y)"),
            ("F & x = F", "T | x = T"),
        ],
    ),
    ("vee-absorption", &[("x & vee(x, y) = x & x", "x | wedge(x, y) = x | x")]),
    (
        "meet-negation",
        &[
            ("x & ~(x & y) = x & ~y", "x | !(x | y) = x | !y"),
            ("x & ~(x & ~y) = x & y", "x | !(!y | x) = x | y"),
            ("x & ~(~x & y) = x & x", "x | !(!x | y) = x | x"),
            ("~x & ~(x & y) = ~x", "!x | !(x | y) = !x"),
            ("~x & ~((x & y) & z) = ~x", "!x | !((x | y) | z) = !x"),
            ("x & (y & ~x) = F", "x | (y | !x) = T"),
        ],
    ),
    (
        "association-steps",
        &[
            ("((x & y) & z) & ~x = F", "((x | y) | z) | !x = T"),
            ("~(x & y) & ~(x & ~y) = ~x", "!(x | y) | !(!y | x) = !x"),
            ("~(~(x & (y & z)) & z) & z = x & (y & z)", "!(!(x | (y | z)) | z) | z = x | (y | z)"),
        ],
    ),
    (
        "association-distribution",
        &[
            ("~(x & ~(y & z)) = ~(x & ~y) & ~(x & ~z)", "!(x | !(y | z)) = !(x | !y) | !(x | !z)"),
            ("x & (~(x & ~y) & ~(x & ~z)) = (y & x) & z", "x | (!(x | !y) | !(x | !z)) = (y | x) | z"),
        ],
    ),
    ("associativity", &[("x & (y & z) = (x & y) & z", "x | (y | z) = (x | y) | z")]),
];

/// A named, ordered list of equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSuite {
    pub id: SuiteId,
    pub equations: Vec<Equation>,
}

impl AxiomSuite {
    pub fn equation(&self, id: &str) -> Option<&Equation> {
        self.equations.iter().find(|e| e.id == id)
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }
}

fn build(table: &[(&str, &str)]) -> Vec<Equation> {
    table
        .iter()
        .map(|(id, text)| Equation::parse(id, text).unwrap_or_else(|e| panic!("built-in identity {id}: {e}")))
        .collect()
}

pub fn suite(id: SuiteId) -> &'static AxiomSuite {
    static SUITES: OnceLock<Vec<AxiomSuite>> = OnceLock::new();
    let all = SUITES.get_or_init(|| {
        let dcore = build(DCORE13);
        let gdcore = dcore.iter().filter(|e| e.id != "3a" && e.id != "3b").cloned().collect();
        vec![
            AxiomSuite { id: SuiteId::Dba23, equations: build(DBA23) },
            AxiomSuite { id: SuiteId::Dcore13, equations: dcore },
            AxiomSuite { id: SuiteId::Gdcore11, equations: gdcore },
            AxiomSuite { id: SuiteId::Boolean, equations: build(BOOLEAN) },
        ]
    });
    &all[SuiteId::ALL.iter().position(|&s| s == id).expect("listed suite")]
}

/// Every identity of the derived catalog, ids of the form `group.<k>a` / `group.<k>b`.
pub fn identity_catalog() -> &'static [Equation] {
    static CAT: OnceLock<Vec<Equation>> = OnceLock::new();
    CAT.get_or_init(|| {
        let mut out = Vec::new();
        for (group, items) in CATALOG {
            for (k, (a, b)) in items.iter().enumerate() {
                for (side, text) in [("a", a), ("b", b)] {
                    let id = format!("{group}.{}{side}", k + 1);
                    out.push(Equation::parse(&id, text).unwrap_or_else(|e| panic!("catalog {id}: {e}")));
                }
            }
        }
        out
    })
}

/// A variable assignment, ordered by variable name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment(pub Vec<(String, Elem)>);

impl Assignment {
    pub fn to_env(&self) -> BTreeMap<String, Elem> {
        self.0.iter().cloned().collect()
    }

    /// `x=b y=b`, using the algebra's element names.
    pub fn display(&self, alg: &FiniteAlgebra) -> String {
        if self.0.is_empty() {
            return "(no variables)".to_string();
        }
        self.0.iter().map(|(v, e)| format!("{v}={}", alg.name(*e))).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Assignment),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

/// Check an equation under every assignment, first variable most significant.
/// The first failing assignment in that order is returned as the witness.
pub fn satisfies_equation(alg: &FiniteAlgebra, eq: &Equation) -> Verdict {
    let c = eq.compile();
    let tables = alg.tables();
    let n = alg.size();
    let k = c.vars.len();
    let mut env = vec![0; k];
    let mut stack = Vec::with_capacity(16);
    loop {
        if !c.check(&tables, &env, &mut stack).expect("total tables") {
            return Verdict::Fails(Assignment(c.vars.iter().cloned().zip(env.iter().copied()).collect()));
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Verdict::Holds;
            }
            i -= 1;
            env[i] += 1;
            if env[i] < n {
                break;
            }
            env[i] = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: SuiteId,
    pub verdicts: Vec<(String, Verdict)>,
}

impl SuiteReport {
    pub fn passes(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| v.holds())
    }

    pub fn failures(&self) -> impl Iterator<Item = (&str, &Assignment)> {
        self.verdicts.iter().filter_map(|(id, v)| match v {
            Verdict::Fails(w) => Some((id.as_str(), w)),
            Verdict::Holds => None,
        })
    }

    pub fn failed_ids(&self) -> Vec<&str> {
        self.failures().map(|(id, _)| id).collect()
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.failures().next().map(|(id, _)| id)
    }
}

pub fn check_suite(alg: &FiniteAlgebra, id: SuiteId) -> SuiteReport {
    check_equations(alg, id, &suite(id).equations)
}

fn check_equations(alg: &FiniteAlgebra, id: SuiteId, eqs: &[Equation]) -> SuiteReport {
    SuiteReport {
        suite: id,
        verdicts: eqs.iter().map(|e| (e.id.clone(), satisfies_equation(alg, e))).collect(),
    }
}

/// Quick pass/fail test of a whole suite, stopping at the first violation.
pub fn passes_suite(alg: &FiniteAlgebra, id: SuiteId) -> bool {
    suite(id).equations.iter().all(|e| satisfies_equation(alg, e).holds())
}

/// Failures of the derived-identity catalog as (identity id, witness).
pub fn check_identity_catalog(alg: &FiniteAlgebra) -> Vec<(String, Assignment)> {
    identity_catalog()
        .iter()
        .filter_map(|e| match satisfies_equation(alg, e) {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some((e.id.clone(), w)),
        })
        .collect()
}
