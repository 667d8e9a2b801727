//! Small named algebras used throughout the tests, examples and CLI.

use crate::algebra::FiniteAlgebra;

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// The one-element algebra.
pub fn singleton() -> FiniteAlgebra {
    FiniteAlgebra::new(names(&["o"]), vec![0], vec![0], vec![0], vec![0], 0, 0).expect("valid tables")
}

/// Glued sum of two 2-element Boolean algebras: the chain `bot < m < top`
/// where `m` is both the top of the lower block and the bottom of the upper one.
pub fn glued_chain() -> FiniteAlgebra {
    FiniteAlgebra::new(
        names(&["bot", "m", "top"]),
        vec![0, 0, 0, 0, 1, 1, 0, 1, 1],
        vec![1, 1, 2, 1, 1, 2, 2, 2, 2],
        vec![1, 0, 0],
        vec![2, 2, 1],
        2,
        0,
    )
    .expect("valid tables")
}

/// Two elements `a = ⊥`, `b = ⊤`: lattice meet and join, constant negations.
/// Satisfies every D-core axiom except the double-negation pair.
pub fn cex_5ab() -> FiniteAlgebra {
    FiniteAlgebra::new(names(&["a", "b"]), vec![0, 0, 0, 1], vec![0, 1, 1, 1], vec![0, 0], vec![1, 1], 1, 0)
        .expect("valid tables")
}

/// Three elements satisfying the D-core axioms without the absorption pair.
/// The constants are forced by `x⊓¬x = ⊥` and `x⊔⌟x = ⊤`: ⊥ = a, ⊤ = b.
pub fn gdcore_not_dcore() -> FiniteAlgebra {
    FiniteAlgebra::new(
        names(&["a", "b", "c"]),
        vec![0, 2, 1, 2, 1, 0, 1, 0, 2],
        vec![2, 1, 2, 1, 1, 1, 2, 1, 2],
        vec![0, 2, 1],
        vec![1, 2, 1],
        1,
        0,
    )
    .expect("valid tables")
}

/// Two elements where every operation is constantly `m`. A double Boolean
/// algebra whose quasi-order identifies `m` and `z`, so it is not contextual.
pub fn collapsed_pair() -> FiniteAlgebra {
    FiniteAlgebra::new(names(&["m", "z"]), vec![0; 4], vec![0; 4], vec![0; 2], vec![0; 2], 0, 0)
        .expect("valid tables")
}

/// The four-element Boolean algebra with ⌟ = ¬.
pub fn boolean_square() -> FiniteAlgebra {
    let meet = |x: usize, y: usize| x & y;
    let join = |x: usize, y: usize| x | y;
    FiniteAlgebra::from_fn(names(&["0", "a", "b", "1"]), meet, join, |x| 3 - x, |x| 3 - x, 3, 0)
        .expect("valid tables")
}

/// All built-in fixtures in a fixed order.
pub fn builtin_fixtures() -> Vec<(&'static str, FiniteAlgebra)> {
    vec![
        ("singleton", singleton()),
        ("glued-chain", glued_chain()),
        ("cex-5ab", cex_5ab()),
        ("gdcore-not-dcore", gdcore_not_dcore()),
        ("collapsed-pair", collapsed_pair()),
        ("boolean-square", boolean_square()),
    ]
}

pub fn fixture(name: &str) -> Option<FiniteAlgebra> {
    builtin_fixtures().into_iter().find(|(n, _)| *n == name).map(|(_, a)| a)
}
