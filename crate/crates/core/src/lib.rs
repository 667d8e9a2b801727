//! Finite-model toolkit for double Boolean algebras.

pub mod algebra;
pub mod axioms;
pub mod cli;
pub mod constructions;
pub mod fca;
pub mod fixtures;
pub mod format;
pub mod logic;
pub mod representation;
pub mod search;
pub mod term;

pub use algebra::{classify, ClassificationReport, Elem, FiniteAlgebra};
pub use axioms::{check_suite, SuiteId};
pub use term::{parse_term, Equation, Term};
