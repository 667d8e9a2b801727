use std::collections::BTreeMap;

use thiserror::Error;

use super::syntax::{Hypersequent, Sequent, System};
use crate::algebra::{classify, Elem, FiniteAlgebra};
use crate::fca::{protoconcept_algebra, FormalContext};
use crate::fixtures::builtin_fixtures;
use crate::search::{enumerate_algebras, SearchError, SearchSpec};
use crate::term::{eval_term, EvalError, Program, Sort, Term};
use crate::axioms::SuiteId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("{system} is interpreted in {needs} algebras; this one is not")]
    WrongClass { system: System, needs: &'static str },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Whether value(lhs) ⊑ value(rhs) under `env`.
pub fn eval_sequent(alg: &FiniteAlgebra, s: &Sequent, env: &BTreeMap<String, Elem>) -> Result<bool, EvalError> {
    Ok(alg.below(eval_term(alg, &s.lhs, env)?, eval_term(alg, &s.rhs, env)?))
}

/// L needs a contextual double Boolean algebra, HL a pure one.
pub fn check_class(alg: &FiniteAlgebra, system: System) -> Result<(), SemanticsError> {
    let r = classify(alg);
    match system {
        System::L if !r.is_contextual => Err(SemanticsError::WrongClass { system, needs: "contextual double Boolean" }),
        System::HL if !(r.is_dba && r.is_pure) => Err(SemanticsError::WrongClass { system, needs: "pure double Boolean" }),
        _ => Ok(()),
    }
}

fn variables(h: &Hypersequent) -> BTreeMap<String, Sort> {
    let mut vars = BTreeMap::new();
    for s in h.components() {
        vars.extend(s.lhs.sorted_variables());
        vars.extend(s.rhs.sorted_variables());
    }
    vars
}

/// Object variables range over D⊓, property variables over D⊔ and
/// unsorted ones over the whole algebra.
fn range(alg: &FiniteAlgebra, sort: Sort) -> Vec<Elem> {
    match sort {
        Sort::Object => alg.meet_idempotents(),
        Sort::Property => alg.join_idempotents(),
        Sort::Generic => alg.elements().collect(),
    }
}

/// Compiled form of a hypersequent: one (lhs, rhs) program pair per component.
struct Compiled {
    names: Vec<String>,
    ranges: Vec<Vec<Elem>>,
    parts: Vec<(Program, Program)>,
}

impl Compiled {
    fn new(alg: &FiniteAlgebra, sequents: &[&Sequent], vars: BTreeMap<String, Sort>) -> Compiled {
        let names: Vec<String> = vars.keys().cloned().collect();
        let ranges = vars.values().map(|&s| range(alg, s)).collect();
        let prog = |t: &Term| Program::for_term(t, &names).expect("all variables collected");
        let parts = sequents.iter().map(|s| (prog(&s.lhs), prog(&s.rhs))).collect();
        Compiled { names, ranges, parts }
    }

    /// Visit every environment until `f` returns false; returns that env.
    fn find(&self, alg: &FiniteAlgebra, mut f: impl FnMut(&[bool]) -> bool) -> Option<BTreeMap<String, Elem>> {
        if self.ranges.iter().any(Vec::is_empty) {
            return None;
        }
        let tables = alg.tables();
        let mut stack = Vec::new();
        let mut pos = vec![0usize; self.ranges.len()];
        let mut env: Vec<Elem> = self.ranges.iter().map(|r| r[0]).collect();
        let mut sat = vec![false; self.parts.len()];
        loop {
            for (k, (l, r)) in self.parts.iter().enumerate() {
                sat[k] = alg.below(l.eval(&tables, &env, &mut stack), r.eval(&tables, &env, &mut stack));
            }
            if !f(&sat) {
                return Some(self.names.iter().cloned().zip(env.iter().copied()).collect());
            }
            let mut i = 0;
            loop {
                if i == pos.len() {
                    return None;
                }
                pos[i] += 1;
                if pos[i] < self.ranges[i].len() {
                    env[i] = self.ranges[i][pos[i]];
                    break;
                }
                pos[i] = 0;
                env[i] = self.ranges[i][0];
                i += 1;
            }
        }
    }
}

/// First environment (in odometer order over ascending variable names)
/// satisfying no component of `h`. Does not check the algebra's class.
pub fn falsifying_env(alg: &FiniteAlgebra, h: &Hypersequent) -> Option<BTreeMap<String, Elem>> {
    let comps: Vec<&Sequent> = h.components().iter().collect();
    Compiled::new(alg, &comps, variables(h)).find(alg, |sat| sat.iter().any(|&b| b))
}

/// `h` is true when every environment satisfies at least one component.
pub fn is_true_in(alg: &FiniteAlgebra, h: &Hypersequent, system: System) -> Result<bool, SemanticsError> {
    check_class(alg, system)?;
    Ok(falsifying_env(alg, h).is_none())
}

/// An environment in which every premise is satisfied and the conclusion is
/// not. None means the rule instance preserves satisfaction pointwise.
pub fn unsound_env(alg: &FiniteAlgebra, premises: &[Sequent], conclusion: &Sequent) -> Option<BTreeMap<String, Elem>> {
    let mut vars = BTreeMap::new();
    for s in premises.iter().chain([conclusion]) {
        vars.extend(s.lhs.sorted_variables());
        vars.extend(s.rhs.sorted_variables());
    }
    let seqs: Vec<&Sequent> = premises.iter().chain([conclusion]).collect();
    let last = premises.len();
    Compiled::new(alg, &seqs, vars).find(alg, |sat| !sat[..last].iter().all(|&b| b) || sat[last])
}

#[derive(Debug, Clone)]
pub struct Countermodel {
    pub model: String,
    pub algebra: FiniteAlgebra,
    pub env: BTreeMap<String, Elem>,
}

impl Countermodel {
    pub fn describe_env(&self) -> String {
        if self.env.is_empty() {
            return "(no variables)".to_string();
        }
        self.env.iter().map(|(v, &e)| format!("{v}={}", self.algebra.name(e))).collect::<Vec<_>>().join(" ")
    }
}

/// The first model of the right class, in the given order, with an
/// environment falsifying `goal`.
pub fn find_countermodel(goal: &Hypersequent, system: System, models: &[(String, FiniteAlgebra)]) -> Option<Countermodel> {
    models.iter().filter(|(_, alg)| check_class(alg, system).is_ok()).find_map(|(name, alg)| {
        falsifying_env(alg, goal).map(|env| Countermodel { model: name.clone(), algebra: alg.clone(), env })
    })
}

/// Where countermodels are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelSource {
    Fixtures,
    /// Protoconcept algebras of every context with at most this many
    /// objects and attributes.
    Contexts { max_side: usize },
    /// Every double Boolean algebra on this many elements.
    Enumerated { size: usize },
}

pub fn models_from(source: ModelSource) -> Result<Vec<(String, FiniteAlgebra)>, SearchError> {
    match source {
        ModelSource::Fixtures => Ok(builtin_fixtures().into_iter().map(|(n, a)| (n.to_string(), a)).collect()),
        ModelSource::Contexts { max_side } => {
            let mut out = Vec::new();
            for g in 1..=max_side {
                for m in 0..=max_side {
                    for (k, ctx) in FormalContext::all_of_shape(g, m).enumerate() {
                        out.push((format!("proto-{g}x{m}-{k}"), protoconcept_algebra(&ctx).algebra));
                    }
                }
            }
            Ok(out)
        }
        ModelSource::Enumerated { size } => {
            let mut out = Vec::new();
            enumerate_algebras(&SearchSpec::new(size, Some(SuiteId::Dba23)), |alg| {
                out.push((format!("dba-{size}-{}", out.len()), alg.clone()));
            })?;
            Ok(out)
        }
    }
}
