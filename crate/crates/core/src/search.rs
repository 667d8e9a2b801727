//! Exhaustive enumeration of small algebras with equational pruning.
//!
//! Table cells are filled in a fixed order: ⊤, ⊥, the ¬ map, the ⌟ map, the
//! ⊓ table and the ⊔ table (row-major), each cell trying values in ascending
//! order. Every ground instance of a required equation watches the first
//! unfilled cell its evaluation runs into; when that cell is assigned the
//! instance is re-evaluated and either fails (pruning the subtree), passes,
//! or moves on to watch a later cell.

use thiserror::Error;

use crate::algebra::{Elem, FiniteAlgebra};
use crate::axioms::{satisfies_equation, suite, SuiteId};
use crate::term::{CompiledEquation, Equation, Tables, UNSET};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub size: usize,
    /// Suite the models must satisfy, apart from the `must_fail` axioms.
    pub require: Option<SuiteId>,
    /// Axiom ids of `require` that every model must violate.
    pub must_fail: Vec<String>,
    pub fixed_top: Option<Elem>,
    pub fixed_bot: Option<Elem>,
    pub max_models: Option<usize>,
    /// Limit on complete tables examined.
    pub max_candidates: Option<u64>,
    /// Limit on partial assignments explored.
    pub max_nodes: Option<u64>,
}

impl SearchSpec {
    pub fn new(size: usize, require: Option<SuiteId>) -> SearchSpec {
        SearchSpec {
            size,
            require,
            must_fail: Vec::new(),
            fixed_top: None,
            fixed_bot: None,
            max_models: None,
            max_candidates: None,
            max_nodes: None,
        }
    }

    pub fn must_fail(mut self, ids: &[&str]) -> SearchSpec {
        self.must_fail = ids.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn max_models(mut self, k: usize) -> SearchSpec {
        self.max_models = Some(k);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSummary {
    /// Complete tables examined.
    pub candidates: u64,
    /// Partial assignments explored (one per cell assignment).
    pub nodes: u64,
    pub models: usize,
    /// False when a budget stopped the search early.
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("universe size must be at least 1")]
    EmptyUniverse,
    #[error("must-fail axiom `{0}` is not in the required suite")]
    UnknownAxiom(String),
    #[error("must-fail axioms need a required suite")]
    NoSuite,
    #[error("fixed constant {0} is outside the universe")]
    BadConstant(Elem),
}

/// Element names `a, b, c, …` (or `e0, e1, …` beyond 26 elements).
pub fn default_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("e{i}")).collect()
    }
}

fn split_equations(spec: &SearchSpec) -> Result<(Vec<Equation>, Vec<Equation>), SearchError> {
    if spec.size == 0 {
        return Err(SearchError::EmptyUniverse);
    }
    for c in [spec.fixed_top, spec.fixed_bot].into_iter().flatten() {
        if c >= spec.size {
            return Err(SearchError::BadConstant(c));
        }
    }
    let Some(id) = spec.require else {
        return if spec.must_fail.is_empty() { Ok((Vec::new(), Vec::new())) } else { Err(SearchError::NoSuite) };
    };
    let eqs = &suite(id).equations;
    if let Some(bad) = spec.must_fail.iter().find(|m| !eqs.iter().any(|e| &e.id == *m)) {
        return Err(SearchError::UnknownAxiom(bad.clone()));
    }
    Ok(eqs.iter().cloned().partition(|e| !spec.must_fail.contains(&e.id)))
}

fn algebra_from_cells(n: usize, cells: &[Elem]) -> FiniteAlgebra {
    let (neg, rest) = cells[2..].split_at(n);
    let (opp, rest) = rest.split_at(n);
    let (meet, join) = rest.split_at(n * n);
    FiniteAlgebra::new(default_names(n), meet.to_vec(), join.to_vec(), neg.to_vec(), opp.to_vec(), cells[0], cells[1])
        .expect("complete tables")
}

fn tables_of(n: usize, cells: &[Elem]) -> Tables<'_> {
    let (neg, rest) = cells[2..].split_at(n);
    let (opp, rest) = rest.split_at(n);
    let (meet, join) = rest.split_at(n * n);
    Tables { n, top: cells[0], bot: cells[1], neg, opp, meet, join }
}

struct Instance {
    eq: usize,
    env: Vec<Elem>,
}

struct Search<'a, V: FnMut(&FiniteAlgebra)> {
    n: usize,
    spec: &'a SearchSpec,
    required: Vec<CompiledEquation>,
    must_fail: Vec<Equation>,
    instances: Vec<Instance>,
    cells: Vec<Elem>,
    watchers: Vec<Vec<usize>>,
    trail: Vec<(usize, usize)>,
    stack: Vec<Elem>,
    summary: SearchSummary,
    visitor: V,
}

impl<V: FnMut(&FiniteAlgebra)> Search<'_, V> {
    fn out_of_budget(&self) -> bool {
        self.spec.max_models.is_some_and(|m| self.summary.models >= m)
            || self.spec.max_candidates.is_some_and(|m| self.summary.candidates >= m)
            || self.spec.max_nodes.is_some_and(|m| self.summary.nodes >= m)
    }

    fn eval(&mut self, inst: usize) -> Result<bool, usize> {
        let i = &self.instances[inst];
        let t = tables_of(self.n, &self.cells);
        self.required[i.eq].check(&t, &i.env, &mut self.stack)
    }

    /// Re-evaluate the instances watching `cell`. False on a violated instance.
    fn propagate(&mut self, cell: usize) -> bool {
        let mut list = std::mem::take(&mut self.watchers[cell]);
        let mut ok = true;
        let mut i = 0;
        while i < list.len() {
            match self.eval(list[i]) {
                Err(next) => {
                    self.watchers[next].push(list[i]);
                    self.trail.push((list[i], next));
                    list.swap_remove(i);
                }
                Ok(true) => i += 1,
                Ok(false) => {
                    ok = false;
                    break;
                }
            }
        }
        self.watchers[cell] = list;
        ok
    }

    fn undo(&mut self, cell: usize, mark: usize) {
        while self.trail.len() > mark {
            let (inst, at) = self.trail.pop().expect("above mark");
            let pos = self.watchers[at].iter().rposition(|&x| x == inst).expect("moved instance is watched");
            self.watchers[at].swap_remove(pos);
            self.watchers[cell].push(inst);
        }
    }

    fn leaf(&mut self) {
        self.summary.candidates += 1;
        let alg = algebra_from_cells(self.n, &self.cells);
        if self.must_fail.iter().all(|e| !satisfies_equation(&alg, e).holds()) {
            self.summary.models += 1;
            (self.visitor)(&alg);
        }
    }

    /// Returns false when a budget stopped the search.
    fn dfs(&mut self, cell: usize) -> bool {
        if cell == self.cells.len() {
            self.leaf();
            return true;
        }
        let fixed = match cell {
            0 => self.spec.fixed_top,
            1 => self.spec.fixed_bot,
            _ => None,
        };
        let values = match fixed {
            Some(v) => v..v + 1,
            None => 0..self.n,
        };
        for v in values {
            if self.out_of_budget() {
                return false;
            }
            self.summary.nodes += 1;
            self.cells[cell] = v;
            let mark = self.trail.len();
            let ok = self.propagate(cell);
            let go_on = !ok || self.dfs(cell + 1);
            self.undo(cell, mark);
            self.cells[cell] = UNSET;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Visit every algebra on `spec.size` elements that satisfies the required
/// axioms and violates each must-fail axiom, in cell order.
pub fn enumerate_algebras(spec: &SearchSpec, visitor: impl FnMut(&FiniteAlgebra)) -> Result<SearchSummary, SearchError> {
    let (required, must_fail) = split_equations(spec)?;
    let n = spec.size;
    let ncells = Tables::cell_count(n);
    let required: Vec<CompiledEquation> = required.iter().map(Equation::compile).collect();
    let mut instances = Vec::new();
    for (eq, c) in required.iter().enumerate() {
        let k = c.vars.len();
        for code in 0..n.pow(k as u32) {
            let mut env = vec![0; k];
            let mut rest = code;
            for slot in (0..k).rev() {
                env[slot] = rest % n;
                rest /= n;
            }
            instances.push(Instance { eq, env });
        }
    }
    let mut search = Search {
        n,
        spec,
        required,
        must_fail,
        instances,
        cells: vec![UNSET; ncells],
        watchers: vec![Vec::new(); ncells],
        trail: Vec::new(),
        stack: Vec::with_capacity(16),
        summary: SearchSummary { candidates: 0, nodes: 0, models: 0, complete: true },
        visitor,
    };
    for inst in 0..search.instances.len() {
        match search.eval(inst) {
            Err(cell) => search.watchers[cell].push(inst),
            Ok(true) => {}
            Ok(false) => return Ok(search.summary),
        }
    }
    search.summary.complete = search.dfs(0);
    Ok(search.summary)
}

/// Total number of algebras of the signature on `n` elements.
pub fn candidate_count(n: usize) -> u128 {
    (n as u128).pow(Tables::cell_count(n) as u32)
}

/// Call `f` on every algebra with `n` elements, in the same order as the
/// pruned search, without any pruning.
pub fn for_each_candidate(n: usize, mut f: impl FnMut(&FiniteAlgebra)) {
    assert!(n >= 1, "universe must be nonempty");
    let ncells = Tables::cell_count(n);
    let mut cells = vec![0; ncells];
    loop {
        f(&algebra_from_cells(n, &cells));
        let mut i = ncells;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            cells[i] += 1;
            if cells[i] < n {
                break;
            }
            cells[i] = 0;
        }
    }
}

/// Unpruned reference implementation of [`enumerate_algebras`] (no budgets).
pub fn naive_models(spec: &SearchSpec) -> Result<Vec<FiniteAlgebra>, SearchError> {
    let (required, must_fail) = split_equations(spec)?;
    let mut out = Vec::new();
    for_each_candidate(spec.size, |alg| {
        if spec.fixed_top.is_some_and(|t| t != alg.top()) || spec.fixed_bot.is_some_and(|b| b != alg.bot()) {
            return;
        }
        if required.iter().all(|e| satisfies_equation(alg, e).holds())
            && must_fail.iter().all(|e| !satisfies_equation(alg, e).holds())
        {
            out.push(alg.clone());
        }
    });
    Ok(out)
}
