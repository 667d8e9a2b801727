//! Finite algebras of type (2,2,1,1,0,0), the quasi-order ⊑, the two Boolean
//! parts and the class predicates (contextual, pure, trivial, fully contextual).

use std::collections::BTreeSet;

use thiserror::Error;

use crate::axioms::{self, Assignment, SuiteId};
use crate::term::Tables;

/// An element is its index in the universe.
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("the universe must contain at least one element")]
    Empty,
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("element name `{0}` is not a single whitespace-free token")]
    BadName(String),
    #[error("{table} table has {found} entries, expected {expected}")]
    TableSize { table: &'static str, expected: usize, found: usize },
    #[error("{table} entry {value} is outside a universe of size {size}")]
    OutOfRange { table: &'static str, value: usize, size: usize },
    #[error("not a double Boolean algebra: axiom {0} fails")]
    NotDba(String),
    #[error("subset is not closed under {0}")]
    NotClosed(&'static str),
}

/// A finite algebra with total operation tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    names: Vec<String>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    neg: Vec<Elem>,
    opp: Vec<Elem>,
    top: Elem,
    bot: Elem,
}

impl FiniteAlgebra {
    /// Build from row-major binary tables (`meet[x * n + y]`) and unary maps.
    pub fn new(
        names: Vec<String>,
        meet: Vec<Elem>,
        join: Vec<Elem>,
        neg: Vec<Elem>,
        opp: Vec<Elem>,
        top: Elem,
        bot: Elem,
    ) -> Result<FiniteAlgebra, AlgebraError> {
        let n = names.len();
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '#') {
                return Err(AlgebraError::BadName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(AlgebraError::DuplicateName(name.clone()));
            }
        }
        for (table, values, expected) in [
            ("meet", &meet, n * n),
            ("join", &join, n * n),
            ("neg", &neg, n),
            ("opp", &opp, n),
        ] {
            if values.len() != expected {
                return Err(AlgebraError::TableSize { table, expected, found: values.len() });
            }
            if let Some(&value) = values.iter().find(|&&v| v >= n) {
                return Err(AlgebraError::OutOfRange { table, value, size: n });
            }
        }
        for (table, value) in [("top", top), ("bot", bot)] {
            if value >= n {
                return Err(AlgebraError::OutOfRange { table, value, size: n });
            }
        }
        Ok(FiniteAlgebra { names, meet, join, neg, opp, top, bot })
    }

    /// Build by tabulating operation closures.
    pub fn from_fn(
        names: Vec<String>,
        meet: impl Fn(Elem, Elem) -> Elem,
        join: impl Fn(Elem, Elem) -> Elem,
        neg: impl Fn(Elem) -> Elem,
        opp: impl Fn(Elem) -> Elem,
        top: Elem,
        bot: Elem,
    ) -> Result<FiniteAlgebra, AlgebraError> {
        let n = names.len();
        let cells = |f: &dyn Fn(Elem, Elem) -> Elem| (0..n * n).map(|i| f(i / n, i % n)).collect();
        FiniteAlgebra::new(
            names,
            cells(&meet),
            cells(&join),
            (0..n).map(&neg).collect(),
            (0..n).map(&opp).collect(),
            top,
            bot,
        )
    }

    /// Names `0, 1, ..., n-1`.
    pub fn index_names(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.size() + y]
    }

    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.size() + y]
    }

    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x]
    }

    pub fn opp(&self, x: Elem) -> Elem {
        self.opp[x]
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn bot(&self) -> Elem {
        self.bot
    }

    /// x ∨ y = ¬(¬x ⊓ ¬y)
    pub fn vee(&self, x: Elem, y: Elem) -> Elem {
        self.neg(self.meet(self.neg(x), self.neg(y)))
    }

    /// x ∧ y = ⌟(⌟x ⊔ ⌟y)
    pub fn wedge(&self, x: Elem, y: Elem) -> Elem {
        self.opp(self.join(self.opp(x), self.opp(y)))
    }

    /// x⊓x
    pub fn project_meet(&self, x: Elem) -> Elem {
        self.meet(x, x)
    }

    /// x⊔x
    pub fn project_join(&self, x: Elem) -> Elem {
        self.join(x, x)
    }

    /// x ⊑ y iff x⊓y = x⊓x and x⊔y = y⊔y.
    pub fn below(&self, x: Elem, y: Elem) -> bool {
        self.meet(x, y) == self.meet(x, x) && self.join(x, y) == self.join(y, y)
    }

    pub fn meet_table(&self) -> &[Elem] {
        &self.meet
    }

    pub fn join_table(&self) -> &[Elem] {
        &self.join
    }

    pub fn neg_map(&self) -> &[Elem] {
        &self.neg
    }

    pub fn opp_map(&self) -> &[Elem] {
        &self.opp
    }

    pub fn tables(&self) -> Tables<'_> {
        Tables {
            n: self.size(),
            top: self.top,
            bot: self.bot,
            neg: &self.neg,
            opp: &self.opp,
            meet: &self.meet,
            join: &self.join,
        }
    }

    /// D_⊓ = { x : x⊓x = x }, ascending.
    pub fn meet_idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.project_meet(x) == x).collect()
    }

    /// D_⊔ = { x : x⊔x = x }, ascending.
    pub fn join_idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.project_join(x) == x).collect()
    }

    pub fn quasi_order(&self) -> QuasiOrder {
        QuasiOrder::from_fn(self.size(), |x, y| self.below(x, y))
    }

    /// Restrict to a subset closed under all six operations. Elements keep
    /// their names and relative order; the second component maps new indices
    /// to old ones.
    pub fn subalgebra(&self, elements: &[Elem]) -> Result<(FiniteAlgebra, Vec<Elem>), AlgebraError> {
        let keep: Vec<Elem> = elements.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if keep.is_empty() {
            return Err(AlgebraError::Empty);
        }
        let mut index = vec![usize::MAX; self.size()];
        for (i, &x) in keep.iter().enumerate() {
            index[x] = i;
        }
        let map = |v: Elem, op: &'static str| match index[v] {
            usize::MAX => Err(AlgebraError::NotClosed(op)),
            i => Ok(i),
        };
        let mut meet = Vec::with_capacity(keep.len() * keep.len());
        let mut join = Vec::with_capacity(keep.len() * keep.len());
        for &x in &keep {
            for &y in &keep {
                meet.push(map(self.meet(x, y), "meet")?);
                join.push(map(self.join(x, y), "join")?);
            }
        }
        let neg = keep.iter().map(|&x| map(self.neg(x), "neg")).collect::<Result<_, _>>()?;
        let opp = keep.iter().map(|&x| map(self.opp(x), "opp")).collect::<Result<_, _>>()?;
        let top = map(self.top, "top")?;
        let bot = map(self.bot, "bot")?;
        let names = keep.iter().map(|&x| self.names[x].clone()).collect();
        Ok((FiniteAlgebra::new(names, meet, join, neg, opp, top, bot)?, keep))
    }

    /// The Boolean algebra on D_⊓ (meet side) or D_⊔ (join side), returned as
    /// a finite algebra whose ⊓, ⊔, ¬, ⊥, ⊤ are the designated Boolean
    /// operations. The complement is duplicated into ⌟, which makes the
    /// result a double Boolean algebra as well.
    ///
    /// Meet side: (D_⊓; ⊓, ∨, ¬, ⊥, ⊤⊓⊤). Join side: (D_⊔; ∧, ⊔, ⌟, ⊥⊔⊥, ⊤).
    pub fn boolean_part(&self, side: Side) -> Result<FiniteAlgebra, AlgebraError> {
        if let Some(id) = axioms::check_suite(self, SuiteId::Dba23).first_failure() {
            return Err(AlgebraError::NotDba(id.to_string()));
        }
        let carrier = match side {
            Side::Meet => self.meet_idempotents(),
            Side::Join => self.join_idempotents(),
        };
        let pos = |v: Elem| carrier.iter().position(|&c| c == v).ok_or(AlgebraError::NotClosed("boolean part"));
        let k = carrier.len();
        let mut meet = Vec::with_capacity(k * k);
        let mut join = Vec::with_capacity(k * k);
        for &x in &carrier {
            for &y in &carrier {
                let (m, j) = match side {
                    Side::Meet => (self.meet(x, y), self.vee(x, y)),
                    Side::Join => (self.wedge(x, y), self.join(x, y)),
                };
                meet.push(pos(m)?);
                join.push(pos(j)?);
            }
        }
        let complement: Vec<Elem> = carrier
            .iter()
            .map(|&x| pos(if side == Side::Meet { self.neg(x) } else { self.opp(x) }))
            .collect::<Result<_, _>>()?;
        let (top, bot) = match side {
            Side::Meet => (self.project_meet(self.top), self.bot),
            Side::Join => (self.top, self.project_join(self.bot)),
        };
        let names = carrier.iter().map(|&x| self.names[x].clone()).collect();
        FiniteAlgebra::new(names, meet, join, complement.clone(), complement, pos(top)?, pos(bot)?)
    }

    /// True when `map` (indexed by elements of `self`) is a bijection onto
    /// `other` commuting with all six operations.
    pub fn is_isomorphism(&self, other: &FiniteAlgebra, map: &[Elem]) -> bool {
        if map.len() != self.size() || other.size() != self.size() {
            return false;
        }
        let image: BTreeSet<Elem> = map.iter().copied().collect();
        image.len() == self.size() && self.is_homomorphism(other, map)
    }

    /// True when `map` commutes with all six operations.
    pub fn is_homomorphism(&self, other: &FiniteAlgebra, map: &[Elem]) -> bool {
        if map.len() != self.size() || map.iter().any(|&v| v >= other.size()) {
            return false;
        }
        if map[self.top] != other.top || map[self.bot] != other.bot {
            return false;
        }
        self.elements().all(|x| {
            map[self.neg(x)] == other.neg(map[x])
                && map[self.opp(x)] == other.opp(map[x])
                && self.elements().all(|y| {
                    map[self.meet(x, y)] == other.meet(map[x], map[y])
                        && map[self.join(x, y)] == other.join(map[x], map[y])
                })
        })
    }
}

/// Which Boolean part of a double Boolean algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Meet,
    Join,
}

/// A binary relation on a finite universe together with its order properties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiOrder {
    n: usize,
    rel: Vec<bool>,
    pub reflexive: bool,
    pub transitive: bool,
    pub antisymmetric: bool,
}

impl QuasiOrder {
    pub fn from_fn(n: usize, f: impl Fn(Elem, Elem) -> bool) -> QuasiOrder {
        let rel: Vec<bool> = (0..n * n).map(|i| f(i / n, i % n)).collect();
        let at = |x: usize, y: usize| rel[x * n + y];
        let reflexive = (0..n).all(|x| at(x, x));
        let transitive = (0..n).all(|x| (0..n).all(|y| !at(x, y) || (0..n).all(|z| !at(y, z) || at(x, z))));
        let antisymmetric = (0..n).all(|x| (0..n).all(|y| x == y || !(at(x, y) && at(y, x))));
        QuasiOrder { n, rel, reflexive, transitive, antisymmetric }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn holds(&self, x: Elem, y: Elem) -> bool {
        self.rel[x * self.n + y]
    }
}

/// A failed axiom together with the first assignment that violates it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub suite: SuiteId,
    pub axiom: String,
    pub witness: Assignment,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub is_dba: bool,
    pub is_dcore: bool,
    pub is_generalized_dcore: bool,
    pub is_contextual: bool,
    /// Every element is ⊓- or ⊔-idempotent (a raw table condition).
    pub is_pure: bool,
    /// ⊤⊓⊤ = ⊥⊔⊥ (a raw table condition).
    pub is_trivial: bool,
    pub is_fully_contextual: bool,
    /// Failures of the 23-axiom and 13-axiom suites, in suite order.
    pub failures: Vec<Failure>,
    pub meet_idempotents: Vec<Elem>,
    pub join_idempotents: Vec<Elem>,
}

pub fn classify(alg: &FiniteAlgebra) -> ClassificationReport {
    let dba = axioms::check_suite(alg, SuiteId::Dba23);
    let dcore = axioms::check_suite(alg, SuiteId::Dcore13);
    let gdcore = axioms::check_suite(alg, SuiteId::Gdcore11);
    let failures = [&dba, &dcore]
        .into_iter()
        .flat_map(|report| {
            report.failures().map(move |(axiom, witness)| Failure {
                suite: report.suite,
                axiom: axiom.to_string(),
                witness: witness.clone(),
            })
        })
        .collect();
    let is_dba = dba.passes();
    let order = alg.quasi_order();
    let is_contextual = is_dba && order.antisymmetric;
    ClassificationReport {
        is_dba,
        is_dcore: dcore.passes(),
        is_generalized_dcore: gdcore.passes(),
        is_contextual,
        is_pure: alg.elements().all(|x| alg.project_meet(x) == x || alg.project_join(x) == x),
        is_trivial: alg.project_meet(alg.top()) == alg.project_join(alg.bot()),
        is_fully_contextual: is_contextual && has_unique_lifts(alg),
        failures,
        meet_idempotents: alg.meet_idempotents(),
        join_idempotents: alg.join_idempotents(),
    }
}

/// For each a ∈ D_⊓ and b ∈ D_⊔ with a⊔a = b⊓b there is exactly one z with
/// z⊓z = a and z⊔z = b.
pub fn has_unique_lifts(alg: &FiniteAlgebra) -> bool {
    let dm = alg.meet_idempotents();
    let dj = alg.join_idempotents();
    dm.iter().all(|&a| {
        dj.iter().all(|&b| {
            alg.project_join(a) != alg.project_meet(b)
                || alg.elements().filter(|&z| alg.project_meet(z) == a && alg.project_join(z) == b).count() == 1
        })
    })
}
