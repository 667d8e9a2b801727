//! Double Boolean algebras assembled from pairs of Boolean algebras.
//!
//! Given Boolean algebras P and Q and maps `r: A → P`, `e: P → A`,
//! `r': A → Q`, `e': Q → A` with `r∘e = id` and `r'∘e' = id`, the carrier A
//! receives the operations
//!
//! ```text
//! x⊓y = e(r x ∧ r y)      ¬x = e(¬ r x)       ⊥ = e(⊥p)
//! x⊔y = e'(r'x ∨ r'y)     ⌟x = e'(¬ r'x)      ⊤ = e'(⊤q)
//! ```
//!
//! The result is a double Boolean algebra exactly when the conditions
//! reported by [`check_theorem_conditions`] hold.

use thiserror::Error;

use crate::algebra::{AlgebraError, Elem, FiniteAlgebra, QuasiOrder, Side};
use crate::axioms::{check_suite, SuiteId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("not a Boolean algebra: axiom `{0}` fails")]
    NotBoolean(String),
    #[error("map `{map}` has {found} entries, expected {expected}")]
    MapLength { map: &'static str, expected: usize, found: usize },
    #[error("map `{map}` sends {from} to {to}, outside a carrier of size {size}")]
    OutOfRange { map: &'static str, from: Elem, to: Elem, size: usize },
    #[error("retraction law fails: r(e({0})) != {0}")]
    NotRetraction(Elem),
    #[error("the two pairs act on carriers of size {0} and {1}")]
    CarrierMismatch(usize, usize),
    #[error("overlap is not injective: element {0} is identified twice")]
    NonInjectiveOverlap(String),
    #[error("overlap mentions element {0} outside its algebra")]
    OverlapOutOfRange(Elem),
    #[error("powerset bound exceeded: {k} atoms requested, at most {max} allowed")]
    BoundExceeded { k: usize, max: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A finite algebra validated against the Boolean suite, read through its
/// ⊓ (as ∧), ⊔ (as ∨), ¬, ⊥ and ⊤.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanAlgebraView {
    alg: FiniteAlgebra,
}

impl BooleanAlgebraView {
    pub fn new(alg: FiniteAlgebra) -> Result<BooleanAlgebraView, ConstructionError> {
        if let Some(id) = check_suite(&alg, SuiteId::Boolean).first_failure() {
            return Err(ConstructionError::NotBoolean(id.to_string()));
        }
        Ok(BooleanAlgebraView { alg })
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.alg
    }

    pub fn size(&self) -> usize {
        self.alg.size()
    }

    pub fn and(&self, x: Elem, y: Elem) -> Elem {
        self.alg.meet(x, y)
    }

    pub fn or(&self, x: Elem, y: Elem) -> Elem {
        self.alg.join(x, y)
    }

    pub fn not(&self, x: Elem) -> Elem {
        self.alg.neg(x)
    }

    pub fn top(&self) -> Elem {
        self.alg.top()
    }

    pub fn bot(&self) -> Elem {
        self.alg.bot()
    }

    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.and(x, y) == x
    }

    pub fn name(&self, x: Elem) -> &str {
        self.alg.name(x)
    }
}

pub const MAX_POWERSET_ATOMS: usize = 4;

/// The Boolean algebra of subsets of `k` atoms. Element `i` is the subset
/// whose bitmask is `i`; names spell out the atoms (`0` for the empty set).
pub fn powerset_boolean(k: usize) -> Result<BooleanAlgebraView, ConstructionError> {
    if k > MAX_POWERSET_ATOMS {
        return Err(ConstructionError::BoundExceeded { k, max: MAX_POWERSET_ATOMS });
    }
    let n = 1usize << k;
    let names = (0..n)
        .map(|mask| {
            if mask == 0 {
                "0".to_string()
            } else {
                (0..k).filter(|b| mask >> b & 1 == 1).map(|b| (b'a' + b as u8) as char).collect()
            }
        })
        .collect();
    let full = n - 1;
    let alg = FiniteAlgebra::from_fn(names, |x, y| x & y, |x, y| x | y, |x| full ^ x, |x| full ^ x, full, 0)?;
    BooleanAlgebraView::new(alg)
}

/// Maps `r: A → target` and `e: target → A` with `r∘e = id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractionPair {
    pub target: BooleanAlgebraView,
    pub r: Vec<Elem>,
    pub e: Vec<Elem>,
}

impl RetractionPair {
    pub fn new(
        carrier: usize,
        target: BooleanAlgebraView,
        r: Vec<Elem>,
        e: Vec<Elem>,
    ) -> Result<RetractionPair, ConstructionError> {
        let t = target.size();
        if r.len() != carrier {
            return Err(ConstructionError::MapLength { map: "r", expected: carrier, found: r.len() });
        }
        if e.len() != t {
            return Err(ConstructionError::MapLength { map: "e", expected: t, found: e.len() });
        }
        if let Some((from, &to)) = r.iter().enumerate().find(|(_, &v)| v >= t) {
            return Err(ConstructionError::OutOfRange { map: "r", from, to, size: t });
        }
        if let Some((from, &to)) = e.iter().enumerate().find(|(_, &v)| v >= carrier) {
            return Err(ConstructionError::OutOfRange { map: "e", from, to, size: carrier });
        }
        if let Some(p) = (0..t).find(|&p| r[e[p]] != p) {
            return Err(ConstructionError::NotRetraction(p));
        }
        Ok(RetractionPair { target, r, e })
    }

    pub fn carrier(&self) -> usize {
        self.r.len()
    }
}

fn same_carrier(p: &RetractionPair, q: &RetractionPair) -> Result<usize, ConstructionError> {
    if p.carrier() != q.carrier() {
        return Err(ConstructionError::CarrierMismatch(p.carrier(), q.carrier()));
    }
    Ok(p.carrier())
}

/// Build the algebra on `names` defined by the two pairs (`p` feeds ⊓, ¬, ⊥;
/// `q` feeds ⊔, ⌟, ⊤).
pub fn build_named(names: Vec<String>, p: &RetractionPair, q: &RetractionPair) -> Result<FiniteAlgebra, ConstructionError> {
    let n = same_carrier(p, q)?;
    if names.len() != n {
        return Err(ConstructionError::MapLength { map: "names", expected: n, found: names.len() });
    }
    let (bp, bq) = (&p.target, &q.target);
    Ok(FiniteAlgebra::from_fn(
        names,
        |x, y| p.e[bp.and(p.r[x], p.r[y])],
        |x, y| q.e[bq.or(q.r[x], q.r[y])],
        |x| p.e[bp.not(p.r[x])],
        |x| q.e[bq.not(q.r[x])],
        q.e[bq.top()],
        p.e[bp.bot()],
    )?)
}

/// [`build_named`] with index names `0, 1, …`.
pub fn build_from_boolean_pair(p: &RetractionPair, q: &RetractionPair) -> Result<FiniteAlgebra, ConstructionError> {
    build_named(FiniteAlgebra::index_names(p.carrier()), p, q)
}

/// The pairs `x ↦ x⊓x` / inclusion of D_⊓ and `x ↦ x⊔x` / inclusion of D_⊔
/// of a double Boolean algebra.
pub fn canonical_pairs(alg: &FiniteAlgebra) -> Result<(RetractionPair, RetractionPair), ConstructionError> {
    let make = |side: Side, carrier: Vec<Elem>, project: &dyn Fn(Elem) -> Elem| {
        let target = BooleanAlgebraView::new(alg.boolean_part(side)?)?;
        let r = alg.elements().map(|x| carrier.iter().position(|&c| c == project(x)).expect("projection is idempotent")).collect();
        RetractionPair::new(alg.size(), target, r, carrier)
    };
    let p = make(Side::Meet, alg.meet_idempotents(), &|x| alg.project_meet(x))?;
    let q = make(Side::Join, alg.join_idempotents(), &|x| alg.project_join(x))?;
    Ok((p, q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremVersion {
    /// Conditions 1 and 2.
    New,
    /// Conditions 1, 2 and 3 (the constants condition).
    Old,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionVerdict {
    /// `1`, `2a`, `2b`, `3a` or `3b`.
    pub id: &'static str,
    /// First violating argument tuple (empty for the constant conditions).
    pub witness: Option<Vec<Elem>>,
}

impl ConditionVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub version: TheoremVersion,
    pub verdicts: Vec<ConditionVerdict>,
}

impl ConditionReport {
    pub fn passes(&self) -> bool {
        self.verdicts.iter().all(ConditionVerdict::holds)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.verdicts.iter().filter(|v| !v.holds()).map(|v| v.id).collect()
    }
}

pub fn check_theorem_conditions(
    p: &RetractionPair,
    q: &RetractionPair,
    version: TheoremVersion,
) -> Result<ConditionReport, ConstructionError> {
    let n = same_carrier(p, q)?;
    let (bp, bq) = (&p.target, &q.target);
    let er = |x: Elem| p.e[p.r[x]];
    let er2 = |x: Elem| q.e[q.r[x]];
    let first_pair = |f: &dyn Fn(Elem, Elem) -> bool| {
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| !f(x, y)).map(|(x, y)| vec![x, y])
    };

    let mut verdicts = vec![ConditionVerdict { id: "1", witness: (0..n).find(|&x| er(er2(x)) != er2(er(x))).map(|x| vec![x]) }];
    verdicts.push(ConditionVerdict {
        id: "2a",
        witness: first_pair(&|x, y| p.e[bp.and(p.r[x], p.r[q.e[bq.or(q.r[x], q.r[y])]])] == er(x)),
    });
    verdicts.push(ConditionVerdict {
        id: "2b",
        witness: first_pair(&|x, y| q.e[bq.or(q.r[x], q.r[p.e[bp.and(p.r[x], p.r[y])]])] == er2(x)),
    });
    if version == TheoremVersion::Old {
        let holds = |b: bool| if b { None } else { Some(Vec::new()) };
        verdicts.push(ConditionVerdict { id: "3a", witness: holds(p.r[q.e[bq.top()]] == bp.top()) });
        verdicts.push(ConditionVerdict { id: "3b", witness: holds(q.r[p.e[bp.bot()]] == bq.bot()) });
    }
    Ok(ConditionReport { version, verdicts })
}

fn prefixed_names(p: &BooleanAlgebraView, q: &BooleanAlgebraView, q_extra: &[Elem]) -> Vec<String> {
    let clash = q_extra.iter().any(|&y| p.algebra().names().iter().any(|x| x == q.name(y)));
    let mut names: Vec<String> = (0..p.size())
        .map(|x| if clash { format!("p.{}", p.name(x)) } else { p.name(x).to_string() })
        .collect();
    names.extend(q_extra.iter().map(|&y| if clash { format!("q.{}", q.name(y)) } else { q.name(y).to_string() }));
    names
}

/// Glued sum: P and Q side by side with ⊤p identified with ⊥q. The carrier
/// lists P first, then Q∖{⊥q}; the shared element keeps its P index.
pub fn glued_sum(p: &BooleanAlgebraView, q: &BooleanAlgebraView) -> Result<FiniteAlgebra, ConstructionError> {
    let np = p.size();
    let q_extra: Vec<Elem> = (0..q.size()).filter(|&y| y != q.bot()).collect();
    // Position of a Q element in the carrier.
    let from_q = |y: Elem| if y == q.bot() { p.top() } else { np + q_extra.iter().position(|&z| z == y).expect("listed") };
    // Q element at a carrier position, if any.
    let to_q = |x: Elem| {
        if x == p.top() {
            Some(q.bot())
        } else if x >= np {
            Some(q_extra[x - np])
        } else {
            None
        }
    };
    let in_p = |x: Elem| x < np;
    let names = prefixed_names(p, q, &q_extra);
    let meet = |x: Elem, y: Elem| match (in_p(x), in_p(y)) {
        (true, true) => p.and(x, y),
        (false, false) => p.top(),
        (true, false) => x,
        (false, true) => y,
    };
    let join = |x: Elem, y: Elem| match (to_q(x), to_q(y)) {
        (Some(a), Some(b)) => from_q(q.or(a, b)),
        (None, None) => p.top(),
        (None, Some(_)) => y,
        (Some(_), None) => x,
    };
    let neg = |x: Elem| if in_p(x) { p.not(x) } else { p.bot() };
    let opp = |x: Elem| match to_q(x) {
        Some(a) => from_q(q.not(a)),
        None => from_q(q.top()),
    };
    Ok(FiniteAlgebra::from_fn(names, meet, join, neg, opp, from_q(q.top()), p.bot())?)
}

/// Result of [`generalized_glued_sum`].
#[derive(Debug, Clone)]
pub struct GeneralizedGluedSum {
    pub algebra: FiniteAlgebra,
    /// The order of the generalized linear sum on the carrier.
    pub order: QuasiOrder,
    /// Carrier position of each element of P.
    pub p_index: Vec<Elem>,
    /// Carrier position of each element of Q.
    pub q_index: Vec<Elem>,
    pub p_pair: RetractionPair,
    pub q_pair: RetractionPair,
}

impl GeneralizedGluedSum {
    pub fn in_p(&self, x: Elem) -> bool {
        self.p_index.contains(&x)
    }

    pub fn in_q(&self, x: Elem) -> bool {
        self.q_index.contains(&x)
    }

    /// Pairs (x, y) where the algebraic ⊑ and the generalized order disagree.
    pub fn order_mismatches(&self) -> Vec<(Elem, Elem)> {
        let alg_order = self.algebra.quasi_order();
        let n = self.algebra.size();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| alg_order.holds(x, y) != self.order.holds(x, y))
            .collect()
    }
}

/// Union of P and Q where each `(x, y)` in `overlap` identifies x ∈ P with
/// y ∈ Q. Operations come from the maps `r` (identity on P, everything else
/// to ⊤p), `r'` (identity on Q, everything else to ⊥q) and the inclusions.
pub fn generalized_glued_sum(
    p: &BooleanAlgebraView,
    q: &BooleanAlgebraView,
    overlap: &[(Elem, Elem)],
) -> Result<GeneralizedGluedSum, ConstructionError> {
    for &(x, y) in overlap {
        if x >= p.size() {
            return Err(ConstructionError::OverlapOutOfRange(x));
        }
        if y >= q.size() {
            return Err(ConstructionError::OverlapOutOfRange(y));
        }
    }
    for (i, &(x, y)) in overlap.iter().enumerate() {
        if let Some(&(x2, y2)) = overlap[..i].iter().find(|&&(x2, y2)| x2 == x || y2 == y) {
            let which = if x2 == x { format!("{} of P", p.name(x)) } else { format!("{} of Q", q.name(y2)) };
            return Err(ConstructionError::NonInjectiveOverlap(which));
        }
    }
    let np = p.size();
    let q_extra: Vec<Elem> = (0..q.size()).filter(|y| !overlap.iter().any(|&(_, b)| b == *y)).collect();
    let n = np + q_extra.len();
    let p_index: Vec<Elem> = (0..np).collect();
    let q_index: Vec<Elem> = (0..q.size())
        .map(|y| match overlap.iter().find(|&&(_, b)| b == y) {
            Some(&(a, _)) => a,
            None => np + q_extra.iter().position(|&z| z == y).expect("listed"),
        })
        .collect();
    let r: Vec<Elem> = (0..n).map(|x| if x < np { x } else { p.top() }).collect();
    let r2: Vec<Elem> = (0..n).map(|x| q_index.iter().position(|&c| c == x).unwrap_or(q.bot())).collect();
    let p_pair = RetractionPair::new(n, p.clone(), r, p_index.clone())?;
    let q_pair = RetractionPair::new(n, q.clone(), r2, q_index.clone())?;
    let algebra = build_named(prefixed_names(p, q, &q_extra), &p_pair, &q_pair)?;

    let to_q = |x: Elem| q_index.iter().position(|&c| c == x);
    let (top_p, bot_q) = (p_index[p.top()], q_index[q.bot()]);
    let order = QuasiOrder::from_fn(n, |x, y| {
        let both_p = x < np && y < np && p.leq(x, y);
        let both_q = matches!((to_q(x), to_q(y)), (Some(a), Some(b)) if q.leq(a, b));
        both_p || both_q || (x < np && to_q(y).is_some()) || (x == bot_q && y == top_p)
    });
    Ok(GeneralizedGluedSum { algebra, order, p_index, q_index, p_pair, q_pair })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::classify;
    use crate::axioms::{check_identity_catalog, passes_suite};
    use crate::fixtures;

    fn b(k: usize) -> BooleanAlgebraView {
        powerset_boolean(k).unwrap()
    }

    #[test]
    fn powersets() {
        assert_eq!(b(0).size(), 1);
        assert_eq!(b(1).size(), 2);
        assert_eq!(b(2).size(), 4);
        assert_eq!(b(2).name(3), "ab");
        assert_eq!(powerset_boolean(5).unwrap_err(), ConstructionError::BoundExceeded { k: 5, max: 4 });
    }

    #[test]
    fn rejects_non_boolean_input() {
        assert!(matches!(BooleanAlgebraView::new(fixtures::glued_chain()), Err(ConstructionError::NotBoolean(_))));
    }

    #[test]
    fn retraction_law_is_enforced() {
        let err = RetractionPair::new(3, b(1), vec![0, 0, 1], vec![2, 1]).unwrap_err();
        assert_eq!(err, ConstructionError::NotRetraction(0));
        let err = RetractionPair::new(3, b(1), vec![0, 1], vec![0, 2]).unwrap_err();
        assert!(matches!(err, ConstructionError::MapLength { map: "r", .. }));
    }

    #[test]
    fn two_plus_two_is_the_chain() {
        let chain = glued_sum(&b(1), &b(1)).unwrap();
        assert_eq!(chain.size(), 3);
        assert!(chain.is_isomorphism(&fixtures::glued_chain(), &[0, 1, 2]));
        let r = classify(&chain);
        assert!(r.is_dba && r.is_pure && r.is_trivial);
    }

    #[test]
    fn singleton_glued_sum() {
        let one = glued_sum(&b(0), &b(0)).unwrap();
        assert_eq!(one.size(), 1);
        assert!(passes_suite(&one, SuiteId::Dba23));
    }

    #[test]
    fn four_plus_two() {
        let alg = glued_sum(&b(2), &b(1)).unwrap();
        assert_eq!(alg.size(), 5);
        let r = classify(&alg);
        assert!(r.is_dba && r.is_pure && r.is_trivial);
        assert!(check_identity_catalog(&alg).is_empty());
    }

    #[test]
    fn chain_from_explicit_maps() {
        // A = {⊥, m, ⊤}; P = {0, a} sits on {⊥, m}, Q = {0, a} on {m, ⊤}.
        let p = RetractionPair::new(3, b(1), vec![0, 1, 1], vec![0, 1]).unwrap();
        let q = RetractionPair::new(3, b(1), vec![0, 0, 1], vec![1, 2]).unwrap();
        let alg = build_from_boolean_pair(&p, &q).unwrap();
        assert!(alg.is_isomorphism(&fixtures::glued_chain(), &[0, 1, 2]));
        assert!(check_theorem_conditions(&p, &q, TheoremVersion::New).unwrap().passes());
        assert!(check_theorem_conditions(&p, &q, TheoremVersion::Old).unwrap().passes());
    }

    #[test]
    fn swapped_embedding_breaks_condition_one() {
        let p = RetractionPair::new(3, b(1), vec![0, 1, 1], vec![0, 1]).unwrap();
        let q = RetractionPair::new(3, b(1), vec![0, 1, 0], vec![2, 1]).unwrap();
        let report = check_theorem_conditions(&p, &q, TheoremVersion::New).unwrap();
        assert!(report.failed().contains(&"1"));
        assert!(!passes_suite(&build_from_boolean_pair(&p, &q).unwrap(), SuiteId::Dba23));
    }

    #[test]
    fn canonical_pairs_rebuild_fixtures() {
        for (name, alg) in fixtures::builtin_fixtures() {
            if !classify(&alg).is_dba {
                continue;
            }
            let (p, q) = canonical_pairs(&alg).unwrap();
            let rebuilt = build_named(alg.names().to_vec(), &p, &q).unwrap();
            assert_eq!(rebuilt, alg, "{name}");
            assert!(check_theorem_conditions(&p, &q, TheoremVersion::Old).unwrap().passes(), "{name}");
        }
    }

    #[test]
    fn trivial_boolean_algebras_give_the_singleton() {
        let p = RetractionPair::new(1, b(0), vec![0], vec![0]).unwrap();
        let alg = build_from_boolean_pair(&p, &p).unwrap();
        assert_eq!(alg.size(), 1);
        assert!(passes_suite(&alg, SuiteId::Dba23));
    }

    #[test]
    fn generalized_sum_with_glued_overlap_is_the_glued_sum() {
        for (kp, kq) in [(0, 0), (1, 1), (2, 1), (1, 2), (2, 2)] {
            let (p, q) = (b(kp), b(kq));
            let g = generalized_glued_sum(&p, &q, &[(p.top(), q.bot())]).unwrap();
            assert_eq!(g.algebra, glued_sum(&p, &q).unwrap(), "{kp}+{kq}");
            assert!(passes_suite(&g.algebra, SuiteId::Dba23));
            assert!(g.order_mismatches().is_empty());
        }
    }

    #[test]
    fn empty_overlap_is_the_linear_sum() {
        let (p, q) = (b(1), b(1));
        let g = generalized_glued_sum(&p, &q, &[]).unwrap();
        assert_eq!(g.algebra.size(), 4);
        // 0 < 1 < 2 < 3 plus the extra pair ⊥q ≤ ⊤p.
        for x in 0..4 {
            for y in 0..4 {
                let expect = x <= y || (x, y) == (2, 1);
                assert_eq!(g.order.holds(x, y), expect, "{x} {y}");
            }
        }
        assert!(!g.order.antisymmetric);
    }

    #[test]
    fn two_shared_elements_break_antisymmetry() {
        let (p, q) = (b(1), b(1));
        let g = generalized_glued_sum(&p, &q, &[(0, 0), (1, 1)]).unwrap();
        assert!(g.order.holds(0, 1) && g.order.holds(1, 0));
        assert!(!g.order.antisymmetric);
    }

    #[test]
    fn overlap_must_be_injective() {
        let (p, q) = (b(1), b(1));
        assert!(matches!(
            generalized_glued_sum(&p, &q, &[(0, 0), (0, 1)]),
            Err(ConstructionError::NonInjectiveOverlap(_))
        ));
    }
}
