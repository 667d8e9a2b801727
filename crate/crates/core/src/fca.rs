//! Formal contexts, derivation and modal operators, the five kinds of
//! object/attribute pairs, and the algebras of protoconcepts.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{Elem, FiniteAlgebra};

/// A subset of objects or attributes as a bitmask (bit i = element i).
pub type Mask = u64;

/// Object and attribute counts are capped so subsets fit in a [`Mask`].
pub const MAX_SIDE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error("a context side may hold at most {MAX_SIDE} names, got {0}")]
    TooLarge(usize),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("name `{0}` is not a single whitespace-free token")]
    BadName(String),
    #[error("incidence has {found} rows, expected {expected}")]
    RowCount { expected: usize, found: usize },
    #[error("incidence row {row} has {found} entries, expected {expected}")]
    RowLength { row: usize, expected: usize, found: usize },
}

/// A formal context (G, M, I).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    /// `rows[g]` is the intent of object g.
    rows: Vec<Mask>,
    /// `cols[m]` is the extent of attribute m.
    cols: Vec<Mask>,
}

fn check_names(names: &[String]) -> Result<(), ContextError> {
    if names.len() > MAX_SIDE {
        return Err(ContextError::TooLarge(names.len()));
    }
    let mut seen = BTreeSet::new();
    for n in names {
        if n.is_empty() || n.chars().any(|c| c.is_whitespace() || c == '#') {
            return Err(ContextError::BadName(n.clone()));
        }
        if !seen.insert(n) {
            return Err(ContextError::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

fn full(n: usize) -> Mask {
    if n == 64 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

impl FormalContext {
    pub fn new(objects: Vec<String>, attributes: Vec<String>, incidence: &[Vec<bool>]) -> Result<Self, ContextError> {
        if incidence.len() != objects.len() {
            return Err(ContextError::RowCount { expected: objects.len(), found: incidence.len() });
        }
        let mut rows = Vec::with_capacity(objects.len());
        for (g, row) in incidence.iter().enumerate() {
            if row.len() != attributes.len() {
                return Err(ContextError::RowLength { row: g, expected: attributes.len(), found: row.len() });
            }
            rows.push(row.iter().enumerate().filter(|(_, &b)| b).fold(0, |acc, (m, _)| acc | 1 << m));
        }
        FormalContext::from_rows(objects, attributes, rows)
    }

    /// Build from object intents given as attribute bitmasks.
    pub fn from_rows(objects: Vec<String>, attributes: Vec<String>, rows: Vec<Mask>) -> Result<Self, ContextError> {
        check_names(&objects)?;
        check_names(&attributes)?;
        if rows.len() != objects.len() {
            return Err(ContextError::RowCount { expected: objects.len(), found: rows.len() });
        }
        let m_full = full(attributes.len());
        let rows: Vec<Mask> = rows.into_iter().map(|r| r & m_full).collect();
        let cols = (0..attributes.len())
            .map(|m| rows.iter().enumerate().filter(|(_, &r)| r >> m & 1 == 1).fold(0, |acc, (g, _)| acc | 1 << g))
            .collect();
        Ok(FormalContext { objects, attributes, rows, cols })
    }

    /// Objects `g1..gk`, attributes `m1..ml`, incidence taken from the bits
    /// of `pattern` in row-major order.
    pub fn numbered(n_objects: usize, n_attributes: usize, pattern: u64) -> Result<Self, ContextError> {
        let objects = (1..=n_objects).map(|i| format!("g{i}")).collect();
        let attributes = (1..=n_attributes).map(|i| format!("m{i}")).collect();
        let rows = (0..n_objects).map(|g| (pattern >> (g * n_attributes)) & full(n_attributes)).collect();
        FormalContext::from_rows(objects, attributes, rows)
    }

    /// Every context with `|G| = g` and `|M| = m`, in ascending pattern order.
    pub fn all_of_shape(g: usize, m: usize) -> impl Iterator<Item = FormalContext> {
        assert!(g * m < 64, "shape too large to enumerate");
        (0..1u64 << (g * m)).map(move |p| FormalContext::numbered(g, m, p).expect("small shape"))
    }

    /// One context per isomorphism class of shape g×m: the one whose pattern
    /// is smallest under all permutations of objects and of attributes.
    pub fn representatives_of_shape(g: usize, m: usize) -> Vec<FormalContext> {
        assert!(g * m <= 16 && g <= 5 && m <= 5, "shape too large to canonicalize");
        let (pg, pm) = (permutations(g), permutations(m));
        (0..1u64 << (g * m))
            .filter(|&p| {
                pg.iter().all(|sg| {
                    pm.iter().all(|sm| {
                        let mut q = 0u64;
                        for (i, &gi) in sg.iter().enumerate() {
                            for (j, &mj) in sm.iter().enumerate() {
                                q |= (p >> (i * m + j) & 1) << (gi * m + mj);
                            }
                        }
                        q >= p
                    })
                })
            })
            .map(|p| FormalContext::numbered(g, m, p).expect("small shape"))
            .collect()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn all_objects(&self) -> Mask {
        full(self.n_objects())
    }

    pub fn all_attributes(&self) -> Mask {
        full(self.n_attributes())
    }

    pub fn incident(&self, g: usize, m: usize) -> bool {
        self.rows[g] >> m & 1 == 1
    }

    pub fn intent_of(&self, g: usize) -> Mask {
        self.rows[g]
    }

    pub fn extent_of(&self, m: usize) -> Mask {
        self.cols[m]
    }

    /// A′ = { m : g I m for all g ∈ A }.
    pub fn derive_objects(&self, a: Mask) -> Mask {
        bits(a).fold(self.all_attributes(), |acc, g| acc & self.rows[g])
    }

    /// B′ = { g : g I m for all m ∈ B }.
    pub fn derive_attributes(&self, b: Mask) -> Mask {
        bits(b).fold(self.all_objects(), |acc, m| acc & self.cols[m])
    }

    pub fn derive(&self, side: SetSide, s: Mask) -> Mask {
        match side {
            SetSide::Objects => self.derive_objects(s),
            SetSide::Attributes => self.derive_attributes(s),
        }
    }

    pub fn modal(&self, op: Modal, s: Mask) -> Mask {
        match op {
            Modal::BoxO => (0..self.n_attributes()).filter(|&m| self.cols[m] & !s == 0).fold(0, |acc, m| acc | 1 << m),
            Modal::DiamondO => (0..self.n_attributes()).filter(|&m| self.cols[m] & s != 0).fold(0, |acc, m| acc | 1 << m),
            Modal::BoxP => (0..self.n_objects()).filter(|&g| self.rows[g] & !s == 0).fold(0, |acc, g| acc | 1 << g),
            Modal::DiamondP => (0..self.n_objects()).filter(|&g| self.rows[g] & s != 0).fold(0, |acc, g| acc | 1 << g),
        }
    }

    /// The context (G, M, Iᶜ).
    pub fn complement(&self) -> FormalContext {
        let m_full = self.all_attributes();
        FormalContext::from_rows(
            self.objects.clone(),
            self.attributes.clone(),
            self.rows.iter().map(|r| !r & m_full).collect(),
        )
        .expect("same names")
    }

    pub fn pair(&self, extent: Mask, intent: Mask) -> ConceptPair {
        let a1 = self.derive_objects(extent);
        let b1 = self.derive_attributes(intent);
        let semiconcept = a1 == intent || b1 == extent;
        let box_a = self.modal(Modal::BoxO, extent);
        let dia_b = self.modal(Modal::DiamondP, intent);
        ConceptPair {
            extent,
            intent,
            concept: a1 == intent && b1 == extent,
            protoconcept: self.derive_attributes(a1) == b1,
            semiconcept,
            oo_protoconcept: self.modal(Modal::DiamondP, box_a) == dia_b,
            oo_semiconcept: box_a == intent || dia_b == extent,
        }
    }

    /// Render a subset of objects (or attributes) as a comma-separated list.
    pub fn subset_names(&self, side: SetSide, s: Mask) -> String {
        let names = match side {
            SetSide::Objects => &self.objects,
            SetSide::Attributes => &self.attributes,
        };
        bits(s).map(|i| names[i].as_str()).collect::<Vec<_>>().join(",")
    }

    /// Display name `(A|B)` of a pair.
    pub fn pair_name(&self, extent: Mask, intent: Mask) -> String {
        format!("({}|{})", self.subset_names(SetSide::Objects, extent), self.subset_names(SetSide::Attributes, intent))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetSide {
    Objects,
    Attributes,
}

/// The four approximation operators. `BoxO`/`DiamondO` act on object sets,
/// `BoxP`/`DiamondP` on attribute sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Modal {
    /// A^□ₒ = { m : m′ ⊆ A }
    BoxO,
    /// A^◇ₒ = { m : m′ ∩ A ≠ ∅ }
    DiamondO,
    /// B^□ₚ = { g : g′ ⊆ B }
    BoxP,
    /// B^◇ₚ = { g : g′ ∩ B ≠ ∅ }
    DiamondP,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConceptPair {
    pub extent: Mask,
    pub intent: Mask,
    pub concept: bool,
    pub protoconcept: bool,
    pub semiconcept: bool,
    pub oo_protoconcept: bool,
    pub oo_semiconcept: bool,
}

impl ConceptPair {
    pub fn is(&self, kind: PairKind) -> bool {
        match kind {
            PairKind::Concept => self.concept,
            PairKind::Semiconcept => self.semiconcept,
            PairKind::Protoconcept => self.protoconcept,
            PairKind::OoSemiconcept => self.oo_semiconcept,
            PairKind::OoProtoconcept => self.oo_protoconcept,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairKind {
    Concept,
    Semiconcept,
    Protoconcept,
    OoSemiconcept,
    OoProtoconcept,
}

impl PairKind {
    pub const ALL: [PairKind; 5] = [
        PairKind::Concept,
        PairKind::Semiconcept,
        PairKind::Protoconcept,
        PairKind::OoSemiconcept,
        PairKind::OoProtoconcept,
    ];
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairKind::Concept => "concept",
            PairKind::Semiconcept => "semi",
            PairKind::Protoconcept => "proto",
            PairKind::OoSemiconcept => "oo-semi",
            PairKind::OoProtoconcept => "oo-proto",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown pair kind `{0}` (expected proto, semi, concept, oo-proto or oo-semi)")]
pub struct UnknownKind(pub String);

impl FromStr for PairKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<PairKind, UnknownKind> {
        PairKind::ALL.into_iter().find(|k| k.to_string() == s).ok_or_else(|| UnknownKind(s.to_string()))
    }
}

/// Test the defining condition on every one of the 2^|G|·2^|M| pairs.
pub fn enumerate_pairs_brute(ctx: &FormalContext, kind: PairKind) -> Vec<ConceptPair> {
    let mut out = Vec::new();
    for a in 0..=ctx.all_objects() {
        for b in 0..=ctx.all_attributes() {
            let p = ctx.pair(a, b);
            if p.is(kind) {
                out.push(p);
            }
        }
    }
    out
}

fn group_by(n: usize, f: impl Fn(Mask) -> Mask) -> BTreeMap<Mask, Vec<Mask>> {
    let mut groups: BTreeMap<Mask, Vec<Mask>> = BTreeMap::new();
    for s in 0..=full(n) {
        groups.entry(f(s)).or_default().push(s);
    }
    groups
}

/// Generate pairs from one-sided data (derivations or modal images) instead
/// of testing every pair. Same output as [`enumerate_pairs_brute`].
pub fn enumerate_pairs_generated(ctx: &FormalContext, kind: PairKind) -> Vec<ConceptPair> {
    let (g, m) = (ctx.n_objects(), ctx.n_attributes());
    let mut raw: BTreeSet<(Mask, Mask)> = BTreeSet::new();
    match kind {
        PairKind::Concept => {
            for a in 0..=full(g) {
                let b = ctx.derive_objects(a);
                raw.insert((ctx.derive_attributes(b), b));
            }
        }
        PairKind::Semiconcept => {
            for a in 0..=full(g) {
                raw.insert((a, ctx.derive_objects(a)));
            }
            for b in 0..=full(m) {
                raw.insert((ctx.derive_attributes(b), b));
            }
        }
        PairKind::OoSemiconcept => {
            for a in 0..=full(g) {
                raw.insert((a, ctx.modal(Modal::BoxO, a)));
            }
            for b in 0..=full(m) {
                raw.insert((ctx.modal(Modal::DiamondP, b), b));
            }
        }
        PairKind::Protoconcept | PairKind::OoProtoconcept => {
            let (left, right) = if kind == PairKind::Protoconcept {
                (
                    group_by(g, |a| ctx.derive_attributes(ctx.derive_objects(a))),
                    group_by(m, |b| ctx.derive_attributes(b)),
                )
            } else {
                (
                    group_by(g, |a| ctx.modal(Modal::DiamondP, ctx.modal(Modal::BoxO, a))),
                    group_by(m, |b| ctx.modal(Modal::DiamondP, b)),
                )
            };
            for (key, extents) in &left {
                if let Some(intents) = right.get(key) {
                    for &a in extents {
                        for &b in intents {
                            raw.insert((a, b));
                        }
                    }
                }
            }
        }
    }
    raw.into_iter().map(|(a, b)| ctx.pair(a, b)).collect()
}

/// All pairs of the requested kind, ordered by extent mask then intent mask.
pub fn enumerate_pairs(ctx: &FormalContext, kind: PairKind) -> Vec<ConceptPair> {
    if ctx.n_objects() + ctx.n_attributes() <= 12 {
        enumerate_pairs_brute(ctx, kind)
    } else {
        enumerate_pairs_generated(ctx, kind)
    }
}

/// A finite algebra whose elements are pairs of a context.
#[derive(Debug, Clone)]
pub struct PairAlgebra {
    pub algebra: FiniteAlgebra,
    /// `pairs[i]` is the pair represented by element `i`.
    pub pairs: Vec<ConceptPair>,
}

impl PairAlgebra {
    pub fn index_of(&self, extent: Mask, intent: Mask) -> Option<Elem> {
        self.pairs.iter().position(|p| p.extent == extent && p.intent == intent)
    }
}

type BinaryPairOp<'a> = Box<dyn Fn(Mask, Mask, Mask, Mask) -> (Mask, Mask) + 'a>;
type UnaryPairOp<'a> = Box<dyn Fn(Mask, Mask) -> (Mask, Mask) + 'a>;

struct PairOps<'a> {
    meet: BinaryPairOp<'a>,
    join: BinaryPairOp<'a>,
    neg: UnaryPairOp<'a>,
    opp: UnaryPairOp<'a>,
    top: (Mask, Mask),
    bot: (Mask, Mask),
}

fn pair_algebra(ctx: &FormalContext, pairs: Vec<ConceptPair>, ops: PairOps<'_>) -> Option<PairAlgebra> {
    let index: HashMap<(Mask, Mask), Elem> = pairs.iter().enumerate().map(|(i, p)| ((p.extent, p.intent), i)).collect();
    let at = |v: (Mask, Mask)| index.get(&v).copied();
    let n = pairs.len();
    let (mut meet, mut join) = (Vec::with_capacity(n * n), Vec::with_capacity(n * n));
    for x in &pairs {
        for y in &pairs {
            meet.push(at((ops.meet)(x.extent, x.intent, y.extent, y.intent))?);
            join.push(at((ops.join)(x.extent, x.intent, y.extent, y.intent))?);
        }
    }
    let neg = pairs.iter().map(|x| at((ops.neg)(x.extent, x.intent))).collect::<Option<Vec<_>>>()?;
    let opp = pairs.iter().map(|x| at((ops.opp)(x.extent, x.intent))).collect::<Option<Vec<_>>>()?;
    let names = pairs.iter().map(|p| ctx.pair_name(p.extent, p.intent)).collect();
    let algebra =
        FiniteAlgebra::new(names, meet, join, neg, opp, at(ops.top)?, at(ops.bot)?).expect("pair names are distinct");
    Some(PairAlgebra { algebra, pairs })
}

fn protoconcept_ops(ctx: &FormalContext) -> PairOps<'_> {
    let (g, m) = (ctx.all_objects(), ctx.all_attributes());
    PairOps {
        meet: Box::new(move |a, _, c, _| (a & c, ctx.derive_objects(a & c))),
        join: Box::new(move |_, b, _, d| (ctx.derive_attributes(b & d), b & d)),
        neg: Box::new(move |a, _| (g & !a, ctx.derive_objects(g & !a))),
        opp: Box::new(move |_, b| (ctx.derive_attributes(m & !b), m & !b)),
        top: (g, 0),
        bot: (0, m),
    }
}

/// The algebra of protoconcepts with
/// (A,B)⊓(C,D) = (A∩C, (A∩C)′), (A,B)⊔(C,D) = ((B∩D)′, B∩D),
/// ¬(A,B) = (G∖A, (G∖A)′), ⌟(A,B) = ((M∖B)′, M∖B), ⊤ = (G,∅), ⊥ = (∅,M).
pub fn protoconcept_algebra(ctx: &FormalContext) -> PairAlgebra {
    pair_algebra(ctx, enumerate_pairs(ctx, PairKind::Protoconcept), protoconcept_ops(ctx))
        .expect("protoconcepts are closed under the operations")
}

/// The protoconcept operations restricted to `pairs`, or None when some
/// operation leaves the set.
pub fn protoconcept_operations_on(ctx: &FormalContext, pairs: Vec<ConceptPair>) -> Option<PairAlgebra> {
    pair_algebra(ctx, pairs, protoconcept_ops(ctx))
}

/// The algebra of object-oriented protoconcepts with
/// (A,B)⊓(C,D) = (A∪C, (A∪C)^□ₒ), (A,B)⊔(C,D) = ((B∩D)^◇ₚ, B∩D),
/// ¬(A,B) = (Aᶜ, Aᶜ^□ₒ), ⌟(A,B) = (Bᶜ^◇ₚ, Bᶜ), ⊤ = (∅,∅), ⊥ = (G,M).
pub fn oo_protoconcept_algebra(ctx: &FormalContext) -> PairAlgebra {
    let (g, m) = (ctx.all_objects(), ctx.all_attributes());
    let ops = PairOps {
        meet: Box::new(|a, _, c, _| (a | c, ctx.modal(Modal::BoxO, a | c))),
        join: Box::new(|_, b, _, d| (ctx.modal(Modal::DiamondP, b & d), b & d)),
        neg: Box::new(move |a, _| (g & !a, ctx.modal(Modal::BoxO, g & !a))),
        opp: Box::new(move |_, b| (ctx.modal(Modal::DiamondP, m & !b), m & !b)),
        top: (0, 0),
        bot: (g, m),
    };
    pair_algebra(ctx, enumerate_pairs(ctx, PairKind::OoProtoconcept), ops)
        .expect("object-oriented protoconcepts are closed under the operations")
}

/// The semiconcepts of a protoconcept algebra as a subalgebra.
pub fn semiconcept_subalgebra(proto: &PairAlgebra) -> PairAlgebra {
    let keep: Vec<Elem> = (0..proto.pairs.len()).filter(|&i| proto.pairs[i].semiconcept).collect();
    let (algebra, map) = proto.algebra.subalgebra(&keep).expect("semiconcepts are closed under the operations");
    PairAlgebra { algebra, pairs: map.iter().map(|&i| proto.pairs[i]).collect() }
}

/// Check the translation laws between K and Kᶜ: the modal operators of I are
/// derivations in Iᶜ up to complements, (A,B) is a protoconcept of K iff
/// (Aᶜ,B) is an object-oriented protoconcept of Kᶜ, and likewise for
/// semiconcepts. Returns a description of every violation.
pub fn translation_law_failures(ctx: &FormalContext) -> Vec<String> {
    let kc = ctx.complement();
    let (g, m) = (ctx.all_objects(), ctx.all_attributes());
    let mut out = Vec::new();
    for a in 0..=g {
        if ctx.modal(Modal::BoxO, a) != kc.derive_objects(g & !a) {
            out.push(format!("box_o mismatch at A={a:#b}"));
        }
        if ctx.modal(Modal::DiamondO, a) != m & !kc.derive_objects(a) {
            out.push(format!("diamond_o mismatch at A={a:#b}"));
        }
    }
    for b in 0..=m {
        if ctx.modal(Modal::BoxP, b) != kc.derive_attributes(m & !b) {
            out.push(format!("box_p mismatch at B={b:#b}"));
        }
        if ctx.modal(Modal::DiamondP, b) != g & !kc.derive_attributes(b) {
            out.push(format!("diamond_p mismatch at B={b:#b}"));
        }
    }
    for a in 0..=g {
        for b in 0..=m {
            let here = ctx.pair(a, b);
            let there = kc.pair(g & !a, b);
            if here.protoconcept != there.oo_protoconcept {
                out.push(format!("protoconcept translation fails at ({a:#b},{b:#b})"));
            }
            if here.semiconcept != there.oo_semiconcept {
                out.push(format!("semiconcept translation fails at ({a:#b},{b:#b})"));
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::classify;
    use crate::axioms::{passes_suite, SuiteId};

    fn subsets(n: usize) -> std::ops::RangeInclusive<Mask> {
        0..=full(n)
    }

    /// Orbits of patterns under adjacent row and column swaps, by flood fill.
    fn orbit_count(g: usize, m: usize) -> usize {
        let swap_rows = |p: u64, i: usize| {
            let (a, b) = ((p >> (i * m)) & full(m), (p >> ((i + 1) * m)) & full(m));
            p & !(full(m) << (i * m)) & !(full(m) << ((i + 1) * m)) | b << (i * m) | a << ((i + 1) * m)
        };
        let swap_cols = |p: u64, j: usize| {
            let mut q = p;
            for i in 0..g {
                let (a, b) = (p >> (i * m + j) & 1, p >> (i * m + j + 1) & 1);
                q = q & !(1 << (i * m + j)) & !(1 << (i * m + j + 1)) | b << (i * m + j) | a << (i * m + j + 1);
            }
            q
        };
        let mut seen = vec![false; 1 << (g * m)];
        let mut orbits = 0;
        for start in 0..seen.len() {
            if seen[start] {
                continue;
            }
            orbits += 1;
            let mut stack = vec![start as u64];
            seen[start] = true;
            while let Some(p) = stack.pop() {
                let next = (0..g.saturating_sub(1)).map(|i| swap_rows(p, i)).chain((0..m.saturating_sub(1)).map(|j| swap_cols(p, j)));
                for q in next.collect::<Vec<_>>() {
                    if !seen[q as usize] {
                        seen[q as usize] = true;
                        stack.push(q);
                    }
                }
            }
        }
        orbits
    }

    #[test]
    fn one_representative_per_isomorphism_class() {
        for g in 0..=3 {
            for m in 0..=3 {
                assert_eq!(FormalContext::representatives_of_shape(g, m).len(), orbit_count(g, m), "{g}x{m}");
            }
        }
        assert_eq!(FormalContext::representatives_of_shape(3, 3).len(), 36);
    }

    #[test]
    fn derivation_of_empty_set_is_everything() {
        let ctx = FormalContext::numbered(2, 3, 0b101_010).unwrap();
        assert_eq!(ctx.derive_objects(0), 0b111);
        assert_eq!(ctx.derive_attributes(0), 0b11);
    }

    #[test]
    fn empty_incidence_derivation() {
        let ctx = FormalContext::numbered(2, 2, 0).unwrap();
        assert_eq!(ctx.derive_objects(0b01), 0);
    }

    #[test]
    fn galois_connection_on_all_3x3_contexts() {
        for ctx in FormalContext::all_of_shape(3, 3) {
            for a in subsets(3) {
                let a1 = ctx.derive_objects(a);
                assert_eq!(a & !ctx.derive_attributes(a1), 0, "extensive");
                assert_eq!(ctx.derive_objects(ctx.derive_attributes(a1)), a1, "A' = A'''");
                for b in subsets(3) {
                    let b_prime = ctx.derive_attributes(b);
                    assert_eq!(a & !b_prime == 0, b & !a1 == 0);
                }
                for c in subsets(3) {
                    if a & !c == 0 {
                        let close = |s| ctx.derive_attributes(ctx.derive_objects(s));
                        assert_eq!(close(a) & !close(c), 0, "monotone");
                    }
                }
            }
        }
    }

    #[test]
    fn modal_edge_cases() {
        let ctx = FormalContext::numbered(2, 2, 0b1111).unwrap();
        assert_eq!(ctx.modal(Modal::DiamondP, 0), 0);
        assert_eq!(ctx.modal(Modal::BoxP, 0b11), 0b11);
    }

    #[test]
    fn complement_is_an_involution() {
        for ctx in FormalContext::all_of_shape(2, 3) {
            assert_eq!(ctx.complement().complement(), ctx);
        }
        let empty = FormalContext::numbered(2, 2, 0).unwrap();
        assert_eq!(empty.complement(), FormalContext::numbered(2, 2, 0b1111).unwrap());
    }

    #[test]
    fn top_and_bottom_are_protoconcepts() {
        for ctx in FormalContext::all_of_shape(2, 3) {
            let protos = enumerate_pairs(&ctx, PairKind::Protoconcept);
            assert!(protos.iter().any(|p| p.extent == ctx.all_objects() && p.intent == 0));
            assert!(protos.iter().any(|p| p.extent == 0 && p.intent == ctx.all_attributes()));
        }
    }

    #[test]
    fn inclusion_chain_of_pair_kinds() {
        for (g, m) in [(1, 1), (2, 2), (3, 3), (3, 2)] {
            for ctx in FormalContext::all_of_shape(g, m) {
                for p in enumerate_pairs(&ctx, PairKind::Protoconcept) {
                    assert!(!p.concept || p.semiconcept);
                    assert!(!p.semiconcept || p.protoconcept);
                }
                let semis = enumerate_pairs(&ctx, PairKind::Semiconcept);
                assert!(semis.iter().all(|p| p.protoconcept));
                let concepts = enumerate_pairs(&ctx, PairKind::Concept);
                assert!(concepts.iter().all(|p| p.semiconcept));
            }
        }
    }

    #[test]
    fn empty_2x2_protoconcepts_match_direct_count() {
        let ctx = FormalContext::numbered(2, 2, 0).unwrap();
        let mut count = 0;
        for a in subsets(2) {
            for b in subsets(2) {
                let a2 = ctx.derive_attributes(ctx.derive_objects(a));
                if a2 == ctx.derive_attributes(b) {
                    count += 1;
                }
            }
        }
        assert_eq!(enumerate_pairs(&ctx, PairKind::Protoconcept).len(), count);
        assert_eq!(count, 6);
    }

    #[test]
    fn generated_path_agrees_with_brute_force() {
        for (g, m) in [(1, 2), (2, 2), (3, 3), (2, 3)] {
            for ctx in FormalContext::all_of_shape(g, m) {
                for kind in PairKind::ALL {
                    assert_eq!(enumerate_pairs_brute(&ctx, kind), enumerate_pairs_generated(&ctx, kind), "{kind}");
                }
            }
        }
    }

    #[test]
    fn protoconcept_order_is_componentwise() {
        for ctx in FormalContext::all_of_shape(2, 2) {
            let pa = protoconcept_algebra(&ctx);
            for (x, p) in pa.pairs.iter().enumerate() {
                for (y, q) in pa.pairs.iter().enumerate() {
                    let componentwise = p.extent & !q.extent == 0 && q.intent & !p.intent == 0;
                    assert_eq!(pa.algebra.below(x, y), componentwise);
                }
            }
        }
    }

    #[test]
    fn one_by_one_algebras() {
        for pattern in [0, 1] {
            let ctx = FormalContext::numbered(1, 1, pattern).unwrap();
            let pa = protoconcept_algebra(&ctx);
            assert!(passes_suite(&pa.algebra, SuiteId::Dba23));
            let oo = oo_protoconcept_algebra(&ctx);
            assert!(passes_suite(&oo.algebra, SuiteId::Dba23));
            assert!(oo.index_of(ctx.all_objects(), ctx.all_attributes()).is_some());
        }
    }

    #[test]
    fn semiconcepts_form_a_pure_subalgebra() {
        for ctx in FormalContext::all_of_shape(2, 2) {
            let semi = semiconcept_subalgebra(&protoconcept_algebra(&ctx));
            let r = classify(&semi.algebra);
            assert!(r.is_dba && r.is_pure);
        }
    }

    #[test]
    fn translation_laws_on_all_2x2_contexts() {
        for ctx in FormalContext::all_of_shape(2, 2) {
            assert!(translation_law_failures(&ctx).is_empty());
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for k in PairKind::ALL {
            assert_eq!(k.to_string().parse::<PairKind>().unwrap(), k);
        }
    }
}
