//! Primary filters and ideals, the standard context and the map
//! h(x) = (F_x, I_x), with a finite version of the Stone-type topology.
//!
//! Subsets of the algebra are `u64` element masks. F_x and I_x are masks
//! over the index lists of primary filters and primary ideals.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::{classify, Elem, FiniteAlgebra};
use crate::axioms::{check_suite, SuiteId};
use crate::constructions::{
    build_named, check_theorem_conditions, BooleanAlgebraView, ConditionReport, ConstructionError, RetractionPair,
    TheoremVersion,
};
use crate::fca::{protoconcept_operations_on, ContextError, FormalContext, Mask, Modal, PairKind};

/// Largest algebra accepted by [`enumerate_primary`].
pub const MAX_FILTER_UNIVERSE: usize = 20;
/// Largest algebra accepted by [`enumerate_primary_naive`].
pub const MAX_NAIVE_UNIVERSE: usize = 12;
/// Largest family of closed sets [`closed_sets`] will build.
pub const MAX_CLOSED_FAMILY: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentationError {
    #[error("not a double Boolean algebra: axiom `{0}` fails")]
    NotDba(String),
    #[error("algebra has {size} elements; the limit here is {max}")]
    TooLarge { size: usize, max: usize },
    #[error("closed-set family exceeds {0} members")]
    FamilyTooLarge(usize),
    #[error("{0} is not well defined on representatives")]
    IllDefined(&'static str),
    #[error("not applicable: {0}")]
    NotApplicable(&'static str),
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterKind {
    Filter,
    Ideal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterSet {
    pub kind: FilterKind,
    pub members: u64,
    pub proper: bool,
    pub primary: bool,
}

fn full(alg: &FiniteAlgebra) -> u64 {
    if alg.size() == 64 {
        u64::MAX
    } else {
        (1u64 << alg.size()) - 1
    }
}

fn has(s: u64, x: Elem) -> bool {
    s >> x & 1 == 1
}

fn members(s: u64) -> impl Iterator<Item = Elem> {
    (0..64).filter(move |&i| has(s, i))
}

/// Closed under ⊓ and upward closed under ⊑.
pub fn is_filter(alg: &FiniteAlgebra, s: u64) -> bool {
    let order = alg.quasi_order();
    members(s).all(|x| {
        members(s).all(|y| has(s, alg.meet(x, y))) && alg.elements().all(|z| !order.holds(x, z) || has(s, z))
    })
}

/// Closed under ⊔ and downward closed under ⊑.
pub fn is_ideal(alg: &FiniteAlgebra, s: u64) -> bool {
    let order = alg.quasi_order();
    members(s).all(|x| {
        members(s).all(|y| has(s, alg.join(x, y))) && alg.elements().all(|z| !order.holds(z, x) || has(s, z))
    })
}

/// Nonempty proper filter (ideal) containing x or ¬x (x or ⌟x) for every x.
pub fn is_primary(alg: &FiniteAlgebra, s: u64, kind: FilterKind) -> bool {
    let closed = match kind {
        FilterKind::Filter => is_filter(alg, s),
        FilterKind::Ideal => is_ideal(alg, s),
    };
    let flip = |x| match kind {
        FilterKind::Filter => alg.neg(x),
        FilterKind::Ideal => alg.opp(x),
    };
    s != 0 && s != full(alg) && closed && alg.elements().all(|x| has(s, x) || has(s, flip(x)))
}

fn filter_set(alg: &FiniteAlgebra, kind: FilterKind, members: u64) -> FilterSet {
    FilterSet { kind, members, proper: members != full(alg), primary: true }
}

fn require_dba(alg: &FiniteAlgebra) -> Result<(), RepresentationError> {
    match check_suite(alg, SuiteId::Dba23).first_failure() {
        Some(id) => Err(RepresentationError::NotDba(id.to_string())),
        None => Ok(()),
    }
}

/// Every primary filter or ideal by testing all subsets. Oracle for small sizes.
pub fn enumerate_primary_naive(alg: &FiniteAlgebra, kind: FilterKind) -> Result<Vec<FilterSet>, RepresentationError> {
    if alg.size() > MAX_NAIVE_UNIVERSE {
        return Err(RepresentationError::TooLarge { size: alg.size(), max: MAX_NAIVE_UNIVERSE });
    }
    Ok((0..=full(alg)).filter(|&s| is_primary(alg, s, kind)).map(|s| filter_set(alg, kind, s)).collect())
}

struct Propagator {
    n: usize,
    /// up[x]: elements z with x ⊑ z (filters) or z ⊑ x (ideals).
    up: Vec<u64>,
    /// down[x]: the opposite direction.
    down: Vec<u64>,
    op: Vec<Elem>,
    flip: Vec<Elem>,
}

impl Propagator {
    fn new(alg: &FiniteAlgebra, kind: FilterKind) -> Propagator {
        let n = alg.size();
        let order = alg.quasi_order();
        let above = |x: Elem| alg.elements().filter(|&z| order.holds(x, z)).fold(0u64, |m, z| m | 1 << z);
        let below = |x: Elem| alg.elements().filter(|&z| order.holds(z, x)).fold(0u64, |m, z| m | 1 << z);
        let (up, down): (Vec<u64>, Vec<u64>) = match kind {
            FilterKind::Filter => (alg.elements().map(above).collect(), alg.elements().map(below).collect()),
            FilterKind::Ideal => (alg.elements().map(below).collect(), alg.elements().map(above).collect()),
        };
        let op = match kind {
            FilterKind::Filter => alg.meet_table().to_vec(),
            FilterKind::Ideal => alg.join_table().to_vec(),
        };
        let flip = match kind {
            FilterKind::Filter => alg.neg_map().to_vec(),
            FilterKind::Ideal => alg.opp_map().to_vec(),
        };
        Propagator { n, up, down, op, flip }
    }

    /// Close (inside, outside) under the consequences of being primary.
    /// False on a contradiction.
    fn close(&self, inside: &mut u64, outside: &mut u64) -> bool {
        loop {
            let (i0, o0) = (*inside, *outside);
            for x in members(*inside) {
                *inside |= self.up[x];
                for y in members(*inside) {
                    *inside |= 1 << self.op[x * self.n + y];
                }
            }
            for x in members(*outside) {
                *outside |= self.down[x];
                *inside |= 1 << self.flip[x];
            }
            for x in 0..self.n {
                if has(*outside, self.flip[x]) {
                    *inside |= 1 << x;
                }
            }
            if *inside & *outside != 0 {
                return false;
            }
            if (*inside, *outside) == (i0, o0) {
                return true;
            }
        }
    }

    fn search(&self, x: Elem, inside: u64, outside: u64, found: &mut Vec<u64>) {
        let decided = inside | outside;
        let Some(next) = (x..self.n).find(|&y| !has(decided, y)) else {
            found.push(inside);
            return;
        };
        for choose_in in [false, true] {
            let (mut i, mut o) = (inside, outside);
            if choose_in {
                i |= 1 << next;
            } else {
                o |= 1 << next;
            }
            if self.close(&mut i, &mut o) {
                self.search(next + 1, i, o, found);
            }
        }
    }
}

/// Every primary filter (or ideal) in ascending member-mask order. The
/// search assigns elements one at a time and propagates upward closure,
/// closure under ⊓ (⊔) and the primality condition; each complete
/// candidate is then checked against the definition.
pub fn enumerate_primary(alg: &FiniteAlgebra, kind: FilterKind) -> Result<Vec<FilterSet>, RepresentationError> {
    if alg.size() > MAX_FILTER_UNIVERSE {
        return Err(RepresentationError::TooLarge { size: alg.size(), max: MAX_FILTER_UNIVERSE });
    }
    require_dba(alg)?;
    let prop = Propagator::new(alg, kind);
    let mut found = Vec::new();
    prop.search(0, 0, 0, &mut found);
    found.retain(|&s| is_primary(alg, s, kind));
    found.sort_unstable();
    found.dedup();
    Ok(found.into_iter().map(|s| filter_set(alg, kind, s)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Incidence {
    /// F Δ I iff F ∩ I ≠ ∅.
    Delta,
    /// F ∇ I iff F ∩ I = ∅.
    Nabla,
}

#[derive(Debug, Clone)]
pub struct StandardContext {
    pub filters: Vec<FilterSet>,
    pub ideals: Vec<FilterSet>,
    pub variant: Incidence,
    /// Objects `F0, F1, …` are the filters, attributes `I0, I1, …` the ideals.
    pub context: FormalContext,
}

pub fn standard_context(alg: &FiniteAlgebra, variant: Incidence) -> Result<StandardContext, RepresentationError> {
    let filters = enumerate_primary(alg, FilterKind::Filter)?;
    let ideals = enumerate_primary(alg, FilterKind::Ideal)?;
    let context = context_from(&filters, &ideals, variant)?;
    Ok(StandardContext { filters, ideals, variant, context })
}

fn context_from(filters: &[FilterSet], ideals: &[FilterSet], variant: Incidence) -> Result<FormalContext, ContextError> {
    let objects = (0..filters.len()).map(|i| format!("F{i}")).collect();
    let attributes = (0..ideals.len()).map(|i| format!("I{i}")).collect();
    let rows = filters
        .iter()
        .map(|f| {
            ideals.iter().enumerate().fold(0 as Mask, |acc, (j, i)| {
                let meets = f.members & i.members != 0;
                if meets == (variant == Incidence::Delta) {
                    acc | 1 << j
                } else {
                    acc
                }
            })
        })
        .collect();
    FormalContext::from_rows(objects, attributes, rows)
}

/// Everything computed about h(x) = (F_x, I_x).
#[derive(Debug, Clone)]
pub struct Representation {
    pub delta: StandardContext,
    /// F_x as a mask over `delta.filters`, per element.
    pub f: Vec<Mask>,
    /// I_x as a mask over `delta.ideals`, per element.
    pub i: Vec<Mask>,
    /// The distinct pairs (F_x, I_x), in order of first occurrence.
    pub pairs: Vec<(Mask, Mask)>,
    /// h as a map into `pairs`.
    pub h: Vec<Elem>,
    /// The algebra on `pairs` built from its two Boolean parts.
    pub image: FiniteAlgebra,
    pub meet_part: BooleanAlgebraView,
    pub join_part: BooleanAlgebraView,
    pub p_pair: RetractionPair,
    pub q_pair: RetractionPair,
    pub conditions: ConditionReport,
    pub image_is_dba: bool,
    pub homomorphism: bool,
    pub order_preserved_and_reflected: bool,
    pub injective: bool,
    /// Whether every (F_x, I_x) is a protoconcept of the Δ context.
    pub protoconcepts: bool,
    /// Whether h commutes with the protoconcept operations of the Δ context.
    pub protoconcept_homomorphism: bool,
    pub contextual: bool,
}

impl Representation {
    /// h is a bijection onto the pair algebra commuting with the operations.
    pub fn is_isomorphism(&self) -> bool {
        self.injective && self.homomorphism
    }
}

fn mask_of(items: impl Iterator<Item = bool>) -> Mask {
    items.enumerate().fold(0, |acc, (i, b)| if b { acc | 1 << i } else { acc })
}

/// A Boolean part of 𝒟 with operations defined through representatives.
/// `keys[x]` is the pair standing for x; `ops` gives for representatives the
/// element whose key is the result.
fn boolean_part(
    alg: &FiniteAlgebra,
    keys: &[(Mask, Mask)],
    and: impl Fn(Elem, Elem) -> Elem,
    or: impl Fn(Elem, Elem) -> Elem,
    not: impl Fn(Elem) -> Elem,
    top: Elem,
    bot: Elem,
    label: &'static str,
) -> Result<(BooleanAlgebraView, Vec<(Mask, Mask)>), RepresentationError> {
    let mut carrier: Vec<(Mask, Mask)> = Vec::new();
    for k in keys {
        if !carrier.contains(k) {
            carrier.push(*k);
        }
    }
    let pos = |k: &(Mask, Mask)| carrier.iter().position(|c| c == k);
    let reps: Vec<Vec<Elem>> = carrier.iter().map(|c| alg.elements().filter(|&x| keys[x] == *c).collect()).collect();
    let single = |f: &dyn Fn(Elem) -> Elem, a: usize| -> Result<Elem, RepresentationError> {
        let values: BTreeSet<(Mask, Mask)> = reps[a].iter().map(|&x| keys[f(x)]).collect();
        match (values.len(), values.iter().next().and_then(&pos)) {
            (1, Some(p)) => Ok(p),
            _ => Err(RepresentationError::IllDefined(label)),
        }
    };
    let double = |f: &dyn Fn(Elem, Elem) -> Elem, a: usize, b: usize| -> Result<Elem, RepresentationError> {
        let values: BTreeSet<(Mask, Mask)> =
            reps[a].iter().flat_map(|&x| reps[b].iter().map(move |&y| (x, y))).map(|(x, y)| keys[f(x, y)]).collect();
        match (values.len(), values.iter().next().and_then(&pos)) {
            (1, Some(p)) => Ok(p),
            _ => Err(RepresentationError::IllDefined(label)),
        }
    };
    let k = carrier.len();
    let mut meet = Vec::with_capacity(k * k);
    let mut join = Vec::with_capacity(k * k);
    for a in 0..k {
        for b in 0..k {
            meet.push(double(&and, a, b)?);
            join.push(double(&or, a, b)?);
        }
    }
    let neg = (0..k).map(|a| single(&not, a)).collect::<Result<Vec<_>, _>>()?;
    let at = |x: Elem| pos(&keys[x]).ok_or(RepresentationError::IllDefined(label));
    let names = (0..k).map(|a| format!("h({})", alg.name(reps[a][0]))).collect();
    let fa = FiniteAlgebra::new(names, meet, join, neg.clone(), neg, at(top)?, at(bot)?)
        .map_err(ConstructionError::from)?;
    Ok((BooleanAlgebraView::new(fa)?, carrier))
}

pub fn representation(alg: &FiniteAlgebra) -> Result<Representation, RepresentationError> {
    let delta = standard_context(alg, Incidence::Delta)?;
    let f: Vec<Mask> = alg.elements().map(|x| mask_of(delta.filters.iter().map(|s| has(s.members, x)))).collect();
    let i: Vec<Mask> = alg.elements().map(|x| mask_of(delta.ideals.iter().map(|s| has(s.members, x)))).collect();
    let key = |x: Elem| (f[x], i[x]);

    let mut pairs: Vec<(Mask, Mask)> = Vec::new();
    for x in alg.elements() {
        if !pairs.contains(&key(x)) {
            pairs.push(key(x));
        }
    }
    let h: Vec<Elem> = alg.elements().map(|x| pairs.iter().position(|p| *p == key(x)).expect("listed")).collect();
    let n = pairs.len();

    // 𝒟_⊓ = {(F_x, I_{x⊓x})} and 𝒟_⊔ = {(F_{x⊔x}, I_x)}.
    let meet_keys: Vec<(Mask, Mask)> = alg.elements().map(|x| (f[x], i[alg.project_meet(x)])).collect();
    let join_keys: Vec<(Mask, Mask)> = alg.elements().map(|x| (f[alg.project_join(x)], i[x])).collect();
    let (meet_part, meet_carrier) = boolean_part(
        alg,
        &meet_keys,
        |x, y| alg.meet(x, y),
        |x, y| alg.vee(x, y),
        |x| alg.neg(x),
        alg.neg(alg.bot()),
        alg.bot(),
        "the meet-side Boolean part",
    )?;
    let (join_part, join_carrier) = boolean_part(
        alg,
        &join_keys,
        |x, y| alg.wedge(x, y),
        |x, y| alg.join(x, y),
        |x| alg.opp(x),
        alg.top(),
        alg.opp(alg.top()),
        "the join-side Boolean part",
    )?;

    // r(F_x, I_x) = (F_x, I_{x⊓x}), e(F_x, I_{x⊓x}) = (F_{x⊓x}, I_{x⊓x}); dually for r', e'.
    let well_defined = |keys: &[(Mask, Mask)], carrier: &[(Mask, Mask)], label| {
        (0..n)
            .map(|a| {
                let images: BTreeSet<usize> = alg
                    .elements()
                    .filter(|&x| h[x] == a)
                    .map(|x| carrier.iter().position(|c| *c == keys[x]).expect("listed"))
                    .collect();
                if images.len() == 1 {
                    Ok(*images.iter().next().expect("one image"))
                } else {
                    Err(RepresentationError::IllDefined(label))
                }
            })
            .collect::<Result<Vec<_>, _>>()
    };
    let r = well_defined(&meet_keys, &meet_carrier, "r")?;
    let r2 = well_defined(&join_keys, &join_carrier, "r'")?;
    let section = |carrier: &[(Mask, Mask)], project: &dyn Fn(Elem) -> Elem, keys: &[(Mask, Mask)]| {
        carrier
            .iter()
            .map(|c| {
                let x = alg.elements().find(|&x| keys[x] == *c).expect("carrier comes from keys");
                h[project(x)]
            })
            .collect::<Vec<_>>()
    };
    let e = section(&meet_carrier, &|x| alg.project_meet(x), &meet_keys);
    let e2 = section(&join_carrier, &|x| alg.project_join(x), &join_keys);
    let p_pair = RetractionPair::new(n, meet_part.clone(), r, e)?;
    let q_pair = RetractionPair::new(n, join_part.clone(), r2, e2)?;
    let conditions = check_theorem_conditions(&p_pair, &q_pair, TheoremVersion::New)?;
    let names = pairs
        .iter()
        .enumerate()
        .map(|(a, _)| format!("h({})", alg.name(h.iter().position(|&v| v == a).expect("h is onto"))))
        .collect();
    let image = build_named(names, &p_pair, &q_pair)?;
    let image_is_dba = check_suite(&image, SuiteId::Dba23).passes();

    let homomorphism = alg.is_homomorphism(&image, &h);
    let (alg_order, img_order) = (alg.quasi_order(), image.quasi_order());
    let order_preserved_and_reflected =
        alg.elements().all(|x| alg.elements().all(|y| alg_order.holds(x, y) == img_order.holds(h[x], h[y])));
    let injective = n == alg.size();

    let ctx = &delta.context;
    let protoconcepts = alg.elements().all(|x| ctx.pair(f[x], i[x]).is(PairKind::Protoconcept));
    let (g_all, m_all) = (ctx.all_objects(), ctx.all_attributes());
    let p_meet = |a: (Mask, Mask), b: (Mask, Mask)| (a.0 & b.0, ctx.derive_objects(a.0 & b.0));
    let p_join = |a: (Mask, Mask), b: (Mask, Mask)| (ctx.derive_attributes(a.1 & b.1), a.1 & b.1);
    let p_neg = |a: (Mask, Mask)| (g_all & !a.0, ctx.derive_objects(g_all & !a.0));
    let p_opp = |a: (Mask, Mask)| (ctx.derive_attributes(m_all & !a.1), m_all & !a.1);
    let protoconcept_homomorphism = key(alg.top()) == (g_all, 0)
        && key(alg.bot()) == (0, m_all)
        && alg.elements().all(|x| {
            key(alg.neg(x)) == p_neg(key(x))
                && key(alg.opp(x)) == p_opp(key(x))
                && alg.elements().all(|y| {
                    key(alg.meet(x, y)) == p_meet(key(x), key(y)) && key(alg.join(x, y)) == p_join(key(x), key(y))
                })
        });

    Ok(Representation {
        contextual: classify(alg).is_contextual,
        delta,
        f,
        i,
        pairs,
        h,
        image,
        meet_part,
        join_part,
        p_pair,
        q_pair,
        conditions,
        image_is_dba,
        homomorphism,
        order_preserved_and_reflected,
        injective,
        protoconcepts,
        protoconcept_homomorphism,
    })
}

/// Violations of the six identities relating F_x, I_x and the derivations of
/// the Δ context, over all elements and pairs.
pub fn derivation_identity_failures(alg: &FiniteAlgebra, rep: &Representation) -> Vec<String> {
    let ctx = &rep.delta.context;
    let (f, i) = (&rep.f, &rep.i);
    let (all_f, all_i) = (ctx.all_objects(), ctx.all_attributes());
    let pm = |x: Elem| alg.project_meet(x);
    let pj = |x: Elem| alg.project_join(x);
    let name = |x: Elem| alg.name(x).to_string();
    let mut out = Vec::new();
    for x in alg.elements() {
        let fd = ctx.derive_objects(f[x]);
        let id = ctx.derive_attributes(i[x]);
        if pm(x) == x && !(fd == i[x] && i[x] == i[pj(x)]) {
            out.push(format!("(1) fails at x={}", name(x)));
        }
        if pj(x) == x && !(id == f[x] && f[x] == f[pm(x)]) {
            out.push(format!("(2) fails at y={}", name(x)));
        }
        if !(fd == i[pm(x)] && i[pm(x)] == i[pj(pm(x))] && id == f[pj(x)] && f[pj(x)] == f[pm(pj(x))]) {
            out.push(format!("(3) fails at x={}", name(x)));
        }
        if !(all_f & !f[x] == f[alg.neg(x)] && all_i & !i[x] == i[alg.opp(x)]) {
            out.push(format!("(4) fails at x={}", name(x)));
        }
        if i[pj(x)] != i[x] {
            out.push(format!("(5) I of x⊔x differs from I of x at x={}", name(x)));
        }
        if f[pm(x)] != f[x] {
            out.push(format!("(6) F of x⊓x differs from F of x at x={}", name(x)));
        }
        for y in alg.elements() {
            if i[x] & i[y] != i[alg.join(x, y)] {
                out.push(format!("(5) fails at x={} y={}", name(x), name(y)));
            }
            if f[x] & f[y] != f[alg.meet(x, y)] {
                out.push(format!("(6) fails at x={} y={}", name(x), name(y)));
            }
        }
    }
    out
}

/// Closure of `subbase` (plus ∅ and `universe`) under binary union and
/// intersection: the closed sets of the topology it generates.
pub fn closed_sets(subbase: &[Mask], universe: Mask) -> Result<BTreeSet<Mask>, RepresentationError> {
    let mut family: BTreeSet<Mask> = subbase.iter().copied().chain([0, universe]).collect();
    let mut frontier: Vec<Mask> = family.iter().copied().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        let current: Vec<Mask> = family.iter().copied().collect();
        for &a in &frontier {
            for &b in &current {
                for c in [a | b, a & b] {
                    if family.insert(c) {
                        next.push(c);
                        if family.len() > MAX_CLOSED_FAMILY {
                            return Err(RepresentationError::FamilyTooLarge(MAX_CLOSED_FAMILY));
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(family)
}

/// Members of a closed-set family whose complement is also closed.
pub fn clopens(closed: &BTreeSet<Mask>, universe: Mask) -> BTreeSet<Mask> {
    closed.iter().copied().filter(|&s| closed.contains(&(universe & !s))).collect()
}

#[derive(Debug, Clone)]
pub struct Topology {
    pub closed_filters: BTreeSet<Mask>,
    pub closed_ideals: BTreeSet<Mask>,
    pub clopen_filters: BTreeSet<Mask>,
    pub clopen_ideals: BTreeSet<Mask>,
}

impl Topology {
    /// Whether the clopen sets are exactly {F_x} and {I_x}.
    pub fn clopens_are_the_principal_sets(&self, rep: &Representation) -> bool {
        let fx: BTreeSet<Mask> = rep.f.iter().copied().collect();
        let ix: BTreeSet<Mask> = rep.i.iter().copied().collect();
        self.clopen_filters == fx && self.clopen_ideals == ix
    }
}

pub fn topology(rep: &Representation) -> Result<Topology, RepresentationError> {
    let ctx = &rep.delta.context;
    let closed_filters = closed_sets(&rep.f, ctx.all_objects())?;
    let closed_ideals = closed_sets(&rep.i, ctx.all_attributes())?;
    Ok(Topology {
        clopen_filters: clopens(&closed_filters, ctx.all_objects()),
        clopen_ideals: clopens(&closed_ideals, ctx.all_attributes()),
        closed_filters,
        closed_ideals,
    })
}

/// Whether `ctx`'s relation and its converse are continuous for the
/// topologies with the given closed sets: the modal images of closed sets
/// are closed and those of open sets are open.
pub fn relation_is_continuous(ctx: &FormalContext, closed_g: &BTreeSet<Mask>, closed_m: &BTreeSet<Mask>) -> bool {
    let (all_g, all_m) = (ctx.all_objects(), ctx.all_attributes());
    let open_g: BTreeSet<Mask> = closed_g.iter().map(|s| all_g & !s).collect();
    let open_m: BTreeSet<Mask> = closed_m.iter().map(|s| all_m & !s).collect();
    let forward = |from: &BTreeSet<Mask>, to: &BTreeSet<Mask>| {
        from.iter().all(|&b| to.contains(&ctx.modal(Modal::DiamondP, b)) && to.contains(&ctx.modal(Modal::BoxP, b)))
    };
    let backward = |from: &BTreeSet<Mask>, to: &BTreeSet<Mask>| {
        from.iter().all(|&a| to.contains(&ctx.modal(Modal::DiamondO, a)) && to.contains(&ctx.modal(Modal::BoxO, a)))
    };
    forward(closed_m, closed_g) && forward(&open_m, &open_g) && backward(closed_g, closed_m) && backward(&open_g, &open_m)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClopenPart {
    /// Clopen pairs of the requested kind found in the Δ context.
    pub found: usize,
    /// Whether they are exactly the pairs (F_x, I_x).
    pub matches_image: bool,
    /// Whether the protoconcept operations on them give an algebra
    /// isomorphic to the input via h.
    pub isomorphic: bool,
}

impl ClopenPart {
    pub fn passes(&self) -> bool {
        self.matches_image && self.isomorphic
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClopenVerdict {
    /// Clopen protoconcepts, checked for fully contextual algebras.
    pub protoconcepts: Option<ClopenPart>,
    /// Clopen semiconcepts, checked for pure algebras.
    pub semiconcepts: Option<ClopenPart>,
    /// Whether the ∇ context is a CTSCR, i.e. the Δ context is a
    /// translated-CTSCR.
    pub translated_ctscr: bool,
    /// Whether the clopen families equal {F_x} and {I_x}.
    pub clopens_principal: bool,
}

impl ClopenVerdict {
    pub fn passes(&self) -> bool {
        self.protoconcepts.as_ref().is_none_or(ClopenPart::passes)
            && self.semiconcepts.as_ref().is_none_or(ClopenPart::passes)
            && self.translated_ctscr
            && self.clopens_principal
    }
}

fn clopen_part(
    alg: &FiniteAlgebra,
    rep: &Representation,
    top: &Topology,
    kind: PairKind,
) -> ClopenPart {
    let ctx = &rep.delta.context;
    let found: Vec<_> = top
        .clopen_filters
        .iter()
        .flat_map(|&a| top.clopen_ideals.iter().map(move |&b| ctx.pair(a, b)))
        .filter(|p| p.is(kind))
        .collect();
    let found_set: BTreeSet<(Mask, Mask)> = found.iter().map(|p| (p.extent, p.intent)).collect();
    let image_set: BTreeSet<(Mask, Mask)> = rep.pairs.iter().copied().collect();
    let matches_image = found_set == image_set;
    let isomorphic = match protoconcept_operations_on(ctx, found.clone()) {
        Some(pa) if rep.injective => {
            let map: Vec<Elem> = alg
                .elements()
                .map(|x| pa.index_of(rep.f[x], rep.i[x]).unwrap_or(usize::MAX))
                .collect();
            map.iter().all(|&v| v != usize::MAX) && alg.is_isomorphism(&pa.algebra, &map)
        }
        _ => false,
    };
    ClopenPart { found: found.len(), matches_image, isomorphic }
}

/// Check the clopen characterizations: for fully contextual algebras the
/// clopen protoconcepts of the Δ context are exactly the pairs (F_x, I_x)
/// and form an algebra isomorphic to the input; for pure algebras the same
/// holds for clopen semiconcepts.
pub fn verify_clopen_characterization(alg: &FiniteAlgebra) -> Result<ClopenVerdict, RepresentationError> {
    require_dba(alg)?;
    let report = classify(alg);
    if !report.is_fully_contextual && !report.is_pure {
        return Err(RepresentationError::NotApplicable("the algebra is neither fully contextual nor pure"));
    }
    let rep = representation(alg)?;
    let top = topology(&rep)?;
    let nabla = context_from(&rep.delta.filters, &rep.delta.ideals, Incidence::Nabla)?;
    Ok(ClopenVerdict {
        protoconcepts: report.is_fully_contextual.then(|| clopen_part(alg, &rep, &top, PairKind::Protoconcept)),
        semiconcepts: report.is_pure.then(|| clopen_part(alg, &rep, &top, PairKind::Semiconcept)),
        translated_ctscr: relation_is_continuous(&nabla, &top.closed_filters, &top.closed_ideals),
        clopens_principal: top.clopens_are_the_principal_sets(&rep),
    })
}
