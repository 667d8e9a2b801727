use dbakit::algebra::classify;
use dbakit::axioms::{check_identity_catalog, passes_suite, SuiteId};
use dbakit::constructions::{
    build_from_boolean_pair, check_theorem_conditions, generalized_glued_sum, glued_sum, powerset_boolean,
    BooleanAlgebraView, RetractionPair, TheoremVersion,
};
use dbakit::Elem;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every embedding-retraction pair from a carrier of size `n` onto `target`.
fn all_pairs(n: usize, target: &BooleanAlgebraView) -> Vec<RetractionPair> {
    let t = target.size();
    let mut out = Vec::new();
    for code in 0..t.pow(n as u32) {
        let r: Vec<Elem> = (0..n).map(|i| code / t.pow(i as u32) % t).collect();
        let fibers: Vec<Vec<Elem>> = (0..t).map(|p| (0..n).filter(|&x| r[x] == p).collect()).collect();
        if fibers.iter().any(Vec::is_empty) {
            continue;
        }
        let mut choice = vec![0; t];
        loop {
            let e = (0..t).map(|p| fibers[p][choice[p]]).collect();
            out.push(RetractionPair::new(n, target.clone(), r.clone(), e).expect("section of r"));
            let mut i = 0;
            while i < t {
                choice[i] += 1;
                if choice[i] < fibers[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == t {
                break;
            }
        }
    }
    out
}

fn booleans_up_to(n: usize) -> Vec<BooleanAlgebraView> {
    (0..=2).map(|k| powerset_boolean(k).unwrap()).filter(|b| b.size() <= n).collect()
}

#[test]
fn new_conditions_hold_exactly_when_the_result_is_a_dba() {
    let mut checked = 0;
    let mut dbas = 0;
    for n in 1..=4 {
        let bools = booleans_up_to(n);
        for p_alg in &bools {
            for q_alg in &bools {
                let ps = all_pairs(n, p_alg);
                let qs = all_pairs(n, q_alg);
                for p in &ps {
                    for q in &qs {
                        let alg = build_from_boolean_pair(p, q).unwrap();
                        let is_dba = passes_suite(&alg, SuiteId::Dba23);
                        let new = check_theorem_conditions(p, q, TheoremVersion::New).unwrap();
                        assert_eq!(new.passes(), is_dba, "n={n} r={:?} e={:?} r'={:?} e'={:?}", p.r, p.e, q.r, q.e);
                        if is_dba {
                            dbas += 1;
                            let old = check_theorem_conditions(p, q, TheoremVersion::Old).unwrap();
                            assert!(old.passes(), "constant condition not implied");
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    println!("{checked} instances, {dbas} double Boolean algebras");
    assert!(dbas > 0);
}

/// Random instance on a carrier of size 4 with P, Q drawn from 1, 2 and 4 elements.
fn random_instance(rng: &mut ChaCha8Rng) -> (RetractionPair, RetractionPair) {
    let n = 4;
    let pair = |rng: &mut ChaCha8Rng| {
        let target = powerset_boolean(rng.gen_range(0..=2)).unwrap();
        let t = target.size();
        loop {
            let r: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..t)).collect();
            let fibers: Vec<Vec<Elem>> = (0..t).map(|p| (0..n).filter(|&x| r[x] == p).collect()).collect();
            if fibers.iter().all(|f| !f.is_empty()) {
                let e = fibers.iter().map(|f| f[rng.gen_range(0..f.len())]).collect();
                return RetractionPair::new(n, target, r, e).unwrap();
            }
        }
    };
    (pair(rng), pair(rng))
}

/// Move one value of `r` (and repair `e` so the retraction law survives).
/// None when no valid neighbour turned up, e.g. when `r` is a bijection.
fn perturb(rng: &mut ChaCha8Rng, pair: &RetractionPair) -> Option<RetractionPair> {
    let (n, t) = (pair.carrier(), pair.target.size());
    for _ in 0..64 {
        let mut r = pair.r.clone();
        let mut e = pair.e.clone();
        let x = rng.gen_range(0..n);
        r[x] = rng.gen_range(0..t);
        let p = rng.gen_range(0..t);
        let fiber: Vec<Elem> = (0..n).filter(|&y| r[y] == p).collect();
        if !fiber.is_empty() {
            e[p] = fiber[rng.gen_range(0..fiber.len())];
        }
        if let Ok(out) = RetractionPair::new(n, pair.target.clone(), r, e) {
            if out != *pair {
                return Some(out);
            }
        }
    }
    None
}

#[test]
fn perturbations_that_break_the_conditions_break_the_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x05ee_dd8a);
    // Start from valid instances: canonical glued-sum pairs.
    let bases: Vec<(RetractionPair, RetractionPair)> = [(1, 1), (2, 1), (1, 2), (0, 1)]
        .iter()
        .map(|&(kp, kq)| {
            let (p, q) = (powerset_boolean(kp).unwrap(), powerset_boolean(kq).unwrap());
            let g = generalized_glued_sum(&p, &q, &[(p.top(), q.bot())]).unwrap();
            (g.p_pair, g.q_pair)
        })
        .collect();
    let mut broken = 0;
    let mut draws = 0;
    while broken < 100 {
        draws += 1;
        assert!(draws < 100_000, "too few failing perturbations");
        let (p, q) = &bases[rng.gen_range(0..bases.len())];
        let (p2, q2) = if rng.gen_bool(0.5) {
            let Some(p2) = perturb(&mut rng, p) else { continue };
            (p2, q.clone())
        } else {
            let Some(q2) = perturb(&mut rng, q) else { continue };
            (p.clone(), q2)
        };
        let report = check_theorem_conditions(&p2, &q2, TheoremVersion::New).unwrap();
        let is_dba = passes_suite(&build_from_boolean_pair(&p2, &q2).unwrap(), SuiteId::Dba23);
        assert_eq!(report.passes(), is_dba);
        if !report.passes() {
            broken += 1;
        }
    }
    // Random instances on four elements also respect the biconditional.
    for _ in 0..300 {
        let (p, q) = random_instance(&mut rng);
        let is_dba = passes_suite(&build_from_boolean_pair(&p, &q).unwrap(), SuiteId::Dba23);
        assert_eq!(check_theorem_conditions(&p, &q, TheoremVersion::New).unwrap().passes(), is_dba);
    }
}

#[test]
fn glued_sums_of_powersets_are_pure_and_trivial() {
    for kp in [0, 1, 2, 4] {
        for kq in [0, 1, 2, 4] {
            let (p, q) = (powerset_boolean(kp).unwrap(), powerset_boolean(kq).unwrap());
            let alg = glued_sum(&p, &q).unwrap();
            assert_eq!(alg.size(), p.size() + q.size() - 1);
            let r = classify(&alg);
            assert!(r.is_dba && r.is_pure && r.is_trivial, "{kp}+{kq}");
            assert!(check_identity_catalog(&alg).is_empty());
        }
    }
}

/// Every injective partial matching between the elements of P and Q.
fn overlaps(np: usize, nq: usize) -> Vec<Vec<(Elem, Elem)>> {
    fn go(x: usize, np: usize, nq: usize, used: &mut Vec<bool>, cur: &mut Vec<(Elem, Elem)>, out: &mut Vec<Vec<(Elem, Elem)>>) {
        if x == np {
            out.push(cur.clone());
            return;
        }
        go(x + 1, np, nq, used, cur, out);
        for y in 0..nq {
            if !used[y] {
                used[y] = true;
                cur.push((x, y));
                go(x + 1, np, nq, used, cur, out);
                cur.pop();
                used[y] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(0, np, nq, &mut vec![false; nq], &mut Vec::new(), &mut out);
    out
}

#[test]
fn generalized_glued_sums_over_all_overlaps() {
    let bools: Vec<_> = (0..=2).map(|k| powerset_boolean(k).unwrap()).collect();
    let mut with_bounds = 0;
    for p in &bools {
        for q in &bools {
            for overlap in overlaps(p.size(), q.size()) {
                let g = generalized_glued_sum(p, q, &overlap).unwrap();
                let shares_bounds = g.in_q(g.p_index[p.top()]) && g.in_p(g.q_index[q.bot()]);
                if shares_bounds {
                    with_bounds += 1;
                    assert!(passes_suite(&g.algebra, SuiteId::Gdcore11), "overlap {overlap:?}");
                }
                let glued = overlap == [(p.top(), q.bot())];
                if glued {
                    assert!(passes_suite(&g.algebra, SuiteId::Dba23));
                }
                // The two orders agree on linear and glued sums; larger
                // overlaps put shared elements of P below shared elements of
                // Q in the generalized order but not in ⊑.
                let agree = g.order_mismatches().is_empty();
                assert_eq!(agree, overlap.is_empty() || glued, "overlap {overlap:?}: {:?}", g.order_mismatches());
            }
        }
    }
    assert!(with_bounds > 0);
}

#[test]
fn shared_interior_element_separates_the_two_orders() {
    let b = powerset_boolean(1).unwrap();
    let g = generalized_glued_sum(&b, &b, &[(0, 0), (1, 1)]).unwrap();
    // 1 ∈ P and 0 ∈ Q, so 1 ≤ 0 in the generalized order, while 1⊓0 = 0 ≠ 1 = 1⊓1.
    assert!(g.order.holds(1, 0));
    assert!(!g.algebra.quasi_order().holds(1, 0));
    assert_eq!(g.order_mismatches(), vec![(1, 0)]);
}
