//! Iterative-deepening backward proof search.
//!
//! Cut is only tried with middle formulas read off an axiom or lemma
//! instance at one end of the goal, or with the mixed terms C⊓B and A⊓D for
//! goals A⊓B ⇒ C⊓D (and likewise for ⊔), which chain one (⊓R) step with one
//! (⊓L) step. Rule (⊑) is tried only when all four premises stay inside the
//! subformulas of the root goal closed under one extra ⊓ or ⊔.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::rc::Rc;

use super::check::{check_proof_with, sp_instance, sq_premises, ProofScript, Rule, ScriptLine};
use super::schema::{match_sequent, match_with, schemas_for, Binding};
use super::scripts::fixture_proofs;
use super::syntax::{Hypersequent, Sequent, System};
use crate::term::{Sort, Term};

/// A proved sequent usable as a cut lemma, with its proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma {
    pub name: String,
    pub statement: Sequent,
    pub proof: ProofScript,
}

impl Lemma {
    /// The lemma stated by a script's last line, which must be a sequent.
    pub fn from_script(name: &str, proof: ProofScript) -> Option<Lemma> {
        let statement = proof.conclusion()?.as_sequent()?.clone();
        Some(Lemma { name: name.to_string(), statement, proof })
    }

    /// One of the built-in named scripts as a lemma.
    pub fn fixture(name: &str) -> Option<Lemma> {
        let (_, script) = fixture_proofs().into_iter().find(|(n, _)| *n == name)?;
        Lemma::from_script(name, script)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProofSearchConfig {
    /// Largest derivation height tried; axioms have height 0.
    pub depth: usize,
    /// Goals expanded before giving up.
    pub max_nodes: usize,
}

impl Default for ProofSearchConfig {
    fn default() -> Self {
        ProofSearchConfig { depth: 8, max_nodes: 200_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofSearchOutcome {
    Found { script: ProofScript, depth: usize, nodes: usize },
    /// No derivation within the depth bound; `budget_exhausted` when the
    /// node budget ran out first.
    NotFound { nodes: usize, budget_exhausted: bool },
}

impl ProofSearchOutcome {
    pub fn script(&self) -> Option<&ProofScript> {
        match self {
            ProofSearchOutcome::Found { script, .. } => Some(script),
            ProofSearchOutcome::NotFound { .. } => None,
        }
    }
}

#[derive(Debug)]
enum Node {
    Leaf { concl: Hypersequent, rule: Rule },
    Lemma { concl: Sequent, lemma: usize, bind: Binding },
    Step { concl: Hypersequent, rule: Rule, premises: Vec<Rc<Node>> },
}

impl Node {
    fn height(&self) -> usize {
        match self {
            Node::Leaf { .. } | Node::Lemma { .. } => 0,
            Node::Step { premises, .. } => 1 + premises.iter().map(|p| p.height()).max().unwrap_or(0),
        }
    }
}

fn step(concl: impl Into<Hypersequent>, rule: Rule, premises: Vec<Rc<Node>>) -> Rc<Node> {
    Rc::new(Node::Step { concl: concl.into(), rule, premises })
}

struct Prover<'a> {
    system: System,
    lemmas: &'a [Lemma],
    subformulas: Vec<Term>,
    closure: HashSet<Term>,
    size_cap: usize,
    failed: HashMap<Sequent, usize>,
    proved: HashMap<Sequent, Rc<Node>>,
    nodes: usize,
    max_nodes: usize,
    exhausted: bool,
}

fn accepts_sorted(meta: &str, t: &Term) -> bool {
    match meta {
        "p" => matches!(t, Term::Var(_, Sort::Object)),
        "P" => matches!(t, Term::Var(_, Sort::Property)),
        _ => true,
    }
}

impl<'a> Prover<'a> {
    fn new(goal: &Hypersequent, system: System, lemmas: &'a [Lemma], max_nodes: usize) -> Prover<'a> {
        let mut subs = BTreeSet::new();
        for s in goal.components() {
            subs.extend(s.lhs.subterms());
            subs.extend(s.rhs.subterms());
        }
        let subformulas: Vec<Term> = subs.into_iter().collect();
        let mut closure: HashSet<Term> = subformulas.iter().cloned().collect();
        for a in &subformulas {
            for b in &subformulas {
                closure.insert(Term::meet(a.clone(), b.clone()));
                closure.insert(Term::join(a.clone(), b.clone()));
            }
        }
        let biggest = goal.components().iter().map(|s| s.lhs.size().max(s.rhs.size())).max().unwrap_or(1);
        Prover {
            system,
            lemmas,
            subformulas,
            closure,
            size_cap: 2 * biggest + 4,
            failed: HashMap::new(),
            proved: HashMap::new(),
            nodes: 0,
            max_nodes,
            exhausted: false,
        }
    }

    fn immediate(&self, s: &Sequent) -> Option<Rc<Node>> {
        if s.lhs == s.rhs {
            return Some(Rc::new(Node::Leaf { concl: s.clone().into(), rule: Rule::IdAxiom }));
        }
        if let Some(ax) = schemas_for(self.system).find(|a| a.matches(s).is_some()) {
            return Some(Rc::new(Node::Leaf { concl: s.clone().into(), rule: Rule::Axiom(ax.id.to_string()) }));
        }
        self.lemmas.iter().enumerate().find_map(|(k, l)| {
            match_sequent(&l.statement, s).map(|bind| Rc::new(Node::Lemma { concl: s.clone(), lemma: k, bind }))
        })
    }

    /// Instances of `other` under `bind`, filling unbound metavariables
    /// with subformulas of the root goal.
    fn fill(&self, other: &Term, bind: &Binding, sorted: bool, out: &mut Vec<Term>) {
        let free: Vec<String> = other.variables().into_iter().filter(|v| !bind.contains_key(v)).collect();
        if free.len() > 2 {
            return;
        }
        let mut binds = vec![bind.clone()];
        for v in &free {
            let mut next = Vec::new();
            for b in &binds {
                for t in &self.subformulas {
                    if !sorted || accepts_sorted(v, t) {
                        let mut b2 = b.clone();
                        b2.insert(v.clone(), t.clone());
                        next.push(b2);
                    }
                }
            }
            binds = next;
        }
        out.extend(binds.iter().map(|b| other.substitute(b)));
    }

    fn cut_candidates(&self, s: &Sequent) -> Vec<Term> {
        let mut out = Vec::new();
        let sorted_ok = |m: &str, t: &Term| accepts_sorted(m, t);
        let any = |_: &str, _: &Term| true;
        let mut sides: Vec<(&Term, &Term, bool)> =
            self.lemmas.iter().map(|l| (&l.statement.lhs, &l.statement.rhs, false)).collect();
        sides.extend(schemas_for(self.system).filter(|a| a.id != "id").map(|a| (&a.lhs, &a.rhs, true)));
        for (lhs, rhs, sorted) in sides {
            let ok: &dyn Fn(&str, &Term) -> bool = if sorted { &sorted_ok } else { &any };
            let mut bind = Binding::new();
            if match_with(lhs, &s.lhs, &mut bind, ok) {
                self.fill(rhs, &bind, sorted, &mut out);
            }
            let mut bind = Binding::new();
            if match_with(rhs, &s.rhs, &mut bind, ok) {
                self.fill(lhs, &bind, sorted, &mut out);
            }
        }
        match (&s.lhs, &s.rhs) {
            (Term::Meet(a, b), Term::Meet(c, d)) => {
                out.push(Term::meet((**c).clone(), (**b).clone()));
                out.push(Term::meet((**a).clone(), (**d).clone()));
            }
            (Term::Join(a, b), Term::Join(c, d)) => {
                out.push(Term::join((**c).clone(), (**b).clone()));
                out.push(Term::join((**a).clone(), (**d).clone()));
            }
            _ => {}
        }
        let mut seen = HashSet::new();
        out.retain(|m| *m != s.lhs && *m != s.rhs && m.size() <= self.size_cap && seen.insert(m.clone()));
        out
    }

    fn prove(&mut self, s: &Sequent, d: usize) -> Option<Rc<Node>> {
        if let Some(n) = self.proved.get(s) {
            if n.height() <= d {
                return Some(n.clone());
            }
        }
        if self.exhausted {
            return None;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exhausted = true;
            return None;
        }
        if let Some(n) = self.immediate(s) {
            return Some(n);
        }
        if d == 0 || self.failed.get(s).is_some_and(|&f| f >= d) {
            return None;
        }
        let found = self.expand(s, d);
        match &found {
            Some(n) => {
                self.proved.insert(s.clone(), n.clone());
            }
            None if !self.exhausted => {
                self.failed.insert(s.clone(), d);
            }
            None => {}
        }
        found
    }

    fn expand(&mut self, s: &Sequent, d: usize) -> Option<Rc<Node>> {
        let mut unary: Vec<(Rule, Sequent)> = Vec::new();
        match (&s.lhs, &s.rhs) {
            (Term::Meet(a, t1), Term::Meet(b, t2)) | (Term::Join(a, t1), Term::Join(b, t2)) => {
                let is_meet = matches!(s.lhs, Term::Meet(..));
                if t1 == t2 {
                    let r = if is_meet { Rule::MeetR } else { Rule::JoinR };
                    unary.push((r, Sequent::new((**a).clone(), (**b).clone())));
                }
                if a == b {
                    let r = if is_meet { Rule::MeetL } else { Rule::JoinL };
                    unary.push((r, Sequent::new((**t1).clone(), (**t2).clone())));
                }
            }
            (Term::Neg(b), Term::Neg(a)) => unary.push((Rule::Neg, Sequent::new((**a).clone(), (**b).clone()))),
            (Term::Opp(b), Term::Opp(a)) => unary.push((Rule::Opp, Sequent::new((**a).clone(), (**b).clone()))),
            _ => {}
        }
        for (rule, premise) in unary {
            if let Some(p) = self.prove(&premise, d - 1) {
                return Some(step(s.clone(), rule, vec![p]));
            }
        }
        for m in self.cut_candidates(s) {
            let Some(left) = self.prove(&Sequent::new(s.lhs.clone(), m.clone()), d - 1) else { continue };
            if let Some(right) = self.prove(&Sequent::new(m, s.rhs.clone()), d - 1) {
                return Some(step(s.clone(), Rule::Cut, vec![left, right]));
            }
        }
        let premises = sq_premises(s);
        if premises.iter().all(|p| self.closure.contains(&p.lhs) && self.closure.contains(&p.rhs)) {
            let mut proofs = Vec::new();
            for p in &premises {
                proofs.push(self.prove(p, d - 1)?);
            }
            return Some(step(s.clone(), Rule::Sq, proofs));
        }
        None
    }

    /// HL goals with several components: derive one component (or an (Sp)
    /// pair), add the rest by weakening and reorder by exchange.
    fn prove_hyper(&mut self, goal: &Hypersequent, d: usize) -> Option<Rc<Node>> {
        let c = goal.components();
        if let Some(s) = goal.as_sequent() {
            return self.prove(s, d);
        }
        if self.system == System::L {
            return None;
        }
        for i in 0..c.len() {
            for j in 0..c.len() {
                if i != j && sp_instance(&c[i].lhs).components() == [c[i].clone(), c[j].clone()] {
                    let core = Rc::new(Node::Leaf { concl: sp_instance(&c[i].lhs), rule: Rule::Sp });
                    return Some(self.arrange(core, &[i, j], goal));
                }
            }
        }
        for i in 0..c.len() {
            if let Some(core) = self.prove(&c[i], d) {
                return Some(self.arrange(core, &[i], goal));
            }
        }
        None
    }

    fn arrange(&self, core: Rc<Node>, positions: &[usize], goal: &Hypersequent) -> Rc<Node> {
        let c = goal.components();
        let mut order: Vec<usize> = positions.to_vec();
        order.extend((0..c.len()).filter(|k| !positions.contains(k)));
        let mut node = core;
        if order.len() > positions.len() {
            let weakened = Hypersequent::new(order.iter().map(|&k| c[k].clone()).collect()).expect("nonempty");
            node = step(weakened, Rule::Ew, vec![node]);
        }
        // Bubble sort by adjacent exchanges.
        let mut changed = true;
        while changed {
            changed = false;
            for k in 0..order.len() - 1 {
                if order[k] > order[k + 1] {
                    order.swap(k, k + 1);
                    let h = Hypersequent::new(order.iter().map(|&k| c[k].clone()).collect()).expect("nonempty");
                    node = step(h, Rule::Ee, vec![node]);
                    changed = true;
                }
            }
        }
        node
    }
}

struct Emitter<'a> {
    lemmas: &'a [Lemma],
    lines: Vec<ScriptLine>,
    index_of: HashMap<Hypersequent, usize>,
}

impl Emitter<'_> {
    fn push(&mut self, hyper: Hypersequent, rule: Rule, premises: Vec<usize>) -> usize {
        if let Some(&k) = self.index_of.get(&hyper) {
            return k;
        }
        let index = self.lines.len() + 1;
        self.index_of.insert(hyper.clone(), index);
        self.lines.push(ScriptLine { index, hyper, rule, premises });
        index
    }

    fn emit(&mut self, node: &Node) -> usize {
        match node {
            Node::Leaf { concl, rule } => self.push(concl.clone(), rule.clone(), vec![]),
            Node::Lemma { concl, lemma, bind } => {
                let proof = self.lemmas[*lemma].proof.substitute(bind);
                let mut renumber = HashMap::new();
                let mut last = 0;
                for line in proof.lines {
                    let premises = line.premises.iter().map(|p| renumber[p]).collect();
                    last = self.push(line.hyper, line.rule, premises);
                    renumber.insert(line.index, last);
                }
                debug_assert_eq!(self.lines[last - 1].hyper, Hypersequent::single(concl.clone()));
                last
            }
            Node::Step { concl, rule, premises } => {
                let ps = premises.iter().map(|p| self.emit(p)).collect();
                self.push(concl.clone(), rule.clone(), ps)
            }
        }
    }
}

/// Built-in named scripts together with the caller's lemmas, for checking
/// scripts produced by [`search_proof`].
pub fn lemma_library(lemmas: &[Lemma]) -> Vec<(String, ProofScript)> {
    let mut lib: Vec<(String, ProofScript)> =
        fixture_proofs().into_iter().map(|(n, s)| (n.to_string(), s)).collect();
    lib.extend(lemmas.iter().map(|l| (l.name.clone(), l.proof.clone())));
    lib
}

/// Search for a derivation of `goal` of height at most `config.depth`,
/// trying heights 0, 1, 2, … in turn. Lemma proofs are inlined, so the
/// returned script stands on its own.
pub fn search_proof(goal: &Hypersequent, system: System, config: ProofSearchConfig, lemmas: &[Lemma]) -> ProofSearchOutcome {
    let mut prover = Prover::new(goal, system, lemmas, config.max_nodes);
    for d in 0..=config.depth {
        if let Some(node) = prover.prove_hyper(goal, d) {
            let mut em = Emitter { lemmas, lines: Vec::new(), index_of: HashMap::new() };
            em.emit(&node);
            let script = ProofScript { system, lines: em.lines };
            debug_assert!(check_proof_with(&script, &lemma_library(lemmas)).is_ok(), "{script}");
            return ProofSearchOutcome::Found { script, depth: node.height(), nodes: prover.nodes };
        }
        if prover.exhausted {
            break;
        }
    }
    ProofSearchOutcome::NotFound { nodes: prover.nodes, budget_exhausted: prover.exhausted }
}
