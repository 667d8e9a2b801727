use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::schema::{match_sequent, schema, Binding};
use super::scripts::fixture_proofs;
use super::syntax::{parse_hypersequent, Hypersequent, Sequent, System};
use crate::term::{ParseError, Term};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `axiom(<schema>)`
    Axiom(String),
    /// `id-axiom`, the schema φ ⇒ φ.
    IdAxiom,
    /// `lemma(<name>)`: an instance of the conclusion of a named script.
    Lemma(String),
    Cut,
    MeetR,
    MeetL,
    JoinR,
    JoinL,
    Neg,
    Opp,
    /// The four-premise rule (⊑).
    Sq,
    /// φ ⇒ φ⊓φ ; φ⊔φ ⇒ φ, HL only.
    Sp,
    /// External contraction.
    Ec,
    /// External exchange.
    Ee,
    /// External weakening.
    Ew,
}

impl Rule {
    fn parse(word: &str) -> Option<Rule> {
        let inner = |prefix: &str| word.strip_prefix(prefix).and_then(|r| r.strip_suffix(')')).map(str::to_string);
        if let Some(id) = inner("axiom(") {
            return Some(Rule::Axiom(id));
        }
        if let Some(name) = inner("lemma(") {
            return Some(Rule::Lemma(name));
        }
        Some(match word {
            "id-axiom" => Rule::IdAxiom,
            "cut" => Rule::Cut,
            "meetR" => Rule::MeetR,
            "meetL" => Rule::MeetL,
            "joinR" => Rule::JoinR,
            "joinL" => Rule::JoinL,
            "neg" => Rule::Neg,
            "opp" => Rule::Opp,
            "sq" => Rule::Sq,
            "sp" => Rule::Sp,
            "ec" => Rule::Ec,
            "ee" => Rule::Ee,
            "ew" => Rule::Ew,
            _ => return None,
        })
    }

    /// Number of premises the rule takes.
    pub fn arity(&self) -> usize {
        match self {
            Rule::Axiom(_) | Rule::IdAxiom | Rule::Lemma(_) | Rule::Sp => 0,
            Rule::Cut => 2,
            Rule::Sq => 4,
            _ => 1,
        }
    }

    fn hl_only(&self) -> bool {
        matches!(self, Rule::Sp | Rule::Ec | Rule::Ee | Rule::Ew)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Axiom(id) => write!(f, "axiom({id})"),
            Rule::Lemma(name) => write!(f, "lemma({name})"),
            Rule::IdAxiom => f.write_str("id-axiom"),
            Rule::Cut => f.write_str("cut"),
            Rule::MeetR => f.write_str("meetR"),
            Rule::MeetL => f.write_str("meetL"),
            Rule::JoinR => f.write_str("joinR"),
            Rule::JoinL => f.write_str("joinL"),
            Rule::Neg => f.write_str("neg"),
            Rule::Opp => f.write_str("opp"),
            Rule::Sq => f.write_str("sq"),
            Rule::Sp => f.write_str("sp"),
            Rule::Ec => f.write_str("ec"),
            Rule::Ee => f.write_str("ee"),
            Rule::Ew => f.write_str("ew"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptLine {
    pub index: usize,
    pub hyper: Hypersequent,
    pub rule: Rule,
    pub premises: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofScript {
    pub system: System,
    pub lines: Vec<ScriptLine>,
}

impl ProofScript {
    pub fn conclusion(&self) -> Option<&Hypersequent> {
        self.lines.last().map(|l| &l.hyper)
    }

    /// Rename metavariables throughout, e.g. to instantiate a lemma's proof.
    pub fn substitute(&self, bind: &Binding) -> ProofScript {
        let sub = |s: &Sequent| Sequent::new(s.lhs.substitute(bind), s.rhs.substitute(bind));
        ProofScript {
            system: self.system,
            lines: self
                .lines
                .iter()
                .map(|l| ScriptLine {
                    hyper: Hypersequent::new(l.hyper.components().iter().map(sub).collect()).expect("nonempty"),
                    ..l.clone()
                })
                .collect(),
        }
    }
}

impl fmt::Display for ProofScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "system: {}", self.system)?;
        let heads: Vec<String> = self.lines.iter().map(|l| format!("{}: {}", l.index, l.hyper)).collect();
        let width = heads.iter().map(|h| h.chars().count()).max().unwrap_or(0);
        for (l, head) in self.lines.iter().zip(&heads) {
            let pad = width - head.chars().count();
            write!(f, "{head}{:pad$}  {}", "", l.rule)?;
            for p in &l.premises {
                write!(f, " {p}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// Parse a proof script:
///
/// ```text
/// system: L
/// 1: x & y => x      axiom(meet-elim-l)
/// 2: ~x => ~(x & y)  neg 1
/// ```
///
/// The justification is the last rule word on the line followed by premise
/// indices. `axiom <id>` is accepted as a spelling of `axiom(<id>)`.
pub fn parse_script(text: &str) -> Result<ProofScript, ParseError> {
    let mut system = None;
    let mut lines: Vec<ScriptLine> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        if let Some(rest) = content.trim_start().strip_prefix("system:") {
            if system.is_some() || !lines.is_empty() {
                return Err(err(ln, 1, "`system:` must appear once, before the first line"));
            }
            system = Some(rest.trim().parse::<System>().map_err(|m| err(ln, 1, m))?);
            continue;
        }
        let system = system.ok_or_else(|| err(ln, 1, "missing `system: L` or `system: HL` header"))?;
        let (label, body) = content.split_once(':').ok_or_else(|| err(ln, 1, "expected `<index>: <hypersequent> <rule>`"))?;
        let index: usize = label.trim().parse().map_err(|_| err(ln, 1, format!("bad line index `{}`", label.trim())))?;
        if let Some(prev) = lines.last() {
            if index <= prev.index {
                return Err(err(ln, 1, format!("line index {index} does not increase past {}", prev.index)));
            }
        }
        let body_col = label.chars().count() + 2;
        // Words with their byte offsets inside `body`.
        let words: Vec<(usize, &str)> = body
            .split_whitespace()
            .map(|w| (w.as_ptr() as usize - body.as_ptr() as usize, w))
            .collect();
        let rule_pos = (0..words.len())
            .rev()
            .find(|&k| Rule::parse(words[k].1).is_some() || (words[k].1 == "axiom" && k + 1 < words.len()))
            .ok_or_else(|| err(ln, body_col, "no rule name found"))?;
        let (rule, args) = if words[rule_pos].1 == "axiom" {
            (Rule::Axiom(words[rule_pos + 1].1.to_string()), &words[rule_pos + 2..])
        } else {
            (Rule::parse(words[rule_pos].1).expect("found above"), &words[rule_pos + 1..])
        };
        let mut premises = Vec::new();
        for &(off, w) in args {
            for part in w.split(',').filter(|p| !p.is_empty()) {
                let col = body_col + body[..off].chars().count();
                let p: usize = part.parse().map_err(|_| err(ln, col, format!("bad premise index `{part}`")))?;
                premises.push(p);
            }
        }
        let hyper_text = &body[..words[rule_pos].0];
        let hyper = parse_hypersequent(hyper_text, system)
            .map_err(|e| err(ln, body_col + e.column - 1, e.message))?;
        lines.push(ScriptLine { index, hyper, rule, premises });
    }
    let system = system.ok_or_else(|| err(1, 1, "missing `system: L` or `system: HL` header"))?;
    if lines.is_empty() {
        return Err(err(1, 1, "script has no lines"));
    }
    Ok(ProofScript { system, lines })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line} ({rule}): {reason}")]
pub struct CheckFailure {
    pub line: usize,
    pub rule: String,
    pub reason: String,
}

/// Check every line against the built-in library of named scripts.
pub fn check_proof(script: &ProofScript) -> Result<(), CheckFailure> {
    let library: Vec<(String, ProofScript)> =
        fixture_proofs().into_iter().map(|(name, s)| (name.to_string(), s)).collect();
    check_proof_with(script, &library)
}

/// Check every line; `lemma(<name>)` citations resolve against `library`.
pub fn check_proof_with(script: &ProofScript, library: &[(String, ProofScript)]) -> Result<(), CheckFailure> {
    Checker { library, active: Vec::new() }.check(script)
}

struct Checker<'a> {
    library: &'a [(String, ProofScript)],
    /// Lemma names under verification, to refuse circular citations.
    active: Vec<String>,
}

type Comps = [Sequent];

fn concat(parts: &[&Comps]) -> Vec<Sequent> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

/// The conclusion of a one-premise sequent rule applied to `s`.
fn unary_ok(rule: &Rule, p: &Sequent, c: &Sequent) -> bool {
    match (rule, &c.lhs, &c.rhs) {
        (Rule::MeetR, Term::Meet(a, t1), Term::Meet(b, t2)) | (Rule::JoinR, Term::Join(a, t1), Term::Join(b, t2)) => {
            **a == p.lhs && **b == p.rhs && t1 == t2
        }
        (Rule::MeetL, Term::Meet(t1, a), Term::Meet(t2, b)) | (Rule::JoinL, Term::Join(t1, a), Term::Join(t2, b)) => {
            **a == p.lhs && **b == p.rhs && t1 == t2
        }
        (Rule::Neg, Term::Neg(b), Term::Neg(a)) | (Rule::Opp, Term::Opp(b), Term::Opp(a)) => {
            **a == p.lhs && **b == p.rhs
        }
        _ => false,
    }
}

/// The four premises of (⊑) for the conclusion φ ⇒ ψ.
pub(crate) fn sq_premises(s: &Sequent) -> [Sequent; 4] {
    let (f, g) = (&s.lhs, &s.rhs);
    let m = |a: &Term, b: &Term| Term::meet(a.clone(), b.clone());
    let j = |a: &Term, b: &Term| Term::join(a.clone(), b.clone());
    [
        Sequent::new(m(f, g), m(f, f)),
        Sequent::new(m(f, f), m(f, g)),
        Sequent::new(j(f, g), j(g, g)),
        Sequent::new(j(g, g), j(f, g)),
    ]
}

pub(crate) fn sp_instance(t: &Term) -> Hypersequent {
    Hypersequent::new(vec![
        Sequent::new(t.clone(), Term::meet(t.clone(), t.clone())),
        Sequent::new(Term::join(t.clone(), t.clone()), t.clone()),
    ])
    .expect("two components")
}

impl Checker<'_> {
    fn check(&mut self, script: &ProofScript) -> Result<(), CheckFailure> {
        let mut seen: BTreeMap<usize, &Hypersequent> = BTreeMap::new();
        for line in &script.lines {
            let fail = |reason: String| CheckFailure { line: line.index, rule: line.rule.to_string(), reason };
            if script.system == System::L && line.hyper.len() != 1 {
                return Err(fail("lines of an L script are single sequents".into()));
            }
            if script.system == System::L && line.rule.hl_only() {
                return Err(fail("rule belongs to HL only".into()));
            }
            if line.premises.len() != line.rule.arity() {
                return Err(fail(format!(
                    "rule takes {} premise(s), {} cited",
                    line.rule.arity(),
                    line.premises.len()
                )));
            }
            let mut premises = Vec::new();
            for p in &line.premises {
                match seen.get(p) {
                    Some(h) => premises.push(*h),
                    None => return Err(fail(format!("premise {p} is not an earlier line"))),
                }
            }
            self.check_line(script.system, line, &premises).map_err(fail)?;
            seen.insert(line.index, &line.hyper);
        }
        Ok(())
    }

    fn check_line(&mut self, system: System, line: &ScriptLine, premises: &[&Hypersequent]) -> Result<(), String> {
        let c = line.hyper.components();
        match &line.rule {
            Rule::IdAxiom => match line.hyper.as_sequent() {
                Some(s) if s.lhs == s.rhs => Ok(()),
                Some(_) => Err("sides differ".into()),
                None => Err("axioms are single sequents".into()),
            },
            Rule::Axiom(id) => {
                let ax = schema(id).ok_or_else(|| format!("unknown axiom schema `{id}`"))?;
                if ax.hl_only && system == System::L {
                    return Err(format!("schema `{id}` belongs to HL only"));
                }
                let s = line.hyper.as_sequent().ok_or("axioms are single sequents")?;
                if ax.matches(s).is_some() {
                    return Ok(());
                }
                Err(ax.sort_violation(s).unwrap_or_else(|| format!("not an instance of {} => {}", ax.lhs, ax.rhs)))
            }
            Rule::Lemma(name) => self.check_lemma(system, name, &line.hyper),
            Rule::Sp => {
                if let [a, _] = c {
                    if sp_instance(&a.lhs) == line.hyper {
                        return Ok(());
                    }
                }
                Err("not of the form φ => φ & φ ; φ | φ => φ".into())
            }
            Rule::Cut => {
                let (p1, p2) = (premises[0].components(), premises[1].components());
                for i in 0..p1.len() {
                    for j in 0..p2.len() {
                        if p1[i].rhs != p2[j].lhs {
                            continue;
                        }
                        let mid = [Sequent::new(p1[i].lhs.clone(), p2[j].rhs.clone())];
                        if concat(&[&p1[..i], &p2[..j], &mid, &p1[i + 1..], &p2[j + 1..]]) == c {
                            return Ok(());
                        }
                    }
                }
                match (p1, p2) {
                    ([a], [b]) if a.rhs != b.lhs => {
                        Err(format!("cut formula mismatch: `{}` is not `{}`", a.rhs, b.lhs))
                    }
                    _ => Err("conclusion does not follow by cut".into()),
                }
            }
            Rule::Sq => {
                let ps: Vec<&Comps> = premises.iter().map(|h| h.components()).collect();
                for i0 in 0..ps[0].len() {
                    for i1 in 0..ps[1].len() {
                        for i2 in 0..ps[2].len() {
                            for i3 in 0..ps[3].len() {
                                let k = i0 + i1 + i2 + i3;
                                let Some(goal) = c.get(k) else { continue };
                                let want = sq_premises(goal);
                                let idx = [i0, i1, i2, i3];
                                if (0..4).any(|r| ps[r][idx[r]] != want[r]) {
                                    continue;
                                }
                                let before: Vec<&Comps> = (0..4).map(|r| &ps[r][..idx[r]]).collect();
                                let after: Vec<&Comps> = (0..4).map(|r| &ps[r][idx[r] + 1..]).collect();
                                let goal = [goal.clone()];
                                let mut parts = before;
                                parts.push(&goal);
                                parts.extend(after);
                                if concat(&parts) == c {
                                    return Ok(());
                                }
                            }
                        }
                    }
                }
                Err("premises are not φ&ψ => φ&φ, φ&φ => φ&ψ, φ|ψ => ψ|ψ, ψ|ψ => φ|ψ for the conclusion".into())
            }
            Rule::Ec => {
                let p = premises[0].components();
                for b in 0..p.len() {
                    for d in 1..=(p.len() - b) / 2 {
                        let (bb, dd, rest) = (&p[..b], &p[b..b + d], &p[b + d..]);
                        if rest.starts_with(dd) && concat(&[bb, dd, &rest[d..]]) == c {
                            return Ok(());
                        }
                    }
                }
                Err("conclusion is not the premise with a repeated block removed".into())
            }
            Rule::Ee => {
                let p = premises[0].components();
                for b in 0..p.len() {
                    for d in 1..p.len() - b {
                        for e in 1..=p.len() - b - d {
                            let (bb, dd, ee, cc) = (&p[..b], &p[b..b + d], &p[b + d..b + d + e], &p[b + d + e..]);
                            if concat(&[bb, ee, dd, cc]) == c {
                                return Ok(());
                            }
                        }
                    }
                }
                Err("conclusion is not the premise with two adjacent blocks exchanged".into())
            }
            Rule::Ew => {
                let p = premises[0].components();
                if c.len() > p.len() && c.starts_with(p) {
                    Ok(())
                } else {
                    Err("conclusion does not extend the premise on the right".into())
                }
            }
            unary => {
                let p = premises[0].components();
                if p.len() == c.len() {
                    for i in 0..p.len() {
                        if p[..i] == c[..i] && p[i + 1..] == c[i + 1..] && unary_ok(unary, &p[i], &c[i]) {
                            return Ok(());
                        }
                    }
                }
                Err(format!("conclusion is not obtained from premise {} by {unary}", line.premises[0]))
            }
        }
    }

    fn check_lemma(&mut self, system: System, name: &str, hyper: &Hypersequent) -> Result<(), String> {
        let (_, script) = self
            .library
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| format!("no lemma named `{name}`"))?;
        if script.system == System::HL && system == System::L {
            return Err(format!("lemma `{name}` is an HL result"));
        }
        if self.active.iter().any(|a| a == name) {
            return Err(format!("lemma `{name}` cites itself"));
        }
        let stated = script.conclusion().and_then(Hypersequent::as_sequent).ok_or("lemma must conclude a sequent")?;
        let s = hyper.as_sequent().ok_or("lemma instances are single sequents")?;
        if match_sequent(stated, s).is_none() {
            return Err(format!("not an instance of {stated}"));
        }
        self.active.push(name.to_string());
        let inner = self.check(script);
        self.active.pop();
        inner.map_err(|f| format!("lemma `{name}` does not check: {f}"))
    }
}
