//! Terms over the signature (⊓, ⊔, ¬, ⌟, ⊤, ⊥), equations, a text parser and
//! a compiled evaluator shared by equation checking and model search.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::algebra::{Elem, FiniteAlgebra};

/// Variable sort. Object and property variables only matter in the
/// hypersequent calculus, where they range over the two Boolean parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Generic,
    Object,
    Property,
}

/// How variable names are tagged while parsing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VarMode {
    /// Every variable is [`Sort::Generic`].
    #[default]
    Generic,
    /// Lowercase initial gives [`Sort::Object`], uppercase gives [`Sort::Property`].
    Sorted,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String, Sort),
    Top,
    Bot,
    Neg(Box<Term>),
    Opp(Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string(), Sort::Generic)
    }

    pub fn sorted_var(name: &str, sort: Sort) -> Term {
        Term::Var(name.to_string(), sort)
    }

    pub fn neg(t: Term) -> Term {
        Term::Neg(Box::new(t))
    }

    pub fn opp(t: Term) -> Term {
        Term::Opp(Box::new(t))
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    /// `a ∨ b`, expanded to `¬(¬a ⊓ ¬b)`.
    pub fn vee(a: Term, b: Term) -> Term {
        Term::neg(Term::meet(Term::neg(a), Term::neg(b)))
    }

    /// `a ∧ b`, expanded to `⌟(⌟a ⊔ ⌟b)`.
    pub fn wedge(a: Term, b: Term) -> Term {
        Term::opp(Term::join(Term::opp(a), Term::opp(b)))
    }

    /// Variable names in ascending order.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    /// Variables with their sorts, ascending by name.
    pub fn sorted_variables(&self) -> BTreeMap<String, Sort> {
        let mut out = BTreeMap::new();
        self.walk(&mut |t| {
            if let Term::Var(name, sort) = t {
                out.insert(name.clone(), *sort);
            }
        });
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        self.walk(&mut |t| {
            if let Term::Var(name, _) = t {
                out.insert(name.clone());
            }
        });
    }

    /// Pre-order traversal.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        f(self);
        match self {
            Term::Var(..) | Term::Top | Term::Bot => {}
            Term::Neg(a) | Term::Opp(a) => a.walk(f),
            Term::Meet(a, b) | Term::Join(a, b) => {
                a.walk(f);
                b.walk(f);
            }
        }
    }

    /// All distinct subterms, including the term itself.
    pub fn subterms(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        self.walk(&mut |t| {
            out.insert(t.clone());
        });
        out
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_| n += 1);
        n
    }

    /// Replace every variable by the term bound to its name.
    pub fn substitute(&self, map: &BTreeMap<String, Term>) -> Term {
        match self {
            Term::Var(name, _) => map.get(name).cloned().unwrap_or_else(|| self.clone()),
            Term::Top => Term::Top,
            Term::Bot => Term::Bot,
            Term::Neg(a) => Term::neg(a.substitute(map)),
            Term::Opp(a) => Term::opp(a.substitute(map)),
            Term::Meet(a, b) => Term::meet(a.substitute(map), b.substitute(map)),
            Term::Join(a, b) => Term::join(a.substitute(map), b.substitute(map)),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Join(..) => 1,
            Term::Meet(..) => 2,
            Term::Neg(_) | Term::Opp(_) => 3,
            _ => 4,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let p = self.precedence();
        if p < min {
            write!(f, "(")?;
        }
        match self {
            Term::Var(name, _) => write!(f, "{name}")?,
            Term::Top => write!(f, "T")?,
            Term::Bot => write!(f, "F")?,
            Term::Neg(a) => {
                write!(f, "~")?;
                a.fmt_prec(f, 3)?;
            }
            Term::Opp(a) => {
                write!(f, "!")?;
                a.fmt_prec(f, 3)?;
            }
            Term::Meet(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, " & ")?;
                b.fmt_prec(f, 3)?;
            }
            Term::Join(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " | ")?;
                b.fmt_prec(f, 2)?;
            }
        }
        if p < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// A named identity `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub id: String,
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(id: &str, lhs: Term, rhs: Term) -> Equation {
        Equation { id: id.to_string(), lhs, rhs }
    }

    /// Parse `lhs = rhs` in generic variable mode.
    pub fn parse(id: &str, text: &str) -> Result<Equation, ParseError> {
        let mut p = Parser::new(text, VarMode::Generic)?;
        let lhs = p.parse_term()?;
        p.expect(&Tok::Eq)?;
        let rhs = p.parse_term()?;
        p.expect_end()?;
        Ok(Equation::new(id, lhs, rhs))
    }

    pub fn variables(&self) -> Vec<String> {
        let mut vars = self.lhs.variables();
        vars.extend(self.rhs.variables());
        vars.into_iter().collect()
    }

    pub fn compile(&self) -> CompiledEquation {
        let vars = self.variables();
        let slot = |name: &str| vars.iter().position(|v| v == name).expect("variable collected");
        CompiledEquation {
            lhs: Program::compile(&self.lhs, &slot),
            rhs: Program::compile(&self.rhs, &slot),
            vars,
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
}

/// Evaluate a term by direct recursion over the tree.
pub fn eval_term(alg: &FiniteAlgebra, t: &Term, env: &BTreeMap<String, Elem>) -> Result<Elem, EvalError> {
    Ok(match t {
        Term::Var(name, _) => *env.get(name).ok_or_else(|| EvalError::Unbound(name.clone()))?,
        Term::Top => alg.top(),
        Term::Bot => alg.bot(),
        Term::Neg(a) => alg.neg(eval_term(alg, a, env)?),
        Term::Opp(a) => alg.opp(eval_term(alg, a, env)?),
        Term::Meet(a, b) => alg.meet(eval_term(alg, a, env)?, eval_term(alg, b, env)?),
        Term::Join(a, b) => alg.join(eval_term(alg, a, env)?, eval_term(alg, b, env)?),
    })
}

/// Marker for a table entry that has not been filled yet.
pub const UNSET: Elem = usize::MAX;

/// Borrowed operation tables, possibly partial (entries equal to [`UNSET`]).
///
/// Cells are numbered `top`, `bot`, `neg[0..n]`, `opp[0..n]`, `meet[0..n²]`,
/// `join[0..n²]`, which is also the order in which model search fills them.
#[derive(Debug, Clone, Copy)]
pub struct Tables<'a> {
    pub n: usize,
    pub top: Elem,
    pub bot: Elem,
    pub neg: &'a [Elem],
    pub opp: &'a [Elem],
    pub meet: &'a [Elem],
    pub join: &'a [Elem],
}

impl Tables<'_> {
    pub fn cell_count(n: usize) -> usize {
        2 + 2 * n + 2 * n * n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Var(usize),
    Top,
    Bot,
    Neg,
    Opp,
    Meet,
    Join,
}

/// A term flattened to postfix form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    ops: Vec<Op>,
}

impl Program {
    /// Compile `t` with variable `vars[i]` read from slot `i`.
    pub fn for_term(t: &Term, vars: &[String]) -> Option<Program> {
        if !t.variables().iter().all(|v| vars.contains(v)) {
            return None;
        }
        Some(Program::compile(t, &|name| vars.iter().position(|v| v == name).expect("checked above")))
    }

    /// Evaluate against complete tables.
    pub fn eval(&self, t: &Tables<'_>, env: &[Elem], stack: &mut Vec<Elem>) -> Elem {
        self.eval_partial(t, env, stack).expect("complete tables")
    }

    fn compile(t: &Term, slot: &dyn Fn(&str) -> usize) -> Program {
        fn go(t: &Term, slot: &dyn Fn(&str) -> usize, ops: &mut Vec<Op>) {
            match t {
                Term::Var(name, _) => ops.push(Op::Var(slot(name))),
                Term::Top => ops.push(Op::Top),
                Term::Bot => ops.push(Op::Bot),
                Term::Neg(a) => {
                    go(a, slot, ops);
                    ops.push(Op::Neg);
                }
                Term::Opp(a) => {
                    go(a, slot, ops);
                    ops.push(Op::Opp);
                }
                Term::Meet(a, b) => {
                    go(a, slot, ops);
                    go(b, slot, ops);
                    ops.push(Op::Meet);
                }
                Term::Join(a, b) => {
                    go(a, slot, ops);
                    go(b, slot, ops);
                    ops.push(Op::Join);
                }
            }
        }
        let mut ops = Vec::new();
        go(t, slot, &mut ops);
        Program { ops }
    }

    /// Evaluate; on hitting an unfilled entry, return its cell number.
    pub fn eval_partial(&self, t: &Tables<'_>, env: &[Elem], stack: &mut Vec<Elem>) -> Result<Elem, usize> {
        stack.clear();
        let n = t.n;
        for op in &self.ops {
            let v = match *op {
                Op::Var(i) => env[i],
                Op::Top => {
                    if t.top == UNSET {
                        return Err(0);
                    }
                    t.top
                }
                Op::Bot => {
                    if t.bot == UNSET {
                        return Err(1);
                    }
                    t.bot
                }
                Op::Neg => {
                    let a = stack.pop().expect("well-formed program");
                    let v = t.neg[a];
                    if v == UNSET {
                        return Err(2 + a);
                    }
                    v
                }
                Op::Opp => {
                    let a = stack.pop().expect("well-formed program");
                    let v = t.opp[a];
                    if v == UNSET {
                        return Err(2 + n + a);
                    }
                    v
                }
                Op::Meet => {
                    let b = stack.pop().expect("well-formed program");
                    let a = stack.pop().expect("well-formed program");
                    let v = t.meet[a * n + b];
                    if v == UNSET {
                        return Err(2 + 2 * n + a * n + b);
                    }
                    v
                }
                Op::Join => {
                    let b = stack.pop().expect("well-formed program");
                    let a = stack.pop().expect("well-formed program");
                    let v = t.join[a * n + b];
                    if v == UNSET {
                        return Err(2 + 2 * n + n * n + a * n + b);
                    }
                    v
                }
            };
            stack.push(v);
        }
        Ok(stack.pop().expect("nonempty program"))
    }
}

/// An equation compiled for repeated evaluation. Variable slots follow
/// ascending variable-name order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledEquation {
    pub vars: Vec<String>,
    pub lhs: Program,
    pub rhs: Program,
}

impl CompiledEquation {
    /// `Some(true/false)` when both sides evaluate, `Err(cell)` when blocked.
    pub fn check(&self, t: &Tables<'_>, env: &[Elem], stack: &mut Vec<Elem>) -> Result<bool, usize> {
        let l = self.lhs.eval_partial(t, env, stack)?;
        let r = self.rhs.eval_partial(t, env, stack)?;
        Ok(l == r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Amp,
    Bar,
    Tilde,
    Bang,
    LParen,
    RParen,
    Comma,
    Eq,
    Arrow,
    Semi,
    Top,
    Bot,
    Ident(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Amp => write!(f, "`&`"),
            Tok::Bar => write!(f, "`|`"),
            Tok::Tilde => write!(f, "`~`"),
            Tok::Bang => write!(f, "`!`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Arrow => write!(f, "`=>`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Top => write!(f, "`T`"),
            Tok::Bot => write!(f, "`F`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

fn tokenize(text: &str) -> Result<(Vec<Spanned>, (usize, usize)), ParseError> {
    let mut toks = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = text.char_indices().peekable();
    while let Some(&(_, c)) = chars.peek() {
        let (l, col) = (line, column);
        let single = match c {
            '&' | '⊓' => Some(Tok::Amp),
            '|' | '⊔' => Some(Tok::Bar),
            '~' | '¬' => Some(Tok::Tilde),
            '!' | '⌟' => Some(Tok::Bang),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            '⊤' => Some(Tok::Top),
            '⊥' => Some(Tok::Bot),
            '⇒' => Some(Tok::Arrow),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            column += 1;
            toks.push(Spanned { tok, line: l, column: col });
            continue;
        }
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c == '=' {
            chars.next();
            column += 1;
            let tok = if matches!(chars.peek(), Some(&(_, '>'))) {
                chars.next();
                column += 1;
                Tok::Arrow
            } else {
                Tok::Eq
            };
            toks.push(Spanned { tok, line: l, column: col });
            continue;
        }
        if c.is_alphanumeric() || c == '_' {
            let mut name = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_alphanumeric() || d == '_' || d == '\'' {
                    name.push(d);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            let tok = match name.as_str() {
                "T" => Tok::Top,
                "F" => Tok::Bot,
                _ => Tok::Ident(name),
            };
            toks.push(Spanned { tok, line: l, column: col });
            continue;
        }
        return Err(ParseError { line: l, column: col, message: format!("unknown token `{c}`") });
    }
    Ok((toks, (line, column)))
}

/// Recursive-descent parser for terms. Precedence: unary > `&` > `|`, both
/// binary operators associate to the left.
pub(crate) struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
    mode: VarMode,
}

impl Parser {
    pub fn new(text: &str, mode: VarMode) -> Result<Parser, ParseError> {
        let (toks, end) = tokenize(text)?;
        Ok(Parser { toks, pos: 0, end, mode })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    pub fn error_here(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = match self.toks.get(self.pos) {
            Some(s) => (s.line, s.column),
            None => self.end,
        };
        ParseError { line, column, message: message.into() }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t == tok => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.error_here(format!("expected {tok}, found {t}"))),
            None => Err(self.error_here(format!("expected {tok}, found end of input"))),
        }
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error_here(format!("unexpected {t} after complete expression"))),
        }
    }

    pub fn parse_term(&mut self) -> Result<Term, ParseError> {
        let mut left = self.parse_meet()?;
        while self.eat(&Tok::Bar) {
            let right = self.parse_meet()?;
            left = Term::join(left, right);
        }
        Ok(left)
    }

    fn parse_meet(&mut self) -> Result<Term, ParseError> {
        let mut left = self.parse_unary()?;
        while self.eat(&Tok::Amp) {
            let right = self.parse_unary()?;
            left = Term::meet(left, right);
        }
        Ok(left)
    }

    fn parse_unary(&mut self) -> Result<Term, ParseError> {
        if self.eat(&Tok::Tilde) {
            return Ok(Term::neg(self.parse_unary()?));
        }
        if self.eat(&Tok::Bang) {
            return Ok(Term::opp(self.parse_unary()?));
        }
        self.parse_atom()
    }

    fn parse_atom(&mut self) -> Result<Term, ParseError> {
        let here = self.error_here("unexpected end of input");
        match self.next() {
            Some(Tok::Top) => Ok(Term::Top),
            Some(Tok::Bot) => Ok(Term::Bot),
            Some(Tok::LParen) => {
                let t = self.parse_term()?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Ident(name)) if (name == "vee" || name == "wedge") && self.peek() == Some(&Tok::LParen) => {
                self.expect(&Tok::LParen)?;
                let a = self.parse_term()?;
                self.expect(&Tok::Comma)?;
                let b = self.parse_term()?;
                self.expect(&Tok::RParen)?;
                Ok(if name == "vee" { Term::vee(a, b) } else { Term::wedge(a, b) })
            }
            Some(Tok::Ident(name)) => {
                let sort = match self.mode {
                    VarMode::Generic => Sort::Generic,
                    VarMode::Sorted => {
                        if name.chars().next().is_some_and(char::is_uppercase) {
                            Sort::Property
                        } else {
                            Sort::Object
                        }
                    }
                };
                Ok(Term::Var(name, sort))
            }
            Some(t) => {
                self.pos -= 1;
                Err(self.error_here(format!("unexpected {t}")))
            }
            None => Err(here),
        }
    }
}

/// Parse a complete term in generic variable mode.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    parse_term_with(text, VarMode::Generic)
}

pub fn parse_term_with(text: &str, mode: VarMode) -> Result<Term, ParseError> {
    let mut p = Parser::new(text, mode)?;
    let t = p.parse_term()?;
    p.expect_end()?;
    Ok(t)
}
