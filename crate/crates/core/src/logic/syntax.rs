use std::fmt;
use std::str::FromStr;

use crate::term::{ParseError, Parser, Term, Tok, VarMode};

/// Which calculus a sequent, script or query belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum System {
    /// Sequents over contextual algebras.
    L,
    /// Hypersequents over pure algebras, with object and property variables.
    HL,
}

impl System {
    /// HL reads lowercase variables as object variables and uppercase ones
    /// as property variables.
    pub fn var_mode(self) -> VarMode {
        match self {
            System::L => VarMode::Generic,
            System::HL => VarMode::Sorted,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            System::L => "L",
            System::HL => "HL",
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for System {
    type Err = String;

    fn from_str(s: &str) -> Result<System, String> {
        match s {
            "L" | "l" => Ok(System::L),
            "HL" | "hl" => Ok(System::HL),
            other => Err(format!("unknown system `{other}` (expected L or HL)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub lhs: Term,
    pub rhs: Term,
}

impl Sequent {
    pub fn new(lhs: Term, rhs: Term) -> Sequent {
        Sequent { lhs, rhs }
    }

    pub fn size(&self) -> usize {
        self.lhs.size() + self.rhs.size()
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} => {}", self.lhs, self.rhs)
    }
}

/// A nonempty sequence of sequents, written with `;` between components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hypersequent {
    components: Vec<Sequent>,
}

impl Hypersequent {
    pub fn new(components: Vec<Sequent>) -> Option<Hypersequent> {
        (!components.is_empty()).then_some(Hypersequent { components })
    }

    pub fn single(s: Sequent) -> Hypersequent {
        Hypersequent { components: vec![s] }
    }

    pub fn components(&self) -> &[Sequent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The only component, when there is exactly one.
    pub fn as_sequent(&self) -> Option<&Sequent> {
        match self.components.as_slice() {
            [s] => Some(s),
            _ => None,
        }
    }
}

impl From<Sequent> for Hypersequent {
    fn from(s: Sequent) -> Hypersequent {
        Hypersequent::single(s)
    }
}

impl fmt::Display for Hypersequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

fn sequent_from(p: &mut Parser) -> Result<Sequent, ParseError> {
    let lhs = p.parse_term()?;
    p.expect(&Tok::Arrow)?;
    let rhs = p.parse_term()?;
    Ok(Sequent::new(lhs, rhs))
}

/// Parse `formula => formula`.
pub fn parse_sequent(text: &str, system: System) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(text, system.var_mode())?;
    let s = sequent_from(&mut p)?;
    p.expect_end()?;
    Ok(s)
}

/// Parse components separated by `;`.
pub fn parse_hypersequent(text: &str, system: System) -> Result<Hypersequent, ParseError> {
    let mut p = Parser::new(text, system.var_mode())?;
    let mut components = vec![sequent_from(&mut p)?];
    while p.eat(&Tok::Semi) {
        components.push(sequent_from(&mut p)?);
    }
    p.expect_end()?;
    Ok(Hypersequent { components })
}
