use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::syntax::{Sequent, System};
use crate::term::{parse_term, Sort, Term};

/// Metavariable bindings produced by matching.
pub type Binding = BTreeMap<String, Term>;

/// One direction of an axiom. Biconditional axioms appear twice, with ids
/// ending in `.lr` and `.rl`.
///
/// Metavariables `a`, `b`, `c` stand for arbitrary formulas; `p` only
/// matches an object variable and `P` only a property variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSchema {
    pub id: &'static str,
    pub lhs: Term,
    pub rhs: Term,
    /// Present only in HL.
    pub hl_only: bool,
}

const SCHEMAS: &[(&str, &str, &str, bool)] = &[
    ("id", "a", "a", false),
    ("meet-elim-l", "a & b", "a", false),
    ("meet-elim-r", "a & b", "b", false),
    ("join-intro-l", "a", "a | b", false),
    ("join-intro-r", "b", "a | b", false),
    ("neg-idem", "~(a & a)", "~a", false),
    ("opp-idem", "!a", "!(a | a)", false),
    ("contra.lr", "a & ~a", "F", false),
    ("contra.rl", "F", "a & ~a", false),
    ("excluded.lr", "T", "a | !a", false),
    ("excluded.rl", "a | !a", "T", false),
    ("dneg.lr", "~~(a & b)", "a & b", false),
    ("dneg.rl", "a & b", "~~(a & b)", false),
    ("dopp.lr", "!!(a | b)", "a | b", false),
    ("dopp.rl", "a | b", "!!(a | b)", false),
    ("absorb-meet", "a & a", "a & (a | b)", false),
    ("absorb-join", "a | (a & b)", "a | a", false),
    ("dist-meet.lr", "a & vee(b, c)", "vee(a & b, a & c)", false),
    ("dist-meet.rl", "vee(a & b, a & c)", "a & vee(b, c)", false),
    ("dist-join.lr", "a | wedge(b, c)", "wedge(a | b, a | c)", false),
    ("dist-join.rl", "wedge(a | b, a | c)", "a | wedge(b, c)", false),
    ("mixed.lr", "(a | a) & (a | a)", "(a & a) | (a & a)", false),
    ("mixed.rl", "(a & a) | (a & a)", "(a | a) & (a | a)", false),
    ("obj-idem.lr", "p & p", "p", true),
    ("obj-idem.rl", "p", "p & p", true),
    ("prop-idem.lr", "P | P", "P", true),
    ("prop-idem.rl", "P", "P | P", true),
];

pub fn axiom_schemas() -> &'static [AxiomSchema] {
    static CELL: OnceLock<Vec<AxiomSchema>> = OnceLock::new();
    CELL.get_or_init(|| {
        SCHEMAS
            .iter()
            .map(|&(id, l, r, hl_only)| AxiomSchema {
                id,
                lhs: parse_term(l).expect("schema text parses"),
                rhs: parse_term(r).expect("schema text parses"),
                hl_only,
            })
            .collect()
    })
}

pub fn schema(id: &str) -> Option<&'static AxiomSchema> {
    axiom_schemas().iter().find(|s| s.id == id)
}

/// Schemas available in `system`, in catalog order.
pub fn schemas_for(system: System) -> impl Iterator<Item = &'static AxiomSchema> {
    axiom_schemas().iter().filter(move |s| system == System::HL || !s.hl_only)
}

/// Which terms a schema metavariable may stand for.
fn accepts(meta: &str, t: &Term, sorted: bool) -> bool {
    match (meta, t) {
        ("p", Term::Var(_, sort)) => !sorted || *sort == Sort::Object,
        ("P", Term::Var(_, sort)) => !sorted || *sort == Sort::Property,
        ("p" | "P", _) => false,
        _ => true,
    }
}

/// First-order matching of `pat` against `t`; pattern variables are
/// metavariables accepted by `ok`.
pub(crate) fn match_with(pat: &Term, t: &Term, bind: &mut Binding, ok: &dyn Fn(&str, &Term) -> bool) -> bool {
    match (pat, t) {
        (Term::Var(name, _), _) => {
            if !ok(name, t) {
                return false;
            }
            match bind.get(name) {
                Some(prev) => prev == t,
                None => {
                    bind.insert(name.clone(), t.clone());
                    true
                }
            }
        }
        (Term::Top, Term::Top) | (Term::Bot, Term::Bot) => true,
        (Term::Neg(a), Term::Neg(b)) | (Term::Opp(a), Term::Opp(b)) => match_with(a, b, bind, ok),
        (Term::Meet(a1, a2), Term::Meet(b1, b2)) | (Term::Join(a1, a2), Term::Join(b1, b2)) => {
            match_with(a1, b1, bind, ok) && match_with(a2, b2, bind, ok)
        }
        _ => false,
    }
}

/// Match a sequent pattern whose every variable is a metavariable.
pub(crate) fn match_sequent(pat: &Sequent, s: &Sequent) -> Option<Binding> {
    let mut bind = Binding::new();
    let any = |_: &str, _: &Term| true;
    (match_with(&pat.lhs, &s.lhs, &mut bind, &any) && match_with(&pat.rhs, &s.rhs, &mut bind, &any)).then_some(bind)
}

impl AxiomSchema {
    pub fn sequent(&self) -> Sequent {
        Sequent::new(self.lhs.clone(), self.rhs.clone())
    }

    pub fn metavariables(&self) -> Vec<String> {
        let mut v = self.lhs.variables();
        v.extend(self.rhs.variables());
        v.into_iter().collect()
    }

    fn match_sorted(&self, s: &Sequent, sorted: bool) -> Option<Binding> {
        let mut bind = Binding::new();
        let ok = |m: &str, t: &Term| accepts(m, t, sorted);
        (match_with(&self.lhs, &s.lhs, &mut bind, &ok) && match_with(&self.rhs, &s.rhs, &mut bind, &ok))
            .then_some(bind)
    }

    /// The binding under which this schema yields `s`, if any.
    pub fn matches(&self, s: &Sequent) -> Option<Binding> {
        self.match_sorted(s, true)
    }

    /// Why `s` fails to be an instance although its shape fits: an HL-only
    /// schema applied to a variable of the wrong sort.
    pub fn sort_violation(&self, s: &Sequent) -> Option<String> {
        if self.matches(s).is_some() {
            return None;
        }
        let bind = self.match_sorted(s, false)?;
        let (meta, wanted) = if bind.contains_key("p") { ("p", "an object") } else { ("P", "a property") };
        let found = match bind.get(meta) {
            Some(Term::Var(name, Sort::Object)) => format!("object variable `{name}`"),
            Some(Term::Var(name, Sort::Property)) => format!("property variable `{name}`"),
            Some(Term::Var(name, Sort::Generic)) => format!("unsorted variable `{name}`"),
            _ => "a compound formula".to_string(),
        };
        Some(format!("{} needs {wanted} variable, found {found}", self.id))
    }

    pub fn instantiate(&self, bind: &Binding) -> Sequent {
        Sequent::new(self.lhs.substitute(bind), self.rhs.substitute(bind))
    }
}

/// Ids of every schema of `system` having `s` as an instance.
pub fn axiom_match(s: &Sequent, system: System) -> Vec<&'static str> {
    schemas_for(system).filter(|a| a.matches(s).is_some()).map(|a| a.id).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::syntax::parse_sequent;

    fn l(text: &str) -> Sequent {
        parse_sequent(text, System::L).unwrap()
    }

    #[test]
    fn contradiction_with_compound_argument() {
        assert_eq!(axiom_match(&l("(x | y) & ~(x | y) => F"), System::L), vec!["contra.lr"]);
    }

    #[test]
    fn identity_matches() {
        assert_eq!(axiom_match(&l("x => x"), System::L), vec!["id"]);
    }

    #[test]
    fn sorted_idempotence_is_hl_only() {
        let hl = parse_sequent("p & p => p", System::HL).unwrap();
        assert_eq!(axiom_match(&hl, System::HL), vec!["meet-elim-l", "meet-elim-r", "obj-idem.lr"]);
        assert!(!axiom_match(&l("p & p => p"), System::L).iter().any(|id| schema(id).unwrap().hl_only));
        let bad = parse_sequent("P & P => P", System::HL).unwrap();
        let msg = schema("obj-idem.lr").unwrap().sort_violation(&bad).unwrap();
        assert!(msg.contains("property variable `P`"), "{msg}");
    }

    #[test]
    fn repeated_metavariable_must_agree() {
        assert!(schema("neg-idem").unwrap().matches(&l("~(x & y) => ~x")).is_none());
        assert!(schema("neg-idem").unwrap().matches(&l("~(x & x) => ~x")).is_some());
    }

    #[test]
    fn biconditionals_come_in_pairs() {
        for s in axiom_schemas() {
            if let Some(base) = s.id.strip_suffix(".lr") {
                let back = schema(&format!("{base}.rl")).unwrap();
                assert_eq!((&back.lhs, &back.rhs), (&s.rhs, &s.lhs));
            }
        }
    }
}
