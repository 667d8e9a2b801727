//! Text formats: `.dba` algebra files and `.cxt` context files.
//!
//! ```text
//! # two-element example
//! elements: a b
//! meet:
//!   a a
//!   a b
//! join:
//!   a b
//!   b b
//! neg: a a
//! opp: b b
//! top: b
//! bot: a
//! ```
//!
//! ```text
//! objects: g1 g2
//! attributes: m1 m2
//! X.
//! .X
//! ```

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{AlgebraError, Elem, FiniteAlgebra};
use crate::fca::{ContextError, FormalContext};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing section `{0}`")]
    Missing(&'static str),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Context(#[from] ContextError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

/// Non-empty lines with comments removed, paired with 1-based line numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn split_header(line: &str) -> Option<(&str, &str)> {
    let (key, rest) = line.split_once(':')?;
    let key = key.trim();
    if key.is_empty() || key.contains(char::is_whitespace) {
        return None;
    }
    Some((key, rest.trim()))
}

pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra, FormatError> {
    let lines = content_lines(text);
    let mut names: Option<Vec<String>> = None;
    let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
    let mut tables: BTreeMap<&'static str, Vec<Elem>> = BTreeMap::new();
    let mut i = 0;
    while i < lines.len() {
        let (ln, line) = lines[i];
        i += 1;
        let (key, rest) = split_header(line).ok_or_else(|| syntax(ln, format!("expected `section:` header, found `{line}`")))?;
        let key: &'static str = match key {
            "elements" => "elements",
            "meet" => "meet",
            "join" => "join",
            "neg" => "neg",
            "opp" => "opp",
            "top" => "top",
            "bot" => "bot",
            other => return Err(syntax(ln, format!("unknown section `{other}`"))),
        };
        if let Some(prev) = seen.insert(key, ln) {
            return Err(syntax(ln, format!("duplicate section `{key}` (first defined on line {prev})")));
        }
        if key == "elements" {
            let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if list.is_empty() {
                return Err(syntax(ln, "`elements:` lists no elements"));
            }
            names = Some(list);
            continue;
        }
        let names = names.as_ref().ok_or_else(|| syntax(ln, format!("section `{key}` before `elements:`")))?;
        let n = names.len();
        let lookup = |ln: usize, tok: &str| {
            names.iter().position(|x| x == tok).ok_or_else(|| syntax(ln, format!("unknown element name `{tok}`")))
        };
        match key {
            "meet" | "join" => {
                if !rest.is_empty() {
                    return Err(syntax(ln, format!("`{key}:` rows start on the next line")));
                }
                let mut values = Vec::with_capacity(n * n);
                for row in 0..n {
                    let Some(&(rl, text)) = lines.get(i) else {
                        return Err(syntax(ln, format!("{key} table has {row} rows, expected {n}")));
                    };
                    if split_header(text).is_some() {
                        return Err(syntax(rl, format!("{key} table has {row} rows, expected {n}")));
                    }
                    i += 1;
                    let toks: Vec<&str> = text.split_whitespace().collect();
                    if toks.len() != n {
                        return Err(syntax(
                            rl,
                            format!("{key} row {} (`{}`) has {} entries, expected {n}", row + 1, names[row], toks.len()),
                        ));
                    }
                    for t in toks {
                        values.push(lookup(rl, t)?);
                    }
                }
                tables.insert(key, values);
            }
            "neg" | "opp" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != n {
                    return Err(syntax(ln, format!("`{key}:` has {} entries, expected {n}", toks.len())));
                }
                let values = toks.iter().map(|t| lookup(ln, t)).collect::<Result<_, _>>()?;
                tables.insert(key, values);
            }
            _ => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != 1 {
                    return Err(syntax(ln, format!("`{key}:` takes exactly one element name")));
                }
                tables.insert(key, vec![lookup(ln, toks[0])?]);
            }
        }
    }
    let names = names.ok_or(FormatError::Missing("elements"))?;
    let mut take = |k: &'static str| tables.remove(k).ok_or(FormatError::Missing(k));
    let (meet, join, neg, opp) = (take("meet")?, take("join")?, take("neg")?, take("opp")?);
    let (top, bot) = (take("top")?[0], take("bot")?[0]);
    Ok(FiniteAlgebra::new(names, meet, join, neg, opp, top, bot)?)
}

pub fn render_algebra(alg: &FiniteAlgebra) -> String {
    let name = |x: Elem| alg.name(x);
    let row = |f: &dyn Fn(Elem) -> Elem| alg.elements().map(|y| name(f(y))).collect::<Vec<_>>().join(" ");
    let mut out = format!("elements: {}\n", alg.names().join(" "));
    out.push_str("meet:\n");
    for x in alg.elements() {
        out.push_str(&format!("  {}\n", row(&|y| alg.meet(x, y))));
    }
    out.push_str("join:\n");
    for x in alg.elements() {
        out.push_str(&format!("  {}\n", row(&|y| alg.join(x, y))));
    }
    out.push_str(&format!("neg: {}\n", row(&|y| alg.neg(y))));
    out.push_str(&format!("opp: {}\n", row(&|y| alg.opp(y))));
    out.push_str(&format!("top: {}\nbot: {}\n", name(alg.top()), name(alg.bot())));
    out
}

/// Parse a `.cxt` file. With no attributes the incidence rows may be omitted.
pub fn parse_context(text: &str) -> Result<FormalContext, FormatError> {
    let lines = content_lines(text);
    let mut objects = None;
    let mut attributes = None;
    let mut rows: Vec<(usize, &str)> = Vec::new();
    for (ln, line) in lines {
        match split_header(line) {
            Some(("objects", rest)) => {
                if objects.is_some() {
                    return Err(syntax(ln, "duplicate section `objects`"));
                }
                objects = Some(rest.split_whitespace().map(str::to_string).collect::<Vec<_>>());
            }
            Some(("attributes", rest)) => {
                if attributes.is_some() {
                    return Err(syntax(ln, "duplicate section `attributes`"));
                }
                attributes = Some(rest.split_whitespace().map(str::to_string).collect::<Vec<_>>());
            }
            Some((other, _)) => return Err(syntax(ln, format!("unknown section `{other}`"))),
            None => rows.push((ln, line)),
        }
    }
    let objects = objects.ok_or(FormatError::Missing("objects"))?;
    let attributes = attributes.ok_or(FormatError::Missing("attributes"))?;
    if attributes.is_empty() && rows.is_empty() {
        let incidence = vec![Vec::new(); objects.len()];
        return Ok(FormalContext::new(objects, attributes, &incidence)?);
    }
    if rows.len() != objects.len() {
        return Err(FormatError::Context(ContextError::RowCount { expected: objects.len(), found: rows.len() }));
    }
    let mut incidence = Vec::with_capacity(rows.len());
    for (r, (ln, text)) in rows.iter().enumerate() {
        let cells: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cells.len() != attributes.len() {
            return Err(syntax(
                *ln,
                format!("row {} (`{}`) has {} cells, expected {}", r + 1, objects[r], cells.len(), attributes.len()),
            ));
        }
        let row = cells
            .iter()
            .map(|c| match c {
                'X' | 'x' => Ok(true),
                '.' => Ok(false),
                other => Err(syntax(*ln, format!("unexpected cell `{other}` (use X or .)"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        incidence.push(row);
    }
    Ok(FormalContext::new(objects, attributes, &incidence)?)
}

pub fn render_context(ctx: &FormalContext) -> String {
    let mut out = format!("objects: {}\nattributes: {}\n", ctx.objects().join(" "), ctx.attributes().join(" "));
    for g in 0..ctx.n_objects() {
        let row: String = (0..ctx.n_attributes()).map(|m| if ctx.incident(g, m) { 'X' } else { '.' }).collect();
        out.push_str(&row);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const CEX: &str = "\
# lattice tables with constant negations
elements: a b
meet:
  a a
  a b
join:
  a b
  b b
neg: a a
opp: b b
top: b
bot: a
";

    #[test]
    fn parses_two_element_file() {
        let alg = parse_algebra(CEX).unwrap();
        assert_eq!(alg, fixtures::cex_5ab());
        assert_eq!(alg.meet(1, 1), 1);
        assert_eq!(alg.neg(1), 0);
    }

    #[test]
    fn singleton_file() {
        let alg = parse_algebra("elements: o\nmeet:\no\njoin:\no\nneg: o\nopp: o\ntop: o\nbot: o\n").unwrap();
        assert_eq!(alg, fixtures::singleton());
    }

    #[test]
    fn render_then_parse_is_identity() {
        for (_, alg) in fixtures::builtin_fixtures() {
            assert_eq!(parse_algebra(&render_algebra(&alg)).unwrap(), alg);
        }
    }

    #[test]
    fn bad_row_length_names_the_row() {
        let bad = CEX.replace("  a b\njoin", "  a b a\njoin");
        let err = parse_algebra(&bad).unwrap_err().to_string();
        assert!(err.contains("meet row 2"), "{err}");
        assert!(err.starts_with("line 5"), "{err}");
    }

    #[test]
    fn unknown_name_and_duplicate_section() {
        let err = parse_algebra(&CEX.replace("neg: a a", "neg: a q")).unwrap_err().to_string();
        assert!(err.contains("unknown element name `q`"), "{err}");
        let err = parse_algebra(&format!("{CEX}top: a\n")).unwrap_err().to_string();
        assert!(err.contains("duplicate section `top`"), "{err}");
        assert_eq!(parse_algebra(&CEX.replace("bot: a\n", "")).unwrap_err(), FormatError::Missing("bot"));
    }

    #[test]
    fn context_round_trip() {
        let text = "objects: g1 g2\nattributes: m1 m2 m3\nX.X\n.X.\n";
        let ctx = parse_context(text).unwrap();
        assert!(ctx.incident(0, 0) && ctx.incident(0, 2) && ctx.incident(1, 1) && !ctx.incident(1, 0));
        assert_eq!(render_context(&ctx), text);
    }

    #[test]
    fn context_without_attributes() {
        let ctx = parse_context("objects: g1 g2\nattributes:\n").unwrap();
        assert_eq!((ctx.n_objects(), ctx.n_attributes()), (2, 0));
    }

    #[test]
    fn context_row_errors() {
        assert!(parse_context("objects: g\nattributes: m n\nX\n").unwrap_err().to_string().contains("row 1"));
        assert!(parse_context("objects: g\nattributes: m\nY\n").is_err());
        assert!(parse_context("objects: g h\nattributes: m\nX\n").is_err());
    }
}
