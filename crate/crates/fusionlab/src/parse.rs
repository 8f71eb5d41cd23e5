//! Group files and subgroup specifications.
//!
//! ```text
//! # the dihedral group of order 8
//! group D8
//! perm 4
//! (1 2)
//! (1 3 2 4)
//! ```
//!
//! A `table <n>` header is followed by `n` rows of `n` element indices,
//! element `0` being the identity. Cycle words multiply left to right.

use std::fmt;
use std::path::Path;

use fusionlab_core::{FiniteGroup, GroupSpec, Limits, Perm, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Group(#[from] fusionlab_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// A parsed group together with the element index of each listed generator.
#[derive(Debug, Clone)]
pub struct ParsedGroup {
    pub group: FiniteGroup,
    pub generators: Vec<u32>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Parses a product of cycles such as `(1 2)(3 4 5)` on `degree` points.
pub fn parse_cycle_word(text: &str, degree: usize, line: usize) -> Result<Perm, ParseError> {
    let mut perm = Perm::identity(degree);
    let mut chars = text.char_indices().peekable();
    let mut saw_cycle = false;
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c != '(' {
            return Err(err(
                line,
                start + 1,
                format!("expected '(' but found '{c}'"),
            ));
        }
        chars.next();
        let mut points = Vec::new();
        let mut closed = false;
        let mut number = String::new();
        let mut number_col = 0;
        for (i, c) in chars.by_ref() {
            match c {
                '0'..='9' => {
                    if number.is_empty() {
                        number_col = i + 1;
                    }
                    number.push(c);
                }
                ' ' | ',' | '\t' | ')' => {
                    if !number.is_empty() {
                        let x: usize = number
                            .parse()
                            .map_err(|_| err(line, number_col, "point out of range"))?;
                        if x == 0 || x > degree {
                            return Err(err(
                                line,
                                number_col,
                                format!("point {x} outside 1..={degree}"),
                            ));
                        }
                        points.push(x as u32 - 1);
                        number.clear();
                    }
                    if c == ')' {
                        closed = true;
                        break;
                    }
                }
                _ => {
                    return Err(err(
                        line,
                        i + 1,
                        format!("unexpected character '{c}' in cycle"),
                    ))
                }
            }
        }
        if !closed {
            return Err(err(line, start + 1, "unterminated cycle"));
        }
        let cycle = Perm::from_cycles(degree, &[points])
            .map_err(|e| err(line, start + 1, e.to_string()))?;
        perm = perm.then(&cycle);
        saw_cycle = true;
    }
    if !saw_cycle {
        return Err(err(line, 1, "empty generator line"));
    }
    Ok(perm)
}

enum Body {
    None,
    Perm { degree: usize, gens: Vec<Perm> },
    Table { n: usize, rows: Vec<Vec<u32>> },
}

/// Parses the text of a group file.
pub fn parse_group_str(text: &str, limits: Limits) -> Result<ParsedGroup, LoadError> {
    let mut name: Option<String> = None;
    let mut body = Body::None;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let col = raw.find(content).unwrap_or(0) + 1;
        let mut words = content.split_whitespace();
        let head = words.next().unwrap_or("");
        match (head, &mut body) {
            ("group", _) => {
                let rest = content["group".len()..].trim();
                if rest.is_empty() {
                    return Err(err(line, col, "missing group name").into());
                }
                name = Some(rest.to_string());
            }
            ("perm" | "table", Body::None) => {
                let n: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| err(line, col + head.len() + 1, "expected a positive size"))?;
                if words.next().is_some() {
                    return Err(err(line, col, "trailing text after size").into());
                }
                body = if head == "perm" {
                    Body::Perm {
                        degree: n,
                        gens: Vec::new(),
                    }
                } else {
                    Body::Table {
                        n,
                        rows: Vec::new(),
                    }
                };
            }
            ("perm" | "table", _) => {
                return Err(err(line, col, "a second 'perm' or 'table' header").into());
            }
            (_, Body::None) => {
                return Err(err(line, col, "expected 'group', 'perm' or 'table'").into());
            }
            (_, Body::Perm { degree, gens }) => {
                gens.push(parse_cycle_word(
                    raw.split('#').next().unwrap_or(""),
                    *degree,
                    line,
                )?);
            }
            (_, Body::Table { n, rows }) => {
                let mut row = Vec::with_capacity(*n);
                let mut offset = 0;
                for w in content.split_whitespace() {
                    let at = content[offset..]
                        .find(w)
                        .map(|k| k + offset)
                        .unwrap_or(offset);
                    offset = at + w.len();
                    let x: u32 = w.parse().map_err(|_| {
                        err(line, col + at, format!("'{w}' is not an element index"))
                    })?;
                    row.push(x);
                }
                if row.len() != *n {
                    return Err(err(
                        line,
                        col,
                        format!("row has {} entries, expected {n}", row.len()),
                    )
                    .into());
                }
                if rows.len() == *n {
                    return Err(err(line, col, "more rows than the table size").into());
                }
                rows.push(row);
            }
        }
    }
    let name = name.unwrap_or_else(|| "G".to_string());
    match body {
        Body::None => Err(err(last_line.max(1), 1, "no 'perm' or 'table' section").into()),
        Body::Perm { degree, gens } => {
            let group = FiniteGroup::build(
                &name,
                GroupSpec::Permutations {
                    degree,
                    generators: gens.clone(),
                },
                limits,
            )?;
            let rep = group.perm_rep().expect("permutation group");
            let generators = gens
                .iter()
                .map(|g| {
                    rep.elements
                        .iter()
                        .position(|e| e == g)
                        .expect("generator in closure") as u32
                })
                .collect();
            Ok(ParsedGroup { group, generators })
        }
        Body::Table { n, rows } => {
            if rows.len() != n {
                return Err(err(
                    last_line,
                    1,
                    format!("table has {} rows, expected {n}", rows.len()),
                )
                .into());
            }
            let group = FiniteGroup::build(&name, GroupSpec::Table(rows), limits)?;
            Ok(ParsedGroup {
                group,
                generators: Vec::new(),
            })
        }
    }
}

/// Reads and parses a group file.
pub fn parse_group_file(path: &Path, limits: Limits) -> Result<ParsedGroup, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_group_str(&text, limits)
}

/// Writes a group back in the file format, as a permutation group when a
/// permutation representation is known and as a table otherwise.
pub fn format_group(g: &FiniteGroup) -> String {
    let mut out = format!("group {}\n", g.name());
    match g.perm_rep() {
        Some(rep) => {
            out.push_str(&format!("perm {}\n", rep.degree));
            for gen in &rep.generators {
                out.push_str(&format!("{gen}\n"));
            }
        }
        None => {
            out.push_str(&format!("table {}\n", g.order()));
            let n = g.order();
            for row in g.table().chunks(n) {
                let row: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
    }
    out
}

/// Parses a comma-separated list of generator words into the subgroup they
/// generate. Letters `a`, `b`, … name the file's generators in order, capitals
/// their inverses; a number is an element index; `1` alone is the identity.
pub fn parse_subgroup_spec(pg: &ParsedGroup, spec: &str) -> Result<Subgroup, ParseError> {
    let g = &pg.group;
    let mut elems = Vec::new();
    let mut col = 1;
    for word in spec.split(',') {
        let trimmed = word.trim();
        let start = col + word.len() - word.trim_start().len();
        col += word.len() + 1;
        if trimmed.is_empty() {
            return Err(err(1, start, "empty word"));
        }
        if trimmed.chars().all(|c| c.is_ascii_digit()) {
            let x: usize = trimmed
                .parse()
                .map_err(|_| err(1, start, "index out of range"))?;
            if x >= g.order() {
                return Err(err(
                    1,
                    start,
                    format!("element index {x} outside the group"),
                ));
            }
            elems.push(x as u32);
            continue;
        }
        let mut acc = 0u32;
        for (i, c) in trimmed.chars().enumerate() {
            let (k, inverse) = match c {
                'a'..='z' => (c as usize - 'a' as usize, false),
                'A'..='Z' => (c as usize - 'A' as usize, true),
                _ => return Err(err(1, start + i, format!("unexpected character '{c}'"))),
            };
            let &x = pg
                .generators
                .get(k)
                .ok_or_else(|| err(1, start + i, format!("no generator named '{c}'")))?;
            acc = g.mul(acc, if inverse { g.inv(x) } else { x });
        }
        elems.push(acc);
    }
    Ok(g.generate(&elems))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_file() {
        let pg = parse_group_str(
            "# D8\ngroup D8\nperm 4\n(1 2)\n(1 3 2 4)\n",
            Limits::default(),
        )
        .unwrap();
        assert_eq!(pg.group.order(), 8);
        assert_eq!(pg.group.name(), "D8");
        let center = parse_subgroup_spec(&pg, "bb").unwrap();
        assert_eq!(center.order(), 2);
        assert_eq!(parse_subgroup_spec(&pg, "a, B").unwrap().order(), 8);
    }

    #[test]
    fn trivial_table() {
        let pg = parse_group_str("table 1\n0\n", Limits::default()).unwrap();
        assert_eq!(pg.group.order(), 1);
    }

    #[test]
    fn malformed_cycle() {
        match parse_group_str("group X\nperm 3\n(1 2\n", Limits::default()) {
            Err(LoadError::Parse(e)) => assert_eq!((e.line, e.column), (3, 1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn round_trip() {
        let pg = parse_group_str("perm 3\n(1 2)(2 3)\n", Limits::default()).unwrap();
        assert_eq!(pg.group.order(), 3);
        let again = parse_group_str(&format_group(&pg.group), Limits::default()).unwrap();
        assert_eq!(again.group.table(), pg.group.table());
    }
}
