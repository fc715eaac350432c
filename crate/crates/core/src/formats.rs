//! Text formats. Every id on disk is 1-based; conversion to the 0-based
//! in-memory ids happens here and nowhere else.
//!
//! ```text
//! tgf <n> <#black> <#red>     seq <n> <#steps>     <vertex> <role>
//! b <u> <v>                   m <u> <v>            <vertex> <color>
//! r <u> <v>                                        <var> 0|1
//! ```
//!
//! Readers skip blank lines and anything after `#`. Writers emit edges and
//! records in sorted order, so writing what was read reproduces the bytes of
//! any file this module wrote.

use std::fmt::Write as _;

use thiserror::Error;

use crate::cnf::{Assignment, CnfError, CnfFormula, Dialect, Literal};
use crate::contraction::{PartitionSequence, SequenceError};
use crate::oracles::{Coloring, OracleError};
use crate::trigraph::{Trigraph, TrigraphError, VertexRole};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Trigraph(#[from] TrigraphError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Coloring(#[from] OracleError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn number(line: usize, token: &str) -> Result<usize, FormatError> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("expected a nonnegative integer, found `{token}`")))
}

/// 1-based id on disk to 0-based id.
fn vertex(line: usize, token: &str) -> Result<usize, FormatError> {
    match number(line, token)? {
        0 => Err(syntax(line, "ids are 1-based; found 0")),
        v => Ok(v - 1),
    }
}

pub fn write_trigraph(g: &Trigraph) -> String {
    let mut out = format!("tgf {} {} {}\n", g.n(), g.num_black_edges(), g.num_red_edges());
    for (u, v) in g.black_edges() {
        let _ = writeln!(out, "b {} {}", u + 1, v + 1);
    }
    for (u, v) in g.red_edges() {
        let _ = writeln!(out, "r {} {}", u + 1, v + 1);
    }
    out
}

pub fn read_trigraph(text: &str) -> Result<Trigraph, FormatError> {
    let mut recs = records(text);
    let (line, header) = recs.next().ok_or_else(|| syntax(1, "missing `tgf` header"))?;
    let (n, nb, nr) = match header.as_slice() {
        ["tgf", n, b, r] => (number(line, n)?, number(line, b)?, number(line, r)?),
        _ => return Err(syntax(line, "expected `tgf <n> <#black> <#red>`")),
    };
    let (mut black, mut red) = (Vec::with_capacity(nb), Vec::with_capacity(nr));
    for (line, rec) in recs {
        match rec.as_slice() {
            ["b", u, v] => black.push((vertex(line, u)?, vertex(line, v)?)),
            ["r", u, v] => red.push((vertex(line, u)?, vertex(line, v)?)),
            _ => return Err(syntax(line, "expected `b <u> <v>` or `r <u> <v>`")),
        }
    }
    if black.len() != nb || red.len() != nr {
        return Err(syntax(
            line,
            format!("header promises {nb} black and {nr} red edges, found {} and {}", black.len(), red.len()),
        ));
    }
    Ok(Trigraph::new(n, &black, &red)?)
}

pub fn write_sequence(seq: &PartitionSequence) -> String {
    let mut out = format!("seq {} {}\n", seq.n(), seq.len());
    for s in seq.steps() {
        let _ = writeln!(out, "m {} {}", s.a + 1, s.b + 1);
    }
    out
}

/// Reads a merge script; each line may name any member of the two parts.
pub fn read_sequence(text: &str) -> Result<PartitionSequence, FormatError> {
    let mut recs = records(text);
    let (line, header) = recs.next().ok_or_else(|| syntax(1, "missing `seq` header"))?;
    let (n, k) = match header.as_slice() {
        ["seq", n, k] => (number(line, n)?, number(line, k)?),
        _ => return Err(syntax(line, "expected `seq <n> <#steps>`")),
    };
    let mut merges = Vec::with_capacity(k);
    for (line, rec) in recs {
        match rec.as_slice() {
            ["m", u, v] => merges.push((vertex(line, u)?, vertex(line, v)?)),
            _ => return Err(syntax(line, "expected `m <u> <v>`")),
        }
    }
    if merges.len() != k {
        return Err(syntax(line, format!("header promises {k} steps, found {}", merges.len())));
    }
    Ok(PartitionSequence::from_vertex_merges(n, &merges)?)
}

pub fn write_roles(roles: &[VertexRole]) -> String {
    let mut out = String::new();
    for (v, role) in roles.iter().enumerate() {
        let _ = writeln!(out, "{} {}", v + 1, role);
    }
    out
}

/// Reads a roles file; vertices must be listed as `1, 2, ...` in order.
pub fn read_roles(text: &str) -> Result<Vec<VertexRole>, FormatError> {
    let mut roles = Vec::new();
    for (line, rec) in records(text) {
        let v = vertex(line, rec[0])?;
        if v != roles.len() {
            return Err(syntax(line, format!("expected vertex {}, found {}", roles.len() + 1, v + 1)));
        }
        let role = rec[1..].join(" ").parse::<VertexRole>().map_err(|e| syntax(line, e))?;
        roles.push(role);
    }
    Ok(roles)
}

pub fn write_coloring(col: &Coloring) -> String {
    let mut out = String::new();
    for (v, c) in col.colors().iter().enumerate() {
        let _ = writeln!(out, "{} {}", v + 1, c);
    }
    out
}

/// Reads `<vertex> <color>` lines (any order, every vertex exactly once).
/// The palette size is the largest color present.
pub fn read_coloring(text: &str) -> Result<Coloring, FormatError> {
    let mut pairs = Vec::new();
    for (line, rec) in records(text) {
        match rec.as_slice() {
            [v, c] => pairs.push((line, vertex(line, v)?, number(line, c)?)),
            _ => return Err(syntax(line, "expected `<vertex> <color>`")),
        }
    }
    let mut colors = vec![0; pairs.len()];
    for (line, v, c) in pairs {
        match colors.get_mut(v) {
            Some(slot @ 0) => *slot = c,
            Some(_) => return Err(syntax(line, format!("vertex {} colored twice", v + 1))),
            None => return Err(syntax(line, format!("vertex {} out of range", v + 1))),
        }
    }
    Ok(Coloring::from_colors(colors)?)
}

pub fn write_assignment(a: &Assignment) -> String {
    let mut out = String::new();
    for (i, &value) in a.values().iter().enumerate() {
        let _ = writeln!(out, "{} {}", i + 1, u8::from(value));
    }
    out
}

pub fn read_assignment(text: &str) -> Result<Assignment, FormatError> {
    let mut values = Vec::new();
    for (line, rec) in records(text) {
        let value = match rec.as_slice() {
            [var, bit] => {
                let var = number(line, var)?;
                if var != values.len() + 1 {
                    return Err(syntax(line, format!("expected variable {}, found {var}", values.len() + 1)));
                }
                match *bit {
                    "0" => false,
                    "1" => true,
                    other => return Err(syntax(line, format!("expected 0 or 1, found `{other}`"))),
                }
            }
            _ => return Err(syntax(line, "expected `<var> 0|1`")),
        };
        values.push(value);
    }
    Ok(Assignment::new(values))
}

/// Parses DIMACS CNF with exactly three literals per clause. The dialect is
/// chosen by the caller, never by the file.
pub fn parse_dimacs_cnf(text: &str, dialect: Dialect) -> Result<CnfFormula, CnfError> {
    let perr = |line: usize, message: String| CnfError::Parse { line, message };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = 0;
    'lines: for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(perr(line, "duplicate `p` line".into()));
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            header = match tokens.as_slice() {
                ["p", "cnf", n, m] => match (n.parse(), m.parse()) {
                    (Ok(n), Ok(m)) => Some((n, m)),
                    _ => return Err(perr(line, "bad counts in `p cnf` line".into())),
                },
                _ => return Err(perr(line, "expected `p cnf <vars> <clauses>`".into())),
            };
            continue;
        }
        if header.is_none() {
            return Err(perr(line, "clause before the `p cnf` header".into()));
        }
        for token in trimmed.split_whitespace() {
            let x: i64 = token
                .parse()
                .map_err(|_| perr(line, format!("expected an integer literal, found `{token}`")))?;
            match Literal::from_dimacs(x) {
                Some(lit) => current.push(lit),
                None => {
                    let clause: [Literal; 3] = current.as_slice().try_into().map_err(|_| {
                        perr(line, format!("clause has {} literals, expected 3", current.len()))
                    })?;
                    clauses.push(clause);
                    current.clear();
                }
            }
            if current.len() > 3 {
                return Err(perr(line, "clause has more than 3 literals".into()));
            }
        }
        if clauses.len() > header.map_or(0, |h| h.1) {
            break 'lines;
        }
    }
    let (n, m) = header.ok_or_else(|| perr(last_line.max(1), "missing `p cnf` header".into()))?;
    if !current.is_empty() {
        return Err(perr(last_line, "last clause is not terminated by 0".into()));
    }
    if clauses.len() != m {
        return Err(perr(last_line, format!("header promises {m} clauses, found {}", clauses.len())));
    }
    CnfFormula::new(n, clauses, dialect)
}

pub fn write_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.n_vars(), f.num_clauses());
    for c in f.clauses() {
        let _ = writeln!(out, "{} {} {} 0", c[0].to_dimacs(), c[1].to_dimacs(), c[2].to_dimacs());
    }
    out
}
