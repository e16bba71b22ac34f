//! Source-problem inputs for the generators.
//!
//! * graphs: DIMACS `p edge <n> <m>` then `e <u> <v>`;
//! * formulas: DIMACS `p cnf <vars> <clauses>`, each clause three literals
//!   ended by `0`;
//! * exact cover: `p x3c <items> <sets>` then `s <a> <b> <c>`;
//! * weights: integers separated by commas or whitespace.
//!
//! Lines starting with `c` are comments in the DIMACS-style formats.

use super::{parse_int, ParseError};
use crate::model::Money;
use crate::reductions::{CnfFormula, SimpleGraph, X3CInstance};

/// Problem line number, its two counts and the numbered body lines.
type Dimacs<'a> = (usize, [usize; 2], Vec<(usize, Vec<&'a str>)>);

/// Content lines of a DIMACS-style file and the parsed `p <kind>` counts.
fn dimacs<'a>(text: &'a str, kind: &str) -> Result<Dimacs<'a>, ParseError> {
    let mut problem = None;
    let mut body = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.first() {
            None | Some(&"c") => {}
            Some(t) if t.starts_with('#') || t.starts_with('%') => {}
            Some(&"p") => {
                if problem.is_some() {
                    return Err(ParseError::at(n, "second problem line"));
                }
                if tokens.len() != 4 || tokens[1] != kind {
                    return Err(ParseError::at(
                        n,
                        format!("expected `p {kind} <count> <count>`"),
                    ));
                }
                problem = Some((
                    n,
                    [
                        parse_int(n, tokens[2], "count")?,
                        parse_int(n, tokens[3], "count")?,
                    ],
                ));
            }
            Some(_) if problem.is_none() => {
                return Err(ParseError::at(n, "data before the problem line"))
            }
            Some(_) => body.push((n, tokens)),
        }
    }
    let (line, counts) =
        problem.ok_or_else(|| ParseError::whole(format!("missing `p {kind}` line")))?;
    Ok((line, counts, body))
}

fn vertex(line: usize, token: &str, n: usize) -> Result<usize, ParseError> {
    let v: usize = parse_int(line, token, "vertex")?;
    if v == 0 || v > n {
        return Err(ParseError::at(
            line,
            format!("vertex {v} out of range 1..={n}"),
        ));
    }
    Ok(v - 1)
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph, ParseError> {
    let (p_line, [n, m], body) = dimacs(text, "edge")?;
    let mut edges = Vec::with_capacity(m);
    for (line, t) in body {
        if t[0] != "e" || t.len() != 3 {
            return Err(ParseError::at(line, "expected `e <u> <v>`"));
        }
        let u = vertex(line, t[1], n)?;
        let v = vertex(line, t[2], n)?;
        if u == v {
            return Err(ParseError::at(line, "self-loop"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::at(
            p_line,
            format!("declared {m} edges, found {}", edges.len()),
        ));
    }
    SimpleGraph::new(n, &edges).map_err(|e| ParseError::whole(e.to_string()))
}

pub fn parse_cnf(text: &str) -> Result<CnfFormula, ParseError> {
    let (p_line, [vars, count], body) = dimacs(text, "cnf")?;
    let mut clauses = Vec::with_capacity(count);
    let mut current: Vec<i32> = Vec::new();
    let mut last_line = p_line;
    for (line, t) in body {
        last_line = line;
        for tok in t {
            let lit: i32 = parse_int(line, tok, "literal")?;
            if lit == 0 {
                let clause: [i32; 3] = current.as_slice().try_into().map_err(|_| {
                    ParseError::at(
                        line,
                        format!("clause has {} literals, expected 3", current.len()),
                    )
                })?;
                clauses.push(clause);
                current.clear();
            } else if lit.unsigned_abs() as usize > vars {
                return Err(ParseError::at(
                    line,
                    format!("literal {lit} outside 1..={vars}"),
                ));
            } else {
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        return Err(ParseError::at(
            last_line,
            "last clause is not terminated by 0",
        ));
    }
    if clauses.len() != count {
        return Err(ParseError::at(
            p_line,
            format!("declared {count} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(vars, clauses).map_err(|e| ParseError::whole(e.to_string()))
}

pub fn parse_x3c(text: &str) -> Result<X3CInstance, ParseError> {
    let (p_line, [items, count], body) = dimacs(text, "x3c")?;
    let mut sets = Vec::with_capacity(count);
    for (line, t) in body {
        if t[0] != "s" || t.len() != 4 {
            return Err(ParseError::at(line, "expected `s <a> <b> <c>`"));
        }
        sets.push([
            vertex(line, t[1], items)?,
            vertex(line, t[2], items)?,
            vertex(line, t[3], items)?,
        ]);
    }
    if sets.len() != count {
        return Err(ParseError::at(
            p_line,
            format!("declared {count} sets, found {}", sets.len()),
        ));
    }
    X3CInstance::new(items, sets).map_err(|e| ParseError::whole(e.to_string()))
}

pub fn parse_weights(text: &str) -> Result<Vec<Money>, ParseError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| ParseError::whole(format!("weight `{t}` is not an integer")))
        })
        .collect()
}
