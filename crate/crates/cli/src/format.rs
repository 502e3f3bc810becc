// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Instance and solution text formats. Vertices and colors are 1-indexed in
//! files and 0-indexed everywhere else.
//!
//! ```text
//! # comment
//! p bcp <n> <m> <c>
//! b <color> <budget>      (one line per color)
//! e <u> <v>               (one line per edge)
//! ```
//!
//! Solutions are `s YES` followed by one `v <vertex> <color>` line per
//! vertex, or just `s NO`.

use std::fmt::Write as _;

use bcolor_core::{BcpInstance, Coloring, Graph, SolveResult, Violation};

use crate::error::CliError;

fn parse_err(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Significant lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
}

fn number(line: usize, field: &str) -> Result<usize, CliError> {
    field
        .parse()
        .map_err(|_| parse_err(line, format!("expected a non-negative integer, found `{field}`")))
}

/// A 1-indexed id in `1..=bound`, returned 0-indexed.
fn index(line: usize, field: &str, bound: usize, what: &str) -> Result<usize, CliError> {
    let x = number(line, field)?;
    if x == 0 || x > bound {
        return Err(parse_err(line, format!("{what} {x} out of range 1..={bound}")));
    }
    Ok(x - 1)
}

pub fn parse_instance(text: &str) -> Result<BcpInstance, CliError> {
    let mut it = lines(text);
    let (hl, header) = it.next().ok_or_else(|| parse_err(0, "missing `p bcp` header"))?;
    if header.len() != 5 || header[0] != "p" || header[1] != "bcp" {
        return Err(parse_err(hl, "header must be `p bcp <n> <m> <c>`"));
    }
    let n = number(hl, header[2])?;
    let m = number(hl, header[3])?;
    let c = number(hl, header[4])?;
    if c == 0 {
        return Err(parse_err(hl, "at least one color is required"));
    }
    let mut budgets: Vec<Option<usize>> = vec![None; c];
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    for (ln, fields) in it {
        match fields.as_slice() {
            ["b", i, b] => {
                let i = index(ln, i, c, "color")?;
                if budgets[i].replace(number(ln, b)?).is_some() {
                    return Err(parse_err(ln, format!("duplicate budget for color {}", i + 1)));
                }
            }
            ["e", u, v] => {
                let u = index(ln, u, n, "vertex")?;
                let v = index(ln, v, n, "vertex")?;
                if u == v {
                    return Err(parse_err(ln, format!("self-loop at vertex {}", u + 1)));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(parse_err(ln, format!("duplicate edge {} {}", u + 1, v + 1)));
                }
                edges.push((u, v));
            }
            _ => return Err(parse_err(ln, "expected `b <color> <budget>` or `e <u> <v>`")),
        }
    }
    if edges.len() != m {
        return Err(parse_err(hl, format!("header declares {m} edges, found {}", edges.len())));
    }
    let budgets = budgets
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| parse_err(hl, format!("no budget line for color {}", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    let g = Graph::new(n, edges).map_err(|e| parse_err(hl, e.to_string()))?;
    BcpInstance::new(g, budgets).map_err(|e| parse_err(hl, e.to_string()))
}

pub fn emit_instance(inst: &BcpInstance) -> String {
    let g = inst.graph();
    let mut out = format!("p bcp {} {} {}\n", g.n(), g.edge_count(), inst.colors());
    for (i, b) in inst.budgets().iter().enumerate() {
        writeln!(out, "b {} {}", i + 1, b).unwrap();
    }
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn emit_solution(res: &SolveResult) -> String {
    match res {
        SolveResult::No => "s NO\n".to_string(),
        SolveResult::Yes(col) => {
            let mut out = String::from("s YES\n");
            for (v, a) in col.as_slice().iter().enumerate() {
                writeln!(out, "v {} {}", v + 1, a + 1).unwrap();
            }
            out
        }
    }
}

/// Parses a solution for an instance with `n` vertices and `c` colors.
pub fn parse_solution(text: &str, n: usize, c: usize) -> Result<SolveResult, CliError> {
    let mut it = lines(text);
    let (sl, status) = it.next().ok_or_else(|| parse_err(0, "missing `s` line"))?;
    match status.as_slice() {
        ["s", "NO"] => {
            if let Some((ln, _)) = it.next() {
                return Err(parse_err(ln, "a NO solution has no vertex lines"));
            }
            Ok(SolveResult::No)
        }
        ["s", "YES"] => {
            let mut colors: Vec<Option<usize>> = vec![None; n];
            for (ln, fields) in it {
                let ["v", v, a] = fields.as_slice() else {
                    return Err(parse_err(ln, "expected `v <vertex> <color>`"));
                };
                let v = index(ln, v, n, "vertex")?;
                let a = index(ln, a, c, "color")?;
                if colors[v].replace(a).is_some() {
                    return Err(parse_err(ln, format!("vertex {} colored twice", v + 1)));
                }
            }
            let colors = colors
                .into_iter()
                .enumerate()
                .map(|(v, a)| a.ok_or_else(|| parse_err(sl, format!("vertex {} has no color", v + 1))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(SolveResult::Yes(Coloring::new(colors)))
        }
        _ => Err(parse_err(sl, "expected `s YES` or `s NO`")),
    }
}

/// A violation in file numbering.
pub fn describe(v: &Violation) -> String {
    match *v {
        Violation::Length { expected, got } => {
            format!("coloring covers {got} vertices, graph has {expected}")
        }
        Violation::ColorOutOfRange { vertex, color } => {
            format!("vertex {} has out-of-range color {}", vertex + 1, color + 1)
        }
        Violation::Conflict { u, v, color } => {
            format!("edge {} {} has both endpoints colored {}", u + 1, v + 1, color + 1)
        }
        Violation::OverBudget {
            color,
            used,
            budget,
        } => format!("color {} used {used} times, budget {budget}", color + 1),
        Violation::NotEquitable { color, size } => {
            format!("color class {} has unbalanced size {size}", color + 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const K2: &str = "# two vertices\np bcp 2 1 2\nb 1 1\nb 2 1\ne 1 2\n";

    #[test]
    fn round_trip() {
        let inst = parse_instance(K2).unwrap();
        assert_eq!(inst.budgets(), &[1, 1]);
        assert_eq!(inst.graph().edges(), &[(0, 1)]);
        let canon = emit_instance(&inst);
        assert_eq!(canon, "p bcp 2 1 2\nb 1 1\nb 2 1\ne 1 2\n");
        assert_eq!(emit_instance(&parse_instance(&canon).unwrap()), canon);
    }

    #[test]
    fn edges_are_canonicalized() {
        let inst = parse_instance("p bcp 3 2 1\nb 1 3\ne 3 2\ne 2 1\n").unwrap();
        assert_eq!(emit_instance(&inst), "p bcp 3 2 1\nb 1 3\ne 1 2\ne 2 3\n");
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "",
            "p bcp 2 1\n",
            "p bcp 2 1 2\nb 1 1\ne 1 2\n",
            "p bcp 2 1 2\nb 1 1\nb 2 1\nb 2 1\ne 1 2\n",
            "p bcp 2 1 2\nb 1 1\nb 3 1\ne 1 2\n",
            "p bcp 2 1 1\nb 1 1\ne 1 3\n",
            "p bcp 2 1 1\nb 1 1\ne 1 1\n",
            "p bcp 2 2 1\nb 1 1\ne 1 2\ne 2 1\n",
            "p bcp 2 2 1\nb 1 1\ne 1 2\n",
            "p bcp 2 0 1\nb 1 -1\n",
            "p bcp 2 0 0\n",
            "p bcp 2 0 1\nb 1 1\nx 1\n",
        ] {
            assert!(matches!(parse_instance(bad), Err(CliError::Parse { .. })), "{bad:?}");
        }
    }

    #[test]
    fn solution_round_trip() {
        let yes = SolveResult::Yes(Coloring::new(vec![1, 0]));
        let text = emit_solution(&yes);
        assert_eq!(text, "s YES\nv 1 2\nv 2 1\n");
        assert_eq!(parse_solution(&text, 2, 2).unwrap(), yes);
        assert_eq!(parse_solution("s NO\n", 2, 2).unwrap(), SolveResult::No);
    }

    #[test]
    fn rejects_truncated_solution() {
        assert!(parse_solution("s YES\nv 1 2\n", 2, 2).is_err());
        assert!(parse_solution("", 2, 2).is_err());
        assert!(parse_solution("s YES\nv 1 3\nv 2 1\n", 2, 2).is_err());
        assert!(parse_solution("s MAYBE\n", 2, 2).is_err());
    }
}
