//! Graph file formats.
//!
//! Text format, one directive per line, `#` starts a comment:
//!
//! ```text
//! v <id>            vertex
//! e <id> <u> <v>    edge attached at u and v (u = v is a loop)
//! h <id> <u>        half-open edge at u
//! a <id>            open arc
//! c <k>             circle count
//! ```
//!
//! The JSON form mirrors [`TopoGraph`]'s serde layout.

use std::fmt::Write;

use thiserror::Error;

use crate::graph::{Slot, TopoGraph};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Text { line: usize, message: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

fn text_err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Text {
        line,
        message: message.into(),
    }
}

pub fn parse_text(input: &str) -> Result<TopoGraph, ParseError> {
    let mut g = TopoGraph::new();
    for (i, raw) in input.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let Some((&directive, args)) = tokens.split_first() else {
            continue;
        };
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(text_err(
                    lineno,
                    format!("`{directive}` takes {n} argument(s), found {}", args.len()),
                ))
            }
        };
        match directive {
            "v" => {
                arity(1)?;
                g.add_vertex(args[0]);
            }
            "e" => {
                arity(3)?;
                g.connect(args[0], args[1], args[2]);
            }
            "h" => {
                arity(2)?;
                g.half_open(args[0], args[1]);
            }
            "a" => {
                arity(1)?;
                g.open_arc(args[0]);
            }
            "c" => {
                arity(1)?;
                g.circles = args[0]
                    .parse()
                    .map_err(|_| text_err(lineno, format!("bad circle count `{}`", args[0])))?;
            }
            other => return Err(text_err(lineno, format!("unknown directive `{other}`"))),
        }
    }
    Ok(g)
}

pub fn parse_json(input: &str) -> Result<TopoGraph, ParseError> {
    Ok(serde_json::from_str(input)?)
}

/// Picks the JSON parser when the first non-blank character is `{`.
pub fn parse_auto(input: &str) -> Result<TopoGraph, ParseError> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

/// Text rendering. A half-open edge is always written with its attached end first.
pub fn to_text(g: &TopoGraph) -> String {
    let mut out = String::new();
    for v in &g.vertices {
        writeln!(out, "v {v}").unwrap();
    }
    for e in &g.edges {
        match (&e.ends[0], &e.ends[1]) {
            (Slot::Attached(a), Slot::Attached(b)) => writeln!(out, "e {} {a} {b}", e.id),
            (Slot::Attached(a), Slot::Open) | (Slot::Open, Slot::Attached(a)) => {
                writeln!(out, "h {} {a}", e.id)
            }
            (Slot::Open, Slot::Open) => writeln!(out, "a {}", e.id),
        }
        .unwrap();
    }
    if g.circles != 0 {
        writeln!(out, "c {}", g.circles).unwrap();
    }
    out
}

pub fn to_json(g: &TopoGraph) -> String {
    serde_json::to_string_pretty(g).expect("graph serializes")
}
