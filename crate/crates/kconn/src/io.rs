//! Text formats: graph files, update traces, certificate exports.
//!
//! Graph format: first line `n m k`, then m lines `u v` with u < v, written
//! in ascending order. The writer's output round-trips bit-exactly.
//!
//! Trace format: one command per line, `a u v` or `d u v`; `#` starts a
//! comment, blank lines are ignored.
//!
//! Certificate format: k lines; line i holds the level-i edges as `u,v`
//! pairs, space-separated, in ascending order (possibly empty).

use thiserror::Error;

use crate::certificate::SparseCertificate;
use crate::graph::Graph;
use crate::maintainer::{Command, UpdateTrace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: invalid edge: {msg}")]
    BadEdge { line: usize, msg: String },
    #[error("expected {expected} edge lines, found {found}")]
    WrongEdgeCount { expected: usize, found: usize },
}

fn malformed(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        msg: msg.into(),
    }
}

pub fn write_graph(g: &Graph, k: usize) -> String {
    let mut out = format!("{} {} {}\n", g.vertex_count(), g.edge_count(), k);
    for e in g.sorted_edges() {
        out.push_str(&format!("{} {}\n", e.a(), e.b()));
    }
    out
}

/// Parses a graph file, returning the graph and the k recorded in its
/// header. Every edge line must satisfy u < v.
pub fn parse_graph(text: &str) -> Result<(Graph, usize), ParseError> {
    let mut lines = text.lines().enumerate();
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| malformed(1, "empty file, expected header `n m k`"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(malformed(lineno + 1, "header must be `n m k`"));
    }
    let parse_num = |s: &str, what: &str, line: usize| {
        s.parse::<usize>()
            .map_err(|_| malformed(line, format!("{what} `{s}` is not a number")))
    };
    let n = parse_num(fields[0], "vertex count", lineno + 1)?;
    let m = parse_num(fields[1], "edge count", lineno + 1)?;
    let k = parse_num(fields[2], "k", lineno + 1)?;

    let mut g = Graph::new(n);
    let mut found = 0;
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(malformed(idx + 1, "edge line must be `u v`"));
        }
        let u = parse_num(fields[0], "endpoint", idx + 1)?;
        let v = parse_num(fields[1], "endpoint", idx + 1)?;
        if u >= v {
            return Err(ParseError::BadEdge {
                line: idx + 1,
                msg: format!("edges are written u < v, got {u} {v}"),
            });
        }
        g.add_edge(u, v).map_err(|e| ParseError::BadEdge {
            line: idx + 1,
            msg: e.to_string(),
        })?;
        found += 1;
    }
    if found != m {
        return Err(ParseError::WrongEdgeCount { expected: m, found });
    }
    Ok((g, k))
}

pub fn write_trace(trace: &UpdateTrace) -> String {
    let mut out = String::new();
    for cmd in &trace.commands {
        match cmd {
            Command::Add(u, v) => out.push_str(&format!("a {u} {v}\n")),
            Command::Delete(u, v) => out.push_str(&format!("d {u} {v}\n")),
        }
    }
    out
}

pub fn parse_trace(text: &str) -> Result<UpdateTrace, ParseError> {
    let mut commands = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(malformed(
                idx + 1,
                "command line must be `a u v` or `d u v`",
            ));
        }
        let u = fields[1]
            .parse::<usize>()
            .map_err(|_| malformed(idx + 1, format!("bad vertex `{}`", fields[1])))?;
        let v = fields[2]
            .parse::<usize>()
            .map_err(|_| malformed(idx + 1, format!("bad vertex `{}`", fields[2])))?;
        let cmd = match fields[0] {
            "a" => Command::Add(u, v),
            "d" => Command::Delete(u, v),
            other => {
                return Err(malformed(
                    idx + 1,
                    format!("unknown command `{other}`, expected `a` or `d`"),
                ))
            }
        };
        commands.push(cmd);
    }
    Ok(UpdateTrace::new(commands))
}

pub fn write_certificate(cert: &SparseCertificate) -> String {
    let mut out = String::new();
    for level in 1..=cert.k() {
        let edges = cert
            .level_edges(level)
            .expect("level in range")
            .iter()
            .map(|e| format!("{},{}", e.a(), e.b()))
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&edges);
        out.push('\n');
    }
    out
}

/// Parses a certificate export into per-level endpoint lists. Structural
/// validation (forest-ness, disjointness, membership in a graph) is the
/// caller's job; this only checks the syntax.
pub fn parse_certificate(text: &str) -> Result<Vec<Vec<(usize, usize)>>, ParseError> {
    let mut levels = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let mut level = Vec::new();
        for pair in raw.split_whitespace() {
            let (u, v) = pair
                .split_once(',')
                .ok_or_else(|| malformed(idx + 1, format!("expected `u,v`, got `{pair}`")))?;
            let u = u
                .parse::<usize>()
                .map_err(|_| malformed(idx + 1, format!("bad vertex `{u}`")))?;
            let v = v
                .parse::<usize>()
                .map_err(|_| malformed(idx + 1, format!("bad vertex `{v}`")))?;
            level.push((u, v));
        }
        levels.push(level);
    }
    Ok(levels)
}
