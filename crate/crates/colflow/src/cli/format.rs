//! Text formats: DIMACS-style instance files, solution listings, and the
//! linkage-base digraph format consumed by `generate weak2linkage`.
//!
//! Instance records, one per line: `c <comment>`, `p cfd <n> <m>`,
//! `n <s> <t>`, `a <tail> <head> <capacity> <flow> <colour>`. Vertices are
//! 1-indexed in files and 0-indexed internally; arc ids follow a-line
//! order. Solution records: an `s <cost> <num_paths> <num_cycles>` header,
//! then `P <value> <v1> ... <vk>` and `C <value> <v1> ... <vk> <v1>`
//! lines, each optionally followed by `@<arc-id>` tokens naming the arcs
//! (required only to disambiguate parallel arcs; the writer always emits
//! them).

use crate::core::{
    ArcId, ColouredNetwork, CycleFlow, Decomposition, Flow, FlowViolation, Instance, PathFlow,
    VertexId,
};
use crate::generators::LinkageBase;
use serde::Serialize;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn semantic(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Semantic {
        line,
        message: message.into(),
    }
}

/// Tokens of a line with their 1-based starting columns.
fn tokens_with_cols(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &text[s..]));
    }
    out
}

fn parse_int<T: std::str::FromStr>(
    line: usize,
    col: usize,
    token: &str,
    what: &str,
) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| syntax(line, col, format!("expected {what}, got {token:?}")))
}

fn file_vertex(line: usize, col: usize, token: &str, n: usize) -> Result<VertexId, ParseError> {
    let v: usize = parse_int(line, col, token, "a vertex id")?;
    if v == 0 || v > n {
        return Err(semantic(
            line,
            format!("vertex {v} out of range 1..={n}"),
        ));
    }
    Ok(v - 1)
}

struct RawRecord<'a> {
    line: usize,
    tokens: Vec<(usize, &'a str)>,
}

/// Splits text into non-comment records, checking nothing else.
fn records(text: &str) -> Vec<RawRecord<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let tokens = tokens_with_cols(raw);
            match tokens.first() {
                None => None,
                Some((_, "c")) => None,
                Some(_) => Some(RawRecord {
                    line: i + 1,
                    tokens,
                }),
            }
        })
        .collect()
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let records = records(text);
    let mut iter = records.iter();
    let first = iter
        .next()
        .ok_or_else(|| syntax(1, 1, "missing problem line"))?;
    let header_line = first.line;
    let (n, m) = match first.tokens.as_slice() {
        [(_, "p"), (_, "cfd"), (cn, nt), (cm, mt)] => (
            parse_int::<usize>(first.line, *cn, nt, "a vertex count")?,
            parse_int::<usize>(first.line, *cm, mt, "an arc count")?,
        ),
        [(col, "p"), ..] => {
            return Err(syntax(first.line, *col, "malformed problem line, expected `p cfd <n> <m>`"));
        }
        [(col, other), ..] => {
            return Err(syntax(
                first.line,
                *col,
                format!("expected problem line `p cfd <n> <m>`, got {other:?}"),
            ));
        }
        [] => unreachable!("comment records are filtered out"),
    };
    let mut terminals: Option<(VertexId, VertexId, usize)> = None;
    let mut arcs: Vec<(VertexId, VertexId, u64, u32)> = Vec::with_capacity(m);
    let mut flows: Vec<u64> = Vec::with_capacity(m);
    let mut arc_lines: Vec<usize> = Vec::with_capacity(m);
    for record in iter {
        let line = record.line;
        match record.tokens.as_slice() {
            [(col, "p"), ..] => {
                return Err(syntax(line, *col, "duplicate problem line"));
            }
            [(_, "n"), (cs, st), (ct, tt)] => {
                if terminals.is_some() {
                    return Err(syntax(line, 1, "duplicate terminals line"));
                }
                let s = file_vertex(line, *cs, st, n)?;
                let t = file_vertex(line, *ct, tt, n)?;
                terminals = Some((s, t, line));
            }
            [(col, "n"), ..] => {
                return Err(syntax(line, *col, "malformed terminals line, expected `n <s> <t>`"));
            }
            [(_, "a"), (c1, tt), (c2, ht), (c3, ut), (c4, xt), (c5, ct)] => {
                let tail = file_vertex(line, *c1, tt, n)?;
                let head = file_vertex(line, *c2, ht, n)?;
                let capacity: u64 = parse_int(line, *c3, ut, "a capacity")?;
                let value: u64 = parse_int(line, *c4, xt, "a flow value")?;
                let colour: u32 = parse_int(line, *c5, ct, "a colour")?;
                if tail == head {
                    return Err(semantic(line, format!("self-loop at vertex {}", tail + 1)));
                }
                if colour == 0 {
                    return Err(semantic(line, "colour must be a positive integer".to_string()));
                }
                if value > capacity {
                    return Err(semantic(
                        line,
                        format!("flow {value} exceeds capacity {capacity}"),
                    ));
                }
                arcs.push((tail, head, capacity, colour));
                flows.push(value);
                arc_lines.push(line);
            }
            [(col, "a"), ..] => {
                return Err(syntax(
                    line,
                    *col,
                    "malformed arc line, expected `a <tail> <head> <capacity> <flow> <colour>`",
                ));
            }
            [(col, other), ..] => {
                return Err(syntax(line, *col, format!("unknown record type {other:?}")));
            }
            [] => unreachable!("comment records are filtered out"),
        }
    }
    if arcs.len() != m {
        return Err(semantic(
            header_line,
            format!("problem line declares {m} arcs, found {}", arcs.len()),
        ));
    }
    let (source, sink, terminal_line) =
        terminals.ok_or_else(|| syntax(header_line, 1, "missing terminals line `n <s> <t>`"))?;
    let network = ColouredNetwork::new(n, arcs).map_err(|e| semantic(header_line, e.to_string()))?;
    let flow = Flow::new(source, sink, flows);
    Instance::new(network, flow, None).map_err(|e| {
        // Anchor per-arc violations at their a-line, global ones at the
        // terminals line.
        let line = e
            .violations
            .iter()
            .find_map(|v| match v {
                FlowViolation::CapacityExceeded { arc, .. } => Some(arc_lines[*arc]),
                _ => None,
            })
            .unwrap_or(terminal_line);
        semantic(line, e.to_string())
    })
}

pub fn serialize_instance(instance: &Instance) -> String {
    let network = &instance.network;
    let flow = &instance.flow;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "p cfd {} {}",
        network.vertex_count(),
        network.arc_count()
    );
    let _ = writeln!(out, "n {} {}", flow.source + 1, flow.sink + 1);
    for arc in network.arcs() {
        let _ = writeln!(
            out,
            "a {} {} {} {} {}",
            arc.tail + 1,
            arc.head + 1,
            arc.capacity,
            flow.values[arc.id],
            arc.colour
        );
    }
    out
}

/// One `P` or `C` record: a value, the 0-indexed vertex sequence as
/// written (cycles repeat their first vertex at the end), optional
/// explicit arc ids, and the source line for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionRecord {
    pub value: u64,
    pub vertices: Vec<VertexId>,
    pub arcs: Option<Vec<ArcId>>,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFile {
    pub cost: u64,
    pub paths: Vec<SolutionRecord>,
    pub cycles: Vec<SolutionRecord>,
}

fn parse_solution_record(
    record: &RawRecord<'_>,
    kind: &str,
    min_vertices: usize,
) -> Result<SolutionRecord, ParseError> {
    let line = record.line;
    let mut tokens = record.tokens[1..].iter();
    let (vcol, vt) = tokens
        .next()
        .ok_or_else(|| syntax(line, 1, format!("{kind} record needs a value")))?;
    let value: u64 = parse_int(line, *vcol, vt, "a value")?;
    let mut vertices = Vec::new();
    let mut arcs: Vec<ArcId> = Vec::new();
    let mut in_arcs = false;
    for (col, token) in tokens {
        if let Some(id) = token.strip_prefix('@') {
            in_arcs = true;
            let id: usize = parse_int(line, *col, id, "an arc id")?;
            if id == 0 {
                return Err(semantic(line, "arc ids are 1-indexed".to_string()));
            }
            arcs.push(id - 1);
        } else if in_arcs {
            return Err(syntax(line, *col, "vertex token after arc id tokens"));
        } else {
            let v: usize = parse_int(line, *col, token, "a vertex id")?;
            if v == 0 {
                return Err(semantic(line, "vertex ids are 1-indexed".to_string()));
            }
            vertices.push(v - 1);
        }
    }
    if vertices.len() < min_vertices {
        return Err(semantic(
            line,
            format!("{kind} record needs at least {min_vertices} vertices"),
        ));
    }
    if !arcs.is_empty() && arcs.len() != vertices.len() - 1 {
        return Err(semantic(
            line,
            format!(
                "{} arc ids given for {} vertex steps",
                arcs.len(),
                vertices.len() - 1
            ),
        ));
    }
    Ok(SolutionRecord {
        value,
        vertices,
        arcs: if arcs.is_empty() { None } else { Some(arcs) },
        line,
    })
}

pub fn parse_solution(text: &str) -> Result<SolutionFile, ParseError> {
    let records = records(text);
    let mut iter = records.iter();
    let first = iter
        .next()
        .ok_or_else(|| syntax(1, 1, "missing solution header"))?;
    let header_line = first.line;
    let (cost, num_paths, num_cycles) = match first.tokens.as_slice() {
        [(_, "s"), (c1, ct), (c2, pt), (c3, qt)] => (
            parse_int::<u64>(first.line, *c1, ct, "a cost")?,
            parse_int::<usize>(first.line, *c2, pt, "a path count")?,
            parse_int::<usize>(first.line, *c3, qt, "a cycle count")?,
        ),
        [(col, "s"), ..] => {
            return Err(syntax(
                first.line,
                *col,
                "malformed header, expected `s <cost> <num_paths> <num_cycles>`",
            ));
        }
        [(col, other), ..] => {
            return Err(syntax(
                first.line,
                *col,
                format!("expected solution header `s ...`, got {other:?}"),
            ));
        }
        [] => unreachable!("comment records are filtered out"),
    };
    let mut paths = Vec::with_capacity(num_paths);
    let mut cycles = Vec::with_capacity(num_cycles);
    for record in iter {
        match record.tokens.as_slice() {
            [(_, "P"), ..] => paths.push(parse_solution_record(record, "path", 2)?),
            [(_, "C"), ..] => {
                let rec = parse_solution_record(record, "cycle", 3)?;
                if rec.vertices.first() != rec.vertices.last() {
                    return Err(semantic(record.line, "cycle is not closed".to_string()));
                }
                cycles.push(rec);
            }
            [(col, "s"), ..] => {
                return Err(syntax(record.line, *col, "duplicate solution header"));
            }
            [(col, other), ..] => {
                return Err(syntax(
                    record.line,
                    *col,
                    format!("unknown record type {other:?}"),
                ));
            }
            [] => unreachable!("comment records are filtered out"),
        }
    }
    if paths.len() != num_paths || cycles.len() != num_cycles {
        return Err(semantic(
            header_line,
            format!(
                "header declares {num_paths} paths and {num_cycles} cycles, found {} and {}",
                paths.len(),
                cycles.len()
            ),
        ));
    }
    Ok(SolutionFile {
        cost,
        paths,
        cycles,
    })
}

/// Resolves a record's vertex sequence to arc ids. Explicit `@` ids are
/// checked against the endpoints; otherwise each step takes the smallest
/// arc id joining the pair.
fn resolve_arcs(
    network: &ColouredNetwork,
    record: &SolutionRecord,
) -> Result<Vec<ArcId>, ParseError> {
    let line = record.line;
    for &v in &record.vertices {
        if v >= network.vertex_count() {
            return Err(semantic(
                line,
                format!(
                    "vertex {} out of range 1..={}",
                    v + 1,
                    network.vertex_count()
                ),
            ));
        }
    }
    let steps: Vec<(VertexId, VertexId)> = record
        .vertices
        .windows(2)
        .map(|w| (w[0], w[1]))
        .collect();
    if let Some(ids) = &record.arcs {
        for (&id, &(from, to)) in ids.iter().zip(&steps) {
            if id >= network.arc_count() {
                return Err(semantic(
                    line,
                    format!("arc id {} out of range 1..={}", id + 1, network.arc_count()),
                ));
            }
            let arc = network.arc(id);
            if (arc.tail, arc.head) != (from, to) {
                return Err(semantic(
                    line,
                    format!(
                        "arc {} joins {}->{}, record steps {}->{}",
                        id + 1,
                        arc.tail + 1,
                        arc.head + 1,
                        from + 1,
                        to + 1
                    ),
                ));
            }
        }
        return Ok(ids.clone());
    }
    steps
        .iter()
        .map(|&(from, to)| {
            network
                .arcs()
                .iter()
                .find(|a| a.tail == from && a.head == to)
                .map(|a| a.id)
                .ok_or_else(|| {
                    semantic(line, format!("no arc from {} to {}", from + 1, to + 1))
                })
        })
        .collect()
}

/// Turns a parsed solution into a decomposition against `network`,
/// keeping the file's stated cost (verification checks it separately).
pub fn solution_to_decomposition(
    network: &ColouredNetwork,
    solution: &SolutionFile,
) -> Result<Decomposition, ParseError> {
    let mut paths = Vec::with_capacity(solution.paths.len());
    for record in &solution.paths {
        paths.push(PathFlow {
            arcs: resolve_arcs(network, record)?,
            value: record.value,
        });
    }
    let mut circulation = Vec::with_capacity(solution.cycles.len());
    for record in &solution.cycles {
        circulation.push(CycleFlow {
            arcs: resolve_arcs(network, record)?,
            value: record.value,
        });
    }
    Ok(Decomposition {
        paths,
        circulation,
        cost: solution.cost,
    })
}

fn write_solution_record(
    out: &mut String,
    kind: char,
    arcs: &[ArcId],
    value: u64,
    vertices: &[VertexId],
) {
    let _ = write!(out, "{kind} {value}");
    for &v in vertices {
        let _ = write!(out, " {}", v + 1);
    }
    for &id in arcs {
        let _ = write!(out, " @{}", id + 1);
    }
    out.push('\n');
}

pub fn serialize_solution(network: &ColouredNetwork, decomposition: &Decomposition) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "s {} {} {}",
        decomposition.cost,
        decomposition.paths.len(),
        decomposition.circulation.len()
    );
    for path in &decomposition.paths {
        write_solution_record(&mut out, 'P', &path.arcs, path.value, &path.vertices(network));
    }
    for cycle in &decomposition.circulation {
        write_solution_record(&mut out, 'C', &cycle.arcs, cycle.value, &cycle.vertices(network));
    }
    out
}

/// JSON mirror of the solution format; vertices and arc ids stay
/// 1-indexed to match the text files.
#[derive(Debug, Clone, Serialize)]
pub struct JsonRecord {
    pub value: u64,
    pub vertices: Vec<usize>,
    pub arcs: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct JsonSolution {
    pub cost: u64,
    pub num_paths: usize,
    pub num_cycles: usize,
    pub paths: Vec<JsonRecord>,
    pub cycles: Vec<JsonRecord>,
}

fn json_record(arcs: &[ArcId], value: u64, vertices: &[VertexId]) -> JsonRecord {
    JsonRecord {
        value,
        vertices: vertices.iter().map(|&v| v + 1).collect(),
        arcs: arcs.iter().map(|&id| id + 1).collect(),
    }
}

impl JsonSolution {
    pub fn from_decomposition(network: &ColouredNetwork, decomposition: &Decomposition) -> Self {
        JsonSolution {
            cost: decomposition.cost,
            num_paths: decomposition.paths.len(),
            num_cycles: decomposition.circulation.len(),
            paths: decomposition
                .paths
                .iter()
                .map(|p| json_record(&p.arcs, p.value, &p.vertices(network)))
                .collect(),
            cycles: decomposition
                .circulation
                .iter()
                .map(|c| json_record(&c.arcs, c.value, &c.vertices(network)))
                .collect(),
        }
    }
}

/// Linkage-base digraphs for the weak-2-linkage generator:
/// `p link <n> <m>`, `n <u1> <u2> <v1> <v2>`, then `a <tail> <head>`
/// lines, all 1-indexed.
pub fn parse_linkage_base(text: &str) -> Result<LinkageBase, ParseError> {
    let records = records(text);
    let mut iter = records.iter();
    let first = iter
        .next()
        .ok_or_else(|| syntax(1, 1, "missing problem line"))?;
    let header_line = first.line;
    let (n, m) = match first.tokens.as_slice() {
        [(_, "p"), (_, "link"), (cn, nt), (cm, mt)] => (
            parse_int::<usize>(first.line, *cn, nt, "a vertex count")?,
            parse_int::<usize>(first.line, *cm, mt, "an arc count")?,
        ),
        [(col, _), ..] => {
            return Err(syntax(
                first.line,
                *col,
                "expected problem line `p link <n> <m>`",
            ));
        }
        [] => unreachable!("comment records are filtered out"),
    };
    let mut terminals: Option<(VertexId, VertexId, VertexId, VertexId)> = None;
    let mut arcs = Vec::with_capacity(m);
    for record in iter {
        let line = record.line;
        match record.tokens.as_slice() {
            [(_, "n"), (c1, a), (c2, b), (c3, c), (c4, d)] => {
                if terminals.is_some() {
                    return Err(syntax(line, 1, "duplicate terminals line"));
                }
                terminals = Some((
                    file_vertex(line, *c1, a, n)?,
                    file_vertex(line, *c2, b, n)?,
                    file_vertex(line, *c3, c, n)?,
                    file_vertex(line, *c4, d, n)?,
                ));
            }
            [(_, "a"), (c1, tt), (c2, ht)] => {
                arcs.push((
                    file_vertex(line, *c1, tt, n)?,
                    file_vertex(line, *c2, ht, n)?,
                ));
            }
            [(col, _), ..] => {
                return Err(syntax(
                    line,
                    *col,
                    "expected `n <u1> <u2> <v1> <v2>` or `a <tail> <head>`",
                ));
            }
            [] => unreachable!("comment records are filtered out"),
        }
    }
    if arcs.len() != m {
        return Err(semantic(
            header_line,
            format!("problem line declares {m} arcs, found {}", arcs.len()),
        ));
    }
    let (u1, u2, v1, v2) = terminals.ok_or_else(|| {
        syntax(header_line, 1, "missing terminals line `n <u1> <u2> <v1> <v2>`")
    })?;
    Ok(LinkageBase {
        vertex_count: n,
        arcs,
        u1,
        u2,
        v1,
        v2,
    })
}
