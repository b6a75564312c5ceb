//! Line-oriented instance files.
//!
//! ```text
//! c any number of comment lines
//! p vc-struct <n> <m> <k> <d> <class>
//! e <u> <v>
//! x <v1> <v2> ...
//! ```
//!
//! Vertices are numbered `1..=n`. The header declares the vertex count `n`,
//! the edge count `m`, the independent set target `k`, the width `d` and the
//! class tag. Exactly `m` edge lines must follow; the optional `x` line
//! lists the modulator (a bare `x`, or no `x` line, means it is empty).
//!
//! Parsed instances use the file labels directly, so `parse(emit(inst))`
//! returns `inst` whenever the labels are `1..=n`. Emitting an instance
//! whose labels have gaps (for example after the pipeline deleted vertices)
//! renumbers them densely in ascending order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use quasikernel_core::{ClassTag, Graph, Instance, InstanceError, Vertex, VertexSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    /// Whole-file problems that no single line causes.
    #[error("{0}")]
    Structure(String),
    #[error(transparent)]
    Invalid(#[from] InstanceError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

struct Header {
    n: u32,
    m: usize,
    k: i64,
    d: u32,
    class: ClassTag,
}

fn parse_header(line_no: usize, tokens: &[&str]) -> Result<Header, ParseError> {
    if tokens.len() != 6 || tokens[0] != "vc-struct" {
        return Err(syntax(line_no, "header must be `p vc-struct <n> <m> <k> <d> <class>`"));
    }
    let n = tokens[1]
        .parse::<u32>()
        .map_err(|_| syntax(line_no, format!("vertex count {:?} is not a non-negative integer", tokens[1])))?;
    let m = tokens[2]
        .parse::<usize>()
        .map_err(|_| syntax(line_no, format!("edge count {:?} is not a non-negative integer", tokens[2])))?;
    let k = tokens[3]
        .parse::<i64>()
        .map_err(|_| syntax(line_no, format!("target {:?} is not an integer", tokens[3])))?;
    let d = tokens[4]
        .parse::<u32>()
        .map_err(|_| syntax(line_no, format!("width {:?} is not a non-negative integer", tokens[4])))?;
    let class = tokens[5].parse::<ClassTag>().map_err(|e| syntax(line_no, e))?;
    Ok(Header { n, m, k, d, class })
}

fn parse_vertex(line_no: usize, token: &str, n: u32) -> Result<Vertex, ParseError> {
    let v = token
        .parse::<u32>()
        .map_err(|_| syntax(line_no, format!("vertex {token:?} is not a positive integer")))?;
    if v == 0 || v > n {
        return Err(syntax(line_no, format!("vertex {v} is out of range 1..={n}")));
    }
    Ok(v)
}

/// Parses the text format into a validated instance. `cap` bounds the
/// brute-force work of the per-component class check.
pub fn parse_instance(text: &str, cap: usize) -> Result<Instance, ParseError> {
    let mut header: Option<Header> = None;
    let mut edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    let mut modulator: Option<VertexSet> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        let Some((&tag, rest)) = tokens.split_first() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(syntax(line_no, "duplicate header"));
                }
                header = Some(parse_header(line_no, rest)?);
            }
            "e" => {
                let h = header.as_ref().ok_or_else(|| syntax(line_no, "edge before header"))?;
                if rest.len() != 2 {
                    return Err(syntax(line_no, "edge line must be `e <u> <v>`"));
                }
                let u = parse_vertex(line_no, rest[0], h.n)?;
                let v = parse_vertex(line_no, rest[1], h.n)?;
                if u == v {
                    return Err(syntax(line_no, format!("self-loop at vertex {u}")));
                }
                if !edges.insert((u.min(v), u.max(v))) {
                    return Err(syntax(line_no, format!("duplicate edge {} {}", u.min(v), u.max(v))));
                }
            }
            "x" => {
                let h = header.as_ref().ok_or_else(|| syntax(line_no, "modulator before header"))?;
                if modulator.is_some() {
                    return Err(syntax(line_no, "duplicate modulator line"));
                }
                let mut x = VertexSet::new();
                for token in rest {
                    let v = parse_vertex(line_no, token, h.n)?;
                    if x.contains(v) {
                        return Err(syntax(line_no, format!("repeated modulator vertex {v}")));
                    }
                    x.insert(v);
                }
                modulator = Some(x);
            }
            other => return Err(syntax(line_no, format!("unknown line type {other:?}"))),
        }
    }
    let header = header.ok_or_else(|| ParseError::Structure("missing `p vc-struct` header".into()))?;
    if edges.len() != header.m {
        return Err(ParseError::Structure(format!(
            "header declares {} edges, found {}",
            header.m,
            edges.len()
        )));
    }
    let edge_list: Vec<(Vertex, Vertex)> = edges.into_iter().collect();
    let graph = Graph::from_labeled_edges(1..=header.n, &edge_list)
        .expect("edge endpoints were range-checked and deduplicated");
    let instance = Instance::with_cap(
        graph,
        modulator.unwrap_or_default(),
        header.k,
        header.d,
        header.class,
        cap,
    )?;
    Ok(instance)
}

/// Serializes an instance in the text format, renumbering vertices densely
/// to `1..=n` in ascending label order.
pub fn emit_instance(inst: &Instance) -> String {
    let relabel: BTreeMap<Vertex, u32> = inst
        .graph()
        .vertices()
        .enumerate()
        .map(|(i, v)| (v, i as u32 + 1))
        .collect();
    let mut out = String::new();
    writeln!(
        out,
        "p vc-struct {} {} {} {} {}",
        inst.graph().vertex_count(),
        inst.graph().edge_count(),
        inst.k(),
        inst.d(),
        inst.class()
    )
    .unwrap();
    for (u, v) in inst.graph().edges() {
        let (a, b) = (relabel[&u], relabel[&v]);
        writeln!(out, "e {} {}", a.min(b), a.max(b)).unwrap();
    }
    out.push('x');
    for v in inst.modulator().iter() {
        write!(out, " {}", relabel[&v]).unwrap();
    }
    out.push('\n');
    out
}
