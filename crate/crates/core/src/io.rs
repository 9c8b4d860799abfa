//! Text formats: graph files, list files and coloring output.
//!
//! Graph file: a header `p <n> <m>`, then `m` lines `e <u> <v>`. Lines
//! starting with `c` are comments. Endpoints are 0-based ids; if any
//! endpoint is not an integer the file is read in label mode, where labels
//! get dense ids in order of first appearance.
//!
//! List file: one line `l <vertex> <c1> <c2> ...` per vertex.
//! Colorings are written as lines `v <vertex> <color>`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::graph::{Color, Coloring, Graph, GraphError, ListAssignment, VertexId};

/// A parsed graph together with its label table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    /// `labels[v]` is the name of vertex `v` in the input file.
    pub labels: Vec<String>,
}

impl GraphFile {
    pub fn unlabeled(graph: Graph) -> Self {
        let labels = graph.vertices().map(|v| v.to_string()).collect();
        GraphFile { graph, labels }
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn lookup(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label)
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse { line, msg: msg.into() }
}

fn is_comment(t: &str) -> bool {
    t.is_empty() || t.starts_with('c') && (t.len() == 1 || t.as_bytes()[1].is_ascii_whitespace())
}

/// Parses a graph file. See the module docs for the format.
pub fn parse_graph(text: &str) -> Result<GraphFile, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw: Vec<(usize, &str, &str)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let t = line.trim();
        if is_comment(t) {
            continue;
        }
        let tok: Vec<&str> = t.split_whitespace().collect();
        match tok[0] {
            "p" => {
                if header.is_some() {
                    return Err(parse_err(lineno, "second header line"));
                }
                if tok.len() != 3 {
                    return Err(parse_err(lineno, "expected `p <n> <m>`"));
                }
                let n = tok[1].parse().map_err(|_| parse_err(lineno, "bad vertex count"))?;
                let m = tok[2].parse().map_err(|_| parse_err(lineno, "bad edge count"))?;
                header = Some((n, m));
            }
            "e" => {
                if header.is_none() {
                    return Err(parse_err(lineno, "edge before header"));
                }
                if tok.len() != 3 {
                    return Err(parse_err(lineno, "expected `e <u> <v>`"));
                }
                raw.push((lineno, tok[1], tok[2]));
            }
            other => return Err(parse_err(lineno, format!("unknown line type `{other}`"))),
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing `p <n> <m>` header"))?;
    if raw.len() != m {
        return Err(parse_err(
            raw.last().map_or(0, |r| r.0),
            format!("header declares {m} edges, found {}", raw.len()),
        ));
    }

    let numeric = raw.iter().all(|(_, a, b)| a.parse::<usize>().is_ok() && b.parse::<usize>().is_ok());
    let mut labels: Vec<String> = Vec::new();
    let mut ids: HashMap<String, VertexId> = HashMap::new();
    let mut edges = Vec::with_capacity(m);
    for &(lineno, a, b) in &raw {
        let mut resolve = |tok: &str| -> Result<VertexId, GraphError> {
            if numeric {
                let v: usize = tok.parse().expect("checked numeric");
                if v >= n {
                    return Err(parse_err(lineno, format!("vertex {v} out of range (n = {n})")));
                }
                return Ok(v);
            }
            if let Some(&v) = ids.get(tok) {
                return Ok(v);
            }
            if labels.len() == n {
                return Err(parse_err(lineno, format!("more than {n} distinct labels")));
            }
            labels.push(tok.to_string());
            ids.insert(tok.to_string(), labels.len() - 1);
            Ok(labels.len() - 1)
        };
        let (u, v) = (resolve(a)?, resolve(b)?);
        if u == v {
            return Err(parse_err(lineno, format!("self-loop at `{a}`")));
        }
        edges.push((u, v));
    }
    let mut seen = std::collections::HashSet::new();
    for (&(u, v), &(lineno, a, b)) in edges.iter().zip(&raw) {
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(lineno, format!("duplicate edge `{a}`-`{b}`")));
        }
    }
    if numeric {
        labels = (0..n).map(|v| v.to_string()).collect();
    } else {
        let named = labels.len();
        labels.extend((named..n).map(|v| format!("#{v}")));
    }
    let graph = Graph::from_edges(n, &edges)?;
    Ok(GraphFile { graph, labels })
}

/// Writes a graph in the file format, with optional leading comment lines.
pub fn write_graph(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "p {} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

/// Parses a list file against the labels of `gf`. Every vertex needs a list.
pub fn parse_lists(text: &str, gf: &GraphFile) -> Result<ListAssignment, GraphError> {
    let n = gf.graph.n();
    let mut lists: Vec<Option<Vec<Color>>> = vec![None; n];
    let mut last_line = 0;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let t = line.trim();
        if is_comment(t) {
            continue;
        }
        let tok: Vec<&str> = t.split_whitespace().collect();
        if tok[0] != "l" || tok.len() < 2 {
            return Err(parse_err(lineno, "expected `l <vertex> <colors...>`"));
        }
        let v = gf.lookup(tok[1]).ok_or_else(|| parse_err(lineno, format!("unknown vertex `{}`", tok[1])))?;
        if lists[v].is_some() {
            return Err(parse_err(lineno, format!("second list for vertex `{}`", tok[1])));
        }
        let colors = tok[2..]
            .iter()
            .map(|c| match c.parse::<Color>() {
                Ok(0) | Err(_) => Err(parse_err(lineno, format!("bad color `{c}`"))),
                Ok(c) => Ok(c),
            })
            .collect::<Result<Vec<_>, _>>()?;
        lists[v] = Some(colors);
    }
    let lists = lists
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or_else(|| parse_err(last_line, format!("no list for vertex `{}`", gf.label(v)))))
        .collect::<Result<Vec<_>, _>>()?;
    ListAssignment::from_lists(lists)
}

pub fn write_lists(lists: &ListAssignment, gf: &GraphFile) -> String {
    let mut out = String::new();
    for v in 0..lists.len() {
        let _ = write!(out, "l {}", gf.label(v));
        for c in lists.list(v) {
            let _ = write!(out, " {c}");
        }
        out.push('\n');
    }
    out
}

/// One line `v <vertex> <color>` per colored vertex.
pub fn write_coloring(c: &Coloring, gf: &GraphFile) -> String {
    let mut out = String::new();
    for v in 0..c.len() {
        if let Some(col) = c.get(v) {
            let _ = writeln!(out, "v {} {col}", gf.label(v));
        }
    }
    out
}
