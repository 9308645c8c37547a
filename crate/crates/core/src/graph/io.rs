//! Plain-text graph files.
//!
//! ```text
//! <n> <directed: 1 or 0>
//! <u> <v> <cost>        one line per directed edge
//! ```
//!
//! Edge lines are grouped by source in ascending order, and each source's
//! lines follow its sorted outgoing list. Undirected graphs list both
//! directions of every edge. Incoming lists are rebuilt on load.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{GraphError, SortedDigraph};

pub fn write_graph<W: Write>(g: &SortedDigraph, w: W) -> Result<(), GraphError> {
    let mut w = BufWriter::new(w);
    writeln!(w, "{} {}", g.n(), u8::from(g.is_directed()))?;
    for (u, v, c) in g.edges() {
        writeln!(w, "{u} {v} {c}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn save(g: &SortedDigraph, path: impl AsRef<Path>) -> Result<(), GraphError> {
    write_graph(g, File::create(path)?)
}

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse { line, msg: msg.into() }
}

pub fn read_graph<R: Read>(r: R) -> Result<SortedDigraph, GraphError> {
    let mut lines = BufReader::new(r).lines().enumerate().filter_map(|(i, l)| match l {
        Ok(l) if l.trim().is_empty() => None,
        other => Some((i + 1, other)),
    });
    let (lineno, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let header = header?;
    let mut fields = header.split_whitespace();
    let n: usize =
        fields.next().and_then(|t| t.parse().ok()).ok_or_else(|| parse_err(lineno, "expected vertex count"))?;
    let directed = match fields.next() {
        Some("1") | Some("true") | Some("directed") => true,
        Some("0") | Some("false") | Some("undirected") => false,
        _ => return Err(parse_err(lineno, "expected directed flag 1 or 0")),
    };
    if fields.next().is_some() {
        return Err(parse_err(lineno, "trailing fields in header"));
    }
    if n == 0 {
        return Err(GraphError::Empty);
    }
    if n > u32::MAX as usize {
        return Err(parse_err(lineno, "vertex count out of range"));
    }

    let mut lists: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n];
    let mut last_source = 0usize;
    for (lineno, line) in lines {
        let line = line?;
        let mut f = line.split_whitespace();
        let mut num = |what: &str| f.next().ok_or_else(|| parse_err(lineno, format!("missing {what}")));
        let u: usize = num("source")?.parse().map_err(|_| parse_err(lineno, "bad source"))?;
        let v: usize = num("target")?.parse().map_err(|_| parse_err(lineno, "bad target"))?;
        let cost: f64 = num("cost")?.parse().map_err(|_| parse_err(lineno, "bad cost"))?;
        if f.next().is_some() {
            return Err(parse_err(lineno, "trailing fields"));
        }
        if u >= n || v >= n {
            return Err(GraphError::VertexOutOfRange { u, v, n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !(cost.is_finite() && cost >= 0.0) {
            return Err(GraphError::InvalidCost { u, v, cost });
        }
        if u < last_source {
            return Err(parse_err(lineno, "edges not grouped by ascending source"));
        }
        last_source = u;
        lists[u].push((v as u32, cost));
    }
    SortedDigraph::from_sorted_out_lists(n, directed, lists)
}

pub fn load(path: impl AsRef<Path>) -> Result<SortedDigraph, GraphError> {
    read_graph(File::open(path)?)
}
