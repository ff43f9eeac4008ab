//! Text format for problem instances.
//!
//! ```text
//! cspath v1
//! n 3 m 2 M 19
//! A 0 1
//! B 2
//! e 0 2 3 5
//! e 1 2 7 2
//! ```
//!
//! Lines starting with `#` are comments. Vertex ids are 0-based.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::graph::{build_graph, BuildError, ProblemInstance, VertexId};

pub const FORMAT_HEADER: &str = "cspath v1";

#[derive(Error, Debug)]
pub enum ParseError {
    #[error("line {0}: {1}")]
    Malformed(usize, String),
    #[error("missing header `{FORMAT_HEADER}`")]
    MissingHeader,
    #[error("edge count mismatch: header says {expected}, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("graph construction failed: {0}")]
    Build(#[from] BuildError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub fn parse_instance(text: &str) -> Result<ProblemInstance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (_, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    if header != FORMAT_HEADER {
        return Err(ParseError::MissingHeader);
    }

    let mut n = None;
    let mut m = None;
    let mut budget = None;
    let mut sources: Vec<VertexId> = Vec::new();
    let mut targets: Vec<VertexId> = Vec::new();
    let mut edges: Vec<(u32, u32, u32, u32)> = Vec::new();

    for (lineno, line) in lines {
        let mut tok = line.split_whitespace();
        let malformed = |msg: &str| ParseError::Malformed(lineno, msg.to_string());
        match tok.next() {
            Some("n") => {
                let fields: Vec<&str> = std::iter::once("n").chain(tok).collect();
                // expected: n <count> m <count> M <budget>
                if fields.len() != 6 || fields[2] != "m" || fields[4] != "M" {
                    return Err(malformed("expected `n <vertices> m <edges> M <budget>`"));
                }
                n = Some(
                    fields[1].parse::<u32>().map_err(|e| malformed(&format!("bad n: {e}")))?,
                );
                m = Some(
                    fields[3].parse::<usize>().map_err(|e| malformed(&format!("bad m: {e}")))?,
                );
                budget = Some(
                    fields[5].parse::<i64>().map_err(|e| malformed(&format!("bad M: {e}")))?,
                );
            }
            Some("A") => {
                for t in tok {
                    let id = t.parse::<u32>().map_err(|e| malformed(&format!("bad id: {e}")))?;
                    sources.push(VertexId(id));
                }
            }
            Some("B") => {
                for t in tok {
                    let id = t.parse::<u32>().map_err(|e| malformed(&format!("bad id: {e}")))?;
                    targets.push(VertexId(id));
                }
            }
            Some("e") => {
                let vals: Result<Vec<i64>, _> = tok.map(|t| t.parse::<i64>()).collect();
                let vals = vals.map_err(|e| malformed(&format!("bad edge field: {e}")))?;
                if vals.len() != 4 {
                    return Err(malformed("expected `e <u> <v> <f1> <f2>`"));
                }
                if vals.iter().any(|&v| v < 0) || vals[0] > u32::MAX as i64 || vals[1] > u32::MAX as i64
                {
                    return Err(malformed("edge field out of range"));
                }
                edges.push((vals[0] as u32, vals[1] as u32, vals[2] as u32, vals[3] as u32));
            }
            Some(other) => {
                return Err(malformed(&format!("unknown record `{other}`")));
            }
            None => unreachable!("blank lines filtered"),
        }
    }

    let n = n.ok_or(ParseError::Malformed(0, "missing `n` line".into()))?;
    let budget = budget.ok_or(ParseError::Malformed(0, "missing budget".into()))?;
    if let Some(m) = m {
        if m != edges.len() {
            return Err(ParseError::EdgeCountMismatch { expected: m, found: edges.len() });
        }
    }
    let graph = build_graph(n, &edges)?;
    Ok(ProblemInstance::new(graph, sources, targets, budget))
}

pub fn write_instance(inst: &ProblemInstance) -> String {
    let mut out = String::new();
    let g = &inst.graph;
    let _ = writeln!(out, "{FORMAT_HEADER}");
    let _ = writeln!(out, "n {} m {} M {}", g.vertex_count(), g.edge_count(), inst.budget);
    let mut line = String::from("A");
    for v in &inst.sources {
        let _ = write!(line, " {v}");
    }
    let _ = writeln!(out, "{line}");
    let mut line = String::from("B");
    for v in &inst.targets {
        let _ = write!(line, " {v}");
    }
    let _ = writeln!(out, "{line}");
    for (u, v, f1, f2) in g.undirected_edges() {
        let _ = writeln!(out, "e {u} {v} {f1} {f2}");
    }
    out
}

pub fn load_instance(path: &Path) -> Result<ProblemInstance, ParseError> {
    let text = std::fs::read_to_string(path)?;
    parse_instance(&text)
}

pub fn save_instance(inst: &ProblemInstance, path: &Path) -> Result<(), ParseError> {
    std::fs::write(path, write_instance(inst))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# comment\ncspath v1\nn 3 m 2 M 19\nA 0 1\nB 2\ne 0 2 3 5\ne 1 2 7 2\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.graph.vertex_count(), 3);
        assert_eq!(inst.graph.edge_count(), 2);
        assert_eq!(inst.budget, 19);
        assert_eq!(inst.sources, vec![VertexId(0), VertexId(1)]);
        assert_eq!(inst.targets, vec![VertexId(2)]);

        let text2 = write_instance(&inst);
        let inst2 = parse_instance(&text2).unwrap();
        assert_eq!(write_instance(&inst2), text2);
    }

    #[test]
    fn rejects_bad_header_and_counts() {
        assert!(matches!(parse_instance("nope\n"), Err(ParseError::MissingHeader)));
        let text = "cspath v1\nn 2 m 2 M 5\nA 0\nB 1\ne 0 1 1 1\n";
        assert!(matches!(
            parse_instance(text),
            Err(ParseError::EdgeCountMismatch { expected: 2, found: 1 })
        ));
    }
}
