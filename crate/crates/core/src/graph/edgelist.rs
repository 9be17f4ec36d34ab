//! Whitespace-separated edge-list text format, one edge per line:
//!
//! ```text
//! # comment
//! u v weight attribute
//! ```
//!
//! Vertex ids are 0-based; the vertex count is the largest id plus one.

use std::fs;
use std::io::Write;
use std::path::Path;

use super::{Edge, Graph};
use crate::error::{Error, Result};

impl Graph {
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut edges = Vec::new();
        let mut max_vertex = None::<usize>;
        for (i, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            let lineno = i + 1;
            if fields.len() != 4 {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected 4 fields `u v weight attribute`, got {}", fields.len()),
                });
            }
            let vertex = |s: &str| {
                s.parse::<usize>().map_err(|e| Error::Parse {
                    line: lineno,
                    message: format!("bad vertex id {s:?}: {e}"),
                })
            };
            let real = |s: &str| {
                s.parse::<f64>().map_err(|e| Error::Parse {
                    line: lineno,
                    message: format!("bad number {s:?}: {e}"),
                })
            };
            let e = Edge::new(
                vertex(fields[0])?,
                vertex(fields[1])?,
                real(fields[2])?,
                real(fields[3])?,
            );
            max_vertex = Some(max_vertex.unwrap_or(0).max(e.u).max(e.v));
            edges.push(e);
        }
        let n = max_vertex.map_or(0, |v| v + 1);
        Graph::new(n, edges)
    }

    pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
        Graph::parse_edge_list(&fs::read_to_string(path)?)
    }

    /// Writes the edge list with full round-trip precision.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# n={} m={}", self.n(), self.m())?;
        writeln!(out, "# u v weight attribute")?;
        for e in self.edges() {
            writeln!(out, "{} {} {:?} {:?}", e.u, e.v, e.weight, e.attribute)?;
        }
        Ok(())
    }

    pub fn to_edge_list_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_edge_list(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("edge list is ASCII")
    }
}
