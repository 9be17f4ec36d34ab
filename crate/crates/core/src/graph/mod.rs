//! Graph model: public edge weights decide the shortest paths, private edge
//! attributes are what queries aggregate.

mod edgelist;
mod paths;
mod tree;

pub use paths::{AugDist, HubSet, PathIndex, SourceRow};
pub use tree::SpTree;

use std::collections::HashSet;

use crate::error::{Error, Result};

/// An undirected edge with a public weight and a private attribute.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    pub attribute: f64,
}

impl Edge {
    pub fn new(u: usize, v: usize, weight: f64, attribute: f64) -> Self {
        Edge {
            u,
            v,
            weight,
            attribute,
        }
    }

    /// Endpoint opposite to `x`. `x` must be an endpoint.
    #[inline]
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Connected, simple, undirected graph. Edge indices are stable and follow
/// the input order.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Validates and builds a graph on vertices `0..n`.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); n];
        for (index, e) in edges.iter().enumerate() {
            for vertex in [e.u, e.v] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { index, vertex, n });
                }
            }
            if e.u == e.v {
                return Err(Error::SelfLoop { index, vertex: e.u });
            }
            if !(e.weight.is_finite() && e.weight >= 0.0) {
                return Err(Error::InvalidWeight {
                    index,
                    weight: e.weight,
                });
            }
            if !(e.attribute.is_finite() && e.attribute >= 0.0) {
                return Err(Error::InvalidAttribute {
                    index,
                    attribute: e.attribute,
                });
            }
            let key = (e.u.min(e.v), e.u.max(e.v));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge {
                    index,
                    u: key.0,
                    v: key.1,
                });
            }
            adjacency[e.u].push((e.v, index));
            adjacency[e.v].push((e.u, index));
        }
        let graph = Graph {
            n,
            edges,
            adjacency,
        };
        if let Some(unreached) = graph.first_unreachable() {
            return Err(Error::Disconnected { unreached });
        }
        Ok(graph)
    }

    fn first_unreachable(&self) -> Option<usize> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &(y, _) in &self.adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.iter().position(|s| !s)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, index: usize) -> &Edge {
        &self.edges[index]
    }

    #[inline]
    pub fn attribute(&self, index: usize) -> f64 {
        self.edges[index].attribute
    }

    /// `(neighbor, edge index)` pairs incident to `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn attributes(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.attribute).collect()
    }

    /// Same topology and weights with a replacement attribute vector. Shortest
    /// paths are unaffected, so an existing [`PathIndex`] stays valid.
    pub fn with_attributes(&self, attributes: &[f64]) -> Result<Graph> {
        if attributes.len() != self.m() {
            return Err(Error::InvalidParameter(format!(
                "expected {} attributes, got {}",
                self.m(),
                attributes.len()
            )));
        }
        let mut out = self.clone();
        for (index, (e, &a)) in out.edges.iter_mut().zip(attributes).enumerate() {
            if !(a.is_finite() && a >= 0.0) {
                return Err(Error::InvalidAttribute {
                    index,
                    attribute: a,
                });
            }
            e.attribute = a;
        }
        Ok(out)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n })
        }
    }
}
