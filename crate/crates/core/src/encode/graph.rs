use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

/// Simple undirected graph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Graph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("line {line}: expected header `v <count>`")]
    MissingHeader { line: usize },
    #[error("line {line}: malformed header `{text}`")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: expected an edge `a b`, found `{text}`")]
    MalformedEdge { line: usize, text: String },
    #[error("line {line}: {source}")]
    InvalidEdge {
        line: usize,
        #[source]
        source: Box<GraphError>,
    },
    #[error("empty graph file")]
    Empty,
}

impl GraphError {
    pub fn line(&self) -> Option<usize> {
        match self {
            GraphError::MissingHeader { line }
            | GraphError::MalformedHeader { line, .. }
            | GraphError::MalformedEdge { line, .. }
            | GraphError::InvalidEdge { line, .. } => Some(*line),
            _ => None,
        }
    }
}

impl Graph {
    /// Builds a graph; edges are unordered and duplicates collapse.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(GraphError::VertexOutOfRange { vertex: v, vertex_count });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop { vertex: a });
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Graph {
            vertex_count,
            edges: set,
        })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need three vertices");
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(a, b)` with `a < b`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Indices (into `edges()` order) of the edges touching `v`.
    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == v || b == v)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| match () {
                _ if a == v => Some(b),
                _ if b == v => Some(a),
                _ => None,
            })
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.vertex_count * self.vertex_count.saturating_sub(1) / 2
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("v {}\n", self.vertex_count);
        for (a, b) in self.edges() {
            let _ = writeln!(out, "{a} {b}");
        }
        out
    }
}

/// Parses the edge-list format: a `v <count>` header, then one `a b` pair
/// per line with 0-based vertices. Blank lines and lines starting with `#`
/// or `c` are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#') && !l.starts_with('c'));
    let (line, header) = lines.next().ok_or(GraphError::Empty)?;
    let mut head = header.split_whitespace();
    if head.next() != Some("v") {
        return Err(GraphError::MissingHeader { line });
    }
    let vertex_count = match (head.next().map(str::parse::<usize>), head.next()) {
        (Some(Ok(n)), None) => n,
        _ => {
            return Err(GraphError::MalformedHeader {
                line,
                text: header.to_string(),
            })
        }
    };
    let mut graph = Graph::new(vertex_count, [])?;
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        let pair = match fields.as_slice() {
            [a, b] => a.parse::<usize>().ok().zip(b.parse::<usize>().ok()),
            _ => None,
        };
        let (a, b) = pair.ok_or_else(|| GraphError::MalformedEdge {
            line,
            text: text.to_string(),
        })?;
        let single = Graph::new(vertex_count, [(a, b)]).map_err(|e| GraphError::InvalidEdge {
            line,
            source: Box::new(e),
        })?;
        graph.edges.extend(single.edges);
    }
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let g = parse_edge_list("# triangle\nv 3\n0 1\n1 2\n\n2 0\n").unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse_edge_list("0 1\n"), Err(GraphError::MissingHeader { line: 1 }));
        assert!(matches!(parse_edge_list("v x\n"), Err(GraphError::MalformedHeader { line: 1, .. })));
        assert!(matches!(parse_edge_list("v 3\n0 1 2\n"), Err(GraphError::MalformedEdge { line: 2, .. })));
        let err = parse_edge_list("v 3\n0 1\n2 2\n").unwrap_err();
        assert_eq!(err.line(), Some(3));
        let err = parse_edge_list("v 2\n0 5\n").unwrap_err();
        assert_eq!(err.to_string(), "line 2: vertex 5 out of range for 2 vertices");
        assert_eq!(parse_edge_list(""), Err(GraphError::Empty));
    }

    #[test]
    fn degrees_and_incidence() {
        let g = Graph::path(3);
        assert_eq!((0..3).map(|v| g.degree(v)).collect::<Vec<_>>(), [1, 2, 1]);
        assert_eq!(g.incident_edges(1), [0, 1]);
        assert_eq!(g.neighbours(1), [0, 2]);
        assert!(!g.is_complete());
    }
}
