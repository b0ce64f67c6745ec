use serde::Serialize;

use super::Graph;

pub const EULER_NOTE: &str = "no CNF layer; direct structural test";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EulerDecision {
    pub exists: bool,
    pub odd_count: usize,
    /// Connectivity over vertices of non-zero degree.
    pub connected: bool,
    pub note: &'static str,
}

/// Degree test: a path using every edge once exists iff the non-isolated
/// vertices are connected and 0 or 2 vertices have odd degree.
pub fn eulerian_path_exists(graph: &Graph) -> EulerDecision {
    let n = graph.vertex_count();
    let odd_count = (0..n).filter(|&v| graph.degree(v) % 2 == 1).count();
    let connected = match (0..n).find(|&v| graph.degree(v) > 0) {
        None => true,
        Some(start) => {
            let mut seen = vec![false; n];
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for w in graph.neighbours(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            (0..n).all(|v| seen[v] || graph.degree(v) == 0)
        }
    };
    EulerDecision {
        exists: connected && (odd_count == 0 || odd_count == 2),
        odd_count,
        connected,
        note: EULER_NOTE,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let k3 = eulerian_path_exists(&Graph::complete(3));
        assert!(k3.exists && k3.odd_count == 0);
        let k4 = eulerian_path_exists(&Graph::complete(4));
        assert!(!k4.exists && k4.odd_count == 4);
        let p3 = eulerian_path_exists(&Graph::path(3));
        assert!(p3.exists && p3.odd_count == 2);
    }

    #[test]
    fn isolated_vertices_do_not_block() {
        let g = Graph::new(5, [(0, 1), (1, 2)]).unwrap();
        assert!(eulerian_path_exists(&g).exists);
        let split = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let d = eulerian_path_exists(&split);
        assert!(!d.connected && !d.exists);
    }
}
