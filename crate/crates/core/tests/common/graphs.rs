//! Small-graph enumeration and brute-force oracles.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cdfsat::encode::Graph;

pub type Edges = Vec<(usize, usize)>;

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Smallest relabelled edge list over relabellings that keep vertices
/// sorted by (degree, neighbour degrees).
pub fn canonical(n: usize, edges: &[(usize, usize)]) -> Edges {
    let degree = |v: usize| edges.iter().filter(|&&(a, b)| a == v || b == v).count();
    let key = |v: usize| {
        let mut nd: Vec<usize> = edges
            .iter()
            .filter_map(|&(a, b)| if a == v { Some(degree(b)) } else if b == v { Some(degree(a)) } else { None })
            .collect();
        nd.sort_unstable();
        (degree(v), nd)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| key(v));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if key(c[0]) == key(v) => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let options: Vec<Vec<Vec<usize>>> = classes.iter().map(|c| permutations(c)).collect();
    let mut best: Option<Edges> = None;
    let mut choice = vec![0usize; options.len()];
    loop {
        let sequence: Vec<usize> = options.iter().zip(&choice).flat_map(|(o, &i)| o[i].iter().copied()).collect();
        let mut label = vec![0; n];
        for (pos, &v) in sequence.iter().enumerate() {
            label[v] = pos;
        }
        let mut relabelled: Edges = edges
            .iter()
            .map(|&(a, b)| (label[a].min(label[b]), label[a].max(label[b])))
            .collect();
        relabelled.sort_unstable();
        if best.as_ref().is_none_or(|b| relabelled < *b) {
            best = Some(relabelled);
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return best.expect("at least one labelling");
            }
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Every graph on exactly `n` vertices with at most `max_edges` edges, one
/// per isomorphism class.
pub fn graphs_up_to_iso(n: usize, max_edges: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut level: BTreeSet<Edges> = [Vec::new()].into();
    let mut all: Vec<Edges> = vec![Vec::new()];
    for _ in 0..max_edges.min(pairs.len()) {
        let mut next = BTreeSet::new();
        for g in &level {
            for &p in &pairs {
                if !g.contains(&p) {
                    let mut h = g.clone();
                    h.push(p);
                    next.insert(canonical(n, &h));
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all.into_iter().map(|e| Graph::new(n, e).unwrap()).collect()
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    (0u32..1 << edges.len()).any(|mask| {
        let mut cover = vec![0; g.vertex_count()];
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                cover[a] += 1;
                cover[b] += 1;
            }
        }
        cover.iter().all(|&c| c == 1)
    })
}

pub fn has_hamiltonian_cycle(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n < 3 {
        return false;
    }
    let rest: Vec<usize> = (1..n).collect();
    permutations(&rest).into_iter().any(|mut order| {
        order.insert(0, 0);
        (0..n).all(|i| g.has_edge(order[i], order[(i + 1) % n]))
    })
}

/// Tries every order of walking the edges from every start vertex.
pub fn has_eulerian_path(g: &Graph) -> bool {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if edges.is_empty() {
        return true;
    }
    fn walk(at: usize, used: &mut Vec<bool>, edges: &[(usize, usize)], left: usize) -> bool {
        if left == 0 {
            return true;
        }
        for i in 0..edges.len() {
            let (a, b) = edges[i];
            if used[i] || (a != at && b != at) {
                continue;
            }
            used[i] = true;
            let next = if a == at { b } else { a };
            if walk(next, used, edges, left - 1) {
                return true;
            }
            used[i] = false;
        }
        false
    }
    (0..g.vertex_count()).any(|s| walk(s, &mut vec![false; edges.len()], &edges, edges.len()))
}

#[cfg(test)]
mod tests {
    #[test]
    fn known_class_counts() {
        // graphs on 4 and 5 vertices up to isomorphism
        assert_eq!(super::graphs_up_to_iso(4, 6).len(), 11);
        assert_eq!(super::graphs_up_to_iso(5, 10).len(), 34);
    }
}
