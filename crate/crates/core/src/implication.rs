//! Implicative reading of short clauses: the implication graph over all
//! `2n` literals, forward closure under modus ponens, and the SCC-based
//! 2SAT decision procedure.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{Assignment, Clause, CnfFormula, Literal, Variable};

/// `antecedent => consequent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Implication {
    pub antecedent: Literal,
    pub consequent: Literal,
}

impl Implication {
    /// # Panics
    ///
    /// Panics if both sides are the same literal.
    pub fn new(antecedent: Literal, consequent: Literal) -> Self {
        assert_ne!(antecedent, consequent, "an implication needs two distinct literals");
        Implication {
            antecedent,
            consequent,
        }
    }

    pub fn contrapositive(self) -> Implication {
        Implication::new(self.consequent.negate(), self.antecedent.negate())
    }

    /// `~a => a`, the edge a unit clause `(a)` contributes.
    pub fn is_forcing(self) -> bool {
        self.antecedent == self.consequent.negate()
    }
}

impl fmt::Display for Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.antecedent, self.consequent)
    }
}

/// A clause of width three or more has no implication form.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("clause {clause} has width {} and cannot be read as an implication", clause.width())]
pub struct NotImplicative {
    pub clause: Clause,
    /// Position in the formula, when the clause came from one.
    pub index: Option<usize>,
}

/// `(a | b)` becomes `~a => b` and `~b => a`; `(a)` becomes the forcing
/// edge `~a => a`; anything wider is rejected with the clause as witness.
pub fn clause_to_implications(clause: &Clause) -> Result<Vec<Implication>, NotImplicative> {
    match *clause.literals() {
        [a] => Ok(vec![Implication::new(a.negate(), a)]),
        [a, b] => Ok(vec![Implication::new(a.negate(), b), Implication::new(b.negate(), a)]),
        _ => Err(NotImplicative {
            clause: clause.clone(),
            index: None,
        }),
    }
}

/// Directed graph on literals with one node per literal, edges from the
/// implicative reading of every clause. Closed under contraposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicationGraph {
    variable_count: usize,
    /// Successor lists indexed by [`Literal::code`], sorted and deduplicated.
    successors: Vec<Vec<Literal>>,
}

impl ImplicationGraph {
    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn node_count(&self) -> usize {
        2 * self.variable_count
    }

    /// Every literal, in code order (`x1, ~x1, x2, ...`).
    pub fn nodes(&self) -> impl Iterator<Item = Literal> {
        (0..self.node_count()).map(Literal::from_code)
    }

    pub fn successors(&self, lit: Literal) -> &[Literal] {
        &self.successors[lit.code()]
    }

    /// All edges, ordered by antecedent then consequent code.
    pub fn edges(&self) -> impl Iterator<Item = Implication> + '_ {
        self.nodes()
            .flat_map(move |a| self.successors(a).iter().map(move |&b| Implication::new(a, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, edge: Implication) -> bool {
        self.successors(edge.antecedent).binary_search(&edge.consequent).is_ok()
    }

    /// Literals asserted outright by forcing edges `~a => a`.
    pub fn axioms(&self) -> Vec<Literal> {
        self.edges().filter(|e| e.is_forcing()).map(|e| e.consequent).collect()
    }

    pub fn is_contrapositive_closed(&self) -> bool {
        self.edges().all(|e| self.has_edge(e.contrapositive()))
    }

    /// Graphviz rendering. Nodes are named by literal text; forcing edges
    /// are dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph implications {\n  rankdir=LR;\n  node [shape=ellipse];\n");
        for lit in self.nodes() {
            let _ = writeln!(out, "  \"{lit}\";");
        }
        for e in self.edges() {
            let style = if e.is_forcing() { " [style=dashed]" } else { "" };
            let _ = writeln!(out, "  \"{}\" -> \"{}\"{style};", e.antecedent, e.consequent);
        }
        out.push_str("}\n");
        out
    }
}

impl Serialize for ImplicationGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(rename_all = "camelCase")]
        struct Repr {
            variable_count: usize,
            nodes: Vec<Literal>,
            edges: Vec<Implication>,
        }
        Repr {
            variable_count: self.variable_count,
            nodes: self.nodes().collect(),
            edges: self.edges().collect(),
        }
        .serialize(serializer)
    }
}

pub fn build_implication_graph(formula: &CnfFormula) -> Result<ImplicationGraph, NotImplicative> {
    let mut successors = vec![Vec::new(); 2 * formula.variable_count()];
    for (index, clause) in formula.clauses().iter().enumerate() {
        let edges = clause_to_implications(clause).map_err(|mut e| {
            e.index = Some(index);
            e
        })?;
        for e in edges {
            successors[e.antecedent.code()].push(e.consequent);
        }
    }
    for list in &mut successors {
        list.sort_unstable();
        list.dedup();
    }
    Ok(ImplicationGraph {
        variable_count: formula.variable_count(),
        successors,
    })
}

/// Why a literal entered a closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum Rule {
    /// Modus ponens along an implication-graph edge.
    Implication,
    /// The clause at `clause` (0-based) had every other literal false.
    UnitClause { clause: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Step {
    /// The true literal that triggered the step; `None` for original unit
    /// clauses.
    pub from: Option<Literal>,
    #[serde(flatten)]
    pub rule: Rule,
    pub to: Literal,
}

/// Literals forced from a seed, with the derivation that forced them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PropagationClosure {
    pub seed: BTreeSet<Literal>,
    pub forced: BTreeSet<Literal>,
    pub steps: Vec<Step>,
    /// A variable reached in both polarities (or the variable of a clause
    /// that went all-false).
    pub conflict: Option<Variable>,
}

impl PropagationClosure {
    /// Forced literals that were not part of the seed.
    pub fn derived(&self) -> BTreeSet<Literal> {
        self.forced.difference(&self.seed).copied().collect()
    }

    pub fn has_conflict(&self) -> bool {
        self.conflict.is_some()
    }
}

/// Reachability closure of `seed` in `graph`, explored breadth-first in
/// successor order. Keeps going past a conflict so `forced` is the full
/// reachable set; `conflict` names the first variable reached both ways.
pub fn propagate_closure(graph: &ImplicationGraph, seed: &[Literal]) -> PropagationClosure {
    let mut reached = vec![false; graph.node_count()];
    let mut queue = VecDeque::new();
    let mut seed_set = BTreeSet::new();
    for &lit in seed {
        seed_set.insert(lit);
        if !std::mem::replace(&mut reached[lit.code()], true) {
            queue.push_back(lit);
        }
    }
    let mut steps = Vec::new();
    let mut conflict = seed
        .iter()
        .find(|l| reached[l.negate().code()])
        .map(|l| l.variable());
    while let Some(lit) = queue.pop_front() {
        for &next in graph.successors(lit) {
            if !std::mem::replace(&mut reached[next.code()], true) {
                if conflict.is_none() && reached[next.negate().code()] {
                    conflict = Some(next.variable());
                }
                steps.push(Step {
                    from: Some(lit),
                    rule: Rule::Implication,
                    to: next,
                });
                queue.push_back(next);
            }
        }
    }
    let forced: BTreeSet<Literal> = graph.nodes().filter(|l| reached[l.code()]).collect();
    PropagationClosure {
        seed: seed_set,
        forced,
        steps,
        conflict,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum TwoSatOutcome {
    Sat { model: Assignment },
    /// `witness` and its negation lie in one strongly connected component.
    Unsat { witness: Variable },
}

impl TwoSatOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, TwoSatOutcome::Sat { .. })
    }
}

/// Decides a formula of width at most two through strongly connected
/// components of its implication graph.
///
/// Tarjan's algorithm runs from roots `~x1, x1, ~x2, x2, ...` and numbers
/// components in completion order, which is reverse topological order. A
/// variable is set true iff the component of its positive literal completes
/// first, i.e. sits later in topological order than its negation's. With
/// no constraints this yields the all-false model.
pub fn solve_2sat(formula: &CnfFormula) -> Result<TwoSatOutcome, NotImplicative> {
    let graph = build_implication_graph(formula)?;
    let component = tarjan(&graph);
    let mut model = Assignment::new();
    for var in formula.variables() {
        let pos = component[var.positive().code()];
        let neg = component[var.negative().code()];
        if pos == neg {
            return Ok(TwoSatOutcome::Unsat { witness: var });
        }
        model.set(var, pos < neg);
    }
    assert!(formula.is_satisfied_by(&model), "2SAT model must satisfy every clause");
    Ok(TwoSatOutcome::Sat { model })
}

/// Iterative Tarjan. Returns the component number of each literal code.
fn tarjan(graph: &ImplicationGraph) -> Vec<usize> {
    const UNVISITED: usize = usize::MAX;
    let n = graph.node_count();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut component = vec![UNVISITED; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_component = 0;
    // (node, position in successor list)
    let mut call_stack: Vec<(usize, usize)> = Vec::new();

    let roots = (0..n / 2).flat_map(|v| [2 * v + 1, 2 * v]);
    for root in roots {
        if index[root] != UNVISITED {
            continue;
        }
        call_stack.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (node, ref mut pos)) = call_stack.last_mut() {
            let succ = graph.successors(Literal::from_code(node));
            if *pos < succ.len() {
                let next = succ[*pos].code();
                *pos += 1;
                if index[next] == UNVISITED {
                    index[next] = next_index;
                    low[next] = next_index;
                    next_index += 1;
                    stack.push(next);
                    on_stack[next] = true;
                    call_stack.push((next, 0));
                } else if on_stack[next] {
                    low[node] = low[node].min(index[next]);
                }
                continue;
            }
            call_stack.pop();
            if let Some(&(parent, _)) = call_stack.last() {
                low[parent] = low[parent].min(low[node]);
            }
            if low[node] == index[node] {
                loop {
                    let member = stack.pop().expect("tarjan stack underflow");
                    on_stack[member] = false;
                    component[member] = next_component;
                    if member == node {
                        break;
                    }
                }
                next_component += 1;
            }
        }
    }
    component
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(v: i64) -> Literal {
        Literal::from_dimacs(v).unwrap()
    }

    fn imp(a: i64, b: i64) -> Implication {
        Implication::new(lit(a), lit(b))
    }

    fn chain() -> CnfFormula {
        CnfFormula::from_dimacs_clauses(3, &[&[-1, 2], &[-2, 3]]).unwrap()
    }

    fn all_four() -> CnfFormula {
        CnfFormula::from_dimacs_clauses(2, &[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]]).unwrap()
    }

    #[test]
    fn binary_clause_reads_both_ways() {
        let c = Clause::from_dimacs(&[-1, 2]).unwrap();
        assert_eq!(clause_to_implications(&c).unwrap(), vec![imp(1, 2), imp(-2, -1)]);
    }

    #[test]
    fn unit_clause_is_forcing_edge() {
        let edges = clause_to_implications(&Clause::from_dimacs(&[3]).unwrap()).unwrap();
        assert_eq!(edges, vec![imp(-3, 3)]);
        assert!(edges[0].is_forcing());
    }

    #[test]
    fn wide_clause_has_no_implication_form() {
        let c = Clause::from_dimacs(&[-1, -2, 3]).unwrap();
        let err = clause_to_implications(&c).unwrap_err();
        assert_eq!(err.clause, c);
    }

    #[test]
    fn chain_graph_edges() {
        let g = build_implication_graph(&chain()).unwrap();
        let edges: BTreeSet<_> = g.edges().collect();
        let expected: BTreeSet<_> = [imp(1, 2), imp(-2, -1), imp(2, 3), imp(-3, -2)].into();
        assert_eq!(edges, expected);
        assert!(g.is_contrapositive_closed());
    }

    #[test]
    fn empty_formula_graph_is_isolated_nodes() {
        let g = build_implication_graph(&CnfFormula::empty(4)).unwrap();
        assert_eq!(g.node_count(), 8);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn wide_clause_blocks_graph() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[-1, -2, 3]]).unwrap();
        let err = build_implication_graph(&f).unwrap_err();
        assert_eq!(err.index, Some(0));
        assert_eq!(err.clause.width(), 3);
    }

    #[test]
    fn chain_closure_from_x() {
        let g = build_implication_graph(&chain()).unwrap();
        let closure = propagate_closure(&g, &[lit(1)]);
        assert_eq!(closure.forced, [lit(1), lit(2), lit(3)].into());
        assert_eq!(closure.steps.len(), 2);
        assert_eq!(closure.steps[0].to, lit(2));
        assert!(closure.conflict.is_none());
        assert!(closure.steps.iter().all(|s| closure.forced.contains(&s.to)));
    }

    #[test]
    fn empty_seed_forces_nothing() {
        let g = build_implication_graph(&chain()).unwrap();
        let closure = propagate_closure(&g, &[]);
        assert!(closure.forced.is_empty());
    }

    #[test]
    fn contradictory_formula_conflicts_on_y() {
        let g = build_implication_graph(&all_four()).unwrap();
        let closure = propagate_closure(&g, &[lit(1)]);
        assert_eq!(closure.conflict.map(|v| v.index()), Some(2));
    }

    #[test]
    fn two_sat_decisions() {
        let outcome = solve_2sat(&chain()).unwrap();
        assert!(outcome.is_sat());
        match solve_2sat(&all_four()).unwrap() {
            TwoSatOutcome::Unsat { witness } => assert!(witness.index() <= 2),
            other => panic!("expected UNSAT, got {other:?}"),
        }
        match solve_2sat(&CnfFormula::empty(3)).unwrap() {
            TwoSatOutcome::Sat { model } => assert!(model.iter().all(|(_, v)| !v)),
            other => panic!("expected SAT, got {other:?}"),
        }
    }

    #[test]
    fn two_sat_with_units() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1], &[-1, 2]]).unwrap();
        match solve_2sat(&f).unwrap() {
            TwoSatOutcome::Sat { model } => {
                assert_eq!(model.literals(), vec![lit(1), lit(2)]);
            }
            other => panic!("expected SAT, got {other:?}"),
        }
        let g = CnfFormula::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
        assert!(!solve_2sat(&g).unwrap().is_sat());
    }

    #[test]
    fn dot_is_stable() {
        let g = build_implication_graph(&chain()).unwrap();
        let dot = g.to_dot();
        assert!(dot.contains("\"x1\" -> \"x2\";"));
        assert!(dot.contains("\"~x3\" -> \"~x2\";"));
        assert_eq!(dot, build_implication_graph(&chain()).unwrap().to_dot());
    }
}
