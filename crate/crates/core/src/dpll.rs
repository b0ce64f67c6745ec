//! Textbook DPLL: unit propagation at every node, chronological
//! backtracking, true branch first. The whole search tree is recorded.
//!
//! When a clause that was originally three or more literals wide becomes
//! unit, the trace also records the refuted alternative (the forced
//! literal's complement) as a closed conflict leaf next to the propagation.
//! Such a clause only forces after a case split has ruled out its other
//! literals, and the leaf shows that split. Implicative (width one or two)
//! propagations are recorded as plain steps. Search behaviour and the
//! branch/backtrack counters do not depend on this.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;

use crate::formula::{Assignment, CnfFormula, Literal, Variable};

/// Variable selection rule. The chosen variable is always tried `true`
/// first.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Heuristic {
    /// Lowest-index unassigned variable of any unsatisfied clause.
    #[default]
    LowestIndex,
    /// Unassigned variable with the most occurrences in unsatisfied
    /// clauses; ties go to the lower index.
    MostOccurrences,
}

impl Heuristic {
    pub fn name(self) -> &'static str {
        match self {
            Heuristic::LowestIndex => "lowest-index",
            Heuristic::MostOccurrences => "most-occurrences",
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Heuristic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lowest-index" => Ok(Heuristic::LowestIndex),
            "most-occurrences" => Ok(Heuristic::MostOccurrences),
            other => Err(format!(
                "unknown heuristic `{other}` (expected lowest-index or most-occurrences)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Start,
    Decision,
    Propagation,
    Conflict,
    Satisfied,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TraceNode {
    pub id: usize,
    pub parent: Option<usize>,
    pub kind: NodeKind,
    /// Decided or propagated literal; for refutation leaves, the refuted one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub literal: Option<Literal>,
    /// Clause (0-based) that forced a propagation or went all-false.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause: Option<usize>,
    /// Conflict leaf standing for an alternative closed by propagation.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub refutation: bool,
    /// Variables left unassigned at a satisfied leaf.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub free: Vec<Variable>,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum SolveResult {
    Sat { model: Assignment },
    Unsat,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveResult::Sat { .. })
    }

    pub fn model(&self) -> Option<&Assignment> {
        match self {
            SolveResult::Sat { model } => Some(model),
            SolveResult::Unsat => None,
        }
    }
}

/// The recorded search tree. Node 0 is the start node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DerivationTrace {
    pub heuristic: Heuristic,
    pub nodes: Vec<TraceNode>,
    /// Decisions whose both branches were explored.
    pub branch_count: usize,
    /// Retreats from a failed first branch into its sibling.
    pub backtrack_count: usize,
    pub result: SolveResult,
}

impl DerivationTrace {
    pub fn root(&self) -> &TraceNode {
        &self.nodes[0]
    }

    pub fn count(&self, kind: NodeKind) -> usize {
        self.nodes.iter().filter(|n| n.kind == kind).count()
    }

    pub fn conflict_leaves(&self) -> impl Iterator<Item = &TraceNode> {
        self.nodes.iter().filter(|n| n.kind == NodeKind::Conflict)
    }

    /// Literals on the way from the start node to `id`, including the
    /// node's own literal.
    pub fn path_literals(&self, id: usize) -> Vec<Literal> {
        let mut lits = Vec::new();
        let mut cursor = Some(id);
        while let Some(i) = cursor {
            let node = &self.nodes[i];
            lits.extend(node.literal);
            cursor = node.parent;
        }
        lits.reverse();
        lits
    }

    /// Longest root-to-leaf edge count.
    pub fn depth(&self) -> usize {
        fn walk(t: &DerivationTrace, id: usize) -> usize {
            t.nodes[id].children.iter().map(|&c| 1 + walk(t, c)).max().unwrap_or(0)
        }
        walk(self, 0)
    }

    /// Graphviz rendering: decisions double-circled, conflicts filled,
    /// satisfied leaves boxed. Node names are `n<id>`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph trace {\n  node [fontname=\"Helvetica\"];\n");
        for node in &self.nodes {
            let lit_text = node.literal.map(literal_assignment_text);
            let (label, attrs) = match node.kind {
                NodeKind::Start => ("Start".to_string(), "shape=plaintext"),
                NodeKind::Decision => (lit_text.unwrap_or_default(), "shape=doublecircle"),
                NodeKind::Propagation => (lit_text.unwrap_or_default(), "shape=ellipse"),
                NodeKind::Conflict => (
                    match lit_text {
                        Some(t) => format!("{t}\\n(UNSAT)"),
                        None => "(UNSAT)".to_string(),
                    },
                    "shape=ellipse, style=filled, fillcolor=gray80",
                ),
                NodeKind::Satisfied => {
                    let mut label = "(SAT)".to_string();
                    if !node.free.is_empty() {
                        let free: Vec<String> = node.free.iter().map(|v| v.to_string()).collect();
                        label.push_str(&format!("\\nfree: {}", free.join(", ")));
                    }
                    (label, "shape=box")
                }
            };
            let _ = writeln!(out, "  n{} [label=\"{label}\", {attrs}];", node.id);
        }
        for node in &self.nodes {
            for &child in &node.children {
                let _ = writeln!(out, "  n{} -> n{child};", node.id);
            }
        }
        out.push_str("}\n");
        out
    }
}

fn literal_assignment_text(lit: Literal) -> String {
    format!("{}={}", lit.variable(), if lit.is_positive() { "T" } else { "F" })
}

/// Complete DPLL search recording every decision, propagation and conflict.
pub fn dpll_solve(formula: &CnfFormula, heuristic: Heuristic) -> DerivationTrace {
    let mut solver = Solver::new(formula, heuristic);
    let start = solver.push_node(None, NodeKind::Start, None, None);
    let mut queue = VecDeque::new();
    let mut tip = start;
    let mut root_conflict = false;
    // original unit clauses fire before anything else
    for (index, clause) in formula.clauses().iter().enumerate() {
        if let [lit] = *clause.literals() {
            match solver.literal_value(lit) {
                Some(true) => {}
                Some(false) => {
                    solver.push_node(Some(tip), NodeKind::Conflict, None, Some(index));
                    root_conflict = true;
                    break;
                }
                None => {
                    solver.assign(lit);
                    tip = solver.push_node(Some(tip), NodeKind::Propagation, Some(lit), Some(index));
                    queue.push_back(lit);
                }
            }
        }
    }
    let sat = !root_conflict && solver.search(tip, queue);
    let result = if sat {
        SolveResult::Sat {
            model: solver.model.take().expect("model recorded on success"),
        }
    } else {
        SolveResult::Unsat
    };
    if let SolveResult::Sat { model } = &result {
        assert!(formula.is_satisfied_by(model), "DPLL model must satisfy every clause");
    }
    DerivationTrace {
        heuristic,
        nodes: solver.nodes,
        branch_count: solver.branch_count,
        backtrack_count: solver.backtrack_count,
        result,
    }
}

struct Solver<'a> {
    formula: &'a CnfFormula,
    heuristic: Heuristic,
    value: Vec<Option<bool>>,
    trail: Vec<Literal>,
    /// Clause indices per literal code.
    occurs: Vec<Vec<usize>>,
    true_literals: Vec<u32>,
    satisfied_clauses: usize,
    nodes: Vec<TraceNode>,
    branch_count: usize,
    backtrack_count: usize,
    model: Option<Assignment>,
}

impl<'a> Solver<'a> {
    fn new(formula: &'a CnfFormula, heuristic: Heuristic) -> Self {
        let n = formula.variable_count();
        let mut occurs = vec![Vec::new(); 2 * n];
        for (index, clause) in formula.clauses().iter().enumerate() {
            for lit in clause.literals() {
                occurs[lit.code()].push(index);
            }
        }
        Solver {
            formula,
            heuristic,
            value: vec![None; n],
            trail: Vec::new(),
            occurs,
            true_literals: vec![0; formula.clause_count()],
            satisfied_clauses: 0,
            nodes: Vec::new(),
            branch_count: 0,
            backtrack_count: 0,
            model: None,
        }
    }

    fn push_node(
        &mut self,
        parent: Option<usize>,
        kind: NodeKind,
        literal: Option<Literal>,
        clause: Option<usize>,
    ) -> usize {
        let id = self.nodes.len();
        self.nodes.push(TraceNode {
            id,
            parent,
            kind,
            literal,
            clause,
            refutation: false,
            free: Vec::new(),
            children: Vec::new(),
        });
        if let Some(p) = parent {
            self.nodes[p].children.push(id);
        }
        id
    }

    fn literal_value(&self, lit: Literal) -> Option<bool> {
        self.value[lit.variable().slot()].map(|v| v == lit.is_positive())
    }

    fn assign(&mut self, lit: Literal) {
        self.value[lit.variable().slot()] = Some(lit.is_positive());
        self.trail.push(lit);
        for &c in &self.occurs[lit.code()] {
            if self.true_literals[c] == 0 {
                self.satisfied_clauses += 1;
            }
            self.true_literals[c] += 1;
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let lit = self.trail.pop().expect("trail above mark");
            self.value[lit.variable().slot()] = None;
            for &c in &self.occurs[lit.code()] {
                self.true_literals[c] -= 1;
                if self.true_literals[c] == 0 {
                    self.satisfied_clauses -= 1;
                }
            }
        }
    }

    /// Propagates consequences of the queued literals. Returns the new tip
    /// of the trace, or `None` after recording a conflict.
    fn propagate(&mut self, mut tip: usize, mut queue: VecDeque<Literal>) -> Option<usize> {
        let formula = self.formula;
        while let Some(lit) = queue.pop_front() {
            let falsified = lit.negate().code();
            for i in 0..self.occurs[falsified].len() {
                let c = self.occurs[falsified][i];
                if self.true_literals[c] > 0 {
                    continue;
                }
                let clause = &formula.clauses()[c];
                let mut open = clause.literals().iter().filter(|&&l| self.literal_value(l).is_none());
                match (open.next().copied(), open.next()) {
                    (None, _) => {
                        self.push_node(Some(tip), NodeKind::Conflict, None, Some(c));
                        return None;
                    }
                    (Some(forced), None) => {
                        if clause.width() >= 3 {
                            let leaf = self.push_node(Some(tip), NodeKind::Conflict, Some(forced.negate()), Some(c));
                            self.nodes[leaf].refutation = true;
                        }
                        self.assign(forced);
                        tip = self.push_node(Some(tip), NodeKind::Propagation, Some(forced), Some(c));
                        queue.push_back(forced);
                    }
                    _ => {}
                }
            }
        }
        Some(tip)
    }

    fn pick_variable(&self) -> Variable {
        let mut counts = vec![0usize; self.formula.variable_count()];
        for (c, clause) in self.formula.clauses().iter().enumerate() {
            if self.true_literals[c] > 0 {
                continue;
            }
            for lit in clause.literals() {
                if self.literal_value(*lit).is_none() {
                    counts[lit.variable().slot()] += 1;
                }
            }
        }
        let candidates = counts.iter().enumerate().filter(|(_, &c)| c > 0);
        let slot = match self.heuristic {
            Heuristic::LowestIndex => candidates.map(|(s, _)| s).next(),
            // max_by_key keeps the last maximum, so reverse to prefer low slots
            Heuristic::MostOccurrences => candidates.rev().max_by_key(|(_, &c)| c).map(|(s, _)| s),
        }
        .expect("an unsatisfied clause without conflict has an open variable");
        Variable::new(slot as u32 + 1).expect("slot + 1 >= 1")
    }

    fn search(&mut self, tip: usize, queue: VecDeque<Literal>) -> bool {
        let Some(tip) = self.propagate(tip, queue) else {
            return false;
        };
        if self.satisfied_clauses == self.formula.clause_count() {
            let leaf = self.push_node(Some(tip), NodeKind::Satisfied, None, None);
            let mut model = Assignment::new();
            for var in self.formula.variables() {
                match self.value[var.slot()] {
                    Some(v) => model.set(var, v),
                    None => {
                        model.set(var, false);
                        self.nodes[leaf].free.push(var);
                    }
                }
            }
            self.model = Some(model);
            return true;
        }
        let var = self.pick_variable();
        let mark = self.trail.len();
        for (attempt, polarity) in [true, false].into_iter().enumerate() {
            let lit = Literal::new(var, polarity);
            let node = self.push_node(Some(tip), NodeKind::Decision, Some(lit), None);
            self.assign(lit);
            if self.search(node, VecDeque::from([lit])) {
                return true;
            }
            self.undo_to(mark);
            if attempt == 0 {
                self.branch_count += 1;
                self.backtrack_count += 1;
            }
        }
        false
    }
}
