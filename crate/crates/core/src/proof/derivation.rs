use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Proposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Assumption,
    /// Discharges the assumption on line `from`, concluding
    /// `formula(from) -> formula(to)`.
    ImpliesIntro { from: usize, to: usize },
    /// From `p -> q` on `major` and `p` on `minor`, concludes `q`.
    ImpliesElim { major: usize, minor: usize },
    Reiteration { of: usize },
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Assumption => f.write_str("assumption"),
            Rule::ImpliesIntro { from, to } => write!(f, "->I {from}-{to}"),
            Rule::ImpliesElim { major, minor } => write!(f, "->E {major}, {minor}"),
            Rule::Reiteration { of } => write!(f, "reit {of}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Step {
    /// 1-based line number; defaults to the step's position.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    pub formula: Proposition,
    pub rule: Rule,
    /// Lines of the assumptions open after this step. Checked when given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub open: Option<BTreeSet<usize>>,
}

impl Step {
    pub fn new(formula: Proposition, rule: Rule) -> Self {
        Step {
            line: None,
            formula,
            rule,
            open: None,
        }
    }

    pub fn numbered(line: usize, formula: Proposition, rule: Rule) -> Self {
        Step {
            line: Some(line),
            ..Step::new(formula, rule)
        }
    }
}

/// Natural-deduction derivation in the implicational fragment. Loads from
/// a JSON list of steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Derivation {
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn new(steps: Vec<Step>) -> Self {
        Derivation { steps }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Line number of every step.
    pub fn lines(&self) -> Vec<usize> {
        self.steps.iter().enumerate().map(|(i, s)| s.line.unwrap_or(i + 1)).collect()
    }

    /// Copy without the step on `line`, keeping the other line numbers.
    pub fn without_line(&self, line: usize) -> Derivation {
        let lines = self.lines();
        Derivation::new(
            self.steps
                .iter()
                .zip(&lines)
                .filter(|(_, &l)| l != line)
                .map(|(s, &l)| Step {
                    line: Some(l),
                    ..s.clone()
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Error)]
#[serde(tag = "kind", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum InvalidReason {
    #[error("empty derivation")]
    Empty,
    #[error("line numbers must increase")]
    LinesNotIncreasing,
    #[error("no line {line}")]
    UnknownLine { line: usize },
    #[error("line {line} lies in a closed subproof")]
    OutOfScope { line: usize },
    #[error("undischarged assumption on line {line}")]
    UndischargedAssumption { line: usize },
    #[error("line {line} is not an open assumption")]
    NotAnOpenAssumption { line: usize },
    #[error("line {line} is not an implication")]
    NotAnImplication { line: usize },
    #[error("rule yields `{expected}`, step states `{found}`")]
    FormulaMismatch { expected: Proposition, found: Proposition },
    #[error("minor premise `{found}` does not match antecedent `{expected}`")]
    MinorMismatch { expected: Proposition, found: Proposition },
    #[error("declared open assumptions {declared:?} differ from {actual:?}")]
    OpenSetMismatch {
        declared: BTreeSet<usize>,
        actual: BTreeSet<usize>,
    },
    #[error("assumption on line {line} is still open at the end")]
    OpenAssumptionAtEnd { line: usize },
    #[error("conclusion `{found}` is not the goal `{goal}`")]
    GoalMismatch { goal: Proposition, found: Proposition },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum DerivationVerdict {
    Valid,
    /// `step` is the line number of the offending step (0 for an empty
    /// derivation).
    Invalid { step: usize, reason: InvalidReason },
}

impl DerivationVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, DerivationVerdict::Valid)
    }
}

struct Checked<'a> {
    formula: &'a Proposition,
    /// Assumption stack (line numbers) in force at this line.
    context: Vec<usize>,
}

/// Checks every step against its rule, tracking open assumptions
/// explicitly. A line may be cited only while every assumption it depended
/// on is still open. `->I` must discharge the innermost open assumption.
pub fn check_derivation(derivation: &Derivation, goal: &Proposition) -> DerivationVerdict {
    match check(derivation, goal) {
        Ok(()) => DerivationVerdict::Valid,
        Err((step, reason)) => DerivationVerdict::Invalid { step, reason },
    }
}

fn check(derivation: &Derivation, goal: &Proposition) -> Result<(), (usize, InvalidReason)> {
    if derivation.is_empty() {
        return Err((0, InvalidReason::Empty));
    }
    let lines = derivation.lines();
    let mut checked: Vec<(usize, Checked)> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for (step, &line) in derivation.steps.iter().zip(&lines) {
        let fail = |reason| (line, reason);
        if checked.last().is_some_and(|(prev, _)| *prev >= line) {
            return Err(fail(InvalidReason::LinesNotIncreasing));
        }
        let cite = |target: usize, stack: &[usize]| -> Result<&Checked, (usize, InvalidReason)> {
            let found = checked
                .iter()
                .find(|(l, _)| *l == target)
                .map(|(_, c)| c)
                .ok_or((line, InvalidReason::UnknownLine { line: target }))?;
            if stack.starts_with(&found.context) {
                Ok(found)
            } else {
                Err((line, InvalidReason::OutOfScope { line: target }))
            }
        };
        let expected = match step.rule {
            Rule::Assumption => {
                stack.push(line);
                step.formula.clone()
            }
            Rule::Reiteration { of } => cite(of, &stack)?.formula.clone(),
            Rule::ImpliesElim { major, minor } => {
                let major_formula = cite(major, &stack)?.formula;
                let minor_formula = cite(minor, &stack)?.formula;
                let (p, q) = major_formula
                    .as_implication()
                    .ok_or(fail(InvalidReason::NotAnImplication { line: major }))?;
                if p != minor_formula {
                    return Err(fail(InvalidReason::MinorMismatch {
                        expected: p.clone(),
                        found: minor_formula.clone(),
                    }));
                }
                q.clone()
            }
            Rule::ImpliesIntro { from, to } => {
                match stack.last() {
                    Some(&top) if top == from => {}
                    Some(&top) if stack.contains(&from) => {
                        return Err(fail(InvalidReason::UndischargedAssumption { line: top }))
                    }
                    _ => return Err(fail(InvalidReason::NotAnOpenAssumption { line: from })),
                }
                let assumption = cite(from, &stack)?.formula;
                let conclusion = cite(to, &stack)?.formula;
                if to < from {
                    return Err(fail(InvalidReason::OutOfScope { line: to }));
                }
                stack.pop();
                Proposition::implies(assumption.clone(), conclusion.clone())
            }
        };
        if expected != step.formula {
            return Err(fail(InvalidReason::FormulaMismatch {
                expected,
                found: step.formula.clone(),
            }));
        }
        if let Some(declared) = &step.open {
            let actual: BTreeSet<usize> = stack.iter().copied().collect();
            if *declared != actual {
                return Err(fail(InvalidReason::OpenSetMismatch {
                    declared: declared.clone(),
                    actual,
                }));
            }
        }
        checked.push((
            line,
            Checked {
                formula: &step.formula,
                context: stack.clone(),
            },
        ));
    }
    let last = *lines.last().expect("non-empty");
    if let Some(&open) = stack.last() {
        return Err((last, InvalidReason::OpenAssumptionAtEnd { line: open }));
    }
    let conclusion = &derivation.steps.last().expect("non-empty").formula;
    if conclusion != goal {
        return Err((
            last,
            InvalidReason::GoalMismatch {
                goal: goal.clone(),
                found: conclusion.clone(),
            },
        ));
    }
    Ok(())
}
