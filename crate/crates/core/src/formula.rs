//! Literals, clauses and CNF formulas: the syntactic layer every other
//! module reads from.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A propositional variable, numbered from 1 as in DIMACS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Variable(u32);

impl Variable {
    /// Returns `None` for index 0.
    pub fn new(index: u32) -> Option<Self> {
        (index >= 1).then_some(Variable(index))
    }

    /// The 1-based index.
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    /// 0-based position, for dense arrays.
    #[inline]
    pub fn slot(self) -> usize {
        (self.0 - 1) as usize
    }

    #[inline]
    pub fn positive(self) -> Literal {
        Literal::new(self, true)
    }

    #[inline]
    pub fn negative(self) -> Literal {
        Literal::new(self, false)
    }
}

impl TryFrom<u32> for Variable {
    type Error = String;

    fn try_from(value: u32) -> Result<Self, Self::Error> {
        Variable::new(value).ok_or_else(|| "variable index must be at least 1".to_string())
    }
}

impl From<Variable> for u32 {
    fn from(v: Variable) -> u32 {
        v.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A variable with a polarity.
///
/// Encoded as `2 * slot + (negative as u32)`, so the two literals of a
/// variable are adjacent and [`Literal::code`] indexes a `2n` array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal(u32);

impl Literal {
    #[inline]
    pub fn new(var: Variable, positive: bool) -> Self {
        Literal((var.slot() as u32) << 1 | (!positive) as u32)
    }

    /// Parses a signed DIMACS integer. Zero is not a literal.
    pub fn from_dimacs(value: i64) -> Option<Self> {
        let index = u32::try_from(value.unsigned_abs()).ok()?;
        Variable::new(index).map(|v| Literal::new(v, value > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let index = i64::from(self.variable().index());
        if self.is_positive() {
            index
        } else {
            -index
        }
    }

    #[inline]
    pub fn variable(self) -> Variable {
        Variable((self.0 >> 1) + 1)
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    pub fn negate(self) -> Self {
        Literal(self.0 ^ 1)
    }

    /// Dense index in `0..2n`.
    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_code(code: usize) -> Self {
        Literal(code as u32)
    }

    /// The value this literal needs its variable to take to be true.
    #[inline]
    pub fn satisfying_value(self) -> bool {
        self.is_positive()
    }
}

impl std::ops::Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        self.negate()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "{}", self.variable())
        } else {
            write!(f, "~{}", self.variable())
        }
    }
}

impl Serialize for Literal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_i64(self.to_dimacs())
    }
}

impl<'de> Deserialize<'de> for Literal {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = i64::deserialize(deserializer)?;
        Literal::from_dimacs(value)
            .ok_or_else(|| serde::de::Error::custom("literal must be a non-zero integer"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("clause is empty")]
    EmptyClause,
    #[error("clause contains both {0} and its negation")]
    Tautology(Literal),
    #[error("clause {clause} mentions {variable} but the formula has only {variable_count} variables")]
    VariableOutOfRange {
        clause: usize,
        variable: Variable,
        variable_count: usize,
    },
    #[error("clause {clause} is invalid: {source}")]
    InvalidClause {
        clause: usize,
        #[source]
        source: Box<FormulaError>,
    },
}

/// A disjunction of distinct, non-complementary literals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    /// Builds a clause, dropping repeated literals (first occurrence wins).
    /// Empty and tautological clauses are rejected.
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Result<Self, FormulaError> {
        let mut seen = BTreeSet::new();
        let mut kept = Vec::new();
        for lit in literals {
            if seen.contains(&lit.negate()) {
                return Err(FormulaError::Tautology(lit.negate()));
            }
            if seen.insert(lit) {
                kept.push(lit);
            }
        }
        if kept.is_empty() {
            return Err(FormulaError::EmptyClause);
        }
        Ok(Clause { literals: kept })
    }

    /// Convenience constructor from signed DIMACS integers.
    ///
    /// # Panics
    ///
    /// Panics if any value is zero.
    pub fn from_dimacs(values: &[i64]) -> Result<Self, FormulaError> {
        Clause::new(values.iter().map(|&v| Literal::from_dimacs(v).expect("zero is not a literal")))
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn width(&self) -> usize {
        self.literals.len()
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.literals.iter().map(|l| l.variable())
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.literals.contains(&lit)
    }

    /// The highest variable index mentioned.
    pub fn max_variable(&self) -> Variable {
        self.variables().max().expect("clauses are never empty")
    }
}

impl<'de> Deserialize<'de> for Clause {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            literals: Vec<Literal>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Clause::new(raw.literals).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, lit) in self.literals.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{lit}")?;
        }
        write!(f, ")")
    }
}

/// A conjunction of clauses over variables `1..=variable_count`.
///
/// Clauses are kept as a sequence: repeated clauses stay repeated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CnfFormula {
    variable_count: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(variable_count: usize, clauses: Vec<Clause>) -> Result<Self, FormulaError> {
        for (i, clause) in clauses.iter().enumerate() {
            let max = clause.max_variable();
            if max.index() as usize > variable_count {
                return Err(FormulaError::VariableOutOfRange {
                    clause: i + 1,
                    variable: max,
                    variable_count,
                });
            }
        }
        Ok(CnfFormula {
            variable_count,
            clauses,
        })
    }

    /// A formula with no clauses.
    pub fn empty(variable_count: usize) -> Self {
        CnfFormula {
            variable_count,
            clauses: Vec::new(),
        }
    }

    /// Builds a formula from rows of signed integers; handy in tests.
    pub fn from_dimacs_clauses(variable_count: usize, rows: &[&[i64]]) -> Result<Self, FormulaError> {
        let clauses = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                Clause::from_dimacs(row).map_err(|e| FormulaError::InvalidClause {
                    clause: i + 1,
                    source: Box::new(e),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        CnfFormula::new(variable_count, clauses)
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> {
        (1..=self.variable_count as u32).map(Variable)
    }

    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Clause::width).max().unwrap_or(0)
    }

    /// Clause-to-variable ratio, `None` when there are no variables.
    pub fn density(&self) -> Option<Ratio<usize>> {
        (self.variable_count > 0).then(|| Ratio::new(self.clauses.len(), self.variable_count))
    }

    /// Number of clauses of each width.
    pub fn width_profile(&self) -> BTreeMap<usize, usize> {
        let mut profile = BTreeMap::new();
        for clause in &self.clauses {
            *profile.entry(clause.width()).or_insert(0) += 1;
        }
        profile
    }

    /// True when no two clauses share a variable.
    pub fn is_variable_disjoint(&self) -> bool {
        let mut seen = vec![false; self.variable_count];
        for clause in &self.clauses {
            for var in clause.variables() {
                if std::mem::replace(&mut seen[var.slot()], true) {
                    return false;
                }
            }
        }
        true
    }

    /// Variables that appear in at least one clause.
    pub fn constrained_variables(&self) -> BTreeSet<Variable> {
        self.clauses.iter().flat_map(|c| c.variables()).collect()
    }

    /// Evaluates the formula under a total assignment. Variables missing
    /// from the assignment make their literals false.
    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        self.clauses
            .iter()
            .all(|c| c.literals().iter().any(|&l| assignment.literal_value(l) == Some(true)))
    }

    /// A copy with variable `v` renamed to `mapping[v.slot()]`.
    ///
    /// # Panics
    ///
    /// Panics unless `mapping` is a permutation of the formula's variables.
    pub fn rename(&self, mapping: &[Variable]) -> CnfFormula {
        assert_eq!(mapping.len(), self.variable_count);
        let clauses = self
            .clauses
            .iter()
            .map(|c| Clause {
                literals: c
                    .literals()
                    .iter()
                    .map(|l| Literal::new(mapping[l.variable().slot()], l.is_positive()))
                    .collect(),
            })
            .collect();
        CnfFormula::new(self.variable_count, clauses).expect("renaming preserves bounds")
    }

    /// A copy with one more clause appended.
    pub fn with_clause(&self, clause: Clause) -> Result<CnfFormula, FormulaError> {
        let mut clauses = self.clauses.clone();
        clauses.push(clause);
        CnfFormula::new(self.variable_count, clauses)
    }
}

impl<'de> Deserialize<'de> for CnfFormula {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            variable_count: usize,
            clauses: Vec<Clause>,
        }
        let raw = Raw::deserialize(deserializer)?;
        CnfFormula::new(raw.variable_count, raw.clauses).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return write!(f, "true");
        }
        for (i, clause) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, " & ")?;
            }
            write!(f, "{clause}")?;
        }
        Ok(())
    }
}

/// A truth assignment over an explicit scope of variables. Partial
/// assignments simply have a smaller scope.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment {
    bindings: BTreeMap<Variable, bool>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assignment making every given literal true. Later literals win on
    /// conflict, so callers wanting a consistent seed should check first.
    pub fn from_literals(literals: impl IntoIterator<Item = Literal>) -> Self {
        let mut a = Assignment::new();
        for lit in literals {
            a.set(lit.variable(), lit.is_positive());
        }
        a
    }

    pub fn set(&mut self, var: Variable, value: bool) {
        self.bindings.insert(var, value);
    }

    pub fn get(&self, var: Variable) -> Option<bool> {
        self.bindings.get(&var).copied()
    }

    pub fn literal_value(&self, lit: Literal) -> Option<bool> {
        self.get(lit.variable()).map(|v| v == lit.is_positive())
    }

    pub fn scope(&self) -> impl Iterator<Item = Variable> + '_ {
        self.bindings.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Variable, bool)> + '_ {
        self.bindings.iter().map(|(&v, &b)| (v, b))
    }

    /// The literals made true by this assignment, in variable order.
    pub fn literals(&self) -> Vec<Literal> {
        self.iter().map(|(v, b)| Literal::new(v, b)).collect()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (var, value)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{var}={}", if value { "T" } else { "F" })?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(v: i64) -> Literal {
        Literal::from_dimacs(v).unwrap()
    }

    #[test]
    fn literal_encoding() {
        let l = lit(-3);
        assert_eq!(l.variable().index(), 3);
        assert!(!l.is_positive());
        assert_eq!(l.negate(), lit(3));
        assert_eq!(l.negate().negate(), l);
        assert_eq!(l.to_dimacs(), -3);
        assert_eq!(Literal::from_code(l.code()), l);
        assert_eq!(l.to_string(), "~x3");
        assert!(Literal::from_dimacs(0).is_none());
    }

    #[test]
    fn clause_dedups_and_rejects_tautologies() {
        let c = Clause::from_dimacs(&[1, -2, 1]).unwrap();
        assert_eq!(c.width(), 2);
        assert_eq!(c.literals(), &[lit(1), lit(-2)]);
        assert_eq!(Clause::from_dimacs(&[1, 2, -1]), Err(FormulaError::Tautology(lit(1))));
        assert_eq!(Clause::new([]), Err(FormulaError::EmptyClause));
    }

    #[test]
    fn formula_bounds_and_stats() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[-1, 2], &[-2, 3]]).unwrap();
        assert_eq!(f.clause_count(), 2);
        assert_eq!(f.max_width(), 2);
        assert_eq!(f.density(), Some(Ratio::new(2, 3)));
        assert_eq!(f.width_profile(), BTreeMap::from([(2, 2)]));
        assert!(!f.is_variable_disjoint());

        let err = CnfFormula::from_dimacs_clauses(2, &[&[1, 3]]).unwrap_err();
        assert!(matches!(err, FormulaError::VariableOutOfRange { clause: 1, .. }));

        let empty = CnfFormula::empty(0);
        assert_eq!(empty.density(), None);
        assert!(empty.width_profile().is_empty());
    }

    #[test]
    fn width_profile_of_worked_examples() {
        let three = CnfFormula::from_dimacs_clauses(3, &[&[-1, -2, 3]]).unwrap();
        assert_eq!(three.width_profile(), BTreeMap::from([(3, 1)]));
        let profile = three.width_profile();
        assert_eq!(profile.values().sum::<usize>(), three.clause_count());
        assert_eq!(*profile.keys().last().unwrap(), three.max_width());
    }

    #[test]
    fn rename_permutes_variables() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[-1, 2]]).unwrap();
        let mapping: Vec<Variable> = [3, 1, 2].iter().map(|&i| Variable::new(i).unwrap()).collect();
        let g = f.rename(&mapping);
        assert_eq!(g.clauses()[0].literals(), &[lit(-3), lit(1)]);
    }

    #[test]
    fn assignment_evaluation() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[-1, 2], &[-2, 3]]).unwrap();
        let good = Assignment::from_literals([lit(1), lit(2), lit(3)]);
        let bad = Assignment::from_literals([lit(1), lit(-2), lit(3)]);
        assert!(f.is_satisfied_by(&good));
        assert!(!f.is_satisfied_by(&bad));
        assert_eq!(good.to_string(), "{x1=T, x2=T, x3=T}");
    }

    #[test]
    fn assignment_json_is_a_flat_map() {
        let a = Assignment::from_literals([Literal::from_dimacs(2).unwrap(), Literal::from_dimacs(-1).unwrap()]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"1":false,"2":true}"#);
        assert_eq!(serde_json::from_str::<Assignment>(&text).unwrap(), a);
    }
}
