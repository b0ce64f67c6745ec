use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Propositional formula. `Const` covers the 0-atom formulas `true` and
/// `false`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Proposition {
    Const(bool),
    Atom(String),
    Not(Box<Proposition>),
    And(Box<Proposition>, Box<Proposition>),
    Or(Box<Proposition>, Box<Proposition>),
    Implies(Box<Proposition>, Box<Proposition>),
}

impl Proposition {
    /// # Panics
    ///
    /// Panics on a name that is not an identifier or is a reserved word.
    pub fn atom(name: &str) -> Self {
        assert!(is_identifier(name) && !is_keyword(name), "invalid atom name {name:?}");
        Proposition::Atom(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(p: Proposition) -> Self {
        Proposition::Not(Box::new(p))
    }

    pub fn and(p: Proposition, q: Proposition) -> Self {
        Proposition::And(Box::new(p), Box::new(q))
    }

    pub fn or(p: Proposition, q: Proposition) -> Self {
        Proposition::Or(Box::new(p), Box::new(q))
    }

    pub fn implies(p: Proposition, q: Proposition) -> Self {
        Proposition::Implies(Box::new(p), Box::new(q))
    }

    /// Distinct atom names, alphabetical.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.visit(&mut |p| {
            if let Proposition::Atom(name) = p {
                out.insert(name.as_str());
            }
        });
        out
    }

    /// Evaluates with `value(name)` giving each atom's truth value.
    pub fn eval(&self, value: &impl Fn(&str) -> bool) -> bool {
        match self {
            Proposition::Const(b) => *b,
            Proposition::Atom(name) => value(name),
            Proposition::Not(p) => !p.eval(value),
            Proposition::And(p, q) => p.eval(value) && q.eval(value),
            Proposition::Or(p, q) => p.eval(value) || q.eval(value),
            Proposition::Implies(p, q) => !p.eval(value) || q.eval(value),
        }
    }

    /// Splits `p -> q` into `(p, q)`.
    pub fn as_implication(&self) -> Option<(&Proposition, &Proposition)> {
        match self {
            Proposition::Implies(p, q) => Some((p, q)),
            _ => None,
        }
    }

    /// Post-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Proposition)) {
        match self {
            Proposition::Const(_) | Proposition::Atom(_) => {}
            Proposition::Not(p) => p.visit(f),
            Proposition::And(p, q) | Proposition::Or(p, q) | Proposition::Implies(p, q) => {
                p.visit(f);
                q.visit(f);
            }
        }
        f(self);
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    fn precedence(&self) -> u8 {
        match self {
            Proposition::Implies(..) => 1,
            Proposition::Or(..) => 2,
            Proposition::And(..) => 3,
            Proposition::Not(_) => 4,
            Proposition::Const(_) | Proposition::Atom(_) => 5,
        }
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, p: &Proposition, min: u8| {
            if p.precedence() < min {
                write!(f, "({p})")
            } else {
                write!(f, "{p}")
            }
        };
        match self {
            Proposition::Const(b) => write!(f, "{b}"),
            Proposition::Atom(name) => f.write_str(name),
            Proposition::Not(p) => {
                f.write_str("~")?;
                wrap(f, p, 4)
            }
            // & and | print left-associated; -> groups to the right
            Proposition::And(p, q) => {
                wrap(f, p, 3)?;
                f.write_str(" & ")?;
                wrap(f, q, 4)
            }
            Proposition::Or(p, q) => {
                wrap(f, p, 2)?;
                f.write_str(" | ")?;
                wrap(f, q, 3)
            }
            Proposition::Implies(p, q) => {
                wrap(f, p, 2)?;
                f.write_str(" -> ")?;
                wrap(f, q, 1)
            }
        }
    }
}

impl From<Proposition> for String {
    fn from(p: Proposition) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Proposition {
    type Error = ParseError;

    fn try_from(s: String) -> Result<Self, ParseError> {
        s.parse()
    }
}

impl FromStr for Proposition {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_proposition(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at column {column}")]
    UnexpectedChar { column: usize, found: char },
    #[error("unexpected {found} at column {column}")]
    UnexpectedToken { column: usize, found: String },
    #[error("unexpected end of input")]
    UnexpectedEnd,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Not,
    And,
    Or,
    Arrow,
    Open,
    Close,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "`{s}`"),
            Token::Not => f.write_str("`~`"),
            Token::And => f.write_str("`&`"),
            Token::Or => f.write_str("`|`"),
            Token::Arrow => f.write_str("`->`"),
            Token::Open => f.write_str("`(`"),
            Token::Close => f.write_str("`)`"),
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_keyword(s: &str) -> bool {
    s == "true" || s == "false"
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let token = match c {
            _ if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '~' => Token::Not,
            '&' => Token::And,
            '|' => Token::Or,
            '(' => Token::Open,
            ')' => Token::Close,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Token::Arrow
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                Token::Ident(chars[start..=i].iter().collect())
            }
            _ => return Err(ParseError::UnexpectedChar { column, found: c }),
        };
        tokens.push((column, token));
        i += 1;
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.tokens.get(self.pos) {
            Some((column, t)) => ParseError::UnexpectedToken {
                column: *column,
                found: t.to_string(),
            },
            None => ParseError::UnexpectedEnd,
        }
    }

    fn implication(&mut self) -> Result<Proposition, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Token::Arrow) {
            Ok(Proposition::implies(lhs, self.implication()?))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Proposition, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Token::Or) {
            lhs = Proposition::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Proposition, ParseError> {
        let mut lhs = self.negation()?;
        while self.eat(&Token::And) {
            lhs = Proposition::and(lhs, self.negation()?);
        }
        Ok(lhs)
    }

    fn negation(&mut self) -> Result<Proposition, ParseError> {
        if self.eat(&Token::Not) {
            return Ok(Proposition::not(self.negation()?));
        }
        match self.peek().cloned() {
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.implication()?;
                if !self.eat(&Token::Close) {
                    return Err(self.unexpected());
                }
                Ok(inner)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(match name.as_str() {
                    "true" => Proposition::Const(true),
                    "false" => Proposition::Const(false),
                    _ => Proposition::Atom(name),
                })
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses `~`, `&`, `|`, `->` (loosest, right-associative) and parentheses
/// over identifier atoms. `true` and `false` are constants.
pub fn parse_proposition(text: &str) -> Result<Proposition, ParseError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let p = parser.implication()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.unexpected());
    }
    Ok(p)
}
