//! SPARQL-subset SELECT queries: basic graph patterns with variables,
//! prefixed names, typed literals, the `a` keyword, and DISTINCT.
//!
//! Prefixes are fixed (rdf, rdfs, owl, xsd, malont, kg) — no PREFIX
//! declarations. FILTER, OPTIONAL, and friends are rejected by name.

mod eval;
mod parse;

pub use eval::evaluate;
pub use parse::parse_query;

use std::fmt;

use thiserror::Error;

use crate::term::Term;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("line {line}, column {column}: {reason}")]
    Syntax {
        line: usize,
        column: usize,
        reason: String,
    },
    #[error("line {line}, column {column}: unknown prefix `{prefix}`")]
    UnknownPrefix {
        line: usize,
        column: usize,
        prefix: String,
    },
    #[error("unsupported feature: {feature}")]
    Unsupported { feature: String },
}

/// A pattern position: a named variable or a concrete term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternNode {
    Var(String),
    Term(Term),
}

impl PatternNode {
    pub fn var(name: &str) -> Self {
        PatternNode::Var(name.to_owned())
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            PatternNode::Var(name) => Some(name),
            PatternNode::Term(_) => None,
        }
    }
}

impl fmt::Display for PatternNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternNode::Var(name) => write!(f, "?{name}"),
            PatternNode::Term(term) => write!(f, "{term}"),
        }
    }
}

/// One triple pattern; `a` parses as rdf:type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub subject: PatternNode,
    pub predicate: PatternNode,
    pub object: PatternNode,
}

impl TriplePattern {
    pub fn positions(&self) -> [&PatternNode; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.positions().into_iter().filter_map(PatternNode::as_var)
    }
}

/// A parsed SELECT query: projection, DISTINCT flag, and the basic graph
/// pattern. Projected variables that appear in no pattern produce unbound
/// columns rather than errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectQuery {
    pub projected: Vec<String>,
    pub distinct: bool,
    pub patterns: Vec<TriplePattern>,
}

/// Solutions of a query: ordered header, rows sorted by the canonical term
/// order of their cells, unbound cells empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<Term>>>,
}

impl ResultTable {
    /// TSV: header line of `?var` names, one line per row, cells in
    /// canonical term form, unbound cells empty.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.header.iter().map(|v| format!("?{v}")).collect();
        out.push_str(&header.join("\t"));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(cell_text).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }
}

pub(crate) fn cell_text(cell: &Option<Term>) -> String {
    cell.as_ref().map(Term::canonical).unwrap_or_default()
}
