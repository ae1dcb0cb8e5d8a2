//! Terms: the node and edge vocabulary of the knowledge graph.
//!
//! A term is either an IRI or a typed literal. Every literal carries a
//! datatype; plain literals are normalized to `xsd:string` on construction,
//! so `"targets"` and `"targets"^^xsd:string` are one and the same value.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::vocab;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("invalid IRI {text:?}: {reason}")]
    InvalidIri { text: String, reason: &'static str },
}

/// An absolute IRI. Construction validates the text: non-empty, no
/// whitespace, no `<` or `>` characters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(text: impl AsRef<str>) -> Result<Self, TermError> {
        let text = text.as_ref();
        let reason = if text.is_empty() {
            Some("empty")
        } else if text.chars().any(char::is_whitespace) {
            Some("contains whitespace")
        } else if text.contains('<') || text.contains('>') {
            Some("contains angle bracket")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(TermError::InvalidIri {
                text: text.to_owned(),
                reason,
            }),
            None => Ok(Self(Arc::from(text))),
        }
    }

    /// For IRIs known valid at compile time (vocabulary constants).
    pub(crate) fn new_unchecked(text: &str) -> Self {
        debug_assert!(Iri::new(text).is_ok(), "bad built-in IRI {text:?}");
        Self(Arc::from(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The fragment after the last `#`, or after the last `/` when there is
    /// no fragment; the full text otherwise.
    pub fn local_name(&self) -> &str {
        match self.0.rfind('#').or_else(|| self.0.rfind('/')) {
            Some(i) => &self.0[i + 1..],
            None => &self.0,
        }
    }

    /// N-Triples surface form `<iri>`.
    pub fn canonical(&self) -> String {
        format!("<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl Ord for Iri {
    fn cmp(&self, other: &Self) -> Ordering {
        // Byte order of the canonical `<text>` form. The leading '<' is
        // common; the closing '>' must participate so that e.g. <a> sorts
        // after <a#b> exactly as the canonical strings do.
        let a = self.0.bytes().chain(std::iter::once(b'>'));
        let b = other.0.bytes().chain(std::iter::once(b'>'));
        a.cmp(b)
    }
}

impl PartialOrd for Iri {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A typed literal. The datatype is always present. The lexical form is
/// reference-counted so query bindings and result rows clone cheaply.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    lexical: Arc<str>,
    datatype: Iri,
}

impl Literal {
    pub fn new(lexical: impl AsRef<str>, datatype: Iri) -> Self {
        Self {
            lexical: Arc::from(lexical.as_ref()),
            datatype,
        }
    }

    /// An `xsd:string` literal — the normalized form of a plain literal.
    pub fn string(lexical: impl AsRef<str>) -> Self {
        Self::new(lexical, vocab::xsd_string())
    }

    /// An `xsd:integer` literal.
    pub fn integer(value: i64) -> Self {
        Self::new(value.to_string(), vocab::xsd_integer())
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn is_string(&self) -> bool {
        self.datatype == vocab::xsd_string()
    }

    /// `"escaped"` for xsd:string, `"escaped"^^<datatype>` otherwise.
    pub fn canonical(&self) -> String {
        let mut out = String::with_capacity(self.lexical.len() + 2);
        out.push('"');
        escape_into(&self.lexical, &mut out);
        out.push('"');
        if !self.is_string() {
            out.push_str("^^");
            out.push_str(&self.datatype.canonical());
        }
        out
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// Escape for the N-Triples literal grammar: backslash, double quote,
/// newline, carriage return, and tab get backslash sequences.
pub(crate) fn escape_into(s: &str, out: &mut String) {
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
}

/// An IRI or a typed literal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Iri(Iri),
    Literal(Literal),
}

impl Term {
    pub fn iri(text: impl AsRef<str>) -> Result<Self, TermError> {
        Iri::new(text).map(Term::Iri)
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            Term::Literal(_) => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Iri(_) => None,
            Term::Literal(lit) => Some(lit),
        }
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    /// N-Triples surface form; injective over well-formed terms.
    pub fn canonical(&self) -> String {
        match self {
            Term::Iri(iri) => iri.canonical(),
            Term::Literal(lit) => lit.canonical(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

impl Ord for Term {
    /// Total order: lexicographic byte order of the canonical forms.
    /// Literals (opening `"` = 0x22) sort before IRIs (`<` = 0x3C).
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Term::Iri(a), Term::Iri(b)) => a.cmp(b),
            (Term::Literal(_), Term::Iri(_)) => Ordering::Less,
            (Term::Iri(_), Term::Literal(_)) => Ordering::Greater,
            (Term::Literal(a), Term::Literal(b)) => a.canonical().cmp(&b.canonical()),
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
