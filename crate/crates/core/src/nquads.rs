//! N-Quads export and import (subset: IRIs and typed literals, graph always
//! explicit, no blank nodes).
//!
//! Export is byte-deterministic: quads are written in (graph, subject,
//! predicate, object) canonical order, one per line, so identical quad sets
//! produce identical files. A provenance sidecar (TSV) can be written
//! alongside; provenance detail is not part of the N-Quads round trip.

use thiserror::Error;

use crate::quad::{Provenance, Quad};
use crate::store::Store;
use crate::term::{Iri, Literal, Term};
use crate::vocab;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NquadsError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: unsupported feature: {feature}")]
    Unsupported { line: usize, feature: String },
}

/// Serializes every quad as `<s> <p> o <g> .`, sorted canonically.
pub fn export(store: &Store) -> String {
    let mut quads: Vec<&Quad> = store.quads().collect();
    quads.sort_by_cached_key(|q| q.sort_key());
    let mut out = String::new();
    for q in quads {
        push_line(&mut out, q);
    }
    out
}

fn push_line(out: &mut String, q: &Quad) {
    out.push_str(&q.subject.canonical());
    out.push(' ');
    out.push_str(&q.predicate.canonical());
    out.push(' ');
    out.push_str(&q.object.canonical());
    out.push(' ');
    out.push_str(&q.graph.canonical());
    out.push_str(" .\n");
}

/// The provenance sidecar: one TAB-separated row per (quad, record) pair —
/// quad key, kind, doc id, annotation ids, rule id, premise keys — with
/// list cells comma-joined. Rows follow the export order of their quads.
pub fn export_provenance(store: &Store) -> String {
    let mut quads: Vec<&Quad> = store.quads().collect();
    quads.sort_by_cached_key(|q| q.sort_key());
    let mut out = String::new();
    for q in quads {
        let key = q.key();
        for record in store.provenance(q).unwrap_or_default() {
            let (doc_id, annotation_ids, rule_id, premise_keys) = match record {
                Provenance::Schema => ("", String::new(), "", String::new()),
                Provenance::Annotation {
                    doc_id,
                    annotation_ids,
                } => (doc_id.as_str(), annotation_ids.join(","), "", String::new()),
                Provenance::Inference {
                    rule_id,
                    premise_keys,
                } => ("", String::new(), rule_id.as_str(), premise_keys.join(",")),
            };
            out.push_str(&format!(
                "{key}\t{}\t{doc_id}\t{annotation_ids}\t{rule_id}\t{premise_keys}\n",
                record.kind()
            ));
        }
    }
    out
}

/// Parses N-Quads text. Comments (`#` at line start) and blank lines are
/// ignored. Each quad receives provenance derived from its graph (see
/// [`Provenance::for_imported`]); duplicates deduplicate at insertion.
pub fn import(text: &str) -> Result<Vec<(Quad, Provenance)>, NquadsError> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let quad = parse_line(line, line_no)?;
        let prov = Provenance::for_imported(&quad);
        out.push((quad, prov));
    }
    Ok(out)
}

/// Imports N-Quads text straight into a fresh store.
pub fn import_into_store(text: &str) -> Result<Store, NquadsError> {
    let mut store = Store::new();
    for (quad, prov) in import(text)? {
        store
            .insert(quad, prov)
            .expect("imported provenance is well-formed");
    }
    Ok(store)
}

struct Cursor<'a> {
    rest: &'a str,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, reason: impl Into<String>) -> Result<T, NquadsError> {
        Err(NquadsError::Syntax {
            line: self.line,
            reason: reason.into(),
        })
    }

    fn skip_ws(&mut self) -> usize {
        let before = self.rest.len();
        self.rest = self.rest.trim_start_matches([' ', '\t']);
        before - self.rest.len()
    }

    fn require_ws(&mut self) -> Result<(), NquadsError> {
        if self.skip_ws() == 0 {
            self.err("expected whitespace between terms")
        } else {
            Ok(())
        }
    }

    fn parse_iri(&mut self) -> Result<Iri, NquadsError> {
        if self.rest.starts_with("_:") {
            return Err(NquadsError::Unsupported {
                line: self.line,
                feature: "blank node".to_owned(),
            });
        }
        let Some(rest) = self.rest.strip_prefix('<') else {
            return self.err(format!("expected IRI, found {:?}", self.peek_snip()));
        };
        let Some(end) = rest.find('>') else {
            return self.err("unterminated IRI");
        };
        let text = &rest[..end];
        self.rest = &rest[end + 1..];
        Iri::new(text).or_else(|e| self.err(e.to_string()))
    }

    fn parse_term(&mut self) -> Result<Term, NquadsError> {
        match self.rest.chars().next() {
            Some('<') => self.parse_iri().map(Term::Iri),
            Some('"') => self.parse_literal().map(Term::Literal),
            Some('_') => Err(NquadsError::Unsupported {
                line: self.line,
                feature: "blank node".to_owned(),
            }),
            _ => self.err(format!("expected term, found {:?}", self.peek_snip())),
        }
    }

    fn parse_literal(&mut self) -> Result<Literal, NquadsError> {
        let mut chars = self.rest.char_indices();
        match chars.next() {
            Some((_, '"')) => {}
            _ => return self.err("expected literal"),
        }
        let mut lexical = String::new();
        loop {
            match chars.next() {
                None => return self.err("unterminated literal"),
                Some((i, '"')) => {
                    self.rest = &self.rest[i + 1..];
                    break;
                }
                Some((_, '\\')) => match chars.next() {
                    Some((_, '\\')) => lexical.push('\\'),
                    Some((_, '"')) => lexical.push('"'),
                    Some((_, 'n')) => lexical.push('\n'),
                    Some((_, 'r')) => lexical.push('\r'),
                    Some((_, 't')) => lexical.push('\t'),
                    Some((_, c)) => return self.err(format!("bad escape `\\{c}`")),
                    None => return self.err("unterminated escape"),
                },
                Some((_, c)) => lexical.push(c),
            }
        }
        let datatype = match self.rest.strip_prefix("^^") {
            Some(rest) => {
                self.rest = rest;
                self.parse_iri()?
            }
            None => vocab::xsd_string(),
        };
        // `"v"^^xsd:string` and `"v"` are the same value
        Ok(Literal::new(lexical, datatype))
    }

    fn peek_snip(&self) -> String {
        self.rest.chars().take(12).collect()
    }
}

fn parse_line(line: &str, line_no: usize) -> Result<Quad, NquadsError> {
    let mut cursor = Cursor {
        rest: line,
        line: line_no,
    };
    cursor.skip_ws();
    let subject = cursor.parse_iri()?;
    cursor.require_ws()?;
    let predicate = cursor.parse_iri()?;
    cursor.require_ws()?;
    let object = cursor.parse_term()?;
    cursor.require_ws()?;
    let graph = cursor.parse_iri()?;
    if cursor.skip_ws() == 0 || !cursor.rest.starts_with('.') {
        return cursor.err("expected terminal ` .`");
    }
    cursor.rest = &cursor.rest[1..];
    cursor.skip_ws();
    if !cursor.rest.is_empty() {
        return cursor.err(format!("trailing content {:?}", cursor.peek_snip()));
    }
    Ok(Quad {
        subject,
        predicate,
        object,
        graph,
    })
}
