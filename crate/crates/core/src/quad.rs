//! Quads and provenance: one statement in a named graph, plus the record of
//! where it came from.

use std::fmt;

use thiserror::Error;

use crate::term::{Iri, Term};
use crate::vocab;

/// One ⟨subject, predicate, object⟩ statement in a named graph. Subject,
/// predicate, and graph are IRIs by construction; only the object may be a
/// literal. The graph carries source attribution: the schema graph, an
/// inferred graph, or one document graph per ingested report.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quad {
    pub subject: Iri,
    pub predicate: Iri,
    pub object: Term,
    pub graph: Iri,
}

impl Quad {
    pub fn new(subject: Iri, predicate: Iri, object: impl Into<Term>, graph: Iri) -> Self {
        Self {
            subject,
            predicate,
            object: object.into(),
            graph,
        }
    }

    /// Canonical key: the four canonical term strings concatenated in
    /// subject, predicate, object, graph order. Terms are self-delimiting,
    /// so the key is unambiguous; provenance records address quads by it.
    pub fn key(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.subject.canonical());
        out.push_str(&self.predicate.canonical());
        out.push_str(&self.object.canonical());
        out.push_str(&self.graph.canonical());
        out
    }

    /// Sort key in (graph, subject, predicate, object) order — the
    /// deterministic order used by match output and N-Quads export.
    pub(crate) fn sort_key(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.graph.canonical());
        out.push_str(&self.subject.canonical());
        out.push_str(&self.predicate.canonical());
        out.push_str(&self.object.canonical());
        out
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            self.subject,
            self.predicate,
            self.object.canonical(),
            self.graph
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProvenanceError {
    #[error("annotation provenance requires a non-empty doc id")]
    EmptyDocId,
    #[error("inference provenance requires a non-empty rule id")]
    EmptyRuleId,
    #[error("inference provenance requires at least one premise key")]
    NoPremises,
}

/// The source record for one quad: the built-in/loaded schema, an
/// annotation in a report, or an inference rule application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Schema,
    Annotation {
        doc_id: String,
        annotation_ids: Vec<String>,
    },
    Inference {
        rule_id: String,
        premise_keys: Vec<String>,
    },
}

impl Provenance {
    pub fn annotation(doc_id: impl Into<String>, annotation_ids: Vec<String>) -> Self {
        Provenance::Annotation {
            doc_id: doc_id.into(),
            annotation_ids,
        }
    }

    pub fn inference(rule_id: impl Into<String>, premise_keys: Vec<String>) -> Self {
        Provenance::Inference {
            rule_id: rule_id.into(),
            premise_keys,
        }
    }

    pub fn validate(&self) -> Result<(), ProvenanceError> {
        match self {
            Provenance::Schema => Ok(()),
            Provenance::Annotation { doc_id, .. } if doc_id.is_empty() => {
                Err(ProvenanceError::EmptyDocId)
            }
            Provenance::Annotation { .. } => Ok(()),
            Provenance::Inference { rule_id, .. } if rule_id.is_empty() => {
                Err(ProvenanceError::EmptyRuleId)
            }
            Provenance::Inference { premise_keys, .. } if premise_keys.is_empty() => {
                Err(ProvenanceError::NoPremises)
            }
            Provenance::Inference { .. } => Ok(()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Provenance::Schema => "schema",
            Provenance::Annotation { .. } => "annotation",
            Provenance::Inference { .. } => "inference",
        }
    }

    /// The provenance a quad receives when read back from an N-Quads file,
    /// derived from its graph: schema graph → schema; document graph →
    /// annotation with the recovered doc id; anything else → inference with
    /// rule id "imported" and the quad's own key as premise.
    pub fn for_imported(quad: &Quad) -> Self {
        if quad.graph == vocab::schema_graph() {
            Provenance::Schema
        } else if let Some(doc_id) = vocab::doc_id_from_graph(&quad.graph) {
            Provenance::annotation(doc_id, Vec::new())
        } else {
            Provenance::inference("imported", vec![quad.key()])
        }
    }
}
