//! Ingestion of brat standoff annotations: parsed annotation documents,
//! annotation-type → ontology-name mapping, deterministic instance-IRI
//! minting, and quad emission with per-annotation provenance.

mod brat;
mod mapping;

pub use brat::parse_ann;
pub use mapping::MappingConfig;

use thiserror::Error;

use crate::ontology::{DataRange, Ontology};
use crate::quad::{Provenance, Quad};
use crate::term::{Iri, Literal};
use crate::vocab;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IngestError {
    #[error("doc id must be non-empty and IRI-safe: {reason}")]
    BadDocId { reason: String },
    #[error("line {line}: {reason}")]
    Ann { line: usize, reason: String },
    #[error("mapping line {line}: {reason}")]
    MappingSyntax { line: usize, reason: String },
    #[error("mapping line {line}: `{name}` is not defined in the ontology")]
    MappingUnknownName { line: usize, name: String },
}

/// One entity span (T line): annotation type, character offsets, and the
/// surface text. Discontinuous spans keep their fragments joined by single
/// spaces in the surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityAnnotation {
    pub id: String,
    pub entity_type: String,
    pub spans: Vec<(usize, usize)>,
    pub surface: String,
}

/// One binary relation (R line) between two entities of the same document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationAnnotation {
    pub id: String,
    pub relation_type: String,
    pub arg1: String,
    pub arg2: String,
}

/// One attribute (A line): a flag, or a valued attribute on an entity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeAnnotation {
    pub id: String,
    pub attribute_type: String,
    pub target: String,
    pub value: Option<String>,
}

/// A parsed `.ann` file for one threat report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotationDoc {
    pub doc_id: String,
    pub entities: Vec<EntityAnnotation>,
    pub relations: Vec<RelationAnnotation>,
    pub attributes: Vec<AttributeAnnotation>,
    pub warnings: Vec<String>,
}

/// Deterministic instance IRI: `kg:<ClassName>--<slug>` where the slug is
/// the lowercased surface with every run of characters outside [a-z0-9]
/// collapsed to one `-`. Equal (class, surface-slug) pairs yield equal IRIs
/// within and across documents, which is what links entities across
/// reports. A surface with no ASCII alphanumerics falls back to `x` plus
/// the surface's byte length in lowercase hex.
pub fn mint_instance_iri(class_name: &str, surface: &str) -> Iri {
    let mut slug = String::new();
    let mut gap = false;
    for c in surface.to_lowercase().chars() {
        if c.is_ascii_lowercase() || c.is_ascii_digit() {
            if gap && !slug.is_empty() {
                slug.push('-');
            }
            gap = false;
            slug.push(c);
        } else {
            gap = true;
        }
    }
    if slug.is_empty() {
        slug = format!("x{:x}", surface.len());
    }
    vocab::kg(&format!("{class_name}--{slug}"))
}

/// What [`emit_triples`] produced: the quads with their provenance, plus
/// counts of annotations skipped because their mapped name is not defined
/// in the ontology.
#[derive(Debug, Clone, Default)]
pub struct EmitOutcome {
    pub pairs: Vec<(Quad, Provenance)>,
    pub skipped_entities: usize,
    pub warnings: Vec<String>,
}

/// Instantiates a document against the ontology. Per entity: a class
/// typing, an `owl:NamedIndividual` typing, and an `rdfs:label` carrying
/// the surface form, all in the document graph. Per relation: one edge
/// quad. Per valued attribute mapped to a datatype property: one literal
/// quad. Annotations that resolve to names missing from the ontology are
/// skipped with a warning.
pub fn emit_triples(
    doc: &AnnotationDoc,
    mapping: &MappingConfig,
    ontology: &Ontology,
) -> EmitOutcome {
    let graph = vocab::doc_graph(&doc.doc_id).expect("doc id validated at parse time");
    let mut outcome = EmitOutcome::default();
    let prov = |ann_id: &str| Provenance::annotation(&doc.doc_id, vec![ann_id.to_owned()]);

    let mut iri_of: std::collections::HashMap<&str, Iri> = std::collections::HashMap::new();
    for e in &doc.entities {
        let class = mapping.entity_class(&e.entity_type);
        if ontology.class(class).is_none() {
            outcome.skipped_entities += 1;
            outcome.warnings.push(format!(
                "{}: entity type `{}` resolves to `{class}`, not a class in the ontology; skipped",
                e.id, e.entity_type
            ));
            continue;
        }
        let iri = mint_instance_iri(class, &e.surface);
        iri_of.insert(&e.id, iri.clone());
        outcome.pairs.push((
            Quad::new(
                iri.clone(),
                vocab::rdf_type(),
                vocab::malont(class),
                graph.clone(),
            ),
            prov(&e.id),
        ));
        outcome.pairs.push((
            Quad::new(
                iri.clone(),
                vocab::rdf_type(),
                vocab::owl_named_individual(),
                graph.clone(),
            ),
            prov(&e.id),
        ));
        outcome.pairs.push((
            Quad::new(
                iri,
                vocab::rdfs_label(),
                Literal::string(&e.surface),
                graph.clone(),
            ),
            prov(&e.id),
        ));
    }

    for r in &doc.relations {
        let property = mapping.relation_property(&r.relation_type);
        if ontology.object_property(property).is_none() {
            outcome.warnings.push(format!(
                "{}: relation type `{}` resolves to `{property}`, not an object property; skipped",
                r.id, r.relation_type
            ));
            continue;
        }
        let (Some(subject), Some(object)) =
            (iri_of.get(r.arg1.as_str()), iri_of.get(r.arg2.as_str()))
        else {
            outcome.warnings.push(format!(
                "{}: relation argument entity was skipped; relation dropped",
                r.id
            ));
            continue;
        };
        outcome.pairs.push((
            Quad::new(
                subject.clone(),
                vocab::malont(property),
                object.clone(),
                graph.clone(),
            ),
            prov(&r.id),
        ));
    }

    for a in &doc.attributes {
        let Some(value) = &a.value else {
            outcome.warnings.push(format!(
                "{}: flag attribute `{}` carries no value; ignored",
                a.id, a.attribute_type
            ));
            continue;
        };
        let property = mapping.attribute_property(&a.attribute_type);
        let Some(def) = ontology.datatype_property(property) else {
            outcome.warnings.push(format!(
                "{}: attribute type `{}` resolves to `{property}`, not a datatype property; skipped",
                a.id, a.attribute_type
            ));
            continue;
        };
        let Some(target) = iri_of.get(a.target.as_str()) else {
            outcome.warnings.push(format!(
                "{}: attribute target entity was skipped; attribute dropped",
                a.id
            ));
            continue;
        };
        let literal = match def.range {
            DataRange::String => Literal::string(value.clone()),
            DataRange::Integer => Literal::new(value.clone(), vocab::xsd_integer()),
        };
        outcome.pairs.push((
            Quad::new(
                target.clone(),
                vocab::malont(property),
                literal,
                graph.clone(),
            ),
            prov(&a.id),
        ));
    }

    outcome
}
