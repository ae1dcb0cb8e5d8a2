//! Fixed namespaces and well-known IRIs.
//!
//! The engine mints schema terms under `malont:` and instance terms under
//! `kg:`; rdf/rdfs/owl/xsd are the standard namespaces. Named graphs are
//! reserved under `kg:graph--*` for source attribution.

use std::sync::LazyLock;

use crate::term::Iri;

pub const RDF_NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS_NS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL_NS: &str = "http://www.w3.org/2002/07/owl#";
pub const XSD_NS: &str = "http://www.w3.org/2001/XMLSchema#";
pub const MALONT_NS: &str = "https://malont.example/ontology#";
pub const KG_NS: &str = "https://malont.example/kg#";

/// Prefixes usable in queries without declaration.
pub const PREFIXES: [(&str, &str); 6] = [
    ("rdf", RDF_NS),
    ("rdfs", RDFS_NS),
    ("owl", OWL_NS),
    ("xsd", XSD_NS),
    ("malont", MALONT_NS),
    ("kg", KG_NS),
];

pub fn expand_prefix(prefix: &str) -> Option<&'static str> {
    PREFIXES
        .iter()
        .find(|(p, _)| *p == prefix)
        .map(|(_, ns)| *ns)
}

macro_rules! well_known {
    ($($name:ident => $text:expr;)*) => {
        $(
            pub fn $name() -> Iri {
                static CELL: LazyLock<Iri> = LazyLock::new(|| Iri::new_unchecked($text));
                CELL.clone()
            }
        )*
    };
}

well_known! {
    rdf_type => "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    rdfs_label => "http://www.w3.org/2000/01/rdf-schema#label";
    rdfs_sub_class_of => "http://www.w3.org/2000/01/rdf-schema#subClassOf";
    rdfs_domain => "http://www.w3.org/2000/01/rdf-schema#domain";
    rdfs_range => "http://www.w3.org/2000/01/rdf-schema#range";
    owl_class => "http://www.w3.org/2002/07/owl#Class";
    owl_object_property => "http://www.w3.org/2002/07/owl#ObjectProperty";
    owl_datatype_property => "http://www.w3.org/2002/07/owl#DatatypeProperty";
    owl_named_individual => "http://www.w3.org/2002/07/owl#NamedIndividual";
    owl_inverse_of => "http://www.w3.org/2002/07/owl#inverseOf";
    xsd_string => "http://www.w3.org/2001/XMLSchema#string";
    xsd_integer => "http://www.w3.org/2001/XMLSchema#integer";
    schema_graph => "https://malont.example/kg#graph--schema";
    inferred_graph => "https://malont.example/kg#graph--inferred";
}

const DOC_GRAPH_PREFIX: &str = "https://malont.example/kg#graph--doc--";

/// Schema term `malont:<name>`. Names come from ontology identifiers and
/// are always IRI-safe.
pub fn malont(name: &str) -> Iri {
    Iri::new_unchecked(&format!("{MALONT_NS}{name}"))
}

/// Instance term `kg:<suffix>`.
pub fn kg(suffix: &str) -> Iri {
    Iri::new_unchecked(&format!("{KG_NS}{suffix}"))
}

/// The document graph holding quads asserted by one annotated report.
pub fn doc_graph(doc_id: &str) -> Result<Iri, crate::term::TermError> {
    Iri::new(format!("{DOC_GRAPH_PREFIX}{doc_id}"))
}

/// Recovers the document id from a document graph IRI.
pub fn doc_id_from_graph(graph: &Iri) -> Option<&str> {
    graph.as_str().strip_prefix(DOC_GRAPH_PREFIX)
}

pub fn xsd_datatype_name(iri: &Iri) -> Option<&'static str> {
    if *iri == xsd_string() {
        Some("string")
    } else if *iri == xsd_integer() {
        Some("integer")
    } else {
        None
    }
}
