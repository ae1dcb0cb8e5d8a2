//! Annotation-type → ontology-name mapping (`.map` files).
//!
//! Annotation schemes rarely match ontology names exactly; this file-level
//! rename layer bridges them. Types with no mapping fall back to identity —
//! the annotation type is used as the class or property name directly, and
//! identity names missing from the ontology are reported at emit time.

use std::collections::HashMap;

use super::IngestError;
use crate::ontology::Ontology;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MappingConfig {
    pub entity_map: HashMap<String, String>,
    pub relation_map: HashMap<String, String>,
    pub attribute_map: HashMap<String, String>,
}

impl MappingConfig {
    /// Parses mapping text: one `entity|relation|attribute <AnnType> ->
    /// <Name>` per line, `#` comments and blank lines ignored. Mapped names
    /// must exist in the ontology with the right kind.
    pub fn parse(text: &str, ontology: &Ontology) -> Result<Self, IngestError> {
        let mut config = MappingConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            let [kind, ann_type, "->", name] = tokens.as_slice() else {
                return Err(IngestError::MappingSyntax {
                    line,
                    reason: "expected `entity|relation|attribute <AnnType> -> <Name>`".to_owned(),
                });
            };
            let (map, defined) = match *kind {
                "entity" => (&mut config.entity_map, ontology.class(name).is_some()),
                "relation" => (
                    &mut config.relation_map,
                    ontology.object_property(name).is_some(),
                ),
                "attribute" => (
                    &mut config.attribute_map,
                    ontology.datatype_property(name).is_some(),
                ),
                other => {
                    return Err(IngestError::MappingSyntax {
                        line,
                        reason: format!("unknown mapping kind `{other}`"),
                    })
                }
            };
            if !defined {
                return Err(IngestError::MappingUnknownName {
                    line,
                    name: (*name).to_owned(),
                });
            }
            if map
                .insert((*ann_type).to_owned(), (*name).to_owned())
                .is_some()
            {
                return Err(IngestError::MappingSyntax {
                    line,
                    reason: format!("duplicate mapping for `{ann_type}`"),
                });
            }
        }
        Ok(config)
    }

    pub fn entity_class<'a>(&'a self, ann_type: &'a str) -> &'a str {
        self.entity_map
            .get(ann_type)
            .map_or(ann_type, String::as_str)
    }

    pub fn relation_property<'a>(&'a self, ann_type: &'a str) -> &'a str {
        self.relation_map
            .get(ann_type)
            .map_or(ann_type, String::as_str)
    }

    pub fn attribute_property<'a>(&'a self, ann_type: &'a str) -> &'a str {
        self.attribute_map
            .get(ann_type)
            .map_or(ann_type, String::as_str)
    }
}
