//! Schema reification: the ontology's own definitions expressed as quads in
//! the schema graph, so queries like `?x a owl:Class` can see them — and the
//! inverse reconstruction used when a knowledge graph is loaded from disk.

use std::collections::HashMap;

use super::{ClassDef, DataRange, DatatypePropertyDef, ObjectPropertyDef, Ontology, SchemaError};
use crate::quad::Quad;
use crate::term::{Iri, Literal, Term};
use crate::vocab;

impl Ontology {
    /// Emits the schema into the schema graph. Per class: an `owl:Class`
    /// typing, an `rdfs:label` equal to the name, and `rdfs:subClassOf`
    /// when a superclass exists. Per property: the owl typing, label, one
    /// `rdfs:domain` per domain, `rdfs:range`, and `owl:inverseOf` in both
    /// directions for declared inverse pairs.
    pub fn reify(&self) -> Result<Vec<Quad>, SchemaError> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(SchemaError::Invalid { violations });
        }

        let g = vocab::schema_graph();
        let mut quads = Vec::new();
        let mut emit = |s: Iri, p: Iri, o: Term| quads.push(Quad::new(s, p, o, g.clone()));

        for c in &self.classes {
            let iri = vocab::malont(&c.name);
            emit(iri.clone(), vocab::rdf_type(), vocab::owl_class().into());
            emit(
                iri.clone(),
                vocab::rdfs_label(),
                Literal::string(&c.label).into(),
            );
            if let Some(sup) = &c.superclass {
                emit(iri, vocab::rdfs_sub_class_of(), vocab::malont(sup).into());
            }
        }

        for p in &self.object_properties {
            let iri = vocab::malont(&p.name);
            emit(
                iri.clone(),
                vocab::rdf_type(),
                vocab::owl_object_property().into(),
            );
            emit(
                iri.clone(),
                vocab::rdfs_label(),
                Literal::string(&p.label).into(),
            );
            for d in &p.domains {
                emit(iri.clone(), vocab::rdfs_domain(), vocab::malont(d).into());
            }
            emit(
                iri.clone(),
                vocab::rdfs_range(),
                vocab::malont(&p.range).into(),
            );
            if let Some(inv) = &p.inverse {
                emit(iri, vocab::owl_inverse_of(), vocab::malont(inv).into());
            }
        }

        for p in &self.datatype_properties {
            let iri = vocab::malont(&p.name);
            emit(
                iri.clone(),
                vocab::rdf_type(),
                vocab::owl_datatype_property().into(),
            );
            emit(
                iri.clone(),
                vocab::rdfs_label(),
                Literal::string(&p.label).into(),
            );
            for d in &p.domains {
                emit(iri.clone(), vocab::rdfs_domain(), vocab::malont(d).into());
            }
            let range = match p.range {
                DataRange::String => vocab::xsd_string(),
                DataRange::Integer => vocab::xsd_integer(),
            };
            emit(iri, vocab::rdfs_range(), range.into());
        }

        Ok(quads)
    }

    /// Rebuilds an ontology from reified schema quads — the inverse of
    /// [`Ontology::reify`], used when loading a serialized knowledge graph.
    /// Quads outside the schema graph and schema terms outside the ontology
    /// namespace are ignored. Definitions come back sorted by name.
    pub fn from_schema_quads<'a>(
        quads: impl IntoIterator<Item = &'a Quad>,
    ) -> Result<Ontology, SchemaError> {
        let mut class_iris = Vec::new();
        let mut objprop_iris = Vec::new();
        let mut dataprop_iris = Vec::new();
        let mut superclass: HashMap<String, Iri> = HashMap::new();
        let mut domains: HashMap<String, Vec<Iri>> = HashMap::new();
        let mut range: HashMap<String, Vec<Iri>> = HashMap::new();
        let mut inverse: HashMap<String, Iri> = HashMap::new();
        let mut label: HashMap<String, String> = HashMap::new();

        let schema_graph = vocab::schema_graph();
        for quad in quads {
            if quad.graph != schema_graph {
                continue;
            }
            let subject = match malont_name(&quad.subject) {
                Some(name) => name.to_owned(),
                None => continue,
            };
            if quad.predicate == vocab::rdf_type() {
                match &quad.object {
                    Term::Iri(t) if *t == vocab::owl_class() => class_iris.push(subject),
                    Term::Iri(t) if *t == vocab::owl_object_property() => {
                        objprop_iris.push(subject)
                    }
                    Term::Iri(t) if *t == vocab::owl_datatype_property() => {
                        dataprop_iris.push(subject)
                    }
                    _ => {}
                }
            } else if quad.predicate == vocab::rdfs_label() {
                if let Term::Literal(lit) = &quad.object {
                    label.insert(subject, lit.lexical().to_owned());
                }
            } else if quad.predicate == vocab::rdfs_sub_class_of() {
                if let Term::Iri(sup) = &quad.object {
                    superclass.insert(subject, sup.clone());
                }
            } else if quad.predicate == vocab::rdfs_domain() {
                if let Term::Iri(d) = &quad.object {
                    domains.entry(subject).or_default().push(d.clone());
                }
            } else if quad.predicate == vocab::rdfs_range() {
                if let Term::Iri(r) = &quad.object {
                    range.entry(subject).or_default().push(r.clone());
                }
            } else if quad.predicate == vocab::owl_inverse_of() {
                if let Term::Iri(q) = &quad.object {
                    inverse.insert(subject, q.clone());
                }
            }
        }

        let mut onto = Ontology::default();
        for name in class_iris {
            onto.classes.push(ClassDef {
                label: label.get(&name).cloned().unwrap_or_else(|| name.clone()),
                superclass: match superclass.get(&name) {
                    Some(iri) => Some(required_malont_name(iri, &name)?),
                    None => None,
                },
                name,
            });
        }
        for name in objprop_iris {
            let range = single_range(&range, &name)?;
            onto.object_properties.push(ObjectPropertyDef {
                label: label.get(&name).cloned().unwrap_or_else(|| name.clone()),
                domains: malont_names(domains.get(&name), &name)?,
                range: required_malont_name(&range, &name)?,
                inverse: match inverse.get(&name) {
                    Some(iri) => Some(required_malont_name(iri, &name)?),
                    None => None,
                },
                name,
            });
        }
        for name in dataprop_iris {
            let range_iri = single_range(&range, &name)?;
            let range = if range_iri == vocab::xsd_string() {
                DataRange::String
            } else if range_iri == vocab::xsd_integer() {
                DataRange::Integer
            } else {
                return Err(SchemaError::BadSchemaGraph {
                    reason: format!("{name}: unsupported datatype range {range_iri}"),
                });
            };
            onto.datatype_properties.push(DatatypePropertyDef {
                label: label.get(&name).cloned().unwrap_or_else(|| name.clone()),
                domains: malont_names(domains.get(&name), &name)?,
                range,
                name,
            });
        }

        let onto = onto.sorted();
        let violations = onto.validate();
        if violations.is_empty() {
            Ok(onto)
        } else {
            Err(SchemaError::Invalid { violations })
        }
    }
}

fn malont_name(iri: &Iri) -> Option<&str> {
    iri.as_str().strip_prefix(vocab::MALONT_NS)
}

fn required_malont_name(iri: &Iri, owner: &str) -> Result<String, SchemaError> {
    malont_name(iri)
        .map(str::to_owned)
        .ok_or_else(|| SchemaError::BadSchemaGraph {
            reason: format!("{owner}: reference {iri} is outside the ontology namespace"),
        })
}

fn malont_names(iris: Option<&Vec<Iri>>, owner: &str) -> Result<Vec<String>, SchemaError> {
    let mut names = iris
        .map(|v| {
            v.iter()
                .map(|iri| required_malont_name(iri, owner))
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?
        .unwrap_or_default();
    names.sort();
    names.dedup();
    Ok(names)
}

fn single_range(ranges: &HashMap<String, Vec<Iri>>, name: &str) -> Result<Iri, SchemaError> {
    match ranges.get(name).map(Vec::as_slice) {
        Some([one]) => Ok(one.clone()),
        Some(many) => Err(SchemaError::BadSchemaGraph {
            reason: format!("{name}: expected exactly one range, found {}", many.len()),
        }),
        None => Err(SchemaError::BadSchemaGraph {
            reason: format!("{name}: missing range"),
        }),
    }
}
