//! Ontology schemas: class hierarchies plus object and datatype properties
//! with domain/range constraints and declared inverses.
//!
//! An [`Ontology`] is plain data; [`Ontology::validate`] reports every
//! integrity violation rather than failing fast, so schema files can be
//! checked and reported in one pass.

mod builtin;
mod dsl;
mod reify;

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemaError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("invalid ontology: {}", format_violations(.violations))]
    Invalid { violations: Vec<Violation> },
    #[error("bad schema graph: {reason}")]
    BadSchemaGraph { reason: String },
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// One broken ontology invariant, naming the offending definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    BadName { name: String },
    DuplicateName { name: String },
    UnresolvedReference { referrer: String, name: String },
    CyclicHierarchy { name: String },
    AsymmetricInverse { property: String, inverse: String },
    EmptyDomains { property: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadName { name } => write!(f, "bad-name({name})"),
            Violation::DuplicateName { name } => write!(f, "duplicate-name({name})"),
            Violation::UnresolvedReference { referrer, name } => {
                write!(f, "unresolved-reference({referrer} -> {name})")
            }
            Violation::CyclicHierarchy { name } => write!(f, "cyclic-hierarchy({name})"),
            Violation::AsymmetricInverse { property, inverse } => {
                write!(f, "asymmetric-inverse({property}, {inverse})")
            }
            Violation::EmptyDomains { property } => write!(f, "empty-domains({property})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDef {
    pub name: String,
    pub superclass: Option<String>,
    pub label: String,
}

impl ClassDef {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_owned(),
            superclass: None,
            label: name.to_owned(),
        }
    }

    pub fn with_superclass(name: &str, superclass: &str) -> Self {
        Self {
            superclass: Some(superclass.to_owned()),
            ..Self::new(name)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectPropertyDef {
    pub name: String,
    pub domains: Vec<String>,
    pub range: String,
    pub inverse: Option<String>,
    pub label: String,
}

impl ObjectPropertyDef {
    pub fn new(name: &str, domains: &[&str], range: &str, inverse: Option<&str>) -> Self {
        Self {
            name: name.to_owned(),
            domains: domains.iter().map(|d| (*d).to_owned()).collect(),
            range: range.to_owned(),
            inverse: inverse.map(str::to_owned),
            label: name.to_owned(),
        }
    }
}

/// Supported literal ranges for datatype properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataRange {
    String,
    Integer,
}

impl DataRange {
    pub fn name(self) -> &'static str {
        match self {
            DataRange::String => "string",
            DataRange::Integer => "integer",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatatypePropertyDef {
    pub name: String,
    pub domains: Vec<String>,
    pub range: DataRange,
    pub label: String,
}

impl DatatypePropertyDef {
    pub fn new(name: &str, domains: &[&str], range: DataRange) -> Self {
        Self {
            name: name.to_owned(),
            domains: domains.iter().map(|d| (*d).to_owned()).collect(),
            range,
            label: name.to_owned(),
        }
    }
}

/// A full schema: classes, object properties, datatype properties.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ontology {
    pub classes: Vec<ClassDef>,
    pub object_properties: Vec<ObjectPropertyDef>,
    pub datatype_properties: Vec<DatatypePropertyDef>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ontology {
    pub fn class(&self, name: &str) -> Option<&ClassDef> {
        self.classes.iter().find(|c| c.name == name)
    }

    pub fn object_property(&self, name: &str) -> Option<&ObjectPropertyDef> {
        self.object_properties.iter().find(|p| p.name == name)
    }

    pub fn datatype_property(&self, name: &str) -> Option<&DatatypePropertyDef> {
        self.datatype_properties.iter().find(|p| p.name == name)
    }

    /// Superclasses of `name` from nearest to root, excluding `name`.
    /// Stops if it runs into a cycle or an undefined class.
    pub fn superclasses(&self, name: &str) -> Vec<&str> {
        let mut out = Vec::new();
        let mut seen: HashSet<&str> = HashSet::new();
        seen.insert(name);
        let mut current = self.class(name).and_then(|c| c.superclass.as_deref());
        while let Some(sup) = current {
            if !seen.insert(sup) {
                break;
            }
            out.push(sup);
            current = self.class(sup).and_then(|c| c.superclass.as_deref());
        }
        out
    }

    /// All classes below `name` in the hierarchy, excluding `name`.
    pub fn subclasses(&self, name: &str) -> HashSet<&str> {
        self.classes
            .iter()
            .filter(|c| self.superclasses(&c.name).contains(&name))
            .map(|c| c.name.as_str())
            .collect()
    }

    /// Empty iff every invariant holds: legal identifiers, unique names
    /// across all three definition kinds, resolvable references, an acyclic
    /// class hierarchy, and symmetric inverse declarations.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();

        let all_names = self
            .classes
            .iter()
            .map(|c| c.name.as_str())
            .chain(self.object_properties.iter().map(|p| p.name.as_str()))
            .chain(self.datatype_properties.iter().map(|p| p.name.as_str()));
        let mut seen: HashSet<&str> = HashSet::new();
        for name in all_names {
            if !is_identifier(name) {
                violations.push(Violation::BadName {
                    name: name.to_owned(),
                });
            }
            if !seen.insert(name) {
                violations.push(Violation::DuplicateName {
                    name: name.to_owned(),
                });
            }
        }

        let class_names: HashSet<&str> = self.classes.iter().map(|c| c.name.as_str()).collect();

        for c in &self.classes {
            if let Some(sup) = &c.superclass {
                if !class_names.contains(sup.as_str()) {
                    violations.push(Violation::UnresolvedReference {
                        referrer: c.name.clone(),
                        name: sup.clone(),
                    });
                }
            }
        }
        violations.extend(self.hierarchy_cycles());

        for p in &self.object_properties {
            if p.domains.is_empty() {
                violations.push(Violation::EmptyDomains {
                    property: p.name.clone(),
                });
            }
            for d in &p.domains {
                if !class_names.contains(d.as_str()) {
                    violations.push(Violation::UnresolvedReference {
                        referrer: p.name.clone(),
                        name: d.clone(),
                    });
                }
            }
            if !class_names.contains(p.range.as_str()) {
                violations.push(Violation::UnresolvedReference {
                    referrer: p.name.clone(),
                    name: p.range.clone(),
                });
            }
            if let Some(inv) = &p.inverse {
                match self.object_property(inv) {
                    None => violations.push(Violation::UnresolvedReference {
                        referrer: p.name.clone(),
                        name: inv.clone(),
                    }),
                    Some(q) if q.inverse.as_deref() != Some(p.name.as_str()) => {
                        violations.push(Violation::AsymmetricInverse {
                            property: p.name.clone(),
                            inverse: inv.clone(),
                        })
                    }
                    Some(_) => {}
                }
            }
        }

        for p in &self.datatype_properties {
            if p.domains.is_empty() {
                violations.push(Violation::EmptyDomains {
                    property: p.name.clone(),
                });
            }
            for d in &p.domains {
                if !class_names.contains(d.as_str()) {
                    violations.push(Violation::UnresolvedReference {
                        referrer: p.name.clone(),
                        name: d.clone(),
                    });
                }
            }
        }

        violations
    }

    fn hierarchy_cycles(&self) -> Vec<Violation> {
        let parent: HashMap<&str, &str> = self
            .classes
            .iter()
            .filter_map(|c| c.superclass.as_deref().map(|s| (c.name.as_str(), s)))
            .collect();
        let mut out = Vec::new();
        // A class is on a cycle iff walking superclass links returns to it
        // within |classes| steps. Chains that merely lead into a cycle are
        // not themselves flagged.
        for c in &self.classes {
            let mut node = c.name.as_str();
            let mut on_cycle = false;
            for _ in 0..self.classes.len() {
                match parent.get(node) {
                    Some(next) => {
                        node = next;
                        if node == c.name {
                            on_cycle = true;
                            break;
                        }
                    }
                    None => break,
                }
            }
            if on_cycle {
                out.push(Violation::CyclicHierarchy {
                    name: c.name.clone(),
                });
            }
        }
        out
    }

    /// Definitions sorted by name and domain lists sorted; useful for
    /// order-insensitive comparison.
    pub fn sorted(mut self) -> Self {
        self.classes.sort_by(|a, b| a.name.cmp(&b.name));
        self.object_properties.sort_by(|a, b| a.name.cmp(&b.name));
        self.datatype_properties.sort_by(|a, b| a.name.cmp(&b.name));
        for p in &mut self.object_properties {
            p.domains.sort();
        }
        for p in &mut self.datatype_properties {
            p.domains.sort();
        }
        self
    }
}
