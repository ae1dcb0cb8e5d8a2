//! Forward-chaining materialization and schema-conformance validation.
//!
//! Five rules run to fixpoint over the store, writing conclusions into the
//! inferred graph with rule/premise provenance:
//!
//! | rule                   | premise                                | conclusion        |
//! |------------------------|----------------------------------------|-------------------|
//! | R1-inverse             | (s, P, o), P inverseOf Q               | (o, Q, s)         |
//! | R2-subclass-transitive | (C, subClassOf, D), (D, subClassOf, E) | (C, subClassOf, E)|
//! | R3-type-inheritance    | (x, type, C), (C, subClassOf, D)       | (x, type, D)      |
//! | R4-domain-typing       | (s, P, o), P has exactly one domain D  | (s, type, D)      |
//! | R5-range-typing        | (s, P, o), object property P range R   | (o, type, R)      |
//!
//! R4 is skipped for multi-domain properties: those domains are read as
//! alternatives, and typing every subject with all of them would be wrong.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::ontology::{DataRange, Ontology};
use crate::quad::{Provenance, Quad};
use crate::store::Store;
use crate::term::{Iri, Term};
use crate::vocab;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReasonerError {
    #[error("store has no schema graph; reify the ontology into it first")]
    MissingSchemaGraph,
}

/// The closed rule set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RuleId {
    Inverse,
    SubclassTransitive,
    TypeInheritance,
    DomainTyping,
    RangeTyping,
}

impl RuleId {
    pub const ALL: [RuleId; 5] = [
        RuleId::Inverse,
        RuleId::SubclassTransitive,
        RuleId::TypeInheritance,
        RuleId::DomainTyping,
        RuleId::RangeTyping,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::Inverse => "R1-inverse",
            RuleId::SubclassTransitive => "R2-subclass-transitive",
            RuleId::TypeInheritance => "R3-type-inheritance",
            RuleId::DomainTyping => "R4-domain-typing",
            RuleId::RangeTyping => "R5-range-typing",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a materialization run did.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InferenceReport {
    pub added_quads: usize,
    pub iterations: usize,
    pub per_rule: BTreeMap<RuleId, usize>,
}

/// Property vocabulary of an ontology resolved to IRIs, for rule matching.
struct RuleTables {
    /// P → (Q, key of the schema quad P owl:inverseOf Q)
    inverse: HashMap<Iri, (Iri, String)>,
    /// P → (D, key of P rdfs:domain D) for properties with exactly one domain
    single_domain: HashMap<Iri, (Iri, String)>,
    /// P → (R, key of P rdfs:range R) for object properties
    object_range: HashMap<Iri, (Iri, String)>,
}

impl RuleTables {
    fn new(ontology: &Ontology) -> Self {
        let g = vocab::schema_graph();
        let key_of = |s: &Iri, p: Iri, o: &Iri| -> String {
            Quad::new(s.clone(), p, o.clone(), g.clone()).key()
        };

        let mut inverse = HashMap::new();
        let mut single_domain = HashMap::new();
        let mut object_range = HashMap::new();

        for p in &ontology.object_properties {
            let iri = vocab::malont(&p.name);
            if let Some(inv) = &p.inverse {
                let inv_iri = vocab::malont(inv);
                let key = key_of(&iri, vocab::owl_inverse_of(), &inv_iri);
                inverse.insert(iri.clone(), (inv_iri, key));
            }
            if let [domain] = p.domains.as_slice() {
                let d_iri = vocab::malont(domain);
                let key = key_of(&iri, vocab::rdfs_domain(), &d_iri);
                single_domain.insert(iri.clone(), (d_iri, key));
            }
            let r_iri = vocab::malont(&p.range);
            let key = key_of(&iri, vocab::rdfs_range(), &r_iri);
            object_range.insert(iri, (r_iri, key));
        }
        for p in &ontology.datatype_properties {
            let iri = vocab::malont(&p.name);
            if let [domain] = p.domains.as_slice() {
                let d_iri = vocab::malont(domain);
                let key = key_of(&iri, vocab::rdfs_domain(), &d_iri);
                single_domain.insert(iri, (d_iri, key));
            }
        }

        Self {
            inverse,
            single_domain,
            object_range,
        }
    }
}

/// Applies all five rules to fixpoint. Conclusions land in the inferred
/// graph; each newly added quad records the rule and the premise quad keys
/// that produced it (first derivation wins).
pub fn materialize(
    store: &mut Store,
    ontology: &Ontology,
) -> Result<InferenceReport, ReasonerError> {
    if !store.has_graph(&vocab::schema_graph()) {
        return Err(ReasonerError::MissingSchemaGraph);
    }

    let tables = RuleTables::new(ontology);
    let rdf_type = vocab::rdf_type();
    let sub_class_of = vocab::rdfs_sub_class_of();
    let inferred = vocab::inferred_graph();

    let mut report = InferenceReport::default();
    for rule in RuleId::ALL {
        report.per_rule.insert(rule, 0);
    }

    loop {
        report.iterations += 1;
        let mut added_this_pass = 0usize;

        // Current subclass edges with the quads asserting them. Rebuilt per
        // pass so R2 conclusions feed R2 and R3 in later passes.
        let mut subclass_edges: HashMap<Iri, Vec<(Iri, String)>> = HashMap::new();
        for quad in store.quads() {
            if quad.predicate == sub_class_of {
                if let Term::Iri(sup) = &quad.object {
                    subclass_edges
                        .entry(quad.subject.clone())
                        .or_default()
                        .push((sup.clone(), quad.key()));
                }
            }
        }

        let mut conclusions: Vec<(RuleId, Quad, Vec<String>)> = Vec::new();
        let mut push = |rule: RuleId, s: &Iri, p: &Iri, o: Term, premises: Vec<String>| {
            conclusions.push((
                rule,
                Quad::new(s.clone(), p.clone(), o, inferred.clone()),
                premises,
            ));
        };

        for quad in store.quads() {
            // R1
            if let Some((inv, schema_key)) = tables.inverse.get(&quad.predicate) {
                if let Term::Iri(obj) = &quad.object {
                    push(
                        RuleId::Inverse,
                        obj,
                        inv,
                        quad.subject.clone().into(),
                        vec![quad.key(), schema_key.clone()],
                    );
                }
            }
            // R2 and R3
            if quad.predicate == sub_class_of {
                if let Term::Iri(mid) = &quad.object {
                    for (sup, edge_key) in subclass_edges.get(mid).map_or(&[][..], Vec::as_slice) {
                        push(
                            RuleId::SubclassTransitive,
                            &quad.subject,
                            &sub_class_of,
                            sup.clone().into(),
                            vec![quad.key(), edge_key.clone()],
                        );
                    }
                }
            } else if quad.predicate == rdf_type {
                if let Term::Iri(class) = &quad.object {
                    for (sup, edge_key) in subclass_edges.get(class).map_or(&[][..], Vec::as_slice)
                    {
                        push(
                            RuleId::TypeInheritance,
                            &quad.subject,
                            &rdf_type,
                            sup.clone().into(),
                            vec![quad.key(), edge_key.clone()],
                        );
                    }
                }
            }
            // R4
            if let Some((domain, schema_key)) = tables.single_domain.get(&quad.predicate) {
                push(
                    RuleId::DomainTyping,
                    &quad.subject,
                    &rdf_type,
                    domain.clone().into(),
                    vec![quad.key(), schema_key.clone()],
                );
            }
            // R5
            if let Some((range, schema_key)) = tables.object_range.get(&quad.predicate) {
                if let Term::Iri(obj) = &quad.object {
                    push(
                        RuleId::RangeTyping,
                        obj,
                        &rdf_type,
                        range.clone().into(),
                        vec![quad.key(), schema_key.clone()],
                    );
                }
            }
        }

        for (rule, quad, premises) in conclusions {
            if store.contains(&quad) {
                continue; // first derivation wins; re-derivations unrecorded
            }
            store
                .insert(quad, Provenance::inference(rule.as_str(), premises))
                .expect("inference provenance is well-formed");
            *report.per_rule.get_mut(&rule).expect("all rules present") += 1;
            added_this_pass += 1;
        }

        report.added_quads += added_this_pass;
        if added_this_pass == 0 {
            break;
        }
    }

    Ok(report)
}

/// Which constraint an instance quad violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolatedConstraint {
    Domain,
    Range,
}

impl fmt::Display for ViolatedConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolatedConstraint::Domain => "domain",
            ViolatedConstraint::Range => "range",
        })
    }
}

/// An instance quad whose subject or object fails the declared domain or
/// range of the property it uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConformanceViolation {
    pub quad: Quad,
    pub violated: ViolatedConstraint,
    pub expected: Vec<String>,
    pub actual: Vec<String>,
}

impl fmt::Display for ConformanceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} violation: {} . expected one of {{{}}}, actual {{{}}}",
            self.violated,
            self.quad,
            self.expected.join(", "),
            self.actual.join(", ")
        )
    }
}

/// Checks every instance quad that uses a declared property. Run
/// [`materialize`] first so inherited and inferred types are visible.
///
/// Object properties: the subject's type set must intersect the declared
/// domains, and the object must be typed with the range or any of its
/// subclasses. Datatype properties: the object literal must carry the
/// declared datatype with a well-formed lexical form.
pub fn validate_instances(store: &Store, ontology: &Ontology) -> Vec<ConformanceViolation> {
    let mut objprops: HashMap<Iri, &crate::ontology::ObjectPropertyDef> = HashMap::new();
    for p in &ontology.object_properties {
        objprops.insert(vocab::malont(&p.name), p);
    }
    let mut dataprops: HashMap<Iri, &crate::ontology::DatatypePropertyDef> = HashMap::new();
    for p in &ontology.datatype_properties {
        dataprops.insert(vocab::malont(&p.name), p);
    }

    let rdf_type = vocab::rdf_type();
    let types_of = |node: &Iri| -> HashSet<Iri> {
        store
            .triple_candidates(Some(node), Some(&rdf_type), None)
            .filter(|q| q.subject == *node && q.predicate == rdf_type)
            .filter_map(|q| q.object.as_iri().cloned())
            .collect()
    };
    let type_names = |types: &HashSet<Iri>| -> Vec<String> {
        let mut names: Vec<String> = types.iter().map(|t| t.local_name().to_owned()).collect();
        names.sort();
        names
    };

    let mut violations = Vec::new();
    for quad in store.quads() {
        if let Some(p) = objprops.get(&quad.predicate) {
            let subject_types = types_of(&quad.subject);
            let domain_ok = p
                .domains
                .iter()
                .any(|d| subject_types.contains(&vocab::malont(d)));
            if !domain_ok {
                violations.push(ConformanceViolation {
                    quad: quad.clone(),
                    violated: ViolatedConstraint::Domain,
                    expected: p.domains.clone(),
                    actual: type_names(&subject_types),
                });
            }
            match &quad.object {
                Term::Iri(obj) => {
                    let object_types = types_of(obj);
                    // membership in any subclass of the range conforms
                    let range_ok = object_types.contains(&vocab::malont(&p.range))
                        || ontology
                            .subclasses(&p.range)
                            .iter()
                            .any(|sub| object_types.contains(&vocab::malont(sub)));
                    if !range_ok {
                        violations.push(ConformanceViolation {
                            quad: quad.clone(),
                            violated: ViolatedConstraint::Range,
                            expected: vec![p.range.clone()],
                            actual: type_names(&object_types),
                        });
                    }
                }
                Term::Literal(lit) => violations.push(ConformanceViolation {
                    quad: quad.clone(),
                    violated: ViolatedConstraint::Range,
                    expected: vec![p.range.clone()],
                    actual: vec![format!("literal {}", lit.canonical())],
                }),
            }
        } else if let Some(p) = dataprops.get(&quad.predicate) {
            let problem = match &quad.object {
                Term::Iri(obj) => Some(format!("iri {obj}")),
                Term::Literal(lit) => match p.range {
                    DataRange::String if lit.is_string() => None,
                    DataRange::Integer if *lit.datatype() == vocab::xsd_integer() => {
                        if is_integer_lexical(lit.lexical()) {
                            None
                        } else {
                            Some(format!("invalid integer lexical {}", lit.canonical()))
                        }
                    }
                    _ => Some(format!("datatype {}", lit.datatype().local_name())),
                },
            };
            if let Some(actual) = problem {
                violations.push(ConformanceViolation {
                    quad: quad.clone(),
                    violated: ViolatedConstraint::Range,
                    expected: vec![p.range.name().to_owned()],
                    actual: vec![actual],
                });
            }
        }
    }

    violations.sort_by_cached_key(|v| v.quad.sort_key());
    violations
}

fn is_integer_lexical(lexical: &str) -> bool {
    let digits = lexical.strip_prefix(['+', '-']).unwrap_or(lexical);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}
