//! Naive reference implementations: full-scan rule closure and exhaustive
//! tuple-enumeration join. Slow on purpose, simple on purpose.

use std::collections::{HashMap, HashSet};

use malkg_core::ontology::Ontology;
use malkg_core::query::{PatternNode, SelectQuery, TriplePattern};
use malkg_core::term::Term;
use malkg_core::vocab;
use malkg_core::Quad;

/// Re-applies all five inference rules over the full quad set until nothing
/// changes; returns the closed set (input plus conclusions in the inferred
/// graph).
pub fn naive_closure(
    initial: impl IntoIterator<Item = Quad>,
    ontology: &Ontology,
) -> HashSet<Quad> {
    let mut set: HashSet<Quad> = initial.into_iter().collect();
    let inferred = vocab::inferred_graph();
    let rdf_type = vocab::rdf_type();
    let sub_class_of = vocab::rdfs_sub_class_of();

    loop {
        let mut fresh: Vec<Quad> = Vec::new();
        let quads: Vec<Quad> = set.iter().cloned().collect();

        for q in &quads {
            // R1: declared inverse
            for p in &ontology.object_properties {
                if q.predicate != vocab::malont(&p.name) {
                    continue;
                }
                if let (Some(inv), Term::Iri(obj)) = (&p.inverse, &q.object) {
                    fresh.push(Quad::new(
                        obj.clone(),
                        vocab::malont(inv),
                        q.subject.clone(),
                        inferred.clone(),
                    ));
                }
                // R5: range typing for object properties
                if let Term::Iri(obj) = &q.object {
                    fresh.push(Quad::new(
                        obj.clone(),
                        rdf_type.clone(),
                        vocab::malont(&p.range),
                        inferred.clone(),
                    ));
                }
                // R4: single-domain typing
                if let [domain] = p.domains.as_slice() {
                    fresh.push(Quad::new(
                        q.subject.clone(),
                        rdf_type.clone(),
                        vocab::malont(domain),
                        inferred.clone(),
                    ));
                }
            }
            for p in &ontology.datatype_properties {
                if q.predicate != vocab::malont(&p.name) {
                    continue;
                }
                if let [domain] = p.domains.as_slice() {
                    fresh.push(Quad::new(
                        q.subject.clone(),
                        rdf_type.clone(),
                        vocab::malont(domain),
                        inferred.clone(),
                    ));
                }
            }

            // R2 and R3: join against every subClassOf quad
            let upper = match (&q.predicate, &q.object) {
                (p, Term::Iri(mid)) if *p == sub_class_of || *p == rdf_type => Some(mid),
                _ => None,
            };
            if let Some(mid) = upper {
                for other in &quads {
                    if other.predicate == sub_class_of && other.subject == *mid {
                        if let Term::Iri(sup) = &other.object {
                            fresh.push(Quad::new(
                                q.subject.clone(),
                                q.predicate.clone(),
                                sup.clone(),
                                inferred.clone(),
                            ));
                        }
                    }
                }
            }
        }

        let before = set.len();
        set.extend(fresh);
        if set.len() == before {
            return set;
        }
    }
}

/// Enumerates every |patterns|-tuple of quads, keeping the binding-
/// consistent ones; projects, deduplicates iff DISTINCT, and sorts rows the
/// way the engine does. Exponential — keep inputs small.
pub fn brute_force_eval(quads: &[Quad], query: &SelectQuery) -> Vec<Vec<Option<Term>>> {
    let mut solutions: Vec<HashMap<String, Term>> = Vec::new();
    enumerate(quads, &query.patterns, &HashMap::new(), &mut solutions);

    let mut rows: Vec<(Vec<String>, Vec<Option<Term>>)> = solutions
        .iter()
        .map(|binding| {
            let row: Vec<Option<Term>> = query
                .projected
                .iter()
                .map(|v| binding.get(v).cloned())
                .collect();
            let key = row
                .iter()
                .map(|c| c.as_ref().map(Term::canonical).unwrap_or_default())
                .collect();
            (key, row)
        })
        .collect();
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    if query.distinct {
        rows.dedup_by(|a, b| a.0 == b.0);
    }
    rows.into_iter().map(|(_, row)| row).collect()
}

fn enumerate(
    quads: &[Quad],
    patterns: &[TriplePattern],
    binding: &HashMap<String, Term>,
    out: &mut Vec<HashMap<String, Term>>,
) {
    let Some(pattern) = patterns.first() else {
        out.push(binding.clone());
        return;
    };
    for quad in quads {
        let mut candidate = binding.clone();
        let positions = [
            (&pattern.subject, Term::Iri(quad.subject.clone())),
            (&pattern.predicate, Term::Iri(quad.predicate.clone())),
            (&pattern.object, quad.object.clone()),
        ];
        let mut ok = true;
        for (node, actual) in positions {
            match node {
                PatternNode::Term(t) => {
                    if *t != actual {
                        ok = false;
                        break;
                    }
                }
                PatternNode::Var(v) => match candidate.get(v) {
                    Some(bound) if *bound != actual => {
                        ok = false;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        candidate.insert(v.clone(), actual);
                    }
                },
            }
        }
        if ok {
            enumerate(quads, &patterns[1..], &candidate, out);
        }
    }
}
