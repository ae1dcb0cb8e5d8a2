//! Seeded random generators for stores and queries.

use malkg_core::ontology::Ontology;
use malkg_core::query::{PatternNode, SelectQuery, TriplePattern};
use malkg_core::term::{Iri, Literal, Term};
use malkg_core::vocab;
use malkg_core::Quad;
use rand::prelude::*;

const VAR_POOL: [&str; 6] = ["v0", "v1", "v2", "v3", "v4", "v5"];

fn random_iri(rng: &mut impl Rng) -> Iri {
    const HEAD: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    const TAIL: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789:/#._%-";
    let len = rng.gen_range(0..16);
    let mut text = String::new();
    text.push(*HEAD.choose(rng).unwrap() as char);
    for _ in 0..len {
        text.push(*TAIL.choose(rng).unwrap() as char);
    }
    Iri::new(text).unwrap()
}

fn random_lexical(rng: &mut impl Rng) -> String {
    const AWKWARD: [char; 8] = ['\\', '"', '\n', '\r', '\t', 'Ж', '文', 'é'];
    (0..rng.gen_range(0..12))
        .map(|_| {
            if rng.gen_bool(0.15) {
                *AWKWARD.choose(rng).unwrap()
            } else {
                rng.gen_range(b' '..=b'~') as char
            }
        })
        .collect()
}

fn random_literal(rng: &mut impl Rng) -> Literal {
    match rng.gen_range(0..4) {
        0 => Literal::new(random_lexical(rng), vocab::xsd_integer()),
        1 => Literal::new(random_lexical(rng), random_iri(rng)),
        _ => Literal::string(random_lexical(rng)),
    }
}

fn random_graph(rng: &mut impl Rng) -> Iri {
    match rng.gen_range(0..6) {
        0 => vocab::schema_graph(),
        1 => vocab::inferred_graph(),
        2 => vocab::doc_graph("d2").unwrap(),
        3 => random_iri(rng),
        _ => vocab::doc_graph("d1").unwrap(),
    }
}

/// An arbitrary well-formed quad; exercises escaping and ordering edges.
pub fn random_quad(rng: &mut impl Rng) -> Quad {
    let object: Term = if rng.gen_bool(0.4) {
        random_literal(rng).into()
    } else {
        random_iri(rng).into()
    };
    Quad::new(random_iri(rng), random_iri(rng), object, random_graph(rng))
}

/// Quads over a small shared vocabulary, dense enough that patterns join.
pub fn random_store_quads(rng: &mut impl Rng, n: usize) -> Vec<Quad> {
    let subjects: Vec<Iri> = (0..6).map(|i| vocab::kg(&format!("e{i}"))).collect();
    let predicates: Vec<Iri> = (0..4).map(|i| vocab::malont(&format!("p{i}"))).collect();
    let objects: Vec<Term> = subjects
        .iter()
        .map(|s| Term::Iri(s.clone()))
        .chain((0..3).map(|i| Term::Literal(Literal::string(format!("L{i}")))))
        .collect();
    (0..n)
        .map(|_| {
            Quad::new(
                subjects.choose(rng).unwrap().clone(),
                predicates.choose(rng).unwrap().clone(),
                objects.choose(rng).unwrap().clone(),
                random_graph(rng),
            )
        })
        .collect()
}

/// Instance quads over an ontology's vocabulary: typings, object-property
/// edges, datatype values (valid and broken), labels.
pub fn random_instance_quads(rng: &mut impl Rng, ontology: &Ontology, n: usize) -> Vec<Quad> {
    let nodes: Vec<Iri> = (0..10).map(|i| vocab::kg(&format!("e{i}"))).collect();
    let graphs = [
        vocab::doc_graph("d1").unwrap(),
        vocab::doc_graph("d2").unwrap(),
    ];
    let node = |rng: &mut dyn RngCore| nodes.choose(rng).unwrap().clone();

    (0..n)
        .map(|_| {
            let graph = graphs.choose(rng).unwrap().clone();
            match rng.gen_range(0..10) {
                0..=2 => {
                    let class = ontology.classes.choose(rng).unwrap();
                    Quad::new(
                        node(rng),
                        vocab::rdf_type(),
                        vocab::malont(&class.name),
                        graph,
                    )
                }
                3..=7 => {
                    let p = ontology.object_properties.choose(rng).unwrap();
                    Quad::new(node(rng), vocab::malont(&p.name), node(rng), graph)
                }
                8 => {
                    let p = ontology.datatype_properties.choose(rng).unwrap();
                    let value: Term = match rng.gen_range(0..3) {
                        0 => Literal::new(
                            rng.gen_range(1990..2030).to_string(),
                            vocab::xsd_integer(),
                        )
                        .into(),
                        1 => Literal::new(random_lexical(rng), vocab::xsd_integer()).into(),
                        _ => Literal::string(random_lexical(rng)).into(),
                    };
                    Quad::new(node(rng), vocab::malont(&p.name), value, graph)
                }
                _ => Quad::new(
                    node(rng),
                    vocab::rdfs_label(),
                    Literal::string(random_lexical(rng)),
                    graph,
                ),
            }
        })
        .collect()
}

/// Term pools drawn from actual store content, so random queries hit.
pub struct QueryVocab {
    subjects: Vec<Term>,
    predicates: Vec<Term>,
    objects: Vec<Term>,
}

impl QueryVocab {
    pub fn from_quads(quads: &[Quad]) -> Self {
        let mut subjects: Vec<Term> = quads.iter().map(|q| Term::Iri(q.subject.clone())).collect();
        let mut predicates: Vec<Term> = quads
            .iter()
            .map(|q| Term::Iri(q.predicate.clone()))
            .collect();
        let mut objects: Vec<Term> = quads.iter().map(|q| q.object.clone()).collect();
        for pool in [&mut subjects, &mut predicates, &mut objects] {
            pool.sort();
            pool.dedup();
        }
        Self {
            subjects,
            predicates,
            objects,
        }
    }

    fn pick(&self, rng: &mut impl Rng, which: usize) -> Term {
        let pool = match which {
            0 => &self.subjects,
            1 => &self.predicates,
            _ => &self.objects,
        };
        match pool.choose(rng) {
            Some(term) if rng.gen_bool(0.95) => term.clone(),
            // occasional miss term so empty joins get exercised
            _ => Term::Iri(vocab::kg("no-such-node")),
        }
    }
}

/// A random basic graph pattern query: shared variable pool (so patterns
/// join), mostly-hitting concrete terms, random DISTINCT, and occasionally
/// a projected variable that no pattern binds.
pub fn random_query(rng: &mut impl Rng, vocab: &QueryVocab, max_patterns: usize) -> SelectQuery {
    let n_patterns = rng.gen_range(1..=max_patterns);
    let mut patterns = Vec::new();
    for _ in 0..n_patterns {
        let mut position = |which: usize| {
            if rng.gen_bool(0.4) {
                PatternNode::var(VAR_POOL.choose(rng).unwrap())
            } else {
                PatternNode::Term(vocab.pick(rng, which))
            }
        };
        patterns.push(TriplePattern {
            subject: position(0),
            predicate: position(1),
            object: position(2),
        });
    }

    let mut pool = VAR_POOL.to_vec();
    pool.shuffle(rng);
    let projected: Vec<String> = pool[..rng.gen_range(1..=3)]
        .iter()
        .map(|v| (*v).to_owned())
        .collect();

    SelectQuery {
        projected,
        distinct: rng.gen_bool(0.5),
        patterns,
    }
}
