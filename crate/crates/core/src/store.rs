//! In-memory indexed quad store with provenance tracking.
//!
//! Append-only set semantics: inserting a quad twice leaves one copy but
//! accumulates both provenance records, so a fact asserted by two reports
//! keeps both sources. Mutation takes `&mut self` and reads take `&self`;
//! the borrow checker enforces the single-writer/multi-reader contract.

use rustc_hash::FxHashMap;

use thiserror::Error;

use crate::quad::{Provenance, ProvenanceError, Quad};
use crate::term::{Iri, Term};
use crate::vocab;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StoreError {
    #[error("invalid provenance: {0}")]
    InvalidProvenance(#[from] ProvenanceError),
}

/// A quad template: `None` positions are wildcards. Concrete positions
/// carry the same typing rules as quads (only the object may be a literal).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuadPattern {
    pub subject: Option<Iri>,
    pub predicate: Option<Iri>,
    pub object: Option<Term>,
    pub graph: Option<Iri>,
}

impl QuadPattern {
    pub fn any() -> Self {
        Self::default()
    }

    pub fn matches(&self, quad: &Quad) -> bool {
        self.subject.as_ref().is_none_or(|s| *s == quad.subject)
            && self.predicate.as_ref().is_none_or(|p| *p == quad.predicate)
            && self.object.as_ref().is_none_or(|o| *o == quad.object)
            && self.graph.as_ref().is_none_or(|g| *g == quad.graph)
    }
}

/// The knowledge-graph substrate: a quad set with access paths by subject,
/// by (predicate, object), by object, and by graph, plus per-quad
/// provenance.
#[derive(Debug, Default, Clone)]
pub struct Store {
    quads: Vec<Quad>,
    provenance: Vec<Vec<Provenance>>,
    seen: FxHashMap<Quad, usize>,
    by_subject: FxHashMap<Iri, Vec<usize>>,
    by_pred_obj: FxHashMap<Iri, FxHashMap<Term, Vec<usize>>>,
    by_object: FxHashMap<Term, Vec<usize>>,
    by_graph: FxHashMap<Iri, Vec<usize>>,
}

impl Store {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.quads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quads.is_empty()
    }

    pub fn contains(&self, quad: &Quad) -> bool {
        self.seen.contains_key(quad)
    }

    pub fn has_graph(&self, graph: &Iri) -> bool {
        self.by_graph.contains_key(graph)
    }

    pub fn quads(&self) -> impl Iterator<Item = &Quad> {
        self.quads.iter()
    }

    /// Provenance records for a stored quad; every stored quad has at least
    /// one.
    pub fn provenance(&self, quad: &Quad) -> Option<&[Provenance]> {
        self.seen.get(quad).map(|&i| self.provenance[i].as_slice())
    }

    /// Inserts a quad. Returns true iff the quad was absent; the provenance
    /// record is appended either way.
    pub fn insert(&mut self, quad: Quad, prov: Provenance) -> Result<bool, StoreError> {
        prov.validate()?;
        if let Some(&i) = self.seen.get(&quad) {
            self.provenance[i].push(prov);
            return Ok(false);
        }
        let i = self.quads.len();
        self.by_subject
            .entry(quad.subject.clone())
            .or_default()
            .push(i);
        self.by_pred_obj
            .entry(quad.predicate.clone())
            .or_default()
            .entry(quad.object.clone())
            .or_default()
            .push(i);
        self.by_object
            .entry(quad.object.clone())
            .or_default()
            .push(i);
        self.by_graph.entry(quad.graph.clone()).or_default().push(i);
        self.seen.insert(quad.clone(), i);
        self.quads.push(quad);
        self.provenance.push(vec![prov]);
        Ok(true)
    }

    pub fn insert_all(
        &mut self,
        pairs: impl IntoIterator<Item = (Quad, Provenance)>,
    ) -> Result<usize, StoreError> {
        let mut added = 0;
        for (quad, prov) in pairs {
            if self.insert(quad, prov)? {
                added += 1;
            }
        }
        Ok(added)
    }

    /// Every stored quad agreeing with the pattern's concrete positions,
    /// sorted by (graph, subject, predicate, object) canonical order.
    pub fn match_pattern(&self, pattern: &QuadPattern) -> Vec<Quad> {
        let mut out: Vec<Quad> = self
            .candidate_indices(pattern)
            .map(|i| &self.quads[i])
            .filter(|q| pattern.matches(q))
            .cloned()
            .collect();
        out.sort_by_cached_key(Quad::sort_key);
        out
    }

    /// The most selective access path for a pattern: of the index lists the
    /// concrete positions admit, the shortest. A concrete position with no
    /// index entry means no matches at all. Candidates are a superset of
    /// the matches; callers re-check all positions.
    fn candidate_indices(&self, pattern: &QuadPattern) -> Candidates<'_> {
        fn shorter<'a>(best: Option<&'a Vec<usize>>, v: &'a Vec<usize>) -> Option<&'a Vec<usize>> {
            match best {
                Some(b) if b.len() <= v.len() => Some(b),
                _ => Some(v),
            }
        }

        let mut best: Option<&Vec<usize>> = None;
        if let Some(s) = &pattern.subject {
            match self.by_subject.get(s) {
                None => return Candidates::None,
                Some(v) => best = shorter(best, v),
            }
        }
        if let (Some(p), Some(o)) = (&pattern.predicate, &pattern.object) {
            match self.by_pred_obj.get(p).and_then(|m| m.get(o)) {
                None => return Candidates::None,
                Some(v) => best = shorter(best, v),
            }
        } else if let Some(o) = &pattern.object {
            match self.by_object.get(o) {
                None => return Candidates::None,
                Some(v) => best = shorter(best, v),
            }
        }
        if let Some(g) = &pattern.graph {
            match self.by_graph.get(g) {
                None => return Candidates::None,
                Some(v) => best = shorter(best, v),
            }
        }
        match best {
            Some(v) => Candidates::Hits(v.iter()),
            None => Candidates::All(0..self.quads.len()),
        }
    }

    /// Graph-agnostic triple lookup used by pattern joins: candidates for
    /// (subject, predicate, object) with any graph.
    pub(crate) fn triple_candidates(
        &self,
        subject: Option<&Iri>,
        predicate: Option<&Iri>,
        object: Option<&Term>,
    ) -> impl Iterator<Item = &Quad> {
        let pattern = QuadPattern {
            subject: subject.cloned(),
            predicate: predicate.cloned(),
            object: object.cloned(),
            graph: None,
        };
        self.candidate_indices(&pattern).map(|i| &self.quads[i])
    }

    pub fn stats(&self) -> StatsReport {
        let type_index = self.by_pred_obj.get(&vocab::rdf_type());
        let distinct_typed = |object: Term, graph: Option<&Iri>| -> usize {
            let mut subjects: Vec<&Iri> = type_index
                .and_then(|m| m.get(&object))
                .map(|idxs| {
                    idxs.iter()
                        .map(|&i| &self.quads[i])
                        .filter(|q| graph.is_none_or(|g| *g == q.graph))
                        .map(|q| &q.subject)
                        .collect()
                })
                .unwrap_or_default();
            subjects.sort();
            subjects.dedup();
            subjects.len()
        };

        let schema_graph = vocab::schema_graph();
        let has_schema = self.by_graph.contains_key(&schema_graph);
        let schema_count = |class: Iri| {
            if has_schema {
                distinct_typed(class.into(), Some(&schema_graph))
            } else {
                0
            }
        };

        let mut graphs: Vec<(Iri, usize)> = self
            .by_graph
            .iter()
            .map(|(g, idxs)| (g.clone(), idxs.len()))
            .collect();
        graphs.sort_by(|a, b| a.0.cmp(&b.0));

        StatsReport {
            quads: self.quads.len(),
            subjects: self.by_subject.len(),
            instances: distinct_typed(vocab::owl_named_individual().into(), None),
            classes: schema_count(vocab::owl_class()),
            object_properties: schema_count(vocab::owl_object_property()),
            datatype_properties: schema_count(vocab::owl_datatype_property()),
            graphs,
        }
    }
}

enum Candidates<'a> {
    All(std::ops::Range<usize>),
    Hits(std::slice::Iter<'a, usize>),
    None,
}

impl Iterator for Candidates<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        match self {
            Candidates::All(range) => range.next(),
            Candidates::Hits(iter) => iter.next().copied(),
            Candidates::None => None,
        }
    }
}

/// Store summary: sizes, instance count, per-graph counts, and schema
/// definition counts (zero when no schema graph is loaded).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatsReport {
    pub quads: usize,
    pub subjects: usize,
    pub instances: usize,
    pub classes: usize,
    pub object_properties: usize,
    pub datatype_properties: usize,
    pub graphs: Vec<(Iri, usize)>,
}
