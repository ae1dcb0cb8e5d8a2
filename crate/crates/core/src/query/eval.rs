//! Basic graph pattern evaluation over a store.
//!
//! Matching ignores the graph dimension: a quad in any graph satisfies a
//! pattern, and a triple present in two graphs contributes two solutions.
//! Patterns join left-to-right as written, each filtered by the bindings
//! accumulated so far; groups of patterns that share no variables join as a
//! cross product, evaluated once per group rather than once per row.

use std::collections::HashMap;

use rustc_hash::FxHashSet;

use super::{cell_text, PatternNode, ResultTable, SelectQuery, TriplePattern};
use crate::store::Store;
use crate::term::{Iri, Term};

/// Evaluates a query: natural join of the patterns, projection, duplicate
/// elimination iff DISTINCT, rows in canonical order.
pub fn evaluate(store: &Store, query: &SelectQuery) -> ResultTable {
    let components = connected_components(&query.patterns);

    // Evaluate each variable-connected component once, keeping only its
    // projected variables (solution multiplicity preserved unless DISTINCT).
    let mut parts: Vec<(Vec<String>, Vec<Vec<Term>>)> = Vec::new();
    for component in &components {
        let patterns: Vec<&TriplePattern> = component.iter().map(|&i| &query.patterns[i]).collect();
        let mut keep: Vec<String> = Vec::new();
        for var in &query.projected {
            if !keep.contains(var) && patterns.iter().any(|p| p.variables().any(|v| v == var)) {
                keep.push(var.clone());
            }
        }
        let rows = eval_component(store, &patterns, &keep, query.distinct);
        parts.push((keep, rows));
    }

    // location of each projected variable: (component, column)
    let mut location: HashMap<&str, (usize, usize)> = HashMap::new();
    for (pi, (vars, _)) in parts.iter().enumerate() {
        for (ci, var) in vars.iter().enumerate() {
            location.insert(var, (pi, ci));
        }
    }

    // cross product of the component solutions, in component order
    let mut rows: Vec<Vec<Option<Term>>> = Vec::new();
    if parts.iter().all(|(_, rows)| !rows.is_empty()) {
        let mut odometer = vec![0usize; parts.len()];
        'product: loop {
            let row = query
                .projected
                .iter()
                .map(|var| {
                    location
                        .get(var.as_str())
                        .map(|&(pi, ci)| parts[pi].1[odometer[pi]][ci].clone())
                })
                .collect();
            rows.push(row);
            let mut k = parts.len();
            loop {
                if k == 0 {
                    break 'product;
                }
                k -= 1;
                odometer[k] += 1;
                if odometer[k] < parts[k].1.len() {
                    continue 'product;
                }
                odometer[k] = 0;
            }
        }
    }

    let mut keyed: Vec<(Vec<String>, Vec<Option<Term>>)> = rows
        .into_iter()
        .map(|row| (row.iter().map(cell_text).collect(), row))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    if query.distinct {
        keyed.dedup_by(|a, b| a.0 == b.0);
    }

    ResultTable {
        header: query.projected.clone(),
        rows: keyed.into_iter().map(|(_, row)| row).collect(),
    }
}

/// Pattern indices grouped by shared variables, each group ordered as
/// written; groups ordered by their first pattern.
fn connected_components(patterns: &[TriplePattern]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..patterns.len()).collect();

    fn find(parent: &mut [usize], i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }

    let mut var_home: HashMap<&str, usize> = HashMap::new();
    for (i, pattern) in patterns.iter().enumerate() {
        for var in pattern.variables() {
            match var_home.get(var) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
                None => {
                    var_home.insert(var, i);
                }
            }
        }
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of_root: HashMap<usize, usize> = HashMap::new();
    for i in 0..patterns.len() {
        let root = find(&mut parent, i);
        match group_of_root.get(&root) {
            Some(&g) => groups[g].push(i),
            None => {
                group_of_root.insert(root, groups.len());
                groups.push(vec![i]);
            }
        }
    }
    groups
}

/// Variable bindings as a stack: variables are pushed as patterns bind
/// them and popped by truncation on backtrack. Pattern variable counts are
/// small, so linear lookup beats hashing.
type Binding<'p> = Vec<(&'p str, Term)>;

fn lookup<'b>(binding: &'b Binding<'_>, var: &str) -> Option<&'b Term> {
    binding
        .iter()
        .find(|(name, _)| *name == var)
        .map(|(_, t)| t)
}

fn eval_component(
    store: &Store,
    patterns: &[&TriplePattern],
    keep: &[String],
    distinct: bool,
) -> Vec<Vec<Term>> {
    let mut binding: Binding<'_> = Vec::new();
    let mut rows: Vec<Vec<Term>> = Vec::new();
    dfs(store, patterns, 0, &mut binding, keep, distinct, &mut rows);
    if distinct {
        rows.sort_by_cached_key(|row| row.iter().map(Term::canonical).collect::<Vec<String>>());
        rows.dedup();
    }
    rows
}

fn dfs<'p>(
    store: &Store,
    patterns: &[&'p TriplePattern],
    depth: usize,
    binding: &mut Binding<'p>,
    keep: &[String],
    distinct: bool,
    rows: &mut Vec<Vec<Term>>,
) {
    if depth == patterns.len() {
        rows.push(
            keep.iter()
                .map(|v| {
                    lookup(binding, v)
                        .expect("projected component var is bound")
                        .clone()
                })
                .collect(),
        );
        return;
    }
    let pattern = patterns[depth];

    // Lookup keys from concrete nodes and bindings so far. A subject or
    // predicate resolved to a literal can never match a quad.
    let subject = match resolved(&pattern.subject, binding) {
        Resolved::Iri(iri) => Some(iri),
        Resolved::Literal => return,
        Resolved::Free => None,
    };
    let predicate = match resolved(&pattern.predicate, binding) {
        Resolved::Iri(iri) => Some(iri),
        Resolved::Literal => return,
        Resolved::Free => None,
    };
    let object = match &pattern.object {
        PatternNode::Term(t) => Some(t.clone()),
        PatternNode::Var(v) => lookup(binding, v).cloned(),
    };

    // Under DISTINCT, two quads carrying the same triple in different
    // graphs extend the binding identically and their subtrees produce the
    // same row set, so only the first needs exploring. Entities shared by
    // many reports repeat their triples once per document graph; without
    // this the join multiplies across those copies. Bag semantics (no
    // DISTINCT) keeps every copy.
    let mut seen_triples: FxHashSet<(&Iri, &Iri, &Term)> = FxHashSet::default();

    let candidates = store.triple_candidates(subject.as_ref(), predicate.as_ref(), object.as_ref());
    // Candidate sets are supersets of the matches, so every position is
    // re-unified; unification also handles repeated variables in one
    // pattern, e.g. (?x, ?p, ?x).
    for quad in candidates {
        let mark = binding.len();
        let ok = unify_iri(&pattern.subject, &quad.subject, binding)
            && unify_iri(&pattern.predicate, &quad.predicate, binding)
            && unify(&pattern.object, &quad.object, binding);
        if ok {
            if distinct && !seen_triples.insert((&quad.subject, &quad.predicate, &quad.object)) {
                binding.truncate(mark);
                continue;
            }
            let bound_nothing = binding.len() == mark;
            dfs(store, patterns, depth + 1, binding, keep, distinct, rows);
            if distinct && bound_nothing {
                // a fully-bound pattern extends the binding identically for
                // every match; under DISTINCT one match decides the subtree
                binding.truncate(mark);
                break;
            }
        }
        binding.truncate(mark);
    }
}

enum Resolved {
    Iri(crate::term::Iri),
    Literal,
    Free,
}

fn resolved(node: &PatternNode, binding: &Binding<'_>) -> Resolved {
    let term = match node {
        PatternNode::Term(t) => Some(t),
        PatternNode::Var(v) => lookup(binding, v),
    };
    match term {
        Some(Term::Iri(iri)) => Resolved::Iri(iri.clone()),
        Some(Term::Literal(_)) => Resolved::Literal,
        None => Resolved::Free,
    }
}

fn unify_iri<'p>(node: &'p PatternNode, actual: &Iri, binding: &mut Binding<'p>) -> bool {
    match node {
        PatternNode::Term(Term::Iri(t)) => t == actual,
        PatternNode::Term(Term::Literal(_)) => false,
        PatternNode::Var(v) => match lookup(binding, v) {
            Some(Term::Iri(t)) => t == actual,
            Some(Term::Literal(_)) => false,
            None => {
                binding.push((v, Term::Iri(actual.clone())));
                true
            }
        },
    }
}

fn unify<'p>(node: &'p PatternNode, actual: &Term, binding: &mut Binding<'p>) -> bool {
    match node {
        PatternNode::Term(t) => t == actual,
        PatternNode::Var(v) => match lookup(binding, v) {
            Some(t) => t == actual,
            None => {
                binding.push((v, actual.clone()));
                true
            }
        },
    }
}
