//! Test support for the malkg workspace: independent oracles (a naive
//! rule-closure reasoner and a brute-force join evaluator), seeded random
//! generators, and a synthetic corpus writer.
//!
//! The oracles deliberately share no code with the engine's reasoner and
//! query evaluator; equality between the two paths is what the property
//! and acceptance tests assert.

mod gen;
mod oracle;
mod synth;

pub use gen::{random_instance_quads, random_quad, random_query, random_store_quads, QueryVocab};
pub use oracle::{brute_force_eval, naive_closure};
pub use synth::write_synth_corpus;

use std::path::PathBuf;

/// The bundled sample corpus (two annotated threat reports) and queries.
pub fn sample_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../sample")
        .canonicalize()
        .expect("sample directory exists")
}

pub fn sample_corpus_dir() -> PathBuf {
    sample_dir().join("corpus")
}

pub fn sample_query_path(name: &str) -> PathBuf {
    sample_dir().join("queries").join(name)
}

/// The indicator label substituted for CQ2's `indicator_value` placeholder
/// when running against the sample corpus.
pub const SAMPLE_INDICATOR_LABEL: &str = "5.61.38.52";

/// CQ2 text with the placeholder bound to the sample corpus.
pub fn bind_indicator_placeholder(query_text: &str) -> String {
    query_text.replace("indicator_value", SAMPLE_INDICATOR_LABEL)
}

/// In-process pipeline: reify the ontology, ingest every `.ann` in the
/// corpus directory (pairing `.txt` files when present), and optionally
/// materialize. Panics on any error; this is test scaffolding.
pub fn build_store_from_corpus(
    corpus: &std::path::Path,
    ontology: &malkg_core::ontology::Ontology,
    materialize: bool,
) -> malkg_core::Store {
    use malkg_core::ingest::{emit_triples, parse_ann, MappingConfig};

    let mut store = malkg_core::Store::new();
    for quad in ontology.reify().expect("valid ontology") {
        store
            .insert(quad, malkg_core::Provenance::Schema)
            .expect("schema provenance");
    }

    let mut ann_paths: Vec<std::path::PathBuf> = std::fs::read_dir(corpus)
        .expect("corpus dir")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|ext| ext == "ann"))
        .collect();
    ann_paths.sort();

    let mapping = MappingConfig::default();
    for ann_path in ann_paths {
        let doc_id = ann_path.file_stem().unwrap().to_str().unwrap().to_owned();
        let ann_text = std::fs::read_to_string(&ann_path).expect("ann file");
        let doc_text = std::fs::read_to_string(ann_path.with_extension("txt")).ok();
        let doc = parse_ann(&ann_text, doc_text.as_deref(), &doc_id).expect("well-formed fixture");
        let outcome = emit_triples(&doc, &mapping, ontology);
        assert_eq!(outcome.skipped_entities, 0, "fixture should emit cleanly");
        store.insert_all(outcome.pairs).expect("insertable quads");
    }

    if materialize {
        malkg_core::reasoner::materialize(&mut store, ontology).expect("materialize");
    }
    store
}
