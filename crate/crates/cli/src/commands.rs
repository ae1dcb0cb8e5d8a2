//! Command implementations. Each returns the process exit code on the
//! normal path; [`Failure`] carries abnormal terminations with their code.

use std::path::Path;
use std::process::ExitCode;

use malkg_core::ingest::{emit_triples, parse_ann, MappingConfig};
use malkg_core::ontology::{Ontology, SchemaError};
use malkg_core::query::{evaluate, parse_query};
use malkg_core::reasoner::{materialize, validate_instances};
use malkg_core::{nquads, Provenance, Store};

pub struct Failure {
    pub message: String,
    pub exit: ExitCode,
}

type Outcome = Result<ExitCode, Failure>;

fn environment(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        exit: ExitCode::from(2),
    }
}

fn content(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        exit: ExitCode::from(1),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| environment(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| environment(format!("cannot write {}: {e}", path.display())))
}

fn load_ontology(spec: &str) -> Result<Ontology, Failure> {
    if spec == "builtin" {
        return Ok(Ontology::builtin());
    }
    let text = read_file(Path::new(spec))?;
    Ontology::parse_dsl(&text).map_err(|e| content(format!("{spec}: {e}")))
}

fn load_store(kg: &Path) -> Result<Store, Failure> {
    let text = read_file(kg)?;
    nquads::import_into_store(&text).map_err(|e| content(format!("{}: {e}", kg.display())))
}

pub fn ontology_check(builtin: bool, schema: Option<&Path>) -> Outcome {
    let ontology = if builtin {
        Ontology::builtin()
    } else {
        let path = schema.expect("clap requires a schema unless --builtin");
        let text = read_file(path)?;
        match Ontology::parse_dsl(&text) {
            Ok(o) => o,
            Err(SchemaError::Invalid { violations }) => {
                for v in violations {
                    println!("{v}");
                }
                return Ok(ExitCode::from(1));
            }
            Err(e) => return Err(content(format!("{}: {e}", path.display()))),
        }
    };

    let violations = ontology.validate();
    if violations.is_empty() {
        println!(
            "ok: {} classes, {} object properties, {} datatype properties",
            ontology.classes.len(),
            ontology.object_properties.len(),
            ontology.datatype_properties.len()
        );
        Ok(ExitCode::SUCCESS)
    } else {
        for v in violations {
            println!("{v}");
        }
        Ok(ExitCode::from(1))
    }
}

pub fn build(
    ontology_spec: &str,
    corpus: &Path,
    mapping: Option<&Path>,
    run_materialize: bool,
    output: &Path,
) -> Outcome {
    let ontology = load_ontology(ontology_spec)?;
    let mapping = match mapping {
        Some(path) => {
            let text = read_file(path)?;
            MappingConfig::parse(&text, &ontology)
                .map_err(|e| content(format!("{}: {e}", path.display())))?
        }
        None => MappingConfig::default(),
    };

    let mut ann_paths: Vec<_> = std::fs::read_dir(corpus)
        .map_err(|e| environment(format!("cannot read corpus {}: {e}", corpus.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "ann"))
        .collect();
    ann_paths.sort();

    let mut store = Store::new();
    for quad in ontology
        .reify()
        .map_err(|e| content(format!("ontology does not reify: {e}")))?
    {
        store
            .insert(quad, Provenance::Schema)
            .expect("schema provenance is well-formed");
    }

    let mut docs = 0usize;
    let mut failed = 0usize;
    let mut entities = 0usize;
    let mut relations = 0usize;
    let mut asserted = 0usize;
    let mut warnings = 0usize;
    for ann_path in &ann_paths {
        let doc_id = ann_path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or_default()
            .to_owned();
        let parsed = read_file(ann_path).and_then(|ann_text| {
            let doc_text = std::fs::read_to_string(ann_path.with_extension("txt")).ok();
            parse_ann(&ann_text, doc_text.as_deref(), &doc_id)
                .map_err(|e| content(format!("{}: {e}", ann_path.display())))
        });
        let doc = match parsed {
            Ok(doc) => doc,
            Err(failure) => {
                eprintln!("malkg: {}", failure.message);
                failed += 1;
                continue;
            }
        };
        docs += 1;
        entities += doc.entities.len();
        relations += doc.relations.len();
        warnings += doc.warnings.len();
        for w in &doc.warnings {
            eprintln!("malkg: {doc_id}: {w}");
        }

        let outcome = emit_triples(&doc, &mapping, &ontology);
        warnings += outcome.warnings.len();
        for w in &outcome.warnings {
            eprintln!("malkg: {doc_id}: {w}");
        }
        asserted += store
            .insert_all(outcome.pairs)
            .expect("emitted provenance is well-formed");
    }

    let inferred = if run_materialize {
        let report = materialize(&mut store, &ontology).map_err(|e| content(e.to_string()))?;
        report.added_quads
    } else {
        0
    };

    write_file(output, &nquads::export(&store))?;
    write_file(
        &output.with_extension("prov.tsv"),
        &nquads::export_provenance(&store),
    )?;

    eprintln!("docs: {docs}");
    eprintln!("entities: {entities}");
    eprintln!("relations: {relations}");
    eprintln!("asserted quads: {asserted}");
    eprintln!("inferred quads: {inferred}");
    eprintln!("warnings: {warnings}");
    if failed > 0 {
        eprintln!("failed docs: {failed}");
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

pub fn query(kg: &Path, query_path: &Path) -> Outcome {
    let store = load_store(kg)?;
    let text = read_file(query_path)?;
    let parsed =
        parse_query(&text).map_err(|e| content(format!("{}: {e}", query_path.display())))?;
    print!("{}", evaluate(&store, &parsed).to_tsv());
    Ok(ExitCode::SUCCESS)
}

pub fn validate(kg: &Path) -> Outcome {
    let store = load_store(kg)?;
    let ontology = Ontology::from_schema_quads(store.quads())
        .map_err(|e| content(format!("{}: {e}", kg.display())))?;
    let violations = validate_instances(&store, &ontology);
    if violations.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for v in violations {
            println!("{v}");
        }
        Ok(ExitCode::from(1))
    }
}

pub fn export(kg: &Path, output: Option<&Path>, prov: bool) -> Outcome {
    let store = load_store(kg)?;
    let text = nquads::export(&store);
    match output {
        Some(path) => {
            write_file(path, &text)?;
            if prov {
                write_file(
                    &path.with_extension("prov.tsv"),
                    &nquads::export_provenance(&store),
                )?;
            }
        }
        None => {
            if prov {
                return Err(environment(
                    "--prov needs -o so the sidecar has somewhere to go",
                ));
            }
            print!("{text}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn stats(kg: &Path) -> Outcome {
    let store = load_store(kg)?;
    let report = store.stats();
    println!("quads\t{}", report.quads);
    println!("subjects\t{}", report.subjects);
    println!("instances\t{}", report.instances);
    println!("classes\t{}", report.classes);
    println!("object-properties\t{}", report.object_properties);
    println!("datatype-properties\t{}", report.datatype_properties);
    for (graph, count) in &report.graphs {
        println!("graph:{}\t{count}", graph.as_str());
    }
    Ok(ExitCode::SUCCESS)
}
