//! Behavior of the `malkg` binary: exit-code conventions, stream
//! separation, and file handling.

use std::path::Path;
use std::process::{Command, Output};

use malkg_testkit::{bind_indicator_placeholder, sample_corpus_dir, sample_query_path};

fn malkg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_malkg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn build_sample(dir: &Path) -> std::path::PathBuf {
    let out = dir.join("kg.nq");
    let corpus = sample_corpus_dir();
    let output = malkg(&[
        "kg",
        "build",
        "--ontology",
        "builtin",
        "--corpus",
        corpus.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0, "{}", stderr(&output));
    out
}

#[test]
fn ontology_check_builtin_reports_counts() {
    let output = malkg(&["ontology", "check", "--builtin"]);
    assert_eq!(code(&output), 0);
    assert_eq!(
        stdout(&output),
        "ok: 29 classes, 11 object properties, 3 datatype properties\n"
    );
}

#[test]
fn building_with_the_bundled_schema_file_matches_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let from_builtin = build_sample(dir.path());

    let schema = malkg_testkit::sample_dir().join("malont-builtin.mos");
    let out = dir.path().join("kg-mos.nq");
    let corpus = sample_corpus_dir();
    let output = malkg(&[
        "kg",
        "build",
        "--ontology",
        schema.to_str().unwrap(),
        "--corpus",
        corpus.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0, "{}", stderr(&output));
    assert_eq!(
        std::fs::read_to_string(&out).unwrap(),
        std::fs::read_to_string(&from_builtin).unwrap()
    );
}

#[test]
fn ontology_check_reports_violations_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cyclic.mos");
    std::fs::write(&path, "class A : B\nclass B : A\n").unwrap();
    let output = malkg(&["ontology", "check", path.to_str().unwrap()]);
    assert_eq!(code(&output), 1);
    assert!(stdout(&output).contains("cyclic-hierarchy"), "{output:?}");
}

#[test]
fn missing_files_exit_2() {
    let output = malkg(&["ontology", "check", "/no/such/schema.mos"]);
    assert_eq!(code(&output), 2);

    let output = malkg(&["kg", "stats", "--kg", "/no/such/kg.nq"]);
    assert_eq!(code(&output), 2);

    let output = malkg(&[
        "kg",
        "build",
        "--ontology",
        "builtin",
        "--corpus",
        "/no/such/corpus",
        "-o",
        "/tmp/never-written.nq",
    ]);
    assert_eq!(code(&output), 2);
}

#[test]
fn build_writes_kg_and_provenance_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = build_sample(dir.path());
    let nq = std::fs::read_to_string(&out).unwrap();
    assert!(nq.contains("graph--schema"));
    assert!(nq.contains("graph--doc--zerot-plugx"));
    assert!(nq.contains("graph--inferred"));

    let sidecar = std::fs::read_to_string(dir.path().join("kg.prov.tsv")).unwrap();
    assert_eq!(sidecar.lines().count(), nq.lines().count());
    assert!(sidecar
        .lines()
        .any(|l| l.contains("\tannotation\tzerot-plugx\t")));
    assert!(sidecar
        .lines()
        .any(|l| l.contains("\tinference\t\t\tR1-inverse\t")));
}

#[test]
fn build_summary_goes_to_stderr_not_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("kg.nq");
    let corpus = sample_corpus_dir();
    let output = malkg(&[
        "kg",
        "build",
        "--ontology",
        "builtin",
        "--corpus",
        corpus.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout(&output), "");
    let err = stderr(&output);
    for key in [
        "docs: 2",
        "entities: 15",
        "relations: 12",
        "asserted quads: 58",
        "inferred quads: 30",
        "warnings: 1",
    ] {
        assert!(err.contains(key), "missing `{key}` in {err}");
    }
}

#[test]
fn build_survives_a_malformed_document() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    std::fs::create_dir(&corpus).unwrap();
    std::fs::write(corpus.join("good.ann"), "T1\tMalware 0 5\tPlugX\n").unwrap();
    std::fs::write(corpus.join("bad.ann"), "T1\tMalware zero five\tPlugX\n").unwrap();

    let out = dir.path().join("kg.nq");
    let output = malkg(&[
        "kg",
        "build",
        "--ontology",
        "builtin",
        "--corpus",
        corpus.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 1);
    assert!(stderr(&output).contains("non-numeric"), "{output:?}");

    // the good document's quads still made it into the output
    let nq = std::fs::read_to_string(&out).unwrap();
    assert!(nq.contains("kg#Malware--plugx"));
    assert!(nq.contains("graph--doc--good"));
    assert!(!nq.contains("graph--doc--bad"));
}

#[test]
fn no_materialize_leaves_the_inferred_graph_empty() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("kg.nq");
    let corpus = sample_corpus_dir();
    let output = malkg(&[
        "kg",
        "build",
        "--ontology",
        "builtin",
        "--corpus",
        corpus.to_str().unwrap(),
        "--no-materialize",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0);
    assert!(stderr(&output).contains("inferred quads: 0"));
    let nq = std::fs::read_to_string(&out).unwrap();
    assert!(!nq.contains("graph--inferred"));
}

#[test]
fn query_rejects_unsupported_constructs_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let kg = build_sample(dir.path());
    let q = dir.path().join("filter.rq");
    std::fs::write(&q, "SELECT ?x WHERE { ?x a owl:Class . FILTER(?x) }").unwrap();
    let output = malkg(&[
        "kg",
        "query",
        "--kg",
        kg.to_str().unwrap(),
        "--query",
        q.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 1);
    assert!(stderr(&output).contains("unsupported feature: FILTER"));
}

#[test]
fn empty_results_still_exit_0() {
    let dir = tempfile::tempdir().unwrap();
    let kg = build_sample(dir.path());
    let q = dir.path().join("empty.rq");
    std::fs::write(&q, "SELECT ?x WHERE { ?x rdfs:label \"no such label\" }").unwrap();
    let output = malkg(&[
        "kg",
        "query",
        "--kg",
        kg.to_str().unwrap(),
        "--query",
        q.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout(&output), "?x\n");
}

#[test]
fn validate_flags_domain_violations_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let kg = build_sample(dir.path());
    let mut nq = std::fs::read_to_string(&kg).unwrap();
    // a Location cannot be the subject of hasFamily
    nq.push_str(
        "<https://malont.example/kg#Location--russia> \
         <https://malont.example/ontology#hasFamily> \
         <https://malont.example/kg#MalwareFamily--plugx-family> \
         <https://malont.example/kg#graph--doc--edited> .\n",
    );
    let edited = dir.path().join("edited.nq");
    std::fs::write(&edited, nq).unwrap();

    let output = malkg(&["kg", "validate", "--kg", edited.to_str().unwrap()]);
    assert_eq!(code(&output), 1);
    assert!(stdout(&output).contains("domain violation"), "{output:?}");

    // the untouched build validates clean
    let output = malkg(&["kg", "validate", "--kg", kg.to_str().unwrap()]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout(&output), "");
}

#[test]
fn validate_schema_only_kg_is_vacuously_clean() {
    let dir = tempfile::tempdir().unwrap();
    let kg = build_sample(dir.path());
    let schema_only: String = std::fs::read_to_string(&kg)
        .unwrap()
        .lines()
        .filter(|l| l.contains("graph--schema"))
        .map(|l| format!("{l}\n"))
        .collect();
    let path = dir.path().join("schema-only.nq");
    std::fs::write(&path, schema_only).unwrap();
    let output = malkg(&["kg", "validate", "--kg", path.to_str().unwrap()]);
    assert_eq!(code(&output), 0);
}

#[test]
fn export_normalizes_and_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let kg = build_sample(dir.path());

    // hand-edit: shuffle lines, verbose string datatype
    let mut lines: Vec<String> = std::fs::read_to_string(&kg)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    lines.reverse();
    lines.push(
        "<https://malont.example/kg#x> <https://malont.example/ontology#hasVersion> \
         \"1.0\"^^<http://www.w3.org/2001/XMLSchema#string> \
         <https://malont.example/kg#graph--doc--edited> ."
            .to_owned(),
    );
    let edited = dir.path().join("edited.nq");
    std::fs::write(&edited, lines.join("\n") + "\n").unwrap();

    let first = malkg(&["kg", "export", "--kg", edited.to_str().unwrap()]);
    assert_eq!(code(&first), 0);
    let second = malkg(&["kg", "export", "--kg", edited.to_str().unwrap()]);
    assert_eq!(stdout(&first), stdout(&second));
    // normalized: xsd:string collapses to the simple form, and the
    // reversed input comes back in canonical order (same bytes as the
    // original build plus the injected line)
    assert!(stdout(&first).contains("\"1.0\" "));
    assert_ne!(stdout(&first), std::fs::read_to_string(&edited).unwrap());
}

#[test]
fn export_prov_requires_an_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let kg = build_sample(dir.path());
    let output = malkg(&["kg", "export", "--kg", kg.to_str().unwrap(), "--prov"]);
    assert_eq!(code(&output), 2);

    let out = dir.path().join("re-export.nq");
    let output = malkg(&[
        "kg",
        "export",
        "--kg",
        kg.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
        "--prov",
    ]);
    assert_eq!(code(&output), 0);
    assert!(dir.path().join("re-export.prov.tsv").exists());
}

#[test]
fn stats_shape_and_empty_file_zeros() {
    let dir = tempfile::tempdir().unwrap();
    let kg = build_sample(dir.path());
    let output = malkg(&["kg", "stats", "--kg", kg.to_str().unwrap()]);
    assert_eq!(code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("classes\t29"));
    assert!(text.contains("object-properties\t11"));
    assert!(text.contains("datatype-properties\t3"));

    let empty = dir.path().join("empty.nq");
    std::fs::write(&empty, "").unwrap();
    let output = malkg(&["kg", "stats", "--kg", empty.to_str().unwrap()]);
    assert_eq!(code(&output), 0);
    assert!(stdout(&output).starts_with("quads\t0\nsubjects\t0\ninstances\t0\n"));
}

#[test]
fn query_matches_the_bundled_sample_walkthrough() {
    let dir = tempfile::tempdir().unwrap();
    let kg = build_sample(dir.path());
    let bound = bind_indicator_placeholder(
        &std::fs::read_to_string(sample_query_path("cq2-family-by-indicator.rq")).unwrap(),
    );
    let q = dir.path().join("cq2.rq");
    std::fs::write(&q, bound).unwrap();
    let output = malkg(&[
        "kg",
        "query",
        "--kg",
        kg.to_str().unwrap(),
        "--query",
        q.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("MalwareFamily--plugx-family"));
    assert!(text.contains("TrojanHorse--plugx"));
    assert!(text.contains("Address--5-61-38-52"));
    assert_eq!(text.lines().count(), 2);
}
