//! `malkg` — build, reason over, query, and validate malware
//! threat-intelligence knowledge graphs from annotated threat reports.
//!
//! Exit codes: 0 success; 1 domain-level failure (schema violations,
//! content that fails to parse); 2 environment failure (missing or
//! unreadable files). Summaries and diagnostics go to standard error, data
//! (TSV, N-Quads) to standard output or the `-o` path.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "malkg",
    version,
    about = "Malware threat-intelligence knowledge graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ontology schema tools
    Ontology {
        #[command(subcommand)]
        command: OntologyCommand,
    },
    /// Knowledge-graph pipeline: build, query, validate, export, stats
    Kg {
        #[command(subcommand)]
        command: KgCommand,
    },
}

#[derive(Subcommand)]
enum OntologyCommand {
    /// Check a schema for integrity violations
    Check {
        /// Check the built-in schema
        #[arg(long, conflicts_with = "schema")]
        builtin: bool,
        /// Path to a `.mos` schema file
        #[arg(required_unless_present = "builtin")]
        schema: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum KgCommand {
    /// Ingest an annotated corpus into a knowledge graph and write N-Quads
    Build {
        /// `builtin` or a path to a `.mos` schema file
        #[arg(long)]
        ontology: String,
        /// Directory of `<doc-id>.ann` files (`.txt` pairings optional)
        #[arg(long)]
        corpus: PathBuf,
        /// Annotation-type → ontology-name mapping file
        #[arg(long)]
        mapping: Option<PathBuf>,
        /// Skip forward-chaining materialization
        #[arg(long)]
        no_materialize: bool,
        /// Output N-Quads path; a `.prov.tsv` sidecar is written alongside
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Evaluate a query file against a knowledge graph, TSV to stdout
    Query {
        #[arg(long)]
        kg: PathBuf,
        #[arg(long)]
        query: PathBuf,
    },
    /// Check instance quads against the schema's domain/range constraints
    Validate {
        #[arg(long)]
        kg: PathBuf,
    },
    /// Re-serialize a knowledge graph canonically
    Export {
        #[arg(long)]
        kg: PathBuf,
        /// Write here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the provenance sidecar (requires -o)
        #[arg(long)]
        prov: bool,
    },
    /// Print store statistics as key<TAB>value lines
    Stats {
        #[arg(long)]
        kg: PathBuf,
    },
}

fn main() -> ExitCode {
    // die quietly on a closed pipe (`malkg kg stats | head`) instead of
    // panicking on EPIPE
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }

    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Ontology {
            command: OntologyCommand::Check { builtin, schema },
        } => commands::ontology_check(builtin, schema.as_deref()),
        Command::Kg { command } => match command {
            KgCommand::Build {
                ontology,
                corpus,
                mapping,
                no_materialize,
                output,
            } => commands::build(
                &ontology,
                &corpus,
                mapping.as_deref(),
                !no_materialize,
                &output,
            ),
            KgCommand::Query { kg, query } => commands::query(&kg, &query),
            KgCommand::Validate { kg } => commands::validate(&kg),
            KgCommand::Export { kg, output, prov } => {
                commands::export(&kg, output.as_deref(), prov)
            }
            KgCommand::Stats { kg } => commands::stats(&kg),
        },
    };
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("malkg: {}", failure.message);
            failure.exit
        }
    }
}
