use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use liebranch_cli::{
    cmd_branch, cmd_center, cmd_centralizer, cmd_info, cmd_verify, cmd_weights, exit_code,
    render_json, render_text, OutputDocument, Payload, DEFAULT_MAX_WEIGHTS, EXIT_OK,
    EXIT_VERIFY_FAILED,
};
use liebranch_core::subalgebra::EmbeddingKind;
use liebranch_core::{SimpleAlgebra, Weight};

#[derive(Parser)]
#[command(name = "liebranch", version, about = "Centralizers and branching rules for maximal regular subalgebras")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Semisimple,
    Reductive,
}

impl From<Kind> for EmbeddingKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Semisimple => EmbeddingKind::Semisimple,
            Kind::Reductive => EmbeddingKind::Reductive,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Cartan matrix, marks, comarks and extended diagram.
    Info { algebra: String },
    /// Center and its congruence forms.
    Center { algebra: String },
    /// Centralizer of the subgroup obtained by deleting a node.
    Centralizer {
        algebra: String,
        node: usize,
        #[arg(long)]
        projection: Option<PathBuf>,
        /// Deletion kind; inferred from the node's mark when omitted.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
    },
    /// Weight system of an irreducible representation.
    Weights {
        algebra: String,
        /// Highest weight, e.g. `(1,0,0)`.
        highest: String,
        #[arg(long, default_value_t = DEFAULT_MAX_WEIGHTS)]
        max_weights: usize,
    },
    /// Branching rule with relative congruence labels.
    Branch {
        algebra: String,
        node: usize,
        highest: String,
        #[arg(long)]
        projection: Option<PathBuf>,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        #[arg(long, default_value_t = DEFAULT_MAX_WEIGHTS)]
        max_weights: usize,
    },
    /// Replays the golden tables and examples.
    Verify {
        #[arg(long)]
        only: Option<String>,
        /// Fixture directory; the built-in copies are used when unset.
        #[arg(long, env = "LIEBRANCH_FIXTURES")]
        fixtures: Option<PathBuf>,
    },
}

fn run(command: Command, argv: &[String]) -> liebranch_core::Result<OutputDocument> {
    let alg = |s: &str| SimpleAlgebra::parse(s);
    let weight = |s: &str| s.parse::<Weight>();
    match command {
        Command::Info { algebra } => Ok(cmd_info(argv, &alg(&algebra)?)),
        Command::Center { algebra } => Ok(cmd_center(argv, &alg(&algebra)?)),
        Command::Centralizer {
            algebra,
            node,
            projection,
            kind,
        } => cmd_centralizer(
            argv,
            &alg(&algebra)?,
            node,
            kind.map(Into::into),
            projection.as_deref(),
        ),
        Command::Weights {
            algebra,
            highest,
            max_weights,
        } => cmd_weights(argv, &alg(&algebra)?, &weight(&highest)?, max_weights),
        Command::Branch {
            algebra,
            node,
            highest,
            projection,
            kind,
            max_weights,
        } => {
            let a = alg(&algebra)?;
            let w = weight(&highest)?;
            cmd_branch(
                argv,
                &a,
                node,
                kind.map(Into::into),
                projection.as_deref(),
                &w,
                max_weights,
            )
        }
        Command::Verify { only, fixtures } => {
            cmd_verify(argv, fixtures.as_deref(), only.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    match run(cli.command, &argv) {
        Ok(doc) => {
            let text = if cli.json {
                render_json(&doc) + "\n"
            } else {
                render_text(&doc)
            };
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            let code = match &doc.payload {
                Payload::Verify(v) if !v.passed => EXIT_VERIFY_FAILED,
                _ => EXIT_OK,
            };
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
