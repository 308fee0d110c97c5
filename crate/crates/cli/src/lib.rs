//! Command-line front end for `edgecsp`: argument parsing, JSON input and
//! output, and the exhaustive audit.

pub mod audit;
pub mod commands;
pub mod error;
pub mod input;

use audit::{cmd_audit, AuditOptions};
use clap::{Parser, Subcommand, ValueEnum};
use commands::{
    cmd_certify, cmd_classify, cmd_core, cmd_decompose, cmd_fullhom, cmd_sandwich, cmd_solve,
    Outcome,
};
use error::CliResult;
use input::TemplateKind;

#[derive(Parser, Debug)]
#[command(
    name = "edgecsp",
    version,
    about = "Classify and solve CSPs of reflexive complete 2-edge-coloured graphs"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether the template's CSP is in P or NP-complete.
    Classify {
        /// Template file or inline JSON.
        input: String,
        #[arg(long, conflicts_with = "graph")]
        matrix: bool,
        #[arg(long)]
        graph: bool,
    },
    /// Solve a list CSP instance over a template.
    Solve {
        template: String,
        instance: String,
        /// Lists as JSON object or file, replacing any in the instance.
        #[arg(long)]
        lists: Option<String>,
        /// Fall back to exponential search when no polynomial route applies.
        #[arg(long)]
        oracle: bool,
    },
    /// Solve a matrix-partition sandwich instance.
    Sandwich {
        matrix: String,
        instance: String,
        #[arg(long)]
        oracle: bool,
    },
    /// Classify the full-homomorphism sandwich problem of a graph with loops.
    Fullhom { graph: String },
    /// Produce a hardness certificate.
    Certify { template: String },
    /// Compute the core and a retraction onto it.
    Core { template: String },
    /// Run the recognizer and print its decomposition or failure state.
    Decompose { template: String },
    /// Classify every template up to isomorphism and cross-check.
    Audit {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Allow sizes above the guard.
        #[arg(long)]
        force: bool,
        /// Largest size for the Siggers search cross-check.
        #[arg(long, default_value_t = 3)]
        siggers_max_n: usize,
        /// Also write the pretty-printed report here.
        #[arg(long)]
        out: Option<String>,
    },
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Classify {
            input,
            matrix,
            graph,
        } => {
            let kind = match (matrix, graph) {
                (true, _) => TemplateKind::Matrix,
                (_, true) => TemplateKind::Graph,
                _ => TemplateKind::Auto,
            };
            cmd_classify(input, kind)
        }
        Command::Solve {
            template,
            instance,
            lists,
            oracle,
        } => cmd_solve(template, instance, lists.as_deref(), *oracle),
        Command::Sandwich {
            matrix,
            instance,
            oracle,
        } => cmd_sandwich(matrix, instance, *oracle),
        Command::Fullhom { graph } => cmd_fullhom(graph),
        Command::Certify { template } => cmd_certify(template),
        Command::Core { template } => cmd_core(template),
        Command::Decompose { template } => cmd_decompose(template),
        Command::Audit {
            max_n,
            jobs,
            force,
            siggers_max_n,
            out,
        } => {
            let opts = AuditOptions {
                max_n: *max_n,
                jobs: *jobs,
                force: *force,
                siggers_max_n: *siggers_max_n,
            };
            cmd_audit(&opts, out.as_deref())
        }
    }
}

/// Renders an outcome in the requested format.
pub fn render(outcome: &Outcome, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(&outcome.report).expect("reports serialize") + "\n",
        Format::Text => outcome.text.clone(),
    }
}
