//! Subcommand definitions and dispatch.

mod asym;
mod auto;
mod corpus;
mod eq;
mod pipeline;
mod rat;
mod series;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::{CliError, Ctx, Outcome};

#[derive(Parser, Debug)]
#[command(name = "mahler", version, about = "Mahler equations, automatic sequences and rationality tests")]
pub struct Cli {
    /// Emit a JSON document with a run manifest.
    #[arg(long, global = true)]
    pub json: bool,
    /// Emit CSV rows (only for commands producing tables).
    #[arg(long, global = true, conflicts_with = "json")]
    pub csv: bool,
    /// Write the produced file (series, equation, automaton) here.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Truncated power series.
    #[command(subcommand)]
    Series(series::SeriesCmd),
    /// Mahler equations.
    #[command(subcommand)]
    Eq(eq::EqCmd),
    /// Base arithmetic.
    #[command(subcommand)]
    Base(eq::BaseCmd),
    /// Automata and linear representations.
    #[command(subcommand)]
    Auto(auto::AutoCmd),
    /// Rationality tests.
    #[command(subcommand)]
    Rat(rat::RatCmd),
    /// End-to-end rationality pipeline.
    #[command(subcommand)]
    Pipeline(pipeline::PipelineCmd),
    /// Numeric growth and sum checks, nilpotency, group search.
    #[command(subcommand)]
    Asym(asym::AsymCmd),
    /// Built-in example series and automata.
    #[command(subcommand)]
    Corpus(corpus::CorpusCmd),
}

pub fn dispatch(cli: &Cli, ctx: &mut Ctx) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Series(c) => series::run(c, ctx),
        Command::Eq(c) => eq::run(c, ctx),
        Command::Base(c) => eq::run_base(c),
        Command::Auto(c) => auto::run(c, ctx),
        Command::Rat(c) => rat::run(c, ctx),
        Command::Pipeline(c) => pipeline::run(c, ctx),
        Command::Asym(c) => asym::run(c),
        Command::Corpus(c) => corpus::run(c),
    }
}

/// First few coefficients, comma separated.
pub(crate) fn preview<T: ToString>(v: impl IntoIterator<Item = T>, n: usize) -> String {
    let mut parts: Vec<String> = v.into_iter().take(n + 1).map(|x| x.to_string()).collect();
    if parts.len() > n {
        parts[n] = "...".into();
    }
    parts.join(", ")
}
