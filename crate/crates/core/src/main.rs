use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use claimreader::corpus::load_report;
use claimreader::report::{render_json_compact, render_text, run_corpus};
use claimreader::{analyze, render_json, KnowledgeBase};

/// Reads road-accident reports and recovers the facts and the writer's
/// argumentation.
#[derive(Parser)]
#[command(name = "claimreader", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one report file.
    Analyze {
        file: PathBuf,
        /// Knowledge-base directory (defaults to the built-in seed).
        #[arg(long)]
        kb: Option<PathBuf>,
        /// Compact JSON output.
        #[arg(long, conflicts_with = "pretty")]
        json: bool,
        /// Indented JSON output.
        #[arg(long)]
        pretty: bool,
    },
    /// Analyze every report in a directory and compare with gold files.
    Corpus {
        dir: PathBuf,
        /// Directory holding `<id>.gold.json` files (defaults to DIR).
        #[arg(long)]
        gold: Option<PathBuf>,
        #[arg(long)]
        kb: Option<PathBuf>,
    },
    /// Knowledge-base maintenance.
    Kb {
        #[command(subcommand)]
        command: KbCommand,
    },
}

#[derive(Subcommand)]
enum KbCommand {
    /// Load and validate a knowledge-base directory.
    Check { dir: PathBuf },
}

const GOLD_MISMATCH: u8 = 1;
const INPUT_ERROR: u8 = 2;

fn knowledge(dir: Option<&Path>) -> claimreader::Result<KnowledgeBase> {
    match dir {
        Some(d) => KnowledgeBase::load_dir(d),
        None => Ok(KnowledgeBase::seed()),
    }
}

fn run(cli: Cli) -> claimreader::Result<u8> {
    match cli.command {
        Command::Analyze {
            file,
            kb,
            json,
            pretty,
        } => {
            let kb = knowledge(kb.as_deref())?;
            let analysis = analyze(&load_report(&file)?, &kb)?;
            if json {
                println!("{}", render_json_compact(&analysis));
            } else if pretty {
                println!("{}", render_json(&analysis));
            } else {
                print!("{}", render_text(&analysis));
            }
            Ok(0)
        }
        Command::Corpus { dir, gold, kb } => {
            let kb = knowledge(kb.as_deref())?;
            let gold = gold.unwrap_or_else(|| dir.clone());
            let result = run_corpus(&dir, &gold, &kb)?;
            print!("{}", result.render_table());
            Ok(if result.passed() { 0 } else { GOLD_MISMATCH })
        }
        Command::Kb {
            command: KbCommand::Check { dir },
        } => {
            let kb = KnowledgeBase::load_dir(&dir)?;
            println!(
                "ok: {} concepts, {} rules, {} lexicon entries",
                kb.hierarchy.concepts().count(),
                kb.rules.len(),
                kb.lexicon.entries().len()
            );
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
