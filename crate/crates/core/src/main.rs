//! `mnf-lab` command-line front end.
//!
//! Exit status: 0 affirmative, 1 negative verdict, 2 usage or input error,
//! 3 enumeration budget exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};

use mnf_lab::error::{OracleError, SynthesisError};
use mnf_lab::grammar::{check_mnf, parse_grammar_with, Grammar, MnfReport, ParseOptions};
use mnf_lab::oracle::{bounded_equiv, Budget};
use mnf_lab::regex::{parse_regex, render_regex};
use mnf_lab::synthesis::synthesize_regex;
use mnf_lab::unfolding::{search_mnf, SearchConfig};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "mnf-lab",
    version,
    about = "Normal-form checking and regex synthesis for context-free grammars"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Grammar file
    file: PathBuf,
    /// Keep `A -> A` productions instead of dropping them
    #[arg(long)]
    strict: bool,
    /// Accept nonterminals without productions
    #[arg(long)]
    allow_empty: bool,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Report whether the grammar is in normal form
    Check {
        #[command(flatten)]
        input: Input,
        /// Remove unproductive and unreachable symbols first
        #[arg(long)]
        prune: bool,
    },
    /// Print a regular expression for a normal-form grammar
    Synth {
        #[command(flatten)]
        input: Input,
    },
    /// Compare the grammar with a regex on all words up to a length
    #[command(group(ArgGroup::new("target").required(true).args(["regex", "synth"])))]
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        regex: Option<String>,
        /// Compare against the synthesized regex
        #[arg(long)]
        synth: bool,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
    },
    /// Search unfoldings for an equivalent normal-form grammar
    Search {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        max_candidates: u64,
        /// Start from the Chomsky normal form of the grammar
        #[arg(long)]
        from_cnf: bool,
    },
}

fn load(input: &Input) -> Result<Grammar, ExitCode> {
    let text = std::fs::read_to_string(&input.file).map_err(|e| {
        eprintln!("error: {}: {e}", input.file.display());
        ExitCode::from(EXIT_USAGE)
    })?;
    let options = ParseOptions {
        strict: input.strict,
        allow_empty: input.allow_empty,
    };
    let parsed = parse_grammar_with(&text, options).map_err(|e| {
        eprintln!("error: {}: {e}", input.file.display());
        ExitCode::from(EXIT_USAGE)
    })?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    Ok(parsed.grammar)
}

fn print_report(report: &MnfReport, json: bool) {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_text());
    }
}

fn budget_error(e: OracleError) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        OracleError::BudgetExceeded { .. } => ExitCode::from(EXIT_BUDGET),
        OracleError::NonterminalLiteral(_) => ExitCode::from(EXIT_USAGE),
    }
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_NEGATIVE)
    }
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Check { input, prune } => {
            let mut g = load(&input)?;
            if prune {
                g = g.pruned();
            }
            let report = check_mnf(&g);
            print_report(&report, input.json);
            Ok(verdict(report.is_mnf()))
        }
        Command::Synth { input } => {
            let g = load(&input)?;
            match synthesize_regex(&g) {
                Ok(r) if input.json => {
                    println!("{}", serde_json::json!({ "regex": render_regex(&r) }))
                }
                Ok(r) => println!("{}", render_regex(&r)),
                Err(SynthesisError::NotMnf(report)) => {
                    print_report(&report, input.json);
                    return Ok(verdict(false));
                }
                Err(e) => unreachable!("normal-form grammar failed to synthesize: {e}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            input,
            regex,
            synth,
            max_len,
        } => {
            let g = load(&input)?;
            let r = match (regex, synth) {
                (Some(text), _) => parse_regex(&text).map_err(|e| {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_USAGE)
                })?,
                (None, _) => match synthesize_regex(&g) {
                    Ok(r) => r,
                    Err(SynthesisError::NotMnf(report)) => {
                        print_report(&report, input.json);
                        return Ok(verdict(false));
                    }
                    Err(e) => unreachable!("normal-form grammar failed to synthesize: {e}"),
                },
            };
            let v = bounded_equiv(&g, &r, max_len, &Budget::from_env()).map_err(budget_error)?;
            if input.json {
                println!("{}", v.to_json());
            } else {
                print!("{}", v.render_text());
            }
            Ok(verdict(v.is_equivalent()))
        }
        Command::Search {
            input,
            depth,
            max_candidates,
            from_cnf,
        } => {
            let g = load(&input)?;
            let cfg = SearchConfig {
                max_depth: depth,
                max_candidates: usize::try_from(max_candidates).unwrap_or(usize::MAX),
                start_from_cnf: from_cnf,
                budget: Budget::from_env(),
            };
            let outcome = search_mnf(&g, &cfg).map_err(budget_error)?;
            if input.json {
                println!("{}", outcome.to_json());
            } else {
                print!("{}", outcome.render_text());
            }
            Ok(verdict(outcome.is_found()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    run(cli).unwrap_or_else(|code| code)
}
