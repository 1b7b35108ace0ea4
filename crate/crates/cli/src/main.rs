use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use supportbench::corpus::{RedirectFilter, SplitConfig, DEFAULT_REDIRECT_PATTERNS};
use supportbench::harness::{self, EvaluateOptions, PrepareConfig};
use supportbench::metrics::{BleuMode, EmbeddingFormat};
use supportbench::retrieval::Bm25Params;

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;

#[derive(Parser)]
#[command(name = "supportbench", version, about = "Customer-support dialog benchmark: data prep, BM25 baseline, evaluation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build train/test splits, a vocabulary and dataset statistics from a tweet CSV dump.
    Prepare {
        #[arg(long)]
        csv: PathBuf,
        /// Support account whose replies become answers.
        #[arg(long)]
        brand: String,
        #[arg(long, default_value_t = 60)]
        train_days: u32,
        #[arg(long, default_value_t = 5)]
        test_days: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 8192)]
        vocab_size: usize,
        /// Case-insensitive regex marking redirect answers; repeat for several. Defaults to a DM pattern set.
        #[arg(long = "redirect-pattern")]
        redirect_patterns: Vec<String>,
        /// Abort on the first malformed CSV row instead of skipping it.
        #[arg(long)]
        strict: bool,
    },
    /// Answer the test split with the BM25 retrieval baseline.
    RespondIr {
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        test: PathBuf,
        #[arg(long, default_value_t = 1.2)]
        k1: f64,
        #[arg(long, default_value_t = 0.75)]
        b: f64,
        /// Response used when no training question shares a term with the query.
        #[arg(long, default_value = "")]
        fallback: String,
        #[arg(long)]
        out: PathBuf,
        /// Enable English stop words and stemming.
        #[arg(long)]
        english: bool,
        /// Also write the built index to this file.
        #[arg(long)]
        save_index: Option<PathBuf>,
    },
    /// Score a responses file with all five metrics.
    Evaluate {
        #[arg(long)]
        responses: PathBuf,
        #[arg(long)]
        embeddings: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Test split the responses must cover exactly.
        #[arg(long)]
        test: Option<PathBuf>,
        #[arg(long, default_value = "corpus")]
        bleu_mode: BleuMode,
        /// `text` or `binary`; inferred from the extension by default.
        #[arg(long)]
        embeddings_format: Option<EmbeddingFormat>,
    },
    /// Render report.json files as word-overlap and semantic tables.
    Report {
        #[arg(long = "in", required = true, num_args = 1..)]
        inputs: Vec<PathBuf>,
        /// Write the CSV table here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the text table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(anyhow::Error),
    Data(anyhow::Error),
}

fn usage<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Usage(e.into())
}

fn data<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Data(e.into())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Prepare {
            csv,
            brand,
            train_days,
            test_days,
            out,
            vocab_size,
            redirect_patterns,
            strict,
        } => {
            let split = SplitConfig::new(brand, train_days, test_days).map_err(usage)?;
            let redirect_patterns = if redirect_patterns.is_empty() {
                DEFAULT_REDIRECT_PATTERNS.iter().map(|p| p.to_string()).collect()
            } else {
                redirect_patterns
            };
            RedirectFilter::new(&redirect_patterns).map_err(usage)?;
            if vocab_size == 0 {
                return Err(usage(anyhow::anyhow!("--vocab-size must be at least 1")));
            }
            let cfg = PrepareConfig {
                split,
                redirect_patterns,
                vocab_size,
                strict,
            };
            let stats = harness::cmd_prepare(&csv, &cfg, &out).map_err(data)?;
            println!(
                "{} tuples ({} train / {} test) from {} dialogs; {} redirects removed, {} malformed rows skipped",
                stats.tuples, stats.train_tuples, stats.test_tuples, stats.dialogs, stats.redirects_removed, stats.row_errors
            );
        }
        Command::RespondIr {
            train,
            test,
            k1,
            b,
            fallback,
            out,
            english,
            save_index,
        } => {
            let mut params = Bm25Params::new(k1, b).map_err(usage)?;
            params.english_analysis = english;
            let n = harness::cmd_respond_ir(&train, &test, params, &fallback, &out, save_index.as_deref()).map_err(data)?;
            println!("wrote {n} responses to {}", out.display());
        }
        Command::Evaluate {
            responses,
            embeddings,
            out,
            test,
            bleu_mode,
            embeddings_format,
        } => {
            let opts = EvaluateOptions {
                bleu_mode,
                embedding_format: embeddings_format,
                test_path: test,
            };
            let report = harness::cmd_evaluate(&responses, &embeddings, &out, &opts).map_err(data)?;
            print!("{}", harness::render_text(std::slice::from_ref(&report)));
        }
        Command::Report { inputs, csv, out } => {
            let rendered = harness::cmd_report(&inputs).map_err(data)?;
            if let Some(path) = csv {
                std::fs::write(&path, &rendered.csv)
                    .with_context(|| format!("writing {}", path.display()))
                    .map_err(data)?;
            }
            match out {
                Some(path) => std::fs::write(&path, &rendered.text)
                    .with_context(|| format!("writing {}", path.display()))
                    .map_err(data)?,
                None => print!("{}", rendered.text),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_DATA)
        }
    }
}
